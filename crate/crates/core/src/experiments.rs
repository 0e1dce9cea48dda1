//! Exhaustive scans over small rich words that gather data on questions
//! the theory leaves open. Results are data, not proofs.

use rayon::prelude::*;

use crate::enumeration::{check_budget, EnumConfig};
use crate::error::Result;
use crate::extension::{
    eventually_extendable_in, join_witness, joinable_necessary, two_way_witness,
};
use crate::richness::is_rich;
use crate::word::{all_words, Alphabet, Word};

fn rich_words(alphabet: Alphabet, n: usize) -> Vec<Word> {
    all_words(alphabet, n).filter(|w| is_rich(w)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoWayProfileRow {
    pub n: usize,
    /// Non-unary rich words of length `n`.
    pub words: usize,
    /// Largest shortest `u` making `wu` extendable in two ways.
    pub max_shortest: usize,
    /// Longest `u` from the closure construction.
    pub max_constructed: usize,
    /// First word attaining `max_shortest`.
    pub witness: Word,
}

/// For each length, how far a rich word may need to go before it can be
/// extended richly in two ways.
pub fn two_way_profile(
    alphabet: Alphabet,
    n_max: usize,
    config: EnumConfig,
) -> Result<Vec<TwoWayProfileRow>> {
    check_budget(alphabet.size(), n_max, config.budget)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let words: Vec<Word> = rich_words(alphabet, n)
            .into_iter()
            .filter(|w| w.alph().len() >= 2)
            .collect();
        let stats: Vec<(usize, usize)> = words
            .par_iter()
            .map(|w| -> Result<(usize, usize)> {
                let shortest = eventually_extendable_in(w, 2, 2 * n)?;
                let built = two_way_witness(w)?;
                Ok((shortest.witness_u.len(), built.u.len()))
            })
            .collect::<Result<_>>()?;
        let max_shortest = stats.iter().map(|s| s.0).max().unwrap_or(0);
        let witness = words
            .iter()
            .zip(&stats)
            .find(|(_, s)| s.0 == max_shortest)
            .map(|(w, _)| w.clone())
            .unwrap_or_default();
        rows.push(TwoWayProfileRow {
            n,
            words: words.len(),
            max_shortest,
            max_constructed: stats.iter().map(|s| s.1).max().unwrap_or(0),
            witness,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinScan {
    pub pairs: usize,
    pub necessary_holds: usize,
    pub joined: usize,
    /// Pairs passing the necessary condition with no join found within the
    /// gap bound; candidates against sufficiency.
    pub unresolved: Vec<(Word, Word)>,
}

/// Checks every ordered pair of rich words of length `len` whose
/// necessary condition holds for a rich word containing both.
pub fn join_sufficiency_scan(alphabet: Alphabet, len: usize, max_gap: usize) -> Result<JoinScan> {
    let words = rich_words(alphabet, len);
    let pairs: Vec<(Word, Word)> = words
        .iter()
        .flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(u, v)| -> Result<(bool, bool)> {
            if !joinable_necessary(u, v)? {
                return Ok((false, false));
            }
            Ok((true, join_witness(u, v, max_gap)?.is_some()))
        })
        .collect::<Result<_>>()?;
    let unresolved = pairs
        .iter()
        .zip(&results)
        .filter(|(_, r)| r.0 && !r.1)
        .map(|(p, _)| p.clone())
        .collect();
    Ok(JoinScan {
        pairs: pairs.len(),
        necessary_holds: results.iter().filter(|r| r.0).count(),
        joined: results.iter().filter(|r| r.1).count(),
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_profile() {
        let rows = two_way_profile(Alphabet::BINARY, 6, EnumConfig::default()).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].words, 0);
        for r in &rows {
            assert!(r.max_shortest <= r.max_constructed);
            assert!(r.max_constructed < 2 * r.n || r.words == 0);
        }
    }

    #[test]
    fn small_join_scan() {
        let s = join_sufficiency_scan(Alphabet::BINARY, 4, 4).unwrap();
        assert_eq!(s.pairs, 256);
        assert!(s.joined <= s.necessary_holds);
        assert_eq!(s.joined + s.unresolved.len(), s.necessary_holds);
    }
}
