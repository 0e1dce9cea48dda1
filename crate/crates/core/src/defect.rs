//! Bounds on the infinite defect `D∞(w)`: the least defect of an infinite
//! word over `Alph(w)` having `w` as a factor.
//!
//! `D∞` is not computed exactly. [`bracket`] returns a certified interval:
//! the lower end comes from bounded contexts around `w`, the upper end from
//! explicit infinite extensions whose defect is known exactly.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use crate::closure::right_closure;
use crate::eertree::Eertree;
use crate::error::{Error, Result};
use crate::richness::{defect, longest_rich_prefix, longest_rich_suffix};
use crate::word::{all_words, Alphabet, Letter, LetterSet, Word};

fn require_non_empty(w: &Word, what: &'static str) -> Result<()> {
    if w.is_empty() {
        Err(Error::EmptyWord(what))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureBounds {
    /// `D(w^(+) w^(+))`
    pub via_right: usize,
    /// `D(w̄^(+) w̄^(+))`
    pub via_left: usize,
}

/// Defects of the squared right closures of `w` and of `w̄`; the periodic
/// words `(w^(+))^∞` and `(w̄^(+))^∞` have exactly these defects.
pub fn upper_bound_closure(w: &Word) -> Result<ClosureBounds> {
    require_non_empty(w, "closure bound")?;
    let right = right_closure(w);
    let left = right_closure(&w.reversed());
    Ok(ClosureBounds {
        via_right: defect(&right.pow(2)),
        via_left: defect(&left.pow(2)),
    })
}

/// `|w|` minus the longest rich prefix or suffix.
pub fn upper_bound_rich_edge(w: &Word) -> Result<usize> {
    require_non_empty(w, "rich-edge bound")?;
    Ok(w.len() - longest_rich_prefix(w).max(longest_rich_suffix(w)))
}

/// `D(w) + min_a (n_a - k_a)`, where `a^{n_a}` is the largest power of `a`
/// and `w` begins or ends with `a^{k_a}`.
pub fn upper_bound_letter_power(w: &Word) -> Result<usize> {
    require_non_empty(w, "letter-power bound")?;
    let best = w
        .alph()
        .iter()
        .map(|a| w.max_power(a) - w.leading_run(a).max(w.trailing_run(a)))
        .min()
        .unwrap_or(0);
    Ok(defect(w) + best)
}

/// Least defect over the words `w·y` and `s·w` with `|y| = |s| = k` over
/// `Alph(w)`.
///
/// Any infinite word containing `w` is infinite on at least one side, so it
/// contains one of these words; defect is monotone under factors.
pub fn lower_bound_context(w: &Word, k: usize) -> usize {
    if w.is_empty() {
        return 0;
    }
    let letters = w.alph();
    let right = min_extension_defect(w, letters, k, usize::MAX);
    if right == defect(w) {
        return right;
    }
    // D(s·w) = D(rev(w)·rev(s))
    min_extension_defect(&w.reversed(), letters, k, right)
}

/// `min(cap, min_{|y| = k} D(w y))`, depth-first with pruning on the
/// running defect.
fn min_extension_defect(w: &Word, letters: LetterSet, k: usize, cap: usize) -> usize {
    let mut t = Eertree::new(Alphabet::inferred(w));
    t.extend_from(w).expect("inferred alphabet");
    let mut best = cap;
    descend(&mut t, letters, k, &mut best);
    best
}

fn descend(t: &mut Eertree, letters: LetterSet, remaining: usize, best: &mut usize) {
    if t.defect() >= *best {
        return;
    }
    if remaining == 0 {
        *best = t.defect();
        return;
    }
    for a in letters.iter() {
        t.push(a).expect("letter of the word");
        descend(t, letters, remaining - 1, best);
        t.undo();
    }
}

/// The construction achieving the upper end of a bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpperWitness {
    /// `w · a^∞`
    SuffixPower(Letter),
    /// `a^∞ · w`
    PrefixPower(Letter),
    /// `w · (ab)^∞`
    SuffixPairPower(Letter, Letter),
    /// `(ab)^∞ · w`
    PrefixPairPower(Letter, Letter),
    /// `(w^(+))^∞`
    RightClosurePeriod,
    /// `(w̄^(+))^∞`
    LeftClosurePeriod,
    RichEdge,
    LetterPower,
}

impl fmt::Display for UpperWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            UpperWitness::SuffixPower(a) => write!(f, "suffix-power w·{a}^K"),
            UpperWitness::PrefixPower(a) => write!(f, "prefix-power {a}^K·w"),
            UpperWitness::SuffixPairPower(a, b) => write!(f, "suffix-pair-power w·({a}{b})^K"),
            UpperWitness::PrefixPairPower(a, b) => write!(f, "prefix-pair-power ({a}{b})^K·w"),
            UpperWitness::RightClosurePeriod => f.write_str("right-closure-period (w^(+))^∞"),
            UpperWitness::LeftClosurePeriod => f.write_str("left-closure-period (rev(w)^(+))^∞"),
            UpperWitness::RichEdge => f.write_str("rich-edge bound"),
            UpperWitness::LetterPower => f.write_str("letter-power bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectBracket {
    pub defect: usize,
    pub lower: usize,
    pub upper: usize,
    pub upper_witness: UpperWitness,
    pub search_depth: usize,
}

impl DefectBracket {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Longest factor of `w` alternating between `a` and `b`.
fn longest_alternation(w: &[Letter], a: Letter, b: Letter) -> usize {
    let mut best = 0;
    let mut run = 0;
    for (i, &c) in w.iter().enumerate() {
        let in_pair = c == a || c == b;
        run = match (in_pair, i.checked_sub(1).map(|j| w[j])) {
            (false, _) => 0,
            (true, Some(prev)) if run > 0 && prev != c => run + 1,
            (true, _) => 1,
        };
        best = best.max(run);
    }
    best
}

/// Exact `D(w · p^∞)` for `p = a` or `p = ab`.
///
/// Once the maximal suffix made of `p`-letters in `p`-order is at least two
/// letters longer than every such factor of `w`, no palindrome ending later
/// can reach back past it, and each push creates a new palindrome. The
/// returned defect is therefore the defect of the infinite word.
fn periodic_tail_defect(w: &Word, period: &[Letter]) -> usize {
    let longest = match *period {
        [a] => w.max_power(a),
        [a, b] => longest_alternation(w, a, b),
        _ => unreachable!("tails have period one or two"),
    };
    let reps = (longest + 2).div_ceil(period.len()) + 1;
    let mut t = Eertree::new(Alphabet::inferred(w));
    t.extend_from(w).expect("inferred alphabet");
    for _ in 0..reps {
        t.extend_from(period).expect("letters of the word");
    }
    t.defect()
}

/// Certified bounds `D(w) <= lower <= D∞(w) <= upper`.
pub fn bracket(w: &Word, k: usize) -> Result<DefectBracket> {
    require_non_empty(w, "infinite defect bracket")?;
    let letters = w.alph();
    let rev = w.reversed();
    let mut candidates: Vec<(usize, UpperWitness)> = Vec::new();
    for a in letters.iter() {
        candidates.push((periodic_tail_defect(w, &[a]), UpperWitness::SuffixPower(a)));
    }
    for a in letters.iter() {
        candidates.push((
            periodic_tail_defect(&rev, &[a]),
            UpperWitness::PrefixPower(a),
        ));
    }
    let pairs: Vec<(Letter, Letter)> = letters
        .iter()
        .flat_map(|a| letters.iter().filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    for &(a, b) in &pairs {
        candidates.push((
            periodic_tail_defect(w, &[a, b]),
            UpperWitness::SuffixPairPower(a, b),
        ));
    }
    for &(a, b) in &pairs {
        // (ab)^∞·w reversed is rev(w)·(ba)^∞
        candidates.push((
            periodic_tail_defect(&rev, &[b, a]),
            UpperWitness::PrefixPairPower(a, b),
        ));
    }
    let closure = upper_bound_closure(w)?;
    candidates.push((closure.via_right, UpperWitness::RightClosurePeriod));
    candidates.push((closure.via_left, UpperWitness::LeftClosurePeriod));
    candidates.push((upper_bound_rich_edge(w)?, UpperWitness::RichEdge));
    candidates.push((upper_bound_letter_power(w)?, UpperWitness::LetterPower));

    let (upper, upper_witness) = candidates
        .into_iter()
        .reduce(|best, c| if c.0 < best.0 { c } else { best })
        .expect("at least one candidate");
    let lower = lower_bound_context(w, k);
    debug_assert!(lower <= upper, "{w}: lower {lower} > upper {upper}");
    Ok(DefectBracket {
        defect: defect(w),
        lower,
        upper,
        upper_witness,
        search_depth: k,
    })
}

/// The word `0 0 1^{k+1} 0 1 v 1 0 1^{k+1} 0 0`, where `v` avoids `1^{k+1}`
/// but contains every binary palindrome of length at most `2k+2` that
/// avoids it. Any extension by `k` letters on either side adds `k` defects.
pub fn defect_gap_word(k: usize) -> Word {
    let block = vec![1; k + 1];
    let mut pals: Vec<Word> = (1..=2 * k + 2)
        .flat_map(|n| all_words(Alphabet::BINARY, n))
        .filter(|p| p.is_palindrome() && !Word::from(&block[..]).is_factor_of(p))
        .collect();
    pals.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut v = Word::from_letters(vec![0]);
    for p in pals {
        if !p.is_factor_of(&v) {
            v = v.concat(&p).concat(&[0]);
        }
    }
    let mut u = vec![0, 0];
    u.extend_from_slice(&block);
    u.extend_from_slice(&[0, 1]);
    u.extend_from_slice(&v);
    u.extend_from_slice(&[1, 0]);
    u.extend_from_slice(&block);
    u.extend_from_slice(&[0, 0]);
    Word::from_letters(u)
}

pub const DEFAULT_TABLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectTableRow {
    pub n: usize,
    /// `D(n)`: the largest defect of a binary word of length at most `n`.
    pub d_max: usize,
    /// Largest bracket upper end, an upper estimate of `D∞(n)`.
    pub dinf_upper_max: usize,
    /// Largest `lower - D(w)`, a certified lower estimate of `D_dif(n)`.
    pub ddif_lower: usize,
    pub witness_d: Word,
    pub witness_dinf: Word,
    pub witness_ddif: Word,
}

#[derive(Debug, Clone, Copy)]
pub struct TableConfig {
    pub context_depth: usize,
    pub limit: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            context_depth: 3,
            limit: DEFAULT_TABLE_LIMIT,
        }
    }
}

type Best = (usize, Word);

// larger value wins; ties go to the lexicographically smaller word
fn better(x: Best, y: Best) -> Best {
    match x.0.cmp(&y.0) {
        std::cmp::Ordering::Greater => x,
        std::cmp::Ordering::Less => y,
        std::cmp::Ordering::Equal => {
            if x.1 <= y.1 {
                x
            } else {
                y
            }
        }
    }
}

/// Exhaustive binary tables for lengths `0..=n_max`; each column is a
/// maximum over all words of length at most `n`.
pub fn defect_tables(n_max: usize, config: TableConfig) -> Result<Vec<DefectTableRow>> {
    if n_max > config.limit {
        return Err(Error::LimitExceeded {
            what: "table length (raise the limit explicitly; cost doubles per letter)",
            value: n_max,
            limit: config.limit,
        });
    }
    let empty = (0, Word::empty());
    let (mut d, mut dinf, mut ddif) = (empty.clone(), empty.clone(), empty);
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            let words: Vec<Word> = all_words(Alphabet::BINARY, n).collect();
            let zero = || ((0, Word::empty()), (0, Word::empty()), (0, Word::empty()));
            let (ld, linf, ldif) = words
                .into_par_iter()
                .map(|w| {
                    let b = bracket(&w, config.context_depth).expect("non-empty word");
                    (
                        (b.defect, w.clone()),
                        (b.upper, w.clone()),
                        (b.lower - b.defect, w),
                    )
                })
                .reduce(zero, |x, y| {
                    (better(x.0, y.0), better(x.1, y.1), better(x.2, y.2))
                });
            // shorter witnesses found earlier keep priority on ties
            d = if ld.0 > d.0 { ld } else { d };
            dinf = if linf.0 > dinf.0 { linf } else { dinf };
            ddif = if ldif.0 > ddif.0 { ldif } else { ddif };
        }
        rows.push(DefectTableRow {
            n,
            d_max: d.0,
            dinf_upper_max: dinf.0,
            ddif_lower: ddif.0,
            witness_d: d.1.clone(),
            witness_dinf: dinf.1.clone(),
            witness_ddif: ddif.1.clone(),
        });
    }
    Ok(rows)
}

pub const TABLE_HEADER: [&str; 7] = [
    "n",
    "d_max",
    "dinf_upper_max",
    "ddif_lower",
    "witness_d",
    "witness_dinf",
    "witness_ddif",
];

pub fn write_tables_csv<W: Write>(rows: &[DefectTableRow], out: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(TABLE_HEADER)?;
    for r in rows {
        csv.write_record([
            r.n.to_string(),
            r.d_max.to_string(),
            r.dinf_upper_max.to_string(),
            r.ddif_lower.to_string(),
            r.witness_d.to_string(),
            r.witness_dinf.to_string(),
            r.witness_ddif.to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const LONG: &str = "1101100111010011011001101101110011011";

    #[test]
    fn closure_bounds() {
        let x = w("00101100");
        assert_eq!(right_closure(&x).pow(2), w("0010110011010000101100110100"));
        assert_eq!(upper_bound_closure(&x).unwrap().via_right, 1);
        let b = upper_bound_closure(&w("0010110001010")).unwrap();
        assert_ne!(b.via_right, b.via_left);
        let b = upper_bound_closure(&w("0020102202")).unwrap();
        assert_eq!((b.via_right, b.via_left), (0, 0));
        assert!(upper_bound_closure(&w("")).is_err());
    }

    #[test]
    fn rich_edge_bound() {
        assert_eq!(upper_bound_rich_edge(&w("00101100101")).unwrap(), 3);
        assert_eq!(upper_bound_rich_edge(&w("0101")).unwrap(), 0);
        let x = w(LONG);
        assert_eq!(longest_rich_suffix(&x), 11);
        assert_eq!(&x[x.len() - 11..], &w("01110011011")[..]);
        assert_eq!(upper_bound_rich_edge(&x).unwrap(), 26);
    }

    #[test]
    fn letter_power_bound() {
        assert_eq!(upper_bound_letter_power(&w(LONG)).unwrap(), 17);
        assert_eq!(upper_bound_letter_power(&w("000")).unwrap(), 0);
        assert_eq!(
            upper_bound_letter_power(&w("101001111000111101001")).unwrap(),
            7
        );
    }

    #[test]
    fn context_lower_bound() {
        let x = w("110100110111011001011");
        assert_eq!(lower_bound_context(&x, 0), 2);
        for y in [
            x.concat(&[0]),
            x.concat(&[1]),
            w("0").concat(&x),
            w("1").concat(&x),
        ] {
            assert_eq!(defect(&y), 3);
        }
        assert_eq!(lower_bound_context(&x, 1), 3);
        for k in 0..8 {
            assert_eq!(lower_bound_context(&w("00101100"), k), 1);
        }
        assert_eq!(lower_bound_context(&w(""), 3), 0);
    }

    #[test]
    fn alternation_runs() {
        assert_eq!(longest_alternation(&w("101001111000111101001"), 0, 1), 4);
        assert_eq!(longest_alternation(&w("0120"), 0, 1), 2);
        assert_eq!(longest_alternation(&w("22"), 0, 1), 0);
    }

    #[test]
    fn certified_tails_are_stable() {
        // pushing far beyond the certified repetition count adds no defect
        for x in [
            "110010010110010",
            "101001111000111101001",
            LONG,
            "00101100101",
        ] {
            let x = w(x);
            for p in [&[0][..], &[1], &[0, 1], &[1, 0]] {
                let certified = periodic_tail_defect(&x, p);
                let long = x.concat(&p.repeat(64));
                assert_eq!(defect(&long), certified, "{x} · {p:?}");
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(&w("110010010110010"), 6).unwrap();
        assert_eq!((b.lower, b.upper), (4, 4));
        assert_eq!(b.upper_witness, UpperWitness::PrefixPower(1));
        assert_eq!(b.upper_witness.to_string(), "prefix-power 1^K·w");

        let b = bracket(&w("101001111000111101001"), 6).unwrap();
        assert_eq!((b.lower, b.upper), (4, 4));
        assert_eq!(b.upper_witness, UpperWitness::SuffixPairPower(0, 1));
        assert_eq!(b.upper_witness.to_string(), "suffix-pair-power w·(01)^K");

        let b = bracket(&w("0020102202"), 2).unwrap();
        assert_eq!((b.lower, b.upper), (0, 0));
        assert!(b.is_exact());
        assert!(bracket(&w(""), 2).is_err());
    }

    #[test]
    fn long_word_bracket_contains_the_propositions() {
        let x = w(LONG);
        let b = bracket(&x, 2).unwrap();
        assert!(b.lower >= 16);
        assert!(b.upper <= 17);
    }

    #[test]
    fn small_tables() {
        let rows = defect_tables(9, TableConfig::default()).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[7].d_max, 0);
        assert_eq!(rows[8].d_max, 1);
        assert_eq!(rows[8].witness_d, w("00101100"));
        assert!(rows.windows(2).all(|r| r[0].d_max <= r[1].d_max));
        assert!(matches!(
            defect_tables(17, TableConfig::default()),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn table_csv() {
        let rows = defect_tables(2, TableConfig::default()).unwrap();
        let mut out = Vec::new();
        write_tables_csv(&rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "n,d_max,dinf_upper_max,ddif_lower,witness_d,witness_dinf,witness_ddif\n\
             0,0,0,0,,,\n1,0,0,0,,,\n2,0,0,0,,,\n"
        );
    }

    #[test]
    fn gap_word_forces_k_new_defects() {
        for k in 1..=3 {
            let u = defect_gap_word(k);
            assert!(!Word::from(&vec![1; k + 2][..]).is_factor_of(&u));
            let gained = lower_bound_context(&u, k) - defect(&u);
            assert!(gained >= k, "k = {k}: {u} gains {gained}");
        }
    }

    #[test]
    fn periodization_stabilises_at_the_square() {
        for n in 1..=8 {
            for x in all_words(Alphabet::BINARY, n) {
                let u = right_closure(&x);
                let sq = defect(&u.pow(2));
                for m in 3..=6 {
                    assert_eq!(defect(&u.pow(m)), sq, "{u}^{m}");
                }
            }
        }
    }
}
