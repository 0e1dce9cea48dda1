//! Rich extensions of rich words.
//!
//! "Extending in n ways" counts letters of `Alph(w)` only; queries that take
//! an explicit [`Alphabet`] consider every letter of it.

use std::collections::{HashMap, HashSet};

use crate::closure::{left_closure, proper_closure};
use crate::eertree::Eertree;
use crate::error::{Error, Result};
use crate::richness::{is_rich, lpps};
use crate::word::{Alphabet, Letter, LetterSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

pub(crate) fn require_rich(w: &Word) -> Result<()> {
    if is_rich(w) {
        Ok(())
    } else {
        Err(Error::NotRich(w.to_string()))
    }
}

fn require_non_unary(w: &Word) -> Result<()> {
    if w.alph().len() < 2 {
        Err(Error::Unary(w.to_string()))
    } else {
        Ok(())
    }
}

/// Alphabet big enough for both `w` and `letters`.
fn tree_alphabet(w: &Word, letters: LetterSet) -> Alphabet {
    let top = letters.iter().chain(w.iter().copied()).max().unwrap_or(0);
    Alphabet::new(top as usize + 1).expect("digit letters")
}

fn tree_for(w: &Word, letters: LetterSet) -> Eertree {
    let mut t = Eertree::new(tree_alphabet(w, letters));
    t.extend_from(w).expect("letters checked");
    t
}

/// Letters of `letters` whose push onto the tree keeps it rich.
fn branch(t: &mut Eertree, letters: LetterSet) -> LetterSet {
    letters
        .iter()
        .filter(|&a| t.probe(a).expect("letter within tree alphabet"))
        .collect()
}

/// Letters `a` of `alphabet` with `wa` (right) or `aw` (left) rich.
pub fn rich_extension_letters(w: &Word, side: Side, alphabet: Alphabet) -> Result<LetterSet> {
    alphabet.check(w)?;
    require_rich(w)?;
    let oriented = match side {
        Side::Right => w.clone(),
        Side::Left => w.reversed(),
    };
    let mut t = tree_for(&oriented, alphabet.all());
    Ok(branch(&mut t, alphabet.all()))
}

/// Letters of `Alph(w)` extending `w` richly to the right.
pub fn own_extension_letters(w: &Word) -> Result<LetterSet> {
    require_rich(w)?;
    let mut t = tree_for(w, w.alph());
    Ok(branch(&mut t, w.alph()))
}

/// The forced letters appended while exactly one letter of `Alph(w)`
/// extends richly.
pub fn compulsory_chain(w: &Word) -> Result<Vec<Letter>> {
    require_rich(w)?;
    require_non_unary(w)?;
    let letters = w.alph();
    let mut t = tree_for(w, letters);
    let mut chain = Vec::new();
    // a two-way extension exists within 2|w| letters
    for _ in 0..=2 * w.len() {
        let options = branch(&mut t, letters);
        match options.len() {
            0 => {
                return Err(Error::ConstructionFailed(format!(
                    "{} has no rich extension inside its alphabet",
                    Word::from(t.word())
                )))
            }
            1 => {
                let a = options.iter().next().unwrap();
                t.push(a)?;
                chain.push(a);
            }
            _ => return Ok(chain),
        }
    }
    Err(Error::ConstructionFailed(format!(
        "compulsory chain of {w} exceeded 2|w| letters"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub found: bool,
    /// Shortest (then lexicographically least) `u`; empty when not found.
    pub witness_u: Word,
    pub branch_letters: LetterSet,
    pub nodes_explored: u64,
    pub depth_limit: usize,
}

/// Bounded search for `u` over `Alph(w)`, `|u| <= depth_limit`, such that
/// `wu` is rich and extends richly with at least `n` letters of `Alph(w)`.
pub fn eventually_extendable_in(w: &Word, n: usize, depth_limit: usize) -> Result<ExtensionResult> {
    require_rich(w)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let letters = w.alph();
    let mut search = WaySearch {
        t: tree_for(w, letters),
        letters,
        ways: n,
        base: w.len(),
        limit: depth_limit,
        best: None,
        nodes: 0,
    };
    search.visit(0);
    let nodes_explored = search.nodes;
    Ok(match search.best {
        Some((witness_u, branch_letters)) => ExtensionResult {
            found: true,
            witness_u,
            branch_letters,
            nodes_explored,
            depth_limit,
        },
        None => ExtensionResult {
            found: false,
            witness_u: Word::empty(),
            branch_letters: LetterSet::EMPTY,
            nodes_explored,
            depth_limit,
        },
    })
}

struct WaySearch {
    t: Eertree,
    letters: LetterSet,
    ways: usize,
    base: usize,
    limit: usize,
    best: Option<(Word, LetterSet)>,
    nodes: u64,
}

impl WaySearch {
    // Depth-first in lexicographic order; among words of equal length the
    // first one reached is the least, and nothing at or below the best
    // length is explored once a witness is known.
    fn visit(&mut self, depth: usize) {
        self.nodes += 1;
        let options = branch(&mut self.t, self.letters);
        if options.len() >= self.ways {
            let u = Word::from(&self.t.word()[self.base..]);
            self.best = Some((u, options));
            return;
        }
        for a in options.iter() {
            let bound = self.best.as_ref().map_or(self.limit + 1, |(u, _)| u.len());
            if depth + 1 >= bound {
                break;
            }
            self.t.push(a).expect("letter within tree alphabet");
            self.visit(depth + 1);
            self.t.undo();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoWayWitness {
    pub u: Word,
    pub letters: LetterSet,
    /// The letter `a` whose maximal power `a^n` was brought to the end.
    pub power_letter: Letter,
    pub power: usize,
}

/// Extends `w` through proper closures until the maximal power `a^n` of `a`
/// in `w` first appears as a suffix after position `|w|`; returns the
/// appended part.
pub(crate) fn cut_to_power(w: &Word, a: Letter) -> Option<Word> {
    let n = w.max_power(a);
    if n == 0 {
        return None;
    }
    if w.trailing_run(a) >= n {
        return Some(Word::empty());
    }
    let mut cur = w.clone();
    // the case analysis needs at most two proper closures
    for _ in 0..2 {
        cur = proper_closure(&cur).ok()?;
        let mut run = w.trailing_run(a);
        for e in w.len()..cur.len() {
            run = if cur[e] == a { run + 1 } else { 0 };
            if run >= n {
                return Some(cur.factor(w.len(), e + 1));
            }
        }
    }
    None
}

/// Constructive two-way extension: `wu` rich, `|u| < 2|w|`, and `wu`
/// extends richly with at least two letters of `Alph(w)`.
///
/// Every letter's maximal power is tried; the shortest cut wins, ties going
/// to the smaller letter.
pub fn two_way_witness(w: &Word) -> Result<TwoWayWitness> {
    require_rich(w)?;
    require_non_unary(w)?;
    let (power_letter, u) = w
        .alph()
        .iter()
        .filter_map(|a| cut_to_power(w, a).map(|u| (a, u)))
        .min_by_key(|(a, u)| (u.len(), *a))
        .ok_or_else(|| Error::ConstructionFailed(format!("no power of {w} reached the end")))?;
    let wu = w.concat(&u);
    let letters = own_extension_letters(&wu)
        .map_err(|_| Error::ConstructionFailed(format!("{wu} is not rich")))?
        .intersection(w.alph());
    if letters.len() < 2 || u.len() >= 2 * w.len() {
        return Err(Error::ConstructionFailed(format!(
            "{wu} extends in {} ways with |u| = {}",
            letters.len(),
            u.len()
        )));
    }
    Ok(TwoWayWitness {
        u,
        letters,
        power_letter,
        power: w.max_power(power_letter),
    })
}

/// `(lpp, lps, factor)` for every factor of `w`.
fn keyed_factors(w: &[Letter]) -> Vec<(&[Letter], &[Letter], &[Letter])> {
    let alphabet = Alphabet::inferred(&Word::from(w));
    let mut out = Vec::with_capacity(w.len() * (w.len() + 1) / 2);
    for i in 0..w.len() {
        let mut t = Eertree::new(alphabet);
        let mut lpp = 0;
        for j in i + 1..=w.len() {
            t.push(w[j - 1]).expect("inferred alphabet");
            let lps = t.lps_len();
            if lps == j - i {
                lpp = lps;
            }
            out.push((&w[i..i + lpp], &w[j - lps..j], &w[i..j]));
        }
    }
    out
}

/// Necessary condition for `u` and `v` to be factors of one rich word:
/// returns `false` when some factor of `u` and a different factor of `v`
/// share both their longest palindromic prefix and suffix.
pub fn joinable_necessary(u: &Word, v: &Word) -> Result<bool> {
    require_rich(u)?;
    require_rich(v)?;
    type Key<'a> = (&'a [Letter], &'a [Letter]);
    let mut index: HashMap<Key, HashSet<&[Letter]>> = HashMap::new();
    for (lpp, lps, f) in keyed_factors(u) {
        index.entry((lpp, lps)).or_default().insert(f);
    }
    Ok(keyed_factors(v).into_iter().all(|(lpp, lps, f)| {
        index
            .get(&(lpp, lps))
            .is_none_or(|fs| fs.iter().all(|&g| g == f))
    }))
}

/// Shortest rich word found that contains both `u` and `v`, among those of
/// length at most `|u| + |v| + max_gap`.
///
/// A minimal word containing both is `u` or `v` itself, an overlap of the
/// two, or `x·g·y` with `{x, y} = {u, v}`; gap letters come from
/// `Alph(u) ∪ Alph(v)`. The search over that shape is exhaustive.
pub fn join_witness(u: &Word, v: &Word, max_gap: usize) -> Result<Option<Word>> {
    require_rich(u)?;
    require_rich(v)?;
    if v.is_factor_of(u) {
        return Ok(Some(u.clone()));
    }
    if u.is_factor_of(v) {
        return Ok(Some(v.clone()));
    }
    let orders = [(u, v), (v, u)];
    let longest_overlap = u.len().min(v.len()).saturating_sub(1);
    for overlap in (1..=longest_overlap).rev() {
        for (x, y) in orders {
            if x.ends_with(&y[..overlap]) {
                let joined = x.concat(&y[overlap..]);
                if is_rich(&joined) {
                    return Ok(Some(joined));
                }
            }
        }
    }
    let letters: LetterSet = u.alph().iter().chain(v.alph().iter()).collect();
    for gap in 0..=max_gap {
        for (x, y) in orders {
            let mut t = tree_for(x, letters);
            if let Some(found) = gap_search(&mut t, letters, gap, y) {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

fn gap_search(t: &mut Eertree, letters: LetterSet, remaining: usize, tail: &Word) -> Option<Word> {
    if remaining == 0 {
        let mark = t.len();
        let mut rich = true;
        for &a in tail.iter() {
            if !t.push(a).expect("letter within tree alphabet") {
                rich = false;
                break;
            }
        }
        let found = rich.then(|| Word::from(t.word()));
        t.truncate(mark);
        return found;
    }
    for a in letters.iter() {
        if t.push(a).expect("letter within tree alphabet") {
            let found = gap_search(t, letters, remaining - 1, tail);
            t.undo();
            if found.is_some() {
                return found;
            }
        } else {
            t.undo();
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicExtension {
    pub period: Word,
    pub tail: Word,
}

impl PeriodicExtension {
    /// `period^k · tail`, the `k`-fold proper closure of the base word.
    pub fn power(&self, k: usize) -> Word {
        self.period.pow(k).concat(&self.tail)
    }
}

/// Splits `w^(++) = u·v` with `v = lpps(w^(++))`; every `u^k v` is rich and
/// `u^∞` is a periodic rich word with prefix `w`.
pub fn periodic_rich_extension(w: &Word) -> Result<PeriodicExtension> {
    if w.is_empty() {
        return Err(Error::EmptyWord("periodic extension"));
    }
    require_rich(w)?;
    let closed = proper_closure(w)?;
    let tail = lpps(&closed)?;
    let period = closed.factor(0, closed.len() - tail.len());
    Ok(PeriodicExtension { period, tail })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionCounts {
    pub before: usize,
    pub after: usize,
}

/// Number of right rich extensions (inside `Alph(w)`) of `w` and of its left
/// palindromic closure.
pub fn left_closure_preserves_extension_count(w: &Word) -> Result<ExtensionCounts> {
    require_rich(w)?;
    let before = own_extension_letters(w)?.len();
    let closed = left_closure(w);
    let mut t = tree_for(&closed, w.alph());
    let after = branch(&mut t, w.alph()).len();
    Ok(ExtensionCounts { before, after })
}
