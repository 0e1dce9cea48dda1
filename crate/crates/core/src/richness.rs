//! Richness and defect of finite words, palindromic suffix/prefix queries,
//! complete returns, and the brute-force oracles the eertree is checked against.

use std::collections::HashSet;

use crate::eertree::Eertree;
use crate::error::{Error, Result};
use crate::word::{find_all, is_palindrome, Letter, Word};

/// `|Pal(w)|`, the number of distinct palindromic factors including ε.
pub fn palindrome_count(w: &[Letter]) -> usize {
    Eertree::of(w).palindrome_count()
}

/// `D(w) = |w| + 1 - |Pal(w)|`.
pub fn defect(w: &[Letter]) -> usize {
    Eertree::of(w).defect()
}

/// Every push during a left-to-right scan creates a palindrome.
pub fn is_rich(w: &[Letter]) -> bool {
    longest_rich_prefix(w) == w.len()
}

/// Length of the longest rich prefix of `w`.
pub fn longest_rich_prefix(w: &[Letter]) -> usize {
    let mut t = Eertree::new(crate::word::Alphabet::inferred(&Word::from(w)));
    for (i, &a) in w.iter().enumerate() {
        if !t.push(a).expect("letter within inferred alphabet") {
            return i;
        }
    }
    w.len()
}

/// Length of the longest rich suffix of `w`.
pub fn longest_rich_suffix(w: &[Letter]) -> usize {
    let rev: Vec<Letter> = w.iter().rev().copied().collect();
    longest_rich_prefix(&rev)
}

fn lps_len(w: &[Letter]) -> usize {
    (0..=w.len())
        .find(|&start| is_palindrome(&w[start..]))
        .map_or(0, |start| w.len() - start)
}

/// Longest palindromic suffix (possibly `w` itself, ε for ε).
pub fn lps(w: &Word) -> Word {
    w.factor(w.len() - lps_len(w), w.len())
}

/// Longest palindromic prefix.
pub fn lpp(w: &Word) -> Word {
    lps(&w.reversed()).reversed()
}

/// Longest palindromic suffix strictly shorter than `w`.
pub fn lpps(w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord("lpps"));
    }
    let n = w.len();
    let len = lps_len(&w[1..]);
    Ok(w.factor(n - len, n))
}

/// Whether the longest palindromic suffix occurs exactly once in `w`.
pub fn lps_is_unioccurrent(w: &Word) -> bool {
    let p = lps(w);
    find_all(w, &p).count() == 1
}

/// Whether the longest palindromic prefix occurs exactly once in `w`.
pub fn lpp_is_unioccurrent(w: &Word) -> bool {
    lps_is_unioccurrent(&w.reversed())
}

/// Every complete return to `p` in `w`, in order of occurrence.
pub fn complete_returns(w: &Word, p: &Word) -> Result<Vec<Word>> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let occ: Vec<usize> = find_all(w, p).collect();
    if occ.is_empty() {
        return Err(Error::PatternAbsent {
            word: w.to_string(),
            pattern: p.to_string(),
        });
    }
    Ok(occ
        .windows(2)
        .map(|pair| w.factor(pair[0], pair[1] + p.len()))
        .collect())
}

/// Richness via complete returns: every complete return to every palindromic
/// factor is a palindrome. Independent of the eertree.
pub fn is_rich_via_returns(w: &Word) -> bool {
    brute_palindromes(w)
        .into_iter()
        .filter(|p| !p.is_empty())
        .all(|p| {
            let occ: Vec<usize> = find_all(w, &p).collect();
            occ.windows(2)
                .all(|pair| is_palindrome(&w[pair[0]..pair[1] + p.len()]))
        })
}

/// Distinct palindromic factors by direct enumeration of all factors.
pub fn brute_palindromes(w: &[Letter]) -> HashSet<Vec<Letter>> {
    let mut set = HashSet::new();
    set.insert(Vec::new());
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if is_palindrome(&w[i..j]) {
                set.insert(w[i..j].to_vec());
            }
        }
    }
    set
}

pub fn brute_is_rich(w: &[Letter]) -> bool {
    brute_palindromes(w).len() == w.len() + 1
}
