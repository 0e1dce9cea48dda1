//! Right, left and proper palindromic closures.

use crate::error::{Error, Result};
use crate::richness::{lpps, lps};
use crate::word::Word;

/// `w^(+)`: the shortest palindrome having `w` as a prefix.
pub fn right_closure(w: &Word) -> Word {
    let u = lps(w);
    close_over(w, u.len())
}

/// `^(+)w`: the shortest palindrome having `w` as a suffix.
pub fn left_closure(w: &Word) -> Word {
    right_closure(&w.reversed()).reversed()
}

/// `w^(++)`: like the right closure but around the longest proper
/// palindromic suffix.
pub fn proper_closure(w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord("proper closure"));
    }
    let u = lpps(w)?;
    Ok(close_over(w, u.len()))
}

/// `v u v̄` for `w = v u` with `|u| = pal_suffix_len`.
fn close_over(w: &Word, pal_suffix_len: usize) -> Word {
    let v = &w[..w.len() - pal_suffix_len];
    let tail: Vec<_> = v.iter().rev().copied().collect();
    w.concat(&tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::richness::is_rich;
    use crate::word::{all_words, Alphabet};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(right_closure(&w("010")), w("010"));
        assert_eq!(right_closure(&w("")), w(""));
        assert_eq!(right_closure(&w("0010")), w("00100"));
        assert_eq!(left_closure(&w("0010")), w("010010"));
        assert_eq!(proper_closure(&w("0")).unwrap(), w("00"));
        assert_eq!(proper_closure(&w("010")).unwrap(), w("01010"));
        let x = w("11011010101010110011000111000011100");
        assert_eq!(
            proper_closure(&x).unwrap(),
            x.concat(&w("011001101010101011011"))
        );
        assert_eq!(
            proper_closure(&w("")),
            Err(Error::EmptyWord("proper closure"))
        );
    }

    #[test]
    fn right_closure_is_the_shortest_palindromic_extension() {
        for n in 0..=10 {
            for x in all_words(Alphabet::BINARY, n) {
                let c = right_closure(&x);
                assert!(c.is_palindrome());
                assert!(c.starts_with(&x));
                // brute force: the shortest v with x·v a palindrome
                let shortest = (0..=x.len())
                    .find(|&k| {
                        let tail: Vec<_> = x[..k].iter().rev().copied().collect();
                        x.concat(&tail).is_palindrome()
                    })
                    .unwrap();
                assert_eq!(c.len(), x.len() + shortest, "{x}");
            }
        }
    }

    #[test]
    fn closures_preserve_richness() {
        for n in 1..=10 {
            for x in all_words(Alphabet::BINARY, n).filter(|x| is_rich(x)) {
                assert!(is_rich(&right_closure(&x)));
                assert!(is_rich(&left_closure(&x)));
                assert!(is_rich(&proper_closure(&x).unwrap()));
            }
        }
    }
}
