//! Balanced (finite Sturmian) binary words.

use crate::error::{Error, Result};
use crate::richness::{brute_palindromes, is_rich};
use crate::word::Word;

fn require_binary(w: &Word) -> Result<()> {
    if w.iter().all(|&a| a < 2) {
        Ok(())
    } else {
        Err(Error::NotBinary(w.to_string()))
    }
}

/// Any two factors of equal length differ by at most one in their number
/// of `1`s (equivalently of `0`s).
pub fn is_balanced(w: &Word) -> Result<bool> {
    require_binary(w)?;
    let mut ones = vec![0usize; w.len() + 1];
    for (i, &a) in w.iter().enumerate() {
        ones[i + 1] = ones[i] + a as usize;
    }
    for len in 1..=w.len() {
        let (lo, hi) = (0..=w.len() - len)
            .map(|i| ones[i + len] - ones[i])
            .fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        if hi - lo > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A shortest palindrome `v` (least first) with both `0v0` and `1v1`
/// factors of `w`; exists exactly when `w` is unbalanced.
pub fn unbalance_witness(w: &Word) -> Result<Option<Word>> {
    require_binary(w)?;
    let mut pals: Vec<Word> = brute_palindromes(w)
        .into_iter()
        .map(Word::from_letters)
        .collect();
    pals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(pals.into_iter().find(|v| {
        let zero = Word::from_letters(vec![0]).concat(v).concat(&[0]);
        let one = Word::from_letters(vec![1]).concat(v).concat(&[1]);
        zero.is_factor_of(w) && one.is_factor_of(w)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleExtension {
    pub zero_rich: bool,
    pub one_rich: bool,
}

/// Richness of `w0` and `w1` for a balanced binary `w`.
pub fn sturmian_double_extension(w: &Word) -> Result<DoubleExtension> {
    if !is_balanced(w)? {
        return Err(Error::Unbalanced(w.to_string()));
    }
    Ok(DoubleExtension {
        zero_rich: is_rich(&w.concat(&[0])),
        one_rich: is_rich(&w.concat(&[1])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{all_words, Alphabet};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn balance_examples() {
        assert!(!is_balanced(&w("0011")).unwrap());
        assert_eq!(unbalance_witness(&w("0011")).unwrap(), Some(w("")));
        assert!(is_balanced(&w("0100101")).unwrap());
        assert_eq!(unbalance_witness(&w("0100101")).unwrap(), None);
        assert!(is_balanced(&w("")).unwrap());
        assert!(matches!(is_balanced(&w("012")), Err(Error::NotBinary(_))));
    }

    #[test]
    fn criteria_agree_on_short_words() {
        for n in 0..=10 {
            for x in all_words(Alphabet::BINARY, n) {
                let balanced = is_balanced(&x).unwrap();
                assert_eq!(balanced, unbalance_witness(&x).unwrap().is_none(), "{x}");
            }
        }
    }

    #[test]
    fn double_extensions() {
        assert_eq!(
            sturmian_double_extension(&w("0101")).unwrap(),
            DoubleExtension {
                zero_rich: true,
                one_rich: true
            }
        );
        for n in 0..=12 {
            let d = sturmian_double_extension(&w(&"0".repeat(n))).unwrap();
            assert!(d.zero_rich && d.one_rich);
        }
        assert!(matches!(
            sturmian_double_extension(&w("0011")),
            Err(Error::Unbalanced(_))
        ));
    }
}
