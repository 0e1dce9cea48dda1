//! Generators of ever-longer rich prefixes of infinite rich words.

use crate::eertree::Eertree;
use crate::error::{Error, Result};
use crate::extension::{cut_to_power, periodic_rich_extension, require_rich, PeriodicExtension};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamMode {
    /// Repeatedly brings the maximal power of `letter` to the end, grows
    /// it by one and breaks the run with the preceding letter.
    Aperiodic { letter: Letter },
    /// Prefixes `period^k · tail` of `period^∞`.
    Periodic(PeriodicExtension),
}

/// Nested rich prefixes of an infinite rich word extending `base`.
/// Each item is a strict extension of the previous one.
#[derive(Debug, Clone)]
pub struct RichStream {
    base: Word,
    mode: StreamMode,
    tree: Eertree,
    rounds: usize,
}

impl RichStream {
    pub fn aperiodic(w: &Word) -> Result<RichStream> {
        require_rich(w)?;
        if w.alph().len() < 2 {
            return Err(Error::Unary(w.to_string()));
        }
        let letter = w
            .alph()
            .iter()
            .filter_map(|a| cut_to_power(w, a).map(|u| (u.len(), a)))
            .min()
            .map(|(_, a)| a)
            .ok_or_else(|| Error::ConstructionFailed(format!("no power of {w} reached the end")))?;
        Ok(RichStream::start(w, StreamMode::Aperiodic { letter }))
    }

    pub fn periodic(w: &Word) -> Result<RichStream> {
        let ext = periodic_rich_extension(w)?;
        Ok(RichStream::start(w, StreamMode::Periodic(ext)))
    }

    fn start(w: &Word, mode: StreamMode) -> RichStream {
        let mut tree = Eertree::new(Alphabet::inferred(w));
        tree.extend_from(w).expect("inferred alphabet");
        RichStream {
            base: w.clone(),
            mode,
            tree,
            rounds: 0,
        }
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn mode(&self) -> &StreamMode {
        &self.mode
    }

    pub fn current(&self) -> Word {
        Word::from(self.tree.word())
    }

    /// The first `len` letters of the infinite word.
    pub fn prefix(&mut self, len: usize) -> Result<Word> {
        while self.tree.len() < len {
            self.grow()?;
        }
        Ok(Word::from(&self.tree.word()[..len]))
    }

    fn push_rich(&mut self, a: Letter) -> Result<()> {
        if self.tree.push(a)? {
            Ok(())
        } else {
            self.tree.undo();
            Err(Error::ConstructionFailed(format!(
                "appending {a} to {} breaks richness",
                Word::from(self.tree.word())
            )))
        }
    }

    fn grow(&mut self) -> Result<()> {
        match self.mode.clone() {
            StreamMode::Periodic(ext) => {
                let next = ext.power(self.rounds + 1);
                let from = self.tree.len();
                if !next.starts_with(self.tree.word()) {
                    return Err(Error::ConstructionFailed("closures are not nested".into()));
                }
                for &a in &next[from..] {
                    self.push_rich(a)?;
                }
            }
            StreamMode::Aperiodic { letter } => {
                let cur = self.current();
                let u = cut_to_power(&cur, letter).ok_or_else(|| {
                    Error::ConstructionFailed(format!(
                        "no power of {letter} reached the end of {cur}"
                    ))
                })?;
                for &a in u.iter() {
                    self.push_rich(a)?;
                }
                self.push_rich(letter)?;
                let run = Word::from(self.tree.word()).trailing_run(letter);
                let before = self.tree.word()[self.tree.len() - run - 1];
                self.push_rich(before)?;
            }
        }
        self.rounds += 1;
        Ok(())
    }
}

impl Iterator for RichStream {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.grow().ok().map(|_| self.current())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::richness::is_rich;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn max_power(x: &Word) -> usize {
        x.alph().iter().map(|a| x.max_power(a)).max().unwrap_or(0)
    }

    #[test]
    fn aperiodic_from_01() {
        let mut s = RichStream::aperiodic(&w("01")).unwrap();
        let p = s.prefix(200).unwrap();
        assert!(p.starts_with(&[0, 1]));
        assert!(is_rich(&p));
        assert!(max_power(&p) >= 5, "{p}");
    }

    #[test]
    fn aperiodic_from_ternary_seed() {
        let mut s = RichStream::aperiodic(&w("0020102202")).unwrap();
        let p = s.prefix(300).unwrap();
        assert!(is_rich(&p));
        assert!(p.starts_with(&w("0020102202")));
    }

    #[test]
    fn prefixes_are_nested_and_powers_grow() {
        let s = RichStream::aperiodic(&w("0110")).unwrap();
        let StreamMode::Aperiodic { letter } = *s.mode() else {
            unreachable!()
        };
        let mut prev = w("0110");
        let mut prev_power = prev.max_power(letter);
        for p in s.take(6) {
            assert!(p.len() > prev.len());
            assert!(p.starts_with(&prev));
            assert!(p.max_power(letter) > prev_power);
            prev_power = p.max_power(letter);
            prev = p;
        }
    }

    #[test]
    fn periodic_stream() {
        let s = RichStream::periodic(&w("0010")).unwrap();
        let StreamMode::Periodic(ext) = s.mode().clone() else {
            unreachable!()
        };
        let items: Vec<Word> = s.take(5).collect();
        for (k, p) in items.iter().enumerate() {
            assert_eq!(*p, ext.power(k + 1));
            assert!(is_rich(p));
        }
    }

    #[test]
    fn rejects_unary_and_non_rich() {
        assert!(matches!(
            RichStream::aperiodic(&w("000")),
            Err(Error::Unary(_))
        ));
        assert!(matches!(
            RichStream::aperiodic(&w("00101100")),
            Err(Error::NotRich(_))
        ));
        assert!(RichStream::periodic(&w("000")).is_ok());
    }
}
