//! Palindromic tree (eertree) with exact LIFO rollback.
//!
//! Node 0 is the imaginary root of length -1, node 1 the empty palindrome.
//! Every other node is a distinct non-empty palindromic factor of the
//! buffered word. A push either creates exactly one node (the longest
//! palindromic suffix of the new buffer is new, hence unioccurrent) or none;
//! the journal records which, so `undo` can restore the previous state.

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word, MAX_ALPHABET};

const IMAGINARY: u32 = 0;
const EMPTY: u32 = 1;
const NONE: u32 = 0;

#[derive(Debug, Clone)]
struct Node {
    len: i32,
    link: u32,
    // children never point at a root, so 0 doubles as "absent"
    next: [u32; MAX_ALPHABET as usize],
}

impl Node {
    fn new(len: i32, link: u32) -> Node {
        Node {
            len,
            link,
            next: [NONE; MAX_ALPHABET as usize],
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    prev_last: u32,
    // parent whose edge was added, when the push created a node
    parent: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct Eertree {
    alphabet: Alphabet,
    nodes: Vec<Node>,
    buf: Vec<Letter>,
    last: u32,
    journal: Vec<Entry>,
    missed: usize,
}

impl Eertree {
    pub fn new(alphabet: Alphabet) -> Eertree {
        Eertree {
            alphabet,
            nodes: vec![Node::new(-1, IMAGINARY), Node::new(0, IMAGINARY)],
            buf: Vec::new(),
            last: EMPTY,
            journal: Vec::new(),
            missed: 0,
        }
    }

    /// Builds the tree of `w` over its inferred alphabet.
    pub fn of(w: &[Letter]) -> Eertree {
        let alphabet = Alphabet::inferred(&Word::from(w));
        let mut t = Eertree::new(alphabet);
        for &a in w {
            t.push_unchecked(a);
        }
        t
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Appends `a`; returns whether a new palindrome was created.
    pub fn push(&mut self, a: Letter) -> Result<bool> {
        if !self.alphabet.contains(a) {
            return Err(Error::InvalidLetter {
                found: (b'0' + a.min(9)) as char,
                position: self.buf.len(),
                alphabet_size: self.alphabet.size() as u8,
            });
        }
        Ok(self.push_unchecked(a))
    }

    fn push_unchecked(&mut self, a: Letter) -> bool {
        let i = self.buf.len();
        self.buf.push(a);
        let prev_last = self.last;
        let parent = self.extendable_suffix(prev_last, i, a);
        let child = self.nodes[parent as usize].next[a as usize];
        if child != NONE {
            self.last = child;
            self.missed += 1;
            self.journal.push(Entry {
                prev_last,
                parent: None,
            });
            return false;
        }
        let len = self.nodes[parent as usize].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let from = self.nodes[parent as usize].link;
            let y = self.extendable_suffix(from, i, a);
            self.nodes[y as usize].next[a as usize]
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(Node::new(len, link));
        self.nodes[parent as usize].next[a as usize] = id;
        self.last = id;
        self.journal.push(Entry {
            prev_last,
            parent: Some(parent),
        });
        true
    }

    /// Longest palindromic suffix `X` (walking links from `v`) such that
    /// `a X a` ends at position `i`.
    fn extendable_suffix(&self, mut v: u32, i: usize, a: Letter) -> u32 {
        loop {
            let len = self.nodes[v as usize].len;
            let j = i as i64 - len as i64 - 1;
            if j >= 0 && self.buf[j as usize] == a {
                return v;
            }
            v = self.nodes[v as usize].link;
        }
    }

    /// Reverts the most recent push.
    ///
    /// # Panics
    /// On an empty buffer.
    pub fn undo(&mut self) {
        let entry = self.journal.pop().expect("undo on an empty eertree");
        let a = self.buf.pop().expect("journal and buffer out of sync");
        match entry.parent {
            Some(parent) => {
                self.nodes.pop();
                self.nodes[parent as usize].next[a as usize] = NONE;
            }
            None => self.missed -= 1,
        }
        self.last = entry.prev_last;
    }

    /// Undoes pushes until the buffer has length `len`.
    pub fn truncate(&mut self, len: usize) {
        while self.buf.len() > len {
            self.undo();
        }
    }

    /// Pushes `a`, reports whether it created a palindrome, and undoes it.
    pub fn probe(&mut self, a: Letter) -> Result<bool> {
        let created = self.push(a)?;
        self.undo();
        Ok(created)
    }

    pub fn extend_from(&mut self, letters: &[Letter]) -> Result<usize> {
        let mut created = 0;
        for &a in letters {
            created += self.push(a)? as usize;
        }
        Ok(created)
    }

    pub fn word(&self) -> &[Letter] {
        &self.buf
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    /// `|Pal(w)|`, counting the empty word.
    pub fn palindrome_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Number of pushes that created nothing; equals `|w| + 1 - |Pal(w)|`.
    pub fn defect(&self) -> usize {
        self.missed
    }

    pub fn is_rich(&self) -> bool {
        self.missed == 0
    }

    /// Whether the last push created a palindrome, i.e. the current longest
    /// palindromic suffix is unioccurrent. `None` on an empty buffer.
    pub fn last_created(&self) -> Option<bool> {
        self.journal.last().map(|e| e.parent.is_some())
    }

    pub fn lps_len(&self) -> usize {
        self.nodes[self.last as usize].len.max(0) as usize
    }

    /// Longest palindromic suffix strictly shorter than the buffer.
    pub fn lpps_len(&self) -> Option<usize> {
        if self.buf.is_empty() {
            return None;
        }
        let lps = self.lps_len();
        if lps < self.buf.len() {
            Some(lps)
        } else {
            let link = self.nodes[self.last as usize].link;
            Some(self.nodes[link as usize].len.max(0) as usize)
        }
    }

    /// Lengths of all distinct non-empty palindromic factors.
    pub fn palindrome_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes[2..].iter().map(|n| n.len as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::richness::brute_palindromes;
    use proptest::prelude::*;

    fn letters(s: &str) -> Vec<Letter> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn first_letter_creates() {
        let mut t = Eertree::new(Alphabet::BINARY);
        assert!(t.push(0).unwrap());
        assert_eq!(t.palindrome_count(), 2);
    }

    #[test]
    fn minimal_nonrich_last_push_creates_nothing() {
        let mut t = Eertree::new(Alphabet::BINARY);
        for a in letters("0010110") {
            assert!(t.push(a).unwrap());
        }
        assert!(!t.push(0).unwrap());
        assert_eq!(t.defect(), 1);
        assert_eq!(t.palindrome_count(), 8);
    }

    #[test]
    fn rich_ternary_word_creates_on_every_push() {
        let mut t = Eertree::new(Alphabet::TERNARY);
        for a in letters("0020102202") {
            assert!(t.push(a).unwrap());
        }
        assert_eq!(t.palindrome_count(), 11);
        t.undo();
        assert_eq!(t.palindrome_count(), 10);
    }

    #[test]
    fn undo_restores_empty_state() {
        let mut t = Eertree::new(Alphabet::BINARY);
        t.push(0).unwrap();
        t.undo();
        assert_eq!(t.palindrome_count(), 1);
        assert!(t.is_empty());

        t.extend_from(&letters("00101100")).unwrap();
        for _ in 0..8 {
            t.undo();
        }
        assert_eq!(t.palindrome_count(), 1);
        assert_eq!(t.defect(), 0);
        assert_eq!(t.lps_len(), 0);
        assert_eq!(t.last_created(), None);
    }

    #[test]
    #[should_panic(expected = "undo on an empty eertree")]
    fn undo_on_empty_panics() {
        Eertree::new(Alphabet::BINARY).undo();
    }

    #[test]
    fn letter_outside_alphabet_is_rejected() {
        let mut t = Eertree::new(Alphabet::BINARY);
        assert!(matches!(t.push(2), Err(Error::InvalidLetter { .. })));
        assert!(t.is_empty());
    }

    #[test]
    fn lps_and_lpps() {
        let t = Eertree::of(&letters("0020102202"));
        assert_eq!(t.lps_len(), 3); // 202
        assert_eq!(t.lpps_len(), Some(3));
        let t = Eertree::of(&letters("010"));
        assert_eq!(t.lps_len(), 3);
        assert_eq!(t.lpps_len(), Some(1));
        let t = Eertree::of(&letters("0"));
        assert_eq!(t.lpps_len(), Some(0));
    }

    fn ops() -> impl Strategy<Value = Vec<Option<u8>>> {
        prop::collection::vec(
            prop_oneof![3 => (0u8..3).prop_map(Some), 1 => Just(None)],
            0..60,
        )
    }

    proptest! {
        #[test]
        fn push_undo_interleavings_match_fresh_scan(ops in ops()) {
            let mut t = Eertree::new(Alphabet::TERNARY);
            for op in ops {
                match op {
                    Some(a) => { t.push(a).unwrap(); }
                    None if !t.is_empty() => t.undo(),
                    None => {}
                }
                let fresh = Eertree::of(t.word());
                prop_assert_eq!(t.palindrome_count(), fresh.palindrome_count());
                prop_assert_eq!(t.defect(), fresh.defect());
                prop_assert_eq!(t.lps_len(), fresh.lps_len());
                prop_assert_eq!(t.palindrome_count(), brute_palindromes(t.word()).len());
                prop_assert!(t.palindrome_count() <= t.len() + 1);
            }
        }
    }
}
