use proptest::prelude::*;

use richwords::closure::{left_closure, proper_closure, right_closure};
use richwords::defect::{
    bracket, lower_bound_context, upper_bound_closure, upper_bound_letter_power,
    upper_bound_rich_edge,
};
use richwords::eertree::Eertree;
use richwords::extension::{joinable_necessary, rich_extension_letters, Side};
use richwords::grid2d::{grid_is_rich, tile_rectangle, Grid2D};
use richwords::richness::{defect, is_rich};
use richwords::stream::RichStream;
use richwords::{Alphabet, Letter, Word};

fn word(k: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(Word::from_letters)
}

/// Random rich words: each step keeps the chosen letter if it creates a new
/// palindrome and otherwise takes the next letter that does.
fn rich_word(k: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(move |choices| {
        let mut t = Eertree::new(Alphabet::new(k as usize).unwrap());
        for c in choices {
            let pick = (0..k).map(|d| (c + d) % k).find(|&a| {
                let ok = t.push(a).unwrap();
                t.undo();
                ok
            });
            t.push(pick.expect("rich words extend")).unwrap();
        }
        Word::from(t.word())
    })
}

proptest! {
    #[test]
    fn bracket_is_ordered(x in word(2, 14).prop_filter("non-empty", |x| !x.is_empty()), k in 0usize..3) {
        let d = defect(&x);
        let lo = lower_bound_context(&x, k);
        let lo_next = lower_bound_context(&x, k + 1);
        let b = bracket(&x, k + 1).unwrap();
        let c = upper_bound_closure(&x).unwrap();
        let props = c.via_right
            .min(c.via_left)
            .min(upper_bound_rich_edge(&x).unwrap())
            .min(upper_bound_letter_power(&x).unwrap());
        prop_assert!(d <= lo && lo <= lo_next && lo_next == b.lower);
        prop_assert!(b.lower <= b.upper && b.upper <= props);
    }

    #[test]
    fn rich_words_have_zero_bracket(x in rich_word(3, 20).prop_filter("non-empty", |x| !x.is_empty())) {
        prop_assert_eq!(upper_bound_rich_edge(&x).unwrap(), 0);
        let b = bracket(&x, 2).unwrap();
        prop_assert_eq!((b.lower, b.upper), (0, 0));
    }

    #[test]
    fn defect_is_reversal_invariant(x in word(3, 18)) {
        prop_assert_eq!(defect(&x), defect(&x.reversed()));
    }

    #[test]
    fn defect_is_monotone_on_factors(x in word(2, 18), cut in 0usize..18) {
        let cut = cut.min(x.len());
        prop_assert!(defect(&x[..cut]) <= defect(&x));
        prop_assert!(defect(&x[cut..]) <= defect(&x));
    }

    #[test]
    fn closures_are_palindromes_around_w(x in word(3, 14)) {
        let r = right_closure(&x);
        let l = left_closure(&x);
        prop_assert!(r.is_palindrome() && r.starts_with(&x));
        prop_assert!(l.is_palindrome() && l.ends_with(&x));
        prop_assert_eq!(l, right_closure(&x.reversed()).reversed());
    }

    #[test]
    fn closures_preserve_richness(x in rich_word(3, 16).prop_filter("non-empty", |x| !x.is_empty())) {
        prop_assert!(is_rich(&right_closure(&x)));
        prop_assert!(is_rich(&left_closure(&x)));
        prop_assert!(is_rich(&proper_closure(&x).unwrap()));
    }

    #[test]
    fn new_letters_always_extend(x in rich_word(2, 16)) {
        let letters = rich_extension_letters(&x, Side::Right, Alphabet::new(4).unwrap()).unwrap();
        prop_assert!(letters.contains(2) && letters.contains(3));
        let left = rich_extension_letters(&x, Side::Left, Alphabet::new(4).unwrap()).unwrap();
        prop_assert!(left.contains(2) && left.contains(3));
    }

    #[test]
    fn factors_of_one_rich_word_pass_the_join_test(
        x in rich_word(3, 24),
        a in 0usize..24, b in 0usize..24, c in 0usize..24, d in 0usize..24,
    ) {
        let n = x.len();
        let (a, b) = (a.min(n).min(b.min(n)), a.min(n).max(b.min(n)));
        let (c, d) = (c.min(n).min(d.min(n)), c.min(n).max(d.min(n)));
        prop_assert!(joinable_necessary(&x.factor(a, b), &x.factor(c, d)).unwrap());
    }

    #[test]
    fn periodic_streams_stay_rich(x in rich_word(3, 10).prop_filter("non-empty", |x| !x.is_empty())) {
        let s = RichStream::periodic(&x).unwrap();
        for p in s.take(4) {
            prop_assert!(is_rich(&p));
        }
    }

    #[test]
    fn grid_text_round_trips(cells in prop::collection::vec(prop::option::of(0..3u8), 1..=30), width in 1usize..6, top in -5i64..5, left in -5i64..5) {
        let height = cells.len().div_ceil(width);
        let mut text = format!("origin {top} {left}\n");
        for r in 0..height {
            for c in 0..width {
                let ch = cells.get(r * width + c).copied().flatten().map_or('.', |a| (b'0' + a) as char);
                text.push(ch);
            }
            text.push('\n');
        }
        let g: Grid2D = text.parse().unwrap();
        prop_assert_eq!(g.to_string(), text);
    }

    #[test]
    fn grid_richness_matches_sub_runs(rows in prop::collection::vec(prop::collection::vec(0..2u8, 4), 1..5)) {
        let rows: Vec<Word> = rows.into_iter().map(Word::from_letters).collect();
        let g = Grid2D::from_rows((0, 0), &rows, Alphabet::BINARY).unwrap();
        let cols: Vec<Word> = (0..4)
            .map(|j| Word::from_letters(rows.iter().map(|r| r[j]).collect::<Vec<Letter>>()))
            .collect();
        let all_rich = rows.iter().chain(&cols).all(|x| is_rich(x));
        prop_assert_eq!(grid_is_rich(&g), all_rich);
    }

    #[test]
    fn accepted_tilings_are_rich(rows in prop::collection::vec(prop::collection::vec(0..2u8, 1..4), 1..4), reps in 1usize..4) {
        let width = rows[0].len();
        let rows: Vec<Word> = rows.into_iter().map(|mut r| { r.resize(width, 0); Word::from_letters(r) }).collect();
        let g = Grid2D::from_rows((2, -1), &rows, Alphabet::BINARY).unwrap();
        if let Ok(t) = tile_rectangle(&g, reps, 4) {
            prop_assert!(grid_is_rich(&t));
            prop_assert_eq!(t.len(), g.len() * reps * reps);
        }
    }
}
