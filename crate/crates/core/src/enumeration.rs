//! Counting rich words by walking the prefix tree of rich words.
//!
//! Richness is prefix-closed, so every rich word of length `n` is a rich
//! one-letter extension of a rich word of length `n - 1`. The walk keeps one
//! eertree per task and undoes each push on the way back.

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::eertree::Eertree;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_SPLIT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct EnumConfig {
    /// Upper limit on the estimated number of visited nodes.
    pub budget: u64,
    /// Prefix length at which the walk is split into parallel tasks.
    pub split_depth: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            budget: DEFAULT_BUDGET,
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

/// `sum_{n <= n_max} k^n`, saturating. Never below the true node count.
pub fn node_estimate(k: usize, n_max: usize) -> u64 {
    let mut total: u64 = 0;
    let mut level: u64 = 1;
    for _ in 0..=n_max {
        total = total.saturating_add(level);
        level = level.saturating_mul(k as u64);
    }
    total
}

pub(crate) fn check_budget(k: usize, n_max: usize, budget: u64) -> Result<()> {
    let estimate = node_estimate(k, n_max);
    if estimate > budget {
        Err(Error::BudgetExceeded { estimate, budget })
    } else {
        Ok(())
    }
}

fn walk(t: &mut Eertree, k: u8, n_max: usize, counts: &mut [u64]) {
    counts[t.len()] += 1;
    if t.len() == n_max {
        return;
    }
    for a in 0..k {
        if t.push(a).expect("letter in alphabet") {
            walk(t, k, n_max, counts);
        }
        t.undo();
    }
}

/// Rich prefixes of length exactly `depth`; shorter ones are tallied in `counts`.
fn collect_prefixes(t: &mut Eertree, k: u8, depth: usize, counts: &mut [u64], out: &mut Vec<Word>) {
    if t.len() == depth {
        out.push(Word::from(t.word()));
        return;
    }
    counts[t.len()] += 1;
    for a in 0..k {
        if t.push(a).expect("letter in alphabet") {
            collect_prefixes(t, k, depth, counts, out);
        }
        t.undo();
    }
}

/// `r_k(n)` for `n = 0..=n_max`, counting all words over `{0, …, k-1}`
/// (including those using fewer letters).
pub fn count_rich(k: usize, n_max: usize, config: EnumConfig) -> Result<Vec<u64>> {
    let alphabet = Alphabet::new(k)?;
    check_budget(k, n_max, config.budget)?;
    let k = k as u8;
    let depth = config.split_depth.min(n_max);
    let mut counts = vec![0u64; n_max + 1];
    let mut prefixes = Vec::new();
    collect_prefixes(
        &mut Eertree::new(alphabet),
        k,
        depth,
        &mut counts,
        &mut prefixes,
    );
    let deep = prefixes
        .into_par_iter()
        .map(|p| {
            let mut t = Eertree::new(alphabet);
            t.extend_from(&p).expect("letters in alphabet");
            let mut local = vec![0u64; n_max + 1];
            walk(&mut t, k, n_max, &mut local);
            local
        })
        .reduce(
            || vec![0u64; n_max + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    counts.iter_mut().zip(deep).for_each(|(x, y)| *x += y);
    Ok(counts)
}

/// Non-rich words of length `n` all of whose proper factors are rich, in
/// lexicographic order.
pub fn minimal_nonrich(k: usize, n: usize, config: EnumConfig) -> Result<Vec<Word>> {
    let alphabet = Alphabet::new(k)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    check_budget(k, n, config.budget)?;
    let mut out = Vec::new();
    let mut t = Eertree::new(alphabet);
    minimal_walk(&mut t, k as u8, n, &mut out);
    Ok(out)
}

fn minimal_walk(t: &mut Eertree, k: u8, n: usize, out: &mut Vec<Word>) {
    for a in 0..k {
        let created = t.push(a).expect("letter in alphabet");
        if t.len() < n {
            if created {
                minimal_walk(t, k, n, out);
            }
        } else if !created && crate::richness::is_rich(&t.word()[1..]) {
            // the prefix and the suffix of length n - 1 cover every proper factor
            out.push(Word::from(t.word()));
        }
        t.undo();
    }
}

/// Non-rich words of length `n` whose suffix of length `n - 1` is rich, in
/// lexicographic order. These are the words that end in a new non-rich
/// factor: none of them has a shorter non-rich suffix. There are
/// `k·r_k(n-1) - r_k(n)` of them, and for `n` up to the first non-rich
/// length they coincide with [`minimal_nonrich`].
pub fn nonrich_with_rich_suffix(k: usize, n: usize, config: EnumConfig) -> Result<Vec<Word>> {
    let alphabet = Alphabet::new(k)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    check_budget(k, n, config.budget)?;
    let mut out = Vec::new();
    let mut t = Eertree::new(alphabet);
    failing_children(&mut t, k as u8, n, &mut out);
    // built reversed: a rich prefix followed by a failing letter
    let mut out: Vec<Word> = out.into_iter().map(|w| w.reversed()).collect();
    out.sort();
    Ok(out)
}

fn failing_children(t: &mut Eertree, k: u8, n: usize, out: &mut Vec<Word>) {
    for a in 0..k {
        let created = t.push(a).expect("letter in alphabet");
        if t.len() < n {
            if created {
                failing_children(t, k, n, out);
            }
        } else if !created {
            out.push(Word::from(t.word()));
        }
        t.undo();
    }
}

/// The ratio bound on `r_k(n) / k^n`: `(63/64)^{⌊n/8⌋}` for `k = 2` and
/// `(1 - k(k-1)(k-2)/k^4)^{⌊n/4⌋}` for `k >= 3`.
pub fn upper_bound_ratio(k: usize, n: usize) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "ratio bound needs an alphabet of at least two letters, got {k}"
        )));
    }
    let (base, reps) = if k == 2 {
        (BigRational::new(63.into(), 64.into()), n / 8)
    } else {
        let k = BigInt::from(k);
        let bad = &k * (&k - 1) * (&k - 2);
        let all = k.pow(4);
        (BigRational::new(&all - bad, all), n / 4)
    };
    let mut r = BigRational::one();
    for _ in 0..reps {
        r *= &base;
    }
    Ok(r)
}

/// Counts of binary [`nonrich_with_rich_suffix`] words of lengths 8 to 12,
/// the weights of the recurrence.
pub const RECURRENCE_WEIGHTS: [(usize, i64); 5] = [(8, 4), (9, 16), (10, 44), (11, 108), (12, 266)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub n: usize,
    pub value: i64,
    pub exact: Option<u64>,
}

impl RecurrenceRow {
    /// The bound falls below the true count.
    pub fn violated(&self) -> bool {
        self.exact.is_some_and(|e| (e as i128) > self.value as i128)
    }
}

/// `r(n) = 2 r(n-1) - 4 r(n-8) - 16 r(n-9) - 44 r(n-10) - 108 r(n-11) - 266 r(n-12)`
/// seeded with `seeds` for `n < seeds.len()`, side by side with `exact`.
pub fn upper_bound_recurrence(n_max: usize, seeds: &[u64], exact: &[u64]) -> Vec<RecurrenceRow> {
    let mut values: Vec<i64> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = if n < seeds.len() {
            seeds[n] as i64
        } else {
            let mut v = 2 * values[n - 1];
            for (back, weight) in RECURRENCE_WEIGHTS {
                if n >= back {
                    v -= weight * values[n - back];
                }
            }
            v
        };
        values.push(v);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(n, value)| RecurrenceRow {
            n,
            value,
            exact: exact.get(n).copied(),
        })
        .collect()
}

/// `lb(0) = 1`, `lb(n) = lb(n-1) + lb(⌊n/3⌋)`.
pub fn lower_bound_recurrence(k: usize, n_max: usize) -> Result<Vec<u64>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "lower bound recurrence needs at least two letters, got {k}"
        )));
    }
    let mut lb = vec![1u64];
    for n in 1..=n_max {
        let v = lb[n - 1]
            .checked_add(lb[n / 3])
            .ok_or(Error::LimitExceeded {
                what: "lower bound recurrence length",
                value: n_max,
                limit: n - 1,
            })?;
        lb.push(v);
    }
    Ok(lb)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub alphabet_size: usize,
    pub exact: Vec<u64>,
    /// Bound on `r_k(n) / k^n`; empty when bounds were not requested.
    pub upper_ratio: Vec<BigRational>,
    /// Binary only.
    pub upper_recurrence: Vec<i64>,
    pub lower_recurrence: Vec<u64>,
}

impl CountSeries {
    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// `upper_ratio(n) · k^n`, an integer for both bound families.
    pub fn upper_count(&self, n: usize) -> Option<BigRational> {
        let r = self.upper_ratio.get(n)?;
        Some(r * BigRational::from_integer(BigInt::from(self.alphabet_size).pow(n as u32)))
    }
}

/// Exact counts, plus every bound series when `bounds` is set and `k >= 2`.
pub fn count_series(
    k: usize,
    n_max: usize,
    bounds: bool,
    config: EnumConfig,
) -> Result<CountSeries> {
    let exact = count_rich(k, n_max, config)?;
    let mut s = CountSeries {
        alphabet_size: k,
        exact,
        upper_ratio: Vec::new(),
        upper_recurrence: Vec::new(),
        lower_recurrence: Vec::new(),
    };
    if bounds && k >= 2 {
        s.upper_ratio = (0..=n_max)
            .map(|n| upper_bound_ratio(k, n))
            .collect::<Result<_>>()?;
        s.lower_recurrence = lower_bound_recurrence(k, n_max)?;
        if k == 2 {
            let seeds = &s.exact[..s.exact.len().min(12)];
            s.upper_recurrence = upper_bound_recurrence(n_max, seeds, &s.exact)
                .into_iter()
                .map(|r| r.value)
                .collect();
        }
    }
    Ok(s)
}

pub const SERIES_HEADER: [&str; 5] = [
    "n",
    "exact",
    "upper_ratio_times_k_pow_n",
    "lower_recurrence",
    "upper_recurrence",
];

pub fn write_series_csv<W: Write>(s: &CountSeries, out: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(SERIES_HEADER)?;
    for (n, e) in s.exact.iter().enumerate() {
        csv.write_record([
            n.to_string(),
            e.to_string(),
            s.upper_count(n).map(|r| r.to_string()).unwrap_or_default(),
            s.lower_recurrence
                .get(n)
                .map(|v| v.to_string())
                .unwrap_or_default(),
            s.upper_recurrence
                .get(n)
                .map(|v| v.to_string())
                .unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// Reads back a file written by [`write_series_csv`].
pub fn read_series_csv<R: Read>(alphabet_size: usize, input: R) -> Result<CountSeries> {
    let mut csv = csv::Reader::from_reader(input);
    if csv.headers()?.iter().ne(SERIES_HEADER) {
        return Err(Error::InvalidArgument("unexpected series header".into()));
    }
    let bad = |what: &str, n: usize| Error::InvalidArgument(format!("bad {what} in row {n}"));
    let mut s = CountSeries {
        alphabet_size,
        exact: Vec::new(),
        upper_ratio: Vec::new(),
        upper_recurrence: Vec::new(),
        lower_recurrence: Vec::new(),
    };
    for (n, rec) in csv.records().enumerate() {
        let rec = rec?;
        if rec.get(0).and_then(|x| x.parse::<usize>().ok()) != Some(n) {
            return Err(bad("index", n));
        }
        s.exact.push(rec[1].parse().map_err(|_| bad("count", n))?);
        if !rec[2].is_empty() {
            let upper: BigRational = rec[2].parse().map_err(|_| bad("upper bound", n))?;
            let scale = BigInt::from(alphabet_size).pow(n as u32);
            s.upper_ratio.push(upper / BigRational::from_integer(scale));
        }
        if !rec[3].is_empty() {
            s.lower_recurrence
                .push(rec[3].parse().map_err(|_| bad("lower bound", n))?);
        }
        if !rec[4].is_empty() {
            s.upper_recurrence
                .push(rec[4].parse().map_err(|_| bad("recurrence bound", n))?);
        }
    }
    Ok(s)
}

/// Whether the ratio bound and the lower recurrence bracket every exact count.
pub fn bounds_hold(s: &CountSeries) -> bool {
    s.exact.iter().enumerate().all(|(n, &e)| {
        let e_big = BigRational::from_integer(BigInt::from(e));
        s.upper_count(n).is_none_or(|u| u >= e_big)
            && s.lower_recurrence.get(n).is_none_or(|&l| l <= e)
    }) && s.upper_ratio.iter().all(|r| *r > BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::richness::{brute_is_rich, defect};
    use crate::word::all_words;

    const R2: [u64; 13] = [1, 2, 4, 8, 16, 32, 64, 128, 252, 488, 932, 1756, 3246];

    #[test]
    fn binary_prefix_of_the_list() {
        assert_eq!(count_rich(2, 12, EnumConfig::default()).unwrap(), R2);
    }

    #[test]
    fn unary_and_split_depths() {
        assert_eq!(
            count_rich(1, 9, EnumConfig::default()).unwrap(),
            vec![1; 10]
        );
        for split in [0, 1, 3, 20] {
            let c = EnumConfig {
                split_depth: split,
                ..EnumConfig::default()
            };
            assert_eq!(count_rich(2, 12, c).unwrap(), R2);
        }
    }

    #[test]
    fn agrees_with_filtering() {
        for (k, n_max) in [(2, 12), (3, 7), (4, 5)] {
            let counts = count_rich(k, n_max, EnumConfig::default()).unwrap();
            for (n, &c) in counts.iter().enumerate() {
                let a = Alphabet::new(k).unwrap();
                let brute = all_words(a, n).filter(|w| brute_is_rich(w)).count() as u64;
                assert_eq!(c, brute, "k = {k}, n = {n}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c = EnumConfig {
            budget: 1000,
            ..EnumConfig::default()
        };
        assert!(matches!(
            count_rich(2, 12, c),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(count_rich(2, 8, c).is_ok());
        assert!(matches!(
            count_rich(11, 2, c),
            Err(Error::InvalidAlphabet(11))
        ));
    }

    #[test]
    fn shortest_nonrich_words() {
        let c = EnumConfig::default();
        for n in 0..8 {
            assert!(minimal_nonrich(2, n, c).unwrap().is_empty());
        }
        let eight: Vec<String> = minimal_nonrich(2, 8, c)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(eight, ["00101100", "00110100", "11001011", "11010011"]);
        let counts: Vec<usize> = (9..=12)
            .map(|n| minimal_nonrich(2, n, c).unwrap().len())
            .collect();
        assert_eq!(counts, [8, 20, 36, 80]);
        for w in minimal_nonrich(2, 11, c).unwrap() {
            assert_eq!(defect(&w), 1);
        }
    }

    #[test]
    fn nonrich_words_with_rich_suffix() {
        let c = EnumConfig::default();
        assert_eq!(
            nonrich_with_rich_suffix(2, 8, c).unwrap(),
            minimal_nonrich(2, 8, c).unwrap()
        );
        let counts: Vec<usize> = (9..=12)
            .map(|n| nonrich_with_rich_suffix(2, n, c).unwrap().len())
            .collect();
        assert_eq!(counts, [16, 44, 108, 266]);
        for n in 9..=12 {
            assert_eq!(counts[n - 9] as u64, 2 * R2[n - 1] - R2[n]);
        }
        for n in 8..=11 {
            let brute: Vec<Word> = all_words(Alphabet::BINARY, n)
                .filter(|w| !brute_is_rich(w) && brute_is_rich(&w[1..]))
                .collect();
            assert_eq!(nonrich_with_rich_suffix(2, n, c).unwrap(), brute);
            let strict: Vec<Word> = brute
                .into_iter()
                .filter(|w| brute_is_rich(&w[..n - 1]))
                .collect();
            assert_eq!(minimal_nonrich(2, n, c).unwrap(), strict);
        }
        for w in nonrich_with_rich_suffix(2, 12, c).unwrap() {
            assert_eq!(defect(&w), 1);
        }
    }

    #[test]
    fn ratio_bounds() {
        assert_eq!(
            upper_bound_ratio(2, 8).unwrap(),
            BigRational::new(63.into(), 64.into())
        );
        assert_eq!(upper_bound_ratio(2, 7).unwrap(), BigRational::one());
        assert_eq!(
            upper_bound_ratio(3, 4).unwrap(),
            BigRational::new(25.into(), 27.into())
        );
        assert!(upper_bound_ratio(1, 4).is_err());
        assert_eq!(
            BigRational::new(252.into(), 256.into()),
            upper_bound_ratio(2, 8).unwrap()
        );
    }

    #[test]
    fn recurrences() {
        let rows = upper_bound_recurrence(12, &R2[..12], &R2);
        assert_eq!(rows[11].value, 1756);
        assert!(!rows[11].violated());
        assert_eq!(rows[12].value, 2662);
        assert!(rows[12].violated());

        let lb = lower_bound_recurrence(2, 12).unwrap();
        assert_eq!(lb[1], 2);
        assert_eq!(lb[9], lb[8] + lb[3]);
        assert!(lb.iter().zip(R2).all(|(&l, e)| l <= e));
    }

    #[test]
    fn series_round_trip() {
        let s = count_series(2, 12, true, EnumConfig::default()).unwrap();
        assert!(bounds_hold(&s));
        assert_eq!(
            s.upper_count(8).unwrap(),
            BigRational::from_integer(252.into())
        );
        let mut buf = Vec::new();
        write_series_csv(&s, &mut buf).unwrap();
        let back = read_series_csv(2, &buf[..]).unwrap();
        assert_eq!(back, s);

        let empty = CountSeries {
            alphabet_size: 2,
            exact: vec![],
            upper_ratio: vec![],
            upper_recurrence: vec![],
            lower_recurrence: vec![],
        };
        let mut buf = Vec::new();
        write_series_csv(&empty, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,exact,upper_ratio_times_k_pow_n,lower_recurrence,upper_recurrence\n"
        );
    }
}
