//! Partial two-dimensional words on `Z²` whose rows and columns are read
//! as words.
//!
//! Cell `(i, j)` is row `i`, column `j`. Horizontal words run along `j`,
//! vertical words along `i`, both in increasing order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::richness::is_rich;
use crate::word::{Alphabet, Letter, Word, MAX_ALPHABET};

pub type Cell = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub top: i64,
    pub left: i64,
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn bottom(&self) -> i64 {
        self.top + self.height as i64 - 1
    }

    pub fn right(&self) -> i64 {
        self.left + self.width as i64 - 1
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        i >= self.top && i <= self.bottom() && j >= self.left && j <= self.right()
    }

    pub fn inflate(&self, m: usize) -> Rect {
        Rect {
            top: self.top - m as i64,
            left: self.left - m as i64,
            height: self.height + 2 * m,
            width: self.width + 2 * m,
        }
    }

    fn union(&self, other: &Rect) -> Rect {
        let top = self.top.min(other.top);
        let left = self.left.min(other.left);
        Rect {
            top,
            left,
            height: (self.bottom().max(other.bottom()) - top + 1) as usize,
            width: (self.right().max(other.right()) - left + 1) as usize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
        })
    }
}

/// A maximal run of occupied cells in one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub start: Cell,
    pub direction: Direction,
    pub word: Word,
}

/// Finitely many occupied cells; every other cell holds `ε`.
#[derive(Clone, PartialEq, Eq)]
pub struct Grid2D {
    cells: BTreeMap<Cell, Letter>,
    alphabet: Alphabet,
    /// Declared frame kept for rendering, e.g. blank border rows read from text.
    frame: Option<Rect>,
}

impl Grid2D {
    pub fn new(alphabet: Alphabet) -> Grid2D {
        Grid2D {
            cells: BTreeMap::new(),
            alphabet,
            frame: None,
        }
    }

    /// A full rectangle with top-left corner `origin`.
    pub fn from_rows(origin: Cell, rows: &[Word], alphabet: Alphabet) -> Result<Grid2D> {
        let mut g = Grid2D::new(alphabet);
        for (di, row) in rows.iter().enumerate() {
            for (dj, &a) in row.iter().enumerate() {
                g.set((origin.0 + di as i64, origin.1 + dj as i64), a)?;
            }
        }
        Ok(g)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn get(&self, c: Cell) -> Option<Letter> {
        self.cells.get(&c).copied()
    }

    pub fn set(&mut self, c: Cell, a: Letter) -> Result<()> {
        if !self.alphabet.contains(a) {
            return Err(Error::InvalidGrid(format!(
                "letter {a} at {c:?} is outside the alphabet of size {}",
                self.alphabet.size()
            )));
        }
        self.cells.insert(c, a);
        Ok(())
    }

    pub fn clear(&mut self, c: Cell) {
        self.cells.remove(&c);
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, Letter)> + '_ {
        self.cells.iter().map(|(&c, &a)| (c, a))
    }

    /// Bounding box of the occupied cells.
    pub fn bbox(&self) -> Option<Rect> {
        let mut it = self.cells.keys();
        let &(i0, j0) = it.next()?;
        let (mut top, mut bottom, mut left, mut right) = (i0, i0, j0, j0);
        for &(i, j) in it {
            top = top.min(i);
            bottom = bottom.max(i);
            left = left.min(j);
            right = right.max(j);
        }
        Some(Rect {
            top,
            left,
            height: (bottom - top + 1) as usize,
            width: (right - left + 1) as usize,
        })
    }

    fn render_frame(&self) -> Option<Rect> {
        match (self.frame, self.bbox()) {
            (Some(f), Some(b)) => Some(f.union(&b)),
            (f, b) => f.or(b),
        }
    }

    /// Occupies every cell of its bounding box.
    pub fn is_full_rectangle(&self) -> bool {
        self.bbox()
            .is_some_and(|b| b.height * b.width == self.len())
    }

    /// Every maximal horizontal run, then every maximal vertical run.
    pub fn runs(&self) -> Vec<Run> {
        let mut out = Vec::new();
        collect_runs(
            self.cells.iter().map(|(&c, &a)| (c, a)),
            Direction::Horizontal,
            &mut out,
        );
        let mut by_column: Vec<(Cell, Letter)> =
            self.cells().map(|((i, j), a)| ((j, i), a)).collect();
        by_column.sort();
        collect_runs(by_column.into_iter(), Direction::Vertical, &mut out);
        out
    }

    /// Cells of `r` in row-major order, `None` for empty ones.
    fn dense(&self, r: &Rect) -> Vec<Option<Letter>> {
        let mut v = vec![None; r.height * r.width];
        for (&(i, j), &a) in &self.cells {
            if r.contains((i, j)) {
                v[(i - r.top) as usize * r.width + (j - r.left) as usize] = Some(a);
            }
        }
        v
    }
}

/// `sorted` holds cells keyed as (line, position) in increasing order.
fn collect_runs(
    sorted: impl Iterator<Item = (Cell, Letter)>,
    direction: Direction,
    out: &mut Vec<Run>,
) {
    let mut cur: Option<(Cell, Cell, Vec<Letter>)> = None;
    let flush = |cur: Option<(Cell, Cell, Vec<Letter>)>, out: &mut Vec<Run>| {
        if let Some(((line, pos), _, letters)) = cur {
            let start = match direction {
                Direction::Horizontal => (line, pos),
                Direction::Vertical => (pos, line),
            };
            out.push(Run {
                start,
                direction,
                word: Word::from_letters(letters),
            });
        }
    };
    for ((line, pos), a) in sorted {
        match &mut cur {
            Some((_, last, letters)) if last.0 == line && last.1 + 1 == pos => {
                letters.push(a);
                *last = (line, pos);
            }
            _ => {
                flush(cur.take(), out);
                cur = Some(((line, pos), (line, pos), vec![a]));
            }
        }
    }
    flush(cur, out);
}

impl fmt::Display for Grid2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(r) = self.render_frame() else {
            return writeln!(f, "origin 0 0");
        };
        writeln!(f, "origin {} {}", r.top, r.left)?;
        for i in r.top..=r.bottom() {
            let line: String = (r.left..=r.right())
                .map(|j| self.get((i, j)).map_or('.', |a| (b'0' + a) as char))
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grid2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid2D(\n{self})")
    }
}

impl Grid2D {
    /// Parses the text format: a header `origin i j`, then one line per row
    /// with digits for letters and `.` for `ε`. The alphabet is inferred
    /// from the largest digit unless given.
    pub fn parse(text: &str, alphabet: Option<Alphabet>) -> Result<Grid2D> {
        let bad = |msg: String| Error::InvalidGrid(msg);
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("missing header line".into()))?;
        let origin = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["origin", i, j] => (
                i.parse::<i64>()
                    .map_err(|_| bad(format!("bad row origin {i:?}")))?,
                j.parse::<i64>()
                    .map_err(|_| bad(format!("bad column origin {j:?}")))?,
            ),
            _ => return Err(bad(format!("expected \"origin i j\", found {header:?}"))),
        };
        let rows: Vec<&str> = lines.collect();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut cells = BTreeMap::new();
        let mut largest = 0;
        for (di, row) in rows.iter().enumerate() {
            if row.chars().count() != width {
                return Err(bad(format!(
                    "row {} has length {}, expected {width}",
                    di + 1,
                    row.chars().count()
                )));
            }
            for (dj, c) in row.chars().enumerate() {
                let cell = (origin.0 + di as i64, origin.1 + dj as i64);
                match c {
                    '.' => {}
                    '0'..='9' => {
                        let a = c as u8 - b'0';
                        largest = largest.max(a);
                        cells.insert(cell, a);
                    }
                    _ => return Err(bad(format!("unexpected character {c:?} in row {}", di + 1))),
                }
            }
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => Alphabet::new((largest + 1).min(MAX_ALPHABET) as usize)?,
        };
        let mut g = Grid2D::new(alphabet);
        for (c, a) in cells {
            g.set(c, a)?;
        }
        if width > 0 {
            g.frame = Some(Rect {
                top: origin.0,
                left: origin.1,
                height: rows.len(),
                width,
            });
        }
        Ok(g)
    }
}

impl FromStr for Grid2D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grid2D> {
        Grid2D::parse(s, None)
    }
}

/// The first maximal run that is not rich.
pub fn first_nonrich_run(g: &Grid2D) -> Option<Run> {
    g.runs().into_iter().find(|r| !is_rich(&r.word))
}

/// Every maximal horizontal and vertical run is rich. Runs suffice since
/// richness passes to factors.
pub fn grid_is_rich(g: &Grid2D) -> bool {
    first_nonrich_run(g).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    ExtendableToMargin,
    NotExtendable,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::ExtendableToMargin => "extendable",
            VerdictKind::NotExtendable => "not-extendable",
            VerdictKind::Unknown => "unknown",
        })
    }
}

/// Why a grid cannot be extended to a rich plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The grid already has a non-rich run.
    NonRichRun(Run),
    /// An empty cell whose occupied neighbours in the two directions leave
    /// no letter: for every letter, `left·a·right` or `above·a·below` is
    /// not rich.
    ForcedCell {
        cell: Cell,
        left: Word,
        right: Word,
        above: Word,
        below: Word,
        alphabet: Alphabet,
    },
    /// No rich filling of the box inflated by `margin` exists; any rich
    /// plane would restrict to one.
    Exhausted { margin: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::NonRichRun(r) => {
                write!(
                    f,
                    "{} run at ({}, {}) is not rich: {}",
                    r.direction, r.start.0, r.start.1, r.word
                )
            }
            Certificate::ForcedCell {
                cell,
                left,
                right,
                above,
                below,
                ..
            } => write!(
                f,
                "cell ({}, {}): horizontal {left}_{right}, vertical {above}_{below}",
                cell.0, cell.1
            ),
            Certificate::Exhausted { margin } => {
                write!(f, "no rich filling within margin {margin}")
            }
        }
    }
}

impl Certificate {
    /// The two completions through the cell for letter `a`.
    pub fn completions(&self, a: Letter) -> Option<(Word, Word)> {
        match self {
            Certificate::ForcedCell {
                left,
                right,
                above,
                below,
                ..
            } => Some((
                left.concat(&[a]).concat(right),
                above.concat(&[a]).concat(below),
            )),
            _ => None,
        }
    }
}

/// Re-checks a local certificate against `g` with the richness test alone.
/// Exhaustion certificates are not locally checkable and return `false`.
pub fn verify_certificate(g: &Grid2D, cert: &Certificate) -> bool {
    match cert {
        Certificate::NonRichRun(r) => {
            !is_rich(&r.word)
                && r.word.iter().enumerate().all(|(k, &a)| {
                    let c = match r.direction {
                        Direction::Horizontal => (r.start.0, r.start.1 + k as i64),
                        Direction::Vertical => (r.start.0 + k as i64, r.start.1),
                    };
                    g.get(c) == Some(a)
                })
        }
        Certificate::ForcedCell { cell, alphabet, .. } => {
            let (i, j) = *cell;
            let read = |di: i64, dj: i64| -> Word {
                let mut v = Vec::new();
                let mut c = (i + di, j + dj);
                while let Some(a) = g.get(c) {
                    v.push(a);
                    c = (c.0 + di, c.1 + dj);
                }
                Word::from_letters(v)
            };
            let (left, right) = (read(0, -1).reversed(), read(0, 1));
            let (above, below) = (read(-1, 0).reversed(), read(1, 0));
            let same = matches!(cert, Certificate::ForcedCell { left: l, right: r, above: a, below: b, .. }
                if *l == left && *r == right && *a == above && *b == below);
            g.get(*cell).is_none()
                && same
                && alphabet.letters().all(|a| {
                    let (h, v) = cert.completions(a).expect("forced cell");
                    !is_rich(&h) || !is_rich(&v)
                })
        }
        Certificate::Exhausted { .. } => false,
    }
}

#[derive(Debug, Clone)]
pub struct PlaneVerdict {
    pub kind: VerdictKind,
    pub margin: usize,
    pub certificate: Option<Certificate>,
    /// The filled box when extendable.
    pub witness: Option<Grid2D>,
    pub nodes: u64,
}

struct Board {
    rect: Rect,
    cells: Vec<Option<Letter>>,
    buf: Vec<Letter>,
}

impl Board {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.rect.width + j
    }

    /// Richness of the run through `(i, j)` in one direction with `a` placed there.
    fn run_rich(&mut self, i: usize, j: usize, a: Letter, horizontal: bool) -> bool {
        let (len, pos) = if horizontal {
            (self.rect.width, j)
        } else {
            (self.rect.height, i)
        };
        let at = |p: usize| {
            if horizontal {
                i * self.rect.width + p
            } else {
                p * self.rect.width + j
            }
        };
        let mut lo = pos;
        while lo > 0 && self.cells[at(lo - 1)].is_some() {
            lo -= 1;
        }
        let mut hi = pos + 1;
        while hi < len && self.cells[at(hi)].is_some() {
            hi += 1;
        }
        self.buf.clear();
        for p in lo..hi {
            self.buf.push(if p == pos {
                a
            } else {
                self.cells[at(p)].expect("occupied")
            });
        }
        is_rich(&self.buf)
    }

    fn fits(&mut self, i: usize, j: usize, a: Letter) -> bool {
        self.run_rich(i, j, a, true) && self.run_rich(i, j, a, false)
    }
}

/// The empty cell with no admissible letter given only the occupied cells of `g`.
fn forced_contradiction(g: &Grid2D, board: &mut Board) -> Option<Certificate> {
    let r = board.rect;
    for i in 0..r.height {
        for j in 0..r.width {
            let c = board.idx(i, j);
            if board.cells[c].is_some() {
                continue;
            }
            let cell = (r.top + i as i64, r.left + j as i64);
            if !g.alphabet.letters().any(|a| board.fits(i, j, a)) {
                let read = |di: i64, dj: i64| -> Word {
                    let mut v = Vec::new();
                    let mut p = (cell.0 + di, cell.1 + dj);
                    while let Some(a) = g.get(p) {
                        v.push(a);
                        p = (p.0 + di, p.1 + dj);
                    }
                    Word::from_letters(v)
                };
                return Some(Certificate::ForcedCell {
                    cell,
                    left: read(0, -1).reversed(),
                    right: read(0, 1),
                    above: read(-1, 0).reversed(),
                    below: read(1, 0),
                    alphabet: g.alphabet,
                });
            }
        }
    }
    None
}

/// Searches for a rich filling of the bounding box inflated by `margin`.
///
/// Empty cells are filled ring by ring outward from the occupied box,
/// row-major within a ring, letters ascending. A local contradiction is
/// reported first since it holds at every margin.
pub fn extend_to_rich_plane(g: &Grid2D, margin: usize, node_budget: u64) -> Result<PlaneVerdict> {
    if node_budget == 0 {
        return Err(Error::InvalidArgument(
            "node budget must be positive".into(),
        ));
    }
    let verdict = |kind, certificate, witness, nodes| PlaneVerdict {
        kind,
        margin,
        certificate,
        witness,
        nodes,
    };
    if let Some(run) = first_nonrich_run(g) {
        return Ok(verdict(
            VerdictKind::NotExtendable,
            Some(Certificate::NonRichRun(run)),
            None,
            0,
        ));
    }
    let core = g.bbox().unwrap_or(Rect {
        top: 0,
        left: 0,
        height: 1,
        width: 1,
    });
    let rect = core.inflate(margin);
    let mut board = Board {
        rect,
        cells: g.dense(&rect),
        buf: Vec::new(),
    };
    if let Some(cert) = forced_contradiction(g, &mut board) {
        return Ok(verdict(VerdictKind::NotExtendable, Some(cert), None, 0));
    }

    let ring = |i: usize, j: usize| -> i64 {
        let (ci, cj) = (rect.top + i as i64, rect.left + j as i64);
        let di = (core.top - ci).max(ci - core.bottom()).max(0);
        let dj = (core.left - cj).max(cj - core.right()).max(0);
        di.max(dj)
    };
    let mut order: Vec<(i64, usize, usize)> = (0..rect.height)
        .flat_map(|i| (0..rect.width).map(move |j| (i, j)))
        .filter(|&(i, j)| board.cells[board.idx(i, j)].is_none())
        .map(|(i, j)| (ring(i, j), i, j))
        .collect();
    order.sort();

    let k = g.alphabet.size() as Letter;
    let mut next = vec![0 as Letter; order.len() + 1];
    let mut pos = 0;
    let mut nodes = 0u64;
    while pos < order.len() {
        let (_, i, j) = order[pos];
        let c = board.idx(i, j);
        board.cells[c] = None;
        let found = (next[pos]..k).find(|&a| board.fits(i, j, a));
        match found {
            Some(a) => {
                nodes += 1;
                if nodes > node_budget {
                    return Ok(verdict(VerdictKind::Unknown, None, None, nodes - 1));
                }
                board.cells[c] = Some(a);
                next[pos] = a + 1;
                pos += 1;
                next[pos] = 0;
            }
            None => {
                next[pos] = 0;
                if pos == 0 {
                    return Ok(verdict(
                        VerdictKind::NotExtendable,
                        Some(Certificate::Exhausted { margin }),
                        None,
                        nodes,
                    ));
                }
                pos -= 1;
            }
        }
    }
    let mut filled = Grid2D::new(g.alphabet);
    for i in 0..rect.height {
        for j in 0..rect.width {
            let a = board.cells[board.idx(i, j)].expect("filled");
            filled
                .cells
                .insert((rect.top + i as i64, rect.left + j as i64), a);
        }
    }
    Ok(verdict(
        VerdictKind::ExtendableToMargin,
        None,
        Some(filled),
        nodes,
    ))
}

/// [`extend_to_rich_plane`] on many grids in parallel, results in input order.
pub fn extend_many(grids: &[Grid2D], margin: usize, node_budget: u64) -> Result<Vec<PlaneVerdict>> {
    grids
        .par_iter()
        .map(|g| extend_to_rich_plane(g, margin, node_budget))
        .collect()
}

pub const DEFAULT_STRONG_POWER: usize = 4;

/// Whether `w^power` is rich. A `false` refutes richness of `w^∞`; a `true`
/// is evidence only.
pub fn strongly_rich(w: &Word, power: usize) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord("strong richness"));
    }
    if power == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    Ok(is_rich(&w.pow(power)))
}

/// Tiles a full rectangle `reps` times in both directions. Each row and
/// column must pass [`strongly_rich`] at `max(power, reps)`, which makes
/// every run of the result a factor of a checked power.
pub fn tile_rectangle(g: &Grid2D, reps: usize, power: usize) -> Result<Grid2D> {
    let r = g
        .bbox()
        .filter(|_| g.is_full_rectangle())
        .ok_or_else(|| Error::GridRejected("tiling needs a fully occupied rectangle".into()))?;
    if reps == 0 {
        return Err(Error::InvalidArgument(
            "repetitions must be at least 1".into(),
        ));
    }
    let check = power.max(reps);
    for run in g.runs() {
        if !strongly_rich(&run.word, check)? {
            return Err(Error::GridRejected(format!(
                "{} run at ({}, {}) is not rich at power {check}: {}",
                run.direction, run.start.0, run.start.1, run.word
            )));
        }
    }
    let mut out = Grid2D::new(g.alphabet);
    for ((i, j), a) in g.cells() {
        for ti in 0..reps {
            for tj in 0..reps {
                let c = (i + (ti * r.height) as i64, j + (tj * r.width) as i64);
                out.cells.insert(c, a);
            }
        }
    }
    Ok(out)
}

/// The three words `0^f u 1^f`, `0^f u 0 1^f` and `0^f 1 u 1^f`.
pub fn flank_family(u: &Word, flank: usize) -> [Word; 3] {
    let zeros = Word::from_letters(vec![0; flank]);
    let ones = vec![1; flank];
    [
        zeros.concat(u).concat(&ones),
        zeros.concat(u).concat(&[0]).concat(&ones),
        zeros.concat(&[1]).concat(u).concat(&ones),
    ]
}
