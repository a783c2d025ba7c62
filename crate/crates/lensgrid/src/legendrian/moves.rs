//! Elementary grid moves, carried out on the S³ cover so that every move is
//! the equivariant version of the usual planar move.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cover::CoverGrid;
use crate::grid::{GridDiagram, GridError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    W,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ordinal {
    NW,
    NE,
    SW,
    SE,
}

impl Ordinal {
    pub fn opposite(self) -> Ordinal {
        match self {
            Ordinal::NW => Ordinal::SE,
            Ordinal::SE => Ordinal::NW,
            Ordinal::NE => Ordinal::SW,
            Ordinal::SW => Ordinal::NE,
        }
    }

    /// (upper row?, right column?)
    fn place(self) -> (bool, bool) {
        match self {
            Ordinal::NW => (true, false),
            Ordinal::NE => (true, true),
            Ordinal::SW => (false, false),
            Ordinal::SE => (false, true),
        }
    }
}

/// Stabilization type: the marker stabilized and the corner left empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StabType {
    pub marker: Marker,
    pub free: Ordinal,
}

impl StabType {
    pub const ALL: [StabType; 8] = [
        StabType { marker: Marker::W, free: Ordinal::NW },
        StabType { marker: Marker::W, free: Ordinal::NE },
        StabType { marker: Marker::W, free: Ordinal::SW },
        StabType { marker: Marker::W, free: Ordinal::SE },
        StabType { marker: Marker::Z, free: Ordinal::NW },
        StabType { marker: Marker::Z, free: Ordinal::NE },
        StabType { marker: Marker::Z, free: Ordinal::SW },
        StabType { marker: Marker::Z, free: Ordinal::SE },
    ];

    pub fn w(free: Ordinal) -> Self {
        StabType { marker: Marker::W, free }
    }

    /// The W type reached from this one by commutations.
    pub fn w_equivalent(self) -> StabType {
        match self.marker {
            Marker::W => self,
            Marker::Z => StabType::w(self.free.opposite()),
        }
    }
}

impl fmt::Display for StabType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.marker {
            Marker::W => "W",
            Marker::Z => "Z",
        };
        write!(f, "{m}:{:?}", self.free)
    }
}

impl FromStr for StabType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (m, o) = s.split_once(':').ok_or_else(|| format!("bad stabilization type {s}"))?;
        let marker = match m {
            "W" => Marker::W,
            "Z" => Marker::Z,
            _ => return Err(format!("bad marker {m}")),
        };
        let free = match o {
            "NW" => Ordinal::NW,
            "NE" => Ordinal::NE,
            "SW" => Ordinal::SW,
            "SE" => Ordinal::SE,
            _ => return Err(format!("bad corner {o}")),
        };
        Ok(StabType { marker, free })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Legality {
    Topological,
    Legendrian,
    Transverse,
    Braid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridMove {
    /// columns i and i+1 (mod n)
    CommuteColumns(usize),
    /// rows i and i+1 (mod n)
    CommuteRows(usize),
    /// at the marker of the given row
    Stabilize(StabType, usize),
    /// index into [`destabilization_sites`]
    Destabilize(usize),
}

pub fn stab_legality(t: StabType) -> BTreeSet<Legality> {
    use Legality::*;
    let mut s = BTreeSet::from([Topological]);
    match t.w_equivalent().free {
        Ordinal::NE => {
            s.insert(Legendrian);
            s.insert(Transverse);
        }
        Ordinal::SW => {
            s.insert(Legendrian);
            s.insert(Transverse);
            s.insert(Braid);
        }
        Ordinal::SE => {
            s.insert(Transverse);
            s.insert(Braid);
        }
        Ordinal::NW => {}
    }
    s
}

/// Legality classes of a move; destabilizations are classed by the pattern
/// found at the site.
pub fn legality(d: &GridDiagram, mv: &GridMove) -> Result<BTreeSet<Legality>, MoveError> {
    use Legality::*;
    Ok(match mv {
        GridMove::CommuteColumns(_) | GridMove::CommuteRows(_) => {
            BTreeSet::from([Topological, Legendrian, Transverse, Braid])
        }
        GridMove::Stabilize(t, _) => stab_legality(*t),
        GridMove::Destabilize(site) => {
            let sites = destabilization_sites(d);
            stab_legality(sites.get(*site).ok_or(MoveError::NoSuchSite)?.kind)
        }
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("marker pairs interleave; commutation not allowed")]
    Interleaved,
    #[error("no such site")]
    NoSuchSite,
    #[error("local pattern does not match a stabilization")]
    PatternMismatch,
    #[error(transparent)]
    Grid(#[from] GridError),
}

fn in_open_arc(a: usize, b: usize, x: usize, n: usize) -> bool {
    let d = (x + n - a) % n;
    d > 0 && d < (b + n - a) % n
}

/// Two chords of a circle with endpoints {a1,a2}, {b1,b2}. Shared endpoints
/// count as interleaved.
fn interleaved(a: (usize, usize), b: (usize, usize), n: usize) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return true;
    }
    in_open_arc(a.0, a.1, b.0, n) != in_open_arc(a.0, a.1, b.1, n)
}

fn column_rows(c: &CoverGrid, col: usize) -> (usize, usize) {
    let zr = (0..c.size).find(|&r| c.z[r] == col).expect("column has a z");
    let wr = (0..c.size).find(|&r| c.w[r] == col).expect("column has a w");
    (zr, wr)
}

pub fn commute_columns(d: &GridDiagram, i: usize) -> Result<GridDiagram, MoveError> {
    if i >= d.n || d.n < 2 {
        return Err(MoveError::NoSuchSite);
    }
    let c = CoverGrid::of(d);
    let n = c.size;
    let (a, b) = (i, (i + 1) % n);
    if interleaved(column_rows(&c, a), column_rows(&c, b), n) {
        return Err(MoveError::Interleaved);
    }
    let swap = |col: usize| {
        let base = col % d.n;
        if base == i {
            (col + 1) % n
        } else if base == (i + 1) % d.n {
            (col + n - 1) % n
        } else {
            col
        }
    };
    let mut out = c.clone();
    for r in 0..n {
        out.z[r] = swap(c.z[r]);
        out.w[r] = swap(c.w[r]);
    }
    Ok(out.to_base()?)
}

pub fn commute_rows(d: &GridDiagram, i: usize) -> Result<GridDiagram, MoveError> {
    if i >= d.n || d.n < 2 {
        return Err(MoveError::NoSuchSite);
    }
    let c = CoverGrid::of(d);
    let n = c.size;
    let (a, b) = (i, (i + 1) % n);
    if interleaved((c.z[a], c.w[a]), (c.z[b], c.w[b]), n) {
        return Err(MoveError::Interleaved);
    }
    let mut out = c.clone();
    for k in 0..c.p {
        let r = i + k * d.n;
        let s = (r + 1) % n;
        out.z.swap(r, s);
        out.w.swap(r, s);
    }
    Ok(out.to_base()?)
}

/// Cover index maps for inserting a row after base row `row` and a column
/// after base column `col`.
struct Insert {
    n: usize,
    row: usize,
    col: usize,
}

impl Insert {
    fn map(&self, x: usize, after: usize) -> usize {
        let (b, k) = (x % self.n, x / self.n);
        let b2 = if b > after { b + 1 } else { b };
        b2 + k * (self.n + 1)
    }
    fn r(&self, x: usize) -> usize {
        self.map(x, self.row)
    }
    fn c(&self, x: usize) -> usize {
        self.map(x, self.col)
    }
}

pub fn stabilize(d: &GridDiagram, t: StabType, row: usize) -> Result<GridDiagram, MoveError> {
    if row >= d.n {
        return Err(MoveError::NoSuchSite);
    }
    let c = CoverGrid::of(d);
    let (marks, others) = match t.marker {
        Marker::W => (&c.w, &c.z),
        Marker::Z => (&c.z, &c.w),
    };
    let col = marks[row] % d.n;
    let ins = Insert { n: d.n, row, col };
    let (f_up, f_right) = t.free.place();
    // outside markers of a stabilized column belong to its free-side copy
    let other_col = |x: usize| ins.c(x) + usize::from(f_right && x % d.n == col);
    let big = c.size + c.p;
    let mut new_marks = vec![0; big];
    let mut new_others = vec![0; big];
    for r in 0..c.size {
        let lo = ins.r(r);
        if r % d.n != row {
            new_marks[lo] = ins.c(marks[r]);
            new_others[lo] = other_col(others[r]);
            continue;
        }
        let cl = ins.c(marks[r]);
        let row_of = |upper: bool| if upper { lo + 1 } else { lo };
        let col_of = |right: bool| if right { cl + 1 } else { cl };
        new_marks[row_of(f_up)] = col_of(!f_right);
        new_others[row_of(f_up)] = other_col(others[r]);
        new_marks[row_of(!f_up)] = col_of(f_right);
        new_others[row_of(!f_up)] = col_of(!f_right);
    }
    let (z, w) = match t.marker {
        Marker::W => (new_others, new_marks),
        Marker::Z => (new_marks, new_others),
    };
    let out = CoverGrid {
        p: c.p,
        q: c.q,
        n: d.n + 1,
        size: big,
        z,
        w,
    };
    Ok(out.to_base()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DestabSite {
    /// lower block row (cover row at level 0)
    pub row: usize,
    /// left block column in the cover
    pub col: usize,
    pub kind: StabType,
}

impl DestabSite {
    /// ((kept row, dropped row), (kept column, dropped column)) in the cover
    /// of size `size`; the dropped ones hold the free corner.
    pub(crate) fn kept_and_dropped(&self, size: usize) -> ((usize, usize), (usize, usize)) {
        let (fu, fr) = self.kind.free.place();
        let next = |x: usize| (x + 1) % size;
        let rows = if fu { (next(self.row), self.row) } else { (self.row, next(self.row)) };
        let cols = if fr { (next(self.col), self.col) } else { (self.col, next(self.col)) };
        (rows, cols)
    }
}

/// Cover index after deleting every translate of base index `drop` from a
/// cover with base size `n`.
pub(crate) fn shrink_index(x: usize, drop: usize, n: usize) -> usize {
    let (b, k) = (x % n, x / n);
    (if b > drop { b - 1 } else { b }) + k * (n - 1)
}

fn block_pattern(c: &CoverGrid, row: usize, col: usize) -> Option<StabType> {
    let n = c.size;
    let (r0, r1) = (row, (row + 1) % n);
    let (c0, c1) = (col, (col + 1) % n);
    let cell = |up: bool, right: bool| {
        let r = if up { r1 } else { r0 };
        let cc = if right { c1 } else { c0 };
        if c.z[r] == cc {
            Some(Marker::Z)
        } else if c.w[r] == cc {
            Some(Marker::W)
        } else {
            None
        }
    };
    for free in [Ordinal::NW, Ordinal::NE, Ordinal::SW, Ordinal::SE] {
        let (fu, fr) = free.place();
        if cell(fu, fr).is_some() {
            continue;
        }
        let opp = cell(!fu, !fr);
        let a = cell(fu, !fr);
        let b = cell(!fu, fr);
        let marker = match (opp, a, b) {
            (Some(Marker::Z), Some(Marker::W), Some(Marker::W)) => Marker::W,
            (Some(Marker::W), Some(Marker::Z), Some(Marker::Z)) => Marker::Z,
            _ => continue,
        };
        return Some(StabType { marker, free });
    }
    None
}

/// Every 2×2 block that is the image of a stabilization, in row-major order.
pub fn destabilization_sites(d: &GridDiagram) -> Vec<DestabSite> {
    if d.n < 2 {
        return Vec::new();
    }
    let c = CoverGrid::of(d);
    let mut out = Vec::new();
    for row in 0..d.n {
        for col in 0..c.size {
            if let Some(kind) = block_pattern(&c, row, col) {
                out.push(DestabSite { row, col, kind });
            }
        }
    }
    out
}

pub fn destabilize_at(d: &GridDiagram, site: &DestabSite) -> Result<GridDiagram, MoveError> {
    let c = CoverGrid::of(d);
    if d.n < 2 || block_pattern(&c, site.row, site.col) != Some(site.kind) {
        return Err(MoveError::PatternMismatch);
    }
    let n = c.size;
    let ((keep_row, drop_row), (keep_col, drop_col)) = site.kept_and_dropped(n);
    let (dr, dc) = (drop_row % d.n, drop_col % d.n);
    let mut marks = match site.kind.marker {
        Marker::W => c.w.clone(),
        Marker::Z => c.z.clone(),
    };
    let others = match site.kind.marker {
        Marker::W => &c.z,
        Marker::Z => &c.w,
    };
    // the marker of the kept row slides into the free corner
    let (sr, sc) = c.deck();
    for k in 0..c.p {
        marks[(keep_row + k * sr) % n] = (keep_col + k * sc) % n;
    }
    let shrink = |x: usize, drop: usize| shrink_index(x, drop, d.n);
    let small = n - c.p;
    let mut new_marks = vec![0; small];
    let mut new_others = vec![0; small];
    for r in (0..n).filter(|r| r % d.n != dr) {
        new_marks[shrink(r, dr)] = shrink(marks[r], dc);
        new_others[shrink(r, dr)] = shrink(others[r], dc);
    }
    let (z, w) = match site.kind.marker {
        Marker::W => (new_others, new_marks),
        Marker::Z => (new_marks, new_others),
    };
    let out = CoverGrid {
        p: c.p,
        q: c.q,
        n: d.n - 1,
        size: small,
        z,
        w,
    };
    Ok(out.to_base()?)
}

pub fn apply_move(d: &GridDiagram, mv: &GridMove) -> Result<GridDiagram, MoveError> {
    match *mv {
        GridMove::CommuteColumns(i) => commute_columns(d, i),
        GridMove::CommuteRows(i) => commute_rows(d, i),
        GridMove::Stabilize(t, row) => stabilize(d, t, row),
        GridMove::Destabilize(site) => {
            let sites = destabilization_sites(d);
            destabilize_at(d, sites.get(site).ok_or(MoveError::NoSuchSite)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::random_corpus;
    use crate::legendrian::classical::classical_invariants;
    use crate::rational::qi;

    #[test]
    fn stab_type_text_round_trip() {
        for t in StabType::ALL {
            assert_eq!(t.to_string().parse::<StabType>().unwrap(), t);
        }
        assert!("W:XX".parse::<StabType>().is_err());
    }

    #[test]
    fn legality_table() {
        use Legality::*;
        let l = |s: &str| stab_legality(s.parse().unwrap());
        assert!(l("W:NE").contains(&Legendrian) && !l("W:NE").contains(&Braid));
        assert!(l("W:SW").is_superset(&BTreeSet::from([Legendrian, Transverse, Braid])));
        assert_eq!(l("W:SE"), BTreeSet::from([Topological, Transverse, Braid]));
        assert_eq!(l("W:NW"), BTreeSet::from([Topological]));
        for t in StabType::ALL {
            assert_eq!(stab_legality(t), stab_legality(t.w_equivalent()));
        }
    }

    #[test]
    fn stabilizing_the_core_grows_the_complex() {
        let d = GridDiagram::core(3, 1).unwrap();
        let e = stabilize(&d, "W:SE".parse().unwrap(), 0).unwrap();
        assert_eq!(e.n, 2);
        assert_eq!(e.generator_count(), 18);
    }

    #[test]
    fn destabilization_inverts_stabilization() {
        for d in random_corpus(5, 40, 4, 3) {
            for t in StabType::ALL {
                let e = stabilize(&d, t, 0).unwrap();
                let back = destabilization_sites(&e)
                    .iter()
                    .filter(|s| s.kind == t)
                    .any(|s| destabilize_at(&e, s).unwrap() == d);
                assert!(back, "{t} on {d:?}");
            }
        }
    }

    #[test]
    fn stabilization_shifts_classical_invariants() {
        for d in random_corpus(6, 30, 4, 3) {
            let c = classical_invariants(&d);
            for t in StabType::ALL {
                let e = classical_invariants(&stabilize(&d, t, 0).unwrap());
                let (dtb, drot) = match t.w_equivalent().free {
                    Ordinal::NE | Ordinal::SW => (0, 0),
                    Ordinal::SE => (-1, -1),
                    Ordinal::NW => (-1, 1),
                };
                assert_eq!((e.tb - c.tb, e.rot - c.rot), (qi(dtb), qi(drot)), "{t}");
            }
        }
    }

    #[test]
    fn shared_endpoints_block_commutation() {
        let d = GridDiagram::new(2, 1, vec![0, 2], vec![2, 0]).unwrap();
        assert_eq!(commute_rows(&d, 0), Err(MoveError::Interleaved));
        assert_eq!(commute_columns(&d, 0), Err(MoveError::Interleaved));
        let one = GridDiagram::core(2, 1).unwrap();
        assert_eq!(commute_columns(&one, 0), Err(MoveError::NoSuchSite));
    }

    #[test]
    fn commutation_twice_is_identity_or_blocked() {
        for d in random_corpus(8, 40, 4, 4) {
            for i in 0..d.n {
                if let Ok(e) = commute_columns(&d, i) {
                    assert_eq!(commute_columns(&e, i).unwrap(), d);
                }
                if let Ok(e) = commute_rows(&d, i) {
                    assert_eq!(commute_rows(&e, i).unwrap(), d);
                }
            }
        }
    }
}
