//! The p-fold cover of a lens-space grid: p stacked copies of the diagram,
//! sheared so the lifted β-curves are vertical.
//!
//! Cell (I, J) of the cover is the cell whose lower-left lattice point is
//! (row line I, column line J). Base cell (i, t) on sheet k lifts to
//! (i + k·n, t + q·(i + k·n)) mod N, N = p·n. The deck translation moves
//! everything by n rows and q·n columns.

use crate::grid::{Generator, GridDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverGrid {
    pub p: usize,
    pub q: usize,
    /// index of the base diagram
    pub n: usize,
    /// N = p·n
    pub size: usize,
    /// column of the z̃ marking in each cover row
    pub z: Vec<usize>,
    /// column of the w̃ marking in each cover row
    pub w: Vec<usize>,
}

impl CoverGrid {
    pub fn of(d: &GridDiagram) -> Self {
        let size = d.slots();
        let mut z = vec![0; size];
        let mut w = vec![0; size];
        for r in 0..size {
            let i = r % d.n;
            z[r] = (d.z[i] + d.q * r) % size;
            w[r] = (d.w[i] + d.q * r) % size;
        }
        CoverGrid {
            p: d.p,
            q: d.q,
            n: d.n,
            size,
            z,
            w,
        }
    }

    /// (rows, columns) moved by one deck translation.
    pub fn deck(&self) -> (usize, usize) {
        (self.n, (self.q * self.n) % self.size)
    }

    /// Applies the deck translation `times` times to the marking data.
    pub fn deck_shift(&self, times: usize) -> CoverGrid {
        let (dr, dc) = self.deck();
        let n = self.size;
        let mut out = self.clone();
        for r in 0..n {
            let to = (r + times * dr) % n;
            out.z[to] = (self.z[r] + times * dc) % n;
            out.w[to] = (self.w[r] + times * dc) % n;
        }
        out
    }

    pub fn is_deck_invariant(&self) -> bool {
        self.p <= 1 || self.deck_shift(1) == *self
    }

    /// Pushes an equivariant cover back down to a diagram for L(p,q).
    pub fn to_base(&self) -> Result<GridDiagram, crate::grid::GridError> {
        let big = self.size;
        let down = |r: usize, c: usize| (c + big - (self.q * r) % big) % big;
        let z = (0..self.n).map(|r| down(r, self.z[r])).collect();
        let w = (0..self.n).map(|r| down(r, self.w[r])).collect();
        GridDiagram::new(self.p, self.q, z, w)
    }

    /// Columns are permutations and each row holds one z̃ and one w̃.
    pub fn is_grid(&self) -> bool {
        let n = self.size;
        let mut zc = vec![false; n];
        let mut wc = vec![false; n];
        for r in 0..n {
            if self.z[r] == self.w[r] || zc[self.z[r]] || wc[self.w[r]] {
                return false;
            }
            zc[self.z[r]] = true;
            wc[self.w[r]] = true;
        }
        true
    }

    /// Components of the S³ link, each as the cyclic list of rows visited.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut z_row = vec![0; n];
        for r in 0..n {
            z_row[self.z[r]] = r;
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut r = start;
            while !seen[r] {
                seen[r] = true;
                comp.push(r);
                r = z_row[self.w[r]];
            }
            out.push(comp);
        }
        out
    }

    /// Reflection in a horizontal line with z̃ and w̃ exchanged; the deck
    /// translation becomes (n, (p−q)·n).
    pub fn reflect_swap(&self) -> CoverGrid {
        let n = self.size;
        let mut z = vec![0; n];
        let mut w = vec![0; n];
        for r in 0..n {
            z[n - 1 - r] = self.w[r];
            w[n - 1 - r] = self.z[r];
        }
        CoverGrid {
            p: self.p,
            q: self.p - self.q,
            n: self.n,
            size: n,
            z,
            w,
        }
    }
}

/// Column of the lifted generator on each cover row line.
pub fn lift_generator(d: &GridDiagram, x: &Generator) -> Vec<usize> {
    let big = d.slots();
    let mut col = vec![0; big];
    for r in 0..big {
        let i = r % d.n;
        col[r] = (x.pos[i] + d.q * r) % big;
    }
    col
}

/// Inverse of [`lift_generator`] for deck-invariant point sets.
pub fn project_generator(d: &GridDiagram, col: &[usize]) -> Generator {
    let big = d.slots();
    Generator::new(
        (0..d.n)
            .map(|r| (col[r] + big - (d.q * r) % big) % big)
            .collect(),
    )
}

/// Mirror diagram in L(p, p−q): rows reflected, z and w exchanged, then
/// sheared so the β-curves have slope −p/(p−q).
pub fn dualize(d: &GridDiagram) -> GridDiagram {
    CoverGrid::of(d)
        .reflect_swap()
        .to_base()
        .expect("reflection of a valid cover is valid")
}
