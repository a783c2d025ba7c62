//! Twisted toroidal grid diagrams for links in L(p,q).
//!
//! Rows are numbered bottom-up. Row i is cut by the β-curves into `p*n`
//! parallelogram slots, numbered left to right by the x-coordinate of the
//! lower-left corner. The lower-left corner of slot t on α_i lies on β_j with
//! j ≡ t + q·i (mod n), so slot t of row i sits in column (t + q·i) mod n and
//! its top edge is slot t − q of the next row.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("p={0} and q={1} are not coprime")]
    NonCoprime(usize, usize),
    #[error("q={q} is not in the range 0 < q < p={p}")]
    QOutOfRange { p: usize, q: usize },
    #[error("{kind} basepoints of rows {a} and {b} share column {col}")]
    ColumnCollision {
        kind: char,
        a: usize,
        b: usize,
        col: usize,
    },
    #[error("z and w of row {row} occupy the same cell {slot}")]
    CellCollision { row: usize, slot: usize },
    #[error("slot {slot} in row {row} is outside 0..{limit}")]
    SlotOutOfRange { row: usize, slot: usize, limit: usize },
    #[error("diagram shape: {0}")]
    BadShape(String),
    #[error("offset k={0} is zero mod p")]
    BadOffset(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub z: Vec<usize>,
    pub w: Vec<usize>,
    components: Vec<usize>,
}

impl GridDiagram {
    /// Validates raw data and traces the link components.
    pub fn new(p: usize, q: usize, z: Vec<usize>, w: Vec<usize>) -> Result<Self, GridError> {
        if p.gcd(&q) != 1 {
            return Err(GridError::NonCoprime(p, q));
        }
        if q == 0 || q >= p {
            return Err(GridError::QOutOfRange { p, q });
        }
        let n = z.len();
        if n == 0 {
            return Err(GridError::BadShape("index must be positive".into()));
        }
        if w.len() != n {
            return Err(GridError::BadShape(format!(
                "{} z slots but {} w slots",
                n,
                w.len()
            )));
        }
        let limit = p * n;
        for (row, &slot) in z.iter().chain(w.iter()).enumerate() {
            if slot >= limit {
                return Err(GridError::SlotOutOfRange {
                    row: row % n,
                    slot,
                    limit,
                });
            }
        }
        for row in 0..n {
            if z[row] == w[row] {
                return Err(GridError::CellCollision { row, slot: z[row] });
            }
        }
        for (kind, slots) in [('z', &z), ('w', &w)] {
            let mut seen = vec![None; n];
            for (row, &slot) in slots.iter().enumerate() {
                let col = (slot + q * row) % n;
                if let Some(a) = seen[col] {
                    return Err(GridError::ColumnCollision {
                        kind,
                        a,
                        b: row,
                        col,
                    });
                }
                seen[col] = Some(row);
            }
        }
        let mut d = GridDiagram {
            p,
            q,
            n,
            z,
            w,
            components: Vec::new(),
        };
        d.components = d.trace_components();
        Ok(d)
    }

    /// Index-one diagram with z in slot 0 and w in slot k.
    pub fn simple_knot(p: usize, q: usize, k: usize) -> Result<Self, GridError> {
        if p > 0 && k % p == 0 {
            return Err(GridError::BadOffset(k));
        }
        GridDiagram::new(p, q, vec![0], vec![k % p.max(1)])
    }

    /// The index-one diagram of the core of the filling torus (the trivial
    /// 1-braid about the binding).
    pub fn core(p: usize, q: usize) -> Result<Self, GridError> {
        GridDiagram::simple_knot(p, q, q)
    }

    pub fn slots(&self) -> usize {
        self.p * self.n
    }

    pub fn column(&self, row: usize, slot: usize) -> usize {
        (slot + self.q * row) % self.n
    }

    pub fn z_column(&self, row: usize) -> usize {
        self.column(row, self.z[row])
    }

    pub fn w_column(&self, row: usize) -> usize {
        self.column(row, self.w[row])
    }

    /// Component label of each row's basepoint pair.
    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.iter().max().map_or(0, |m| m + 1)
    }

    pub fn rows_of(&self, comp: usize) -> Vec<usize> {
        (0..self.n).filter(|&r| self.components[r] == comp).collect()
    }

    /// Row whose z sits in the given column.
    pub fn z_row_in_column(&self, col: usize) -> usize {
        (0..self.n)
            .find(|&r| self.z_column(r) == col)
            .expect("z columns form a permutation")
    }

    /// Follows z→w along each row, then w→z up each column.
    fn trace_components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut row = start;
            while label[row] == usize::MAX {
                label[row] = next;
                row = self.z_row_in_column(self.w_column(row));
            }
            next += 1;
        }
        label
    }

    pub fn generator_count(&self) -> usize {
        (1..=self.n).product::<usize>() * self.p.pow(self.n as u32)
    }

    /// All generators, lexicographic in `pos`.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.generator_count());
        let mut pos = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        self.extend_generators(&mut pos, &mut used, &mut out);
        out
    }

    fn extend_generators(&self, pos: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Generator>) {
        let row = pos.len();
        if row == self.n {
            out.push(Generator { pos: pos.clone() });
            return;
        }
        for slot in 0..self.slots() {
            let col = self.column(row, slot);
            if used[col] {
                continue;
            }
            used[col] = true;
            pos.push(slot);
            self.extend_generators(pos, used, out);
            pos.pop();
            used[col] = false;
        }
    }

    pub fn is_generator(&self, x: &Generator) -> bool {
        if x.pos.len() != self.n {
            return false;
        }
        let mut used = vec![false; self.n];
        for (row, &slot) in x.pos.iter().enumerate() {
            if slot >= self.slots() {
                return false;
            }
            let col = self.column(row, slot);
            if used[col] {
                return false;
            }
            used[col] = true;
        }
        true
    }

    /// Lattice point of the S³ cover over the point on α_row at `slot`, on sheet `level`.
    pub fn lift_point(&self, row: usize, slot: usize, level: usize) -> (usize, usize) {
        let big = self.slots();
        let r = row + level * self.n;
        (r, (slot + self.q * r) % big)
    }

    /// Base row and slot under a cover lattice point.
    pub fn project_point(&self, r: usize, c: usize) -> (usize, usize) {
        let big = self.slots();
        let row = r % self.n;
        let slot = (c + big - (self.q * r) % big) % big;
        (row, slot)
    }

    /// The Z_p label of the α/β cycle running from x to y along α and back
    /// along β: its image in H₁(T²)/⟨α,β⟩ ≅ Z_p is the vertical winding mod p.
    pub fn spinc_difference(&self, x: &Generator, y: &Generator) -> usize {
        let big = self.slots();
        let n = self.n;
        // cover column of each x point, by level, keyed by column
        let mut x_row_at_col = vec![usize::MAX; big];
        for (row, &slot) in x.pos.iter().enumerate() {
            for level in 0..self.p {
                let (r, c) = self.lift_point(row, slot, level);
                x_row_at_col[c] = r;
            }
        }
        let mut steps = 0usize;
        for (row, &slot) in y.pos.iter().enumerate() {
            let (r, c) = self.lift_point(row, slot, 0);
            let target = x_row_at_col[c];
            steps += (target + big - r) % big;
        }
        debug_assert_eq!(steps % n, 0);
        (steps / n) % self.p
    }
}

/// One intersection point on each α-curve, one on each β-curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub pos: Vec<usize>,
}

impl Generator {
    pub fn new(pos: Vec<usize>) -> Self {
        Generator { pos }
    }

    /// σ(i): the β-curve used on row i.
    pub fn sigma(&self, d: &GridDiagram) -> Vec<usize> {
        self.pos
            .iter()
            .enumerate()
            .map(|(i, &a)| (a + d.q * i) % d.n)
            .collect()
    }

    /// Sheet of each point among the p points of α_i ∩ β_σ(i).
    pub fn sheets(&self, d: &GridDiagram) -> Vec<usize> {
        let sigma = self.sigma(d);
        self.pos
            .iter()
            .enumerate()
            .map(|(i, &a)| ((a + d.q * i - sigma[i]) / d.n) % d.p)
            .collect()
    }

    pub fn from_parts(d: &GridDiagram, sigma: &[usize], sheets: &[usize]) -> Self {
        let big = d.slots();
        let pos = (0..d.n)
            .map(|i| (sigma[i] + d.n * sheets[i] + big - (d.q * i) % big) % big)
            .collect();
        Generator { pos }
    }
}
