//! The minus grid complex, computed through the S³ cover.
//!
//! A parallelogram from x to y in the lens-space diagram lifts to p disjoint
//! rectangles in the cover. With the conventions here a rectangle from x to y
//! has its NW and SE corners on x and its NE and SW corners on y, it may not
//! contain w, and each z inside contributes a factor U.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::cover::{lift_generator, project_generator, CoverGrid};
use crate::grid::{Generator, GridDiagram};
use crate::invariants::{d_invariant, x_minus, x_plus};
use crate::rational::{qi, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelogram {
    pub target: Generator,
    /// base rows whose points move
    pub rows: (usize, usize),
    /// lattice corners in the cover: NW, SE (on x), NE, SW (on y)
    pub corners: [(usize, usize); 4],
    pub z_mult: Vec<u32>,
    pub w_mult: Vec<u32>,
    pub empty: bool,
}

impl Parallelogram {
    pub fn z_total(&self) -> u32 {
        self.z_mult.iter().sum()
    }

    pub fn w_free(&self) -> bool {
        self.w_mult.iter().all(|&m| m == 0)
    }
}

fn in_arc(start: usize, len: usize, v: usize, n: usize) -> bool {
    (v + n - start) % n < len
}

fn arcs_overlap(s1: usize, l1: usize, s2: usize, l2: usize, n: usize) -> bool {
    in_arc(s1, l1, s2, n) || in_arc(s2, l2, s1, n)
}

/// Rectangle on the cover torus given by its lower row line, left column
/// line, height and width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverRect {
    pub bottom: usize,
    pub left: usize,
    pub height: usize,
    pub width: usize,
}

impl CoverRect {
    pub fn contains_cell(&self, r: usize, c: usize, n: usize) -> bool {
        in_arc(self.bottom, self.height, r, n) && in_arc(self.left, self.width, c, n)
    }

    pub fn contains_point_inside(&self, r: usize, c: usize, n: usize) -> bool {
        let dr = (r + n - self.bottom) % n;
        let dc = (c + n - self.left) % n;
        dr > 0 && dr < self.height && dc > 0 && dc < self.width
    }

    /// Whether the p deck translates have pairwise disjoint interiors.
    pub fn embeds(&self, cover: &CoverGrid) -> bool {
        self.embeds_in(cover.size, cover.p, cover.deck())
    }

    /// [`CoverRect::embeds`] for an arbitrary N×N torus and translation.
    pub fn embeds_in(&self, n: usize, p: usize, (dr, dc): (usize, usize)) -> bool {
        (1..p).all(|k| {
            let b = (self.bottom + k * dr) % n;
            let l = (self.left + k * dc) % n;
            !(arcs_overlap(self.bottom, self.height, b, self.height, n)
                && arcs_overlap(self.left, self.width, l, self.width, n))
        })
    }

    /// Multiplicities of the base z and w markings (indexed by base row).
    pub fn markings(&self, cover: &CoverGrid) -> (Vec<u32>, Vec<u32>) {
        let n = cover.size;
        let mut zm = vec![0; cover.n];
        let mut wm = vec![0; cover.n];
        for t in 0..self.height {
            let r = (self.bottom + t) % n;
            if in_arc(self.left, self.width, cover.z[r], n) {
                zm[r % cover.n] += 1;
            }
            if in_arc(self.left, self.width, cover.w[r], n) {
                wm[r % cover.n] += 1;
            }
        }
        (zm, wm)
    }

    /// No lifted generator point in the interior.
    pub fn is_empty_for(&self, col: &[usize]) -> bool {
        let n = col.len();
        (1..self.height).all(|t| {
            let r = (self.bottom + t) % n;
            let dc = (col[r] + n - self.left) % n;
            dc == 0 || dc >= self.width
        })
    }
}

/// Every embedded parallelogram leaving x, empty or not.
pub fn parallelograms_from(d: &GridDiagram, cover: &CoverGrid, x: &Generator) -> Vec<Parallelogram> {
    let col = lift_generator(d, x);
    let n = cover.size;
    let mut out = Vec::new();
    for a_row in 0..d.n {
        let a_col = col[a_row];
        for b_row in 0..n {
            if b_row % d.n == a_row {
                continue;
            }
            let b_col = col[b_row];
            let rect = CoverRect {
                bottom: b_row,
                left: a_col,
                height: (a_row + n - b_row) % n,
                width: (b_col + n - a_col) % n,
            };
            if !rect.embeds(cover) {
                continue;
            }
            let (z_mult, w_mult) = rect.markings(cover);
            let mut ycol = col.clone();
            ycol[a_row] = b_col;
            ycol[b_row] = a_col;
            let mut pos = x.pos.clone();
            let (ra, sa) = d.project_point(a_row, b_col);
            let (rb, sb) = d.project_point(b_row, a_col);
            pos[ra] = sa;
            pos[rb] = sb;
            out.push(Parallelogram {
                target: Generator::new(pos),
                rows: (ra, rb),
                corners: [(a_row, a_col), (b_row, b_col), (a_row, b_col), (b_row, a_col)],
                z_mult,
                w_mult,
                empty: rect.is_empty_for(&col),
            });
        }
    }
    out
}

/// Parallelograms from x to y.
pub fn parallelograms(d: &GridDiagram, x: &Generator, y: &Generator) -> Vec<Parallelogram> {
    if x == y {
        return Vec::new();
    }
    let cover = CoverGrid::of(d);
    parallelograms_from(d, &cover, x)
        .into_iter()
        .filter(|r| &r.target == y)
        .collect()
}

/// Finite F2-combination of U-monomials times generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainElement {
    pub terms: BTreeSet<(Generator, Vec<u32>)>,
}

impl ChainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(x: Generator, n: usize) -> Self {
        let mut c = Self::zero();
        c.toggle(x, vec![0; n]);
        c
    }

    pub fn toggle(&mut self, x: Generator, e: Vec<u32>) {
        let key = (x, e);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn add(&mut self, other: &ChainElement) {
        for (x, e) in &other.terms {
            self.toggle(x.clone(), e.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn add_exp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Pair count of points strictly south-west of other points, on doubled
/// coordinates.
fn sw_pairs(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut c = 0;
    for p in a {
        for q in b {
            if p.0 < q.0 && p.1 < q.1 {
                c += 1;
            }
        }
    }
    c
}

fn sym_pairs(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    sw_pairs(a, b) + sw_pairs(b, a)
}

/// The cover grid reflected left to right, so rectangles run from their SW
/// and NE corners and the usual S³ grading formulas apply.
struct MirrorFrame {
    n: usize,
    z: Vec<(i64, i64)>,
    w: Vec<(i64, i64)>,
    z_by_comp: Vec<Vec<(i64, i64)>>,
    w_by_comp: Vec<Vec<(i64, i64)>>,
}

impl MirrorFrame {
    fn new(d: &GridDiagram, cover: &CoverGrid) -> Self {
        let n = cover.size;
        let cell = |r: usize, c: usize| ((2 * (n - 1 - c) + 1) as i64, (2 * r + 1) as i64);
        let comps = d.component_count();
        let mut z_by_comp = vec![Vec::new(); comps];
        let mut w_by_comp = vec![Vec::new(); comps];
        let mut z = Vec::new();
        let mut w = Vec::new();
        for r in 0..n {
            let k = d.components()[r % d.n];
            let zc = cell(r, cover.z[r]);
            let wc = cell(r, cover.w[r]);
            z.push(zc);
            w.push(wc);
            z_by_comp[k].push(zc);
            w_by_comp[k].push(wc);
        }
        MirrorFrame {
            n,
            z,
            w,
            z_by_comp,
            w_by_comp,
        }
    }

    fn points(&self, col: &[usize]) -> Vec<(i64, i64)> {
        col.iter()
            .enumerate()
            .map(|(r, &c)| ((2 * ((self.n - c) % self.n)) as i64, (2 * r) as i64))
            .collect()
    }

    /// S³ Maslov grading with respect to the z̃ markings.
    fn maslov(&self, pts: &[(i64, i64)]) -> i64 {
        sw_pairs(pts, pts) - sym_pairs(pts, &self.z) + sw_pairs(&self.z, &self.z) + 1
    }

    /// 4·J(x − ½(w̃+z̃), w̃_k − z̃_k) for the lift of base component k.
    fn alexander4(&self, pts: &[(i64, i64)], k: usize) -> i64 {
        let wk = &self.w_by_comp[k];
        let zk = &self.z_by_comp[k];
        let first = 2 * (sym_pairs(pts, wk) - sym_pairs(pts, zk));
        let second = sym_pairs(&self.w, wk) - sym_pairs(&self.w, zk) + sym_pairs(&self.z, wk)
            - sym_pairs(&self.z, zk);
        first - second
    }
}

/// Generators, differential and gradings of one diagram.
pub struct Complex {
    pub diagram: GridDiagram,
    pub cover: CoverGrid,
    pub gens: Vec<Generator>,
    index: HashMap<Generator, usize>,
    /// ∂⁻: (target, z-exponents) per generator, F2-reduced
    pub boundary: Vec<Vec<(usize, Vec<u32>)>>,
    /// S³ Maslov grading of each lift
    pub cover_maslov: Vec<i64>,
    /// rational Alexander grading per component
    pub alexander: Vec<Vec<Q>>,
    /// Spin^c label relative to x⁺
    pub spinc: Vec<usize>,
    pub x_plus: usize,
    pub x_minus: usize,
    /// order of each component in H₁(L(p,q))
    pub orders: Vec<usize>,
    /// number of S³ components over each base component
    pub lifted_counts: Vec<usize>,
}

impl Complex {
    pub fn new(d: &GridDiagram) -> Self {
        let cover = CoverGrid::of(d);
        let gens = d.generators();
        let index: HashMap<Generator, usize> =
            gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let boundary: Vec<Vec<(usize, Vec<u32>)>> = gens
            .par_iter()
            .map(|x| {
                let mut acc: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
                for r in parallelograms_from(d, &cover, x) {
                    if r.empty && r.w_free() {
                        let key = (index[&r.target], r.z_mult);
                        if !acc.remove(&key) {
                            acc.insert(key);
                        }
                    }
                }
                acc.into_iter().collect()
            })
            .collect();

        let frame = MirrorFrame::new(d, &cover);
        let comps = d.component_count();
        let orders: Vec<usize> = (0..comps).map(|k| component_order(d, k)).collect();
        let lifted_counts: Vec<usize> = (0..comps)
            .map(|k| {
                cover
                    .components()
                    .iter()
                    .filter(|c| d.components()[c[0] % d.n] == k)
                    .count()
            })
            .collect();
        let p = d.p as i64;
        let (cover_maslov, alexander): (Vec<i64>, Vec<Vec<Q>>) = gens
            .par_iter()
            .map(|x| {
                let pts = frame.points(&lift_generator(d, x));
                let m = frame.maslov(&pts);
                let a = (0..comps)
                    .map(|k| {
                        let n_k = d.rows_of(k).len() as i64;
                        let lifted = Q::new(frame.alexander4(&pts, k), 4)
                            - Q::new(n_k * p - lifted_counts[k] as i64, 2);
                        let r = orders[k] as i64;
                        lifted / p + Q::new(1, 2) * (qi(1) - Q::new(1, r))
                    })
                    .collect();
                (m, a)
            })
            .unzip();

        let xp = index[&x_plus(d)];
        let xm = index[&x_minus(d)];
        let spinc = gens
            .iter()
            .map(|g| d.spinc_difference(&gens[xp], g))
            .collect();
        Complex {
            diagram: d.clone(),
            cover,
            gens,
            index,
            boundary,
            cover_maslov,
            alexander,
            spinc,
            x_plus: xp,
            x_minus: xm,
            orders,
            lifted_counts,
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, x: &Generator) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn vars(&self) -> usize {
        self.diagram.n
    }

    /// ∂⁻ of a chain.
    pub fn boundary_minus(&self, c: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for (x, e) in &c.terms {
            let i = self.index[x];
            for (j, f) in &self.boundary[i] {
                out.toggle(self.gens[*j].clone(), add_exp(e, f));
            }
        }
        out
    }

    pub fn boundary_of(&self, x: &Generator) -> ChainElement {
        self.boundary_minus(&ChainElement::generator(x.clone(), self.vars()))
    }

    /// Maslov grading with no anchoring: (1/p)·M̃ of the lift.
    pub fn raw_maslov(&self, i: usize) -> Q {
        Q::new(self.cover_maslov[i], self.diagram.p as i64)
    }

    pub fn anchored(&self, i: usize) -> bool {
        self.spinc[i] == self.spinc[self.x_plus] || self.spinc[i] == self.spinc[self.x_minus]
    }

    /// Absolute Maslov grading in the Spin^c classes of x⁺ and x⁻ (flag
    /// true); elsewhere the grading relative to the first generator of the
    /// class (flag false).
    pub fn maslov(&self, i: usize) -> (Q, bool) {
        let d = &self.diagram;
        if self.anchored(i) {
            let shift = d_invariant(d.p as i64, d.q as i64, d.q as i64 - 1)
                .expect("q−1 is in range");
            (self.raw_maslov(i) - shift, true)
        } else {
            let base = (0..self.len())
                .find(|&j| self.spinc[j] == self.spinc[i])
                .expect("class is nonempty");
            (self.raw_maslov(i) - self.raw_maslov(base), false)
        }
    }

    pub fn alexander_total(&self, i: usize) -> Q {
        self.alexander[i].iter().sum()
    }

    /// Alexander grading of U^e·x per component.
    pub fn alexander_of_monomial(&self, i: usize, e: &[u32]) -> Vec<Q> {
        let mut a = self.alexander[i].clone();
        for (row, &k) in e.iter().enumerate() {
            a[self.diagram.components()[row]] -= qi(k as i64);
        }
        a
    }

    pub fn lift(&self, i: usize) -> Vec<usize> {
        lift_generator(&self.diagram, &self.gens[i])
    }

    pub fn project(&self, col: &[usize]) -> Generator {
        project_generator(&self.diagram, col)
    }
}

/// Order of the class of a component in H₁ ≅ Z_p: its vertical winding.
pub fn component_order(d: &GridDiagram, k: usize) -> usize {
    use num_integer::Integer;
    let winding = vertical_winding(d, k);
    d.p / d.p.gcd(&(winding % d.p))
}

/// Number of times the upward column arcs of a component cross α₀.
pub fn vertical_winding(d: &GridDiagram, k: usize) -> usize {
    let mut count = 0;
    for row in d.rows_of(k) {
        // column arc from w of `row` up to the z in its column
        let col = d.w_column(row);
        let top = d.z_row_in_column(col);
        let mut r = row;
        let mut slot = d.w[row];
        loop {
            if r == top && slot == d.z[top] && !(r == row && slot == d.w[row]) {
                break;
            }
            slot = (slot + d.slots() - d.q) % d.slots();
            r += 1;
            if r == d.n {
                r = 0;
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GridDiagram {
        GridDiagram::new(3, 1, vec![0, 0], vec![1, 5]).unwrap()
    }

    #[test]
    fn no_parallelogram_to_itself() {
        let d = sample();
        let x = &d.generators()[3];
        assert!(parallelograms(&d, x, x).is_empty());
    }

    #[test]
    fn index_one_differential_vanishes() {
        for (p, q) in [(2, 1), (3, 1), (5, 2), (7, 3)] {
            for k in 1..p {
                let c = Complex::new(&GridDiagram::simple_knot(p, q, k).unwrap());
                assert!(c.boundary.iter().all(|b| b.is_empty()));
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let d = sample();
        let c = Complex::new(&d);
        for x in &c.gens {
            assert!(c.boundary_minus(&c.boundary_of(x)).is_zero());
        }
    }

    #[test]
    fn lifted_component_count_matches_order() {
        let d = sample();
        let c = Complex::new(&d);
        for k in 0..d.component_count() {
            assert_eq!(c.lifted_counts[k] * c.orders[k], d.p);
        }
    }
}
