//! The pentagon chain map of a commutation.
//!
//! Both diagrams are drawn on the cover with the commuted β-curve replaced
//! by a curve γ. γ runs left of the markings of the left column and right of
//! those of the right column, so it meets β twice; pentagons have one
//! corner at the crossing where γ passes, going up, from the right side of β
//! to the left. Row commutations are handled on the transposed cover, where
//! the same description applies. A row commutation moves z markings between
//! rows, so the map also renames the U variables after the markings.

use thiserror::Error;

use crate::complex::ChainElement;
use crate::cover::{lift_generator, project_generator, CoverGrid};
use crate::grid::{Generator, GridDiagram};
use crate::legendrian::moves::{commute_columns, commute_rows};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PentagonError {
    #[error("the diagrams are not related by a single commutation")]
    NotACommutationPair,
}

/// An N×N torus with one z and one w per row and a deck translation.
#[derive(Debug, Clone)]
struct Frame {
    size: usize,
    p: usize,
    deck: (usize, usize),
    z: Vec<usize>,
    w: Vec<usize>,
    /// U variable of the z in each row
    z_var: Vec<usize>,
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        out[v] = i;
    }
    out
}

impl Frame {
    fn of(d: &GridDiagram, transposed: bool) -> Self {
        let c = CoverGrid::of(d);
        let (dr, dc) = c.deck();
        if !transposed {
            return Frame {
                size: c.size,
                p: c.p,
                deck: (dr, dc),
                z_var: (0..c.size).map(|r| r % d.n).collect(),
                z: c.z,
                w: c.w,
            };
        }
        let zt = invert(&c.z);
        Frame {
            size: c.size,
            p: c.p,
            deck: (dc, dr),
            z_var: zt.iter().map(|&r| r % d.n).collect(),
            z: zt,
            w: invert(&c.w),
        }
    }

    fn column_rows(&self, col: usize) -> [usize; 2] {
        let zr = self.z.iter().position(|&c| c == col).expect("column has a z");
        let wr = self.w.iter().position(|&c| c == col).expect("column has a w");
        [zr, wr]
    }
}

/// A pentagon from x ∈ G to y ∈ G′.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pentagon {
    pub target: Generator,
    pub z_mult: Vec<u32>,
}

/// Where θ, the crossing at which γ passes going up from the right of β to
/// its left, is placed. It may sit anywhere between the last marking of the
/// right column and the first marking of the left column; the choices give
/// homotopic chain maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Theta {
    /// Placed so that P(x⁺) = x⁺.
    XPlus,
    /// Placed so that P(x⁻) = x⁻.
    XMinus,
    /// Placed so that both hold whenever a single θ allows it, which fails
    /// only when the two w markings of the commuted columns (rows) sit in
    /// adjacent rows (columns) on the wrong side of each other.
    #[default]
    Shared,
}

/// θ in the frame: lowest or highest admissible spot, or the shared one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Spot {
    Low,
    High,
    Shared,
}

/// Subrows (quarter units) of θ and of the crossing where γ returns.
fn crossings(f: &Frame, strip: usize, placement: Spot) -> (usize, usize) {
    let n = f.size;
    let big = 4 * n;
    let [lz, lw] = f.column_rows(strip);
    let [rz, rw] = f.column_rows((strip + 1) % n);
    let mut marks = [(lz, true), (lw, true), (rz, false), (rw, false)];
    marks.sort();
    let mut into_left = None;
    let mut out_of_left = None;
    for k in 0..4 {
        let (r, is_left) = marks[k];
        let (next, next_left) = marks[(k + 1) % 4];
        if !is_left && next_left {
            into_left = Some((r, next));
        }
        if is_left && !next_left {
            out_of_left = Some(r);
        }
    }
    let (last_right, first_left) = into_left.expect("markings do not interleave");
    let out = (4 * out_of_left.expect("markings do not interleave") + 3) % big;
    let low = 4 * last_right + 3;
    let high = 4 * first_left + 1;
    let theta = match placement {
        Spot::Low => low,
        Spot::High => high,
        Spot::Shared => {
            let above = |s: usize| (s + big - low) % big;
            let wanted = (4 * (rw + 1) + 1) % big;
            if above(wanted) <= above(high) && above(wanted) < above(4 * lw) {
                wanted
            } else {
                low
            }
        }
    };
    (theta % big, out)
}

impl Setup {
    /// Upper-left corners of w cells need θ high, lower-right corners need
    /// it low; transposing exchanges the two.
    fn spot(&self) -> Spot {
        match (self.theta, self.transposed) {
            (Theta::Shared, _) => Spot::Shared,
            (Theta::XPlus, false) | (Theta::XMinus, true) => Spot::High,
            _ => Spot::Low,
        }
    }
}

struct Setup {
    g: GridDiagram,
    g2: GridDiagram,
    transposed: bool,
    frame: Frame,
    /// left cell column of the first strip
    strip: usize,
    /// U variable of G′ carrying the same z as each variable of G
    var_map: Vec<usize>,
    theta: Theta,
}

pub struct PentagonMap {
    setup: Setup,
}

impl PentagonMap {
    pub fn new(g: &GridDiagram, g2: &GridDiagram) -> Result<Self, PentagonError> {
        Self::with_theta(g, g2, Theta::default())
    }

    pub fn with_theta(g: &GridDiagram, g2: &GridDiagram, theta: Theta) -> Result<Self, PentagonError> {
        for transposed in [false, true] {
            for i in 0..g.n {
                let moved = if transposed { commute_rows(g, i) } else { commute_columns(g, i) };
                if moved.as_ref().ok() == Some(g2) {
                    let mut frame = Frame::of(g, transposed);
                    let frame2 = Frame::of(g2, transposed);
                    let mut var_map = vec![0; g.n];
                    for (a, b) in frame.z_var.iter().zip(&frame2.z_var) {
                        var_map[*a] = *b;
                    }
                    frame.z_var = frame2.z_var;
                    return Ok(PentagonMap {
                        setup: Setup {
                            g: g.clone(),
                            g2: g2.clone(),
                            transposed,
                            frame,
                            strip: i,
                            var_map,
                            theta,
                        },
                    });
                }
            }
        }
        Err(PentagonError::NotACommutationPair)
    }

    fn to_frame(&self, col: Vec<usize>) -> Vec<usize> {
        if self.setup.transposed {
            invert(&col)
        } else {
            col
        }
    }

    /// Empty, w-free pentagons leaving x.
    pub fn pentagons(&self, x: &Generator) -> Vec<Pentagon> {
        let s = &self.setup;
        let f = &s.frame;
        let n = f.size;
        let base_n = s.g.n;
        let col = self.to_frame(lift_generator(&s.g, x));
        let beta = (s.strip + 1) % n;
        let (theta, back) = crossings(f, s.strip, s.spot());
        let up = |from: usize, to: usize| (to + n - from) % n;
        let on_beta = col.iter().position(|&c| c == beta).expect("x meets β");
        // quarter units: α line r at height 4r, markings at 4r+2, crossings
        // of β and γ at odd heights; β at 4·beta, γ three quarters off β
        let (big, qb) = (4 * n, 4 * beta);
        let gamma_left = |sub: usize| (sub + big - theta) % big < (back + big - theta) % big;
        let gamma_at = |sub: usize| {
            if gamma_left(sub) {
                (qb + big - 3) % big
            } else {
                (qb + 3) % big
            }
        };
        let mut out = Vec::new();
        for other in 0..n {
            if other % base_n == on_beta % base_n {
                continue;
            }
            // strip on the right: x at SE on β and NW on ℓ, region west of
            // the strip; otherwise x at NW on β and SE on ℓ, region east
            for strip_right in [true, false] {
                let (bottom, top) = if strip_right { (on_beta, other) } else { (other, on_beta) };
                let height = up(bottom, top);
                let corner = (theta + big - 4 * bottom) % big;
                if corner >= 4 * height {
                    continue;
                }
                let ell = col[other];
                // horizontal extent (start, length) of subrow `t` above the bottom
                let span = |t: usize| -> (usize, usize) {
                    let sub = (4 * bottom + t) % big;
                    let strip_edge = if (t < corner) == strip_right { qb } else { gamma_at(sub) };
                    if strip_right {
                        (4 * ell, (strip_edge + big - 4 * ell) % big)
                    } else {
                        (strip_edge, (4 * ell + big - strip_edge) % big)
                    }
                };
                let strictly_inside = |t: usize, pos: usize| {
                    let (a, len) = span(t);
                    let d = (pos + big - a) % big;
                    d > 0 && d < len
                };
                let empty = (1..height).all(|k| {
                    let r = (bottom + k) % n;
                    !strictly_inside(4 * k, 4 * col[r])
                });
                if !empty {
                    continue;
                }
                let embeds = (1..f.p).all(|k| {
                    let (dr, dc) = ((k * f.deck.0) % n, (k * f.deck.1) % n);
                    (0..4 * height).all(|t| {
                        // subrow of the translate at the same height as subrow t
                        let t2 = (t + big - 4 * dr) % big;
                        if t2 >= 4 * height {
                            return true;
                        }
                        let (a, la) = span(t);
                        let (b, lb) = span(t2);
                        let b = (b + 4 * dc) % big;
                        let hit = |s0: usize, l0: usize, v: usize| (v + big - s0) % big < l0;
                        !(hit(a, la, b) || hit(b, lb, a))
                    })
                });
                if !embeds {
                    continue;
                }
                let mut z_mult = vec![0u32; base_n];
                let mut hits_w = false;
                for k in 0..height {
                    let row = (bottom + k) % n;
                    if strictly_inside(4 * k + 2, 4 * f.z[row] + 2) {
                        z_mult[f.z_var[row]] += 1;
                    }
                    if strictly_inside(4 * k + 2, 4 * f.w[row] + 2) {
                        hits_w = true;
                    }
                }
                if hits_w {
                    continue;
                }
                let (on_gamma_row, on_ell_row) = if strip_right { (top, bottom) } else { (bottom, top) };
                let mut ycol = col.clone();
                for k in 0..f.p {
                    ycol[(on_gamma_row + k * f.deck.0) % n] = (beta + k * f.deck.1) % n;
                    ycol[(on_ell_row + k * f.deck.0) % n] = (ell + k * f.deck.1) % n;
                }
                let ycol = self.to_frame(ycol);
                out.push(Pentagon {
                    target: project_generator(&s.g2, &ycol),
                    z_mult,
                });
            }
        }
        out
    }

    pub fn apply(&self, c: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for (x, e) in &c.terms {
            let mut moved = vec![0; e.len()];
            for (j, &k) in e.iter().enumerate() {
                moved[self.setup.var_map[j]] = k;
            }
            for pent in self.pentagons(x) {
                let exp = moved.iter().zip(&pent.z_mult).map(|(a, b)| a + b).collect();
                out.toggle(pent.target, exp);
            }
        }
        out
    }

    pub fn source(&self) -> &GridDiagram {
        &self.setup.g
    }

    pub fn target(&self) -> &GridDiagram {
        &self.setup.g2
    }
}

pub fn commutation_chain_map(g: &GridDiagram, g2: &GridDiagram) -> Result<PentagonMap, PentagonError> {
    PentagonMap::new(g, g2)
}
