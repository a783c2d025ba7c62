//! Rectilinear projections and the classical invariants tb_Q, rot_Q, sl_Q.
//!
//! Vertical arcs run inside a column from w to z, horizontal arcs run inside
//! a row from z to w; each arc may go either way round. Vertical strands
//! cross over horizontal ones. NW and SE corners become cusps of the front,
//! oriented down exactly when the adjacent vertical arc is traversed
//! downwards.

use crate::cover::CoverGrid;
use crate::grid::GridDiagram;
use crate::rational::{qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerType {
    NW,
    NE,
    SW,
    SE,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cusp {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub component: usize,
    pub kind: ArcKind,
    /// true for up (vertical) or right (horizontal)
    pub forward: bool,
    /// cells in travel order, endpoints included
    pub cells: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub cell: (usize, usize),
    pub kind: CornerType,
    pub cusp: Option<Cusp>,
    pub component: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub cell: (usize, usize),
    pub sign: i64,
    pub over: usize,
    pub under: usize,
}

/// Signed counts of one projection, whole link or one component.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub writhe: i64,
    pub c_d: i64,
    pub c_u: i64,
    pub m: i64,
    pub l: i64,
    /// signed crossings with other components (per-component counts only)
    pub mixed: i64,
}

impl Counts {
    pub fn c(&self) -> i64 {
        self.c_d + self.c_u
    }
}

/// Direction choice for every arc: `up[i]` for the vertical arc leaving the
/// w of row i, `left[i]` for the horizontal arc of row i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Routing {
    pub up: Vec<bool>,
    pub left: Vec<bool>,
}

impl Routing {
    pub fn canonical(n: usize) -> Self {
        Routing {
            up: vec![true; n],
            left: vec![true; n],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectilinearProjection {
    pub arcs: Vec<Arc>,
    pub corners: Vec<Corner>,
    pub crossings: Vec<Crossing>,
    pub counts: Counts,
    /// counts restricted to each component; crossings between different
    /// components are left out
    pub components: Vec<Counts>,
}

/// A twisted torus grid: `rows` α-curves, `rows·sheets` slots per row, and
/// slot t of row i between β-boundaries t and t+1, boundary s on β_{(s+q·i) mod rows}.
struct Torus {
    rows: usize,
    slots: usize,
    q: usize,
    z: Vec<usize>,
    w: Vec<usize>,
    comp: Vec<usize>,
    comps: usize,
}

impl Torus {
    fn base(d: &GridDiagram) -> Self {
        Torus {
            rows: d.n,
            slots: d.slots(),
            q: d.q,
            z: d.z.clone(),
            w: d.w.clone(),
            comp: d.components().to_vec(),
            comps: d.component_count(),
        }
    }

    fn cover(d: &GridDiagram) -> Self {
        let c = CoverGrid::of(d);
        Torus {
            rows: c.size,
            slots: c.size,
            q: 0,
            z: c.z.clone(),
            w: c.w.clone(),
            comp: (0..c.size).map(|r| d.components()[r % d.n]).collect(),
            comps: d.component_count(),
        }
    }

    fn on_beta0(&self, row: usize, boundary: usize) -> bool {
        (boundary + self.q * row) % self.rows == 0
    }

    fn project(&self, routing: &Routing) -> RectilinearProjection {
        let n = self.rows;
        let s = self.slots;
        let mut arcs = Vec::new();
        let mut counts = vec![Counts::default(); self.comps];
        let mut vert_at = vec![None; n * s];
        let mut horiz_at = vec![None; n * s];

        for i in 0..n {
            let k = self.comp[i];
            let up = routing.up[i];
            let mut cells = vec![(i, self.w[i])];
            let (mut r, mut t) = (i, self.w[i]);
            loop {
                if up {
                    t = (t + s - self.q % s) % s;
                    if r == n - 1 {
                        counts[k].m += 1;
                    }
                    r = (r + 1) % n;
                } else {
                    t = (t + self.q) % s;
                    if r == 0 {
                        counts[k].m -= 1;
                    }
                    r = (r + n - 1) % n;
                }
                cells.push((r, t));
                if self.z[r] == t {
                    break;
                }
            }
            for &(r, t) in &cells[1..cells.len() - 1] {
                vert_at[r * s + t] = Some((arcs.len(), k, if up { 1 } else { -1 }));
            }
            arcs.push(Arc {
                component: k,
                kind: ArcKind::Vertical,
                forward: up,
                cells,
            });
        }

        for i in 0..n {
            let k = self.comp[i];
            let left = routing.left[i];
            let mut cells = vec![(i, self.z[i])];
            let mut t = self.z[i];
            while t != self.w[i] {
                if left {
                    if self.on_beta0(i, t) {
                        counts[k].l += 1;
                    }
                    t = (t + s - 1) % s;
                } else {
                    t = (t + 1) % s;
                    if self.on_beta0(i, t) {
                        counts[k].l -= 1;
                    }
                }
                cells.push((i, t));
            }
            for &(r, t) in &cells[1..cells.len() - 1] {
                horiz_at[r * s + t] = Some((k, if left { -1 } else { 1 }));
            }
            arcs.push(Arc {
                component: k,
                kind: ArcKind::Horizontal,
                forward: !left,
                cells,
            });
        }

        let mut crossings = Vec::new();
        let mut mixed = 0;
        for cell in 0..n * s {
            if let (Some((_, ko, dy)), Some((ku, dx))) = (vert_at[cell], horiz_at[cell]) {
                let sign = -dy * dx;
                if ko == ku {
                    counts[ko].writhe += sign;
                } else {
                    mixed += sign;
                    counts[ko].mixed += sign;
                    counts[ku].mixed += sign;
                }
                crossings.push(Crossing {
                    cell: (cell / s, cell % s),
                    sign,
                    over: ko,
                    under: ku,
                });
            }
        }

        // the column through the z of row r is entered by the arc from the w
        // that z closes; map z rows to their vertical arcs
        let mut closes = vec![0; n];
        for (i, a) in arcs[..n].iter().enumerate() {
            closes[a.cells.last().expect("nonempty").0] = i;
        }
        let mut corners = Vec::new();
        for i in 0..n {
            let k = self.comp[i];
            // at w: horizontal arrives, vertical leaves
            let h_side_w = if routing.left[i] { 'E' } else { 'W' };
            let v_side_w = if routing.up[i] { 'N' } else { 'S' };
            let v_down_w = !routing.up[i];
            // at z: vertical arrives, horizontal leaves
            let j = closes[i];
            let v_side_z = if routing.up[j] { 'S' } else { 'N' };
            let h_side_z = if routing.left[i] { 'W' } else { 'E' };
            let v_down_z = !routing.up[j];
            for (cell, v, h, down) in [
                ((i, self.w[i]), v_side_w, h_side_w, v_down_w),
                ((i, self.z[i]), v_side_z, h_side_z, v_down_z),
            ] {
                let kind = match (v, h) {
                    ('S', 'E') => CornerType::NW,
                    ('S', _) => CornerType::NE,
                    ('N', 'E') => CornerType::SW,
                    _ => CornerType::SE,
                };
                let cusp = match kind {
                    CornerType::NW | CornerType::SE => {
                        Some(if down { Cusp::Down } else { Cusp::Up })
                    }
                    _ => None,
                };
                match cusp {
                    Some(Cusp::Down) => counts[k].c_d += 1,
                    Some(Cusp::Up) => counts[k].c_u += 1,
                    None => {}
                }
                corners.push(Corner {
                    cell,
                    kind,
                    cusp,
                    component: k,
                });
            }
        }

        let mut total = Counts {
            writhe: mixed,
            ..Counts::default()
        };
        for c in &counts {
            total.writhe += c.writhe;
            total.c_d += c.c_d;
            total.c_u += c.c_u;
            total.m += c.m;
            total.l += c.l;
        }
        RectilinearProjection {
            arcs,
            corners,
            crossings,
            counts: total,
            components: counts,
        }
    }
}

/// Projection of the diagram with the given routing.
pub fn projection(d: &GridDiagram, routing: &Routing) -> RectilinearProjection {
    Torus::base(d).project(routing)
}

pub fn canonical_projection(d: &GridDiagram) -> RectilinearProjection {
    projection(d, &Routing::canonical(d.n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classical {
    pub tb: Q,
    pub rot: Q,
    pub sl: Q,
    /// rational linking number with the rest of the link
    pub lk: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub tb: Q,
    pub rot: Q,
    pub sl: Q,
    /// each component taken on its own
    pub components: Vec<Classical>,
}

fn from_counts(c: &Counts, p: usize) -> Classical {
    let p = p as i64;
    Classical {
        tb: qi(c.writhe) - Q::new(c.c(), 2) - Q::new(c.m * c.l, p),
        rot: Q::new(c.c_d - c.c_u, 2) - Q::new(c.l - c.m, p),
        sl: qi(c.writhe - c.c_d) - Q::new(c.m * c.l + c.m - c.l, p),
        lk: Q::new(c.mixed, 2),
    }
}

pub fn invariants_of(proj: &RectilinearProjection, p: usize) -> ClassicalInvariants {
    let all = from_counts(&proj.counts, p);
    let (m, l) = (proj.counts.m, proj.counts.l);
    let components = proj
        .components
        .iter()
        .map(|c| {
            let mut out = from_counts(c, p);
            out.lk -= Q::new(c.m * (l - c.l) + (m - c.m) * c.l, 2 * p as i64);
            out
        })
        .collect();
    ClassicalInvariants {
        tb: all.tb,
        rot: all.rot,
        sl: all.sl,
        components,
    }
}

pub fn classical_invariants(d: &GridDiagram) -> ClassicalInvariants {
    invariants_of(&canonical_projection(d), d.p)
}

/// Classical invariants of the preimage link in S³, from a planar
/// projection of the stacked grid (no arc crosses the edge of the square).
pub fn cover_classical(d: &GridDiagram) -> ClassicalInvariants {
    let t = Torus::cover(d);
    let routing = Routing {
        up: (0..t.rows).map(|r| {
            let col = t.w[r];
            let top = (0..t.rows).find(|&i| t.z[i] == col).expect("column has a z");
            top > r
        }).collect(),
        left: (0..t.rows).map(|r| t.w[r] < t.z[r]).collect(),
    };
    let proj = t.project(&routing);
    debug_assert!(proj.counts.m == 0 && proj.counts.l == 0);
    invariants_of(&proj, 1)
}
