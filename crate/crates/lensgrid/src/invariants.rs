//! Distinguished cycles x⁺ and x⁻, the packaged GRID invariants and the
//! d-invariants of lens spaces.

use num_integer::Integer;
use thiserror::Error;

use crate::complex::{ChainElement, Complex};
use crate::cover::{project_generator, CoverGrid};
use crate::grid::{Generator, GridDiagram};
use crate::homology::{class_is_nonzero_hat, u_unified_nonvanishing};
use crate::legendrian::classical::classical_invariants;
use crate::legendrian::destab::{destabilization_map, DestabError, Destabilization};
use crate::legendrian::moves::{
    destabilization_sites, destabilize_at, stabilize, Marker, MoveError, Ordinal, StabType,
};
use crate::rational::{qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("d({0},{1},{2}) is outside the recursion domain")]
    DomainError(i64, i64, i64),
    #[error("{which}: classical formula gives {formula}, the complex gives {complex}")]
    GradingMismatch {
        which: String,
        formula: String,
        complex: String,
    },
    #[error("{0} stabilizations have no distinguished-cycle relation")]
    UnsupportedType(StabType),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Destab(#[from] DestabError),
}

/// Upper-left corners of the w cells.
pub fn x_plus(d: &GridDiagram) -> Generator {
    let c = CoverGrid::of(d);
    let n = c.size;
    let col: Vec<usize> = (0..n).map(|r| c.w[(r + n - 1) % n]).collect();
    project_generator(d, &col)
}

/// Lower-right corners of the w cells.
pub fn x_minus(d: &GridDiagram) -> Generator {
    let c = CoverGrid::of(d);
    let n = c.size;
    let col: Vec<usize> = (0..n).map(|r| (c.w[r] + 1) % n).collect();
    project_generator(d, &col)
}

/// d(p,q,i) with d(1,0,0) = 0.
pub fn d_invariant(p: i64, q: i64, i: i64) -> Result<Q, InvariantError> {
    let bad = InvariantError::DomainError(p, q, i);
    if p < 1 || q < 0 || i < 0 {
        return Err(bad);
    }
    if q == 0 {
        return if p == 1 && i == 0 { Ok(Q::from_integer(0)) } else { Err(bad) };
    }
    if q >= p || i >= p + q || p.gcd(&q) != 1 {
        return Err(bad);
    }
    let s = 2 * i + 1 - p - q;
    let head = Q::new(p * q - s * s, 4 * p * q);
    Ok(head - d_invariant(q, p % q, i % q)?)
}

/// Maslov grading and per-component Alexander gradings of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingReport {
    pub maslov: Q,
    pub alexander: Vec<Q>,
}

impl GradingReport {
    pub fn alexander_total(&self) -> Q {
        self.alexander.iter().sum()
    }
}

/// λ⁺ and λ⁻ of a diagram (θ is λ⁺ read as a transverse invariant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridInvariantBundle {
    pub x_plus: Generator,
    pub x_minus: Generator,
    pub lambda_plus: GradingReport,
    pub lambda_minus: GradingReport,
    pub hat_nonzero_plus: bool,
    pub hat_nonzero_minus: bool,
    pub u_tower_plus: bool,
    pub u_tower_minus: bool,
}

/// Gradings of x⁺ (sign −1) or x⁻ (sign +1) from tb_Q and rot_Q.
fn formula_gradings(d: &GridDiagram, sign: i64) -> GradingReport {
    let cl = classical_invariants(d);
    let shift = d_invariant(d.p as i64, d.q as i64, d.q as i64 - 1).expect("q−1 is in range");
    let maslov = cl.tb + qi(sign) * cl.rot + Q::new(1, d.p as i64) - shift;
    let alexander = cl
        .components
        .iter()
        .map(|c| (c.tb + c.lk + qi(sign) * c.rot + qi(1)) / qi(2))
        .collect();
    GradingReport { maslov, alexander }
}

fn complex_gradings(c: &Complex, i: usize) -> GradingReport {
    GradingReport {
        maslov: c.maslov(i).0,
        alexander: c.alexander[i].clone(),
    }
}

/// Bundle of a diagram whose complex is already built.
pub fn bundle_of(c: &Complex) -> Result<GridInvariantBundle, InvariantError> {
    let d = &c.diagram;
    let mut reports = Vec::new();
    for (name, i, sign) in [("λ⁺", c.x_plus, -1), ("λ⁻", c.x_minus, 1)] {
        let formula = formula_gradings(d, sign);
        let complex = complex_gradings(c, i);
        if formula != complex {
            return Err(InvariantError::GradingMismatch {
                which: name.to_string(),
                formula: format!("{formula:?}"),
                complex: format!("{complex:?}"),
            });
        }
        reports.push(complex);
    }
    let cycle = |i: usize| ChainElement::generator(c.gens[i].clone(), d.n);
    let hat = |i| class_is_nonzero_hat(c, &cycle(i)).expect("x± are cycles");
    let tower = |i| u_unified_nonvanishing(c, &cycle(i)).expect("x± are cycles");
    let lambda_minus = reports.pop().expect("two reports");
    let lambda_plus = reports.pop().expect("two reports");
    Ok(GridInvariantBundle {
        x_plus: c.gens[c.x_plus].clone(),
        x_minus: c.gens[c.x_minus].clone(),
        lambda_plus,
        lambda_minus,
        hat_nonzero_plus: hat(c.x_plus),
        hat_nonzero_minus: hat(c.x_minus),
        u_tower_plus: tower(c.x_plus),
        u_tower_minus: tower(c.x_minus),
    })
}

/// Builds the complex, computes λ± and checks the closed-form gradings
/// against the complex.
pub fn grid_invariant_gradings(d: &GridDiagram) -> Result<GridInvariantBundle, InvariantError> {
    bundle_of(&Complex::new(d))
}

/// What a destabilization map does to x⁺ or x⁻ of the stabilized diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// sent to the same cycle of G
    Preserved,
    /// sent to U times the cycle of G
    UMultiplied,
    /// anything else; never expected
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub kind: StabType,
    pub before: GridInvariantBundle,
    pub after: GridInvariantBundle,
    pub plus: Relation,
    pub minus: Relation,
    /// (ΔM, ΔA) from G to the stabilized diagram
    pub plus_shift: (Q, Q),
    pub minus_shift: (Q, Q),
}

fn relation(image: &ChainElement, target: &Generator, var: usize, n: usize) -> Relation {
    let mono = |k: u32| {
        let mut e = vec![0; n];
        e[var] = k;
        let mut out = ChainElement::zero();
        out.toggle(target.clone(), e);
        out
    };
    if *image == mono(0) {
        Relation::Preserved
    } else if *image == mono(1) {
        Relation::UMultiplied
    } else {
        Relation::Other
    }
}

fn shift(before: &GradingReport, after: &GradingReport) -> (Q, Q) {
    (
        after.maslov - before.maslov,
        after.alexander_total() - before.alexander_total(),
    )
}

/// Stabilizes at the marker of `row`, recomputes λ± and reads off how the
/// destabilization map relates the two pairs of cycles. W:NE and W:SW are
/// reported through the identification e, which preserves both.
pub fn stabilization_behavior(
    d: &GridDiagram,
    kind: StabType,
    row: usize,
) -> Result<StabilizationReport, InvariantError> {
    if kind.marker != Marker::W {
        return Err(InvariantError::UnsupportedType(kind));
    }
    let big = stabilize(d, kind, row)?;
    let site = destabilization_sites(&big)
        .into_iter()
        .find(|s| s.kind == kind && destabilize_at(&big, s).as_ref() == Ok(d))
        .ok_or(MoveError::NoSuchSite)?;
    let before = grid_invariant_gradings(d)?;
    let after = grid_invariant_gradings(&big)?;
    let (plus, minus) = match kind.free {
        Ordinal::NW | Ordinal::SE => {
            let m = destabilization_map(&big, &site)?;
            let v = m.base.merged_variable();
            let image = |x: &Generator| m.apply_reduced(&ChainElement::generator(x.clone(), big.n));
            (
                relation(&image(&after.x_plus), &before.x_plus, v, d.n),
                relation(&image(&after.x_minus), &before.x_minus, v, d.n),
            )
        }
        Ordinal::NE | Ordinal::SW => {
            let e = Destabilization::new(&big, &site)?;
            let same = |x: &Generator, y: &Generator| {
                if e.e(x).as_ref() == Some(y) {
                    Relation::Preserved
                } else {
                    Relation::Other
                }
            };
            (same(&after.x_plus, &before.x_plus), same(&after.x_minus, &before.x_minus))
        }
    };
    let report = StabilizationReport {
        kind,
        plus_shift: shift(&before.lambda_plus, &after.lambda_plus),
        minus_shift: shift(&before.lambda_minus, &after.lambda_minus),
        before,
        after,
        plus,
        minus,
    };
    for (name, rel, (dm, da)) in [
        ("λ⁺", report.plus, report.plus_shift),
        ("λ⁻", report.minus, report.minus_shift),
    ] {
        let expected = match rel {
            Relation::Preserved => (qi(0), qi(0)),
            Relation::UMultiplied => (qi(-2), qi(-1)),
            Relation::Other => continue,
        };
        if (dm, da) != expected {
            return Err(InvariantError::GradingMismatch {
                which: format!("{name} under {kind}"),
                formula: format!("{expected:?}"),
                complex: format!("{:?}", (dm, da)),
            });
        }
    }
    Ok(report)
}
