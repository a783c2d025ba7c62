//! Index-one detection through the four hat invariants of a diagram and
//! its dual, and Floer simplicity.

use crate::complex::{ChainElement, Complex};
use crate::cover::dualize;
use crate::grid::GridDiagram;
use crate::homology::{class_is_nonzero_hat, hat_rank};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// All four invariants survive and the diagram has index one.
    ConsistentIndexOne,
    /// Some invariant vanishes, so the diagram is not index one for a knot
    /// with an S³ surgery.
    ObstructionFound,
    /// All four survive but no S³ surgery was assumed.
    Inconclusive,
    /// All four survive under the S³ surgery assumption, yet the index
    /// exceeds one.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleReport {
    pub hat_plus_g: bool,
    pub hat_minus_g: bool,
    pub hat_plus_dual: bool,
    pub hat_minus_dual: bool,
    pub index_one: bool,
    pub floer_simple: bool,
    pub verdict: Verdict,
}

impl QuadrupleReport {
    pub fn all_nonzero(&self) -> bool {
        self.hat_plus_g && self.hat_minus_g && self.hat_plus_dual && self.hat_minus_dual
    }
}

fn hat_pair(c: &Complex) -> (bool, bool) {
    let n = c.diagram.n;
    let nonzero = |i: usize| {
        class_is_nonzero_hat(c, &ChainElement::generator(c.gens[i].clone(), n))
            .expect("x± are cycles")
    };
    (nonzero(c.x_plus), nonzero(c.x_minus))
}

fn verdict(all_nonzero: bool, index_one: bool, assume_s3_surgery: bool) -> Verdict {
    match (all_nonzero, assume_s3_surgery, index_one) {
        (false, _, _) => Verdict::ObstructionFound,
        (true, false, _) => Verdict::Inconclusive,
        (true, true, true) => Verdict::ConsistentIndexOne,
        (true, true, false) => Verdict::Contradiction,
    }
}

/// Report with the verdict computed under the S³ surgery assumption.
pub fn quadruple_invariants(d: &GridDiagram) -> QuadrupleReport {
    quadruple_with(d, true)
}

fn quadruple_with(d: &GridDiagram, assume_s3_surgery: bool) -> QuadrupleReport {
    let c = Complex::new(d);
    let (hat_plus_g, hat_minus_g) = hat_pair(&c);
    let (hat_plus_dual, hat_minus_dual) = hat_pair(&Complex::new(&dualize(d)));
    let index_one = d.n == 1;
    let all = hat_plus_g && hat_minus_g && hat_plus_dual && hat_minus_dual;
    QuadrupleReport {
        hat_plus_g,
        hat_minus_g,
        hat_plus_dual,
        hat_minus_dual,
        index_one,
        floer_simple: hat_rank(&c) == d.p,
        verdict: verdict(all, index_one, assume_s3_surgery),
    }
}

pub fn berge_report(d: &GridDiagram, assume_s3_surgery: bool) -> QuadrupleReport {
    quadruple_with(d, assume_s3_surgery)
}

pub fn berge_verdict(d: &GridDiagram, assume_s3_surgery: bool) -> Verdict {
    quadruple_with(d, assume_s3_surgery).verdict
}

pub fn floer_simple_check(d: &GridDiagram) -> bool {
    hat_rank(&Complex::new(d)) == d.p
}
