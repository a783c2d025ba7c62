//! Chain maps of a destabilization, restricted to the subcomplexes where
//! they are combinatorial.
//!
//! The stabilized diagram G′ has a 2×2 block whose centre η is the crossing
//! of the new α and β curves. Generators through η form I, the rest form N.
//! `e` deletes η and identifies I with the generators of G, and
//! H^I_{w1}: N → I counts empty rectangles whose only w is w1.
//! Exponent vectors on the G side carry one extra entry for U₀, the
//! variable of the deleted row; π folds it into the variable of the kept row.

use thiserror::Error;

use crate::complex::{parallelograms_from, ChainElement};
use crate::cover::{lift_generator, project_generator, CoverGrid};
use crate::grid::{Generator, GridDiagram};
use crate::legendrian::moves::{
    destabilize_at, shrink_index, DestabSite, Marker, MoveError, Ordinal, StabType,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DestabError {
    #[error("{0} destabilizations have no H map; use the identification e")]
    WrongStabilizationType(StabType),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Shared data of e and H for one destabilization site of G′.
#[derive(Debug, Clone)]
pub struct Destabilization {
    big: GridDiagram,
    small: GridDiagram,
    site: DestabSite,
    cover: CoverGrid,
    /// cover line of η: (row line, column line)
    eta: (usize, usize),
    /// base rows (U variables) of G′: (kept, dropped)
    vars: (usize, usize),
    dropped: (usize, usize),
}

impl Destabilization {
    pub fn new(big: &GridDiagram, site: &DestabSite) -> Result<Self, DestabError> {
        let small = destabilize_at(big, site)?;
        let cover = CoverGrid::of(big);
        let n = cover.size;
        let ((keep_row, drop_row), (_, drop_col)) = site.kept_and_dropped(n);
        Ok(Destabilization {
            big: big.clone(),
            small,
            site: *site,
            eta: ((site.row + 1) % n, (site.col + 1) % n),
            vars: (keep_row % big.n, drop_row % big.n),
            dropped: (drop_row % big.n, drop_col % big.n),
            cover,
        })
    }

    pub fn stabilized(&self) -> &GridDiagram {
        &self.big
    }

    pub fn destabilized(&self) -> &GridDiagram {
        &self.small
    }

    pub fn site(&self) -> &DestabSite {
        &self.site
    }

    /// Whether x has η as a component.
    pub fn in_i(&self, x: &Generator) -> bool {
        lift_generator(&self.big, x)[self.eta.0] == self.eta.1
    }

    /// Cover line of G for a cover line of G′ other than a translate of η's.
    fn line(&self, l: usize, drop: usize) -> usize {
        let (n, size) = (self.big.n, self.cover.size);
        let l = if l % n == drop { (l + 1) % size } else { l };
        shrink_index(l, drop, n)
    }

    /// The generator of G obtained by deleting η, if x ∈ I.
    pub fn e(&self, x: &Generator) -> Option<Generator> {
        let col = lift_generator(&self.big, x);
        if col[self.eta.0] != self.eta.1 {
            return None;
        }
        let n = self.big.n;
        let mut out = vec![0; self.cover.size - self.cover.p];
        for (r, &c) in col.iter().enumerate() {
            if r % n != self.eta.0 % n {
                out[self.line(r, self.dropped.0)] = self.line(c, self.dropped.1);
            }
        }
        Some(project_generator(&self.small, &out))
    }

    /// Exponents of G′ rewritten over G with U₀ last.
    fn exponents(&self, e: &[u32]) -> Vec<u32> {
        let m = self.small.n;
        let mut out = vec![0; m + 1];
        for (v, &k) in e.iter().enumerate() {
            if v == self.vars.1 {
                out[m] += k;
            } else {
                out[shrink_index(v, self.vars.1, self.big.n)] += k;
            }
        }
        out
    }

    /// The G variable that π identifies with U₀.
    pub fn merged_variable(&self) -> usize {
        shrink_index(self.vars.0, self.vars.1, self.big.n)
    }

    /// e on a chain supported in I; other generators are dropped.
    pub fn e_chain(&self, c: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for (x, k) in &c.terms {
            if let Some(y) = self.e(x) {
                out.toggle(y, self.exponents(k));
            }
        }
        out
    }

    /// π: set U₀ equal to the variable of the kept row.
    pub fn pi(&self, c: &ChainElement) -> ChainElement {
        let m = self.small.n;
        let v = self.merged_variable();
        let mut out = ChainElement::zero();
        for (x, k) in &c.terms {
            let mut k2 = k[..m].to_vec();
            k2[v] += k[m];
            out.toggle(x.clone(), k2);
        }
        out
    }

    /// Cover cells (row, column) of the two w markings of the block.
    pub fn block_ws(&self) -> Vec<(usize, usize)> {
        let n = self.cover.size;
        let rows = [self.site.row, (self.site.row + 1) % n];
        let cols = [self.site.col, (self.site.col + 1) % n];
        rows.iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .filter(|&(r, c)| self.cover.w[r] == c)
            .collect()
    }
}

/// H^I_{w1} followed by e, for W:NW and W:SE destabilizations.
#[derive(Debug, Clone)]
pub struct DestabilizationMap {
    pub base: Destabilization,
    /// base row of w1
    w1_row: usize,
}

impl DestabilizationMap {
    /// `w1` is the cover cell of one of the block's w markings; `None`
    /// takes the one in the row that survives.
    pub fn new(big: &GridDiagram, site: &DestabSite, w1: Option<(usize, usize)>) -> Result<Self, DestabError> {
        let kind = site.kind;
        if kind.marker != Marker::W || !matches!(kind.free, Ordinal::NW | Ordinal::SE) {
            return Err(DestabError::WrongStabilizationType(kind));
        }
        let base = Destabilization::new(big, site)?;
        let n = big.n;
        let w1_row = match w1 {
            Some((r, _)) => r % n,
            None => base.vars.0,
        };
        Ok(DestabilizationMap { base, w1_row })
    }

    /// H^I_{w1}(x) for x ∈ N, over the variables of G′.
    pub fn h(&self, x: &Generator) -> ChainElement {
        let b = &self.base;
        let mut out = ChainElement::zero();
        if b.in_i(x) {
            return out;
        }
        for r in parallelograms_from(&b.big, &b.cover, x) {
            let hits_only_w1 = r
                .w_mult
                .iter()
                .enumerate()
                .all(|(v, &k)| k == u32::from(v == self.w1_row));
            if r.empty && hits_only_w1 && b.in_i(&r.target) {
                out.toggle(r.target, r.z_mult);
            }
        }
        out
    }

    /// e ∘ H^I_{w1} on a chain of N, into CFK⁻(G)[U₀].
    pub fn apply(&self, c: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for (x, k) in &c.terms {
            for (y, f) in &self.h(x).terms {
                if let Some(g) = self.base.e(y) {
                    let sum: Vec<u32> = k.iter().zip(f).map(|(a, b)| a + b).collect();
                    out.toggle(g, self.base.exponents(&sum));
                }
            }
        }
        out
    }

    /// π ∘ e ∘ H^I_{w1}.
    pub fn apply_reduced(&self, c: &ChainElement) -> ChainElement {
        self.base.pi(&self.apply(c))
    }
}

pub fn destabilization_map(big: &GridDiagram, site: &DestabSite) -> Result<DestabilizationMap, DestabError> {
    DestabilizationMap::new(big, site, None)
}
