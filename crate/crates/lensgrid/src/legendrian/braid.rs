//! The braid about the binding induced by a grid diagram.
//!
//! In sheared cover coordinates the column arcs are vertical, so one period
//! (rows 0..n) of the cover is read as a braid on strands ordered by cover
//! column. Each row's horizontal arc carries one strand from its z column
//! to its w column, passing under the strands in between without crossing
//! column 0. Closing up a period applies the fractional twist δ^{q/p}, which
//! rotates the strands back by q·n columns.

use crate::cover::CoverGrid;
use crate::grid::GridDiagram;
use crate::rational::{qi, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    /// ±j stands for σ_j^{±1}, j ≥ 1
    pub letters: Vec<i32>,
    pub strands: usize,
    pub writhe: i64,
}

impl BraidWord {
    pub fn to_text(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("S{}", -l) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Columns of the upward column arcs that pass through the interior of
/// cover row `row`.
fn passing(c: &CoverGrid, row: usize) -> Vec<usize> {
    let n = c.size;
    let mut z_row = vec![0; n];
    for r in 0..n {
        z_row[c.z[r]] = r;
    }
    (0..n)
        .filter(|&r| {
            let top = z_row[c.w[r]];
            let up = (row + n - r) % n;
            up > 0 && up < (top + n - r) % n
        })
        .map(|r| c.w[r])
        .collect()
}

pub fn braid_word(d: &GridDiagram) -> BraidWord {
    let c = CoverGrid::of(d);
    let mut letters = Vec::new();
    let mut strands = 0;
    for row in 0..d.n {
        let others = passing(&c, row);
        strands = others.len() + 1;
        let (from, to) = (c.z[row], c.w[row]);
        let a = others.iter().filter(|&&x| x < from).count() as i32;
        let b = others.iter().filter(|&&x| x < to).count() as i32;
        if to < from {
            letters.extend((b + 1..=a).rev());
        } else {
            letters.extend((a + 1..=b).map(|j| -j));
        }
    }
    // closing up: strands that cross column 0 while the frame turns back by
    // q·n columns each pass behind every other strand
    let shift = (d.q * d.n) % c.size;
    let mut bottom = passing(&c, 0);
    bottom.push(c.z[0]);
    let wrapped = bottom
        .iter()
        .filter(|&&x| (x + shift) % c.size < shift)
        .count();
    for _ in 0..wrapped {
        letters.extend((1..strands as i32).map(|j| -j));
    }
    let writhe = letters.iter().map(|&l| i64::from(l.signum())).sum();
    BraidWord {
        letters,
        strands,
        writhe,
    }
}

/// Rational self-linking number of the closure of β∘δ^{q/p} on k strands.
pub fn sl_from_braid(letters: &[i32], k: usize, p: usize, q: usize) -> Q {
    let w: i64 = letters.iter().map(|&l| i64::from(l.signum())).sum();
    let (k, p, q) = (k as i64, p as i64, q as i64);
    qi(w) + Q::new(q * k * k - q * k - k, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn core_is_trivial_one_braid() {
        for (p, qq) in [(2, 1), (5, 2), (7, 3)] {
            let b = braid_word(&GridDiagram::core(p, qq).unwrap());
            assert_eq!((b.strands, b.writhe), (1, 0));
            assert!(b.letters.is_empty());
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(sl_from_braid(&[], 1, 5, 2), q(-1, 5));
        for k in 1..5 {
            assert_eq!(sl_from_braid(&[], k, 2, 1), q((k * k) as i64 - 2 * k as i64, 2));
        }
        assert_eq!(sl_from_braid(&[1], 2, 3, 1), q(1, 1));
    }

    #[test]
    fn self_linking_agrees_with_front() {
        use crate::corpus::random_corpus;
        use crate::legendrian::classical::classical_invariants;
        for d in random_corpus(12, 150, 5, 3) {
            let b = braid_word(&d);
            let sl = classical_invariants(&d).sl;
            assert_eq!(sl_from_braid(&b.letters, b.strands, d.p, d.q), sl, "{d:?}");
        }
    }

    #[test]
    fn positive_markov_adds_p_strands() {
        use crate::legendrian::moves::{stabilize, Ordinal, StabType};
        for (p, qq) in [(2, 1), (3, 2), (5, 3)] {
            let d = GridDiagram::core(p, qq).unwrap();
            let e = stabilize(&d, StabType::w(Ordinal::NE), 0).unwrap();
            let b = braid_word(&e);
            assert_eq!(b.strands, 1 + p);
            assert_eq!(sl_from_braid(&b.letters, b.strands, p, qq), q(-1, p as i64));
        }
    }
}
