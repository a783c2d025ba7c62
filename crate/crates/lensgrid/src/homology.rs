//! Homology of the hat, tilde and U=1 complexes over F2.
//!
//! The hat complex kills the U of the lowest row of each component. Fixing
//! Spin^c, collapsed Alexander grading A and Maslov grading leaves a finite
//! block spanned by U^e·x with |e| = A(x) − A, so each block is reduced by
//! dense bitset elimination.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{ChainElement, Complex};
use crate::rational::{qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the chain is not a cycle")]
    NotACycle,
    #[error("generator is not in this diagram's complex")]
    UnknownGenerator,
}

/// Row echelon form over F2 with optional bookkeeping of combinations.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
    track: usize,
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

fn lowest(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

pub fn bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

pub fn set(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

impl Echelon {
    /// `track` is the number of input vectors whose combinations are recorded.
    pub fn new(track: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_with(&self, v: &mut [u64], combo: &mut [u64]) {
        for (p, row, c) in &self.rows {
            if bit(v, *p) {
                xor(v, row);
                xor(combo, c);
            }
        }
    }

    pub fn reduce(&self, v: &mut [u64]) {
        let mut scratch = vec![0; words(self.track)];
        self.reduce_with(v, &mut scratch);
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        lowest(&w).is_none()
    }

    /// Inserts v; on dependence returns the combination of earlier tagged
    /// inputs (xor `tag`) that sums to v.
    pub fn insert(&mut self, v: &[u64], tag: Option<usize>) -> Result<(), Vec<u64>> {
        let mut w = v.to_vec();
        let mut combo = vec![0; words(self.track)];
        if let Some(t) = tag {
            set(&mut combo, t);
        }
        self.reduce_with(&mut w, &mut combo);
        match lowest(&w) {
            Some(p) => {
                self.rows.push((p, w, combo));
                Ok(())
            }
            None => Err(combo),
        }
    }
}

/// Chain groups of one flavor, split into finite graded blocks.
pub struct Graded<'a> {
    pub complex: &'a Complex,
    /// variables that survive (not set to zero)
    pub free: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockKey {
    pub spinc: usize,
    pub alexander: Q,
    /// M̃ of the lift, U lowers it by 2p
    pub cover_maslov: i64,
}

#[derive(Debug, Clone)]
pub struct HatBlock {
    pub spinc: usize,
    pub alexander: Q,
    pub maslov: Q,
    pub anchored: bool,
    pub rank: usize,
    pub representatives: Vec<ChainElement>,
}

fn monomials(free: &[usize], n: usize, k: u32) -> Vec<Vec<u32>> {
    fn go(free: &[usize], k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match free.split_first() {
            None => {
                if k == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&v, rest)) => {
                if rest.is_empty() {
                    cur[v] = k;
                    out.push(cur.clone());
                    cur[v] = 0;
                    return;
                }
                for j in 0..=k {
                    cur[v] = j;
                    go(rest, k - j, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    if free.is_empty() {
        if k == 0 {
            out.push(vec![0; n]);
        }
        return out;
    }
    go(free, k, &mut vec![0; n], &mut out);
    out
}

/// Lowest row of each component.
pub fn hat_killed(c: &Complex) -> Vec<bool> {
    let d = &c.diagram;
    let mut killed = vec![false; d.n];
    for k in 0..d.component_count() {
        killed[d.rows_of(k)[0]] = true;
    }
    killed
}

impl<'a> Graded<'a> {
    pub fn hat(c: &'a Complex) -> Self {
        Graded {
            complex: c,
            free: hat_killed(c).iter().map(|k| !k).collect(),
        }
    }

    pub fn tilde(c: &'a Complex) -> Self {
        Graded {
            complex: c,
            free: vec![false; c.vars()],
        }
    }

    fn free_vars(&self) -> Vec<usize> {
        (0..self.free.len()).filter(|&i| self.free[i]).collect()
    }

    fn p(&self) -> i64 {
        self.complex.diagram.p as i64
    }

    pub fn key_of(&self, i: usize, e: &[u32]) -> BlockKey {
        let k: u32 = e.iter().sum();
        let c = self.complex;
        BlockKey {
            spinc: c.spinc[i],
            alexander: c.alexander_total(i) - qi(k as i64),
            cover_maslov: c.cover_maslov[i] - 2 * self.p() * k as i64,
        }
    }

    pub fn basis(&self, key: &BlockKey) -> Vec<(usize, Vec<u32>)> {
        let c = self.complex;
        let free = self.free_vars();
        let mut out = Vec::new();
        for i in 0..c.len() {
            if c.spinc[i] != key.spinc {
                continue;
            }
            let gap = c.alexander_total(i) - key.alexander;
            if !gap.is_integer() || gap < qi(0) {
                continue;
            }
            let k = gap.to_integer();
            if c.cover_maslov[i] - 2 * self.p() * k != key.cover_maslov {
                continue;
            }
            for e in monomials(&free, c.vars(), k as u32) {
                out.push((i, e));
            }
        }
        out
    }

    /// Differential of one basis element, with killed variables dropped.
    pub fn d(&self, i: usize, e: &[u32]) -> Vec<(usize, Vec<u32>)> {
        let mut acc: BTreeMap<(usize, Vec<u32>), bool> = BTreeMap::new();
        for (j, f) in &self.complex.boundary[i] {
            if f.iter().zip(&self.free).any(|(&m, &fr)| m > 0 && !fr) {
                continue;
            }
            let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
            *acc.entry((*j, g)).or_insert(false) ^= true;
        }
        acc.into_iter().filter(|(_, v)| *v).map(|(k, _)| k).collect()
    }

    fn vector(&self, terms: &[(usize, Vec<u32>)], index: &HashMap<(usize, Vec<u32>), usize>, dim: usize) -> Vec<u64> {
        let mut v = vec![0; words(dim)];
        for t in terms {
            set(&mut v, index[t]);
        }
        v
    }

    /// Echelon form of the image of ∂ into `key`.
    fn image_into(&self, key: &BlockKey, index: &HashMap<(usize, Vec<u32>), usize>, dim: usize) -> Echelon {
        let above = BlockKey {
            cover_maslov: key.cover_maslov + self.p(),
            ..*key
        };
        let mut ech = Echelon::new(0);
        for (i, e) in self.basis(&above) {
            let _ = ech.insert(&self.vector(&self.d(i, &e), index, dim), None);
        }
        ech
    }

    /// Rank of homology at `key` and representative cycles.
    pub fn block(&self, key: &BlockKey) -> (usize, Vec<ChainElement>) {
        let basis = self.basis(key);
        let dim = basis.len();
        if dim == 0 {
            return (0, Vec::new());
        }
        let index: HashMap<(usize, Vec<u32>), usize> =
            basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        let below = BlockKey {
            cover_maslov: key.cover_maslov - self.p(),
            ..*key
        };
        let low_basis = self.basis(&below);
        let low_dim = low_basis.len();
        let low_index: HashMap<(usize, Vec<u32>), usize> =
            low_basis.into_iter().enumerate().map(|(k, b)| (b, k)).collect();

        let mut out_ech = Echelon::new(dim);
        let mut kernel = Vec::new();
        for (t, (i, e)) in basis.iter().enumerate() {
            let img = self.vector(&self.d(*i, e), &low_index, low_dim);
            if let Err(combo) = out_ech.insert(&img, Some(t)) {
                kernel.push(combo);
            }
        }
        let mut image = self.image_into(key, &index, dim);
        let mut reps = Vec::new();
        for z in kernel {
            if image.insert(&z, None).is_ok() {
                let mut ch = ChainElement::zero();
                for (t, b) in basis.iter().enumerate() {
                    if bit(&z, t) {
                        ch.toggle(self.complex.gens[b.0].clone(), b.1.clone());
                    }
                }
                reps.push(ch);
            }
        }
        (reps.len(), reps)
    }

    /// Every block that can carry homology.
    pub fn keys(&self) -> Vec<BlockKey> {
        let c = self.complex;
        let mut range: BTreeMap<usize, (Q, Q)> = BTreeMap::new();
        for i in 0..c.len() {
            let a = c.alexander_total(i);
            let r = range.entry(c.spinc[i]).or_insert((a, a));
            r.0 = r.0.min(a);
            r.1 = r.1.max(a);
        }
        let free_any = self.free.iter().any(|&f| f);
        let mut keys = std::collections::BTreeSet::new();
        for i in 0..c.len() {
            let lo = range[&c.spinc[i]].0;
            let top = if free_any {
                (c.alexander_total(i) - lo).to_integer()
            } else {
                0
            };
            for k in 0..=top {
                let e = vec![0u32; c.vars()];
                let mut key = self.key_of(i, &e);
                key.alexander -= qi(k);
                key.cover_maslov -= 2 * self.p() * k;
                keys.insert(key);
            }
        }
        keys.into_iter().collect()
    }

    pub fn all_blocks(&self) -> Vec<HatBlock> {
        let c = self.complex;
        self.keys()
            .par_iter()
            .filter_map(|key| {
                let (rank, representatives) = self.block(key);
                if rank == 0 {
                    return None;
                }
                let (i, e) = &self.basis(key)[0];
                let k: u32 = e.iter().sum();
                let (m, anchored) = c.maslov(*i);
                Some(HatBlock {
                    spinc: key.spinc,
                    alexander: key.alexander,
                    maslov: m - qi(2 * k as i64),
                    anchored,
                    rank,
                    representatives,
                })
            })
            .collect()
    }

    /// Splits a chain into graded pieces, dropping terms with killed
    /// variables.
    pub fn split(&self, chain: &ChainElement) -> Result<BTreeMap<BlockKey, Vec<(usize, Vec<u32>)>>, HomologyError> {
        let mut parts: BTreeMap<BlockKey, Vec<(usize, Vec<u32>)>> = BTreeMap::new();
        for (x, e) in &chain.terms {
            if e.iter().zip(&self.free).any(|(&m, &fr)| m > 0 && !fr) {
                continue;
            }
            let i = self.complex.index_of(x).ok_or(HomologyError::UnknownGenerator)?;
            parts.entry(self.key_of(i, e)).or_default().push((i, e.clone()));
        }
        Ok(parts)
    }

    /// Whether the chain is a cycle that is not a boundary in this flavor.
    pub fn is_nonzero(&self, chain: &ChainElement) -> Result<bool, HomologyError> {
        let parts = self.split(chain)?;
        let mut nonzero = false;
        for (key, terms) in parts {
            let mut dsum: BTreeMap<(usize, Vec<u32>), bool> = BTreeMap::new();
            for (i, e) in &terms {
                for t in self.d(*i, e) {
                    *dsum.entry(t).or_insert(false) ^= true;
                }
            }
            if dsum.values().any(|&v| v) {
                return Err(HomologyError::NotACycle);
            }
            let basis = self.basis(&key);
            let index: HashMap<(usize, Vec<u32>), usize> =
                basis.into_iter().enumerate().map(|(k, b)| (b, k)).collect();
            let dim = index.len();
            let v = self.vector(&terms, &index, dim);
            if !self.image_into(&key, &index, dim).contains(&v) {
                nonzero = true;
            }
        }
        Ok(nonzero)
    }
}

pub fn homology_hat(c: &Complex) -> Vec<HatBlock> {
    let mut blocks = Graded::hat(c).all_blocks();
    blocks.sort_by(|a, b| {
        (a.spinc, a.alexander, a.maslov).cmp(&(b.spinc, b.alexander, b.maslov))
    });
    blocks
}

pub fn hat_rank(c: &Complex) -> usize {
    homology_hat(c).iter().map(|b| b.rank).sum()
}

/// Blocks of one Spin^c class and collapsed Alexander grading.
pub fn homology_hat_block(c: &Complex, spinc: usize, alexander: Q) -> Vec<HatBlock> {
    homology_hat(c)
        .into_iter()
        .filter(|b| b.spinc == spinc && b.alexander == alexander)
        .collect()
}

pub fn tilde_rank(c: &Complex) -> usize {
    Graded::tilde(c).all_blocks().iter().map(|b| b.rank).sum()
}

pub fn class_is_nonzero_hat(c: &Complex, cycle: &ChainElement) -> Result<bool, HomologyError> {
    Graded::hat(c).is_nonzero(cycle)
}

/// Nonvanishing in the complex with every U set to 1.
pub fn u_unified_nonvanishing(c: &Complex, cycle: &ChainElement) -> Result<bool, HomologyError> {
    for (x, _) in &cycle.terms {
        c.index_of(x).ok_or(HomologyError::UnknownGenerator)?;
    }
    if !c.boundary_minus(cycle).is_zero() {
        return Err(HomologyError::NotACycle);
    }
    let mut by_class: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let class_index: Vec<usize> = {
        let mut seen = HashMap::new();
        (0..c.len())
            .map(|i| {
                let s = c.spinc[i];
                let n = seen.entry(s).or_insert(0);
                *n += 1;
                *n - 1
            })
            .collect()
    };
    let class_size = |s: usize| c.spinc.iter().filter(|&&t| t == s).count();
    for (x, _) in &cycle.terms {
        let i = c.index_of(x).expect("checked");
        let s = c.spinc[i];
        let v = by_class
            .entry(s)
            .or_insert_with(|| vec![0; words(class_size(s))]);
        set(v, class_index[i]);
    }
    for (s, v) in by_class {
        if lowest(&v).is_none() {
            continue;
        }
        let dim = class_size(s);
        let mut ech = Echelon::new(0);
        for i in (0..c.len()).filter(|&i| c.spinc[i] == s) {
            let mut img = vec![0; words(dim)];
            for (j, _) in &c.boundary[i] {
                set(&mut img, class_index[*j]);
            }
            let _ = ech.insert(&img, None);
        }
        if !ech.contains(&v) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDiagram;

    #[test]
    fn echelon_rank_and_span() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[0b011], Some(0)).is_ok());
        assert!(e.insert(&[0b110], Some(1)).is_ok());
        let combo = e.insert(&[0b101], Some(2)).unwrap_err();
        assert_eq!(combo, vec![0b111]);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[0b101]));
        assert!(!e.contains(&[0b001]));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(&[0, 2], 3, 3).len(), 4);
        assert_eq!(monomials(&[], 3, 0).len(), 1);
        assert!(monomials(&[], 3, 1).is_empty());
    }

    #[test]
    fn simple_knots_have_rank_p() {
        for (p, q) in [(2, 1), (5, 2)] {
            for k in 1..p {
                let c = Complex::new(&GridDiagram::simple_knot(p, q, k).unwrap());
                assert_eq!(hat_rank(&c), p);
            }
        }
    }
}
