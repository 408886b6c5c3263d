use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{from_edge_ideal, is_cochordal, ChordalityCertificate};
use crate::ideal::{polarize, MonomialIdeal};

/// Support bound for the homology oracle; restriction subsets are enumerated
/// over the support, so the cost is roughly 3^|supp|.
pub const MAX_ORACLE_SUPPORT: usize = 12;

/// Vertex bound for materializing a Stanley-Reisner complex.
pub const MAX_COMPLEX_VERTICES: usize = 16;

/// Graded Betti numbers indexed by (homological index, internal degree),
/// together with the field characteristic they were computed over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(u32, u32), u64>,
    pub characteristic: u32,
}

impl BettiTable {
    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Count of degree-`j` minimal generators according to the table.
    pub fn beta0(&self, j: u32) -> u64 {
        self.get(0, j)
    }
}

/// `d`-linearity: every nonzero entry sits on the strand `j = i + d`.
pub fn is_linear_from_betti(table: &BettiTable, d: u32) -> bool {
    table
        .entries
        .iter()
        .all(|(&(i, j), &rank)| rank == 0 || j == i + d)
}

/// A simplicial complex given by its facets (pairwise non-contained).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub num_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

fn squarefree_masks(ideal: &MonomialIdeal, positions: &[usize]) -> Result<Vec<u32>> {
    let index: BTreeMap<usize, usize> = positions
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let mut masks = Vec::with_capacity(ideal.num_gens());
    for g in ideal.gens() {
        if !g.is_squarefree() {
            return Err(Error::NotSquarefree(g.to_string()));
        }
        if g.is_one() {
            return Err(Error::Diagnostic("unit ideal has no Stanley-Reisner complex".into()));
        }
        let mut m = 0u32;
        for p in g.support() {
            m |= 1 << index[&p];
        }
        masks.push(m);
    }
    Ok(masks)
}

/// Upward-closed non-face table over subsets of `s` tracked vertices:
/// `nonface[F]` is true iff some generator divides the squarefree monomial
/// with support `F`.
fn nonface_table(gen_masks: &[u32], s: usize) -> Vec<bool> {
    let mut nonface = vec![false; 1usize << s];
    for &g in gen_masks {
        nonface[g as usize] = true;
    }
    for f in 1usize..(1 << s) {
        if nonface[f] {
            continue;
        }
        let mut bits = f;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            bits ^= b;
            if nonface[f ^ b] {
                nonface[f] = true;
                break;
            }
        }
    }
    nonface
}

/// Faces of a squarefree ideal's Stanley-Reisner complex, all of them,
/// over the full variable context.
pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let n = ideal.context().len();
    if n > MAX_COMPLEX_VERTICES {
        return Err(Error::SupportTooLarge {
            got: n,
            max: MAX_COMPLEX_VERTICES,
        });
    }
    let positions: Vec<usize> = (0..n).collect();
    let masks = squarefree_masks(ideal, &positions)?;
    let nonface = nonface_table(&masks, n);
    let mut facets: Vec<u32> = Vec::new();
    for f in (0usize..(1 << n)).rev() {
        if nonface[f] {
            continue;
        }
        let maximal = (0..n).all(|v| {
            let bit = 1usize << v;
            f & bit != 0 || nonface[f | bit]
        });
        if maximal {
            facets.push(f as u32);
        }
    }
    facets.sort_unstable();
    let facets = facets
        .into_iter()
        .map(|f| (0..n).filter(|&v| (f >> v) & 1 == 1).collect())
        .collect();
    Ok(SimplicialComplex {
        num_vertices: n,
        facets,
    })
}

/// Rank of a GF(2) matrix given as rows of bit blocks.
fn gf2_rank(rows: &mut [Vec<u64>]) -> usize {
    let mut rank = 0;
    let blocks = rows.first().map(|r| r.len()).unwrap_or(0);
    for blk in 0..blocks {
        for bit in 0..64 {
            let mut pivot = None;
            for r in rank..rows.len() {
                if (rows[r][blk] >> bit) & 1 == 1 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if (row[blk] >> bit) & 1 == 1 {
                    for b in 0..blocks {
                        row[b] ^= pivot_row[b];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Reduced homology ranks over GF(2) of the restriction of the complex to the
/// vertex subset `w` (a mask over the tracked vertices). Returns ranks by
/// dimension, index `d + 1` holding dimension `d` (so index 0 is dim -1).
fn restricted_homology(nonface: &[bool], w: u32, s: usize) -> Vec<usize> {
    // collect faces grouped by size; the empty set is a face of every
    // nonvoid complex (no generator is 1)
    let wsize = w.count_ones() as usize;
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); wsize + 1];
    let mut sub = w;
    loop {
        if !nonface[sub as usize] {
            by_size[sub.count_ones() as usize].push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & w;
    }
    for faces in &mut by_size {
        faces.sort_unstable();
    }
    // rank of each boundary map between consecutive sizes
    let mut bd_rank = vec![0usize; wsize + 2];
    for t in 1..=wsize {
        let (lower, upper) = (&by_size[t - 1], &by_size[t]);
        if lower.is_empty() || upper.is_empty() {
            continue;
        }
        let index: BTreeMap<u32, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let blocks = (lower.len() + 63) / 64;
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(upper.len());
        for &f in upper {
            let mut row = vec![0u64; blocks];
            let mut bits = f;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                bits ^= b;
                let col = index[&(f ^ b)];
                row[col / 64] ^= 1u64 << (col % 64);
            }
            rows.push(row);
        }
        bd_rank[t] = gf2_rank(&mut rows);
    }
    let _ = s;
    let mut out = vec![0usize; wsize + 1];
    for t in 0..=wsize {
        let n_t = by_size[t].len();
        let above = if t + 1 <= wsize { bd_rank[t + 1] } else { 0 };
        out[t] = n_t.saturating_sub(bd_rank[t] + above);
    }
    out
}

/// Graded Betti numbers of a squarefree monomial ideal via restriction
/// homology: `beta_{i,j}` sums the reduced homology rank in dimension
/// `j - i - 2` of the complex restricted to each vertex subset of size `j`.
/// Computed over GF(2); the characteristic is recorded in the table.
pub fn betti_oracle(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let supp: Vec<usize> = ideal.support().into_iter().collect();
    let s = supp.len();
    if s > MAX_ORACLE_SUPPORT {
        return Err(Error::SupportTooLarge {
            got: s,
            max: MAX_ORACLE_SUPPORT,
        });
    }
    let masks = squarefree_masks(ideal, &supp)?;
    let nonface = nonface_table(&masks, s);
    let mut entries: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for w in 1u32..(1 << s) {
        let j = w.count_ones();
        let ranks = restricted_homology(&nonface, w, s);
        for (idx, &rank) in ranks.iter().enumerate() {
            if rank == 0 {
                continue;
            }
            let d = idx as i64 - 1; // dimension
            let i = j as i64 - d - 2;
            if i >= 0 {
                *entries.entry((i as u32, j)).or_insert(0) += rank as u64;
            }
        }
    }
    Ok(BettiTable {
        entries,
        characteristic: 2,
    })
}

/// Linear resolution for quadratic ideals via polarization and cochordality
/// of the polarized edge graph. The certificate is a verified elimination
/// order of the complement (linear resolution) or a chordless cycle in the
/// complement (no linear resolution).
pub fn has_linear_resolution_quadratic(ideal: &MonomialIdeal) -> Result<ChordalityCertificate> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    for g in ideal.gens() {
        if g.degree() != 2 {
            return Err(Error::NotQuadratic(g.to_string()));
        }
    }
    let (polarized, _) = polarize(ideal)?;
    let graph = from_edge_ideal(&polarized)?;
    is_cochordal(&graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::graph::{to_edge_ideal, Graph};
    use crate::monomial::Monomial;
    use std::sync::Arc;

    fn m(c: &Arc<VarContext>, exps: &[(usize, u32)]) -> Monomial {
        Monomial::from_exponents(c, exps.iter().copied()).unwrap()
    }

    fn cycle_ideal(n: usize) -> MonomialIdeal {
        let ctx = VarContext::numbered(n);
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        to_edge_ideal(&Graph::from_edges(&ctx, &edges).unwrap()).unwrap()
    }

    #[test]
    fn single_edge_betti() {
        let ctx = VarContext::numbered(2);
        let i = MonomialIdeal::minimalize(&ctx, vec![m(&ctx, &[(0, 1), (1, 1)])]).unwrap();
        let t = betti_oracle(&i).unwrap();
        assert_eq!(t.get(0, 2), 1);
        assert_eq!(t.entries.len(), 1);
        assert!(is_linear_from_betti(&t, 2));
    }

    #[test]
    fn c5_fails_two_linearity() {
        let t = betti_oracle(&cycle_ideal(5)).unwrap();
        // full restriction is the pentagon boundary, reduced H_1 has rank 1
        assert!(t.get(2, 5) >= 1);
        assert!(!is_linear_from_betti(&t, 2));
    }

    #[test]
    fn c4_is_two_linear() {
        let t = betti_oracle(&cycle_ideal(4)).unwrap();
        assert!(is_linear_from_betti(&t, 2));
        assert_eq!(t.beta0(2), 4);
    }

    #[test]
    fn beta0_counts_generators() {
        let ctx = VarContext::new(["a", "b", "c", "d"]).unwrap();
        let i = MonomialIdeal::minimalize(
            &ctx,
            vec![
                m(&ctx, &[(0, 1), (1, 1)]),
                m(&ctx, &[(1, 1), (2, 1), (3, 1)]),
            ],
        )
        .unwrap();
        let t = betti_oracle(&i).unwrap();
        assert_eq!(t.beta0(2), 1);
        assert_eq!(t.beta0(3), 1);
    }

    #[test]
    fn froberg_examples() {
        assert!(has_linear_resolution_quadratic(&cycle_ideal(4))
            .unwrap()
            .is_chordal());
        match has_linear_resolution_quadratic(&cycle_ideal(5)).unwrap() {
            ChordalityCertificate::ChordlessCycle(c) => assert_eq!(c.len(), 5),
            _ => panic!("C5 edge ideal has no linear resolution"),
        }
        // principal square
        let ctx = VarContext::numbered(1);
        let i = MonomialIdeal::minimalize(&ctx, vec![m(&ctx, &[(0, 2)])]).unwrap();
        assert!(has_linear_resolution_quadratic(&i).unwrap().is_chordal());
    }

    #[test]
    fn stanley_reisner_examples() {
        // (x1*x2) on two vertices: two isolated points
        let ctx = VarContext::numbered(2);
        let i = MonomialIdeal::minimalize(&ctx, vec![m(&ctx, &[(0, 1), (1, 1)])]).unwrap();
        let sr = stanley_reisner(&i).unwrap();
        assert_eq!(sr.facets, vec![vec![0], vec![1]]);

        // zero ideal: full simplex
        let z = MonomialIdeal::zero(&VarContext::numbered(3));
        let sr = stanley_reisner(&z).unwrap();
        assert_eq!(sr.facets, vec![vec![0, 1, 2]]);

        // I(C5): independence complex, five edges forming a pentagon
        let sr = stanley_reisner(&cycle_ideal(5)).unwrap();
        assert_eq!(sr.facets.len(), 5);
        assert!(sr.facets.iter().all(|f| f.len() == 2));
    }
}
