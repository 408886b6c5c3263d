use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::context::{same_context, VarContext};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A monomial ideal, kept in canonical form: the unique minimal generating
/// set, sorted descending by ambient lex, no duplicates. The zero ideal is
/// the empty generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    ctx: Arc<VarContext>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        MonomialIdeal {
            ctx: Arc::clone(ctx),
            gens: Vec::new(),
        }
    }

    /// Keep exactly the divisibility-minimal elements, deduplicated and
    /// canonically sorted.
    pub fn minimalize(ctx: &Arc<VarContext>, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut list: Vec<Monomial> = Vec::new();
        for g in gens {
            if !same_context(g.context(), ctx) {
                return Err(Error::ContextMismatch);
            }
            list.push(g);
        }
        list.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp_lex(b)));
        list.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in list {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| b.cmp_lex(a));
        Ok(MonomialIdeal {
            ctx: Arc::clone(ctx),
            gens: minimal,
        })
    }

    pub fn from_gens(gens: Vec<Monomial>) -> Result<Self> {
        let ctx = gens
            .first()
            .map(|g| Arc::clone(g.context()))
            .ok_or(Error::ZeroIdeal)?;
        Self::minimalize(&ctx, gens)
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Ideal membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Containment as ideals: every generator of `self` lies in `other`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_quadratic(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 2)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn is_equigenerated(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.gens.iter().flat_map(|g| g.support()).collect()
    }

    /// Sum of ideals (union of generators, minimalized).
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Self::minimalize(
            &self.ctx,
            self.gens.iter().chain(other.gens.iter()).cloned(),
        )
    }

    /// Product of ideals: minimalize all pairwise products.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b)?);
            }
        }
        Self::minimalize(&self.ctx, prods)
    }

    /// `k`-fold product; `power(0)` is the unit ideal.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal {
            ctx: Arc::clone(&self.ctx),
            gens: vec![Monomial::one(&self.ctx)],
        };
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Multiply every generator by a monomial.
    pub fn scale(&self, m: &Monomial) -> Result<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul(m))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(&self.ctx, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Records how an ideal was polarized: which copies exist per variable and
/// how target positions map back to source positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationMap {
    source: Arc<VarContext>,
    target: Arc<VarContext>,
    /// fan-out per source position (maximum exponent over the generators)
    fanout: Vec<u32>,
    /// target position -> (source position, copy index starting at 1)
    back: Vec<(usize, u32)>,
    /// source position -> first target position of its copy block
    forward: Vec<Option<usize>>,
}

impl PolarizationMap {
    pub fn source(&self) -> &Arc<VarContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarContext> {
        &self.target
    }

    pub fn fanout(&self) -> &[u32] {
        &self.fanout
    }

    /// Source variable owning a target position.
    pub fn owner(&self, target_pos: usize) -> usize {
        self.back[target_pos].0
    }

    /// Target position of copy `j` (1-based) of source variable `pos`.
    pub fn copy(&self, pos: usize, j: u32) -> Option<usize> {
        let first = self.forward[pos]?;
        (j >= 1 && j <= self.fanout[pos]).then(|| first + (j - 1) as usize)
    }

    /// Substitute each copy back to its source variable.
    pub fn depolarize_monomial(&self, m: &Monomial) -> Result<Monomial> {
        if !same_context(m.context(), &self.target) {
            return Err(Error::ContextMismatch);
        }
        let exps: Vec<(usize, u32)> = m
            .exponents()
            .map(|(p, e)| (self.back[p].0, e))
            .collect();
        Monomial::from_exponents(&self.source, exps)
    }

    pub fn depolarize(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        let gens = ideal
            .gens()
            .iter()
            .map(|g| self.depolarize_monomial(g))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(&self.source, gens)
    }
}

/// Polarize: replace `x^a` by a product of `a` distinct copies `x_1 ... x_a`.
/// Copies are named `<base>_<copy>` and ordered by source position, then copy.
pub fn polarize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, PolarizationMap)> {
    let src = ideal.context();
    let n = src.len();
    let mut fanout = vec![0u32; n];
    for g in ideal.gens() {
        for (p, e) in g.exponents() {
            fanout[p] = fanout[p].max(e);
        }
    }
    let mut names = Vec::new();
    let mut back = Vec::new();
    let mut forward = vec![None; n];
    for p in 0..n {
        if fanout[p] > 0 {
            forward[p] = Some(names.len());
            for j in 1..=fanout[p] {
                names.push(format!("{}_{}", src.name(p), j));
                back.push((p, j));
            }
        }
    }
    let target = VarContext::new(names)?;
    let map = PolarizationMap {
        source: Arc::clone(src),
        target: Arc::clone(&target),
        fanout,
        back,
        forward,
    };
    let mut polarized = Vec::with_capacity(ideal.num_gens());
    for g in ideal.gens() {
        let mut exps = Vec::new();
        for (p, e) in g.exponents() {
            let first = map.forward[p].expect("support variable has copies");
            for j in 0..e as usize {
                exps.push((first + j, 1));
            }
        }
        polarized.push(Monomial::from_exponents(&target, exps)?);
    }
    let polarized = MonomialIdeal::minimalize(&target, polarized)?;
    Ok((polarized, map))
}

/// Union of generator supports, as positions.
pub fn support(ideal: &MonomialIdeal) -> BTreeSet<usize> {
    ideal.support()
}

/// Compare two ideals' generator lists for a stable order (used in reports).
pub fn cmp_ideals(a: &MonomialIdeal, b: &MonomialIdeal) -> Ordering {
    let mut ia = a.gens().iter();
    let mut ib = b.gens().iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp_lex(y) {
                Ordering::Equal => continue,
                ord => return ord,
            },
        }
    }
}

/// Exponent-map view used by the CLI text format.
pub fn exponent_rows(ideal: &MonomialIdeal) -> Vec<BTreeMap<usize, u32>> {
    ideal
        .gens()
        .iter()
        .map(|g| g.exponents().collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<VarContext> {
        VarContext::numbered(n)
    }

    fn m(c: &Arc<VarContext>, exps: &[(usize, u32)]) -> Monomial {
        Monomial::from_exponents(c, exps.iter().copied()).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        let c = ctx(3);
        let i = MonomialIdeal::minimalize(
            &c,
            vec![m(&c, &[(0, 1), (1, 1)]), m(&c, &[(0, 1), (1, 1), (2, 1)])],
        )
        .unwrap();
        assert_eq!(i.gens(), &[m(&c, &[(0, 1), (1, 1)])]);
    }

    #[test]
    fn minimalize_keeps_antichain() {
        let c = VarContext::new(["a", "b", "c", "d"]).unwrap();
        let gens = vec![
            m(&c, &[(0, 2), (1, 1)]),
            m(&c, &[(0, 1), (1, 1), (2, 1)]),
            m(&c, &[(1, 1), (2, 1), (3, 1)]),
            m(&c, &[(2, 1), (3, 2)]),
        ];
        let i = MonomialIdeal::minimalize(&c, gens.clone()).unwrap();
        assert_eq!(i.num_gens(), 4);
        // canonical order is descending lex
        assert_eq!(i.gens()[0], gens[0]);
        assert_eq!(i.gens()[1], gens[1]);
        assert_eq!(i.gens()[2], gens[2]);
        assert_eq!(i.gens()[3], gens[3]);
    }

    #[test]
    fn minimalize_empty_gives_zero() {
        let c = ctx(2);
        let i = MonomialIdeal::minimalize(&c, Vec::new()).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn product_of_principal_ideals() {
        let c = ctx(2);
        let p = MonomialIdeal::minimalize(&c, vec![m(&c, &[(0, 1), (1, 1)])]).unwrap();
        let sq = p.product(&p).unwrap();
        assert_eq!(sq.gens(), &[m(&c, &[(0, 2), (1, 2)])]);
    }

    #[test]
    fn triangle_squared_matches_brute_force() {
        let c = ctx(3);
        let gens = vec![
            m(&c, &[(0, 1), (1, 1)]),
            m(&c, &[(0, 1), (2, 1)]),
            m(&c, &[(1, 1), (2, 1)]),
        ];
        let i = MonomialIdeal::minimalize(&c, gens.clone()).unwrap();
        let sq = i.power(2).unwrap();

        // brute force oracle: all pairwise products, manual divisibility filter
        let mut prods = Vec::new();
        for a in &gens {
            for b in &gens {
                let p = a.mul(b).unwrap();
                if !prods.contains(&p) {
                    prods.push(p);
                }
            }
        }
        let minimal: Vec<_> = prods
            .iter()
            .filter(|p| !prods.iter().any(|q| q != *p && q.divides(p)))
            .cloned()
            .collect();
        assert_eq!(sq.num_gens(), 6);
        assert_eq!(minimal.len(), 6);
        for g in sq.gens() {
            assert_eq!(g.degree(), 4);
            assert!(minimal.contains(g));
        }
    }

    #[test]
    fn prime_times_conca_herzog_has_8_gens() {
        let c = VarContext::new(["a", "b", "c", "d"]).unwrap();
        let i = MonomialIdeal::minimalize(
            &c,
            vec![
                m(&c, &[(0, 2), (1, 1)]),
                m(&c, &[(0, 1), (1, 1), (2, 1)]),
                m(&c, &[(1, 1), (2, 1), (3, 1)]),
                m(&c, &[(2, 1), (3, 2)]),
            ],
        )
        .unwrap();
        let p = MonomialIdeal::minimalize(&c, vec![m(&c, &[(1, 1)]), m(&c, &[(2, 1)])]).unwrap();
        let pi = p.product(&i).unwrap();
        assert_eq!(pi.num_gens(), 8);
        assert!(pi.gens().iter().all(|g| g.degree() == 4));
        // pairwise non-divisibility
        for a in pi.gens() {
            for b in pi.gens() {
                if a != b {
                    assert!(!a.divides(b));
                }
            }
        }
    }

    #[test]
    fn power_zero_is_unit() {
        let c = ctx(2);
        let i = MonomialIdeal::minimalize(&c, vec![m(&c, &[(0, 1)])]).unwrap();
        let unit = i.power(0).unwrap();
        assert_eq!(unit.num_gens(), 1);
        assert!(unit.gens()[0].is_one());
    }

    #[test]
    fn polarize_square() {
        let c = ctx(1);
        let i = MonomialIdeal::minimalize(&c, vec![m(&c, &[(0, 2)])]).unwrap();
        let (p, map) = polarize(&i).unwrap();
        assert_eq!(p.num_gens(), 1);
        assert!(p.is_squarefree());
        assert_eq!(map.target().names(), &["x1_1".to_string(), "x1_2".to_string()]);
        assert_eq!(map.depolarize(&p).unwrap(), i);
    }

    #[test]
    fn polarize_mixed() {
        let c = ctx(2);
        let i = MonomialIdeal::minimalize(
            &c,
            vec![m(&c, &[(0, 2)]), m(&c, &[(0, 1), (1, 1)])],
        )
        .unwrap();
        let (p, map) = polarize(&i).unwrap();
        assert_eq!(p.num_gens(), i.num_gens());
        assert!(p.is_squarefree());
        assert_eq!(
            map.target().names(),
            &["x1_1".to_string(), "x1_2".to_string(), "x2_1".to_string()]
        );
        assert_eq!(map.depolarize(&p).unwrap(), i);
    }

    #[test]
    fn support_examples() {
        let c = ctx(3);
        let i = MonomialIdeal::minimalize(
            &c,
            vec![m(&c, &[(0, 1), (1, 1)]), m(&c, &[(1, 2)])],
        )
        .unwrap();
        assert_eq!(i.support(), BTreeSet::from([0, 1]));
        assert!(MonomialIdeal::zero(&c).support().is_empty());
    }
}
