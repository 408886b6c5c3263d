use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::context::{same_context, VarContext};
use crate::error::{Error, Result};

/// A monomial with sparse exponents over a fixed variable context.
/// Stored exponents are strictly positive; the degree is cached.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Monomial {
    ctx: Arc<VarContext>,
    exps: BTreeMap<usize, u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Monomial {
            ctx: Arc::clone(ctx),
            exps: BTreeMap::new(),
            degree: 0,
        }
    }

    pub fn var(ctx: &Arc<VarContext>, pos: usize) -> Result<Self> {
        Self::from_exponents(ctx, [(pos, 1)])
    }

    pub fn from_exponents(
        ctx: &Arc<VarContext>,
        exps: impl IntoIterator<Item = (usize, u32)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (pos, e) in exps {
            if pos >= ctx.len() {
                return Err(Error::UnknownVariable(pos));
            }
            if e > 0 {
                *map.entry(pos).or_insert(0) += e;
            }
        }
        let degree = map.values().sum();
        Ok(Monomial {
            ctx: Arc::clone(ctx),
            exps: map,
            degree,
        })
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, pos: usize) -> u32 {
        self.exps.get(&pos).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|(&p, &e)| (p, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.keys().copied()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    pub fn same_context(&self, other: &Monomial) -> bool {
        same_context(&self.ctx, &other.ctx)
    }

    fn check_context(&self, other: &Monomial) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        let mut exps = self.exps.clone();
        for (&p, &e) in &other.exps {
            *exps.entry(p).or_insert(0) += e;
        }
        Ok(Monomial {
            ctx: Arc::clone(&self.ctx),
            exps,
            degree: self.degree + other.degree,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.same_context(other)
            && self
                .exps
                .iter()
                .all(|(&p, &e)| e <= other.exponent(p))
    }

    /// `self / other`, requiring exact divisibility.
    pub fn div_exact(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        if !other.divides(self) {
            return Err(Error::Diagnostic(format!(
                "{other} does not divide {self}"
            )));
        }
        let mut exps = BTreeMap::new();
        for (&p, &e) in &self.exps {
            let d = e - other.exponent(p);
            if d > 0 {
                exps.insert(p, d);
            }
        }
        Ok(Monomial {
            ctx: Arc::clone(&self.ctx),
            exps,
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        let mut exps = self.exps.clone();
        for (&p, &e) in &other.exps {
            let slot = exps.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        let degree = exps.values().sum();
        Ok(Monomial {
            ctx: Arc::clone(&self.ctx),
            exps,
            degree,
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        let mut exps = BTreeMap::new();
        for (&p, &e) in &self.exps {
            let m = e.min(other.exponent(p));
            if m > 0 {
                exps.insert(p, m);
            }
        }
        let degree = exps.values().sum();
        Ok(Monomial {
            ctx: Arc::clone(&self.ctx),
            exps,
            degree,
        })
    }

    /// Ambient lex comparison: walk positions from the biggest variable down,
    /// the first position with a larger exponent wins.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        debug_assert!(self.same_context(other));
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(&pa, &ea)), Some(&(&pb, &eb))) => match pa.cmp(&pb) {
                    // the side whose next exponent sits at an earlier (bigger)
                    // variable is lex-greater
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {
                                a.next();
                                b.next();
                            }
                            ord => return ord,
                        }
                    }
                },
            }
        }
    }

    /// colon of generators: `lcm(a, b) / b`.
    pub fn colon(a: &Monomial, b: &Monomial) -> Result<Monomial> {
        a.lcm(b)?.div_exact(b)
    }

    /// The single variable position, if this monomial is one variable.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree == 1 {
            self.exps.keys().next().copied()
        } else {
            None
        }
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // context deliberately excluded: equal monomials share a context
        self.exps.hash(state);
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ctx.name(p))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx3() -> Arc<VarContext> {
        VarContext::numbered(3)
    }

    fn m(ctx: &Arc<VarContext>, exps: &[(usize, u32)]) -> Monomial {
        Monomial::from_exponents(ctx, exps.iter().copied()).unwrap()
    }

    #[test]
    fn colon_of_generators() {
        let c = ctx3();
        let x1x2 = m(&c, &[(0, 1), (1, 1)]);
        let x1x3 = m(&c, &[(0, 1), (2, 1)]);
        // (x1x2, x1x3) -> x2
        assert_eq!(
            Monomial::colon(&x1x2, &x1x3).unwrap(),
            m(&c, &[(1, 1)])
        );
        // identity case
        assert!(Monomial::colon(&x1x2, &x1x2).unwrap().is_one());
    }

    #[test]
    fn colon_coprime_returns_first() {
        let c = VarContext::new(["a", "b", "c", "d"]).unwrap();
        let a2b = m(&c, &[(0, 2), (1, 1)]);
        let cd2 = m(&c, &[(2, 1), (3, 2)]);
        assert_eq!(Monomial::colon(&a2b, &cd2).unwrap(), a2b);
    }

    #[test]
    fn colon_times_divisor_is_lcm() {
        let c = ctx3();
        let a = m(&c, &[(0, 2), (1, 1)]);
        let b = m(&c, &[(1, 2), (2, 1)]);
        let colon = Monomial::colon(&a, &b).unwrap();
        assert_eq!(colon.mul(&b).unwrap(), a.lcm(&b).unwrap());
    }

    #[test]
    fn lex_order_examples() {
        let c = ctx3();
        let x1x2 = m(&c, &[(0, 1), (1, 1)]);
        let x1x3 = m(&c, &[(0, 1), (2, 1)]);
        let x1sq = m(&c, &[(0, 2)]);
        let x2sq = m(&c, &[(1, 2)]);
        assert_eq!(x1x2.cmp_lex(&x1x3), Ordering::Greater);
        assert_eq!(x1sq.cmp_lex(&x1x2), Ordering::Greater);
        assert_eq!(x2sq.cmp_lex(&x1x3), Ordering::Less);
        assert_eq!(x1x2.cmp_lex(&x1x2), Ordering::Equal);
        // a^2*b >lex a*b*c: exponent of a decides
        let c4 = VarContext::new(["a", "b", "c"]).unwrap();
        let a2b = m(&c4, &[(0, 2), (1, 1)]);
        let abc = m(&c4, &[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(a2b.cmp_lex(&abc), Ordering::Greater);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let c1 = ctx3();
        let c2 = VarContext::new(["y1", "y2"]).unwrap();
        let a = m(&c1, &[(0, 1)]);
        let b = Monomial::var(&c2, 1).unwrap();
        assert_eq!(Monomial::colon(&a, &b), Err(Error::ContextMismatch));
    }
}
