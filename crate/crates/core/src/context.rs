use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered list of variable labels. Position `i` holds the variable that
/// is `i`-th biggest in the ambient order, so position 0 is the largest
/// variable and lex comparisons read positions left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarContext {
    names: Vec<String>,
}

impl VarContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::BadContext);
            }
        }
        Ok(Arc::new(VarContext { names }))
    }

    /// Context `x1, x2, ..., xn`.
    pub fn numbered(n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| format!("x{i}"))).expect("numbered labels are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, pos: usize) -> &str {
        &self.names[pos]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// New context with the same labels reordered: position `p` of the result
    /// holds label `perm[p]` of `self`. `perm` must be a permutation.
    pub fn permuted(&self, perm: &[usize]) -> Result<Arc<Self>> {
        if perm.len() != self.len() {
            return Err(Error::NotAPermutation);
        }
        let mut seen = vec![false; self.len()];
        for &p in perm {
            if p >= self.len() || seen[p] {
                return Err(Error::NotAPermutation);
            }
            seen[p] = true;
        }
        Self::new(perm.iter().map(|&p| self.names[p].clone()))
    }

    /// New context with a fresh variable inserted at position 0. The label is
    /// derived from `base`, extended until it collides with nothing.
    pub fn extended_front(&self, base: &str) -> (Arc<Self>, String) {
        let mut label = base.to_string();
        while self.names.contains(&label) {
            label.push('_');
        }
        let mut names = Vec::with_capacity(self.len() + 1);
        names.push(label.clone());
        names.extend(self.names.iter().cloned());
        (
            VarContext::new(names).expect("extended label chosen fresh"),
            label,
        )
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

/// Contexts compare by content; `Arc` identity is only a fast path.
pub fn same_context(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
