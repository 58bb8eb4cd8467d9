use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// A finite linear combination of basis labels. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVector<L: Ord> {
    entries: BTreeMap<L, Scalar>,
}

impl<L: Ord> Default for SparseVector<L> {
    fn default() -> Self {
        SparseVector {
            entries: BTreeMap::new(),
        }
    }
}

impl<L: Ord + fmt::Debug> fmt::Debug for SparseVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

impl<L: Ord + Clone> SparseVector<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(label: L) -> Self {
        Self::term(label, Scalar::one())
    }

    pub fn term(label: L, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(label, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (L, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (l, c) in terms {
            v.add_term(l, c);
        }
        v
    }

    pub fn add_term(&mut self, label: L, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(label) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, label: &L) -> Scalar {
        self.entries.get(label).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn contains_label(&self, label: &L) -> bool {
        self.entries.contains_key(label)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Scalar)> {
        self.entries.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.entries.keys()
    }

    pub fn leading(&self) -> Option<(&L, &Scalar)> {
        self.entries.iter().next()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-Scalar::one(), other);
        out
    }

    pub fn map_labels<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> M) -> SparseVector<M> {
        SparseVector::from_terms(self.entries.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// Linear extension of `f` from basis labels to the whole vector.
    pub fn flat_map<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> SparseVector<M>) -> SparseVector<M> {
        let mut out = SparseVector::zero();
        for (k, v) in &self.entries {
            out.axpy(v, &f(k));
        }
        out
    }

    /// `Σ self[l] * other[l]`
    pub fn pair(&self, other: &Self) -> Scalar {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .entries
            .iter()
            .filter_map(|(k, v)| big.entries.get(k).map(|w| v * w))
            .sum()
    }

    pub fn into_entries(self) -> BTreeMap<L, Scalar> {
        self.entries
    }
}

impl<L: Ord + Clone> FromIterator<(L, Scalar)> for SparseVector<L> {
    fn from_iter<I: IntoIterator<Item = (L, Scalar)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// Tensor product of two vectors, labelled by pairs.
pub fn tensor<A: Ord + Clone, B: Ord + Clone>(a: &SparseVector<A>, b: &SparseVector<B>) -> SparseVector<(A, B)> {
    let mut out = SparseVector::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            out.add_term((x.clone(), y.clone()), c * d);
        }
    }
    out
}
