use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::scalar::Scalar;
use super::sparse::SparseVector;

/// A finite-dimensional subspace held as a reduced row-echelon basis.
///
/// Each row has leading coefficient 1 at its pivot (its smallest label), and no
/// other row has a nonzero entry at that pivot. Two subspaces are equal iff
/// their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<L: Ord> {
    rows: Vec<SparseVector<L>>,
}

impl<L: Ord> Default for Subspace<L> {
    fn default() -> Self {
        Subspace { rows: Vec::new() }
    }
}

impl<L: Ord + Clone> Subspace<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn spanned_by<'a>(vectors: impl IntoIterator<Item = &'a SparseVector<L>>) -> Self
    where
        L: 'a,
    {
        let mut s = Self::new();
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn of_labels(labels: impl IntoIterator<Item = L>) -> Self {
        let mut s = Self::new();
        for l in labels {
            s.insert(SparseVector::unit(l));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVector<L>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = &L> {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0)
    }

    fn row_with_pivot(&self, label: &L) -> Option<&SparseVector<L>> {
        self.rows
            .binary_search_by(|r| r.leading().expect("nonzero row").0.cmp(label))
            .ok()
            .map(|i| &self.rows[i])
    }

    /// Remainder of `v` modulo the subspace; zero iff `v` is contained in it.
    pub fn reduce(&self, v: &SparseVector<L>) -> SparseVector<L> {
        let mut out = v.clone();
        for row in &self.rows {
            let (pivot, _) = row.leading().expect("nonzero row");
            let c = out.get(pivot);
            if !c.is_zero() {
                out.axpy(&-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVector<L>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace<L>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVector<L>) -> bool {
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let pivot = pivot.clone();
        let r = r.scaled(&lead.inverse());
        for row in &mut self.rows {
            let c = row.get(&pivot);
            if !c.is_zero() {
                row.axpy(&-c, &r);
            }
        }
        let pos = self
            .rows
            .partition_point(|row| row.leading().expect("nonzero row").0 < &pivot);
        self.rows.insert(pos, r);
        true
    }

    pub fn sum(&self, other: &Subspace<L>) -> Subspace<L> {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVector<L>) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self
            .rows
            .iter()
            .map(|r| v.get(r.leading().expect("nonzero row").0))
            .collect();
        let mut check = v.clone();
        for (r, c) in self.rows.iter().zip(&coords) {
            check.axpy(&-c.clone(), r);
        }
        check.is_zero().then_some(coords)
    }

    pub fn has_pivot(&self, label: &L) -> bool {
        self.row_with_pivot(label).is_some()
    }
}

/// Row reduction that remembers how each reduced row was built from the inputs.
#[derive(Clone, Debug)]
pub struct Eliminator<L: Ord> {
    rows: Vec<(SparseVector<L>, SparseVector<usize>)>,
    fed: usize,
    kernel: Vec<SparseVector<usize>>,
}

impl<L: Ord + Clone> Default for Eliminator<L> {
    fn default() -> Self {
        Eliminator {
            rows: Vec::new(),
            fed: 0,
            kernel: Vec::new(),
        }
    }
}

impl<L: Ord + Clone> Eliminator<L> {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce_tracked(&self, v: &SparseVector<L>, combo: SparseVector<usize>) -> (SparseVector<L>, SparseVector<usize>) {
        let mut out = v.clone();
        let mut combo = combo;
        for (row, rc) in &self.rows {
            let (pivot, _) = row.leading().expect("nonzero row");
            let c = out.get(pivot);
            if !c.is_zero() {
                let neg = -c;
                out.axpy(&neg, row);
                combo.axpy(&neg, rc);
            }
        }
        (out, combo)
    }

    /// Feeds the next input vector (indexed in order of feeding).
    pub fn push(&mut self, v: &SparseVector<L>) -> bool {
        let idx = self.fed;
        self.fed += 1;
        let (r, combo) = self.reduce_tracked(v, SparseVector::unit(idx));
        match r.leading() {
            None => {
                self.kernel.push(combo);
                false
            }
            Some((pivot, lead)) => {
                let inv = lead.inverse();
                let pivot = pivot.clone();
                let r = r.scaled(&inv);
                let combo = combo.scaled(&inv);
                for (row, rc) in &mut self.rows {
                    let c = row.get(&pivot);
                    if !c.is_zero() {
                        let neg = -c;
                        row.axpy(&neg, &r);
                        rc.axpy(&neg, &combo);
                    }
                }
                let pos = self
                    .rows
                    .partition_point(|(row, _)| row.leading().expect("nonzero row").0 < &pivot);
                self.rows.insert(pos, (r, combo));
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.fed
    }

    /// Coefficients `c` with `v = Σ c_i input_i`, if `v` is in the span.
    pub fn express(&self, v: &SparseVector<L>) -> Option<Vec<Scalar>> {
        let (r, combo) = self.reduce_tracked(v, SparseVector::zero());
        if !r.is_zero() {
            return None;
        }
        Some((0..self.fed).map(|i| -combo.get(&i)).collect())
    }

    /// Basis of the relations `Σ c_i input_i = 0`.
    pub fn kernel(&self) -> &[SparseVector<usize>] {
        &self.kernel
    }

    pub fn subspace(&self) -> Subspace<L> {
        Subspace {
            rows: self.rows.iter().map(|(r, _)| r.clone()).collect(),
        }
    }
}

pub fn solve_membership<L: Ord + Clone>(v: &SparseVector<L>, generators: &[SparseVector<L>]) -> Option<Vec<Scalar>> {
    let mut e = Eliminator::new();
    for g in generators {
        e.push(g);
    }
    e.express(v)
}

pub fn rank<L: Ord + Clone>(generators: &[SparseVector<L>]) -> usize {
    Subspace::spanned_by(generators).dim()
}

pub fn codimension_of_span<L: Ord + Clone + std::fmt::Debug>(
    generators: &[SparseVector<L>],
    ambient: &BTreeSet<L>,
) -> Result<usize> {
    for g in generators {
        if let Some(l) = g.labels().find(|l| !ambient.contains(l)) {
            return Err(Error::LabelOutsideBasis(format!("{l:?}")));
        }
    }
    Ok(ambient.len() - rank(generators))
}

/// Basis of `{c : Σ c_i columns_i = 0}` as dense coefficient vectors.
pub fn kernel<L: Ord + Clone>(columns: &[SparseVector<L>]) -> Vec<Vec<Scalar>> {
    let mut e = Eliminator::new();
    for c in columns {
        e.push(c);
    }
    e.kernel()
        .iter()
        .map(|k| (0..columns.len()).map(|i| k.get(&i)).collect())
        .collect()
}

/// Intersection of two subspaces.
pub fn intersect<L: Ord + Clone>(a: &Subspace<L>, b: &Subspace<L>) -> Subspace<L> {
    // relations Σ x_i a_i - Σ y_j b_j = 0 give the common vectors Σ x_i a_i
    let mut cols: Vec<SparseVector<L>> = a.basis().to_vec();
    cols.extend(b.basis().iter().map(|v| v.scaled(&-Scalar::one())));
    let mut out = Subspace::new();
    for rel in kernel(&cols) {
        let mut v = SparseVector::zero();
        for (i, c) in rel.iter().take(a.dim()).enumerate() {
            v.axpy(c, &a.basis()[i]);
        }
        out.insert(v);
    }
    out
}
