use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseVector};
use crate::quiver::{Path, Quiver};

/// A vector of a [`StructuredAlgebra`], indexed by basis position.
pub type Vector = SparseVector<usize>;

/// A finite-dimensional algebra given by structure constants on a labelled
/// basis, with a complete system of orthogonal idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredAlgebra {
    labels: Vec<String>,
    /// `table[i][j] = b_i · b_j`
    table: Vec<Vec<Vector>>,
    idempotents: Vec<Vector>,
}

impl StructuredAlgebra {
    /// Builds and validates the algebra. Products missing from `products`
    /// are zero.
    pub fn new(
        labels: Vec<String>,
        products: BTreeMap<(usize, usize), Vector>,
        idempotents: Vec<Vector>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut table = vec![vec![Vector::zero(); n]; n];
        for ((i, j), v) in products {
            if i >= n || j >= n || v.labels().any(|&k| k >= n) {
                return Err(Error::InvalidAlgebra(format!("product ({i}, {j}) mentions an index outside the basis")));
            }
            table[i][j] = v;
        }
        let a = StructuredAlgebra {
            labels,
            table,
            idempotents,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.table[i][j], &Vector::unit(k));
                    let right = self.mul(&Vector::unit(i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for (a, e) in self.idempotents.iter().enumerate() {
            for (b, f) in self.idempotents.iter().enumerate() {
                let want = if a == b { e.clone() } else { Vector::zero() };
                if self.mul(e, f) != want {
                    return Err(Error::InvalidAlgebra(format!("idempotents {a} and {b} are not orthogonal idempotents")));
                }
            }
        }
        let one = self.unit();
        for i in 0..n {
            let b = Vector::unit(i);
            if self.mul(&one, &b) != b || self.mul(&b, &one) != b {
                return Err(Error::InvalidAlgebra(format!(
                    "the idempotents do not sum to the identity on `{}`",
                    self.labels[i]
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, x) in a.iter() {
            for (&j, y) in b.iter() {
                out.axpy(&(x * y), &self.table[i][j]);
            }
        }
        out
    }

    /// `Σ e_α`
    pub fn unit(&self) -> Vector {
        let mut one = Vector::zero();
        for e in &self.idempotents {
            one.axpy(&Scalar::one(), e);
        }
        one
    }

    /// Matrix of `x ↦ a·x` in the basis (columns are images).
    pub fn left_mult(&self, a: &Vector) -> Matrix {
        self.matrix_of(|x| self.mul(a, x))
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult(&self, a: &Vector) -> Matrix {
        self.matrix_of(|x| self.mul(x, a))
    }

    fn matrix_of(&self, f: impl Fn(&Vector) -> Vector) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (&i, c) in f(&Vector::unit(j)).iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn format_vector(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(&i, c)| format!("{c}*[{}]", self.labels[i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `K[Γ]` for a quiver with finitely many paths, on the path basis in
    /// path order. Returns the algebra together with the basis paths.
    pub fn from_quiver(quiver: &Quiver) -> Result<(Self, Vec<Path>)> {
        let paths = quiver.all_paths().ok_or_else(|| {
            let c = crate::quiver::find_simple_cycle(quiver).expect("infinitely many paths means a cycle");
            Error::Cyclic(quiver.vertex_label(c.source()).to_string())
        })?;
        let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut products = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if let Some(pq) = p.compose(q) {
                    products.insert((i, j), Vector::unit(index[&pq]));
                }
            }
        }
        let idempotents = quiver
            .vertex_paths()
            .iter()
            .map(|v| Vector::unit(index[v]))
            .collect();
        let labels = paths.iter().map(|p| quiver.path_name(p)).collect();
        Ok((StructuredAlgebra::new(labels, products, idempotents)?, paths))
    }

    /// `A ⊗ B` with basis `a⊗b` (index `i·dim B + j`) and idempotents
    /// `e_α ⊗ f_β`.
    pub fn tensor(&self, other: &StructuredAlgebra) -> Result<StructuredAlgebra> {
        let m = other.dim();
        let idx = |i: usize, j: usize| i * m + j;
        let mut labels = Vec::new();
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let mut products = BTreeMap::new();
        for i in 0..self.dim() {
            for k in 0..self.dim() {
                for j in 0..m {
                    for l in 0..m {
                        let mut v = Vector::zero();
                        for (&x, c) in self.table[i][k].iter() {
                            for (&y, d) in other.table[j][l].iter() {
                                v.add_term(idx(x, y), c * d);
                            }
                        }
                        if !v.is_zero() {
                            products.insert((idx(i, j), idx(k, l)), v);
                        }
                    }
                }
            }
        }
        let mut idempotents = Vec::new();
        for e in &self.idempotents {
            for f in &other.idempotents {
                let mut v = Vector::zero();
                for (&x, c) in e.iter() {
                    for (&y, d) in f.iter() {
                        v.add_term(idx(x, y), c * d);
                    }
                }
                idempotents.push(v);
            }
        }
        StructuredAlgebra::new(labels, products, idempotents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arrow_algebra() {
        let q = Quiver::from_parts(&["u", "v"], &[("x", "u", "v")]).unwrap();
        let (a, paths) = StructuredAlgebra::from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(paths.len(), 3);
        let u = a.index_of("u").unwrap();
        let x = a.index_of("x").unwrap();
        assert_eq!(a.basis_product(u, x), &Vector::unit(x));
        assert!(a.basis_product(x, u).is_zero());
    }

    #[test]
    fn rejects_bad_tables() {
        // e·e = 0 is not idempotent
        let bad = StructuredAlgebra::new(vec!["e".into()], BTreeMap::new(), vec![Vector::unit(0)]);
        assert!(matches!(bad, Err(Error::InvalidAlgebra(_))));
        // a·a = b, b·a = a breaks associativity: (a·a)·a = a, a·(a·a) = a·b = 0
        let mut p = BTreeMap::new();
        p.insert((0, 0), Vector::unit(1));
        p.insert((1, 0), Vector::unit(0));
        let bad = StructuredAlgebra::new(vec!["a".into(), "b".into()], p, vec![]);
        assert!(matches!(bad, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn tensor_dimension() {
        let q = Quiver::from_parts(&["u", "v"], &[("x", "u", "v")]).unwrap();
        let (a, _) = StructuredAlgebra::from_quiver(&q).unwrap();
        let t = a.tensor(&a).unwrap();
        assert_eq!(t.dim(), 9);
        assert_eq!(t.idempotents().len(), 4);
    }
}
