use rand::Rng;

use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::finite_dual::{dual_coalgebra, StructuredAlgebra, Vector};
use crate::linalg::{kernel, Matrix, SparseVector};
use crate::quiver::{Path, Quiver};

use super::random_matrix;

/// A unital left module over a [`StructuredAlgebra`] on `K^dim`, given by
/// the matrix of each basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    dim: usize,
    act: Vec<Matrix>,
}

impl LeftModule {
    /// Checks `act(b_i)·act(b_j) = act(b_i b_j)` and that the unit acts as
    /// the identity.
    pub fn new(a: &StructuredAlgebra, dim: usize, act: Vec<Matrix>) -> Result<Self> {
        if act.len() != a.dim() {
            return Err(Error::InvalidModule(format!("expected {} action matrices", a.dim())));
        }
        if act.iter().any(|m| (m.nrows(), m.ncols()) != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {dim}x{dim}")));
        }
        let m = LeftModule { dim, act };
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if m.act[i].mul(&m.act[j]) != m.action_of(a.basis_product(i, j)) {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        if m.action_of(&a.unit()) != Matrix::identity(dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity (not unital)".into()));
        }
        Ok(m)
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &StructuredAlgebra) -> Self {
        let act = (0..a.dim()).map(|i| a.left_mult(&Vector::unit(i))).collect();
        LeftModule { dim: a.dim(), act }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.act
    }

    pub fn action_of(&self, v: &Vector) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (&i, c) in v.iter() {
            out = out.add(&self.act[i].scaled(c));
        }
        out
    }
}

/// A right comodule structure over `A⁰ = A*`: `rho[j] = ρ(m_j)` with label
/// `(i, k)` standing for `m_i ⊗ b_k*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coaction {
    pub dim: usize,
    pub rho: Vec<SparseVector<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleReport {
    pub coaction: Coaction,
    /// `(ρ⊗id)ρ = (id⊗Δ⁰)ρ` on every basis vector
    pub coassociative: bool,
    /// `(id⊗ε⁰)ρ = id`
    pub counital: bool,
}

/// `ρ(m_j) = Σ_{i,k} act(b_k)_{ij} m_i ⊗ b_k*`, so that `b·m = Σ m₁(b) m₀`.
pub fn comodule_from_module(a: &StructuredAlgebra, m: &LeftModule) -> ComoduleReport {
    let rho: Vec<SparseVector<(usize, usize)>> = (0..m.dim)
        .map(|j| {
            let mut v = SparseVector::zero();
            for (k, act) in m.act.iter().enumerate() {
                for i in 0..m.dim {
                    v.add_term((i, k), act.get(i, j).clone());
                }
            }
            v
        })
        .collect();
    let coaction = Coaction { dim: m.dim, rho };
    let dual = dual_coalgebra(a);
    let mut coassociative = true;
    let mut counital = true;
    for j in 0..m.dim {
        let r = &coaction.rho[j];
        let left = r.flat_map(|&(i, b)| coaction.rho[i].map_labels(|&(k, c)| (k, c, b)));
        let right = r.flat_map(|&(k, x)| dual.delta(&x).map_labels(|&(c, b)| (k, c, b)));
        coassociative &= left == right;
        let mut back = SparseVector::zero();
        for (&(i, b), c) in r.iter() {
            back.add_term(i, c * &dual.epsilon(&b));
        }
        counital &= back == SparseVector::unit(j);
    }
    ComoduleReport {
        coaction,
        coassociative,
        counital,
    }
}

/// `b·m = Σ m₁(b) m₀`: reads the action matrices off the coaction and
/// validates them as a module.
pub fn module_from_comodule(a: &StructuredAlgebra, c: &Coaction) -> Result<LeftModule> {
    let mut act = vec![Matrix::zeros(c.dim, c.dim); a.dim()];
    for (j, r) in c.rho.iter().enumerate() {
        for (&(i, k), x) in r.iter() {
            if i >= c.dim || k >= a.dim() {
                return Err(Error::DimensionMismatch(format!("coaction term ({i}, {k}) outside the basis")));
            }
            act[k].set(i, j, x.clone());
        }
    }
    LeftModule::new(a, c.dim, act)
}

/// A basis of the module maps `φ : M → N`, i.e. `φ·act_M(b) = act_N(b)·φ`.
pub fn hom_space(a: &StructuredAlgebra, m: &LeftModule, n: &LeftModule) -> Vec<Matrix> {
    let (dm, dn) = (m.dim, n.dim);
    let mut columns = Vec::with_capacity(dn * dm);
    for r in 0..dn {
        for c in 0..dm {
            let mut col: SparseVector<(usize, usize, usize)> = SparseVector::zero();
            for b in 0..a.dim() {
                for i in 0..dn {
                    col.add_term((b, i, c), n.act[b].get(i, r).clone());
                }
                for j in 0..dm {
                    col.add_term((b, r, j), -m.act[b].get(c, j).clone());
                }
            }
            columns.push(col);
        }
    }
    kernel(&columns)
        .into_iter()
        .map(|v| {
            let mut phi = Matrix::zeros(dn, dm);
            for (u, x) in v.into_iter().enumerate() {
                phi.set(u / dm.max(1), u % dm.max(1), x);
            }
            phi
        })
        .collect()
}

/// `ρ_N(φ(m_j)) = (φ⊗id)ρ_M(m_j)` for every basis vector.
pub fn is_comodule_morphism(source: &Coaction, target: &Coaction, phi: &Matrix) -> bool {
    (0..source.dim).all(|j| {
        let mut left = SparseVector::zero();
        for i in 0..target.dim {
            left.axpy(phi.get(i, j), &target.rho[i]);
        }
        let right = source.rho[j].flat_map(|&(i, k)| {
            SparseVector::from_terms((0..target.dim).map(|r| ((r, k), phi.get(r, i).clone())))
        });
        left == right
    })
}

/// A random left `K[Γ]`-module for a quiver with finitely many paths:
/// `V = ⊕ V_u`, the vertex `u` projects onto `V_u` and the arrow `x` maps
/// `V_{t(x)}` into `V_{s(x)}`. `paths` is the basis of `a`, as returned by
/// [`StructuredAlgebra::from_quiver`].
pub fn random_left_module(
    quiver: &Quiver,
    a: &StructuredAlgebra,
    paths: &[Path],
    rng: &mut impl Rng,
    max_dim: usize,
) -> Result<LeftModule> {
    let dims: Vec<usize> = (0..quiver.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut off = Vec::new();
    let mut total = 0;
    for d in &dims {
        off.push(total);
        total += d;
    }
    let vertex: Vec<Matrix> = (0..quiver.num_vertices())
        .map(|v| {
            let mut m = Matrix::zeros(total, total);
            m.put_block(off[v], off[v], &Matrix::identity(dims[v]));
            m
        })
        .collect();
    let arrow: Vec<Matrix> = quiver
        .arrows()
        .iter()
        .map(|x| {
            let mut m = Matrix::zeros(total, total);
            m.put_block(off[x.source], off[x.target], &random_matrix(rng, dims[x.source], dims[x.target]));
            m
        })
        .collect();
    let act = paths
        .iter()
        .map(|p| {
            let mut m = vertex[p.source()].clone();
            for &x in p.arrows() {
                m = m.mul(&arrow[x]);
            }
            m
        })
        .collect();
    LeftModule::new(a, total, act)
}
