use serde::{Deserialize, Serialize};

use crate::coalgebra::comultiply;
use crate::linalg::SparseVector;
use crate::quiver::{max_parallel_arrows, Path, Quiver};
use crate::Tensor;

use super::path_product;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraReport {
    /// no paths of length ≥ 2 and no multiple arrows
    pub criterion: bool,
    /// the feature violating the criterion, if any
    pub obstruction: Option<String>,
    /// `Δ(pq) = Δ(p)Δ(q)` for every pair of enumerated paths
    pub multiplicative: bool,
    /// first pair (in path order) where multiplicativity fails
    pub failing_pair: Option<(String, String)>,
    /// multiplicativity restricted to pairs of distinct arrows
    pub distinct_arrow_pairs_multiplicative: bool,
    pub pairs_checked: usize,
    /// every path of the quiver was enumerated
    pub exhaustive: bool,
    pub agree: bool,
}

/// Componentwise product on `K[Γ] ⊗ K[Γ]`.
fn tensor_product(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = SparseVector::zero();
    for ((p, q), x) in a.iter() {
        for ((r, s), y) in b.iter() {
            if let (Some(pr), Some(qs)) = (p.compose(r), q.compose(s)) {
                out.add_term((pr, qs), x * y);
            }
        }
    }
    out
}

fn multiplicative_on(p: &Path, q: &Path) -> bool {
    let lhs = comultiply(&path_product(p, q));
    let rhs = tensor_product(&comultiply(&SparseVector::unit(p.clone())), &comultiply(&SparseVector::unit(q.clone())));
    lhs == rhs
}

/// Compares exhaustive multiplicativity of `Δ` on paths of length at most
/// `max_len` with the structural criterion.
pub fn bialgebra_check(quiver: &Quiver, max_len: usize) -> BialgebraReport {
    let mut obstruction = None;
    for a in quiver.arrows() {
        if let Some(b) = quiver.out_arrows(a.target).next() {
            obstruction = Some(format!("path `{}.{}` of length 2", a.label, quiver.arrow(b).label));
            break;
        }
    }
    if obstruction.is_none() && max_parallel_arrows(quiver) > 1 {
        let arrows = quiver.arrows();
        'outer: for (i, a) in arrows.iter().enumerate() {
            for b in &arrows[i + 1..] {
                if (a.source, a.target) == (b.source, b.target) {
                    obstruction = Some(format!("parallel arrows `{}` and `{}`", a.label, b.label));
                    break 'outer;
                }
            }
        }
    }
    let criterion = obstruction.is_none();

    let paths = quiver.enumerate_paths(max_len);
    let mut failing_pair = None;
    let mut checked = 0;
    for p in &paths.paths {
        for q in &paths.paths {
            checked += 1;
            if failing_pair.is_none() && !multiplicative_on(p, q) {
                failing_pair = Some((quiver.path_name(p), quiver.path_name(q)));
            }
        }
    }
    let n = quiver.num_arrows();
    let distinct_arrow_pairs_multiplicative = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .all(|(a, b)| multiplicative_on(&quiver.arrow_path(a), &quiver.arrow_path(b)));
    let multiplicative = failing_pair.is_none();
    BialgebraReport {
        criterion,
        obstruction,
        multiplicative,
        failing_pair,
        distinct_arrow_pairs_multiplicative,
        pairs_checked: checked,
        exhaustive: paths.exhaustive,
        agree: criterion == multiplicative,
    }
}
