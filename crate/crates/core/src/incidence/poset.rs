use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};

/// A finite partial order on labelled elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `leq[x][y]` iff `x ≤ y`
    leq: Vec<Vec<bool>>,
}

/// An interval `[x, y]` with `x ≤ y`, by element index.
pub type Interval = (usize, usize);

impl Poset {
    /// The order generated by the given cover pairs `x < y`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::NotAPartialOrder(format!("cover ({x}, {y}) outside the element set")));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            let above = leq[k].clone();
            for row in leq.iter_mut().filter(|row| row[k]) {
                for (r, &b) in row.iter_mut().zip(&above) {
                    *r |= b;
                }
            }
        }
        Self::from_relation(labels, leq)
    }

    /// Validates reflexivity, antisymmetry and transitivity of `leq`.
    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("relation matrix does not match the element count".into()));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::NotAPartialOrder(format!("`{}` is not below itself", labels[x])));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` are below each other",
                        labels[x], labels[y]
                    )));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::NotAPartialOrder(format!(
                            "`{}` ≤ `{}` ≤ `{}` but not `{}` ≤ `{}`",
                            labels[x], labels[y], labels[z], labels[x], labels[z]
                        )));
                    }
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(numbered(n), &covers).expect("a chain is a partial order")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(numbered(n), &[]).expect("an antichain is a partial order")
    }

    /// `0 < a, b < 1`
    pub fn diamond() -> Self {
        let labels = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
        Self::from_covers(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("the diamond is a partial order")
    }

    /// A random order: each pair `i < j` (in index order) is a relation with
    /// probability `density`, then closed transitively.
    pub fn random(rng: &mut impl Rng, n: usize, density: f64) -> Self {
        let mut rel = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    rel.push((i, j));
                }
            }
        }
        Self::from_covers(numbered(n), &rel).expect("relations follow the index order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    /// `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// All intervals, sorted.
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.leq(x, y))
            .collect()
    }

    /// Elements `z` with `x ≤ z ≤ y`.
    pub fn between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    pub fn interval_name(&self, (x, y): Interval) -> String {
        format!("e({},{})", self.labels[x], self.labels[y])
    }

    /// Relation matrix after relabelling element `i` as `perm[i]`, flattened.
    fn relabelled(&self, perm: &[usize]) -> Vec<bool> {
        let n = self.len();
        let mut out = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                out[perm[x] * n + perm[y]] = self.leq[x][y];
            }
        }
        out
    }

    /// Smallest relabelled relation matrix; equal for isomorphic posets.
    pub fn canonical_form(&self) -> Vec<bool> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = self.relabelled(&perm);
        while next_permutation(&mut perm) {
            let r = self.relabelled(&perm);
            if r < best {
                best = r;
            }
        }
        best
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One poset of each isomorphism type on `n` elements.
///
/// Every finite order has a linear extension, so it suffices to run over
/// transitive relations contained in the index order.
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let Ok(p) = Poset::from_relation(numbered(n), leq) else {
            continue;
        };
        if seen.insert(p.canonical_form()) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_validation() {
        let p = Poset::from_covers(numbered(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.intervals().len(), 6);
        assert!(Poset::from_covers(numbered(2), &[(0, 1), (1, 0)]).is_err());
        let bad = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(Poset::from_relation(numbered(3), bad).is_err());
    }

    #[test]
    fn diamond_shape() {
        let d = Poset::diamond();
        assert_eq!(d.covers().len(), 4);
        assert_eq!(d.intervals().len(), 9);
    }

    // counts from brute force over all relation matrices on small sets,
    // checked here for n ≤ 3 independently
    #[test]
    fn isomorphism_type_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
        for n in 1..=3 {
            let mut forms = BTreeSet::new();
            for mask in 0u32..(1 << (n * n)) {
                let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect()).collect();
                if let Ok(p) = Poset::from_relation(numbered(n), leq) {
                    forms.insert(p.canonical_form());
                }
            }
            assert_eq!(forms.len(), counts[n - 1]);
        }
    }
}
