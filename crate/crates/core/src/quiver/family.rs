use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

use super::Quiver;

/// The built-in infinite (or infinitely presented) quivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// the line infinite in both directions
    Line2,
    /// the line with a first vertex
    Line1,
    /// one vertex with one loop
    Loop,
    /// an oriented cycle with n vertices
    Cycle(usize),
    /// countably many arrows from `a` to `b`
    MultiArrow,
    /// n arrows `a → b_n` and n arrows `b_n → c` for every n ≥ 1
    Star51,
    /// one arrow `a → b_n` and one arrow `b_n → c` for every n ≥ 1
    Star56,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Line2 => write!(f, "line2"),
            FamilyKind::Line1 => write!(f, "line1"),
            FamilyKind::Loop => write!(f, "loop"),
            FamilyKind::Cycle(n) => write!(f, "cycle:{n}"),
            FamilyKind::MultiArrow => write!(f, "multiarrow"),
            FamilyKind::Star51 => write!(f, "star51"),
            FamilyKind::Star56 => write!(f, "star56"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        Ok(match s {
            "line2" => FamilyKind::Line2,
            "line1" => FamilyKind::Line1,
            "loop" => FamilyKind::Loop,
            "multiarrow" => FamilyKind::MultiArrow,
            "star51" => FamilyKind::Star51,
            "star56" => FamilyKind::Star56,
            _ => {
                let n = s
                    .strip_prefix("cycle:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::parse(1, 1, format!("unknown quiver family `{s}`")))?;
                FamilyKind::Cycle(n)
            }
        })
    }
}

/// Closed-form answers to the structural questions, per family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFacts {
    /// finitely many vertices and arrows
    pub finite_quiver: bool,
    pub acyclic: bool,
    pub finitely_many_paths: bool,
    pub recovery: bool,
    pub recovery_reason: String,
    pub semiperfect: bool,
    pub semiperfect_reason: String,
    /// finitely many paths between any two vertices
    pub finite_paths_between: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFamily {
    pub kind: FamilyKind,
}

fn int_label(prefix: &str, i: i64) -> String {
    format!("{prefix}{i}")
}

impl QuiverFamily {
    pub fn new(kind: FamilyKind) -> Self {
        QuiverFamily { kind }
    }

    /// The finite piece of the family at parameter `l`:
    ///
    /// - `line2`: vertices `v-l … vl`, arrows `ai: vi → v(i+1)`
    /// - `line1`: vertices `v0 … vl`, arrows `ai: vi → v(i+1)`
    /// - `loop`, `cycle:n`: the whole (finite) quiver, `l` is ignored
    /// - `multiarrow`: arrows `x0 … xl` from `a` to `b`
    /// - `star51`: `bn` for `1 ≤ n ≤ l`, arrows `xn_i: a → bn`, `yn_i: bn → c`, `1 ≤ i ≤ n`
    /// - `star56`: `bn` for `1 ≤ n ≤ l`, arrows `xn: a → bn`, `yn: bn → c`
    pub fn truncate(&self, l: usize) -> Quiver {
        let mut q = Quiver::new();
        let li = l as i64;
        let ok = "family labels are unique";
        match self.kind {
            FamilyKind::Line2 | FamilyKind::Line1 => {
                let lo = if self.kind == FamilyKind::Line2 { -li } else { 0 };
                for i in lo..=li {
                    q.add_vertex(&int_label("v", i)).expect(ok);
                }
                for i in lo..li {
                    let s = (i - lo) as usize;
                    q.add_arrow_ids(&int_label("a", i), s, s + 1).expect(ok);
                }
            }
            FamilyKind::Loop => {
                q.add_vertex("v").expect(ok);
                q.add_arrow_ids("x", 0, 0).expect(ok);
            }
            FamilyKind::Cycle(n) => {
                for i in 0..n {
                    q.add_vertex(&format!("v{i}")).expect(ok);
                }
                for i in 0..n {
                    q.add_arrow_ids(&format!("x{i}"), i, (i + 1) % n).expect(ok);
                }
            }
            FamilyKind::MultiArrow => {
                q.add_vertex("a").expect(ok);
                q.add_vertex("b").expect(ok);
                for i in 0..=l {
                    q.add_arrow_ids(&format!("x{i}"), 0, 1).expect(ok);
                }
            }
            FamilyKind::Star51 | FamilyKind::Star56 => {
                let a = q.add_vertex("a").expect(ok);
                let bs: Vec<usize> = (1..=l).map(|n| q.add_vertex(&format!("b{n}")).expect(ok)).collect();
                let c = q.add_vertex("c").expect(ok);
                for (k, &b) in bs.iter().enumerate() {
                    let n = k + 1;
                    if self.kind == FamilyKind::Star56 {
                        q.add_arrow_ids(&format!("x{n}"), a, b).expect(ok);
                        q.add_arrow_ids(&format!("y{n}"), b, c).expect(ok);
                    } else {
                        for i in 1..=n {
                            q.add_arrow_ids(&format!("x{n}_{i}"), a, b).expect(ok);
                        }
                        for i in 1..=n {
                            q.add_arrow_ids(&format!("y{n}_{i}"), b, c).expect(ok);
                        }
                    }
                }
            }
        }
        q
    }

    /// Whether only finitely many paths of the whole family end at the vertex
    /// labelled `vertex` (labels are stable across truncation levels).
    pub fn finitely_many_paths_ending_at(&self, vertex: &str) -> bool {
        match self.kind {
            FamilyKind::Line1 => true,
            FamilyKind::Line2 | FamilyKind::Loop | FamilyKind::Cycle(_) => false,
            FamilyKind::MultiArrow => vertex == "a",
            FamilyKind::Star51 | FamilyKind::Star56 => vertex != "c",
        }
    }

    pub fn facts(&self) -> FamilyFacts {
        let many_from = |what: &str| format!("infinitely many paths start at {what}");
        match self.kind {
            FamilyKind::Line2 | FamilyKind::Line1 => FamilyFacts {
                finite_quiver: false,
                acyclic: true,
                finitely_many_paths: false,
                recovery: true,
                recovery_reason: "no oriented cycles and at most one arrow between two vertices".into(),
                semiperfect: false,
                semiperfect_reason: many_from(if self.kind == FamilyKind::Line1 { "the first vertex" } else { "every vertex" }),
                finite_paths_between: true,
            },
            FamilyKind::Loop | FamilyKind::Cycle(_) => FamilyFacts {
                finite_quiver: true,
                acyclic: false,
                finitely_many_paths: false,
                recovery: false,
                recovery_reason: "the quiver has an oriented cycle".into(),
                semiperfect: false,
                semiperfect_reason: many_from("each vertex of the cycle"),
                finite_paths_between: false,
            },
            FamilyKind::MultiArrow => FamilyFacts {
                finite_quiver: false,
                acyclic: true,
                finitely_many_paths: false,
                recovery: false,
                recovery_reason: "infinitely many arrows from `a` to `b`".into(),
                semiperfect: false,
                semiperfect_reason: many_from("`a`"),
                finite_paths_between: false,
            },
            FamilyKind::Star51 | FamilyKind::Star56 => FamilyFacts {
                finite_quiver: false,
                acyclic: true,
                finitely_many_paths: false,
                recovery: true,
                recovery_reason: "no oriented cycles and finitely many arrows between any two vertices".into(),
                semiperfect: false,
                semiperfect_reason: many_from("`a`"),
                finite_paths_between: false,
            },
        }
    }
}

/// Largest number of parallel arrows between one ordered pair of vertices.
pub fn max_parallel_arrows(q: &Quiver) -> usize {
    let mut counts = std::collections::BTreeMap::new();
    for a in q.arrows() {
        *counts.entry((a.source, a.target)).or_insert(0usize) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{find_simple_cycle, is_acyclic};

    #[test]
    fn truncation_sizes() {
        let l2 = QuiverFamily::new(FamilyKind::Line2).truncate(3);
        assert_eq!((l2.num_vertices(), l2.num_arrows()), (7, 6));
        let l1 = QuiverFamily::new(FamilyKind::Line1).truncate(3);
        assert_eq!((l1.num_vertices(), l1.num_arrows()), (4, 3));
        let s51 = QuiverFamily::new(FamilyKind::Star51).truncate(3);
        assert_eq!((s51.num_vertices(), s51.num_arrows()), (5, 12));
        let s56 = QuiverFamily::new(FamilyKind::Star56).truncate(3);
        assert_eq!((s56.num_vertices(), s56.num_arrows()), (5, 6));
        assert_eq!(s56.vertex_id("b2").unwrap(), 2);
    }

    #[test]
    fn names_round_trip() {
        for s in ["line2", "line1", "loop", "cycle:4", "multiarrow", "star51", "star56"] {
            assert_eq!(s.parse::<FamilyKind>().unwrap().to_string(), s);
        }
        assert!("cycle:0".parse::<FamilyKind>().is_err());
        assert!("tree".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn failing_families_show_their_obstruction() {
        for kind in [FamilyKind::Line2, FamilyKind::Line1, FamilyKind::Loop, FamilyKind::Cycle(3), FamilyKind::MultiArrow, FamilyKind::Star51, FamilyKind::Star56] {
            let fam = QuiverFamily::new(kind);
            let facts = fam.facts();
            let small = fam.truncate(2);
            let big = fam.truncate(6);
            assert_eq!(is_acyclic(&big), facts.acyclic, "{kind}");
            if !facts.recovery {
                let cycle = find_simple_cycle(&big).is_some();
                let growing = max_parallel_arrows(&big) > max_parallel_arrows(&small);
                assert!(cycle || growing, "{kind}");
            }
        }
    }
}
