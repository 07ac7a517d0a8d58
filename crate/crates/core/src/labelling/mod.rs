//! L(j,k)-labellings, the Hamiltonian path correspondence and the exact oracle.
//!
//! On a power graph every pair of distinct vertices is at distance one or two,
//! so an L(2,1)-labelling is an injective labelling where adjacent vertices
//! differ by at least 2. A span-|G| labelling is the same thing as a
//! Hamiltonian path in the complement of the power graph with the identity
//! removed: walk the path and hand out consecutive labels, with the identity
//! parked two below the first one.

mod exact;
mod hamilton;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructive::Construction;
use crate::group::Element;
use crate::power_graph::{Graph, PowerGraph};

pub use exact::{exact_lambda, generic_lower_bound, labelling_with_span, SearchError};
pub use hamilton::{find_hamiltonian_path, is_path_in, HamSearch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("vertex {vertex} has no label")]
    MissingLabel { vertex: usize },
    #[error("labelling has {got} labels for a graph on {expected} vertices")]
    WrongLength { got: usize, expected: usize },
    #[error("empty labelling")]
    EmptyLabelling,
    #[error("not a Hamiltonian path of the reduced complement: {0}")]
    BadPath(String),
    #[error("labelling span {span} differs from the group order {order}")]
    SpanTooLarge { span: i64, order: usize },
    #[error("labelling is not a valid L(2,1)-labelling ({violations} violating pairs)")]
    NotValid { violations: usize },
}

/// Integer label per vertex together with its separation parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    labels: Vec<i64>,
    pub j: u32,
    pub k: u32,
}

impl Labelling {
    /// An L(2,1) labelling.
    pub fn new(labels: Vec<i64>) -> Self {
        Labelling { labels, j: 2, k: 1 }
    }

    pub fn with_separation(labels: Vec<i64>, j: u32, k: u32) -> Self {
        Labelling { labels, j, k }
    }

    /// Rejects partial labellings, naming the first unlabelled vertex.
    pub fn from_partial(labels: Vec<Option<i64>>) -> Result<Self, LabelError> {
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(vertex, l)| l.ok_or(LabelError::MissingLabel { vertex }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Labelling::new(labels))
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> i64 {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn span(&self) -> Result<i64, LabelError> {
        span(&self.labels)
    }

    pub fn translated(&self, by: i64) -> Labelling {
        Labelling {
            labels: self.labels.iter().map(|l| l + by).collect(),
            j: self.j,
            k: self.k,
        }
    }
}

/// `max - min`.
pub fn span(labels: &[i64]) -> Result<i64, LabelError> {
    let max = labels.iter().max().ok_or(LabelError::EmptyLabelling)?;
    let min = labels.iter().min().ok_or(LabelError::EmptyLabelling)?;
    Ok(max - min)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    /// 1 or 2.
    pub distance: u8,
    pub gap: i64,
}

/// Every pair closer than its separation requirement, in `(u, v)` order.
/// An empty list means the labelling is valid.
pub fn validate_labelling(
    graph: &Graph,
    labelling: &Labelling,
) -> Result<Vec<Violation>, LabelError> {
    let n = graph.len();
    if labelling.len() < n {
        return Err(LabelError::MissingLabel {
            vertex: labelling.len(),
        });
    }
    if labelling.len() > n {
        return Err(LabelError::WrongLength {
            got: labelling.len(),
            expected: n,
        });
    }
    let (j, k) = (labelling.j as i64, labelling.k as i64);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let gap = (labelling.label(u) - labelling.label(v)).abs();
            if graph.has_edge(u, v) {
                if gap < j {
                    out.push(Violation {
                        u,
                        v,
                        distance: 1,
                        gap,
                    });
                }
            } else if gap < k && graph.at_distance_two(u, v) {
                out.push(Violation {
                    u,
                    v,
                    distance: 2,
                    gap,
                });
            }
        }
    }
    Ok(out)
}

pub fn is_valid_labelling(graph: &Graph, labelling: &Labelling) -> bool {
    validate_labelling(graph, labelling).is_ok_and(|v| v.is_empty())
}

/// Ordering of `G \ {1}` whose consecutive elements are non-adjacent in the
/// power graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamPath {
    pub vertices: Vec<Element>,
    pub excluded: Element,
}

impl HamPath {
    pub fn new(vertices: Vec<Element>, excluded: Element) -> Self {
        HamPath { vertices, excluded }
    }

    /// Checks coverage of `G \ {1}` and non-adjacency of consecutive pairs.
    pub fn check(&self, graph: &PowerGraph) -> Result<(), LabelError> {
        let n = graph.len();
        if self.excluded != graph.identity() {
            return Err(LabelError::BadPath(format!(
                "excluded vertex {} is not the identity {}",
                self.excluded,
                graph.identity()
            )));
        }
        if self.vertices.len() + 1 != n {
            return Err(LabelError::BadPath(format!(
                "{} vertices listed, expected {}",
                self.vertices.len(),
                n.saturating_sub(1)
            )));
        }
        let mut seen = vec![false; n];
        seen[self.excluded] = true;
        for &v in &self.vertices {
            if v >= n || seen[v] {
                return Err(LabelError::BadPath(format!(
                    "vertex {v} repeated or out of range"
                )));
            }
            seen[v] = true;
        }
        if let Some(w) = self
            .vertices
            .windows(2)
            .find(|w| graph.has_edge(w[0], w[1]))
        {
            return Err(LabelError::BadPath(format!(
                "consecutive vertices {} and {} are adjacent in the power graph",
                w[0], w[1]
            )));
        }
        Ok(())
    }
}

/// `f(1) = -2`, `f(x_i) = i`: a span-|G| L(2,1)-labelling.
pub fn path_to_labelling(graph: &PowerGraph, path: &HamPath) -> Result<Labelling, LabelError> {
    path.check(graph)?;
    let mut labels = vec![0i64; graph.len()];
    labels[graph.identity()] = -2;
    for (i, &v) in path.vertices.iter().enumerate() {
        labels[v] = i as i64;
    }
    Ok(Labelling::new(labels))
}

/// Inverse of [`path_to_labelling`]: re-anchor the identity two below the
/// other labels if it sits at the top, translate, and read the path off in
/// label order.
pub fn labelling_to_path(graph: &PowerGraph, labelling: &Labelling) -> Result<HamPath, LabelError> {
    let n = graph.len();
    let violations = validate_labelling(graph, labelling)?;
    if !violations.is_empty() || (labelling.j, labelling.k) != (2, 1) {
        return Err(LabelError::NotValid {
            violations: violations.len(),
        });
    }
    let s = labelling.span()?;
    if s != n as i64 {
        return Err(LabelError::SpanTooLarge { span: s, order: n });
    }
    let id = graph.identity();
    let mut labels = labelling.labels().to_vec();
    let others = || {
        labels
            .iter()
            .enumerate()
            .filter(move |&(v, _)| v != id)
            .map(|(_, &l)| l)
    };
    let min_other = others().min();
    let max_other = others().max();
    if let (Some(lo), Some(hi)) = (min_other, max_other) {
        if labels[id] > hi {
            labels[id] = lo - 2;
        }
    }
    let shift = -2 - labels[id];
    let mut order: Vec<(i64, Element)> = labels
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != id)
        .map(|(v, &l)| (l + shift, v))
        .collect();
    order.sort_unstable();
    if order.iter().enumerate().any(|(i, &(l, _))| l != i as i64) {
        return Err(LabelError::BadPath(
            "labels are not -2, 0, 1, ..., N after re-anchoring".into(),
        ));
    }
    let path = HamPath::new(order.into_iter().map(|(_, v)| v).collect(), id);
    path.check(graph)?;
    Ok(path)
}

/// Why λ cannot be smaller than the certified value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// At most one vertex: every labelling has span 0.
    Degenerate,
    /// λ(Γ_G) >= |G| for every finite group.
    PowerGraphBound { bound: i64 },
    /// A non-identity vertex adjacent to everything is isolated in the
    /// reduced complement, so there is no Hamiltonian path and λ > |G|.
    #[serde(rename = "universal-nonidentity-vertex")]
    UniversalNonIdentityVertex { vertex: Element, bound: i64 },
    /// A clique on `size` vertices needs labels pairwise 2 apart.
    CliqueBound { size: usize, bound: i64 },
    /// Exhaustive search found no labelling of span `span`.
    ExhaustiveSearch { span: i64 },
}

impl Evidence {
    /// The lower bound on λ this evidence establishes.
    pub fn bound(&self) -> i64 {
        match *self {
            Evidence::Degenerate => 0,
            Evidence::PowerGraphBound { bound }
            | Evidence::UniversalNonIdentityVertex { bound, .. }
            | Evidence::CliqueBound { bound, .. } => bound,
            Evidence::ExhaustiveSearch { span } => span + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub span: i64,
    pub evidence: Evidence,
}

impl From<Evidence> for LowerBound {
    fn from(evidence: Evidence) -> Self {
        LowerBound {
            span: evidence.bound(),
            evidence,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Constructive,
    ExactSearch,
}

/// λ together with a witness of span λ and evidence ruling out λ - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCertificate {
    pub lambda: i64,
    pub witness: Labelling,
    pub evidence: Evidence,
    pub method: Method,
    pub construction: Option<Construction>,
}

impl LambdaCertificate {
    /// Witness valid with span λ, and evidence bound equal to λ.
    pub fn verify(&self, graph: &Graph) -> bool {
        is_valid_labelling(graph, &self.witness)
            && self.witness.span().ok() == Some(self.lambda)
            && self.evidence.bound() == self.lambda
    }
}

/// `|G|`, raised to `|G| + 1` when some non-identity vertex is universal
/// (for `|G| >= 3`). The trivial group gets 0.
pub fn power_graph_lower_bound(graph: &PowerGraph) -> LowerBound {
    let n = graph.len() as i64;
    if n <= 1 {
        return Evidence::Degenerate.into();
    }
    if n >= 3 {
        if let Some(&vertex) = graph.universal_non_identity().first() {
            return Evidence::UniversalNonIdentityVertex {
                vertex,
                bound: n + 1,
            }
            .into();
        }
    }
    Evidence::PowerGraphBound { bound: n }.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::power_graph::build_power_graph;

    #[test]
    fn k3_validation() {
        let k3 = Graph::complete(3);
        let ok = Labelling::new(vec![0, 2, 4]);
        assert!(validate_labelling(&k3, &ok).unwrap().is_empty());
        assert_eq!(ok.span().unwrap(), 4);
        let bad = Labelling::new(vec![0, 1, 3]);
        assert_eq!(
            validate_labelling(&k3, &bad).unwrap(),
            vec![Violation {
                u: 0,
                v: 1,
                distance: 1,
                gap: 1
            }]
        );
        assert_eq!(
            validate_labelling(&k3, &Labelling::new(vec![0, 2])),
            Err(LabelError::MissingLabel { vertex: 2 })
        );
    }

    #[test]
    fn klein_four_star() {
        let g = build_power_graph(&make_elementary_abelian(2, 2).unwrap());
        let l = Labelling::new(vec![-2, 0, 1, 2]);
        assert!(validate_labelling(&g, &l).unwrap().is_empty());
        assert_eq!(l.span().unwrap(), 4);
        let clash = Labelling::new(vec![-2, 0, 0, 2]);
        let v = validate_labelling(&g, &clash).unwrap();
        assert_eq!(
            v,
            vec![Violation {
                u: 1,
                v: 2,
                distance: 2,
                gap: 0
            }]
        );
    }

    #[test]
    fn spans() {
        assert_eq!(span(&[5]).unwrap(), 0);
        assert_eq!(span(&[-2, 0, 1]).unwrap(), 3);
        assert_eq!(span(&[]), Err(LabelError::EmptyLabelling));
    }

    #[test]
    fn partial_labelling() {
        assert_eq!(
            Labelling::from_partial(vec![Some(1), None]),
            Err(LabelError::MissingLabel { vertex: 1 })
        );
    }

    #[test]
    fn path_and_labelling_round_trip() {
        let g = build_power_graph(&make_elementary_abelian(2, 2).unwrap());
        let path = HamPath::new(vec![1, 2, 3], 0);
        let l = path_to_labelling(&g, &path).unwrap();
        assert_eq!(l.labels(), &[-2, 0, 1, 2]);
        assert_eq!(labelling_to_path(&g, &l).unwrap(), path);
        assert_eq!(labelling_to_path(&g, &l.translated(17)).unwrap(), path);

        // identity at the top: labels 0,1,2 for the involutions, 4 for 1
        let top = Labelling::new(vec![4, 0, 1, 2]);
        assert_eq!(labelling_to_path(&g, &top).unwrap(), path);
    }

    #[test]
    fn bad_paths_rejected() {
        let q8 = make_quaternion(8).unwrap();
        let g = build_power_graph(&q8);
        // x and x^2 are adjacent
        let p = HamPath::new(vec![1, 2, 3, 4, 5, 6, 7], 0);
        assert!(matches!(
            path_to_labelling(&g, &p),
            Err(LabelError::BadPath(_))
        ));
        let short = HamPath::new(vec![1, 4], 0);
        assert!(matches!(
            path_to_labelling(&g, &short),
            Err(LabelError::BadPath(_))
        ));
    }

    #[test]
    fn labelling_to_path_errors() {
        let g = build_power_graph(&make_elementary_abelian(2, 2).unwrap());
        let wide = Labelling::new(vec![-2, 0, 1, 3]);
        assert_eq!(
            labelling_to_path(&g, &wide),
            Err(LabelError::SpanTooLarge { span: 5, order: 4 })
        );
        let invalid = Labelling::new(vec![-1, 0, 1, 3]);
        assert_eq!(
            labelling_to_path(&g, &invalid),
            Err(LabelError::NotValid { violations: 1 })
        );
    }

    #[test]
    fn lower_bounds() {
        let v4 = build_power_graph(&make_elementary_abelian(2, 2).unwrap());
        assert_eq!(power_graph_lower_bound(&v4).span, 4);
        let q16 = make_quaternion(16).unwrap();
        let g = build_power_graph(&q16);
        let lb = power_graph_lower_bound(&g);
        assert_eq!(lb.span, 17);
        assert_eq!(
            lb.evidence,
            Evidence::UniversalNonIdentityVertex {
                vertex: q16.element_by_name("x^4").unwrap(),
                bound: 17
            }
        );
        let trivial = build_power_graph(&make_cyclic(1));
        assert_eq!(power_graph_lower_bound(&trivial).span, 0);
    }
}
