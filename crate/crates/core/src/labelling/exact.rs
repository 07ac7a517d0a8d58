//! Exact λ_{2,1} by span-incrementing backtracking search.
//!
//! For a fixed span `s`, vertices are assigned labels from `0..=s` with
//! forward checking on per-vertex label domains (128-bit masks). The next
//! vertex is the one with the smallest remaining domain, ties broken by a
//! static order (descending degree, then index). Two clique bounds prune
//! further: unassigned members of a clique of the graph need pairwise
//! 2-separated labels, and unassigned members of a clique of the square
//! graph need pairwise distinct labels, both drawn from the union of their
//! domains. The first vertex assigned is restricted to `0..=s/2`, which
//! loses nothing because `l -> s - l` maps valid labellings to valid ones.

use std::time::Instant;

use thiserror::Error;

use super::{Evidence, LabelError, Labelling, LambdaCertificate, LowerBound, Method};
use crate::config::{Limits, EXACT_SEARCH_CEILING};
use crate::power_graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph on {vertices} vertices exceeds the search limit of {max}")]
    TooLarge { vertices: usize, max: usize },
    #[error("search budget exhausted (lower bound {lower:?}, upper bound {upper:?})")]
    Timeout {
        lower: Option<i64>,
        upper: Option<i64>,
    },
    #[error("start bound {start} is not a lower bound: found a labelling of span {found}")]
    InvalidStartBound { start: i64, found: i64 },
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// Greedy clique bound `2(ω - 1)`; zero for graphs with at most one vertex.
pub fn generic_lower_bound(graph: &Graph) -> LowerBound {
    if graph.len() <= 1 {
        return Evidence::Degenerate.into();
    }
    let size = (0..graph.len())
        .map(|v| greedy_clique(graph, v, |u, w| graph.has_edge(u, w)).len())
        .max()
        .unwrap_or(1);
    Evidence::CliqueBound {
        size,
        bound: 2 * (size as i64 - 1),
    }
    .into()
}

/// Smallest span at or above `start.span` admitting an L(2,1)-labelling.
///
/// The certificate's evidence is `start.evidence` if `start.span` itself is
/// feasible, otherwise an exhaustive-search record for the span just below.
pub fn exact_lambda(
    graph: &Graph,
    start: LowerBound,
    limits: &Limits,
) -> Result<LambdaCertificate, SearchError> {
    let n = graph.len();
    let max = limits.exact_max_vertices.min(EXACT_SEARCH_CEILING);
    if n > max {
        return Err(SearchError::TooLarge { vertices: n, max });
    }
    let deadline = Instant::now() + limits.timeout;
    let upper = 2 * (n.max(1) as i64 - 1);
    let mut s = start.span.max(0);
    loop {
        match labelling_with_span_until(graph, s, deadline) {
            Ok(Some(labels)) => {
                let witness = Labelling::new(labels);
                let found = witness.span()?;
                if found < start.span {
                    return Err(SearchError::InvalidStartBound {
                        start: start.span,
                        found,
                    });
                }
                let evidence = if s == start.span.max(0) {
                    start.evidence
                } else {
                    Evidence::ExhaustiveSearch { span: s - 1 }
                };
                return Ok(LambdaCertificate {
                    lambda: found,
                    witness,
                    evidence,
                    method: Method::ExactSearch,
                    construction: None,
                });
            }
            Ok(None) => s += 1,
            Err(SearchError::Timeout { .. }) => {
                return Err(SearchError::Timeout {
                    lower: Some(s),
                    upper: Some(upper.max(s)),
                })
            }
            Err(e) => return Err(e),
        }
        debug_assert!(s <= upper + 1, "labels 0, 2, ..., 2(n-1) always work");
    }
}

/// A labelling with labels in `0..=span`, or `None` if none exists.
pub fn labelling_with_span(
    graph: &Graph,
    span: i64,
    limits: &Limits,
) -> Result<Option<Vec<i64>>, SearchError> {
    let n = graph.len();
    let max = limits.exact_max_vertices.min(EXACT_SEARCH_CEILING);
    if n > max {
        return Err(SearchError::TooLarge { vertices: n, max });
    }
    labelling_with_span_until(graph, span, Instant::now() + limits.timeout)
}

fn labelling_with_span_until(
    graph: &Graph,
    span: i64,
    deadline: Instant,
) -> Result<Option<Vec<i64>>, SearchError> {
    let n = graph.len();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if span < 0 {
        return Ok(None);
    }
    if span as usize + 1 > 127 {
        // 2(n-1) <= 126 for n <= 64, and that span is always feasible.
        return Ok(Some((0..n as i64).map(|i| 2 * i).collect()));
    }
    let mut search = LabelSearch::new(graph, span as u32, deadline);
    if search.run()? {
        Ok(Some(search.labels.iter().map(|&l| l as i64).collect()))
    } else {
        Ok(None)
    }
}

fn greedy_clique(
    graph: &Graph,
    seed: usize,
    adjacent: impl Fn(usize, usize) -> bool,
) -> Vec<usize> {
    let mut clique = vec![seed];
    let mut candidates: Vec<usize> = (0..graph.len())
        .filter(|&u| u != seed && adjacent(seed, u))
        .collect();
    while !candidates.is_empty() {
        // Keep the candidate that leaves the most candidates alive.
        let (best, _) = candidates
            .iter()
            .map(|&c| {
                (
                    c,
                    candidates
                        .iter()
                        .filter(|&&d| d != c && adjacent(c, d))
                        .count(),
                )
            })
            .max_by_key(|&(c, k)| (k, std::cmp::Reverse(c)))
            .expect("non-empty");
        clique.push(best);
        candidates.retain(|&d| d != best && adjacent(best, d));
    }
    clique.sort_unstable();
    clique
}

fn clique_masks(graph: &Graph, adjacent: impl Fn(usize, usize) -> bool + Copy) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..graph.len())
        .map(|v| greedy_clique(graph, v, adjacent))
        .filter(|c| c.len() >= 2)
        .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Largest subset of `mask` with pairwise gaps of at least 2.
fn max_two_separated(mut mask: u128) -> u32 {
    let mut count = 0;
    while mask != 0 {
        let low = mask.trailing_zeros();
        count += 1;
        mask &= !(0b11u128 << low);
    }
    count
}

struct LabelSearch {
    n: usize,
    near: Vec<u64>,
    far: Vec<u64>,
    rank: Vec<usize>,
    cliques: Vec<u64>,
    square_cliques: Vec<u64>,
    domains: Vec<u128>,
    labels: Vec<u32>,
    unassigned: u64,
    trail: Vec<(usize, u128)>,
    span: u32,
    nodes: u64,
    deadline: Instant,
}

impl LabelSearch {
    fn new(graph: &Graph, span: u32, deadline: Instant) -> Self {
        let n = graph.len();
        let near: Vec<u64> = (0..n)
            .map(|v| graph.neighbours(v).ones().fold(0u64, |m, u| m | 1 << u))
            .collect();
        let far: Vec<u64> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| graph.at_distance_two(v, u))
                    .fold(0u64, |m, u| m | 1 << u)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        let mut rank = vec![0; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let cliques = clique_masks(graph, |u, v| graph.has_edge(u, v));
        let square_cliques = clique_masks(graph, |u, v| {
            graph.has_edge(u, v) || graph.at_distance_two(u, v)
        });
        let full: u128 = if span >= 127 {
            u128::MAX
        } else {
            (1u128 << (span + 1)) - 1
        };
        LabelSearch {
            n,
            near,
            far,
            rank,
            cliques,
            square_cliques,
            domains: vec![full; n],
            labels: vec![0; n],
            unassigned: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            trail: Vec::new(),
            span,
            nodes: 0,
            deadline,
        }
    }

    fn run(&mut self) -> Result<bool, SearchError> {
        let first = self.pick();
        let half: u128 = (1u128 << (self.span / 2 + 1)) - 1;
        let saved = self.domains[first];
        self.domains[first] &= half;
        let found = self.branch(first)?;
        if !found {
            self.domains[first] = saved;
        }
        Ok(found)
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, usize::MAX);
        let mut rest = self.unassigned;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let k = (self.domains[v].count_ones(), self.rank[v]);
            if k < key {
                key = k;
                best = v;
            }
        }
        best
    }

    fn restrict(&mut self, v: usize, mask: u128) -> bool {
        let d = self.domains[v];
        let nd = d & mask;
        if nd != d {
            self.trail.push((v, d));
            self.domains[v] = nd;
        }
        nd != 0
    }

    fn bounds_hold(&self) -> bool {
        let fits = |mask: u64, two_sep: bool| {
            let open = mask & self.unassigned;
            if open.count_ones() < 2 {
                return true;
            }
            let mut union = 0u128;
            let mut rest = open;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                union |= self.domains[v];
            }
            let room = if two_sep {
                max_two_separated(union)
            } else {
                union.count_ones()
            };
            room >= open.count_ones()
        };
        self.cliques.iter().all(|&c| fits(c, true))
            && self.square_cliques.iter().all(|&c| fits(c, false))
    }

    /// Tries every label in `v`'s domain, ascending.
    fn branch(&mut self, v: usize) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
            return Err(SearchError::Timeout {
                lower: None,
                upper: None,
            });
        }
        let mut options = self.domains[v];
        self.unassigned &= !(1u64 << v);
        while options != 0 {
            let l = options.trailing_zeros();
            options &= options - 1;
            let mark = self.trail.len();
            self.labels[v] = l;
            if self.propagate(v, l) && self.bounds_hold() {
                if self.unassigned == 0 {
                    return Ok(true);
                }
                let next = self.pick();
                if self.branch(next)? {
                    return Ok(true);
                }
            }
            while self.trail.len() > mark {
                let (u, d) = self.trail.pop().expect("trail entry");
                self.domains[u] = d;
            }
        }
        self.unassigned |= 1u64 << v;
        Ok(false)
    }

    fn propagate(&mut self, v: usize, l: u32) -> bool {
        let near_block: u128 = (0b111u128 << l) >> 1;
        let far_block: u128 = 1u128 << l;
        let mut rest = self.near[v] & self.unassigned;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.restrict(u, !near_block) {
                return false;
            }
        }
        let mut rest = self.far[v] & self.unassigned;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.restrict(u, !far_block) {
                return false;
            }
        }
        debug_assert!(self.n <= 64);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::is_valid_labelling;

    /// Every labelling with labels in `0..=s`; only for tiny graphs.
    fn brute_force_lambda(g: &Graph) -> i64 {
        let n = g.len();
        for s in 0.. {
            let mut labels = vec![0i64; n];
            loop {
                if is_valid_labelling(g, &Labelling::new(labels.clone())) {
                    return s;
                }
                let mut i = 0;
                while i < n && labels[i] == s {
                    labels[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                labels[i] += 1;
            }
        }
        unreachable!()
    }

    fn lambda(g: &Graph) -> i64 {
        exact_lambda(g, generic_lower_bound(g), &Limits::default())
            .unwrap()
            .lambda
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=12 {
            assert_eq!(lambda(&Graph::complete(n)), 2 * (n as i64 - 1), "K_{n}");
        }
    }

    #[test]
    fn paths_and_cycles() {
        // λ(P_n): P_2 = 2, P_3 and P_4 = 3, P_n = 4 for n >= 5.
        let path = |n: usize| {
            Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
        };
        let expected = [(2, 2), (3, 3), (4, 3), (5, 4), (7, 4)];
        for (n, l) in expected {
            assert_eq!(lambda(&path(n)), l, "P_{n}");
        }
        // λ(C_n) = 4 for all n >= 3.
        for n in 3..=8 {
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((n - 1, 0));
            assert_eq!(lambda(&Graph::from_edges(n, &edges).unwrap()), 4, "C_{n}");
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(1..6);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let cert = exact_lambda(
                &g,
                LowerBound {
                    span: 0,
                    evidence: Evidence::Degenerate,
                },
                &Limits::default(),
            )
            .unwrap();
            assert_eq!(cert.lambda, brute_force_lambda(&g), "{:?}", g.edges());
            assert!(is_valid_labelling(&g, &cert.witness));
        }
    }

    #[test]
    fn evidence_kinds() {
        let k4 = Graph::complete(4);
        let cert = exact_lambda(
            &k4,
            LowerBound {
                span: 3,
                evidence: Evidence::Degenerate,
            },
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(cert.lambda, 6);
        assert_eq!(cert.evidence, Evidence::ExhaustiveSearch { span: 5 });
        let cert = exact_lambda(&k4, generic_lower_bound(&k4), &Limits::default()).unwrap();
        assert_eq!(cert.evidence, Evidence::CliqueBound { size: 4, bound: 6 });
        assert!(cert.verify(&k4));
    }

    #[test]
    fn bad_start_bound_is_reported() {
        let g = Graph::empty(3);
        let err = exact_lambda(
            &g,
            LowerBound {
                span: 2,
                evidence: Evidence::Degenerate,
            },
            &Limits::default(),
        );
        assert_eq!(
            err.unwrap_err(),
            SearchError::InvalidStartBound { start: 2, found: 0 }
        );
    }

    #[test]
    fn size_limit() {
        let g = Graph::complete(40);
        assert!(matches!(
            exact_lambda(&g, generic_lower_bound(&g), &Limits::default()),
            Err(SearchError::TooLarge {
                vertices: 40,
                max: 32
            })
        ));
    }

    #[test]
    fn two_separated_counts() {
        assert_eq!(max_two_separated(0), 0);
        assert_eq!(max_two_separated(0b111), 2);
        assert_eq!(max_two_separated(0b1011), 2);
        assert_eq!(max_two_separated(0b10101), 3);
    }
}
