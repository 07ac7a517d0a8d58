use std::time::Instant;

use fixedbitset::FixedBitSet;

use super::exact::SearchError;
use crate::config::Limits;
use crate::power_graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamSearch {
    Found(Vec<usize>),
    /// The search space was exhausted.
    Absent,
}

impl HamSearch {
    pub fn path(&self) -> Option<&[usize]> {
        match self {
            HamSearch::Found(p) => Some(p),
            HamSearch::Absent => None,
        }
    }
}

/// Whether `path` visits every vertex of `graph` once along edges.
pub fn is_path_in(graph: &Graph, path: &[usize]) -> bool {
    let mut seen = vec![false; graph.len()];
    path.len() == graph.len()
        && path
            .iter()
            .all(|&v| v < graph.len() && !std::mem::replace(&mut seen[v], true))
        && path.windows(2).all(|w| graph.has_edge(w[0], w[1]))
}

/// Depth-first Hamiltonian path search.
///
/// Starts from a degree-1 vertex when one exists (it must be an endpoint),
/// otherwise tries starts in ascending degree. Extensions are tried fewest
/// onward options first. A branch is cut when the unvisited vertices stop
/// inducing a connected graph, when one of them has no unvisited neighbour
/// while others remain, or when more than one of them is forced to be the
/// final endpoint.
pub fn find_hamiltonian_path(graph: &Graph, limits: &Limits) -> Result<HamSearch, SearchError> {
    let n = graph.len();
    if n > limits.path_max_vertices {
        return Err(SearchError::TooLarge {
            vertices: n,
            max: limits.path_max_vertices,
        });
    }
    if n <= 1 {
        return Ok(HamSearch::Found((0..n).collect()));
    }
    let degrees: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    if degrees.contains(&0) {
        return Ok(HamSearch::Absent);
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| degrees[v] == 1).collect();
    if leaves.len() > 2 {
        return Ok(HamSearch::Absent);
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    if !connected(graph, &all) {
        return Ok(HamSearch::Absent);
    }
    let starts: Vec<usize> = if let Some(&leaf) = leaves.first() {
        vec![leaf]
    } else {
        let mut s: Vec<usize> = (0..n).collect();
        s.sort_by_key(|&v| (degrees[v], v));
        s
    };
    let mut search = Search {
        graph,
        path: Vec::with_capacity(n),
        unvisited: all,
        nodes: 0,
        deadline: Instant::now() + limits.timeout,
    };
    for start in starts {
        search.unvisited.set(start, false);
        search.path.push(start);
        if search.extend(start)? {
            return Ok(HamSearch::Found(search.path));
        }
        search.path.pop();
        search.unvisited.set(start, true);
    }
    Ok(HamSearch::Absent)
}

fn connected(graph: &Graph, set: &FixedBitSet) -> bool {
    let Some(first) = set.ones().next() else {
        return true;
    };
    let mut reached = FixedBitSet::with_capacity(set.len());
    reached.insert(first);
    let mut stack = vec![first];
    let mut frontier = FixedBitSet::with_capacity(set.len());
    while let Some(v) = stack.pop() {
        frontier.clone_from(graph.neighbours(v));
        frontier.intersect_with(set);
        frontier.difference_with(&reached);
        for u in frontier.ones() {
            reached.insert(u);
            stack.push(u);
        }
    }
    reached.count_ones(..) == set.count_ones(..)
}

struct Search<'a> {
    graph: &'a Graph,
    path: Vec<usize>,
    unvisited: FixedBitSet,
    nodes: u64,
    deadline: Instant,
}

impl Search<'_> {
    fn open_degree(&self, v: usize) -> usize {
        self.graph.neighbours(v).intersection_count(&self.unvisited)
    }

    fn extend(&mut self, current: usize) -> Result<bool, SearchError> {
        let remaining = self.unvisited.count_ones(..);
        if remaining == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() > self.deadline {
            return Err(SearchError::Timeout {
                lower: None,
                upper: None,
            });
        }
        let mut forced_ends = 0;
        for w in self.unvisited.ones() {
            let d = self.open_degree(w);
            let next_to_current = self.graph.has_edge(current, w);
            if d == 0 && remaining > 1 {
                return Ok(false);
            }
            if d <= 1 && !next_to_current {
                forced_ends += 1;
                if forced_ends > 1 {
                    return Ok(false);
                }
            }
        }
        if remaining > 1 && !connected(self.graph, &self.unvisited) {
            return Ok(false);
        }
        let mut candidates: Vec<(usize, usize)> = self
            .graph
            .neighbours(current)
            .ones()
            .filter(|&u| self.unvisited.contains(u))
            .map(|u| (self.open_degree(u), u))
            .collect();
        candidates.sort_unstable();
        for (_, u) in candidates {
            self.unvisited.set(u, false);
            self.path.push(u);
            if self.extend(u)? {
                return Ok(true);
            }
            self.path.pop();
            self.unvisited.set(u, true);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(g: &Graph) -> HamSearch {
        find_hamiltonian_path(g, &Limits::default()).unwrap()
    }

    /// Permutation enumeration; only for tiny graphs.
    fn brute_force_exists(g: &Graph) -> bool {
        fn rec(g: &Graph, path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if path.len() == g.len() {
                return true;
            }
            for v in 0..g.len() {
                if !used[v] && path.last().is_none_or(|&u| g.has_edge(u, v)) {
                    used[v] = true;
                    path.push(v);
                    if rec(g, path, used) {
                        return true;
                    }
                    path.pop();
                    used[v] = false;
                }
            }
            false
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.len()])
    }

    #[test]
    fn small_cases() {
        assert_eq!(run(&Graph::empty(0)), HamSearch::Found(vec![]));
        assert_eq!(run(&Graph::empty(1)), HamSearch::Found(vec![0]));
        assert_eq!(run(&Graph::empty(2)), HamSearch::Absent);
        let k3 = Graph::complete(3);
        let p = run(&k3);
        assert!(is_path_in(&k3, p.path().unwrap()));
        // star K_{1,3} has no Hamiltonian path
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(run(&star), HamSearch::Absent);
        // two disjoint edges
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(run(&split), HamSearch::Absent);
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(1..8);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let found = run(&g);
            assert_eq!(
                found.path().is_some(),
                brute_force_exists(&g),
                "{:?}",
                g.edges()
            );
            if let Some(p) = found.path() {
                assert!(is_path_in(&g, p));
            }
        }
    }

    #[test]
    fn too_large() {
        let limits = Limits {
            path_max_vertices: 3,
            ..Limits::default()
        };
        assert!(matches!(
            find_hamiltonian_path(&Graph::complete(4), &limits),
            Err(SearchError::TooLarge {
                vertices: 4,
                max: 3
            })
        ));
    }
}
