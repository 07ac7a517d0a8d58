//! Power graphs, cyclic classes and class adjacency.

use std::collections::BTreeMap;
use std::ops::Deref;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::group::{element_order, powers, prime_power_base, Element, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PowerGraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadVertex { vertex: usize, n: usize },
    #[error("class {0} compared with itself")]
    SameClass(usize),
    #[error("class index {class} out of range ({count} classes)")]
    BadClass { class: usize, count: usize },
}

/// Simple undirected graph with one adjacency bitset per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v].insert_range(..);
            g.adj[v].set(v, false);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, PowerGraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u != v {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), PowerGraphError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(PowerGraphError::BadVertex {
                vertex: v,
                n: self.len(),
            })
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.len() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Same vertices, edges exactly where `self` has none.
    pub fn complement(&self) -> Graph {
        let mut out = self.clone();
        for (v, row) in out.adj.iter_mut().enumerate() {
            row.toggle_range(..);
            row.set(v, false);
        }
        out
    }

    /// Subgraph induced on `keep` (in the given order). Returns the graph and
    /// the map from new index to old index.
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>), PowerGraphError> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, keep.to_vec()))
    }

    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>), PowerGraphError> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Distance-2 pairs: non-adjacent, distinct, with a common neighbour.
    pub fn at_distance_two(&self, u: usize, v: usize) -> bool {
        u != v && !self.has_edge(u, v) && !self.adj[u].is_disjoint(&self.adj[v])
    }

    pub fn is_simple(&self) -> bool {
        (0..self.len())
            .all(|u| !self.has_edge(u, u) && self.adj[u].ones().all(|v| self.has_edge(v, u)))
    }

    /// Every pair of distinct vertices is adjacent or at distance two.
    pub fn diameter_at_most_two(&self) -> bool {
        (0..self.len())
            .all(|u| (u + 1..self.len()).all(|v| self.has_edge(u, v) || self.at_distance_two(u, v)))
    }

    /// Vertex permutation: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.len());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// Power graph of a group: `a ~ b` iff one lies in the cyclic subgroup
/// generated by the other.
#[derive(Clone, Debug)]
pub struct PowerGraph {
    graph: Graph,
    identity: Element,
    orders: Vec<usize>,
}

impl Deref for PowerGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.graph
    }
}

impl PowerGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn order_of(&self, g: Element) -> usize {
        self.orders[g]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Non-identity vertices adjacent to every other vertex.
    pub fn universal_non_identity(&self) -> Vec<Element> {
        let n = self.len();
        (0..n)
            .filter(|&v| v != self.identity && self.degree(v) + 1 == n)
            .collect()
    }

    /// `(Γ \ {1})^c` together with the map from its vertices back to elements.
    pub fn reduced_complement(&self) -> (Graph, Vec<Element>) {
        let (g, map) = self
            .graph
            .delete_vertex(self.identity)
            .expect("identity is a vertex");
        (g.complement(), map)
    }
}

pub fn build_power_graph(group: &FiniteGroup) -> PowerGraph {
    let n = group.order();
    let mut graph = Graph::empty(n);
    let mut orders = vec![0; n];
    for b in group.elements() {
        let pw = powers(group, b);
        orders[b] = pw.len();
        for &a in &pw {
            if a != b {
                graph.add_edge(a, b);
            }
        }
    }
    debug_assert!(orders
        .iter()
        .enumerate()
        .all(|(g, &o)| o == element_order(group, g)));
    PowerGraph {
        graph,
        identity: group.identity(),
        orders,
    }
}

/// Count of `1 <= k <= n` coprime to `n`.
pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1, "phi is defined for positive integers");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Elements generating one cyclic subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    pub order: usize,
    /// Ascending element indices.
    pub members: Vec<Element>,
}

impl CyclicClass {
    pub fn representative(&self) -> Element {
        self.members[0]
    }
}

/// Cyclic classes sorted by `(order, representative)`, with class numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<CyclicClass>,
    class_of: Vec<usize>,
    by_order: BTreeMap<usize, Vec<usize>>,
}

impl ClassPartition {
    pub fn classes(&self) -> &[CyclicClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &CyclicClass {
        &self.classes[id]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Id of the class containing `g`.
    pub fn class_of(&self, g: Element) -> usize {
        self.class_of[g]
    }

    /// Class ids of order `n`, ascending by representative. Empty if none.
    pub fn of_order(&self, n: usize) -> &[usize] {
        self.by_order.get(&n).map_or(&[], |v| v.as_slice())
    }

    /// Class number: the number of cyclic subgroups of order `n`; 0 when
    /// no element has order `n`.
    pub fn m(&self, n: usize) -> usize {
        self.of_order(n).len()
    }

    /// `n -> m(n)` for every realised order.
    pub fn class_numbers(&self) -> BTreeMap<usize, usize> {
        self.by_order
            .iter()
            .map(|(&n, ids)| (n, ids.len()))
            .collect()
    }
}

pub fn cyclic_classes(group: &FiniteGroup) -> ClassPartition {
    let n = group.order();
    let mut owner = vec![usize::MAX; n];
    let mut raw: Vec<CyclicClass> = Vec::new();
    for g in group.elements() {
        if owner[g] != usize::MAX {
            continue;
        }
        let pw = powers(group, g);
        let order = pw.len();
        // g^k generates <g> iff gcd(k, |g|) = 1.
        let mut members: Vec<Element> = pw
            .iter()
            .enumerate()
            .filter(|&(k, _)| gcd(k, order) == 1 || order == 1)
            .map(|(_, &h)| h)
            .collect();
        members.sort_unstable();
        for &h in &members {
            owner[h] = raw.len();
        }
        raw.push(CyclicClass { order, members });
    }
    let mut ids: Vec<usize> = (0..raw.len()).collect();
    ids.sort_by_key(|&i| (raw[i].order, raw[i].representative()));
    let mut classes = Vec::with_capacity(raw.len());
    let mut rank = vec![0; raw.len()];
    for (new, &old) in ids.iter().enumerate() {
        rank[old] = new;
        classes.push(raw[old].clone());
    }
    let class_of = owner.iter().map(|&c| rank[c]).collect();
    let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, c) in classes.iter().enumerate() {
        by_order.entry(c.order).or_default().push(id);
    }
    ClassPartition {
        classes,
        class_of,
        by_order,
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Whether two distinct classes are adjacent. One cross pair decides it:
/// adjacency between classes is all-or-nothing.
pub fn classes_adjacent(
    partition: &ClassPartition,
    c1: usize,
    c2: usize,
    graph: &Graph,
) -> Result<bool, PowerGraphError> {
    let count = partition.len();
    for class in [c1, c2] {
        if class >= count {
            return Err(PowerGraphError::BadClass { class, count });
        }
    }
    if c1 == c2 {
        return Err(PowerGraphError::SameClass(c1));
    }
    let (a, b) = (partition.class(c1), partition.class(c2));
    let adjacent = graph.has_edge(a.representative(), b.representative());
    debug_assert!(
        a.members
            .iter()
            .all(|&u| b.members.iter().all(|&v| graph.has_edge(u, v) == adjacent)),
        "class adjacency is not uniform between classes {c1} and {c2}"
    );
    Ok(adjacent)
}

/// Class-level adjacency matrix (diagonal false).
pub fn class_adjacency(partition: &ClassPartition, graph: &Graph) -> Vec<FixedBitSet> {
    let k = partition.len();
    let mut out = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        for j in i + 1..k {
            if classes_adjacent(partition, i, j, graph).expect("valid distinct ids") {
                out[i].insert(j);
                out[j].insert(i);
            }
        }
    }
    out
}

/// Class ids `(upper, first, second)` breaking the lower hook property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HookCounterexample {
    pub upper: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerHook {
    Pass,
    Counterexample(HookCounterexample),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerHookReport {
    pub is_p_group: bool,
    pub outcome: LowerHook,
}

/// Checks every class triple `(U, V1, V2)`, `V1 != V2`, with both orders at
/// most `|u|`: if `U` is adjacent to both then `V1` must be adjacent to `V2`.
/// Returns the first failing triple in class-id order. Holds for every
/// p-group; other groups may fail.
pub fn check_lower_hook(group: &FiniteGroup) -> LowerHookReport {
    let graph = build_power_graph(group);
    let partition = cyclic_classes(group);
    let adj = class_adjacency(&partition, &graph);
    let k = partition.len();
    let mut outcome = LowerHook::Pass;
    'outer: for u in 0..k {
        let top = partition.class(u).order;
        let below: Vec<usize> = adj[u]
            .ones()
            .filter(|&v| partition.class(v).order <= top)
            .collect();
        for (i, &v1) in below.iter().enumerate() {
            for &v2 in &below[i + 1..] {
                if !adj[v1].contains(v2) {
                    outcome = LowerHook::Counterexample(HookCounterexample {
                        upper: u,
                        first: v1,
                        second: v2,
                    });
                    break 'outer;
                }
            }
        }
    }
    LowerHookReport {
        is_p_group: prime_power_base(group.order()).is_some(),
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(9), 6);
        for n in 1..200 {
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count();
            assert_eq!(euler_phi(n), brute, "n={n}");
        }
    }

    #[test]
    fn prime_cyclic_is_complete() {
        let g = build_power_graph(&make_cyclic(7));
        assert_eq!(g.graph(), &Graph::complete(7));
    }

    #[test]
    fn klein_four_is_a_star() {
        let g = build_power_graph(&make_elementary_abelian(2, 2).unwrap());
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3)]);
        let (reduced, map) = g.reduced_complement();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(reduced, Graph::complete(3));
    }

    #[test]
    fn q8_involution_is_universal() {
        let q8 = make_quaternion(8).unwrap();
        let g = build_power_graph(&q8);
        let z = q8.element_by_name("x^2").unwrap();
        // brute force: z lies in every cyclic subgroup other than {1}
        for h in q8.elements().filter(|&h| h != q8.identity() && h != z) {
            assert!(cyclic_subgroup(&q8, h).contains(&z));
        }
        assert_eq!(g.degree(z), 7);
        assert_eq!(g.universal_non_identity(), vec![z]);
    }

    #[test]
    fn complement_and_delete() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.complement(), Graph::empty(4));
        assert_eq!(k4.complement().complement(), k4);
        assert_eq!(
            k4.delete_vertex(9).unwrap_err(),
            PowerGraphError::BadVertex { vertex: 9, n: 4 }
        );
        let (g, map) = k4.delete_vertex(1).unwrap();
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn class_numbers_fixtures() {
        let p = cyclic_classes(&make_semidihedral(16).unwrap());
        assert_eq!((p.m(2), p.m(4), p.m(8)), (5, 3, 1));
        let p = cyclic_classes(&make_dihedral(16).unwrap());
        assert_eq!((p.m(2), p.m(4), p.m(8)), (9, 1, 1));
        let p = cyclic_classes(&make_cyclic(8));
        assert_eq!((p.m(1), p.m(2), p.m(4), p.m(8)), (1, 1, 1, 1));
        assert_eq!(p.m(3), 0);
        let p = cyclic_classes(&make_heisenberg(3).unwrap());
        assert_eq!(p.m(3), 13);
        let c3 = make_cyclic(3);
        let p = cyclic_classes(&make_direct_product(&c3, &c3));
        assert_eq!(p.m(3), 4);
    }

    #[test]
    fn adjacency_between_classes() {
        let c8 = make_cyclic(8);
        let g = build_power_graph(&c8);
        let p = cyclic_classes(&c8);
        let (top, two) = (p.of_order(8)[0], p.of_order(2)[0]);
        assert!(classes_adjacent(&p, top, two, &g).unwrap());
        assert_eq!(
            classes_adjacent(&p, top, top, &g),
            Err(PowerGraphError::SameClass(top))
        );

        let v4 = make_elementary_abelian(2, 2).unwrap();
        let g = build_power_graph(&v4);
        let p = cyclic_classes(&v4);
        let inv = p.of_order(2);
        assert!(!classes_adjacent(&p, inv[0], inv[1], &g).unwrap());

        let c6 = make_cyclic(6);
        let g = build_power_graph(&c6);
        let p = cyclic_classes(&c6);
        let (c2, c3, c6c) = (p.of_order(2)[0], p.of_order(3)[0], p.of_order(6)[0]);
        assert!(!classes_adjacent(&p, c2, c3, &g).unwrap());
        assert!(classes_adjacent(&p, c6c, c2, &g).unwrap());
        assert!(classes_adjacent(&p, c6c, c3, &g).unwrap());
    }

    #[test]
    fn lower_hook() {
        let c6 = make_cyclic(6);
        let report = check_lower_hook(&c6);
        assert!(!report.is_p_group);
        let p = cyclic_classes(&c6);
        assert_eq!(
            report.outcome,
            LowerHook::Counterexample(HookCounterexample {
                upper: p.of_order(6)[0],
                first: p.of_order(2)[0],
                second: p.of_order(3)[0],
            })
        );
        assert_eq!(check_lower_hook(&make_cyclic(1)).outcome, LowerHook::Pass);
        assert_eq!(
            check_lower_hook(&make_semidihedral(32).unwrap()).outcome,
            LowerHook::Pass
        );
    }
}
