//! Explicit Hamiltonian paths in `(Γ_G \ {1})^c` for p-groups, and the
//! dispatcher producing a λ certificate for any p-group.
//!
//! λ(Γ_G) for a p-group of exponent `p^e` is `2(p^e - 1)` when G is cyclic,
//! `|G| + 1` for generalised quaternion groups and `|G|` otherwise. The last
//! case is certified by a path:
//!
//! - when every level `i` has at least two cyclic classes of order `p^i`,
//!   interleave the classes of each level and chain the levels from the top
//!   order down ([`construct_path_general`]);
//! - otherwise the group is dihedral or semidihedral and has its own path
//!   ([`construct_path_dihedral`], [`construct_path_semidihedral`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Limits;
use crate::group::{
    self, make_dihedral, make_quaternion, make_semidihedral, order_table, Element, FiniteGroup,
    GroupError, MetacyclicKind, OrderTable,
};
use crate::labelling::{
    exact_lambda, find_hamiltonian_path, path_to_labelling, power_graph_lower_bound, Evidence,
    HamPath, HamSearch, LabelError, Labelling, LambdaCertificate, Method, SearchError,
};
use crate::power_graph::{
    build_power_graph, classes_adjacent, cyclic_classes, ClassPartition, PowerGraph,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("only one cyclic class of order {order}")]
    ThinLevel { order: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("class sizes differ: {0} vs {1}")]
    UnequalSizes(usize, usize),
    #[error("an interleaving needs at least two classes")]
    SingleClass,
    #[error("vertices {0} and {1} of different classes are adjacent")]
    CrossAdjacency(Element, Element),
    #[error("vertices {0} and {1} of one class are not adjacent")]
    NotComplete(Element, Element),
    #[error("group with a thin class level is not dihedral, quaternion or semidihedral")]
    Unrecognized,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Trivial,
    Cyclic,
    Descent,
    Dihedral,
    Semidihedral,
    Quaternion,
}

/// How a witness was built: the path (if any) and its joints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub path: Vec<Element>,
    pub joints: Vec<(Element, Element)>,
}

/// Equal-size vertex sets, each a clique of Γ, pairwise non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedClassFamily {
    classes: Vec<Vec<Element>>,
}

impl OrderedClassFamily {
    pub fn new(classes: Vec<Vec<Element>>, graph: &PowerGraph) -> Result<Self, ConstructError> {
        if classes.len() < 2 {
            return Err(ConstructError::SingleClass);
        }
        let size = classes[0].len();
        if let Some(c) = classes.iter().find(|c| c.len() != size) {
            return Err(ConstructError::UnequalSizes(size, c.len()));
        }
        for c in &classes {
            for (i, &a) in c.iter().enumerate() {
                if let Some(&b) = c[i + 1..].iter().find(|&&b| !graph.has_edge(a, b)) {
                    return Err(ConstructError::NotComplete(a, b));
                }
            }
        }
        for (i, ci) in classes.iter().enumerate() {
            for cj in &classes[i + 1..] {
                for &a in ci {
                    if let Some(&b) = cj.iter().find(|&&b| graph.has_edge(a, b)) {
                        return Err(ConstructError::CrossAdjacency(a, b));
                    }
                }
            }
        }
        Ok(OrderedClassFamily { classes })
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    /// Common class size.
    pub fn width(&self) -> usize {
        self.classes[0].len()
    }
}

/// Path in the complement of Γ, with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSegment {
    pub vertices: Vec<Element>,
}

impl PathSegment {
    pub fn start(&self) -> Element {
        self.vertices[0]
    }

    pub fn end(&self) -> Element {
        *self.vertices.last().expect("segments are non-empty")
    }
}

/// Column-major interleaving `w11, w21, ..., wr1, w12, ..., wrN`. Each class
/// is taken in its stored order.
pub fn build_interleaved_path(family: &OrderedClassFamily) -> PathSegment {
    let vertices = (0..family.width())
        .flat_map(|col| family.classes.iter().map(move |c| c[col]))
        .collect();
    PathSegment { vertices }
}

/// Orders the classes of each level `e, e-1, ..., 1` so that the last class
/// of level `i` is not adjacent to the first class of level `i - 1`.
///
/// Within a level, classes follow ascending representative, except that the
/// first class of a lower level is the first one (by representative) not
/// adjacent to the level above's last class. A class has exactly one
/// adjacent class on each lower level, so a second class always leaves a
/// valid choice.
pub fn order_classes_for_descent(
    partition: &ClassPartition,
    graph: &PowerGraph,
    p: usize,
    e: u32,
) -> Result<Vec<OrderedClassFamily>, ConstructError> {
    let mut levels: Vec<Vec<usize>> = Vec::with_capacity(e as usize);
    for i in (1..=e).rev() {
        let order = p.pow(i);
        let mut ids = partition.of_order(order).to_vec();
        if ids.len() < 2 {
            return Err(ConstructError::ThinLevel { order });
        }
        if let Some(above) = levels.last() {
            let last = *above.last().expect("levels are non-empty");
            let pos = ids
                .iter()
                .position(|&c| {
                    !classes_adjacent(partition, last, c, graph).expect("distinct classes")
                })
                .ok_or_else(|| {
                    ConstructError::ConstructionFailed(format!(
                        "every class of order {order} is adjacent to class {last}"
                    ))
                })?;
            let first = ids.remove(pos);
            ids.insert(0, first);
        }
        levels.push(ids);
    }
    levels
        .into_iter()
        .map(|ids| {
            let classes = ids
                .iter()
                .map(|&c| partition.class(c).members.clone())
                .collect();
            OrderedClassFamily::new(classes, graph)
        })
        .collect()
}

/// A Hamiltonian path of `(Γ_G \ {1})^c` with the joints where pieces meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentedPath {
    pub path: HamPath,
    pub joints: Vec<(Element, Element)>,
}

/// Level-descent construction for p-groups where every order `p^i`,
/// `1 <= i <= e`, has at least two cyclic classes.
pub fn construct_path_general(group: &FiniteGroup) -> Result<SegmentedPath, ConstructError> {
    let table = order_table(group);
    let p = table
        .p_group_prime
        .ok_or(ConstructError::NotPGroup(group.order()))?;
    let e = table.exponent_log().expect("p-group");
    let graph = build_power_graph(group);
    let partition = cyclic_classes(group);
    descent_path(group, &graph, &partition, p, e)
}

fn descent_path(
    group: &FiniteGroup,
    graph: &PowerGraph,
    partition: &ClassPartition,
    p: usize,
    e: u32,
) -> Result<SegmentedPath, ConstructError> {
    let families = order_classes_for_descent(partition, graph, p, e)?;
    let segments: Vec<PathSegment> = families.iter().map(build_interleaved_path).collect();
    let joints: Vec<(Element, Element)> = segments
        .windows(2)
        .map(|w| (w[0].end(), w[1].start()))
        .collect();
    for &(a, b) in &joints {
        if graph.has_edge(a, b) {
            return Err(ConstructError::CrossAdjacency(a, b));
        }
    }
    let vertices = segments.into_iter().flat_map(|s| s.vertices).collect();
    let path = HamPath::new(vertices, group.identity());
    path.check(graph)?;
    Ok(SegmentedPath { path, joints })
}

/// Words `x^k` and `x^k y` of a dihedral, quaternion or semidihedral group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetacyclicFrame {
    pub kind: MetacyclicKind,
    pub e: u32,
    /// `x_powers[k] = x^k`, `k = 0 .. 2^e - 1`.
    pub x_powers: Vec<Element>,
    /// `outside[k] = x^k y`.
    pub outside: Vec<Element>,
}

impl MetacyclicFrame {
    /// Frame of the canonical table built by the family constructors.
    pub fn canonical(kind: MetacyclicKind, e: u32) -> Self {
        let m = 1usize << e;
        MetacyclicFrame {
            kind,
            e,
            x_powers: (0..m).collect(),
            outside: (m..2 * m).collect(),
        }
    }

    fn m(&self) -> usize {
        self.x_powers.len()
    }
}

/// Finds `x` of order `|G|/2` and `y` outside `<x>` satisfying one of the
/// three presentations, trying `x` then `y` in ascending index order.
pub fn recognize_metacyclic(group: &FiniteGroup) -> Option<MetacyclicFrame> {
    let n = group.order();
    let log = group::prime_power_log(n, 2)?;
    if log < 3 {
        return None;
    }
    let e = log - 1;
    let m = n / 2;
    let table = order_table(group);
    for x in group.elements().filter(|&g| table.orders[g] == m) {
        let x_powers = group::powers(group, x);
        let mut inside = vec![false; n];
        for &h in &x_powers {
            inside[h] = true;
        }
        for y in group.elements().filter(|&g| !inside[g]) {
            let y2 = group.mul(y, y);
            let conj = group.mul(group.mul(group.inverse(y), x), y);
            for kind in [
                MetacyclicKind::Dihedral,
                MetacyclicKind::Quaternion,
                MetacyclicKind::Semidihedral,
            ] {
                if e < kind.min_e() {
                    continue;
                }
                if y2 == x_powers[kind.y_square(m)] && conj == x_powers[kind.twist(m)] {
                    let outside = x_powers.iter().map(|&xk| group.mul(xk, y)).collect();
                    return Some(MetacyclicFrame {
                        kind,
                        e,
                        x_powers,
                        outside,
                    });
                }
            }
        }
    }
    None
}

/// `(out_0, x, out_1, x^2, ..., x^(m-1), out_(m-1))`: outside involutions
/// alternating with the non-identity powers of `x`.
pub fn dihedral_path(frame: &MetacyclicFrame) -> Vec<Element> {
    let m = frame.m();
    let mut path = Vec::with_capacity(2 * m - 1);
    for k in 0..m {
        if k > 0 {
            path.push(frame.x_powers[k]);
        }
        path.push(frame.outside[k]);
    }
    path
}

pub fn construct_path_dihedral(e: u32) -> Result<HamPath, ConstructError> {
    let group = make_dihedral(1usize.checked_shl(e + 1).unwrap_or(0))?;
    let frame = MetacyclicFrame::canonical(MetacyclicKind::Dihedral, e);
    let path = HamPath::new(dihedral_path(&frame), group.identity());
    path.check(&build_power_graph(&group))?;
    Ok(path)
}

/// `T1 = (y, x^(m/2), x^2 y, x^(m/4), x^4 y, x^(3m/4))`, then the joint, then
/// `T2`, which alternates the remaining `x^k y` with the powers of `x` of
/// order at least 8, both in ascending `k`.
pub fn semidihedral_path(frame: &MetacyclicFrame) -> SegmentedPath {
    let m = frame.m();
    let x = &frame.x_powers;
    let out = &frame.outside;
    let t1 = [out[0], x[m / 2], out[2], x[m / 4], out[4], x[3 * m / 4]];
    let rest_out: Vec<Element> = (0..m)
        .filter(|k| ![0, 2, 4].contains(k))
        .map(|k| out[k])
        .collect();
    let high: Vec<Element> = (1..m)
        .filter(|&k| ![m / 2, m / 4, 3 * m / 4].contains(&k))
        .map(|k| x[k])
        .collect();
    debug_assert_eq!(rest_out.len(), high.len() + 1);
    let mut vertices = t1.to_vec();
    for (i, &o) in rest_out.iter().enumerate() {
        vertices.push(o);
        if let Some(&w) = high.get(i) {
            vertices.push(w);
        }
    }
    let joint = (t1[5], rest_out[0]);
    SegmentedPath {
        path: HamPath::new(vertices, x[0]),
        joints: vec![joint],
    }
}

/// Leading six vertices of the semidihedral path.
pub fn semidihedral_prefix(frame: &MetacyclicFrame) -> Vec<Element> {
    semidihedral_path(frame).path.vertices[..6].to_vec()
}

pub fn construct_path_semidihedral(e: u32) -> Result<HamPath, ConstructError> {
    let group = make_semidihedral(1usize.checked_shl(e + 1).unwrap_or(0))?;
    let frame = MetacyclicFrame::canonical(MetacyclicKind::Semidihedral, e);
    let built = semidihedral_path(&frame);
    built.path.check(&build_power_graph(&group))?;
    Ok(built.path)
}

/// Span `|G| + 1` labelling of a generalised quaternion group: the identity
/// at -2, a Hamiltonian path of the complement of Γ on `G \ {1, z}` at
/// `0 ..= |G| - 3`, and the central involution `z` at `|G| - 1`.
pub fn quaternion_labelling(
    group: &FiniteGroup,
    graph: &PowerGraph,
    frame: &MetacyclicFrame,
    limits: &Limits,
) -> Result<(Labelling, Vec<Element>), ConstructError> {
    let n = group.order();
    let z = frame.x_powers[frame.m() / 2];
    let keep: Vec<Element> = group
        .elements()
        .filter(|&g| g != group.identity() && g != z)
        .collect();
    let (restricted, map) = graph.induced(&keep).expect("vertices in range");
    let search = find_hamiltonian_path(&restricted.complement(), limits);
    if let Ok(HamSearch::Found(order)) = search {
        let mut labels = vec![0i64; n];
        labels[group.identity()] = -2;
        labels[z] = n as i64 - 1;
        let path: Vec<Element> = order.iter().map(|&i| map[i]).collect();
        for (i, &v) in path.iter().enumerate() {
            labels[v] = i as i64;
        }
        return Ok((Labelling::new(labels), path));
    }
    let cert = exact_lambda(graph, power_graph_lower_bound(graph), limits).map_err(|err| {
        ConstructError::ConstructionFailed(format!("path search {search:?}, fallback {err}"))
    })?;
    Ok((cert.witness, Vec::new()))
}

pub fn construct_labelling_quaternion(
    e: u32,
    limits: &Limits,
) -> Result<Labelling, ConstructError> {
    let group = make_quaternion(1usize.checked_shl(e + 1).unwrap_or(0))?;
    let graph = build_power_graph(&group);
    let frame = MetacyclicFrame::canonical(MetacyclicKind::Quaternion, e);
    Ok(quaternion_labelling(&group, &graph, &frame, limits)?.0)
}

/// Structural family of a p-group, as the dispatcher sees it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognized {
    Trivial,
    Cyclic,
    /// Every level has at least two cyclic classes.
    Wide,
    Metacyclic(MetacyclicFrame),
}

impl Recognized {
    pub fn label(&self) -> &'static str {
        match self {
            Recognized::Trivial => "trivial",
            Recognized::Cyclic => "cyclic",
            Recognized::Wide => "wide",
            Recognized::Metacyclic(f) => f.kind.name(),
        }
    }
}

/// Levels `i` in `1..=e` with exactly one cyclic class of order `p^i`.
pub fn thin_levels(table: &OrderTable, partition: &ClassPartition) -> Vec<u32> {
    let (Some(p), Some(e)) = (table.p_group_prime, table.exponent_log()) else {
        return Vec::new();
    };
    (1..=e).filter(|&i| partition.m(p.pow(i)) == 1).collect()
}

/// Classifies a p-group by its class numbers, confirming the thin cases by
/// their presentations.
pub fn recognize(group: &FiniteGroup) -> Result<Recognized, ConstructError> {
    if group.order() == 1 {
        return Ok(Recognized::Trivial);
    }
    let table = order_table(group);
    table
        .p_group_prime
        .ok_or(ConstructError::NotPGroup(group.order()))?;
    if table.exponent == group.order() {
        return Ok(Recognized::Cyclic);
    }
    let partition = cyclic_classes(group);
    if thin_levels(&table, &partition).is_empty() {
        return Ok(Recognized::Wide);
    }
    let frame = recognize_metacyclic(group).ok_or(ConstructError::Unrecognized)?;
    let e = frame.e;
    let expected_m2 = match frame.kind {
        MetacyclicKind::Dihedral => 1 + (1 << e),
        MetacyclicKind::Quaternion => 1,
        MetacyclicKind::Semidihedral => 1 + (1 << (e - 1)),
    };
    if partition.m(2) != expected_m2 {
        return Err(ConstructError::Unrecognized);
    }
    Ok(Recognized::Metacyclic(frame))
}

pub fn lambda_p_group(group: &FiniteGroup) -> Result<LambdaCertificate, ConstructError> {
    lambda_p_group_with(group, &Limits::default())
}

/// λ(Γ_G) for a p-group with a witness labelling and lower-bound evidence.
pub fn lambda_p_group_with(
    group: &FiniteGroup,
    limits: &Limits,
) -> Result<LambdaCertificate, ConstructError> {
    let n = group.order();
    let graph = build_power_graph(group);
    let recognized = recognize(group)?;
    let path_certificate = |kind: ConstructionKind,
                            built: SegmentedPath|
     -> Result<LambdaCertificate, ConstructError> {
        let witness = path_to_labelling(&graph, &built.path)?;
        let evidence = power_graph_lower_bound(&graph).evidence;
        if evidence.bound() != n as i64 {
            return Err(ConstructError::ConstructionFailed(format!(
                "lower bound {evidence:?} exceeds |G|"
            )));
        }
        Ok(LambdaCertificate {
            lambda: n as i64,
            witness,
            evidence,
            method: Method::Constructive,
            construction: Some(Construction {
                kind,
                path: built.path.vertices,
                joints: built.joints,
            }),
        })
    };
    let cert = match recognized {
        Recognized::Trivial => LambdaCertificate {
            lambda: 0,
            witness: Labelling::new(vec![0]),
            evidence: Evidence::Degenerate,
            method: Method::Constructive,
            construction: Some(Construction {
                kind: ConstructionKind::Trivial,
                path: vec![],
                joints: vec![],
            }),
        },
        Recognized::Cyclic => {
            // Γ is complete: labels 0, 2, 4, ... in element order.
            let labels = (0..n as i64).map(|i| 2 * i).collect();
            let bound = 2 * (n as i64 - 1);
            LambdaCertificate {
                lambda: bound,
                witness: Labelling::new(labels),
                evidence: Evidence::CliqueBound { size: n, bound },
                method: Method::Constructive,
                construction: Some(Construction {
                    kind: ConstructionKind::Cyclic,
                    path: vec![],
                    joints: vec![],
                }),
            }
        }
        Recognized::Wide => {
            let table = order_table(group);
            let p = table.p_group_prime.expect("p-group");
            let e = table.exponent_log().expect("p-group");
            let partition = cyclic_classes(group);
            path_certificate(
                ConstructionKind::Descent,
                descent_path(group, &graph, &partition, p, e)?,
            )?
        }
        Recognized::Metacyclic(frame) => match frame.kind {
            MetacyclicKind::Dihedral => {
                let path = HamPath::new(dihedral_path(&frame), group.identity());
                path_certificate(
                    ConstructionKind::Dihedral,
                    SegmentedPath {
                        path,
                        joints: vec![],
                    },
                )?
            }
            MetacyclicKind::Semidihedral => {
                path_certificate(ConstructionKind::Semidihedral, semidihedral_path(&frame))?
            }
            MetacyclicKind::Quaternion => {
                let (witness, path) = quaternion_labelling(group, &graph, &frame, limits)?;
                let evidence = power_graph_lower_bound(&graph).evidence;
                LambdaCertificate {
                    lambda: witness.span()?,
                    witness,
                    evidence,
                    method: Method::Constructive,
                    construction: Some(Construction {
                        kind: ConstructionKind::Quaternion,
                        path,
                        joints: vec![],
                    }),
                }
            }
        },
    };
    if !cert.verify(&graph) {
        return Err(ConstructError::ConstructionFailed(format!(
            "certificate for lambda {} does not verify",
            cert.lambda
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::labelling::{is_valid_labelling, labelling_to_path};

    #[test]
    fn interleaving_basics() {
        let v4 = make_elementary_abelian(2, 2).unwrap();
        let g = build_power_graph(&v4);
        let fam = OrderedClassFamily::new(vec![vec![1], vec![2], vec![3]], &g).unwrap();
        assert_eq!(build_interleaved_path(&fam).vertices, vec![1, 2, 3]);
        let pair = OrderedClassFamily::new(vec![vec![1], vec![2]], &g).unwrap();
        let seg = build_interleaved_path(&pair);
        assert_eq!((seg.start(), seg.end()), (1, 2));
        assert_eq!(
            OrderedClassFamily::new(vec![vec![1]], &g),
            Err(ConstructError::SingleClass)
        );
        assert_eq!(
            OrderedClassFamily::new(vec![vec![1], vec![2, 3]], &g),
            Err(ConstructError::UnequalSizes(1, 2))
        );
        assert_eq!(
            OrderedClassFamily::new(vec![vec![0], vec![1]], &g),
            Err(ConstructError::CrossAdjacency(0, 1))
        );
    }

    #[test]
    fn heisenberg_interleaving() {
        let h = make_heisenberg(3).unwrap();
        let g = build_power_graph(&h);
        let p = cyclic_classes(&h);
        let classes: Vec<Vec<usize>> = p
            .of_order(3)
            .iter()
            .map(|&c| p.class(c).members.clone())
            .collect();
        assert_eq!(classes.len(), 13);
        let fam = OrderedClassFamily::new(classes, &g).unwrap();
        let seg = build_interleaved_path(&fam);
        assert_eq!(seg.vertices.len(), 26);
        assert!(seg.vertices.windows(2).all(|w| !g.has_edge(w[0], w[1])));
    }

    #[test]
    fn descent_ordering() {
        let c3 = make_cyclic(3);
        let g = make_direct_product(&c3, &make_cyclic(9));
        let pg = build_power_graph(&g);
        let part = cyclic_classes(&g);
        let fams = order_classes_for_descent(&part, &pg, 3, 2).unwrap();
        assert_eq!(fams.len(), 2);
        let last_top = fams[0].classes().last().unwrap()[0];
        let first_low = fams[1].classes()[0][0];
        assert!(!pg.has_edge(last_top, first_low));

        let d8 = make_dihedral(8).unwrap();
        let err = order_classes_for_descent(&cyclic_classes(&d8), &build_power_graph(&d8), 2, 2);
        assert_eq!(err.unwrap_err(), ConstructError::ThinLevel { order: 4 });
    }

    #[test]
    fn general_paths() {
        for group in [
            make_elementary_abelian(2, 2).unwrap(),
            make_elementary_abelian(3, 2).unwrap(),
            make_heisenberg(3).unwrap(),
            make_direct_product(&make_cyclic(2), &make_cyclic(4)),
        ] {
            let built = construct_path_general(&group).unwrap();
            let pg = build_power_graph(&group);
            let l = path_to_labelling(&pg, &built.path).unwrap();
            assert!(is_valid_labelling(&pg, &l));
            assert_eq!(l.span().unwrap(), group.order() as i64);
            for (a, b) in built.joints {
                assert!(!pg.has_edge(a, b));
            }
        }
    }

    #[test]
    fn family_paths() {
        for e in 2..=5 {
            let path = construct_path_dihedral(e).unwrap();
            assert_eq!(path.vertices.len(), (1 << (e + 1)) - 1);
        }
        for e in 3..=5 {
            let path = construct_path_semidihedral(e).unwrap();
            assert_eq!(path.vertices.len(), (1 << (e + 1)) - 1);
        }
        assert!(matches!(
            construct_path_semidihedral(2),
            Err(ConstructError::Group(_))
        ));
        assert!(matches!(
            construct_path_dihedral(1),
            Err(ConstructError::Group(_))
        ));
    }

    #[test]
    fn semidihedral_prefix_is_a_complement_path() {
        let g = make_semidihedral(16).unwrap();
        let pg = build_power_graph(&g);
        let prefix =
            semidihedral_prefix(&MetacyclicFrame::canonical(MetacyclicKind::Semidihedral, 3));
        let names: Vec<&str> = prefix.iter().map(|&v| g.name(v)).collect();
        assert_eq!(names, ["y", "x^4", "x^2y", "x^2", "x^4y", "x^6"]);
        assert!(prefix.windows(2).all(|w| !pg.has_edge(w[0], w[1])));
    }

    #[test]
    fn quaternion_labellings() {
        for e in 2..=4 {
            let l = construct_labelling_quaternion(e, &Limits::default()).unwrap();
            let g = make_quaternion(1 << (e + 1)).unwrap();
            assert!(is_valid_labelling(&build_power_graph(&g), &l));
            assert_eq!(l.span().unwrap(), (1 << (e + 1)) + 1);
        }
    }

    #[test]
    fn dispatcher_values() {
        let cases: Vec<(FiniteGroup, i64)> = vec![
            (make_cyclic(27), 52),
            (make_quaternion(32).unwrap(), 33),
            (make_semidihedral(32).unwrap(), 32),
            (make_dihedral(8).unwrap(), 8),
            (make_cyclic(1), 0),
            (make_cyclic(2), 2),
        ];
        for (g, lambda) in cases {
            let cert = lambda_p_group(&g).unwrap();
            assert_eq!(cert.lambda, lambda, "{g:?}");
        }
        assert_eq!(
            lambda_p_group(&make_cyclic(6)).unwrap_err(),
            ConstructError::NotPGroup(6)
        );
    }

    #[test]
    fn round_trip_on_constructive_paths() {
        let g = make_semidihedral(32).unwrap();
        let pg = build_power_graph(&g);
        let cert = lambda_p_group(&g).unwrap();
        let path = HamPath::new(cert.construction.unwrap().path, g.identity());
        let l = path_to_labelling(&pg, &path).unwrap();
        assert_eq!(labelling_to_path(&pg, &l).unwrap(), path);
    }

    #[test]
    fn recognition_ignores_family_tag() {
        let sd = make_semidihedral(16).unwrap();
        let untagged = validate_group(sd.table(), sd.identity()).unwrap();
        assert!(
            matches!(recognize(&untagged).unwrap(), Recognized::Metacyclic(f) if f.kind == MetacyclicKind::Semidihedral)
        );
        assert_eq!(
            recognize(&make_elementary_abelian(2, 3).unwrap()).unwrap(),
            Recognized::Wide
        );
    }
}
