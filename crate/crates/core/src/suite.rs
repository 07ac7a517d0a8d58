//! Property suites over a catalogue of groups.
//!
//! Each property is checked per group and reported as a [`CheckResult`];
//! groups run in parallel but results keep catalogue order.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cli::GroupSpec;
use crate::config::Limits;
use crate::constructive::{lambda_p_group_with, recognize, thin_levels, Recognized};
use crate::group::{
    cyclic_subgroup, element_order, is_maximal_class, order_table, prime_power_log, validate_group,
    FiniteGroup, MetacyclicKind,
};
use crate::labelling::{
    exact_lambda, find_hamiltonian_path, generic_lower_bound, path_to_labelling, HamPath, HamSearch,
};
use crate::power_graph::{
    build_power_graph, check_lower_hook, classes_adjacent, cyclic_classes, euler_phi, LowerHook,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail(String),
    /// A failure the theory predicts (the property is not claimed here).
    ExpectedFail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub property: &'static str,
    pub group: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub max_order: usize,
    pub groups: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub expected_failures: usize,
    pub skipped: usize,
    pub results: Vec<CheckResult>,
}

impl Summary {
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.results
            .iter()
            .find(|r| matches!(r.status, Status::Fail(_)))
    }
}

const PRODUCTS: &[&str] = &[
    "product:cyclic:2,cyclic:4",
    "product:cyclic:2,cyclic:6",
    "product:cyclic:2,symmetric:3",
    "product:cyclic:2,cyclic:8",
    "product:cyclic:4,cyclic:4",
    "product:elemab:2,2,cyclic:4",
    "product:cyclic:2,dihedral:8",
    "product:cyclic:2,quaternion:8",
    "product:cyclic:3,symmetric:3",
    "product:cyclic:3,cyclic:9",
    "product:cyclic:2,cyclic:16",
    "product:cyclic:4,cyclic:8",
    "product:elemab:2,2,cyclic:8",
    "product:elemab:2,2,quaternion:8",
    "product:cyclic:2,dihedral:16",
    "product:cyclic:2,quaternion:16",
    "product:cyclic:2,semidihedral:16",
    "product:cyclic:4,quaternion:8",
    "product:cyclic:2,cyclic:32",
    "product:cyclic:8,cyclic:8",
    "product:cyclic:3,cyclic:27",
    "product:cyclic:9,cyclic:9",
    "product:cyclic:3,heisenberg:3",
    "product:cyclic:5,cyclic:25",
];

/// Built-in groups of order at most `max_order`, in a fixed order.
pub fn catalogue(max_order: usize) -> Vec<String> {
    let mut specs: Vec<String> = Vec::new();
    for n in 1..=max_order.min(32) {
        specs.push(format!("cyclic:{n}"));
    }
    for p in [2usize, 3, 5, 7] {
        let mut q = p;
        while q <= max_order {
            if q > 32 {
                specs.push(format!("cyclic:{q}"));
            }
            q *= p;
        }
    }
    let mut order = 8;
    while order <= max_order {
        specs.push(format!("dihedral:{order}"));
        specs.push(format!("quaternion:{order}"));
        if order >= 16 {
            specs.push(format!("semidihedral:{order}"));
        }
        order *= 2;
    }
    for p in [2usize, 3, 5, 7] {
        let mut k = 2;
        while p.pow(k) <= max_order {
            specs.push(format!("elemab:{p},{k}"));
            k += 1;
        }
    }
    for p in [3usize, 5, 7] {
        if p.pow(3) <= max_order {
            specs.push(format!("heisenberg:{p}"));
        }
    }
    for n in [3usize, 4] {
        if (1..=n).product::<usize>() <= max_order {
            specs.push(format!("symmetric:{n}"));
        }
    }
    for &spec in PRODUCTS {
        let order = GroupSpec::parse(spec).ok().and_then(|s| s.order_hint());
        if order.is_some_and(|o| o <= max_order) {
            specs.push(spec.to_string());
        }
    }
    specs
}

/// Runs every property on every group.
pub fn run_suite(groups: &[(String, FiniteGroup)], max_order: usize, limits: &Limits) -> Summary {
    let per_group: Vec<Vec<CheckResult>> = groups
        .par_iter()
        .map(|(name, g)| check_group(name, g, limits))
        .collect();
    let results: Vec<CheckResult> = per_group.into_iter().flatten().collect();
    let mut summary = Summary {
        max_order,
        groups: groups.len(),
        checks: results.len(),
        ..Summary::default()
    };
    for r in &results {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail(_) => summary.failed += 1,
            Status::ExpectedFail(_) => summary.expected_failures += 1,
            Status::Skipped(_) => summary.skipped += 1,
        }
    }
    summary.results = results;
    summary
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail(detail())
    }
}

/// A per-group property check.
pub type Property = fn(&FiniteGroup, &Limits) -> Status;

/// Every property for one group.
pub fn check_group(name: &str, group: &FiniteGroup, limits: &Limits) -> Vec<CheckResult> {
    let checks: [(&'static str, Property); 10] = [
        ("group-axioms", check_axioms),
        ("element-orders", check_orders),
        ("power-graph", check_power_graph),
        ("class-partition", check_partition),
        ("class-number-congruences", check_congruences),
        ("thin-family-class-numbers", check_thin_families),
        ("lower-hook", check_hook),
        ("path-labelling-equivalence", check_equivalence),
        ("constructive-vs-exact", check_dispatcher),
        ("thin-level-recognition", check_recognition),
    ];
    checks
        .iter()
        .map(|&(property, f)| CheckResult {
            property,
            group: name.to_string(),
            status: f(group, limits),
        })
        .collect()
}

pub fn check_axioms(g: &FiniteGroup, _: &Limits) -> Status {
    match validate_group(g.table(), g.identity()) {
        Ok(_) => Status::Pass,
        Err(e) => Status::Fail(e.to_string()),
    }
}

pub fn check_orders(g: &FiniteGroup, _: &Limits) -> Status {
    let table = order_table(g);
    for x in g.elements() {
        let o = element_order(g, x);
        if cyclic_subgroup(g, x).len() != o || !g.order().is_multiple_of(o) {
            return Status::Fail(format!("element {} of order {o}", g.name(x)));
        }
        if let Some(p) = table.p_group_prime {
            if prime_power_log(o, p).is_none() {
                return Status::Fail(format!("order {o} is not a power of {p}"));
            }
        }
    }
    verdict(
        table.exponent == table.orders.iter().copied().max().unwrap_or(1),
        || "exponent".into(),
    )
}

pub fn check_power_graph(g: &FiniteGroup, _: &Limits) -> Status {
    let pg = build_power_graph(g);
    let id = g.identity();
    if !pg.is_simple() {
        return Status::Fail("not symmetric or has loops".into());
    }
    if pg.degree(id) + 1 != g.order() {
        return Status::Fail("identity is not universal".into());
    }
    verdict(pg.diameter_at_most_two(), || "diameter exceeds 2".into())
}

pub fn check_partition(g: &FiniteGroup, _: &Limits) -> Status {
    let pg = build_power_graph(g);
    let part = cyclic_classes(g);
    let mut covered = vec![0usize; g.order()];
    for c in part.classes() {
        for &x in &c.members {
            covered[x] += 1;
        }
        if c.order > 1 && c.members.len() != euler_phi(c.order) {
            return Status::Fail(format!(
                "class of {} has {} members",
                g.name(c.representative()),
                c.members.len()
            ));
        }
        if c.members
            .iter()
            .any(|&a| c.members.iter().any(|&b| a != b && !pg.has_edge(a, b)))
        {
            return Status::Fail(format!(
                "class of {} is not a clique",
                g.name(c.representative())
            ));
        }
    }
    if covered.iter().any(|&k| k != 1) {
        return Status::Fail("classes do not partition the group".into());
    }
    let subgroups: BTreeSet<Vec<usize>> = g.elements().map(|x| cyclic_subgroup(g, x)).collect();
    for (n, m) in part.class_numbers() {
        let count = subgroups.iter().filter(|s| s.len() == n).count();
        let elements = order_table(g).count_of_order(n);
        if m != count || m * euler_phi(n) != elements {
            return Status::Fail(format!(
                "m({n}) = {m}, {count} cyclic subgroups, {elements} elements"
            ));
        }
    }
    for (i, a) in part.classes().iter().enumerate() {
        for (j, b) in part.classes().iter().enumerate().skip(i + 1) {
            if a.order == b.order && classes_adjacent(&part, i, j, &pg).unwrap_or(false) {
                return Status::Fail(format!(
                    "distinct classes of order {} are adjacent",
                    a.order
                ));
            }
        }
    }
    Status::Pass
}

/// `m(p) = 1 + p (mod p^2)` and `p | m(p^i)` for `2 <= i <= e`, for
/// non-cyclic p-groups that are not of maximal class when `p = 2`.
pub fn check_congruences(g: &FiniteGroup, _: &Limits) -> Status {
    let table = order_table(g);
    let Some(p) = table.p_group_prime else {
        return Status::Skipped("not a p-group".into());
    };
    if table.exponent == g.order() {
        return Status::Skipped("cyclic".into());
    }
    if p == 2 && is_maximal_class(g).unwrap_or(false) {
        return Status::Skipped("2-group of maximal class".into());
    }
    let part = cyclic_classes(g);
    let e = table.exponent_log().expect("p-group");
    let m1 = part.m(p);
    if m1 % (p * p) != (1 + p) % (p * p) {
        return Status::Fail(format!("m({p}) = {m1} is not 1 + {p} mod {}", p * p));
    }
    for i in 2..=e {
        let mi = part.m(p.pow(i));
        if !mi.is_multiple_of(p) {
            return Status::Fail(format!("m({}) = {mi} is not divisible by {p}", p.pow(i)));
        }
    }
    Status::Pass
}

/// Class numbers of dihedral, quaternion and semidihedral groups.
pub fn expected_thin_class_numbers(kind: MetacyclicKind, e: u32) -> Vec<(usize, usize)> {
    (1..=e)
        .map(|j| {
            let m = match (kind, j) {
                (MetacyclicKind::Dihedral, 1) => 1 + (1 << e),
                (MetacyclicKind::Quaternion, 2) => 1 + (1 << (e - 1)),
                (MetacyclicKind::Semidihedral, 1) => 1 + (1 << (e - 1)),
                (MetacyclicKind::Semidihedral, 2) => 1 + (1 << (e - 2)),
                _ => 1,
            };
            (1usize << j, m)
        })
        .collect()
}

pub fn check_thin_families(g: &FiniteGroup, _: &Limits) -> Status {
    let Ok(Recognized::Metacyclic(frame)) = recognize(g) else {
        return Status::Skipped("not dihedral, quaternion or semidihedral".into());
    };
    let part = cyclic_classes(g);
    for (n, m) in expected_thin_class_numbers(frame.kind, frame.e) {
        if part.m(n) != m {
            return Status::Fail(format!(
                "{}: m({n}) = {}, expected {m}",
                frame.kind.name(),
                part.m(n)
            ));
        }
    }
    Status::Pass
}

pub fn check_hook(g: &FiniteGroup, _: &Limits) -> Status {
    let report = check_lower_hook(g);
    let part = cyclic_classes(g);
    match (report.is_p_group, report.outcome) {
        (_, LowerHook::Pass) => Status::Pass,
        (p_group, LowerHook::Counterexample(c)) => {
            let rep = |id: usize| g.name(part.class(id).representative()).to_string();
            let detail = format!(
                "class of {} is adjacent to classes of {} and {}, which are not adjacent",
                rep(c.upper),
                rep(c.first),
                rep(c.second)
            );
            if p_group {
                Status::Fail(detail)
            } else {
                Status::ExpectedFail(detail)
            }
        }
    }
}

/// A Hamiltonian path of `(Γ \ {1})^c` exists iff the exact λ equals `|G|`.
pub fn check_equivalence(g: &FiniteGroup, limits: &Limits) -> Status {
    let n = g.order();
    if n <= 2 {
        return Status::Skipped("order at most 2".into());
    }
    if n > limits.exact_max_vertices {
        return Status::Skipped(format!(
            "order above the exact search cap {}",
            limits.exact_max_vertices
        ));
    }
    let pg = build_power_graph(g);
    let (reduced, map) = pg.reduced_complement();
    let found = match find_hamiltonian_path(&reduced, limits) {
        Ok(HamSearch::Found(p)) => Some(p.iter().map(|&i| map[i]).collect::<Vec<_>>()),
        Ok(HamSearch::Absent) => None,
        Err(e) => return Status::Fail(format!("path search: {e}")),
    };
    let exact = match exact_lambda(&pg, generic_lower_bound(&pg), limits) {
        Ok(c) => c.lambda,
        Err(e) => return Status::Fail(format!("exact search: {e}")),
    };
    if let Some(path) = &found {
        let ok = path_to_labelling(&pg, &HamPath::new(path.clone(), g.identity()))
            .is_ok_and(|l| l.span() == Ok(n as i64));
        if !ok {
            return Status::Fail("found path does not give a span-|G| labelling".into());
        }
    }
    verdict(found.is_some() == (exact == n as i64), || {
        format!(
            "path found: {}, exact lambda {exact}, |G| = {n}",
            found.is_some()
        )
    })
}

/// λ predicted for a p-group: `2(p^e - 1)` if cyclic, `|G| + 1` if
/// generalised quaternion, `|G|` otherwise.
pub fn predicted_lambda(g: &FiniteGroup) -> Option<i64> {
    let n = g.order() as i64;
    Some(match recognize(g).ok()? {
        Recognized::Trivial => 0,
        Recognized::Cyclic => 2 * (n - 1),
        Recognized::Metacyclic(f) if f.kind == MetacyclicKind::Quaternion => n + 1,
        _ => n,
    })
}

pub fn check_dispatcher(g: &FiniteGroup, limits: &Limits) -> Status {
    if order_table(g).p_group_prime.is_none() && g.order() > 1 {
        return Status::Skipped("not a p-group".into());
    }
    let pg = build_power_graph(g);
    let cert = match lambda_p_group_with(g, limits) {
        Ok(c) => c,
        Err(e) => return Status::Fail(format!("constructive: {e}")),
    };
    if !cert.verify(&pg) {
        return Status::Fail("constructive certificate does not verify".into());
    }
    if predicted_lambda(g) != Some(cert.lambda) {
        return Status::Fail(format!(
            "constructive lambda {} differs from {:?}",
            cert.lambda,
            predicted_lambda(g)
        ));
    }
    if g.order() > limits.exact_max_vertices {
        return Status::Pass;
    }
    match exact_lambda(&pg, generic_lower_bound(&pg), limits) {
        Ok(exact) => verdict(exact.lambda == cert.lambda, || {
            format!("constructive {} vs exact {}", cert.lambda, exact.lambda)
        }),
        Err(e) => Status::Fail(format!("exact search: {e}")),
    }
}

/// Some `m(p^i) = 1` iff the group is cyclic, dihedral, quaternion or
/// semidihedral.
pub fn check_recognition(g: &FiniteGroup, _: &Limits) -> Status {
    let table = order_table(g);
    if table.p_group_prime.is_none() {
        return Status::Skipped("not a p-group".into());
    }
    let thin = !thin_levels(&table, &cyclic_classes(g)).is_empty();
    match recognize(g) {
        Ok(Recognized::Cyclic) | Ok(Recognized::Metacyclic(_)) => {
            verdict(thin, || "family without thin level".into())
        }
        Ok(Recognized::Wide) => verdict(!thin, || "thin level on a wide group".into()),
        Ok(Recognized::Trivial) => Status::Pass,
        Err(e) => Status::Fail(e.to_string()),
    }
}
