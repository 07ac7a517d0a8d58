//! Finite groups as Cayley tables.
//!
//! A [`FiniteGroup`] is an immutable, validated multiplication table. The
//! family constructors live in [`families`]; everything else here is derived
//! data (element orders, cyclic subgroups, the lower central series).

mod families;

use std::collections::BTreeSet;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use families::{
    make_cyclic, make_dihedral, make_direct_product, make_elementary_abelian,
    make_elementary_abelian_with_limit, make_heisenberg, make_quaternion, make_semidihedral,
    make_symmetric, permutation_group, MetacyclicKind,
};

/// Index of an element inside its group's table.
pub type Element = usize;

/// Orders at or below this get the exhaustive O(n^3) associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(
        "multiplication table is not square: row {row} has {len} entries, expected {expected}"
    )]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("empty multiplication table")]
    Empty,
    #[error("table not closed: entry ({row}, {col}) = {value} is not an element index")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("element {identity} is not a two-sided identity (fails at {witness})")]
    NoIdentity { identity: usize, witness: usize },
    #[error("table is not a Latin square: {line} {index} repeats element {value}")]
    NotLatinSquare {
        line: &'static str,
        index: usize,
        value: usize,
    },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{family} needs e >= {min} (order {order} given)")]
    ParameterTooSmall {
        family: &'static str,
        order: usize,
        min: u32,
    },
    #[error("{family} order must be a power of two, got {order}")]
    NotPowerOfTwo { family: &'static str, order: usize },
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: usize, max: usize },
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("the Heisenberg construction needs an odd prime, got 2")]
    EvenPrime,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("element {element} out of range for a group of order {order}")]
    BadElement { element: usize, order: usize },
    #[error("{0} element names given, expected {1}")]
    NameCount(usize, usize),
    #[error("invalid permutation generator: {0}")]
    BadPermutation(String),
}

/// Where a group came from. Informational only; nothing dispatches on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Cyclic,
    Dihedral,
    Quaternion,
    Semidihedral,
    Product,
    ElementaryAbelian,
    Heisenberg,
    Permutation,
    File,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::Cyclic => "cyclic",
            FamilyTag::Dihedral => "dihedral",
            FamilyTag::Quaternion => "quaternion",
            FamilyTag::Semidihedral => "semidihedral",
            FamilyTag::Product => "product",
            FamilyTag::ElementaryAbelian => "elemab",
            FamilyTag::Heisenberg => "heisenberg",
            FamilyTag::Permutation => "permutation",
            FamilyTag::File => "file",
        };
        f.write_str(s)
    }
}

/// A validated finite group stored as a row-major Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: Element,
    names: Vec<String>,
    family: Option<FamilyTag>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("family", &self.family)
            .finish_non_exhaustive()
    }
}

/// Checks every group axiom on `table` and wraps it.
///
/// Associativity is exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_MAX`]; above
/// that, `10 * n^2` triples drawn from a fixed-seed generator are checked.
pub fn validate_group(
    table: Vec<Vec<usize>>,
    identity: Element,
) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    let mut mul = Vec::with_capacity(n * n);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(GroupError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(GroupError::NotClosed { row, col, value });
            }
            mul.push(value as u32);
        }
    }
    FiniteGroup::from_flat(n, mul, identity)
}

impl FiniteGroup {
    pub(crate) fn from_flat(
        n: usize,
        mul: Vec<u32>,
        identity: Element,
    ) -> Result<Self, GroupError> {
        debug_assert_eq!(mul.len(), n * n);
        if identity >= n {
            return Err(GroupError::BadElement {
                element: identity,
                order: n,
            });
        }
        if let Some((idx, &value)) = mul.iter().enumerate().find(|(_, &v)| v as usize >= n) {
            return Err(GroupError::NotClosed {
                row: idx / n,
                col: idx % n,
                value: value as usize,
            });
        }
        let group = FiniteGroup {
            order: n,
            mul,
            identity,
            names: (0..n).map(|i| i.to_string()).collect(),
            family: None,
        };
        group.check_identity()?;
        group.check_associative()?;
        group.check_latin()?;
        Ok(group)
    }

    /// Builds a group from a table known to be valid. Used by the family
    /// constructors, whose outputs are covered by validation tests.
    pub(crate) fn from_trusted(
        n: usize,
        mul: Vec<u32>,
        identity: Element,
        names: Vec<String>,
        family: FamilyTag,
    ) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        debug_assert_eq!(names.len(), n);
        FiniteGroup {
            order: n,
            mul,
            identity,
            names,
            family: Some(family),
        }
    }

    fn check_identity(&self) -> Result<(), GroupError> {
        let e = self.identity;
        for g in 0..self.order {
            if self.mul(e, g) != g || self.mul(g, e) != g {
                return Err(GroupError::NoIdentity {
                    identity: e,
                    witness: g,
                });
            }
        }
        Ok(())
    }

    fn check_latin(&self) -> Result<(), GroupError> {
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = self.mul(r, c);
                if seen[v] == r {
                    return Err(GroupError::NotLatinSquare {
                        line: "row",
                        index: r,
                        value: v,
                    });
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = self.mul(r, c);
                if seen[v] == c {
                    return Err(GroupError::NotLatinSquare {
                        line: "column",
                        index: c,
                        value: v,
                    });
                }
                seen[v] = c;
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0fc0_ffee);
            for _ in 0..10 * n * n {
                check(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::NameCount(names.len(), self.order));
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_family(mut self, family: FamilyTag) -> Self {
        self.family = Some(family);
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Element {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a * self.order + b] as usize
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Element) -> &str {
        &self.names[g]
    }

    pub fn family(&self) -> Option<FamilyTag> {
        self.family
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    /// Row `a` of the table.
    pub fn row(&self, a: Element) -> impl Iterator<Item = Element> + '_ {
        self.mul[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn table(&self) -> Vec<Vec<Element>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }

    pub fn inverse(&self, g: Element) -> Element {
        self.row(g)
            .position(|v| v == self.identity)
            .expect("validated group rows are permutations")
    }

    pub fn pow(&self, g: Element, mut k: u64) -> Element {
        let mut base = g;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn commutator(&self, h: Element, k: Element) -> Element {
        let hk = self.mul(self.inverse(h), self.inverse(k));
        self.mul(self.mul(hk, h), k)
    }

    pub fn element_by_name(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Least `k > 0` with `g^k = 1`.
pub fn element_order(group: &FiniteGroup, g: Element) -> usize {
    let mut k = 1;
    let mut x = g;
    while x != group.identity() {
        x = group.mul(x, g);
        k += 1;
    }
    k
}

/// `{g^k : k >= 0}` in ascending index order.
pub fn cyclic_subgroup(group: &FiniteGroup, g: Element) -> Vec<Element> {
    let mut out = vec![group.identity()];
    let mut x = g;
    while x != group.identity() {
        out.push(x);
        x = group.mul(x, g);
    }
    out.sort_unstable();
    out
}

/// The same powers in generation order `1, g, g^2, ...`.
pub fn powers(group: &FiniteGroup, g: Element) -> Vec<Element> {
    let mut out = vec![group.identity()];
    let mut x = g;
    while x != group.identity() {
        out.push(x);
        x = group.mul(x, g);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTable {
    pub orders: Vec<usize>,
    pub exponent: usize,
    /// `Some(p)` when the group order is a power of the prime `p`.
    pub p_group_prime: Option<usize>,
}

impl OrderTable {
    /// Number of elements of order exactly `n`.
    pub fn count_of_order(&self, n: usize) -> usize {
        self.orders.iter().filter(|&&o| o == n).count()
    }

    /// `e` with exponent `p^e`, for p-groups.
    pub fn exponent_log(&self) -> Option<u32> {
        self.p_group_prime
            .map(|p| prime_power_log(self.exponent, p).expect("exponent of a p-group"))
    }
}

pub fn order_table(group: &FiniteGroup) -> OrderTable {
    let orders: Vec<usize> = group.elements().map(|g| element_order(group, g)).collect();
    let exponent = orders.iter().copied().max().unwrap_or(1);
    OrderTable {
        orders,
        exponent,
        p_group_prime: prime_power_base(group.order()),
    }
}

/// `Some(p)` if `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// `Some(k)` if `n = p^k`.
pub fn prime_power_log(n: usize, p: usize) -> Option<u32> {
    let mut m = n;
    let mut k = 0;
    while m > 1 {
        if !m.is_multiple_of(p) {
            return None;
        }
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

pub fn smallest_prime_factor(n: usize) -> usize {
    debug_assert!(n >= 2);
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Smallest subgroup containing `generators`, by worklist saturation.
pub fn generated_subgroup(group: &FiniteGroup, generators: &[Element]) -> BTreeSet<Element> {
    let mut members = vec![false; group.order()];
    let mut set = BTreeSet::new();
    let mut work = vec![group.identity()];
    members[group.identity()] = true;
    let gens: Vec<Element> = {
        let mut g: Vec<Element> = generators
            .iter()
            .copied()
            .filter(|&g| g != group.identity())
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    while let Some(a) = work.pop() {
        set.insert(a);
        for &g in &gens {
            let b = group.mul(a, g);
            if !members[b] {
                members[b] = true;
                work.push(b);
            }
        }
    }
    set
}

/// `G = γ1 ⊇ γ2 ⊇ ...`, stopping at the first term equal to its predecessor
/// (which is not repeated). For nilpotent groups the last term is `{1}`.
pub fn lower_central_series(group: &FiniteGroup) -> Vec<BTreeSet<Element>> {
    let mut series: Vec<BTreeSet<Element>> = vec![group.elements().collect()];
    loop {
        let current = series.last().expect("non-empty");
        let mut commutators: Vec<Element> = Vec::new();
        let mut seen = vec![false; group.order()];
        for &h in current {
            for k in group.elements() {
                let c = group.commutator(h, k);
                if !seen[c] {
                    seen[c] = true;
                    commutators.push(c);
                }
            }
        }
        let next = generated_subgroup(group, &commutators);
        if &next == current {
            return series;
        }
        series.push(next);
    }
}

/// True iff `γ_{n-1} != 1` and `γ_n = 1` for a group of order `p^n`, `n >= 2`.
pub fn is_maximal_class(group: &FiniteGroup) -> Result<bool, GroupError> {
    let p = prime_power_base(group.order()).ok_or(GroupError::NotPGroup(group.order()))?;
    let n = prime_power_log(group.order(), p).expect("p-group") as usize;
    if n < 2 {
        return Err(GroupError::NotPGroup(group.order()));
    }
    let series = lower_central_series(group);
    // γ_i is series[i - 1]; beyond the end the series has stabilised at {1}.
    let term_size = |i: usize| series.get(i - 1).map_or(1, |s| s.len());
    Ok(term_size(n - 1) > 1 && term_size(n) == 1)
}
