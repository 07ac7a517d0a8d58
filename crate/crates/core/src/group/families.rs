use std::collections::HashMap;

use super::{is_prime, prime_power_log, FamilyTag, FiniteGroup, GroupError};
use crate::config::DEFAULT_MAX_ORDER;

fn x_power_name(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    }
}

/// `Z_n` with `i * j = (i + j) mod n`; element `k` is named `x^k`.
pub fn make_cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group order must be positive");
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mul.push(((i + j) % n) as u32);
        }
    }
    let names = (0..n).map(x_power_name).collect();
    FiniteGroup::from_trusted(n, mul, 0, names, FamilyTag::Cyclic)
}

/// The three maximal-class 2-group families with a cyclic maximal subgroup
/// `<x>` of order `2^e` and a second generator `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetacyclicKind {
    /// `y^2 = 1`, `y^-1 x y = x^-1`.
    Dihedral,
    /// `y^2 = x^(2^(e-1))`, `y^-1 x y = x^-1`.
    Quaternion,
    /// `y^2 = 1`, `y^-1 x y = x^(-1 + 2^(e-1))`.
    Semidihedral,
}

impl MetacyclicKind {
    pub fn min_e(self) -> u32 {
        match self {
            MetacyclicKind::Dihedral | MetacyclicKind::Quaternion => 2,
            MetacyclicKind::Semidihedral => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetacyclicKind::Dihedral => "dihedral",
            MetacyclicKind::Quaternion => "quaternion",
            MetacyclicKind::Semidihedral => "semidihedral",
        }
    }

    /// Exponent `r` in `y^-1 x y = x^r`, for `<x>` of order `m = 2^e`.
    pub fn twist(self, m: usize) -> usize {
        match self {
            MetacyclicKind::Dihedral | MetacyclicKind::Quaternion => m - 1,
            MetacyclicKind::Semidihedral => m / 2 - 1,
        }
    }

    /// `k` with `y^2 = x^k`.
    pub fn y_square(self, m: usize) -> usize {
        match self {
            MetacyclicKind::Quaternion => m / 2,
            _ => 0,
        }
    }

    fn tag(self) -> FamilyTag {
        match self {
            MetacyclicKind::Dihedral => FamilyTag::Dihedral,
            MetacyclicKind::Quaternion => FamilyTag::Quaternion,
            MetacyclicKind::Semidihedral => FamilyTag::Semidihedral,
        }
    }

    /// `e` for a group of order `2^(e+1)`, checking the family's range.
    pub fn e_for_order(self, order: usize) -> Result<u32, GroupError> {
        let family = self.name();
        let log = prime_power_log(order, 2)
            .filter(|_| order >= 2)
            .ok_or(GroupError::NotPowerOfTwo { family, order })?;
        let e = log.saturating_sub(1);
        if log == 0 || e < self.min_e() {
            return Err(GroupError::ParameterTooSmall {
                family,
                order,
                min: self.min_e(),
            });
        }
        Ok(e)
    }
}

/// Elements are `x^k` at index `k` and `x^k y` at index `2^e + k`, for
/// `k = 0 .. 2^e - 1`. Multiplication uses `y x^b = x^(b r) y`, so
/// `(x^a y^s)(x^b y^t) = x^(a + b r^s + s t c) y^((s + t) mod 2)` where `y^2 = x^c`.
fn make_metacyclic(kind: MetacyclicKind, order: usize) -> Result<FiniteGroup, GroupError> {
    kind.e_for_order(order)?;
    let m = order / 2;
    let r = kind.twist(m);
    let c = kind.y_square(m);
    let split = |g: usize| if g < m { (g, 0) } else { (g - m, 1) };
    let mut mul = Vec::with_capacity(order * order);
    for g in 0..order {
        let (a, s) = split(g);
        for h in 0..order {
            let (b, t) = split(h);
            let twisted = if s == 1 { b * r } else { b };
            let k = (a + twisted + s * t * c) % m;
            let idx = if (s + t) % 2 == 1 { m + k } else { k };
            mul.push(idx as u32);
        }
    }
    let names = (0..order)
        .map(|g| {
            let (k, s) = split(g);
            match (k, s) {
                (_, 0) => x_power_name(k),
                (0, _) => "y".to_string(),
                (1, _) => "xy".to_string(),
                _ => format!("x^{k}y"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_trusted(order, mul, 0, names, kind.tag()))
}

/// Dihedral group of order `2^(e+1)`, `e >= 2`.
pub fn make_dihedral(order: usize) -> Result<FiniteGroup, GroupError> {
    make_metacyclic(MetacyclicKind::Dihedral, order)
}

/// Generalised quaternion group of order `2^(e+1)`, `e >= 2`.
pub fn make_quaternion(order: usize) -> Result<FiniteGroup, GroupError> {
    make_metacyclic(MetacyclicKind::Quaternion, order)
}

/// Semidihedral group of order `2^(e+1)`, `e >= 3`.
pub fn make_semidihedral(order: usize) -> Result<FiniteGroup, GroupError> {
    make_metacyclic(MetacyclicKind::Semidihedral, order)
}

/// `G x H` with `(g, h)` at index `g * |H| + h`.
pub fn make_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / nh, a % nh);
        for b in 0..n {
            let (b1, b2) = (b / nh, b % nh);
            mul.push((g.mul(a1, b1) * nh + h.mul(a2, b2)) as u32);
        }
    }
    let names = (0..n)
        .map(|a| format!("({};{})", g.name(a / nh), h.name(a % nh)))
        .collect();
    FiniteGroup::from_trusted(
        n,
        mul,
        g.identity() * nh + h.identity(),
        names,
        FamilyTag::Product,
    )
}

pub fn make_elementary_abelian(p: usize, k: u32) -> Result<FiniteGroup, GroupError> {
    make_elementary_abelian_with_limit(p, k, DEFAULT_MAX_ORDER)
}

/// `(C_p)^k`; element index is the base-`p` vector, names list the digits.
pub fn make_elementary_abelian_with_limit(
    p: usize,
    k: u32,
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let n = p
        .checked_pow(k)
        .filter(|&n| n <= max_order)
        .ok_or(GroupError::TooLarge {
            order: p.saturating_pow(k),
            max: max_order,
        })?;
    let digits = |mut a: usize| {
        let mut d = Vec::with_capacity(k as usize);
        for _ in 0..k {
            d.push(a % p);
            a /= p;
        }
        d
    };
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let da = digits(a);
        for b in 0..n {
            let db = digits(b);
            let idx = da
                .iter()
                .zip(&db)
                .rev()
                .fold(0, |acc, (x, y)| acc * p + (x + y) % p);
            mul.push(idx as u32);
        }
    }
    let names = (0..n)
        .map(|a| {
            let d: Vec<String> = digits(a).iter().map(|x| x.to_string()).collect();
            format!("[{}]", d.join(" "))
        })
        .collect();
    Ok(FiniteGroup::from_trusted(
        n,
        mul,
        0,
        names,
        FamilyTag::ElementaryAbelian,
    ))
}

/// Upper unitriangular 3x3 matrices over `Z_p`, `p` an odd prime: order `p^3`,
/// exponent `p`. `(a, b, c)` is the matrix with `a, b` above the diagonal and
/// `c` in the corner, stored at index `a + p b + p^2 c`.
pub fn make_heisenberg(p: usize) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if p == 2 {
        return Err(GroupError::EvenPrime);
    }
    let n = p * p * p;
    if n > DEFAULT_MAX_ORDER {
        return Err(GroupError::TooLarge {
            order: n,
            max: DEFAULT_MAX_ORDER,
        });
    }
    let split = |g: usize| (g % p, (g / p) % p, g / (p * p));
    let mut mul = Vec::with_capacity(n * n);
    for g in 0..n {
        let (a, b, c) = split(g);
        for h in 0..n {
            let (a2, b2, c2) = split(h);
            let na = (a + a2) % p;
            let nb = (b + b2) % p;
            let nc = (c + c2 + a * b2) % p;
            mul.push((na + p * nb + p * p * nc) as u32);
        }
    }
    let names = (0..n)
        .map(|g| {
            let (a, b, c) = split(g);
            format!("[{a} {b} {c}]")
        })
        .collect();
    Ok(FiniteGroup::from_trusted(
        n,
        mul,
        0,
        names,
        FamilyTag::Heisenberg,
    ))
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = perm[start];
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        let body: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Closure of the permutation group generated by `generators` (each a
/// permutation of `0..degree` in one-line notation). Elements are numbered
/// in breadth-first order from the identity; `a * b` applies `b` first.
pub fn permutation_group(
    degree: usize,
    generators: &[Vec<usize>],
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    for g in generators {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if g.len() != degree || sorted.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(GroupError::BadPermutation(format!("{g:?}")));
        }
    }
    let compose =
        |a: &[usize], b: &[usize]| -> Vec<usize> { (0..degree).map(|i| a[b[i]]).collect() };
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let next = compose(&elements[head], g);
            if !index.contains_key(&next) {
                if elements.len() == max_order {
                    return Err(GroupError::TooLarge {
                        order: elements.len() + 1,
                        max: max_order,
                    });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            mul.push(index[&compose(a, b)] as u32);
        }
    }
    let names = elements.iter().map(|p| cycle_notation(p)).collect();
    Ok(FiniteGroup::from_trusted(
        n,
        mul,
        0,
        names,
        FamilyTag::Permutation,
    ))
}

/// Symmetric group on `n` points, generated by a transposition and an n-cycle.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n <= 1 {
        return permutation_group(n.max(1), &[], DEFAULT_MAX_ORDER);
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    permutation_group(n, &[swap, cycle], DEFAULT_MAX_ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{element_order, order_table, validate_group};

    fn revalidate(g: &FiniteGroup) {
        validate_group(g.table(), g.identity()).expect("constructor output validates");
    }

    fn count_order(g: &FiniteGroup, n: usize) -> usize {
        order_table(g).count_of_order(n)
    }

    #[test]
    fn cyclic_family() {
        let g = make_cyclic(1);
        assert_eq!(g.order(), 1);
        let g = make_cyclic(9);
        revalidate(&g);
        assert_eq!(count_order(&g, 9), 6);
    }

    #[test]
    fn metacyclic_families_validate() {
        for order in [8, 16, 32, 64] {
            revalidate(&make_dihedral(order).unwrap());
            revalidate(&make_quaternion(order).unwrap());
            if order >= 16 {
                revalidate(&make_semidihedral(order).unwrap());
            }
        }
    }

    #[test]
    fn metacyclic_parameter_checks() {
        assert!(matches!(
            make_dihedral(4),
            Err(GroupError::ParameterTooSmall { .. })
        ));
        assert!(matches!(
            make_quaternion(2),
            Err(GroupError::ParameterTooSmall { .. })
        ));
        assert!(matches!(
            make_semidihedral(8),
            Err(GroupError::ParameterTooSmall { min: 3, .. })
        ));
        assert!(matches!(
            make_dihedral(12),
            Err(GroupError::NotPowerOfTwo { .. })
        ));
    }

    #[test]
    fn dihedral_8_has_five_involutions() {
        assert_eq!(count_order(&make_dihedral(8).unwrap(), 2), 5);
    }

    #[test]
    fn q8_has_one_involution() {
        let q8 = make_quaternion(8).unwrap();
        assert_eq!(count_order(&q8, 2), 1);
        assert_eq!(q8.name(2), "x^2");
        assert_eq!(element_order(&q8, 2), 2);
    }

    #[test]
    fn semidihedral_16_outside_orders() {
        let g = make_semidihedral(16).unwrap();
        let x2y = g.element_by_name("x^2y").unwrap();
        let x3y = g.element_by_name("x^3y").unwrap();
        let xy = g.element_by_name("xy").unwrap();
        assert_eq!(element_order(&g, x2y), 2);
        assert_eq!(element_order(&g, x3y), 4);
        assert_eq!(element_order(&g, xy), 4);
        // |x^k y| is 2 for even k and 4 for odd k.
        for k in 0..8 {
            assert_eq!(element_order(&g, 8 + k), if k % 2 == 0 { 2 } else { 4 });
        }
    }

    #[test]
    fn presentations_hold_literally() {
        for (kind, order) in [
            (MetacyclicKind::Dihedral, 16),
            (MetacyclicKind::Quaternion, 16),
            (MetacyclicKind::Semidihedral, 16),
            (MetacyclicKind::Semidihedral, 32),
        ] {
            let g = make_metacyclic(kind, order).unwrap();
            let m = order / 2;
            let (x, y) = (1, m);
            assert_eq!(g.pow(x, m as u64), g.identity());
            assert_eq!(element_order(&g, x), m);
            assert_eq!(g.mul(y, y), kind.y_square(m));
            let conj = g.mul(g.mul(g.inverse(y), x), y);
            assert_eq!(conj, g.pow(x, kind.twist(m) as u64), "{kind:?}");
        }
    }

    #[test]
    fn products() {
        let c2 = make_cyclic(2);
        let v4 = make_direct_product(&c2, &c2);
        revalidate(&v4);
        assert_eq!(count_order(&v4, 2), 3);
        let c2c4 = make_direct_product(&c2, &make_cyclic(4));
        let mut orders = order_table(&c2c4).orders;
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 4, 4, 4, 4]);
    }

    #[test]
    fn elementary_abelian() {
        let g = make_elementary_abelian(2, 3).unwrap();
        revalidate(&g);
        assert_eq!(count_order(&g, 2), 7);
        let g = make_elementary_abelian(3, 2).unwrap();
        assert_eq!(count_order(&g, 3), 8);
        assert!(matches!(
            make_elementary_abelian(4, 2),
            Err(GroupError::NotPrime(4))
        ));
        assert!(matches!(
            make_elementary_abelian(2, 10),
            Err(GroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn heisenberg() {
        let g = make_heisenberg(3).unwrap();
        revalidate(&g);
        assert_eq!(g.order(), 27);
        assert_eq!(order_table(&g).exponent, 3);
        assert_eq!(count_order(&g, 3), 26);
        assert!(!g.is_abelian());
        assert_eq!(make_heisenberg(2).unwrap_err(), GroupError::EvenPrime);
    }

    #[test]
    fn symmetric_groups() {
        let s3 = make_symmetric(3).unwrap();
        revalidate(&s3);
        assert_eq!(s3.order(), 6);
        assert_eq!(count_order(&s3, 2), 3);
        assert_eq!(make_symmetric(4).unwrap().order(), 24);
        assert!(permutation_group(3, &[vec![0, 0, 1]], 10).is_err());
    }
}
