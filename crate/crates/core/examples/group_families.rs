//! Build the standard families and print their element orders.

use powerlambda::group::{
    make_cyclic, make_dihedral, make_direct_product, make_elementary_abelian, make_heisenberg,
    make_quaternion, make_semidihedral, make_symmetric, order_table, FiniteGroup,
};

fn describe(label: &str, g: &FiniteGroup) {
    let t = order_table(g);
    let p = t.p_group_prime.map_or("-".to_string(), |p| p.to_string());
    println!(
        "{label:<14} order {:>3}  exponent {:>2}  p {p:>2}  abelian {}",
        g.order(),
        t.exponent,
        g.is_abelian()
    );
}

fn main() {
    describe("C8", &make_cyclic(8));
    describe("D16", &make_dihedral(16).unwrap());
    describe("Q16", &make_quaternion(16).unwrap());
    describe("SD16", &make_semidihedral(16).unwrap());
    describe("C2^3", &make_elementary_abelian(2, 3).unwrap());
    describe("Heisenberg(3)", &make_heisenberg(3).unwrap());
    describe("S4", &make_symmetric(4).unwrap());
    describe(
        "C2 x Q8",
        &make_direct_product(&make_cyclic(2), &make_quaternion(8).unwrap()),
    );

    let sd = make_semidihedral(16).unwrap();
    let (x, y) = (
        sd.element_by_name("x").unwrap(),
        sd.element_by_name("y").unwrap(),
    );
    // y x y^-1 = x^3 in SD16
    let conj = sd.mul(sd.mul(y, x), sd.inverse(y));
    println!("in SD16, y x y^-1 = {}", sd.name(conj));
}
