//! Check labellings against a power graph and list violations.

use powerlambda::build_power_graph;
use powerlambda::group::make_dihedral;
use powerlambda::labelling::{validate_labelling, Labelling};

fn main() {
    let g = make_dihedral(8).unwrap();
    let pg = build_power_graph(&g);

    let naive = Labelling::new((0..8).collect());
    let bad = validate_labelling(&pg, &naive).unwrap();
    println!("labels 0..7: {} violations", bad.len());
    for v in bad.iter().take(3) {
        println!(
            "  {} ~ {} (distance {}) differ by {}",
            g.name(v.u),
            g.name(v.v),
            v.distance,
            v.gap
        );
    }

    // identity at -2, the rest along a path of the reduced complement
    let mut labels = vec![0i64; 8];
    let order = ["1", "y", "x", "xy", "x^2", "x^2y", "x^3", "x^3y"];
    for (i, name) in order.iter().enumerate() {
        labels[g.element_by_name(name).unwrap()] = if i == 0 { -2 } else { i as i64 - 1 };
    }
    let good = Labelling::new(labels);
    let ok = validate_labelling(&pg, &good).unwrap().is_empty();
    println!("path labelling valid: {ok}, span {}", good.span().unwrap());
}
