//! The exact search oracle on groups outside the constructive range.

use powerlambda::group::{make_cyclic, make_direct_product, make_symmetric};
use powerlambda::labelling::{exact_lambda, generic_lower_bound};
use powerlambda::{build_power_graph, FiniteGroup, Limits};

fn main() {
    let limits = Limits::default();
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("C6", make_cyclic(6)),
        ("C12", make_cyclic(12)),
        ("S3", make_symmetric(3).unwrap()),
        ("S4", make_symmetric(4).unwrap()),
        (
            "C2 x C6",
            make_direct_product(&make_cyclic(2), &make_cyclic(6)),
        ),
    ];
    for (label, g) in groups {
        let pg = build_power_graph(&g);
        let cert = exact_lambda(&pg, generic_lower_bound(&pg), &limits).unwrap();
        println!(
            "{label:<8} |G| = {:>2}  lambda = {:>2}  evidence {:?}",
            g.order(),
            cert.lambda,
            cert.evidence
        );
    }
}
