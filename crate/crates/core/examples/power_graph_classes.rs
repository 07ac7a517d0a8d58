//! Power graph, cyclic classes and the lower hook check.

use powerlambda::group::{make_cyclic, make_semidihedral};
use powerlambda::power_graph::{check_lower_hook, LowerHook};
use powerlambda::{build_power_graph, cyclic_classes};

fn main() {
    let g = make_semidihedral(16).unwrap();
    let pg = build_power_graph(&g);
    println!(
        "SD16 power graph: {} vertices, {} edges",
        pg.len(),
        pg.edge_count()
    );

    let part = cyclic_classes(&g);
    for class in part.classes() {
        let names: Vec<&str> = class.members.iter().map(|&x| g.name(x)).collect();
        println!("  order {:>2}: {{{}}}", class.order, names.join(", "));
    }
    for (n, m) in part.class_numbers() {
        println!("  m({n}) = {m}");
    }

    for (label, group) in [("SD16", g.clone()), ("C6", make_cyclic(6))] {
        match check_lower_hook(&group).outcome {
            LowerHook::Pass => println!("{label}: lower hook holds"),
            LowerHook::Counterexample(c) => {
                let rep = |id| {
                    group
                        .name(cyclic_classes(&group).class(id).representative())
                        .to_string()
                };
                println!(
                    "{label}: fails at ({}; {}, {})",
                    rep(c.upper),
                    rep(c.first),
                    rep(c.second)
                );
            }
        }
    }
}
