//! Hamiltonian paths of the reduced complement and the labellings they give.

use powerlambda::group::{make_dihedral, make_quaternion};
use powerlambda::labelling::{
    find_hamiltonian_path, labelling_to_path, path_to_labelling, HamPath, HamSearch,
};
use powerlambda::{build_power_graph, Limits};

fn main() {
    let limits = Limits::default();
    for (label, g) in [
        ("D16", make_dihedral(16).unwrap()),
        ("Q8", make_quaternion(8).unwrap()),
    ] {
        let pg = build_power_graph(&g);
        let (reduced, map) = pg.reduced_complement();
        match find_hamiltonian_path(&reduced, &limits).unwrap() {
            HamSearch::Found(p) => {
                let path = HamPath::new(p.iter().map(|&i| map[i]).collect(), g.identity());
                let names: Vec<&str> = path.vertices.iter().map(|&x| g.name(x)).collect();
                println!("{label}: {}", names.join(" - "));
                let l = path_to_labelling(&pg, &path).unwrap();
                println!(
                    "  span {} labelling, back to path: {}",
                    l.span().unwrap(),
                    labelling_to_path(&pg, &l).is_ok()
                );
            }
            HamSearch::Absent => println!(
                "{label}: no Hamiltonian path, so lambda exceeds {}",
                g.order()
            ),
        }
    }
}
