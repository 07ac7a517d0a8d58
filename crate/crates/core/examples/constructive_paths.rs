//! Certified lambda for p-groups from explicit constructions.

use powerlambda::cli::GroupSpec;
use powerlambda::lambda_p_group;
use powerlambda::Limits;

fn main() {
    for spec in [
        "cyclic:9",
        "elemab:2,4",
        "heisenberg:3",
        "dihedral:32",
        "semidihedral:32",
        "quaternion:32",
        "product:cyclic:2,quaternion:16",
    ] {
        let g = GroupSpec::parse(spec)
            .unwrap()
            .build(&Limits::default())
            .unwrap();
        let cert = lambda_p_group(&g).unwrap();
        let kind = cert
            .construction
            .as_ref()
            .map(|c| format!("{:?}", c.kind))
            .unwrap_or_default();
        println!("{spec:<32} lambda {:>3}  via {kind}", cert.lambda);
    }

    let sd = GroupSpec::parse("semidihedral:16")
        .unwrap()
        .build(&Limits::default())
        .unwrap();
    let c = lambda_p_group(&sd).unwrap().construction.unwrap();
    let path: Vec<&str> = c.path.iter().map(|&x| sd.name(x)).collect();
    println!("SD16 path: {}", path.join(" "));
    for (a, b) in c.joints {
        println!("  joint {} - {}", sd.name(a), sd.name(b));
    }
}
