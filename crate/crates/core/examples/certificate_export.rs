//! Certificates as JSON, labellings as CSV, graphs as DOT.

use powerlambda::group::make_quaternion;
use powerlambda::{build_power_graph, io, lambda_p_group};

fn main() {
    let q8 = make_quaternion(8).unwrap();
    let cert = lambda_p_group(&q8).unwrap();
    let json = io::certificate_json(&cert);
    println!("{json}");
    assert_eq!(io::parse_certificate_json(&json).unwrap(), cert);

    print!("{}", io::write_labelling_csv(&q8, &cert.witness).unwrap());
    print!(
        "{}",
        io::write_dot(&build_power_graph(&q8), q8.names(), "Q8")
    );
}
