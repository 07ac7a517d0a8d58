//! Lambda numbers of power graphs of finite groups.
//!
//! The crate is organised around the computation pipeline:
//!
//! - [`group`]: Cayley-table groups, the dihedral / quaternion / semidihedral
//!   families and friends, element orders and the lower central series.
//! - [`power_graph`]: the power graph, its complement, cyclic classes and
//!   class numbers, class adjacency and the lower hook check.
//! - [`labelling`]: L(j,k)-labelling validation, the Hamiltonian-path /
//!   span-|G| labelling correspondence and the exact search oracle.
//! - [`constructive`]: explicit Hamiltonian paths for p-groups and the
//!   dispatcher that produces a λ certificate for any p-group.
//! - [`cli`] and [`suite`]: the command-line surface and the property suites
//!   it drives.
//!
//! ```
//! use powerlambda::{constructive, group};
//!
//! let sd16 = group::make_semidihedral(16).unwrap();
//! let cert = constructive::lambda_p_group(&sd16).unwrap();
//! assert_eq!(cert.lambda, 16);
//! ```

pub mod cli;
pub mod config;
pub mod constructive;
pub mod group;
pub mod io;
pub mod labelling;
pub mod power_graph;
pub mod suite;

pub use config::Limits;
pub use constructive::lambda_p_group;
pub use group::FiniteGroup;
pub use labelling::{exact_lambda, Labelling, LambdaCertificate};
pub use power_graph::{build_power_graph, cyclic_classes, ClassPartition, Graph, PowerGraph};
