//! Command-line interface: group specs, reports and subcommands.
//!
//! Exit codes: 0 success, 1 input error, 2 mathematical violation or
//! method disagreement, 3 resource limit (size cap or timeout).

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::Limits;
use crate::constructive::{lambda_p_group_with, recognize, ConstructError};
use crate::group::{
    is_maximal_class, make_cyclic, make_dihedral, make_direct_product,
    make_elementary_abelian_with_limit, make_heisenberg, make_quaternion, make_semidihedral,
    order_table, permutation_group, FiniteGroup, GroupError,
};
use crate::io::{self, CertificateDoc, IoError};
use crate::labelling::{
    exact_lambda, generic_lower_bound, validate_labelling, LabelError, Labelling,
    LambdaCertificate, SearchError,
};
use crate::power_graph::{build_power_graph, check_lower_hook, cyclic_classes, LowerHook};
use crate::suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Violation(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Group(g) => g.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::TooLarge { .. } | SearchError::Timeout { .. } => {
                CliError::Resource(e.to_string())
            }
            SearchError::InvalidStartBound { .. } => CliError::Violation(e.to_string()),
            SearchError::Label(l) => CliError::Input(l.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::NotPGroup(_) => CliError::Input(e.to_string()),
            ConstructError::Group(g) => g.into(),
            ConstructError::Search(s) => s.into(),
            other => CliError::Violation(other.to_string()),
        }
    }
}

/// A group description such as `dihedral:16` or
/// `product:cyclic:2,quaternion:8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Orders, not exponents, for the three 2-group families.
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    ElemAb {
        p: usize,
        k: u32,
    },
    Heisenberg(usize),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, CliError> {
        let text = text.trim();
        let bad = || CliError::Input(format!("cannot parse group spec {text:?}"));
        let (kind, rest) = text.split_once(':').ok_or_else(bad)?;
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        Ok(match kind {
            "cyclic" => GroupSpec::Cyclic(num(rest)?),
            "dihedral" => GroupSpec::Dihedral(num(rest)?),
            "quaternion" => GroupSpec::Quaternion(num(rest)?),
            "semidihedral" => GroupSpec::Semidihedral(num(rest)?),
            "heisenberg" => GroupSpec::Heisenberg(num(rest)?),
            "symmetric" => GroupSpec::Symmetric(num(rest)?),
            "elemab" => {
                let (p, k) = rest.split_once(',').ok_or_else(bad)?;
                GroupSpec::ElemAb {
                    p: num(p)?,
                    k: u32::try_from(num(k)?).map_err(|_| bad())?,
                }
            }
            "product" => {
                // The first comma that leaves two parseable halves.
                rest.match_indices(',')
                    .find_map(|(i, _)| {
                        let left = GroupSpec::parse(&rest[..i]).ok()?;
                        let right = GroupSpec::parse(&rest[i + 1..]).ok()?;
                        Some(GroupSpec::Product(Box::new(left), Box::new(right)))
                    })
                    .ok_or_else(bad)?
            }
            "file" if !rest.is_empty() => GroupSpec::File(PathBuf::from(rest)),
            _ => return Err(bad()),
        })
    }

    /// The order the spec describes, when known without building it.
    pub fn order_hint(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n)
            | GroupSpec::Dihedral(n)
            | GroupSpec::Quaternion(n)
            | GroupSpec::Semidihedral(n) => Some(*n),
            GroupSpec::ElemAb { p, k } => p.checked_pow(*k),
            GroupSpec::Heisenberg(p) => p.checked_pow(3),
            GroupSpec::Symmetric(n) => (1..=*n).try_fold(1usize, |acc, i| acc.checked_mul(i)),
            GroupSpec::Product(a, b) => a.order_hint()?.checked_mul(b.order_hint()?),
            GroupSpec::File(_) => None,
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup, CliError> {
        let max = limits.max_order;
        let too_large = |order| CliError::from(GroupError::TooLarge { order, max });
        if let Some(order) = self.order_hint().filter(|&o| o > max) {
            return Err(too_large(order));
        }
        Ok(match self {
            GroupSpec::Cyclic(0) => return Err(CliError::Input("cyclic group of order 0".into())),
            GroupSpec::Cyclic(n) => make_cyclic(*n),
            GroupSpec::Dihedral(n) => make_dihedral(*n)?,
            GroupSpec::Quaternion(n) => make_quaternion(*n)?,
            GroupSpec::Semidihedral(n) => make_semidihedral(*n)?,
            GroupSpec::ElemAb { p, k } => make_elementary_abelian_with_limit(*p, *k, max)?,
            GroupSpec::Heisenberg(p) => make_heisenberg(*p)?,
            GroupSpec::Symmetric(n) => {
                let n = (*n).max(1);
                let mut gens = Vec::new();
                if n > 1 {
                    let mut swap: Vec<usize> = (0..n).collect();
                    swap.swap(0, 1);
                    gens.push(swap);
                    gens.push((0..n).map(|i| (i + 1) % n).collect());
                }
                permutation_group(n, &gens, max)?
            }
            GroupSpec::Product(a, b) => {
                let (a, b) = (a.build(limits)?, b.build(limits)?);
                let order = a.order().saturating_mul(b.order());
                if order > max {
                    return Err(too_large(order));
                }
                make_direct_product(&a, &b)
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let group = io::parse_cayley(&text)?;
                if group.order() > max {
                    return Err(too_large(group.order()));
                }
                group
            }
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Semidihedral(n) => write!(f, "semidihedral:{n}"),
            GroupSpec::ElemAb { p, k } => write!(f, "elemab:{p},{k}"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "powerlambda",
    version,
    about = "Lambda numbers of power graphs of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Per-search time budget in seconds.
    #[arg(long, global = true, default_value_t = 60)]
    pub timeout: u64,
    /// Largest group order handed to the exact search.
    #[arg(long, global = true)]
    pub exact_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Constructive,
    Exact,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orders, class numbers, recognition and a λ certificate as JSON.
    Analyze {
        spec: String,
        /// Human-readable text instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Omit timing so output is byte-stable.
        #[arg(long)]
        stable: bool,
    },
    /// Certified λ by construction, exact search, or both.
    Lambda {
        spec: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Constructive)]
        method: MethodArg,
        /// Write the witness labelling as `element,label` CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Validate an `element,label` CSV against the group's power graph.
    Check { spec: String, labelling: PathBuf },
    /// Write the power graph or Cayley table.
    Export {
        spec: String,
        /// dot, edges or cayley.
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Property suites over the built-in catalogue.
    Suite {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        /// Extra groups to check (repeatable).
        #[arg(long)]
        include: Vec<String>,
        /// JSON summary instead of one line per check.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        stable: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut limits = Limits::from_env().with_timeout(Duration::from_secs(cli.timeout));
    if let Some(m) = cli.exact_max {
        limits.exact_max_vertices = m;
    }
    match execute(&cli.command, &limits, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn execute(command: &Command, limits: &Limits, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Analyze {
            spec,
            pretty,
            stable,
        } => {
            let report = analyze(spec, limits)?;
            let text = if *pretty {
                report.render()
            } else {
                report.to_json(*stable)
            };
            writeln!(out, "{text}").map_err(io_err)?;
            Ok(0)
        }
        Command::Lambda { spec, method, csv } => lambda(spec, *method, csv.as_deref(), limits, out),
        Command::Check { spec, labelling } => check(spec, labelling, limits, out),
        Command::Export {
            spec,
            format,
            output,
        } => {
            let group = GroupSpec::parse(spec)?.build(limits)?;
            let text = export(&group, format, spec)?;
            match output {
                Some(path) => std::fs::write(path, text).map_err(io_err)?,
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(0)
        }
        Command::Suite {
            max_order,
            include,
            json,
            stable,
        } => {
            let mut specs = suite::catalogue(*max_order);
            specs.extend(include.iter().cloned());
            let groups = specs
                .into_iter()
                .map(|s| Ok((s.clone(), GroupSpec::parse(&s)?.build(limits)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let started = Instant::now();
            let summary = suite::run_suite(&groups, *max_order, limits);
            if *json {
                let mut v = serde_json::to_value(&summary).expect("summary serialises");
                if !*stable {
                    v["timing_ms"] = json!(started.elapsed().as_millis() as u64);
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))
                    .map_err(io_err)?;
            } else {
                for r in &summary.results {
                    let (tag, detail) = match &r.status {
                        suite::Status::Pass => ("PASS", None),
                        suite::Status::Fail(d) => ("FAIL", Some(d)),
                        suite::Status::ExpectedFail(d) => ("XFAIL", Some(d)),
                        suite::Status::Skipped(d) => ("SKIP", Some(d)),
                    };
                    match detail {
                        Some(d) => writeln!(out, "{tag} {} {}: {d}", r.property, r.group),
                        None => writeln!(out, "{tag} {} {}", r.property, r.group),
                    }
                    .map_err(io_err)?;
                }
                if let Some(first) = summary.first_failure() {
                    writeln!(out, "first failure: {} on {}", first.property, first.group)
                        .map_err(io_err)?;
                }
                writeln!(
                    out,
                    "{} groups, {} checks: {} passed, {} failed, {} expected failures, {} skipped",
                    summary.groups,
                    summary.checks,
                    summary.passed,
                    summary.failed,
                    summary.expected_failures,
                    summary.skipped
                )
                .map_err(io_err)?;
            }
            Ok(if summary.failed > 0 { 2 } else { 0 })
        }
    }
}

/// Everything `analyze` reports about one group.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub spec: String,
    pub order: usize,
    pub exponent: usize,
    pub prime: Option<usize>,
    pub abelian: bool,
    /// Dispatcher recognition for p-groups, `not-p-group` otherwise.
    pub family: String,
    pub maximal_class: Option<bool>,
    pub class_numbers: BTreeMap<usize, usize>,
    pub power_graph_edges: usize,
    pub lower_hook: String,
    pub lambda: Option<i64>,
    pub certificate: Option<CertificateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn to_json(&self, stable: bool) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        if !stable {
            v["timing_ms"] = json!(self.elapsed.as_secs_f64() * 1000.0);
        }
        serde_json::to_string_pretty(&v).expect("json")
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let prime = self.prime.map_or("-".to_string(), |p| p.to_string());
        s += &format!("group        {}\n", self.spec);
        s += &format!("order        {}\n", self.order);
        s += &format!("exponent     {}\n", self.exponent);
        s += &format!("p-group      {prime}\n");
        s += &format!("family       {}\n", self.family);
        if let Some(mc) = self.maximal_class {
            s += &format!("max class    {mc}\n");
        }
        s += "class numbers\n";
        for (n, m) in &self.class_numbers {
            s += &format!("  m({n}) = {m}\n");
        }
        s += &format!("lower hook   {}\n", self.lower_hook);
        match self.lambda {
            Some(l) => s += &format!("lambda       {l}\n"),
            None => s += "lambda       unknown\n",
        }
        if let Some(note) = &self.note {
            s += &format!("note         {note}\n");
        }
        s.pop();
        s
    }
}

pub fn analyze(spec: &str, limits: &Limits) -> Result<Report, CliError> {
    let started = Instant::now();
    let parsed = GroupSpec::parse(spec)?;
    let group = parsed.build(limits)?;
    let table = order_table(&group);
    let graph = build_power_graph(&group);
    let partition = cyclic_classes(&group);
    let hook = check_lower_hook(&group);
    let lower_hook = match hook.outcome {
        LowerHook::Pass => "pass".to_string(),
        LowerHook::Counterexample(c) => {
            let rep = |id: usize| group.name(partition.class(id).representative()).to_string();
            format!(
                "counterexample ({}; {}, {})",
                rep(c.upper),
                rep(c.first),
                rep(c.second)
            )
        }
    };
    let (family, maximal_class, certificate, note) =
        if table.p_group_prime.is_some() || group.order() == 1 {
            let family = recognize(&group)?.label().to_string();
            let mc = if group.order() > 1 {
                Some(is_maximal_class(&group)?)
            } else {
                None
            };
            (family, mc, Some(lambda_p_group_with(&group, limits)?), None)
        } else if group.order() <= limits.exact_max_vertices {
            let cert = exact_lambda(&graph, generic_lower_bound(&graph), limits)?;
            ("not-p-group".to_string(), None, Some(cert), None)
        } else {
            let note = format!(
                "not a p-group and above the exact search cap {}",
                limits.exact_max_vertices
            );
            ("not-p-group".to_string(), None, None, Some(note))
        };
    if let Some(cert) = &certificate {
        if !cert.verify(&graph) {
            return Err(CliError::Violation("certificate does not verify".into()));
        }
    }
    Ok(Report {
        spec: parsed.to_string(),
        order: group.order(),
        exponent: table.exponent,
        prime: table.p_group_prime,
        abelian: group.is_abelian(),
        family,
        maximal_class,
        class_numbers: partition.class_numbers(),
        power_graph_edges: graph.edge_count(),
        lower_hook,
        lambda: certificate.as_ref().map(|c| c.lambda),
        certificate: certificate.as_ref().map(CertificateDoc::from),
        note,
        elapsed: started.elapsed(),
    })
}

fn exact_certificate(
    group: &FiniteGroup,
    limits: &Limits,
) -> Result<LambdaCertificate, SearchError> {
    let graph = build_power_graph(group);
    exact_lambda(&graph, generic_lower_bound(&graph), limits)
}

fn lambda(
    spec: &str,
    method: MethodArg,
    csv: Option<&Path>,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let parsed = GroupSpec::parse(spec)?;
    let group = parsed.build(limits)?;
    let doc = |c: &LambdaCertificate| serde_json::to_value(CertificateDoc::from(c)).expect("json");
    let timeout_value = |e: &SearchError| match e {
        SearchError::Timeout { lower, upper } => {
            Some(json!({ "status": "timeout", "lower": lower, "upper": upper }))
        }
        _ => None,
    };
    let (value, witness, code) = match method {
        MethodArg::Constructive => {
            let cert = lambda_p_group_with(&group, limits)?;
            (
                json!({ "spec": parsed.to_string(), "certificate": doc(&cert) }),
                Some(cert),
                0,
            )
        }
        MethodArg::Exact => match exact_certificate(&group, limits) {
            Ok(cert) => (
                json!({ "spec": parsed.to_string(), "certificate": doc(&cert) }),
                Some(cert),
                0,
            ),
            Err(e) => match timeout_value(&e) {
                Some(v) => (json!({ "spec": parsed.to_string(), "exact": v }), None, 3),
                None => return Err(e.into()),
            },
        },
        MethodArg::Both => {
            let cert = lambda_p_group_with(&group, limits)?;
            let (exact, code) = if group.order() > limits.exact_max_vertices {
                (
                    json!({ "status": "skipped", "reason": "above the exact search cap" }),
                    0,
                )
            } else {
                match exact_certificate(&group, limits) {
                    Ok(e) if e.lambda == cert.lambda => (doc(&e), 0),
                    Ok(e) => (doc(&e), 2),
                    Err(e) => match timeout_value(&e) {
                        Some(v) => (v, 3),
                        None => return Err(e.into()),
                    },
                }
            };
            let agree = if code == 2 {
                json!(false)
            } else if code == 0 && exact.get("lambda").is_some() {
                json!(true)
            } else {
                Value::Null
            };
            let value = json!({
                "spec": parsed.to_string(),
                "constructive": doc(&cert),
                "exact": exact,
                "agree": agree,
            });
            (value, Some(cert), code)
        }
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&value).expect("json")
    )
    .map_err(io_err)?;
    if let (Some(path), Some(cert)) = (csv, &witness) {
        std::fs::write(path, io::write_labelling_csv(&group, &cert.witness)?).map_err(io_err)?;
    }
    Ok(code)
}

fn check(spec: &str, path: &Path, limits: &Limits, out: &mut dyn Write) -> Result<i32, CliError> {
    let group = GroupSpec::parse(spec)?.build(limits)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let labels = io::parse_labelling_csv(&group, &text)?;
    let labelling = Labelling::from_partial(labels).map_err(|e| match e {
        LabelError::MissingLabel { vertex } => {
            CliError::Input(format!("element {} has no label", group.name(vertex)))
        }
        other => CliError::Input(other.to_string()),
    })?;
    let graph = build_power_graph(&group);
    let violations =
        validate_labelling(&graph, &labelling).map_err(|e| CliError::Input(e.to_string()))?;
    let span = labelling
        .span()
        .map_err(|e| CliError::Input(e.to_string()))?;
    for v in &violations {
        writeln!(
            out,
            "violation: {} and {} at distance {} have labels {} apart",
            group.name(v.u),
            group.name(v.v),
            v.distance,
            v.gap
        )
        .map_err(io_err)?;
    }
    if violations.is_empty() {
        writeln!(out, "valid: span {span}").map_err(io_err)?;
        Ok(0)
    } else {
        writeln!(out, "invalid: {} violations, span {span}", violations.len()).map_err(io_err)?;
        Ok(2)
    }
}

pub fn export(group: &FiniteGroup, format: &str, title: &str) -> Result<String, CliError> {
    Ok(match format {
        "dot" => io::write_dot(&build_power_graph(group), group.names(), title),
        "edges" => io::write_edge_list(&build_power_graph(group)),
        "cayley" => io::write_cayley(group),
        other => {
            return Err(CliError::Input(format!(
                "unknown export format {other:?} (dot, edges, cayley)"
            )))
        }
    })
}

/// Recognised family label for reporting.
pub fn family_label(group: &FiniteGroup) -> String {
    match recognize(group) {
        Ok(r) => r.label().to_string(),
        Err(ConstructError::NotPGroup(_)) => "not-p-group".to_string(),
        Err(e) => format!("unrecognised ({e})"),
    }
}
