//! Text formats: Cayley tables, edge lists, DOT, labelling CSV and
//! certificate JSON.
//!
//! Cayley table:
//!
//! ```text
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! names: 1,x,x^2
//! ```
//!
//! The first line is the order `n`, then `n` rows of 0-based indices. Element
//! 0 must be the identity. The `names:` line is optional.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructive::Construction;
use crate::group::{validate_group, FamilyTag, FiniteGroup, GroupError};
use crate::labelling::{Evidence, Labelling, LambdaCertificate, Method};
use crate::power_graph::Graph;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("element {0} labelled twice")]
    DuplicateElement(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

pub fn write_cayley(group: &FiniteGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", group.order());
    for a in group.elements() {
        let row: Vec<String> = group.row(a).map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let _ = writeln!(out, "names: {}", group.names().join(","));
    out
}

/// Parses and validates a Cayley table; element 0 is the identity.
pub fn parse_cayley(text: &str) -> Result<FiniteGroup, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| parse_err(1, format!("expected the group order, got {first:?}")))?;
    if n == 0 {
        return Err(parse_err(1, "group order must be positive"));
    }
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| parse_err(table.len() + 2, "missing table row"))?;
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(idx + 1, format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let names = match lines.next() {
        None => None,
        Some((idx, line)) => {
            let rest = line
                .trim()
                .strip_prefix("names:")
                .ok_or_else(|| parse_err(idx + 1, "expected `names:` or end of input"))?;
            Some(
                rest.split(',')
                    .map(|s| s.trim().to_string())
                    .collect::<Vec<_>>(),
            )
        }
    };
    if let Some((idx, _)) = lines.next() {
        return Err(parse_err(idx + 1, "trailing content"));
    }
    let group = validate_group(table, 0)?.with_family(FamilyTag::File);
    Ok(match names {
        Some(names) => group.with_names(names)?,
        None => group,
    })
}

/// `n`, then one `u v` line per edge, `u < v`, sorted.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = format!("{}\n", graph.len());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| parse_err(1, "expected vertex count"))?;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts[..] else {
            return Err(parse_err(idx + 1, "expected `u v`"));
        };
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| parse_err(idx + 1, format!("bad vertex {t:?}")))
        };
        edges.push((parse(u)?, parse(v)?));
    }
    Graph::from_edges(n, &edges).map_err(|e| parse_err(0, e.to_string()))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT with vertex labels taken from `names`.
pub fn write_dot(graph: &Graph, names: &[String], title: &str) -> String {
    let mut out = format!("graph \"{}\" {{\n", dot_escape(title));
    for (v, name) in names.iter().enumerate().take(graph.len()) {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", dot_escape(name));
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct LabelRow {
    element: String,
    label: i64,
}

/// `element,label` rows, elements by name.
pub fn write_labelling_csv(group: &FiniteGroup, labelling: &Labelling) -> Result<String, IoError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for (g, &label) in labelling.labels().iter().enumerate() {
        writer.serialize(LabelRow {
            element: group.name(g).to_string(),
            label,
        })?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| IoError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Reads `element,label` rows; an element is a name of `group` or, failing
/// that, an index. Unlisted elements come back as `None`.
pub fn parse_labelling_csv(group: &FiniteGroup, text: &str) -> Result<Vec<Option<i64>>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["element", "label"] {
        return Err(parse_err(1, "expected header `element,label`"));
    }
    let mut labels = vec![None; group.order()];
    for row in reader.deserialize::<LabelRow>() {
        let row = row?;
        let g = group
            .element_by_name(&row.element)
            .or_else(|| {
                row.element
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < group.order())
            })
            .ok_or_else(|| IoError::UnknownElement(row.element.clone()))?;
        if labels[g].replace(row.label).is_some() {
            return Err(IoError::DuplicateElement(g));
        }
    }
    Ok(labels)
}

/// Serialised form of a [`LambdaCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub lambda: i64,
    pub method: Method,
    pub evidence: Evidence,
    /// Label of element `i` at position `i`.
    pub labels: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub construction: Option<Construction>,
}

impl From<&LambdaCertificate> for CertificateDoc {
    fn from(cert: &LambdaCertificate) -> Self {
        CertificateDoc {
            lambda: cert.lambda,
            method: cert.method,
            evidence: cert.evidence.clone(),
            labels: cert.witness.labels().to_vec(),
            construction: cert.construction.clone(),
        }
    }
}

impl CertificateDoc {
    pub fn into_certificate(self) -> LambdaCertificate {
        LambdaCertificate {
            lambda: self.lambda,
            witness: Labelling::new(self.labels),
            evidence: self.evidence,
            method: self.method,
            construction: self.construction,
        }
    }
}

pub fn certificate_json(cert: &LambdaCertificate) -> String {
    serde_json::to_string_pretty(&CertificateDoc::from(cert)).expect("certificate serialises")
}

pub fn parse_certificate_json(text: &str) -> Result<LambdaCertificate, IoError> {
    Ok(serde_json::from_str::<CertificateDoc>(text)?.into_certificate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_elementary_abelian, make_quaternion};
    use crate::power_graph::build_power_graph;

    #[test]
    fn cayley_round_trip() {
        let q8 = make_quaternion(8).unwrap();
        let text = write_cayley(&q8);
        let back = parse_cayley(&text).unwrap();
        assert_eq!(back.table(), q8.table());
        assert_eq!(back.names(), q8.names());
        assert_eq!(back.family(), Some(FamilyTag::File));
    }

    #[test]
    fn cayley_bytes() {
        let c3 = make_cyclic(3);
        assert_eq!(
            write_cayley(&c3),
            "3\n0 1 2\n1 2 0\n2 0 1\nnames: 1,x,x^2\n"
        );
        let g = parse_cayley("2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.names(), ["0", "1"]);
    }

    #[test]
    fn cayley_errors() {
        assert!(matches!(
            parse_cayley(""),
            Err(IoError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_cayley("2\n0 1\n"),
            Err(IoError::Parse { .. })
        ));
        assert!(matches!(
            parse_cayley("2\n0 1\n1 x\n"),
            Err(IoError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_cayley("4\n0 1 2 3\n1 3 3 0\n2 3 0 1\n3 0 1 2\n"),
            Err(IoError::Group(GroupError::NotAssociative { .. }))
        ));
        assert!(matches!(
            parse_cayley("2\n0 1\n1 0\nnames: a\n"),
            Err(IoError::Group(GroupError::NameCount(1, 2)))
        ));
    }

    #[test]
    fn edge_list_bytes() {
        let k3 = build_power_graph(&make_cyclic(3));
        assert_eq!(write_edge_list(&k3), "3\n0 1\n0 2\n1 2\n");
        assert_eq!(parse_edge_list("3\n0 1\n0 2\n1 2\n").unwrap(), *k3.graph());
    }

    #[test]
    fn dot_output() {
        let v4 = make_elementary_abelian(2, 2).unwrap();
        let g = build_power_graph(&v4);
        let dot = write_dot(&g, v4.names(), "elemab:2,2");
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.starts_with("graph \"elemab:2,2\" {\n  0 [label=\"[0 0]\"];"));
    }

    #[test]
    fn csv_round_trip() {
        let v4 = make_elementary_abelian(2, 2).unwrap();
        let l = Labelling::new(vec![-2, 0, 1, 2]);
        let text = write_labelling_csv(&v4, &l).unwrap();
        assert_eq!(text, "element,label\n[0 0],-2\n[1 0],0\n[0 1],1\n[1 1],2\n");
        let back = parse_labelling_csv(&v4, &text).unwrap();
        assert_eq!(Labelling::from_partial(back).unwrap(), l);
        let by_index = parse_labelling_csv(&v4, "element,label\n0,5\n3,1\n").unwrap();
        assert_eq!(by_index, vec![Some(5), None, None, Some(1)]);
        assert!(matches!(
            parse_labelling_csv(&v4, "elem,lab\n0,1\n"),
            Err(IoError::Parse { .. })
        ));
        assert!(matches!(
            parse_labelling_csv(&v4, "element,label\nzz,1\n"),
            Err(IoError::UnknownElement(_))
        ));
        assert!(matches!(
            parse_labelling_csv(&v4, "element,label\n0,1\n0,2\n"),
            Err(IoError::DuplicateElement(0))
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = crate::constructive::lambda_p_group(&make_quaternion(8).unwrap()).unwrap();
        let text = certificate_json(&cert);
        assert!(text.contains("\"kind\": \"universal-nonidentity-vertex\""));
        assert_eq!(parse_certificate_json(&text).unwrap(), cert);
    }
}
