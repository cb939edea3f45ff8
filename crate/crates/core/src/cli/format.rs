//! Text formats for instances and solutions.
//!
//! Instance: `n`, then the n multiplicities, then n cost rows (`inf` allowed).
//! Solution: `cost c`, `edge i j m` lines, optional `cycle c v..` lines and an
//! optional `tour v..` line. Everything after `#` on a line is ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solvers::TourSolution;

fn parse_err(line: usize, field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { line, field: field.into(), message: message.into() }
}

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_token<T: FromStr>(line: usize, field: impl Into<String>, tok: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    tok.parse().map_err(|e: T::Err| parse_err(line, field, format!("`{tok}`: {e}")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let last = text.lines().count().max(1);

    let (ln, body) = lines.next().ok_or_else(|| parse_err(1, "n", "missing city count"))?;
    let mut toks = body.split_whitespace();
    let n: usize = parse_token(ln, "n", toks.next().unwrap())?;
    if toks.next().is_some() {
        return Err(parse_err(ln, "n", "expected a single integer"));
    }
    if n == 0 {
        return Err(parse_err(ln, "n", "at least one city is required"));
    }

    let (ln, body) = lines.next().ok_or_else(|| parse_err(last, "k", "missing multiplicities"))?;
    let toks: Vec<&str> = body.split_whitespace().collect();
    if toks.len() != n {
        return Err(parse_err(ln, "k", format!("expected {n} multiplicities, got {}", toks.len())));
    }
    let k = toks
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let v: u64 = parse_token(ln, format!("k[{i}]"), t)?;
            if v == 0 {
                return Err(parse_err(ln, format!("k[{i}]"), "multiplicity must be positive"));
            }
            Ok(v)
        })
        .collect::<Result<Vec<u64>>>()?;

    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let field = format!("cost[{i}]");
        let (ln, body) =
            lines.next().ok_or_else(|| parse_err(last, field.clone(), "missing cost row"))?;
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != n {
            return Err(parse_err(ln, field, format!("expected {n} entries, got {}", toks.len())));
        }
        let row = toks
            .iter()
            .enumerate()
            .map(|(j, t)| parse_token::<Cost>(ln, format!("cost[{i}][{j}]"), t))
            .collect::<Result<Vec<Cost>>>()?;
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing", "unexpected content after the cost matrix"));
    }
    Instance::from_rows(rows, k).map_err(|e| parse_err(1, "instance", e.to_string()))
}

pub fn emit_instance(inst: &Instance) -> String {
    let mut s = String::new();
    writeln!(s, "{}", inst.n()).unwrap();
    writeln!(s, "{}", join(inst.multiplicities())).unwrap();
    for i in 0..inst.n() {
        writeln!(s, "{}", join(inst.row(i))).unwrap();
    }
    s
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// A solution file as written, before any checking against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub cost: Cost,
    pub edges: BTreeMap<(usize, usize), u64>,
    pub cycles: Vec<(Vec<usize>, u64)>,
    pub tour: Option<Vec<usize>>,
}

impl From<&TourSolution> for SolutionFile {
    fn from(sol: &TourSolution) -> Self {
        SolutionFile {
            cost: sol.cost,
            edges: sol.edges.edges().map(|(i, j, m)| ((i, j), m)).collect(),
            cycles: sol.cycles.clone(),
            tour: sol.expansion.clone(),
        }
    }
}

pub fn emit_solution(sol: &SolutionFile) -> String {
    let mut s = String::new();
    writeln!(s, "cost {}", sol.cost).unwrap();
    for (&(i, j), &m) in &sol.edges {
        writeln!(s, "edge {i} {j} {m}").unwrap();
    }
    for (cycle, c) in &sol.cycles {
        writeln!(s, "cycle {c} {}", join(cycle)).unwrap();
    }
    if let Some(t) = &sol.tour {
        writeln!(s, "tour {}", join(t)).unwrap();
    }
    s
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let mut cost = None;
    let mut edges = BTreeMap::new();
    let mut cycles = Vec::new();
    let mut tour = None;
    for (ln, body) in content_lines(text) {
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "cost" => {
                if cost.is_some() {
                    return Err(parse_err(ln, "cost", "duplicate cost line"));
                }
                if toks.len() != 2 {
                    return Err(parse_err(ln, "cost", "expected `cost <value>`"));
                }
                cost = Some(parse_token::<Cost>(ln, "cost", toks[1])?);
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(parse_err(ln, "edge", "expected `edge i j m`"));
                }
                let i: usize = parse_token(ln, "edge.i", toks[1])?;
                let j: usize = parse_token(ln, "edge.j", toks[2])?;
                let m: u64 = parse_token(ln, "edge.m", toks[3])?;
                if m == 0 {
                    return Err(parse_err(ln, "edge.m", "multiplicity must be positive"));
                }
                if edges.insert((i, j), m).is_some() {
                    return Err(parse_err(ln, "edge", format!("duplicate edge ({i}, {j})")));
                }
            }
            "cycle" => {
                if toks.len() < 3 {
                    return Err(parse_err(ln, "cycle", "expected `cycle c v1 .. vm`"));
                }
                let c: u64 = parse_token(ln, "cycle.count", toks[1])?;
                let vs = toks[2..]
                    .iter()
                    .map(|t| parse_token(ln, "cycle.vertex", t))
                    .collect::<Result<Vec<usize>>>()?;
                cycles.push((vs, c));
            }
            "tour" => {
                if tour.is_some() {
                    return Err(parse_err(ln, "tour", "duplicate tour line"));
                }
                let vs = toks[1..]
                    .iter()
                    .map(|t| parse_token(ln, "tour.vertex", t))
                    .collect::<Result<Vec<usize>>>()?;
                tour = Some(vs);
            }
            other => return Err(parse_err(ln, "keyword", format!("unknown line kind `{other}`"))),
        }
    }
    let cost = cost.ok_or_else(|| parse_err(1, "cost", "missing cost line"))?;
    Ok(SolutionFile { cost, edges, cycles, tour })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip_with_comments() {
        let text = "# three cities\n3\n1 2 1\n0 1 inf # row 0\n\n2 0 4\n1 1 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.multiplicities(), &[1, 2, 1]);
        assert_eq!(inst.d(0, 2), Cost::Infinite);
        assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn instance_errors_name_line_and_field() {
        let err = parse_instance("2\n1 1\n0 x\n1 0\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 3, field: "cost[0][1]".into(), message: err_message(&err) }
        );
        let err = parse_instance("2\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref field, .. } if field == "k"));
        let err = parse_instance("2\n1 1\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "cost[1]"));
        let err = parse_instance("1\n0\n5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "k[0]"));
    }

    fn err_message(e: &Error) -> String {
        match e {
            Error::Parse { message, .. } => message.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn solution_round_trip() {
        let text = "cost 7\nedge 0 1 2\nedge 1 0 2\ncycle 2 0 1\ntour 0 1 0 1\n";
        let sol = parse_solution(text).unwrap();
        assert_eq!(sol.cost, Cost::Finite(7));
        assert_eq!(sol.edges.len(), 2);
        assert_eq!(emit_solution(&sol), text);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = parse_solution("cost 1\nedge 0 0 1\nedge 0 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
