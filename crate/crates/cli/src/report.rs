//! The JSON report.
//!
//! Every rational is a string `"p/q"` with `q > 0` (integers are written
//! `"n/1"`), so values survive any JSON reader exactly. Classes are residue
//! tuples with respect to the invariant factors of `H` and always appear in
//! the canonical order of [`plumbsw_core::Lattice::classes`]. Vectors in `L'`
//! are given by their coordinates in the basis `E_v`, in the declaration order
//! of the vertices.
//!
//! ```text
//! Report {
//!   command:   "analyze" | "sw" | "ehrhart-fit" | "verify",
//!   graph:     { vertices: [{id, euler}], edges: [[id, id]], det, invariant_factors,
//!                k2_plus_v, nodes: [id], closed_form: "lens"|"seifert"|"twonode"|null },
//!   methods:   ["closed-form" | "oracle"],
//!   classes:   [{ class, r_h, s_h, chi_r, chi_s, sw_closed, sw_oracle, pc }],   (analyze, sw)
//!   ehrhart:   { ray, degree, max, rho_max, classes: [{ class, counts, fit, period,
//!                coefficients, error }] },                                       (ehrhart-fit)
//!   checks:    [{ name, status: "pass"|"fail"|"skipped", detail }],               (verify)
//!   timing_ms: { ... }                                                           (--timing only)
//! }
//! ```
//!
//! Fields that do not apply are omitted.

use std::collections::BTreeMap;

use plumbsw_core::{Lattice, LatticeVector, Q};
use serde::{Serialize, Serializer};

/// An exact rational serialized as `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

pub fn rats(v: &LatticeVector) -> Vec<Rat> {
    v.0.iter().copied().map(Rat).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Vertex {
    pub id: String,
    pub euler: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[String; 2]>,
    pub det: i128,
    pub invariant_factors: Vec<i128>,
    pub k2_plus_v: Rat,
    pub nodes: Vec<String>,
    pub closed_form: Option<&'static str>,
}

impl GraphSummary {
    pub fn new(lat: &Lattice, closed_form: Option<&'static str>) -> Self {
        let g = lat.graph();
        GraphSummary {
            vertices: (0..g.len()).map(|v| Vertex { id: g.id(v).to_string(), euler: g.euler(v) }).collect(),
            edges: g.edges().iter().map(|&(a, b)| [g.id(a).to_string(), g.id(b).to_string()]).collect(),
            det: lat.det(),
            invariant_factors: lat.group().invariant_factors().to_vec(),
            k2_plus_v: Rat(lat.k2_plus_v()),
            nodes: g.nodes().into_iter().map(|v| g.id(v).to_string()).collect(),
            closed_form,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub class: Vec<i128>,
    pub r_h: Vec<Rat>,
    pub s_h: Vec<Rat>,
    pub chi_r: Rat,
    pub chi_s: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sw_closed: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sw_oracle: Option<Rat>,
    pub pc: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassFit {
    pub class: Vec<i128>,
    pub counts: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    /// `coefficients[r][k]` multiplies `λ^k` for `λ ≡ r` mod the period.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<Rat>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EhrhartReport {
    pub ray: Vec<Rat>,
    pub degree: usize,
    pub max: usize,
    pub rho_max: usize,
    pub classes: Vec<ClassFit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub graph: GraphSummary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub methods: Vec<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ehrhart: Option<EhrhartReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<&'static str, u128>>,
}

impl Report {
    pub fn new(command: &'static str, graph: GraphSummary) -> Self {
        Report { command, graph, methods: Vec::new(), classes: Vec::new(), ehrhart: None, checks: Vec::new(), timing_ms: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text tables.
    pub fn to_pretty(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        out += &format!(
            "|V| = {}  det = {}  H = {}  K²+|V| = {}\n",
            g.vertices.len(),
            g.det,
            group_name(&g.invariant_factors),
            fmt(&g.k2_plus_v)
        );
        out += &format!(
            "nodes: {}  closed form: {}\n",
            if g.nodes.is_empty() { "-".to_string() } else { g.nodes.join(" ") },
            g.closed_form.unwrap_or("-")
        );
        if !self.classes.is_empty() {
            out += "\n";
            let mut rows = vec![vec!["class".to_string(), "χ(r_h)".into(), "χ(s_h)".into()]];
            let (has_c, has_o) = (self.classes[0].sw_closed.is_some(), self.classes[0].sw_oracle.is_some());
            if has_c {
                rows[0].push("sw (closed)".into());
            }
            if has_o {
                rows[0].push("sw (oracle)".into());
            }
            rows[0].push("pc".into());
            for c in &self.classes {
                let mut row = vec![fmt_class(&c.class), fmt(&c.chi_r), fmt(&c.chi_s)];
                row.extend(c.sw_closed.iter().chain(&c.sw_oracle).map(fmt));
                row.push(fmt(&c.pc));
                rows.push(row);
            }
            out += &table(&rows);
        }
        if let Some(e) = &self.ehrhart {
            out += &format!("\nray {}  degree {}  λ = 0..{}\n", fmt_vec(&e.ray), e.degree, e.max);
            let mut rows = vec![vec!["class".to_string(), "fit".into()]];
            for c in &e.classes {
                rows.push(vec![fmt_class(&c.class), c.fit.clone().or_else(|| c.error.clone()).unwrap_or_default()]);
            }
            out += &table(&rows);
        }
        if !self.checks.is_empty() {
            out += "\n";
            let rows: Vec<Vec<String>> = self
                .checks
                .iter()
                .map(|c| {
                    let s = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skipped => "SKIP",
                    };
                    vec![s.to_string(), c.name.clone(), c.detail.clone()]
                })
                .collect();
            out += &table(&rows);
        }
        if let Some(t) = &self.timing_ms {
            out += "\n";
            for (k, v) in t {
                out += &format!("{k}: {v} ms\n");
            }
        }
        out
    }
}

fn fmt(r: &Rat) -> String {
    plumbsw_core::rational::fmt_q(&r.0)
}

fn fmt_vec(v: &[Rat]) -> String {
    format!("({})", v.iter().map(fmt).collect::<Vec<_>>().join(", "))
}

fn fmt_class(c: &[i128]) -> String {
    format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn group_name(factors: &[i128]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s}{}", " ".repeat(width[c] - s.chars().count())))
            .collect();
        out += line.join("  ").trim_end();
        out += "\n";
    }
    out
}
