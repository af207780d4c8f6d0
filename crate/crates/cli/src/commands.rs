//! The four subcommands, each producing a [`Report`].

use std::collections::BTreeMap;
use std::time::Instant;

use plumbsw_core::closed::ClosedForm;
use plumbsw_core::ehrhart::{
    counts_along_ray, fit_node_coefficients, fit_quasipolynomial, node_coefficients, reciprocity_check,
    FacetSelection,
};
use plumbsw_core::rational::{fmt_q, q};
use plumbsw_core::series::{norm_r, sw_table_padded};
use plumbsw_core::{Class, Error, Lattice, LatticeVector, PlumbingGraph, Q};

use crate::dsl::ParseError;
use crate::report::{rats, Check, ClassFit, ClassRow, EhrhartReport, GraphSummary, Rat, Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{}", match .path { Some(p) if matches!(.source, ParseError::Syntax { .. }) => format!("{p}:{source}"), Some(p) => format!("{p}: {source}"), None => source.to_string() })]
    Parse { path: Option<String>, source: ParseError },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 parse or usage, 2 not negative definite, 3 resource budget.
    pub fn exit_code(&self) -> i32 {
        let core = match self {
            CliError::Parse { source: ParseError::Graph(e), .. } | CliError::Core(e) => e,
            _ => return 1,
        };
        match core {
            Error::NotNegativeDefinite { .. } => 2,
            Error::Budget(_) | Error::SearchExhausted(_) => 3,
            _ => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    /// Term budget for series expansions and point enumeration.
    pub budget: u64,
    /// Extra padding of the oracle truncation point.
    pub padding: i128,
    pub timing: bool,
}

/// Exit code 4 is due when a report carries a mismatch.
pub fn has_mismatch(r: &Report) -> bool {
    r.checks.iter().any(|c| c.status == Status::Fail)
        || r.classes.iter().any(|c| matches!((&c.sw_closed, &c.sw_oracle), (Some(a), Some(b)) if a != b))
}

/// Parses `--class`: a comma list of residue tuples `(a,b,...)`; bare
/// integers are accepted when `H` is cyclic or trivial.
pub fn parse_classes(text: &str, lat: &Lattice) -> Result<Vec<Class>, CliError> {
    let factors = lat.group().invariant_factors();
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| usage(format!("unbalanced `)` in `{text}`")))?,
            ',' if depth == 0 => {
                items.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(usage(format!("unbalanced `(` in `{text}`")));
    }
    items.push(cur);
    items
        .iter()
        .map(|item| {
            let item = item.trim();
            let inner = item.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(item);
            let parts: Vec<i128> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| usage(format!("bad residue `{s}` in class `{item}`"))))
                    .collect::<Result<_, _>>()?
            };
            let parts = if factors.is_empty() && parts == [0] { Vec::new() } else { parts };
            if parts.len() != factors.len() {
                return Err(usage(format!("class `{item}` needs {} residue(s) for H of type {:?}", factors.len(), factors)));
            }
            if parts.iter().zip(factors).any(|(a, d)| !(0..*d).contains(a)) {
                return Err(usage(format!("class `{item}` has residues outside 0..d for invariant factors {factors:?}")));
            }
            Ok(Class(parts))
        })
        .collect()
}

/// Parses `--ray`: a `+`-separated sum of terms `[k*]node:<vertex id>`,
/// each standing for `k E*_v`.
pub fn parse_ray(text: &str, lat: &Lattice) -> Result<LatticeVector, CliError> {
    let g = lat.graph();
    let mut w = lat.zero();
    for term in text.split('+') {
        let term = term.trim();
        let (k, rest) = match term.split_once('*') {
            Some((k, rest)) => (k.trim().parse::<i128>().map_err(|_| usage(format!("bad multiplier in `{term}`")))?, rest.trim()),
            None => (1, term),
        };
        let id = rest.strip_prefix("node:").ok_or_else(|| usage(format!("ray term `{term}` should read `node:<vertex id>`")))?;
        let v = g.index_of(id).ok_or_else(|| usage(format!("unknown vertex `{id}` in ray")))?;
        w = &w + &(lat.e_star(v) * q(k));
    }
    Ok(w)
}

fn default_ray(lat: &Lattice) -> LatticeVector {
    let nodes = lat.graph().nodes();
    if nodes.is_empty() {
        return lat.e_star(0).clone();
    }
    nodes.iter().fold(lat.zero(), |acc, &v| &acc + lat.e_star(v))
}

fn elapsed(t: Instant) -> u128 {
    t.elapsed().as_millis()
}

/// `pc(Z_h) = -sw_{-h} - ((K+2r_h)² + |V|)/8` for every class.
fn pc_from_sw(lat: &Lattice, sw: &[Q]) -> Vec<Q> {
    let g = lat.group();
    lat.classes().iter().map(|h| -sw[g.index(&g.neg(h))] - norm_r(lat, h)).collect()
}

fn class_rows(lat: &Lattice, only: Option<&[Class]>, closed: Option<&[Q]>, oracle: Option<&[Q]>) -> Vec<ClassRow> {
    let pc = pc_from_sw(lat, closed.or(oracle).expect("some method ran"));
    let g = lat.group();
    lat.classes()
        .into_iter()
        .filter(|h| only.is_none_or(|o| o.contains(h)))
        .map(|h| {
            let (r, s) = (lat.r_h(&h), lat.s_h(&h));
            let i = g.index(&h);
            ClassRow {
                r_h: rats(&r),
                s_h: rats(&s),
                chi_r: Rat(lat.chi(&r)),
                chi_s: Rat(lat.chi(&s)),
                sw_closed: closed.map(|t| Rat(t[i])),
                sw_oracle: oracle.map(|t| Rat(t[i])),
                pc: Rat(pc[i]),
                class: h.0,
            }
        })
        .collect()
}

pub fn cmd_analyze(g: &PlumbingGraph, opts: &Options) -> Result<Report, CliError> {
    let method = if ClosedForm::new(g).is_ok() { Method::Closed } else { Method::Oracle };
    let mut r = cmd_sw(g, None, method, opts)?;
    r.command = "analyze";
    Ok(r)
}

pub fn cmd_sw(g: &PlumbingGraph, only: Option<&str>, method: Method, opts: &Options) -> Result<Report, CliError> {
    let lat = Lattice::new(g);
    let only = only.map(|s| parse_classes(s, &lat)).transpose()?;
    let cf = ClosedForm::new(g);
    let mut report = Report::new("sw", GraphSummary::new(&lat, cf.as_ref().ok().map(ClosedForm::name)));
    let mut timing = BTreeMap::new();
    let closed = if method == Method::Oracle {
        None
    } else {
        let cf = cf.as_ref().map_err(|e| usage(format!("no closed form for this graph: {e}")))?;
        let t = Instant::now();
        let table = cf.sw_table(&lat)?;
        timing.insert("closed_form", elapsed(t));
        report.methods.push("closed-form");
        Some(table)
    };
    let oracle = if method == Method::Closed {
        None
    } else {
        let t = Instant::now();
        let table = sw_table_padded(&lat, opts.padding, opts.budget)?;
        timing.insert("oracle", elapsed(t));
        report.methods.push("oracle");
        Some(table)
    };
    report.classes = class_rows(&lat, only.as_deref(), closed.as_deref(), oracle.as_deref());
    report.timing_ms = opts.timing.then_some(timing);
    Ok(report)
}

pub fn cmd_ehrhart_fit(
    g: &PlumbingGraph,
    ray: Option<&str>,
    max: usize,
    only: Option<&str>,
    opts: &Options,
) -> Result<Report, CliError> {
    let lat = Lattice::new(g);
    let w = match ray {
        Some(s) => parse_ray(s, &lat)?,
        None => default_ray(&lat),
    };
    if !lat.in_lipman_cone(&w) {
        return Err(Error::NotInCone.into());
    }
    let only = only.map(|s| parse_classes(s, &lat)).transpose()?;
    let cf = ClosedForm::new(g);
    let mut report = Report::new("ehrhart-fit", GraphSummary::new(&lat, cf.as_ref().ok().map(ClosedForm::name)));
    let t = Instant::now();
    let counts = counts_along_ray(&lat, &w, max, FacetSelection::TOpen, opts.budget)?;
    let degree = g.end_factors().len();
    let rho_max = (max + 1) / (degree + 2);
    let grp = lat.group();
    let classes = lat
        .classes()
        .into_iter()
        .filter(|h| only.as_ref().is_none_or(|o| o.contains(h)))
        .map(|h| {
            let i = grp.index(&h);
            let series: Vec<u64> = counts.iter().map(|c| c[i]).collect();
            let samples: Vec<Q> = series.iter().map(|&c| q(c as i128)).collect();
            let mut row = ClassFit { class: h.0, counts: series, fit: None, period: None, coefficients: None, error: None };
            match fit_quasipolynomial(0, &samples, degree, rho_max) {
                Ok(f) => {
                    row.fit = Some(f.to_string());
                    row.period = Some(f.period);
                    row.coefficients = Some(f.coeffs.iter().map(|c| c.iter().copied().map(Rat).collect()).collect());
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();
    report.ehrhart = Some(EhrhartReport { ray: rats(&w), degree, max, rho_max, classes });
    report.timing_ms = opts.timing.then(|| BTreeMap::from([("ehrhart", elapsed(t))]));
    Ok(report)
}

/// Classes for which reciprocity fails, or the first fit/budget error.
fn reciprocity_failures(lat: &Lattice, w: &LatticeVector, n: usize, rho_max: usize, budget: u64) -> Result<Vec<String>, Error> {
    let mut bad = Vec::new();
    for h in lat.classes() {
        if !reciprocity_check(lat, w, &h, n, rho_max, budget)? {
            bad.push(format!("{:?}", h.0));
        }
    }
    Ok(bad)
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn skipped(name: &str, detail: impl Into<String>) -> Check {
    Check { name: name.into(), status: Status::Skipped, detail: detail.into() }
}

/// Cross-validation suite. `max` bounds the dilations used for reciprocity.
/// Checks that run out of budget are reported as skipped so that the rest
/// still run.
pub fn cmd_verify(g: &PlumbingGraph, max: Option<usize>, opts: &Options) -> Result<Report, CliError> {
    let lat = Lattice::new(g);
    let cf = ClosedForm::new(g);
    let mut report = Report::new("verify", GraphSummary::new(&lat, cf.as_ref().ok().map(ClosedForm::name)));
    let mut timing = BTreeMap::new();
    let n = lat.rank();
    let grp = lat.group();

    let t = Instant::now();
    let identity = (0..n).all(|v| {
        (0..n).all(|w| {
            let s = (0..n).fold(q(0), |acc, k| acc + q(lat.form()[v][k]) * lat.inverse()[k][w]);
            s == if v == w { q(1) } else { q(0) } && lat.inverse()[v][w] < q(0)
        })
    });
    report.checks.push(check("inverse", identity, "I·I⁻¹ = 1 and -I⁻¹ > 0 entrywise"));
    let (k2, k2v) = (lat.k2_plus_v(), lat.k2_plus_v_from_valencies());
    report.checks.push(check("k2_plus_v", k2 == k2v, format!("direct {}, from valencies {}", fmt_q(&k2), fmt_q(&k2v))));
    let prod: i128 = grp.invariant_factors().iter().product();
    report.checks.push(check("smith_form", prod == lat.det(), format!("∏ invariant factors {prod}, det {}", lat.det())));
    let bad: Vec<String> = lat
        .classes()
        .iter()
        .filter(|h| {
            let (r, s) = (lat.r_h(h), lat.s_h(h));
            let d = &s - &r;
            !(lat.class_of(&r).as_ref() == Some(*h)
                && lat.class_of(&s).as_ref() == Some(*h)
                && d.is_integral()
                && d.geq(&lat.zero())
                && lat.chi(&s) <= lat.chi(&r)
                && lat.in_lipman_cone(&s))
        })
        .map(|h| format!("{:?}", h.0))
        .collect();
    report.checks.push(check(
        "representatives",
        bad.is_empty(),
        if bad.is_empty() { "r_h, s_h in class h, s_h - r_h ≥ 0, χ(s_h) ≤ χ(r_h)".into() } else { format!("fails for {}", bad.join(" ")) },
    ));
    timing.insert("lattice", elapsed(t));

    let t = Instant::now();
    let closed_sw = match &cf {
        Err(e) => {
            report.checks.push(skipped("sw_closed_vs_oracle", format!("no closed form: {e}")));
            None
        }
        Ok(c) => {
            let closed = c.sw_table(&lat)?;
            match sw_table_padded(&lat, opts.padding, opts.budget) {
                Ok(oracle) => {
                    let bad: Vec<String> = lat
                        .classes()
                        .iter()
                        .filter(|h| closed[grp.index(h)] != oracle[grp.index(h)])
                        .map(|h| format!("{:?}", h.0))
                        .collect();
                    report.checks.push(check(
                        "sw_closed_vs_oracle",
                        bad.is_empty(),
                        if bad.is_empty() {
                            format!("{} formula agrees with the counting oracle on {} class(es)", c.name(), closed.len())
                        } else {
                            format!("differs on {}", bad.join(" "))
                        },
                    ));
                }
                Err(Error::Budget(b)) => report.checks.push(skipped("sw_closed_vs_oracle", format!("oracle exceeds term budget {b}"))),
                Err(e) => return Err(e.into()),
            }
            Some(closed)
        }
    };
    timing.insert("sw", elapsed(t));

    let t = Instant::now();
    let d = g.end_factors().len();
    let w = default_ray(&lat);
    // Periods divide the exponent of H; try short ranges first.
    let exponent = *grp.invariant_factors().last().unwrap_or(&1) as usize;
    let attempts: Vec<usize> = match max {
        Some(m) => vec![m],
        None => (1..=exponent).map(|rho| rho * (d + 2) + 1).collect(),
    };
    let mut outcome = Err(Error::Fit("no dilations".into()));
    let mut nmax = 0;
    for &n in &attempts {
        nmax = n;
        outcome = reciprocity_failures(&lat, &w, n, n / (d + 2), opts.budget);
        match &outcome {
            Err(Error::Fit(_)) => continue,
            Err(Error::Budget(_)) | Ok(_) => break,
            Err(e) => return Err(e.clone().into()),
        }
    }
    let ray = w.0.iter().map(fmt_q).collect::<Vec<_>>().join(", ");
    report.checks.push(match outcome {
        Ok(bad) if bad.is_empty() => check("reciprocity", true, format!("all classes along ({ray}), |λ| ≤ {nmax}")),
        Ok(bad) => check("reciprocity", false, format!("fails along ({ray}) for {}", bad.join(" "))),
        Err(e) => skipped("reciprocity", format!("along ({ray}): {e}")),
    });
    timing.insert("reciprocity", elapsed(t));

    let t = Instant::now();
    let nodes = g.nodes();
    report.checks.push(match (&closed_sw, grp.order(), nodes.len()) {
        (Some(sw), 1, 1..=2) => {
            let pc = pc_from_sw(&lat, sw)[0];
            let predicted = node_coefficients(&lat, pc)?;
            let lo = nodes.iter().map(|&v| g.degree(v) - 2).max().unwrap_or(0).max(1) as i128;
            let hi = lo + d as i128 + 1;
            match fit_node_coefficients(&lat, lo, hi, opts.budget) {
                Ok(fit) => {
                    let ok = fit == predicted.entries;
                    let c = predicted.entries[&predicted.constant_key];
                    check(
                        "node_coefficients",
                        ok,
                        if ok {
                            format!("{} coefficients in the node variables match, pc = {}", fit.len(), fmt_q(&pc))
                        } else {
                            format!("fitted coefficients differ from the prediction (constant term {})", fmt_q(&c))
                        },
                    )
                }
                Err(e @ (Error::Budget(_) | Error::Fit(_))) => skipped("node_coefficients", e.to_string()),
                Err(e) => return Err(e.into()),
            }
        }
        (None, ..) => skipped("node_coefficients", "needs a closed form for pc"),
        _ => skipped("node_coefficients", "needs H = 0 and one or two nodes"),
    });
    timing.insert("node_coefficients", elapsed(t));

    report.timing_ms = opts.timing.then_some(timing);
    Ok(report)
}
