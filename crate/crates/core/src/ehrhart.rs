//! Equivariant lattice-point counts of the polytopes `P^{(l')}`, quasipolynomial
//! fits along rays, reciprocity and the node-coefficient predictions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::Class;
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{fmt_q, q, Q};

/// Which facets of `P^{(l')}` are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetSelection {
    /// `{x ≥ 0 : Σ x_e E*_e ≱ l'}`: the non-coordinate facets are open.
    TOpen,
    /// The closure with the coordinate facets removed:
    /// `{x ≥ 1 : ∃v, l'_v > 0, (Σ x_e E*_e)_v ≤ l'_v}`.
    Complement,
}

impl FacetSelection {
    pub fn other(self) -> Self {
        match self {
            FacetSelection::TOpen => FacetSelection::Complement,
            FacetSelection::Complement => FacetSelection::TOpen,
        }
    }
}

/// Lattice points of `P^{(l')}` per class of `Σ x_e E*_e`, indexed like
/// [`crate::group::DiscriminantGroup::index`].
pub fn count_points(lat: &Lattice, l: &LatticeVector, sel: FacetSelection, budget: u64) -> Result<Vec<u64>> {
    let ends = lat.graph().end_factors();
    let g = lat.group();
    let classes = g.elements();
    let gens: Vec<Vec<i64>> = ends.iter().map(|&e| lat.scaled(lat.e_star(e))).collect();
    let shifts: Vec<Vec<usize>> = ends
        .iter()
        .map(|&e| {
            let ce = lat.class_of_e_star(e);
            classes.iter().map(|h| g.index(&g.add(h, &ce))).collect()
        })
        .collect();
    let target = lat.scaled(l);
    let n = target.len();
    let low = match sel {
        FacetSelection::TOpen => 0,
        FacetSelection::Complement => 1,
    };
    // minimal completion of the coordinates after position k
    let mut rest = vec![vec![0i64; n]; gens.len() + 1];
    for k in (0..gens.len()).rev() {
        rest[k] = rest[k + 1].iter().zip(&gens[k]).map(|(r, a)| r + low * a).collect();
    }
    let admissible = |s: &[i64]| match sel {
        FacetSelection::TOpen => s.iter().zip(&target).any(|(x, t)| x < t),
        FacetSelection::Complement => s.iter().zip(&target).any(|(x, t)| *t > 0 && x <= t),
    };
    let mut counts = vec![0u64; classes.len()];
    let mut visited = 0u64;
    let mut s0 = vec![0i64; n];
    fn rec(
        k: usize,
        s: &mut Vec<i64>,
        cls: usize,
        ctx: &Ctx,
        counts: &mut [u64],
        visited: &mut u64,
        admissible: &dyn Fn(&[i64]) -> bool,
    ) -> Result<()> {
        if k == ctx.gens.len() {
            counts[cls] += 1;
            return Ok(());
        }
        let gen = &ctx.gens[k];
        let mut x = 0;
        let mut c = cls;
        while x < ctx.low {
            for (si, a) in s.iter_mut().zip(gen) {
                *si += a;
            }
            c = ctx.shifts[k][c];
            x += 1;
        }
        loop {
            *visited += 1;
            if *visited > ctx.budget {
                return Err(Error::Budget(ctx.budget));
            }
            let probe: Vec<i64> = s.iter().zip(&ctx.rest[k + 1]).map(|(a, b)| a + b).collect();
            if !admissible(&probe) {
                break;
            }
            rec(k + 1, s, c, ctx, counts, visited, admissible)?;
            for (si, a) in s.iter_mut().zip(gen) {
                *si += a;
            }
            c = ctx.shifts[k][c];
            x += 1;
        }
        for (si, a) in s.iter_mut().zip(gen) {
            *si -= x * a;
        }
        Ok(())
    }
    struct Ctx {
        gens: Vec<Vec<i64>>,
        shifts: Vec<Vec<usize>>,
        rest: Vec<Vec<i64>>,
        low: i64,
        budget: u64,
    }
    let ctx = Ctx { gens, shifts, rest, low, budget };
    rec(0, &mut s0, g.index(&g.zero()), &ctx, &mut counts, &mut visited, &admissible)?;
    Ok(counts)
}

/// A quasipolynomial `λ ↦ Σ_k c_{λ mod ρ, k} λ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub period: usize,
    /// `coeffs[r][k]` multiplies `λ^k` for `λ ≡ r (mod period)`.
    pub coeffs: Vec<Vec<Q>>,
}

impl Quasipolynomial {
    pub fn eval(&self, lambda: i128) -> Q {
        let r = lambda.rem_euclid(self.period as i128) as usize;
        self.coeffs[r].iter().rev().fold(Q::zero(), |acc, c| acc * q(lambda) + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.iter().rposition(|x| !x.is_zero()).unwrap_or(0)).max().unwrap_or(0)
    }

    /// Coefficient of `λ^k`, if it does not depend on the residue.
    pub fn constant_coefficient(&self, k: usize) -> Option<Q> {
        let first = self.coeffs[0].get(k).copied().unwrap_or_else(Q::zero);
        self.coeffs
            .iter()
            .all(|c| c.get(k).copied().unwrap_or_else(Q::zero) == first)
            .then_some(first)
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    format!("{k}").chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn fmt_poly(c: &[Q], var: &str) -> String {
    let mut out = String::new();
    for k in (0..c.len()).rev() {
        let x = c[k];
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let a = x.abs();
        let num = fmt_q(&a);
        if k == 0 {
            out.push_str(&num);
        } else {
            if !a.is_one() {
                if a.is_integer() {
                    out.push_str(&num);
                } else {
                    out.push('(');
                    out.push_str(&num);
                    out.push(')');
                }
            }
            out.push_str(var);
            if k > 1 {
                out.push_str(&superscript(k));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.period == 1 {
            return f.write_str(&fmt_poly(&self.coeffs[0], "λ"));
        }
        for (r, c) in self.coeffs.iter().enumerate() {
            if r > 0 {
                f.write_str("; ")?;
            }
            write!(f, "[λ≡{r} mod {}] {}", self.period, fmt_poly(c, "λ"))?;
        }
        Ok(())
    }
}

/// Monomial coefficients of the interpolating polynomial through `pts`.
fn interpolate(pts: &[(Q, Q)]) -> Vec<Q> {
    let n = pts.len();
    // Newton divided differences
    let mut dd: Vec<Q> = pts.iter().map(|p| p.1).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (pts[i].0 - pts[i - j].0);
        }
    }
    let mut poly = vec![Q::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (x - x_i) + dd[i]
        let mut next = vec![Q::zero(); n];
        for k in 0..n {
            if k + 1 < n {
                next[k + 1] += poly[k];
            }
            next[k] -= poly[k] * pts[i].0;
        }
        next[0] += dd[i];
        poly = next;
    }
    poly
}

/// Fits a quasipolynomial of degree `≤ degree` to `samples[i] = f(start + i)`,
/// trying periods `1..=rho_max`. Each residue needs `degree + 2` samples so
/// that at least one of them validates the interpolation.
pub fn fit_quasipolynomial(start: i128, samples: &[Q], degree: usize, rho_max: usize) -> Result<Quasipolynomial> {
    if samples.is_empty() {
        return Err(Error::Fit("no samples".into()));
    }
    for rho in 1..=rho_max.max(1) {
        let mut coeffs = vec![Vec::new(); rho];
        let mut ok = true;
        for (r, slot) in coeffs.iter_mut().enumerate() {
            let pts: Vec<(Q, Q)> = samples
                .iter()
                .enumerate()
                .map(|(i, y)| (start + i as i128, *y))
                .filter(|(x, _)| x.rem_euclid(rho as i128) as usize == r)
                .map(|(x, y)| (q(x), y))
                .collect();
            if pts.len() < degree + 2 {
                return Err(Error::Fit(format!(
                    "period {rho} needs {} samples per residue, have {}",
                    degree + 2,
                    pts.len()
                )));
            }
            let poly = interpolate(&pts[..degree + 1]);
            let agrees = pts[degree + 1..]
                .iter()
                .all(|(x, y)| poly.iter().rev().fold(Q::zero(), |acc, c| acc * x + c) == *y);
            if !agrees {
                ok = false;
                break;
            }
            *slot = poly;
        }
        if ok {
            return Ok(Quasipolynomial { period: rho, coeffs });
        }
    }
    Err(Error::Fit(format!("no period ≤ {rho_max} fits")))
}

/// Point counts along `λ w` for `λ = 0..=n`, one vector per `λ`.
pub fn counts_along_ray(
    lat: &Lattice,
    w: &LatticeVector,
    n: usize,
    sel: FacetSelection,
    budget: u64,
) -> Result<Vec<Vec<u64>>> {
    (0..=n).map(|k| count_points(lat, &(w * q(k as i128)), sel, budget)).collect()
}

/// Fit of the class-`h` count along `λ w`, `λ = start..=n`, of degree `|ends|`.
pub fn fit_along_ray(
    lat: &Lattice,
    w: &LatticeVector,
    h: &Class,
    start: usize,
    n: usize,
    sel: FacetSelection,
    rho_max: usize,
    budget: u64,
) -> Result<Quasipolynomial> {
    if !lat.in_lipman_cone(w) {
        return Err(Error::NotInCone);
    }
    if n < start {
        return Err(Error::Fit("no samples".into()));
    }
    let idx = lat.group().index(h);
    let samples = (start..=n)
        .map(|k| Ok(q(count_points(lat, &(w * q(k as i128)), sel, budget)?[idx] as i128)))
        .collect::<Result<Vec<_>>>()?;
    fit_quasipolynomial(start as i128, &samples, lat.graph().end_factors().len(), rho_max)
}

/// `L_h(A, T, λ) = (-1)^d L_{-h}(A, F∖T, -λ)` on `λ ∈ [-n, n]`, comparing the
/// fit of `sel` in class `h` with the fit of the other selection in `-h`.
pub fn reciprocity_holds(d: usize, fit: &Quasipolynomial, other: &Quasipolynomial, n: i128) -> bool {
    let sign = if d.is_multiple_of(2) { q(1) } else { q(-1) };
    (-n..=n).all(|k| fit.eval(k) == sign * other.eval(-k))
}

/// Fits both selections along `λ w` and checks reciprocity for the class `h`.
pub fn reciprocity_check(
    lat: &Lattice,
    w: &LatticeVector,
    h: &Class,
    n: usize,
    rho_max: usize,
    budget: u64,
) -> Result<bool> {
    reciprocity_check_with(lat, w, h, n, rho_max, budget, FacetSelection::Complement)
}

/// As [`reciprocity_check`], pairing the open count with `partner` (which
/// should be [`FacetSelection::Complement`]; anything else is a control).
pub fn reciprocity_check_with(
    lat: &Lattice,
    w: &LatticeVector,
    h: &Class,
    n: usize,
    rho_max: usize,
    budget: u64,
    partner: FacetSelection,
) -> Result<bool> {
    let g = lat.group();
    let d = lat.graph().end_factors().len();
    let t = fit_along_ray(lat, w, h, 0, n, FacetSelection::TOpen, rho_max, budget)?;
    let start = usize::from(partner == FacetSelection::Complement);
    let f = fit_along_ray(lat, w, &g.neg(h), start, n, partner, rho_max, budget)?;
    Ok(reciprocity_holds(d, &t, &f, n as i128))
}

/// Predicted normalized coefficients `â_m` (the coefficient of `∏λ_n^{m_n}`
/// times `∏ m_n!`) of the Ehrhart polynomial in the node variables, for
/// `H = 0`, keyed by the exponent vector over [`crate::graph::PlumbingGraph::nodes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeCoefficients {
    pub nodes: Vec<usize>,
    pub j: Vec<Vec<Q>>,
    pub entries: BTreeMap<Vec<usize>, Q>,
    pub constant_key: Vec<usize>,
}

pub fn node_coefficients(lat: &Lattice, pc: Q) -> Result<NodeCoefficients> {
    let (nodes, _) = node_setup(lat)?;
    let gr = lat.graph();
    let j: Vec<Vec<Q>> =
        nodes.iter().map(|&a| nodes.iter().map(|&b| -lat.pair(lat.e_star(a), lat.e_star(b))).collect()).collect();
    let delta: Vec<usize> = nodes.iter().map(|&v| gr.degree(v)).collect();
    let dq = |i: usize| q(delta[i] as i128 - 2);
    let k_dot: Vec<Q> = nodes.iter().map(|&v| lat.pair(lat.canonical_class(), lat.e_star(v))).collect();
    let base: Vec<usize> = delta.iter().map(|d| d - 2).collect();
    let mut entries = BTreeMap::new();
    let m = nodes.len();
    for n in 0..m {
        let mut key = base.clone();
        key[n] += 2;
        entries.insert(key, j[n][n]);
        let mut key = base.clone();
        key[n] += 1;
        let lin = -k_dot[n] / q(2) + (0..m).fold(Q::zero(), |s, k| s + dq(k) * j[n][k]) / q(2);
        entries.insert(key, lin);
        for k in n + 1..m {
            let mut key = base.clone();
            key[n] += 1;
            key[k] += 1;
            entries.insert(key, j[n][k]);
        }
    }
    let mut c = pc;
    for n in 0..m {
        c -= dq(n) * k_dot[n] / q(4);
        c += dq(n) * (q(3) * q(delta[n] as i128) - q(7)) * j[n][n] / q(24);
        for k in 0..m {
            if k != n {
                c += dq(n) * dq(k) * j[n][k] / q(8);
            }
        }
    }
    entries.insert(base.clone(), c);
    Ok(NodeCoefficients { nodes, j, entries, constant_key: base })
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Multi-indices `0 ≤ k ≤ ranges` (componentwise).
fn multi_indices(ranges: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in ranges {
        out = out.into_iter().flat_map(|k| (0..=r).map(move |i| [k.as_slice(), &[i]].concat())).collect();
    }
    out
}

/// The node finite difference `Δ f(λ) = Σ_k (-1)^{|k|} ∏ C(δ_n-2, k_n) f(λ - k)`.
fn node_difference(ranges: &[usize], lambda: &[i128], mut f: impl FnMut(&[i128]) -> Result<Q>) -> Result<Q> {
    let mut total = Q::zero();
    for k in multi_indices(ranges) {
        let lam: Vec<i128> = lambda.iter().zip(&k).map(|(l, ki)| l - *ki as i128).collect();
        let sign = if k.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
        let coef: i128 = ranges.iter().zip(&k).map(|(r, ki)| binomial(*r, *ki)).product();
        total += q(sign * coef) * f(&lam)?;
    }
    Ok(total)
}

fn node_setup(lat: &Lattice) -> Result<(Vec<usize>, Vec<usize>)> {
    if lat.group().order() != 1 {
        return Err(Error::NontrivialGroup);
    }
    let gr = lat.graph();
    let nodes = gr.nodes();
    if nodes.is_empty() {
        return Err(Error::NodeCount { expected: 1, found: 0 });
    }
    let ranges = nodes.iter().map(|&v| gr.degree(v) - 2).collect();
    Ok((nodes, ranges))
}

fn node_point(lat: &Lattice, nodes: &[usize], lam: &[i128]) -> LatticeVector {
    nodes.iter().zip(lam).fold(lat.zero(), |acc, (&v, &c)| &acc + &(lat.e_star(v) * q(c)))
}

/// `Δ(λ) - χ(Σ λ_n E*_n)` from open counts, `Δ` being [`node_difference`]
/// over the nodes; for `H = 0` and `λ ≥ δ - 2` this equals `pc(Z)`.
pub fn delta_identity(lat: &Lattice, lambda: &[i128], budget: u64) -> Result<Q> {
    let (nodes, ranges) = node_setup(lat)?;
    if lambda.len() != nodes.len() {
        return Err(Error::NodeCount { expected: lambda.len(), found: nodes.len() });
    }
    let d = node_difference(&ranges, lambda, |lam| {
        Ok(q(count_points(lat, &node_point(lat, &nodes, lam), FacetSelection::TOpen, budget)?[0] as i128))
    })?;
    Ok(d - lat.chi(&node_point(lat, &nodes, lambda)))
}

/// Fits the part of `λ ↦ L(Σ λ_n E*_n)` seen by the node difference: the
/// coefficients of `∏λ_n^{k_n}` with `k ≥ δ - 2` and `|k| ≤ |ends|`, from
/// counts on the box `[lo, hi]^{nodes}`, normalized by `∏ k_n!` as in
/// [`NodeCoefficients`]. Fails unless the samples determine them uniquely.
pub fn fit_node_coefficients(lat: &Lattice, lo: i128, hi: i128, budget: u64) -> Result<BTreeMap<Vec<usize>, Q>> {
    let (nodes, ranges) = node_setup(lat)?;
    let lo = lo.max(ranges.iter().copied().max().unwrap_or(0) as i128);
    let top = lat.graph().end_factors().len();
    let keys: Vec<Vec<usize>> = multi_indices(&vec![top; nodes.len()])
        .into_iter()
        .filter(|k| k.iter().zip(&ranges).all(|(a, b)| a >= b) && k.iter().sum::<usize>() <= top)
        .collect();
    let grid = multi_indices(&vec![(hi - lo).max(0) as usize; nodes.len()]);
    let mut cache = BTreeMap::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for off in &grid {
        let lam: Vec<i128> = off.iter().map(|o| lo + *o as i128).collect();
        let mut row: Vec<Q> = keys
            .iter()
            .map(|k| {
                node_difference(&ranges, &lam, |x| {
                    Ok(x.iter().zip(k).fold(Q::one(), |acc, (b, e)| acc * q(b.pow(*e as u32))))
                })
            })
            .collect::<Result<_>>()?;
        row.push(node_difference(&ranges, &lam, |x| {
            if let Some(v) = cache.get(x) {
                return Ok(*v);
            }
            let c = q(count_points(lat, &node_point(lat, &nodes, x), FacetSelection::TOpen, budget)?[0] as i128);
            cache.insert(x.to_vec(), c);
            Ok(c)
        })?);
        rows.push(row);
    }
    let sol = solve_exact(rows, keys.len())?;
    Ok(keys
        .into_iter()
        .zip(sol)
        .map(|(k, c)| {
            let f: i128 = k.iter().map(|&e| (1..=e as i128).product::<i128>()).product();
            (k, c * q(f))
        })
        .collect())
}

/// Unique solution of the overdetermined system `rows = [A | b]`.
fn solve_exact(mut rows: Vec<Vec<Q>>, n: usize) -> Result<Vec<Q>> {
    for c in 0..n {
        let Some(p) = (c..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            return Err(Error::Fit("samples do not determine the coefficients".into()));
        };
        rows.swap(c, p);
        let pivot = rows[c][c];
        for x in rows[c].iter_mut() {
            *x /= pivot;
        }
        for i in 0..rows.len() {
            if i != c && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in c..=n {
                    let d = f * rows[c][j];
                    rows[i][j] -= d;
                }
            }
        }
    }
    if rows[n..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::Fit("counts are not polynomial on the sample box".into()));
    }
    Ok(rows[..n].iter().map(|row| row[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{seifert_to_graph, PlumbingGraph};
    use crate::lens::LensData;
    use crate::rational::qr;
    use crate::seifert::Seifert;
    use crate::series::{TruncatedSeries, DEFAULT_BUDGET};
    use crate::twonode::TwoNode;
    use alloc::string::ToString;

    fn trefoil() -> Lattice {
        Lattice::new(&seifert_to_graph(-1, &[(2, 1), (3, 1), (7, 1)]).unwrap())
    }

    /// A two-node graph with trivial discriminant group.
    fn unimodular_graph() -> PlumbingGraph {
        PlumbingGraph::from_parts(
            &[("n", -2), ("a1", -3), ("a2", -7), ("nt", -1), ("b1", -5), ("b2", -7)],
            &[("n", "a1"), ("n", "a2"), ("n", "nt"), ("nt", "b1"), ("nt", "b2")],
        )
        .unwrap()
    }

    /// Two nodes with `H = Z/4 ⊕ Z/4`; its counts along `E*_n + E*_ñ` have period 2.
    fn two_node_graph() -> PlumbingGraph {
        PlumbingGraph::from_parts(
            &[("n", -2), ("a1", -2), ("a2", -2), ("nt", -3), ("b1", -2), ("b2", -2)],
            &[("n", "a1"), ("n", "a2"), ("n", "nt"), ("nt", "b1"), ("nt", "b2")],
        )
        .unwrap()
    }

    /// Brute force over the box `0 ≤ x_e ≤ max_v ⌈l'_v / (E*_e)_v⌉ + 1`:
    /// per-class counts of `x ≥ low` whose image `s` satisfies `keep(s, l')`.
    fn brute(lat: &Lattice, l: &LatticeVector, low: i64, keep: &dyn Fn(&[i64], &[i64]) -> bool) -> Vec<u64> {
        let ends = lat.graph().end_factors();
        let gens: Vec<Vec<i64>> = ends.iter().map(|&e| lat.scaled(lat.e_star(e))).collect();
        let t = lat.scaled(l);
        let tops: Vec<i64> = gens
            .iter()
            .map(|a| a.iter().zip(&t).map(|(ai, ti)| (ti.max(&0) + ai - 1) / ai).max().unwrap() + 1)
            .collect();
        let g = lat.group();
        let mut counts = vec![0u64; g.order() as usize];
        let mut x = vec![low; ends.len()];
        loop {
            let s: Vec<i64> = (0..t.len()).map(|v| gens.iter().zip(&x).map(|(a, xi)| a[v] * xi).sum()).collect();
            if keep(&s, &t) {
                let point = lat.unscaled(&s);
                counts[g.index(&lat.class_of(&point).unwrap())] += 1;
            }
            let mut i = 0;
            loop {
                if i == x.len() {
                    return counts;
                }
                x[i] += 1;
                if x[i] <= tops[i] {
                    break;
                }
                x[i] = low;
                i += 1;
            }
        }
    }

    #[test]
    fn partition_of_the_closed_polytope() {
        let lats = [trefoil(), Lattice::new(&LensData::new(7, 3).unwrap().graph()), Lattice::new(&two_node_graph())];
        for lat in &lats {
            let ends = lat.graph().end_factors();
            let probes: Vec<LatticeVector> = vec![
                lat.e_star(ends[0]).clone(),
                lat.e_star(*ends.last().unwrap()) * q(2),
                &(lat.e_star(ends[0]) * q(2)) + &(lat.e_star(ends[1]) * q(3)),
            ];
            for l in &probes {
                let open = count_points(lat, l, FacetSelection::TOpen, DEFAULT_BUDGET).unwrap();
                let closed = brute(lat, l, 0, &|s, t| s.iter().zip(t).any(|(a, b)| a <= b));
                let boundary = brute(lat, l, 0, &|s, t| {
                    s.iter().zip(t).all(|(a, b)| a >= b) && s.iter().zip(t).any(|(a, b)| a == b)
                });
                let sum: Vec<u64> = open.iter().zip(&boundary).map(|(a, b)| a + b).collect();
                assert_eq!(sum, closed, "{l:?}");
                let comp = count_points(lat, l, FacetSelection::Complement, DEFAULT_BUDGET).unwrap();
                let comp_brute = brute(lat, l, 1, &|s, t| s.iter().zip(t).any(|(a, b)| *b > 0 && a <= b));
                assert_eq!(comp, comp_brute, "{l:?}");
            }
        }
    }

    #[test]
    fn counting_identity_with_the_denominator_series() {
        let lats = [trefoil(), Lattice::new(&LensData::new(5, 2).unwrap().graph()), Lattice::new(&two_node_graph())];
        for lat in &lats {
            let n = lat.rank();
            for l in [
                lat.e_star(0) * q(2),
                (0..n).fold(lat.zero(), |acc, v| &acc + lat.e_star(v)),
                &(lat.e_star(n - 1) * q(3)) + lat.e_star(0),
            ] {
                let series = TruncatedSeries::expand_denominator(lat, &l, DEFAULT_BUDGET).unwrap();
                let counts = count_points(lat, &l, FacetSelection::TOpen, DEFAULT_BUDGET).unwrap();
                let from_series = series.counting(&l.0, lat.group().order() as usize).unwrap();
                let counts: Vec<i64> = counts.into_iter().map(|c| c as i64).collect();
                assert_eq!(from_series, counts, "{l:?}");
            }
        }
    }

    fn samples(xs: &[i128]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn empty_polytope() {
        let lat = trefoil();
        for sel in [FacetSelection::TOpen, FacetSelection::Complement] {
            assert_eq!(count_points(&lat, &lat.zero(), sel, DEFAULT_BUDGET).unwrap(), vec![0]);
        }
    }

    #[test]
    fn trefoil_counts_and_fit() {
        let lat = trefoil();
        let w = lat.e_star(0).clone();
        let counts: Vec<u64> = counts_along_ray(&lat, &w, 5, FacetSelection::TOpen, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .map(|c| c[0])
            .collect();
        assert_eq!(counts, vec![0, 21, 104, 291, 624, 1145]);
        let f = fit_along_ray(&lat, &w, &lat.group().zero(), 0, 12, FacetSelection::TOpen, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.period, 1);
        assert_eq!(f.to_string(), "7λ³+10λ²+4λ");
        assert_eq!(f.degree(), 3);
        assert_eq!(f.constant_coefficient(0), Some(Q::zero()));
        assert_eq!(
            count_points(&lat, &w, FacetSelection::TOpen, 10),
            Err(Error::Budget(10))
        );
    }

    #[test]
    fn lens_counts_match_closed_form() {
        for (p, q_) in [(2, 1), (5, 2), (7, 3)] {
            let d = LensData::new(p, q_).unwrap();
            let lat = Lattice::new(&d.graph());
            let s = d.s();
            let gs = lat.class_of_e_star(s - 1);
            for (i, j) in [(1, 0), (0, 1), (1, 1), (2, 3), (4, 1)] {
                let l = &(lat.e_star(0) * q(i)) + &(lat.e_star(s - 1) * q(j));
                let counts = count_points(&lat, &l, FacetSelection::TOpen, DEFAULT_BUDGET).unwrap();
                for a in 0..p {
                    let idx = lat.group().index(&lat.group().scale(&gs, a));
                    assert_eq!(q(counts[idx] as i128), d.ehrhart(a, &l).unwrap(), "L({p},{q_}) a={a} l={l:?}");
                }
                if l.is_integral() && s > 1 {
                    let total: u64 = counts.iter().sum();
                    assert_eq!(q(total as i128), d.ehrhart_ne(&l).unwrap());
                }
            }
        }
    }

    #[test]
    fn l21_period_two_fits() {
        let d = LensData::new(2, 1).unwrap();
        let lat = Lattice::new(&d.graph());
        assert_eq!(lat.graph().end_factors(), vec![0, 0]);
        let w = lat.e_star(0).clone();
        let gs = lat.class_of_e_star(0);
        for a in 0..2 {
            let h = lat.group().scale(&gs, a);
            let f = fit_along_ray(&lat, &w, &h, 0, 12, FacetSelection::TOpen, 2, DEFAULT_BUDGET).unwrap();
            assert_eq!(f.period, 2);
            for lam in 0..20 {
                assert_eq!(f.eval(lam), d.ehrhart(a, &(&w * q(lam))).unwrap(), "a={a} λ={lam}");
            }
        }
    }

    #[test]
    fn fitting() {
        assert!(matches!(fit_quasipolynomial(0, &[], 2, 3), Err(Error::Fit(_))));
        assert!(matches!(fit_along_ray(&trefoil(), &trefoil().zero(), &trefoil().group().zero(), 3, 2, FacetSelection::TOpen, 1, 10), Err(Error::Fit(_))));
        // λ² + [λ odd]
        let ys: Vec<i128> = (0..12).map(|l: i128| l * l + (l % 2)).collect();
        let f = fit_quasipolynomial(0, &samples(&ys), 2, 3).unwrap();
        assert_eq!(f.period, 2);
        assert_eq!(f.eval(-3), q(10));
        assert_eq!(f.to_string(), "[λ≡0 mod 2] λ²; [λ≡1 mod 2] λ²+1");
        assert!(matches!(fit_quasipolynomial(0, &samples(&ys), 2, 1), Err(Error::Fit(_))));
        assert!(matches!(fit_quasipolynomial(0, &samples(&ys[..7]), 2, 2), Err(Error::Fit(_))));
        let lat = trefoil();
        let outside = lat.e(0);
        assert_eq!(
            fit_along_ray(&lat, &outside, &lat.group().zero(), 0, 5, FacetSelection::TOpen, 1, DEFAULT_BUDGET),
            Err(Error::NotInCone)
        );
    }

    #[test]
    fn reciprocity() {
        let cases: Vec<(Lattice, LatticeVector, usize, usize)> = vec![
            (trefoil(), trefoil().e_star(0).clone(), 10, 1),
            (Lattice::new(&LensData::new(3, 1).unwrap().graph()), Lattice::new(&LensData::new(3, 1).unwrap().graph()).e_star(0).clone(), 14, 3),
            {
                let lat = Lattice::new(&LensData::new(7, 3).unwrap().graph());
                let w = &lat.e_star(0).clone() + &lat.e_star(2).clone();
                (lat, w, 30, 7)
            },
            {
                let lat = Lattice::new(&two_node_graph());
                let w = &lat.e_star(0).clone() + &lat.e_star(3).clone();
                (lat, w, 13, 2)
            },
        ];
        for (lat, w, n, rho) in &cases {
            for h in lat.classes() {
                assert!(reciprocity_check(lat, w, &h, *n, *rho, DEFAULT_BUDGET).unwrap(), "{w:?} {h:?}");
            }
        }
        let (lat, w, n, rho) = &cases[0];
        let h = lat.group().zero();
        assert!(!reciprocity_check_with(lat, w, &h, *n, *rho, DEFAULT_BUDGET, FacetSelection::TOpen).unwrap());
    }

    #[test]
    fn trefoil_node_coefficients() {
        let lat = trefoil();
        let nc = node_coefficients(&lat, q(1)).unwrap();
        assert_eq!(nc.nodes, vec![0]);
        assert_eq!(nc.j, vec![vec![q(42)]]);
        let expected: BTreeMap<Vec<usize>, Q> =
            [(vec![3], q(42)), (vec![2], q(20)), (vec![1], q(4))].into_iter().collect();
        assert_eq!(nc.entries, expected);
        assert_eq!(fit_node_coefficients(&lat, 1, 6, DEFAULT_BUDGET).unwrap(), expected);
        assert_eq!(delta_identity(&lat, &[3], DEFAULT_BUDGET).unwrap(), q(1));
    }

    #[test]
    fn two_node_coefficients() {
        let g = unimodular_graph();
        let tn = TwoNode::new(&g).unwrap();
        let lat = &tn.lat;
        assert_eq!(lat.det(), 1);
        let pc = q(tn.pc(&lat.group().zero()).unwrap());
        assert_eq!(pc, q(202));
        let nc = node_coefficients(lat, pc).unwrap();
        assert_eq!(nc.j, vec![vec![q(483), q(735)], vec![q(735), q(1120)]]);
        assert_eq!(nc.j, vec![vec![tn.data.j[0][0], tn.data.j[0][1]], vec![tn.data.j[1][0], tn.data.j[1][1]]]);
        assert_eq!(nc.constant_key, vec![1, 1]);
        assert_eq!(nc.entries[&vec![1, 1]], qr(655, 12));
        assert_eq!(fit_node_coefficients(lat, 1, 5, DEFAULT_BUDGET).unwrap(), nc.entries);
        for lam in [[1, 1], [3, 2], [2, 5]] {
            assert_eq!(delta_identity(lat, &lam, DEFAULT_BUDGET).unwrap(), pc);
        }
        let nontrivial = Lattice::new(&seifert_to_graph(-2, &[(2, 1), (2, 1), (2, 1)]).unwrap());
        assert_eq!(node_coefficients(&nontrivial, q(0)), Err(Error::NontrivialGroup));
        assert_eq!(delta_identity(lat, &[1], DEFAULT_BUDGET), Err(Error::NodeCount { expected: 1, found: 2 }));
    }

    #[test]
    fn seifert_coefficients_match_fits() {
        for (b, legs) in [(-2i64, vec![(2i128, 1i128), (2, 1), (2, 1)]), (-2, vec![(3, 1), (3, 2), (3, 2)]), (-1, vec![(3, 1), (3, 1), (4, 1)])] {
            let sf = Seifert::new(&seifert_to_graph(b, &legs).unwrap()).unwrap();
            assert_eq!(sf.data.o, 1);
            let w = sf.lat.e_star(0).clone();
            for h in sf.lat.classes() {
                let [a3, a2, a1] = sf.data.ehrhart_coeffs(&sf.lift(&h)).unwrap();
                let f = fit_along_ray(&sf.lat, &w, &h, 0, 12, FacetSelection::TOpen, 1, DEFAULT_BUDGET).unwrap();
                assert_eq!(f.coeffs[0][3] * q(6), a3);
                assert_eq!(f.coeffs[0][2] * q(2), a2);
                assert_eq!(f.coeffs[0][1], a1);
            }
        }
    }
}
