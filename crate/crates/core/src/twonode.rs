//! Graphs with two nodes: orbifold data, the monoid module `S_c` and the
//! periodic constants built from it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::group::Class;
use crate::lattice::{Lattice, LatticeVector};
use crate::lens::continuant;
use crate::rational::{ceil, floor, frac, lcm, q, qr, Q};
use crate::seifert::{read_leg, Leg};
use crate::series::norm_r;

/// A point `(ℓ, ℓ̃)` of `Z²`.
pub type Point = (i128, i128);

/// Default number of `(v_1, v_2)` candidates tried by [`TwoNode::find_v1_v2`].
pub const DEFAULT_SEARCH_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoNodeData {
    pub node: usize,
    pub node_t: usize,
    pub b0: i128,
    pub b0_t: i128,
    pub legs: Vec<Leg>,
    pub legs_t: Vec<Leg>,
    /// Chain vertices `Ē_1, ..., Ē_s`, with `Ē_1` next to `E_0`.
    pub chain: Vec<usize>,
    pub chain_cf: Vec<i128>,
    pub alpha0: i128,
    pub omega0: i128,
    pub omega0_t: i128,
    pub tau: i128,
    pub e: Q,
    pub e_t: Q,
    /// `det I^orb = eẽ - 1/α_0²`.
    pub eps: Q,
    pub i_orb: [[Q; 2]; 2],
    /// `(-I^orb)^{-1}`.
    pub j: [[Q; 2]; 2],
}

/// Reads the two-node data with `E_0 = node` and `Ẽ_0 = node_t`.
pub fn extract_twonode_at(g: &PlumbingGraph, node: usize, node_t: usize) -> Result<TwoNodeData> {
    let nodes = g.nodes();
    if nodes.len() != 2 || !nodes.contains(&node) || !nodes.contains(&node_t) || node == node_t {
        return Err(Error::NodeCount { expected: 2, found: nodes.len() });
    }
    let mut chain = None;
    let mut legs = Vec::new();
    for &s in g.neighbors(node) {
        let w = g.walk(node, s);
        if *w.last().unwrap() == node_t {
            chain = Some(w[..w.len() - 1].to_vec());
        } else {
            legs.push(read_leg(g, node, s)?);
        }
    }
    let chain = chain.ok_or_else(|| Error::Invariant("nodes are not joined by a chain".into()))?;
    let mut legs_t = Vec::new();
    for &s in g.neighbors(node_t) {
        let w = g.walk(node_t, s);
        if *w.last().unwrap() != node {
            legs_t.push(read_leg(g, node_t, s)?);
        }
    }
    let chain_cf: Vec<i128> = chain.iter().map(|&v| -(g.euler(v) as i128)).collect();
    for (&v, &k) in chain.iter().zip(&chain_cf) {
        if k < 2 {
            return Err(Error::NonNormalizedString(g.id(v).into()));
        }
    }
    let s = chain_cf.len();
    let (alpha0, omega0, omega0_t, tau) = if s == 0 {
        (1, 0, 0, -1)
    } else {
        (
            continuant(&chain_cf, 1, s),
            continuant(&chain_cf, 2, s),
            continuant(&chain_cf, 1, s - 1),
            continuant(&chain_cf, 2, s - 1),
        )
    };
    let b0 = g.euler(node) as i128;
    let b0_t = g.euler(node_t) as i128;
    let e = legs.iter().fold(q(b0) + qr(omega0, alpha0), |s, l| s + qr(l.omega, l.alpha));
    let e_t = legs_t.iter().fold(q(b0_t) + qr(omega0_t, alpha0), |s, l| s + qr(l.omega, l.alpha));
    let off = qr(1, alpha0);
    let eps = e * e_t - off * off;
    let j = [[-e_t / eps, off / eps], [off / eps, -e / eps]];
    Ok(TwoNodeData {
        node,
        node_t,
        b0,
        b0_t,
        legs,
        legs_t,
        chain,
        chain_cf,
        alpha0,
        omega0,
        omega0_t,
        tau,
        e,
        e_t,
        eps,
        i_orb: [[e, off], [off, e_t]],
        j,
    })
}

/// Two-node data, the first node (in vertex order) playing `E_0`.
pub fn extract_twonode(g: &PlumbingGraph) -> Result<TwoNodeData> {
    let nodes = g.nodes();
    if nodes.len() != 2 {
        return Err(Error::NodeCount { expected: 2, found: nodes.len() });
    }
    extract_twonode_at(g, nodes[0], nodes[1])
}

/// Reduced coefficients `(c_0, c̃_0, c̄, c_i, c̃_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoNodeLift {
    pub c0: i128,
    pub c0_t: i128,
    pub cbar: i128,
    pub c: Vec<i128>,
    pub c_t: Vec<i128>,
}

impl TwoNodeLift {
    fn add_scaled(&self, o: &TwoNodeLift, k: i128) -> TwoNodeLift {
        TwoNodeLift {
            c0: self.c0 + k * o.c0,
            c0_t: self.c0_t + k * o.c0_t,
            cbar: self.cbar + k * o.cbar,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + k * b).collect(),
            c_t: self.c_t.iter().zip(&o.c_t).map(|(a, b)| a + k * b).collect(),
        }
    }
}

fn leg_floor_sum(legs: &[Leg], c: &[i128], l: i128) -> i128 {
    legs.iter().zip(c).map(|(leg, ci)| Integer::div_floor(&(ci - leg.omega * l), &leg.alpha)).sum()
}

/// Integers `t` with `0 ≤ γ + β(t + s) < m`, as an inclusive range.
fn strip(gamma: Q, beta: i128, m: i128, s: Q) -> (i128, i128) {
    if beta == 0 {
        return if !gamma.is_negative() && gamma < q(m) { (i128::MIN, i128::MAX) } else { (1, 0) };
    }
    let lo = -gamma / q(beta) - s;
    let hi = (q(m) - gamma) / q(beta) - s;
    if beta > 0 {
        (ceil(&lo), ceil(&hi) - 1)
    } else {
        (floor(&hi) + 1, floor(&lo))
    }
}

fn lattice_points_in_box(v1: Point, v2: Point, shift: (Q, Q)) -> Vec<(Point, [Q; 2])> {
    let det = v1.0 * v2.1 - v1.1 * v2.0;
    let sg = det.signum();
    let xs = [0, v1.0, v2.0, v1.0 + v2.0];
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let mut out = Vec::new();
    for l in ceil(&(q(x0) - shift.0))..=floor(&(q(x1) - shift.0)) {
        // det·q1 = a v2.1 - b v2.0 and det·q2 = b v1.0 - a v1.1, with a = l + c
        let a = q(l) + shift.0;
        let (r1, s1) = strip(a * q(sg * v2.1), -sg * v2.0, det.abs(), shift.1);
        let (r2, s2) = strip(-a * q(sg * v1.1), sg * v1.0, det.abs(), shift.1);
        for lt in r1.max(r2)..=s1.min(s2) {
            let b = q(lt) + shift.1;
            let q1 = (a * q(v2.1) - b * q(v2.0)) / q(det);
            let q2 = (b * q(v1.0) - a * q(v1.1)) / q(det);
            out.push(((l, lt), [q1, q2]));
        }
    }
    out
}

#[cfg(test)]
fn lattice_points_in_box_scan(v1: Point, v2: Point, shift: (Q, Q)) -> Vec<(Point, [Q; 2])> {
    let det = v1.0 * v2.1 - v1.1 * v2.0;
    let xs = [0, v1.0, v2.0, v1.0 + v2.0];
    let ys = [0, v1.1, v2.1, v1.1 + v2.1];
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut out = Vec::new();
    for l in ceil(&(q(x0) - shift.0))..=floor(&(q(x1) - shift.0)) {
        for lt in ceil(&(q(y0) - shift.1))..=floor(&(q(y1) - shift.1)) {
            let (a, b) = (q(l) + shift.0, q(lt) + shift.1);
            let q1 = (a * q(v2.1) - b * q(v2.0)) / q(det);
            let q2 = (b * q(v1.0) - a * q(v1.1)) / q(det);
            if !q1.is_negative() && q1 < q(1) && !q2.is_negative() && q2 < q(1) {
                out.push(((l, lt), [q1, q2]));
            }
        }
    }
    out
}

/// Which check certified a `(v_1, v_2)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Condition (C) on the shifted box.
    BoxCondition,
    /// `Ñ_0(v_1) ≥ d̃-1` and `N_0(v_2) ≥ d-1`.
    Universal,
}

/// A two-node graph together with its lattice.
#[derive(Debug, Clone)]
pub struct TwoNode {
    pub lat: Lattice,
    pub data: TwoNodeData,
}

impl TwoNode {
    pub fn new(g: &PlumbingGraph) -> Result<Self> {
        Ok(TwoNode { data: extract_twonode(g)?, lat: Lattice::new(g) })
    }

    pub fn with_orientation(g: &PlumbingGraph, node: usize, node_t: usize) -> Result<Self> {
        Ok(TwoNode { data: extract_twonode_at(g, node, node_t)?, lat: Lattice::new(g) })
    }

    fn chain_n(&self, v: usize, w: usize) -> i128 {
        continuant(&self.data.chain_cf, v, w)
    }

    fn leg_coeff(legs: &[Leg], a: &[i128]) -> Vec<i128> {
        legs.iter()
            .map(|leg| {
                let nu = leg.cf.len();
                leg.vertices.iter().enumerate().map(|(k, &v)| a[v] * continuant(&leg.cf, k + 2, nu)).sum()
            })
            .collect()
    }

    /// Reduced transform of the element with dual coordinates `a`.
    pub fn lift_of_dual(&self, a: &[i128]) -> TwoNodeLift {
        let d = &self.data;
        let mut c0 = a[d.node];
        let mut cbar = 0;
        for (k, &v) in d.chain.iter().enumerate() {
            let k = k + 1;
            if k == 1 {
                cbar += a[v];
            } else {
                c0 -= self.chain_n(2, k - 1) * a[v];
                cbar += self.chain_n(1, k - 1) * a[v];
            }
        }
        TwoNodeLift {
            c0,
            c0_t: a[d.node_t],
            cbar,
            c: Self::leg_coeff(&d.legs, a),
            c_t: Self::leg_coeff(&d.legs_t, a),
        }
    }

    pub fn lift_of(&self, x: &LatticeVector) -> Option<TwoNodeLift> {
        Some(self.lift_of_dual(&self.lat.dual_coords(x)?))
    }

    /// `Ē*_1`, or `Ẽ*_0` when the nodes are adjacent.
    fn e_bar_1(&self) -> usize {
        self.data.chain.first().copied().unwrap_or(self.data.node_t)
    }

    /// `c_0E*_0 + c̃_0Ẽ*_0 + c̄Ē*_1 + Σc_iE*_i + Σc̃_jẼ*_j`.
    pub fn element(&self, lift: &TwoNodeLift) -> LatticeVector {
        let d = &self.data;
        let mut a = vec![0i128; self.lat.rank()];
        a[d.node] += lift.c0;
        a[d.node_t] += lift.c0_t;
        a[self.e_bar_1()] += lift.cbar;
        for (leg, c) in d.legs.iter().zip(&lift.c).chain(d.legs_t.iter().zip(&lift.c_t)) {
            a[*leg.vertices.last().unwrap()] += c;
        }
        self.lat.from_dual(&a)
    }

    /// `(A, Ã)`.
    pub fn a_pair(&self, lift: &TwoNodeLift) -> (Q, Q) {
        let d = &self.data;
        let a = d.legs.iter().zip(&lift.c).fold(q(lift.c0) + qr(d.omega0 * lift.cbar, d.alpha0), |s, (l, c)| {
            s + qr(*c, l.alpha)
        });
        let at = d
            .legs_t
            .iter()
            .zip(&lift.c_t)
            .fold(q(lift.c0_t) + qr(lift.cbar, d.alpha0), |s, (l, c)| s + qr(*c, l.alpha));
        (a, at)
    }

    /// `(c, c̃) = J (A, Ã)`.
    pub fn c_pair(&self, lift: &TwoNodeLift) -> (Q, Q) {
        let (a, at) = self.a_pair(lift);
        let j = &self.data.j;
        (j[0][0] * a + j[0][1] * at, j[1][0] * a + j[1][1] * at)
    }

    /// Change of the reduced coefficients when `E_v` is added.
    pub fn shift_of(&self, v: usize) -> TwoNodeLift {
        let col: Vec<i128> = (0..self.lat.rank()).map(|u| -self.lat.form()[u][v]).collect();
        self.lift_of_dual(&col)
    }

    /// Shifts by multiples of `E_0` and `Ẽ_0` so that `c, c̃ ∈ [0,1)`.
    pub fn normalize(&self, lift: &TwoNodeLift) -> TwoNodeLift {
        let (c, ct) = self.c_pair(lift);
        let out = lift.add_scaled(&self.shift_of(self.data.node), -floor(&c));
        out.add_scaled(&self.shift_of(self.data.node_t), -floor(&ct))
    }

    /// Normalized lift of `h` (the reduced transform of `r_h`).
    pub fn lift(&self, h: &Class) -> TwoNodeLift {
        self.normalize(&self.lift_of(&self.lat.r_h(h)).expect("r_h ∈ L'"))
    }

    /// Same class and `(c, c̃)`: `c_0 += k`, `c_i -= kα_i` (from `g_0 = α_i g_i`).
    pub fn shift_relation_leg(&self, lift: &TwoNodeLift, i: usize, k: i128) -> TwoNodeLift {
        let mut out = lift.clone();
        out.c0 += k;
        out.c[i] -= k * self.data.legs[i].alpha;
        out
    }

    /// Same class and `(c, c̃)`, from `α_0 ḡ = ω_0 g_0 + g̃_0`.
    pub fn shift_relation_chain(&self, lift: &TwoNodeLift, k: i128) -> TwoNodeLift {
        let mut out = lift.clone();
        out.cbar += k * self.data.alpha0;
        out.c0 -= k * self.data.omega0;
        out.c0_t -= k;
        out
    }

    /// `ℓ + ω̃_0 ℓ̃ ≡ c̄ (mod α_0)`.
    pub fn congruent(&self, lift: &TwoNodeLift, p: Point) -> bool {
        (p.0 + self.data.omega0_t * p.1 - lift.cbar).rem_euclid(self.data.alpha0) == 0
    }

    /// `(N_c(ℓ, ℓ̃), Ñ_c(ℓ, ℓ̃))`.
    pub fn n_pair(&self, lift: &TwoNodeLift, p: Point) -> Result<(i128, i128)> {
        if !self.congruent(lift, p) {
            return Err(Error::Congruence);
        }
        let d = &self.data;
        let (l, lt) = p;
        let n = d.alpha0 * lift.c0 + d.omega0 * lift.cbar - (d.alpha0 * d.b0 + d.omega0) * l - lt
            + d.alpha0 * leg_floor_sum(&d.legs, &lift.c, l);
        let nt = d.alpha0 * lift.c0_t + lift.cbar - (d.alpha0 * d.b0_t + d.omega0_t) * lt - l
            + d.alpha0 * leg_floor_sum(&d.legs_t, &lift.c_t, lt);
        if n % d.alpha0 != 0 || nt % d.alpha0 != 0 {
            return Err(Error::Invariant("N_c not integral under the congruence".into()));
        }
        Ok((n / d.alpha0, nt / d.alpha0))
    }

    /// Membership in `S_c`.
    pub fn in_s(&self, lift: &TwoNodeLift, p: Point) -> bool {
        matches!(self.n_pair(lift, p), Ok((n, nt)) if n >= 0 && nt >= 0)
    }

    /// Membership in `S̄_c`: `-I^orb (ℓ+c, ℓ̃+c̃) ≥ 0` and the congruence.
    pub fn in_s_bar(&self, lift: &TwoNodeLift, p: Point) -> bool {
        let (c, ct) = self.c_pair(lift);
        let (x, y) = (q(p.0) + c, q(p.1) + ct);
        let m = &self.data.i_orb;
        self.congruent(lift, p) && !(m[0][0] * x + m[0][1] * y).is_positive() && !(m[1][0] * x + m[1][1] * y).is_positive()
    }

    /// Smallest `v_1 = (ℓ_1, -eα_0ℓ_1)` satisfying (A); all others are its multiples.
    pub fn v1_min(&self) -> Point {
        let d = &self.data;
        let step = d.legs.iter().fold(1, |a, l| lcm(a, l.alpha));
        let slope = -d.e * q(d.alpha0);
        let zero = self.zero_lift();
        let mut l = step;
        loop {
            let lt = slope * q(l);
            if lt.is_integer() && self.congruent(&zero, (l, lt.to_integer())) {
                return (l, lt.to_integer());
            }
            l += step;
        }
    }

    /// Smallest `v_2 = (-ẽα_0ℓ̃_2, ℓ̃_2)` satisfying (B).
    pub fn v2_min(&self) -> Point {
        let d = &self.data;
        let step = d.legs_t.iter().fold(1, |a, l| lcm(a, l.alpha));
        let slope = -d.e_t * q(d.alpha0);
        let zero = self.zero_lift();
        let mut lt = step;
        loop {
            let l = slope * q(lt);
            if l.is_integer() && self.congruent(&zero, (l.to_integer(), lt)) {
                return (l.to_integer(), lt);
            }
            lt += step;
        }
    }

    pub fn zero_lift(&self) -> TwoNodeLift {
        TwoNodeLift {
            c0: 0,
            c0_t: 0,
            cbar: 0,
            c: vec![0; self.data.legs.len()],
            c_t: vec![0; self.data.legs_t.len()],
        }
    }

    /// Conditions (A) and (B).
    pub fn check_ab(&self, v1: Point, v2: Point) -> bool {
        let z = self.zero_lift();
        let d = &self.data;
        let a = d.legs.iter().all(|l| (l.omega * v1.0) % l.alpha == 0) && matches!(self.n_pair(&z, v1), Ok((0, _)));
        let b = d.legs_t.iter().all(|l| (l.omega * v2.1) % l.alpha == 0) && matches!(self.n_pair(&z, v2), Ok((_, 0)));
        a && b && v1.0 > 0 && v2.1 > 0
    }

    /// Integer points of `(Box(v_1,v_2) - (c,c̃))` satisfying the congruence.
    pub fn box_points(&self, lift: &TwoNodeLift, v1: Point, v2: Point) -> Vec<Point> {
        lattice_points_in_box(v1, v2, self.c_pair(lift))
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| self.congruent(lift, *p))
            .collect()
    }

    /// Condition (C) for `lift`.
    pub fn check_c(&self, lift: &TwoNodeLift, v1: Point, v2: Point) -> bool {
        let z = self.zero_lift();
        let (Ok((n2, _)), Ok((_, n1t))) = (self.n_pair(&z, v2), self.n_pair(&z, v1)) else { return false };
        if n2 < 0 || n1t < 0 {
            return false;
        }
        self.box_points(lift, v1, v2).into_iter().all(|p| {
            let a = self.n_pair(lift, (p.0 + v2.0, p.1 + v2.1)).is_ok_and(|(n, _)| n >= 0);
            let b = self.n_pair(lift, (p.0 + v1.0, p.1 + v1.1)).is_ok_and(|(_, n)| n >= 0);
            a && b
        })
    }

    /// The universal restrictions `Ñ_0(v_1) ≥ d̃-1`, `N_0(v_2) ≥ d-1`.
    pub fn check_universal(&self, v1: Point, v2: Point) -> bool {
        let z = self.zero_lift();
        let dd = self.data.legs.len() as i128;
        let dt = self.data.legs_t.len() as i128;
        matches!((self.n_pair(&z, v1), self.n_pair(&z, v2)), (Ok((_, a)), Ok((b, _))) if a >= dt - 1 && b >= dd - 1)
    }

    /// Checks that `(v_1, v_2)` is usable for `lift`.
    pub fn certify(&self, lift: &TwoNodeLift, v1: Point, v2: Point) -> Result<Certificate> {
        if !self.check_ab(v1, v2) {
            return Err(Error::Precondition(format!("{v1:?}, {v2:?} violate (A)/(B)")));
        }
        if self.check_c(lift, v1, v2) {
            Ok(Certificate::BoxCondition)
        } else if self.check_universal(v1, v2) {
            Ok(Certificate::Universal)
        } else {
            Err(Error::Precondition(format!("{v1:?}, {v2:?} violate (C)")))
        }
    }

    /// Multiples `m_1 v_1^min`, `m_2 v_2^min` with the smallest `max(m_1, m_2)`
    /// (then lexicographically smallest) passing condition (C), searched up
    /// to the smallest multiples meeting the universal restrictions, which
    /// are the fallback.
    pub fn find_v1_v2(&self, lift: &TwoNodeLift, cap: u64) -> Result<(Point, Point)> {
        let (u1, u2) = (self.v1_min(), self.v2_min());
        let mul = |p: Point, m: i128| (p.0 * m, p.1 * m);
        let z = self.zero_lift();
        let dd = self.data.legs.len() as i128;
        let dt = self.data.legs_t.len() as i128;
        let m1 = (1..=cap as i128).find(|&m| self.n_pair(&z, mul(u1, m)).is_ok_and(|(_, n)| n >= dt - 1));
        let m2 = (1..=cap as i128).find(|&m| self.n_pair(&z, mul(u2, m)).is_ok_and(|(n, _)| n >= dd - 1));
        // past max(m1, m2) the universal pair is at least as small
        let limit = match (m1, m2) {
            (Some(a), Some(b)) => a.max(b),
            _ => i128::MAX,
        };
        let mut tried = 0u64;
        let mut k = 1i128;
        while tried < cap && k <= limit {
            for m1 in 1..=k {
                for m2 in 1..=k {
                    if m1.max(m2) != k {
                        continue;
                    }
                    tried += 1;
                    if self.check_c(lift, mul(u1, m1), mul(u2, m2)) {
                        return Ok((mul(u1, m1), mul(u2, m2)));
                    }
                }
            }
            k += 1;
        }
        match (m1, m2) {
            (Some(a), Some(b)) => Ok((mul(u1, a), mul(u2, b))),
            _ => Err(Error::SearchExhausted(format!("no (v1, v2) within {cap} candidates"))),
        }
    }

    /// `S⁻_{c,1}` and `S⁻_{c,2}`.
    pub fn s_minus_sets(&self, lift: &TwoNodeLift, v1: Point, v2: Point) -> Result<(Vec<Point>, Vec<Point>)> {
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for p in self.box_points(lift, v1, v2) {
            let (n, nt) = self.n_pair(lift, p)?;
            if n < 0 {
                s1.push(p);
            }
            if nt < 0 {
                s2.push(p);
            }
        }
        Ok((s1, s2))
    }

    fn require_normalized(&self, lift: &TwoNodeLift) -> Result<()> {
        let (c, ct) = self.c_pair(lift);
        let unit = |x: &Q| !x.is_negative() && *x < q(1);
        if unit(&c) && unit(&ct) {
            Ok(())
        } else {
            Err(Error::Precondition("c and c̃ must lie in [0,1)".into()))
        }
    }

    /// Exponents (without the shift `(c,c̃)`) of the monomials of `Z⁺_h`.
    pub fn z_plus(&self, lift: &TwoNodeLift, v1: Point, v2: Point) -> Result<Vec<Point>> {
        self.require_normalized(lift)?;
        self.certify(lift, v1, v2)?;
        let (s1, s2) = self.s_minus_sets(lift, v1, v2)?;
        let mut out = Vec::new();
        for p in &s1 {
            for j in 1..=Integer::div_floor(&p.0, &v1.0) {
                out.push((p.0 - j * v1.0, p.1 - j * v1.1));
            }
        }
        for p in &s2 {
            for j in 1..=Integer::div_floor(&p.1, &v2.1) {
                out.push((p.0 - j * v2.0, p.1 - j * v2.1));
            }
        }
        out.extend(s1.iter().filter(|p| s2.contains(p)));
        Ok(out)
    }

    /// `Σ n_{l,1} + Σ n_{l,2} + |S⁻_{c,1} ∩ S⁻_{c,2}|`.
    pub fn pc_with(&self, lift: &TwoNodeLift, v1: Point, v2: Point) -> Result<i128> {
        Ok(self.z_plus(lift, v1, v2)?.len() as i128)
    }

    pub fn pc(&self, h: &Class) -> Result<i128> {
        let lift = self.lift(h);
        let (v1, v2) = self.find_v1_v2(&lift, DEFAULT_SEARCH_CAP)?;
        self.pc_with(&lift, v1, v2)
    }

    /// `sw_{h*σ_can}` from `pc(Z_{-h}) = -sw_{h*σ_can} - ((K+2r_{-h})² + |V|)/8`.
    pub fn sw(&self, h: &Class) -> Result<Q> {
        let mh = self.lat.group().neg(h);
        Ok(-q(self.pc(&mh)?) - norm_r(&self.lat, &mh))
    }

    pub fn casson_walker(&self) -> Result<Q> {
        self.lat.classes().iter().try_fold(Q::zero(), |s, h| Ok(s + self.sw(h)?))
    }

    /// Non-equivariant periodic constant, summing over `0 ≤ x_i < α_i`,
    /// `0 ≤ x̃_j < α̃_j`.
    pub fn pc_ne(&self) -> Q {
        let d = &self.data;
        let sums = |legs: &[Leg]| -> Vec<Q> {
            let mut out = vec![Q::zero()];
            for l in legs {
                out = out.iter().flat_map(|s| (0..l.alpha).map(move |x| s + qr(x, l.alpha))).collect();
            }
            out
        };
        let (left, right) = (sums(&d.legs), sums(&d.legs_t));
        let a0 = q(d.alpha0);
        let mut total = Q::zero();
        for s in &left {
            for st in &right {
                let (si, sr) = (floor(s), frac(s));
                let (ti, tr) = (floor(st), frac(st));
                total += q(si * ti);
                for k in 0..si {
                    total += q(floor(&(-d.e_t * a0 * (q(k) + sr) + tr)));
                }
                for k in 0..ti {
                    total += q(floor(&(-d.e * a0 * (q(k) + tr) + sr)));
                }
            }
        }
        total
    }
}
