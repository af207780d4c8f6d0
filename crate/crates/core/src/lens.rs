//! Lens spaces `L(p,q)`: chains of rational curves.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::LatticeVector;
use crate::rational::{ceil, frac, gcd, inv_mod, q, qr, sawtooth, Q};

/// Negative continued fraction `p/q = [k_1, ..., k_s]`, all `k_i ≥ 2`.
pub fn cf_expand(p: i128, q: i128) -> Result<Vec<i128>> {
    if p <= 0 || q <= 0 || q > p || gcd(p, q) != 1 {
        return Err(Error::InvalidLens { p, q });
    }
    let (mut a, mut b) = (p, q);
    let mut out = Vec::new();
    while b != 0 {
        let k = ceil(&qr(a, b));
        out.push(k);
        let r = k * b - a;
        a = b;
        b = r;
    }
    Ok(out)
}

/// `k_1 - 1/(k_2 - 1/(... - 1/k_s))`.
pub fn cf_value(ks: &[i128]) -> Q {
    let mut it = ks.iter().rev();
    let Some(&last) = it.next() else { return Q::zero() };
    let mut x = q(last);
    for &k in it {
        x = q(k) - x.recip();
    }
    x
}

/// `s(q,p) = Σ_{l=0}^{p-1} ((l/p))((ql/p))`.
pub fn dedekind_sum(q_: i128, p: i128) -> Q {
    (0..p).fold(Q::zero(), |s, l| s + sawtooth(&qr(l, p)) * sawtooth(&qr(q_ * l, p)))
}

/// Continuant `n_{v,w}` of `k_v..k_w` (1-based), with `n_{w+1,w} = 1` and
/// `n_{w+2,w} = 0`.
pub fn continuant(ks: &[i128], v: usize, w: usize) -> i128 {
    if v == w + 2 {
        return 0;
    }
    let (mut prev, mut cur) = (0i128, 1i128);
    let mut i = w;
    while i >= v {
        let next = ks[i - 1] * cur - prev;
        prev = cur;
        cur = next;
        i -= 1;
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensData {
    pub p: i128,
    pub q: i128,
    pub q_prime: i128,
    pub cf: Vec<i128>,
    // n[v][w] for 1 ≤ v ≤ w+1, 0 ≤ w ≤ s
    n: Vec<Vec<i128>>,
}

impl LensData {
    pub fn new(p: i128, q_: i128) -> Result<Self> {
        let cf = cf_expand(p, q_)?;
        let s = cf.len();
        let mut n = vec![vec![0i128; s + 1]; s + 2];
        for v in 1..=s + 1 {
            for w in v.saturating_sub(1)..=s {
                n[v][w] = continuant(&cf, v, w);
            }
        }
        let q_prime = inv_mod(q_, p).ok_or(Error::InvalidLens { p, q: q_ })?;
        Ok(LensData { p, q: q_, q_prime, cf, n })
    }

    /// Reads `p/q` off a chain, walking from its first end in declaration
    /// order. Returns the data and the chain order of the vertices.
    pub fn from_graph(g: &PlumbingGraph) -> Result<(Self, Vec<usize>)> {
        let nodes = g.nodes().len();
        if nodes != 0 {
            return Err(Error::NodeCount { expected: 0, found: nodes });
        }
        let order = if g.len() == 1 {
            vec![0]
        } else {
            let start = g.ends()[0];
            let mut order = vec![start];
            order.extend(g.walk(start, g.neighbors(start)[0]));
            order
        };
        let ks: Vec<i128> = order.iter().map(|&v| -(g.euler(v) as i128)).collect();
        for (&v, &k) in order.iter().zip(&ks) {
            if k < 2 {
                return Err(Error::NonNormalizedString(g.id(v).into()));
            }
        }
        let p = continuant(&ks, 1, ks.len());
        let q_ = continuant(&ks, 2, ks.len());
        let d = LensData::new(p, q_)?;
        debug_assert_eq!(d.cf, ks);
        Ok((d, order))
    }

    pub fn s(&self) -> usize {
        self.cf.len()
    }

    /// `n_{v,w}` with 1-based indices.
    pub fn n(&self, v: usize, w: usize) -> i128 {
        if v == w + 2 {
            return 0;
        }
        self.n[v][w]
    }

    pub fn graph(&self) -> PlumbingGraph {
        let ids: Vec<alloc::string::String> =
            (1..=self.s()).map(|i| alloc::format!("E{}", i)).collect();
        let vs = ids.iter().zip(&self.cf).map(|(id, k)| (id.clone(), -(*k as i64))).collect();
        let es = ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        PlumbingGraph::new(vs, es).expect("chains of -k, k≥2, are negative definite")
    }

    fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Q {
        let s = self.s();
        let mut t = Q::zero();
        for v in 0..s {
            t -= x.0[v] * y.0[v] * q(self.cf[v]);
            if v + 1 < s {
                t += x.0[v] * y.0[v + 1] + x.0[v + 1] * y.0[v];
            }
        }
        t
    }

    /// `E*_1` in `E`-coordinates: `p E*_1 = Σ n_{v+1,s} E_v`.
    pub fn e_star_first(&self) -> LatticeVector {
        let s = self.s();
        LatticeVector((1..=s).map(|v| qr(self.n(v + 1, s), self.p)).collect())
    }

    /// `E*_s` in `E`-coordinates: `p E*_s = Σ n_{1,v-1} E_v`.
    pub fn e_star_last(&self) -> LatticeVector {
        let s = self.s();
        LatticeVector((1..=s).map(|v| qr(self.n(1, v - 1), self.p)).collect())
    }

    /// `K = E*_1 + E*_s - Σ E_v`.
    pub fn canonical_class(&self) -> LatticeVector {
        let a = &self.e_star_first() + &self.e_star_last();
        LatticeVector(a.0.iter().map(|x| x - q(1)).collect())
    }

    pub fn chi(&self, x: &LatticeVector) -> Q {
        -self.pair(x, &(x + &self.canonical_class())) / q(2)
    }

    /// `r_{a g_s}`, where `g_s = [E*_s]`.
    pub fn r(&self, a: i128) -> LatticeVector {
        (&self.e_star_last() * q(a)).frac()
    }

    /// The `a` with `[x] = a g_s`, read off the `E_s`-coordinate.
    pub fn class_index(&self, x: &LatticeVector) -> Option<i128> {
        let t = x.0[self.s() - 1] * q(self.p);
        if !t.is_integer() {
            return None;
        }
        Some((t.numer() * self.q).rem_euclid(self.p))
    }

    /// `χ(s_{a g_s}) = a(1-p)/(2p) + Σ_{j=1}^{a} {j q'/p}`.
    pub fn chi_s_h(&self, a: i128) -> Q {
        let a = a.rem_euclid(self.p);
        let mut t = qr(a * (1 - self.p), 2 * self.p);
        for j in 1..=a {
            t += frac(&qr(j * self.q_prime, self.p));
        }
        t
    }

    /// `K² + |V| = 4((p-1)/(2p) - 3 s(q,p))`.
    pub fn k2v(&self) -> Q {
        q(4) * (qr(self.p - 1, 2 * self.p) - q(3) * dedekind_sum(self.q, self.p))
    }

    /// Seiberg–Witten invariant of the spin^c structure `(a g_s) * σ_can`.
    pub fn sw(&self, a: i128) -> Q {
        -self.k2v() / q(8) + self.chi_s_h(-a)
    }

    /// Casson–Walker invariant `p s(q,p)/2`.
    pub fn casson_walker(&self) -> Q {
        q(self.p) * dedekind_sum(self.q, self.p) / q(2)
    }

    /// `Σ_h χ(r_h) = (p-1)/4 - p s(q,p)`.
    pub fn sum_chi_r(&self) -> Q {
        qr(self.p - 1, 4) - q(self.p) * dedekind_sum(self.q, self.p)
    }

    /// `Σ_h r_h = Σ_v d_v(p_v-1)/2 E_v`, `d_v = gcd(p, n_{1,v-1})`, `p_v = p/d_v`.
    pub fn sum_r(&self) -> LatticeVector {
        LatticeVector(
            (1..=self.s())
                .map(|v| {
                    let d = gcd(self.p, self.n(1, v - 1));
                    qr(d * (self.p / d - 1), 2)
                })
                .collect(),
        )
    }

    fn in_cone(&self, x: &LatticeVector) -> bool {
        let s = self.s();
        (0..s).all(|v| {
            let mut t = -x.0[v] * q(self.cf[v]);
            if v > 0 {
                t += x.0[v - 1];
            }
            if v + 1 < s {
                t += x.0[v + 1];
            }
            !t.is_positive()
        })
    }

    /// Number of class-`a g_s` lattice points of `P^(l')` with the
    /// non-coordinate facets removed, for `l'` in the Lipman cone.
    pub fn ehrhart(&self, a: i128, l: &LatticeVector) -> Result<Q> {
        if !self.in_cone(l) {
            return Err(Error::NotInCone);
        }
        let r = self.r(a);
        let shift = (&r - l).frac();
        Ok(self.chi(&(l + &shift)) - self.chi(&r))
    }

    /// Total number of lattice points of `P^(l)`, `l ∈ L` in the Lipman cone.
    pub fn ehrhart_ne(&self, l: &LatticeVector) -> Result<Q> {
        if !self.in_cone(l) || !l.is_integral() {
            return Err(Error::NotInCone);
        }
        Ok(q(self.p) * self.chi(l) - self.pair(l, &self.sum_r()))
    }

    /// `-p(l,l)/2`, the leading part of [`LensData::ehrhart_ne`].
    pub fn leading_term(&self, l: &LatticeVector) -> Q {
        -q(self.p) * self.pair(l, l) / q(2)
    }

    /// Euclidean area of `P^(l) = ∪_v {x_1 n_{v+1,s} + x_s n_{1,v-1} ≤ p l_v}`.
    pub fn polytope_area(&self, l: &LatticeVector) -> Q {
        let s = self.s();
        // triangle v has legs A_v on the x_1-axis and B_v on the x_s-axis
        let tri: Vec<(Q, Q)> = (1..=s)
            .map(|v| {
                let c = q(self.p) * l.0[v - 1];
                (c / q(self.n(v + 1, s)), c / q(self.n(1, v - 1)))
            })
            .filter(|(a, b)| a.is_positive() && b.is_positive())
            .collect();
        let height = |x: &Q| -> Q {
            tri.iter()
                .map(|(a, b)| if x < a { b * (Q::one() - x / a) } else { Q::zero() })
                .max()
                .unwrap_or_else(Q::zero)
        };
        let mut xs: Vec<Q> = vec![Q::zero()];
        for (i, (a1, b1)) in tri.iter().enumerate() {
            xs.push(*a1);
            for (a2, b2) in &tri[i + 1..] {
                // b1(1 - x/a1) = b2(1 - x/a2)
                let den = b1 / a1 - b2 / a2;
                if !den.is_zero() {
                    let x = (b1 - b2) / den;
                    if x.is_positive() {
                        xs.push(x);
                    }
                }
            }
        }
        xs.sort();
        xs.dedup();
        xs.windows(2)
            .fold(Q::zero(), |acc, w| acc + (w[1] - w[0]) * (height(&w[0]) + height(&w[1])) / q(2))
    }
}
