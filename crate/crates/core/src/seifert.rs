//! Star-shaped graphs (one node): Seifert invariants and closed formulas.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::group::Class;
use crate::lattice::{Lattice, LatticeVector};
use crate::lens::continuant;
use crate::pc::pc_one_variable;
use crate::rational::{ceil, floor, frac, inv_mod, lcm, q, qr, Q};
use crate::series::norm_r;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub alpha: i128,
    pub omega: i128,
    pub omega_prime: i128,
    /// `[b_1, ..., b_ν]` with `b_1` next to the centre.
    pub cf: Vec<i128>,
    /// Graph vertices of the leg, from the centre outwards.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub center: usize,
    pub b: i128,
    pub legs: Vec<Leg>,
    /// Orbifold Euler number `b + Σ ω_i/α_i`.
    pub e: Q,
    /// `lcm(α_i)`.
    pub alpha: i128,
    /// `|H| = α_1⋯α_d |e|`.
    pub order: i128,
    /// Order of `g_0 = [E*_0]`, `α|e|`.
    pub o: i128,
    pub gamma: Q,
}

/// Reads the string of `g` starting at `start` (coming from `from`).
pub(crate) fn read_leg(g: &PlumbingGraph, from: usize, start: usize) -> Result<Leg> {
    let vertices = g.walk(from, start);
    if let Some(&last) = vertices.last() {
        if g.degree(last) > 2 {
            return Err(Error::Precondition("leg runs into another node".into()));
        }
    }
    let cf: Vec<i128> = vertices.iter().map(|&v| -(g.euler(v) as i128)).collect();
    for (&v, &k) in vertices.iter().zip(&cf) {
        if k < 2 {
            return Err(Error::NonNormalizedString(g.id(v).into()));
        }
    }
    let alpha = continuant(&cf, 1, cf.len());
    let omega = continuant(&cf, 2, cf.len());
    Ok(Leg { alpha, omega, omega_prime: inv_mod(omega, alpha).unwrap_or(0), cf, vertices })
}

pub fn extract_seifert(g: &PlumbingGraph) -> Result<SeifertData> {
    let nodes = g.nodes();
    let center = match (nodes.len(), g.len()) {
        (1, _) => nodes[0],
        (0, 1) => 0,
        (k, _) => return Err(Error::NodeCount { expected: 1, found: k }),
    };
    let legs = g
        .neighbors(center)
        .iter()
        .map(|&s| read_leg(g, center, s))
        .collect::<Result<Vec<_>>>()?;
    let b = g.euler(center) as i128;
    let e = legs.iter().fold(q(b), |s, l| s + qr(l.omega, l.alpha));
    let alpha = legs.iter().fold(1, |a, l| lcm(a, l.alpha));
    let prod: i128 = legs.iter().map(|l| l.alpha).product();
    let abs_e = -e;
    let order = q(prod) * abs_e;
    let o = q(alpha) * abs_e;
    let inv_sum = legs.iter().fold(Q::zero(), |s, l| s + qr(1, l.alpha));
    let gamma = (q(legs.len() as i128 - 2) - inv_sum) / abs_e;
    Ok(SeifertData {
        center,
        b,
        legs,
        e,
        alpha,
        order: order.to_integer(),
        o: o.to_integer(),
        gamma,
    })
}

/// Integers `(c_0, c_1, ..., c_d)` encoding `h = Σ c_i g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub c0: i128,
    pub c: Vec<i128>,
}

impl SeifertData {
    fn abs_e(&self) -> Q {
        -self.e
    }

    /// `c̃ = (c_0 + Σ c_i/α_i)/|e|`.
    pub fn c_tilde(&self, lift: &Lift) -> Q {
        let s = self.legs.iter().zip(&lift.c).fold(q(lift.c0), |s, (l, c)| s + qr(*c, l.alpha));
        s / self.abs_e()
    }

    /// `N_c(ℓ) = 1 + c_0 - ℓb + Σ ⌊(c_i - ω_i ℓ)/α_i⌋`.
    pub fn n_c(&self, lift: &Lift, l: i128) -> i128 {
        let mut n = 1 + lift.c0 - l * self.b;
        for (leg, c) in self.legs.iter().zip(&lift.c) {
            n += floor(&qr(c - leg.omega * l, leg.alpha));
        }
        n
    }

    /// The lift of `h + kE_0`: `c̃` grows by `k`.
    pub fn shift_e0(&self, lift: &Lift, k: i128) -> Lift {
        Lift {
            c0: lift.c0 - k * self.b,
            c: self.legs.iter().zip(&lift.c).map(|(l, c)| c - k * l.omega).collect(),
        }
    }

    /// Same class and `c̃`, via the relation `g_0 = α_i g_i`.
    pub fn shift_relation(&self, lift: &Lift, i: usize, k: i128) -> Lift {
        let mut out = lift.clone();
        out.c0 += k;
        out.c[i] -= k * self.legs[i].alpha;
        out
    }

    /// Shifts by a multiple of `E_0` so that `c̃ ∈ [0,1)`.
    pub fn normalize(&self, lift: &Lift) -> Lift {
        let k = floor(&self.c_tilde(lift));
        self.shift_e0(lift, -k)
    }

    fn l_range(&self, lift: &Lift) -> (i128, i128) {
        let ct = self.c_tilde(lift);
        (ceil(&-ct), ceil(&(self.gamma + q(1) - ct)) + self.alpha)
    }

    /// `pc(Z_h) = Σ_{ℓ ≥ -c̃} max{0, -N_c(ℓ)}`.
    pub fn pc(&self, lift: &Lift) -> Result<i128> {
        let (lo, hi) = self.l_range(lift);
        let mut s = 0;
        for l in lo..=hi {
            let n = self.n_c(lift, l);
            if l > hi - self.alpha && n < 0 {
                return Err(Error::Invariant("N_c negative beyond the degree bound".into()));
            }
            s += (-n).max(0);
        }
        Ok(s)
    }

    /// Coefficients of `Z_h(t) = Σ max{0, N_c(ℓ)} t^{ℓ+c̃}` with exponent `< top`.
    pub fn z_h(&self, lift: &Lift, top: &Q) -> Vec<(Q, i128)> {
        let ct = self.c_tilde(lift);
        let lo = ceil(&-ct);
        let mut out = Vec::new();
        let mut l = lo;
        while q(l) + ct < *top {
            let n = self.n_c(lift, l);
            if n > 0 {
                out.push((q(l) + ct, n));
            }
            l += 1;
        }
        out
    }

    /// `Z⁺_h(t) = Σ max{0,-N_c(ℓ)} t^{ℓ+c̃}`.
    pub fn z_plus(&self, lift: &Lift) -> Vec<(Q, i128)> {
        let (lo, hi) = self.l_range(lift);
        let ct = self.c_tilde(lift);
        (lo..=hi)
            .filter_map(|l| {
                let n = self.n_c(lift, l);
                (n < 0).then(|| (q(l) + ct, -n))
            })
            .collect()
    }

    /// `Q(Z_h)(n) = Σ_{ℓ+c̃ < n} max{0, N_c(ℓ)}`, summed directly.
    pub fn counting_direct(&self, lift: &Lift, n: &Q) -> i128 {
        self.z_h(lift, n).iter().map(|(_, c)| c).sum()
    }

    fn require_normalized(&self, lift: &Lift) -> Result<Q> {
        let ct = self.c_tilde(lift);
        if ct.is_negative() || ct >= q(1) {
            return Err(Error::Precondition("c̃ must lie in [0,1)".into()));
        }
        Ok(ct)
    }

    /// `Z⁻_h` in closed form.
    pub fn z_minus(&self, lift: &Lift) -> Result<ZMinus> {
        let ct = self.require_normalized(lift)?;
        Ok(ZMinus {
            shift: ct,
            geometric: q(1) - self.e * ct,
            double: -self.e,
            periodic: self
                .legs
                .iter()
                .zip(&lift.c)
                .map(|(leg, c)| {
                    (leg.alpha, (0..leg.alpha).map(|r| frac(&qr(c - leg.omega * r, leg.alpha))).collect())
                })
                .collect(),
        })
    }

    /// `Q(Z⁻_h)(n) = (1-ec̃)n - e n(n-1)/2 - Σ_i Σ_r {(c_i-ω_i r)/α_i} ⌈(n-r)/α_i⌉`
    /// for integers `n ≥ 0`.
    pub fn counting_minus(&self, lift: &Lift, n: i128) -> Result<Q> {
        let ct = self.require_normalized(lift)?;
        let mut s = (q(1) - self.e * ct) * q(n) - self.e * q(n * (n - 1)) / q(2);
        for (leg, c) in self.legs.iter().zip(&lift.c) {
            for r in 0..leg.alpha {
                s -= frac(&qr(c - leg.omega * r, leg.alpha)) * q(ceil(&qr(n - r, leg.alpha)).max(0));
            }
        }
        Ok(s)
    }

    /// `Q(Z⁺_h)(n)`.
    pub fn counting_plus(&self, lift: &Lift, n: &Q) -> i128 {
        self.z_plus(lift).iter().filter(|(x, _)| x < n).map(|(_, c)| c).sum()
    }

    /// `Q(Z_h)(n) = Q(Z⁺_h)(n) + Q(Z⁻_h)(n)`.
    pub fn counting(&self, lift: &Lift, n: i128) -> Result<Q> {
        Ok(q(self.counting_plus(lift, &q(n))) + self.counting_minus(lift, n)?)
    }

    /// `-en²/2 + (en/2)(γ+1-2c̃) + pc`, valid for `n ∈ αZ` beyond `deg Z⁺`.
    pub fn counting_asymptotic(&self, lift: &Lift, n: i128) -> Result<Q> {
        let ct = self.require_normalized(lift)?;
        let pc = self.pc(lift)?;
        let n = q(n);
        Ok(-self.e * n * n / q(2) + self.e * n / q(2) * (self.gamma + q(1) - q(2) * ct) + q(pc))
    }

    /// `N_c(ℓ) ≤ 0` for all `ℓ < 0`, for `c_0 ≥ 0`, `0 ≤ c_i < α_i`.
    pub fn s_h_region_check(&self, lift: &Lift) -> Result<bool> {
        if lift.c0 < 0 || self.legs.iter().zip(&lift.c).any(|(l, c)| *c < 0 || *c >= l.alpha) {
            return Err(Error::Precondition("need c_0 ≥ 0 and 0 ≤ c_i < α_i".into()));
        }
        // N_c(ℓ) ≤ 1 + (ℓ+c̃)|e| settles every ℓ below this
        let stop = floor(&(-self.c_tilde(lift) - self.abs_e().recip())) - 1;
        Ok((stop.min(-1)..0).all(|l| self.n_c(lift, l) <= 0))
    }

    /// `pc(Z_ne) = ½ Σ_{0 ≤ x_i < α_i} ⌊S(x)⌋ ⌊S(x) - 1⌋`, `S(x) = Σ x_i/α_i`.
    pub fn pc_ne(&self) -> Q {
        let mut total = Q::zero();
        let mut x = vec![0i128; self.legs.len()];
        loop {
            let s = self.legs.iter().zip(&x).fold(Q::zero(), |s, (l, xi)| s + qr(*xi, l.alpha));
            let f = floor(&s);
            total += q(f * (f - 1));
            let mut i = 0;
            loop {
                if i == x.len() {
                    return total / q(2);
                }
                x[i] += 1;
                if x[i] < self.legs[i].alpha {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    /// Top three normalized Ehrhart coefficients `a_j/|e|^j`, `j = d, d-1, d-2`,
    /// of the node polytope in the class of `lift` (requires `o = 1`).
    pub fn ehrhart_coeffs(&self, lift: &Lift) -> Result<[Q; 3]> {
        if self.o != 1 {
            return Err(Error::Precondition("equivariant coefficients need o = 1".into()));
        }
        let lift = self.normalize(lift);
        let ct = self.c_tilde(&lift);
        let pc = q(self.pc(&lift)?);
        let d = q(self.legs.len() as i128);
        let ae = self.abs_e();
        let g = self.gamma + q(1) - q(2) * ct;
        Ok([
            ae.recip(),
            (d - q(2)) / (q(2) * ae) - g / q(2),
            pc + (d - q(2)) * (q(3) * d - q(7)) / (q(24) * ae) - (d - q(2)) / q(4) * g,
        ])
    }

    /// Non-equivariant version of [`SeifertData::ehrhart_coeffs`].
    pub fn ehrhart_coeffs_ne(&self) -> [Q; 3] {
        let prod = q(self.legs.iter().map(|l| l.alpha).product());
        let d = q(self.legs.len() as i128);
        let t = self.legs.iter().fold(-qr(1, self.alpha), |s, l| s + qr(1, l.alpha));
        [
            prod,
            prod * t / q(2),
            prod * (self.pc_ne() / prod - (d - q(2)) * (q(3) * d - q(5)) / q(24) + (d - q(2)) / q(4) * t),
        ]
    }
}

/// `Z⁻_h = ((1-ec̃)/(1-t) - e t/(1-t)² - Σ_i Σ_r {(c_i-ω_i r)/α_i} t^r/(1-t^{α_i})) t^{c̃}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMinus {
    pub shift: Q,
    pub geometric: Q,
    pub double: Q,
    pub periodic: Vec<(i128, Vec<Q>)>,
}

impl ZMinus {
    /// Coefficient of `t^{ℓ+c̃}`.
    pub fn coefficient(&self, l: i128) -> Q {
        if l < 0 {
            return Q::zero();
        }
        let mut s = self.geometric + self.double * q(l);
        for (a, fr) in &self.periodic {
            s -= fr[l.rem_euclid(*a) as usize];
        }
        s
    }

    /// Periodic constant of the integer-exponent part, over the common
    /// denominator `(1-t)²∏(1-t^{α_i})`.
    pub fn pc(&self) -> Q {
        fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
            let mut c = vec![Q::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            c
        }
        fn one_minus(k: i128) -> Vec<Q> {
            let mut p = vec![Q::zero(); k as usize + 1];
            p[0] = q(1);
            p[k as usize] -= q(1);
            p
        }
        fn add(a: &mut Vec<Q>, b: &[Q]) {
            if a.len() < b.len() {
                a.resize(b.len(), Q::zero());
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        let legs: Vec<i128> = self.periodic.iter().map(|(a, _)| *a).collect();
        let prod_except = |skip: Option<usize>| {
            legs.iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != skip)
                .fold(vec![q(1)], |p, (_, a)| mul(&p, &one_minus(*a)))
        };
        let mut num = mul(&mul(&[self.geometric], &one_minus(1)), &prod_except(None));
        add(&mut num, &mul(&[Q::zero(), self.double], &prod_except(None)));
        for (i, (_, fr)) in self.periodic.iter().enumerate() {
            let mut t = vec![Q::zero(); fr.len()];
            for (r, f) in fr.iter().enumerate() {
                t[r] = -f;
            }
            add(&mut num, &mul(&mul(&t, &mul(&one_minus(1), &one_minus(1))), &prod_except(Some(i))));
        }
        let den = num.iter().fold(1i128, |l, x| lcm(l, *x.denom()));
        let ints: Vec<(i64, i64)> = num
            .iter()
            .enumerate()
            .map(|(e, c)| (e as i64, (c * q(den)).to_integer() as i64))
            .collect();
        let mut denom: Vec<u64> = vec![1, 1];
        denom.extend(legs.iter().map(|a| *a as u64));
        pc_one_variable(&ints, &denom) / q(den)
    }
}

/// A star-shaped graph together with its lattice.
#[derive(Debug, Clone)]
pub struct Seifert {
    pub lat: Lattice,
    pub data: SeifertData,
}

impl Seifert {
    pub fn new(g: &PlumbingGraph) -> Result<Self> {
        Ok(Seifert { data: extract_seifert(g)?, lat: Lattice::new(g) })
    }

    /// Reduced lift of `l' ∈ L'` from its dual coordinates.
    pub fn lift_of(&self, x: &LatticeVector) -> Option<Lift> {
        let a = self.lat.dual_coords(x)?;
        Some(self.lift_of_dual(&a))
    }

    pub fn lift_of_dual(&self, a: &[i128]) -> Lift {
        let c = self
            .data
            .legs
            .iter()
            .map(|leg| {
                let nu = leg.cf.len();
                leg.vertices
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| a[v] * continuant(&leg.cf, j + 2, nu))
                    .sum()
            })
            .collect();
        Lift { c0: a[self.data.center], c }
    }

    /// Normalized lift (`c̃ ∈ [0,1)`) of the class `h`.
    pub fn lift(&self, h: &Class) -> Lift {
        self.data.normalize(&self.lift_of(&self.lat.r_h(h)).expect("r_h ∈ L'"))
    }

    /// `l' = c_0 E*_0 + Σ c_i E*_i`, the `E*_i` being the leg ends.
    pub fn element(&self, lift: &Lift) -> LatticeVector {
        let mut a = vec![0i128; self.lat.rank()];
        a[self.data.center] += lift.c0;
        for (leg, c) in self.data.legs.iter().zip(&lift.c) {
            a[*leg.vertices.last().unwrap()] += c;
        }
        self.lat.from_dual(&a)
    }

    pub fn pc(&self, h: &Class) -> Result<i128> {
        self.data.pc(&self.lift(h))
    }

    /// Seiberg–Witten invariant of `h * σ_can` from
    /// `pc(Z_h) = -sw_{-h*σ_can} - ((K+2r_h)² + |V|)/8`.
    pub fn sw(&self, h: &Class) -> Result<Q> {
        let mh = self.lat.group().neg(h);
        Ok(-q(self.pc(&mh)?) - norm_r(&self.lat, &mh))
    }

    /// Casson–Walker invariant `λ = Σ_h sw_{h*σ_can}`.
    pub fn casson_walker(&self) -> Result<Q> {
        self.lat.classes().iter().try_fold(Q::zero(), |s, h| Ok(s + self.sw(h)?))
    }

    /// `Σ_{-c̃ ≤ ℓ < -c̃ + ⌊c̃(s_h)⌋} max{0, -N_c(ℓ)}`.
    pub fn window_sum(&self, h: &Class) -> i128 {
        let lift = self.lift(h);
        let ct = self.data.c_tilde(&lift);
        let cs = self.lat.s_h(h).0[self.data.center];
        let top = q(floor(&cs)) - ct;
        let mut l = ceil(&-ct);
        let mut s = 0;
        while q(l) < top {
            s += (-self.data.n_c(&lift, l)).max(0);
            l += 1;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::seifert_to_graph;
    use crate::series::{sw_from_counting, TruncatedSeries, DEFAULT_BUDGET};

    fn star(b: i64, legs: &[(i128, i128)]) -> Seifert {
        Seifert::new(&seifert_to_graph(b, legs).unwrap()).unwrap()
    }

    #[test]
    fn invariants() {
        let t = star(-1, &[(2, 1), (3, 1), (7, 1)]);
        assert_eq!(t.data.e, qr(-1, 42));
        assert_eq!(t.data.gamma, q(1));
        assert_eq!(t.data.order, 1);
        assert_eq!(t.data.o, 1);
        let x = star(-2, &[(3, 1), (3, 1), (3, 1)]);
        assert_eq!(x.data.e, q(-1));
        assert_eq!(x.data.order, 27);
        assert_eq!(x.lat.det(), 27);
        let single = extract_seifert(&PlumbingGraph::from_parts(&[("a", -2)], &[]).unwrap()).unwrap();
        assert_eq!(single.e, q(-2));
        assert_eq!(single.order, 2);
        let chain = PlumbingGraph::from_parts(&[("a", -2), ("b", -2)], &[("a", "b")]).unwrap();
        assert_eq!(extract_seifert(&chain), Err(Error::NodeCount { expected: 1, found: 0 }));
        let s = star(-3, &[(7, 3), (5, 2), (2, 1)]);
        assert_eq!(s.data.legs[0].alpha, 7);
        assert_eq!(s.data.legs[0].omega, 3);
        assert_eq!(s.data.legs[0].omega_prime, 5);
        assert_eq!(q(s.lat.det()), q(70) * -s.data.e);
    }

    #[test]
    fn n_values() {
        let t = star(-1, &[(2, 1), (3, 1), (7, 1)]);
        let z = Lift { c0: 0, c: vec![0, 0, 0] };
        assert_eq!(t.data.n_c(&z, 0), 1);
        assert_eq!(t.data.n_c(&z, 1), -1);
        assert_eq!(t.data.pc(&z).unwrap(), 1);
        let x = star(-2, &[(3, 1), (3, 1), (3, 1)]);
        assert_eq!(x.data.n_c(&z, 1), 0);
    }

    #[test]
    fn trefoil_counting() {
        let t = star(-1, &[(2, 1), (3, 1), (7, 1)]);
        let z = Lift { c0: 0, c: vec![0, 0, 0] };
        assert_eq!(t.data.counting(&z, 42).unwrap(), q(21));
        assert_eq!(t.data.counting_asymptotic(&z, 42).unwrap(), q(21));
        assert_eq!(t.data.counting(&z, 0).unwrap(), Q::zero());
        assert_eq!(q(t.data.counting_direct(&z, &q(42))), q(21));
        assert_eq!(t.sw(&t.lat.group().zero()).unwrap(), q(-1) - t.lat.k2_plus_v() / q(8));
        assert_eq!(t.data.pc_ne(), q(1));
        assert_eq!(t.data.ehrhart_coeffs_ne(), [q(42), q(20), q(4)]);
        assert_eq!(t.data.ehrhart_coeffs(&z).unwrap(), [q(42), q(20), q(4)]);
    }

    #[test]
    fn example_three_legs_window() {
        let x = star(-2, &[(3, 1), (3, 1), (3, 1)]);
        let l = &x.lat;
        let h = l.class_of(&(&(l.e_star(1) + l.e_star(2)) + l.e_star(3))).unwrap();
        assert_eq!(x.window_sum(&h), 1);
        assert_eq!(q(x.window_sum(&h)), l.chi(&l.r_h(&h)) - l.chi(&l.s_h(&h)));
        let s_lift = x.lift_of(&l.s_h(&h)).unwrap();
        assert_eq!(s_lift, Lift { c0: 0, c: vec![1, 1, 1] });
        assert!(x.data.s_h_region_check(&s_lift).unwrap());
        assert!(x.data.s_h_region_check(&Lift { c0: -1, c: vec![0, 0, 0] }).is_err());
        assert!(x.data.ehrhart_coeffs(&s_lift).is_err());
    }

    #[test]
    fn lift_properties() {
        for (b, legs) in [
            (-2, vec![(3, 1), (3, 1), (3, 1)]),
            (-2, vec![(2, 1), (3, 2), (5, 2)]),
            (-3, vec![(2, 1), (2, 1), (4, 3), (3, 1)]),
            (-2, vec![(2, 1), (2, 1), (2, 1)]),
        ] {
            let s = star(b, &legs);
            for h in s.lat.classes() {
                let lift = s.lift(&h);
                let ct = s.data.c_tilde(&lift);
                assert!(!ct.is_negative() && ct < q(1));
                // c̃ is the E_0-coordinate and the class is preserved
                let x = s.element(&lift);
                assert_eq!(x.0[s.data.center], ct);
                assert_eq!(s.lat.class_of(&x).unwrap(), h);
                let other = s.data.shift_relation(&s.data.shift_e0(&lift, 2), 0, 3);
                assert_eq!(s.lat.class_of(&s.element(&other)).unwrap(), h);
                assert_eq!(s.data.pc(&other).unwrap(), s.data.pc(&lift).unwrap());
                // pc(Z_h) - window = χ(r_h) - χ(s_h) where the window is empty
                let r = s.lat.r_h(&h);
                let sh = s.lat.s_h(&h);
                assert_eq!(q(s.window_sum(&h)), s.lat.chi(&r) - s.lat.chi(&sh));
                // closed counting vs direct
                for n in 0..(3 * s.data.alpha) {
                    assert_eq!(s.data.counting(&lift, n).unwrap(), q(s.data.counting_direct(&lift, &q(n))));
                }
                let zm = s.data.z_minus(&lift).unwrap();
                assert_eq!(zm.pc(), Q::zero());
                for l in 0..20 {
                    let n = s.data.n_c(&lift, l);
                    assert_eq!(zm.coefficient(l), q(n));
                }
                let top = (ceil(&(s.data.gamma + q(2))) / s.data.alpha + 1) * s.data.alpha;
                assert_eq!(s.data.counting_asymptotic(&lift, top).unwrap(), s.data.counting(&lift, top).unwrap());
            }
        }
    }

    #[test]
    fn s_h_region_characterizes_s_h() {
        for (b, legs) in [(-2, vec![(3, 1), (3, 1), (3, 1)]), (-2, vec![(2, 1), (3, 2), (5, 2)])] {
            let s = star(b, &legs);
            let mut found = Vec::new();
            for c0 in 0..10 {
                let mut c = vec![0i128; legs.len()];
                loop {
                    let lift = Lift { c0, c: c.clone() };
                    if s.data.s_h_region_check(&lift).unwrap() {
                        let x = s.element(&lift);
                        let h = s.lat.class_of(&x).unwrap();
                        assert_eq!(s.lift_of(&s.lat.s_h(&h)).unwrap(), lift);
                        found.push(h);
                    }
                    let mut i = 0;
                    while i < c.len() {
                        c[i] += 1;
                        if c[i] < legs[i].0 {
                            break;
                        }
                        c[i] = 0;
                        i += 1;
                    }
                    if i == c.len() {
                        break;
                    }
                }
            }
            found.sort();
            found.dedup();
            assert_eq!(found.len() as i128, s.lat.det());
        }
    }

    #[test]
    fn closed_sw_matches_oracle() {
        for (b, legs) in [(-2, vec![(3, 1), (3, 1), (3, 1)]), (-1, vec![(2, 1), (3, 1), (7, 1)]), (-2, vec![(2, 1), (3, 2), (3, 1)])] {
            let s = star(b, &legs);
            for h in s.lat.classes() {
                assert_eq!(s.sw(&h).unwrap(), sw_from_counting(&s.lat, &h, 0, DEFAULT_BUDGET).unwrap());
            }
            let total: Q = s.lat.classes().iter().map(|h| s.lat.chi(&s.lat.r_h(h))).sum();
            let lam = s.casson_walker().unwrap();
            assert_eq!(s.data.pc_ne(), -lam - q(s.lat.det()) * s.lat.k2_plus_v() / q(8) + total);
        }
    }

    #[test]
    fn z_h_matches_reduced_series() {
        let s = star(-2, &[(3, 1), (3, 1), (3, 1)]);
        let top = q(8);
        let ser = TruncatedSeries::expand_on(&s.lat, &[s.data.center], &[top], DEFAULT_BUDGET).unwrap();
        let g = s.lat.group();
        for h in s.lat.classes() {
            let lift = s.lift(&h);
            let mut expected: Vec<(Q, i64)> =
                s.data.z_h(&lift, &top).into_iter().map(|(e, c)| (e, c as i64)).collect();
            expected.sort();
            let mut got: Vec<(Q, i64)> =
                ser.terms().filter(|(_, c, _)| *c == g.index(&h)).map(|(e, _, k)| (e[0], k)).collect();
            got.sort();
            assert_eq!(got, expected);
        }
    }
}
