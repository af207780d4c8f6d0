//! Periodic constants of rational fractions `Σ ι_k t^{b_k} / ∏ (1 - t^{a_i})`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ceil, floor, frac, q, Q};

/// Per-class integers, i.e. an element of `Z[H]`.
pub type GroupRing<C> = BTreeMap<C, i64>;

fn add_to<C: Ord>(acc: &mut GroupRing<C>, c: C, k: i64) {
    let e = acc.entry(c).or_insert(0);
    *e += k;
}

fn tidy<C: Ord>(mut g: GroupRing<C>) -> GroupRing<C> {
    g.retain(|_, v| *v != 0);
    g
}

/// Periodic constant of `B(t)/∏(1 - t^{a_i})`: write it as `C(t) + D(t)/A(t)`
/// with `deg D < deg A` and return `C(1)`.
///
/// `numer` lists `(exponent, coefficient)`; exponents may be negative.
pub fn pc_one_variable(numer: &[(i64, i64)], denom: &[u64]) -> Q {
    let Some(lo) = numer.iter().map(|(e, _)| *e).min() else { return Q::zero() };
    let hi = numer.iter().map(|(e, _)| *e).max().unwrap();
    let mut b = vec![0i128; (hi - lo + 1) as usize];
    for (e, c) in numer {
        b[(e - lo) as usize] += *c as i128;
    }
    let mut a = vec![1i128];
    for &d in denom {
        let mut next = vec![0i128; a.len() + d as usize];
        for (i, x) in a.iter().enumerate() {
            next[i] += x;
            next[i + d as usize] -= x;
        }
        a = next;
    }
    let da = a.len() - 1;
    let top = a[da];
    let mut quotient_at_one = 0i128;
    let mut deg = b.len();
    while deg > 0 && deg > da {
        let k = deg - 1;
        let c = b[k];
        if c != 0 {
            // top = ±1, so the division is exact
            let f = c / top;
            quotient_at_one += f;
            for (i, x) in a.iter().enumerate() {
                b[k - da + i] -= f * x;
            }
        }
        deg -= 1;
    }
    q(quotient_at_one)
}

/// The two chambers of the denominator-free case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D0Chamber {
    /// The negative quadrant `⟨-E_1, -E_2⟩`.
    C0,
    /// The rest of the plane.
    C1,
}

/// Periodic constant of a Laurent polynomial `Σ ι_k t^{b_k}`.
pub fn pc_d0<V, C: Ord>(terms: &[(i64, V)], class_of: impl Fn(&V) -> C, chamber: D0Chamber) -> GroupRing<C> {
    let mut out = GroupRing::new();
    if chamber == D0Chamber::C1 {
        for (i, b) in terms {
            add_to(&mut out, class_of(b), *i);
        }
    }
    tidy(out)
}

/// Periodic constants of `t^b/(1 - t^a)` in rank two, per chamber
/// `C_0 = ⟨-E_1,-E_2⟩`, `C_1 = ⟨a,-E_2⟩`, `C_2 = ⟨a,-E_1⟩`. They belong to the
/// class of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleDenominatorPc {
    pub c0: i128,
    pub c1: i128,
    pub c2: i128,
}

pub fn pc_single_denominator(b: &[Q; 2], a: &[Q; 2]) -> Result<SingleDenominatorPc> {
    if !a[0].is_positive() || !a[1].is_positive() {
        return Err(Error::Precondition("denominator exponent must be positive".into()));
    }
    Ok(SingleDenominatorPc {
        c0: 0,
        c1: ceil(&(-b[0] / a[0])),
        c2: ceil(&(-b[1] / a[1])),
    })
}

pub type Exp2 = [Q; 2];

fn add2(a: &Exp2, b: &Exp2) -> Exp2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn scale2(a: &Exp2, k: i128) -> Exp2 {
    [a[0] * q(k), a[1] * q(k)]
}

/// A rank-two fraction
/// `Σ t^b/((1-t^{a_1})(1-t^{a_2})) + Σ t^b/(1-t^{a_1}) + Σ t^b/(1-t^{a_2}) + Σ t^b`,
/// with `a_1, a_2` positive and `det(a_1; a_2) < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFraction2 {
    pub a1: Exp2,
    pub a2: Exp2,
    pub both: Vec<(i64, Exp2)>,
    pub only1: Vec<(i64, Exp2)>,
    pub only2: Vec<(i64, Exp2)>,
    pub poly: Vec<(i64, Exp2)>,
}

impl RationalFraction2 {
    /// `Σ ι_k t^{b_k} / ((1-t^{a_1})(1-t^{a_2}))`; the denominators are
    /// swapped if needed so that `det(a_1; a_2) < 0`.
    pub fn new(numer: Vec<(i64, Exp2)>, a1: Exp2, a2: Exp2) -> Result<Self> {
        let mut f = RationalFraction2 { a1, a2, both: numer, only1: vec![], only2: vec![], poly: vec![] };
        f.normalize()?;
        Ok(f)
    }

    fn det(&self) -> Q {
        self.a1[0] * self.a2[1] - self.a1[1] * self.a2[0]
    }

    fn normalize(&mut self) -> Result<()> {
        if self.a1.iter().chain(&self.a2).any(|x| !x.is_positive()) {
            return Err(Error::Precondition("denominator exponents must be positive".into()));
        }
        let d = self.det();
        if d.is_zero() {
            return Err(Error::DegenerateDenominator);
        }
        if d.is_positive() {
            core::mem::swap(&mut self.a1, &mut self.a2);
            core::mem::swap(&mut self.only1, &mut self.only2);
        }
        Ok(())
    }

    /// Coordinates `(q_1, q_2)` with `b = q_1 a_1 + q_2 a_2`.
    pub fn box_coords(&self, b: &Exp2) -> [Q; 2] {
        let d = self.det();
        [
            (b[0] * self.a2[1] - b[1] * self.a2[0]) / d,
            (self.a1[0] * b[1] - self.a1[1] * b[0]) / d,
        ]
    }

    /// Sum of `f` over a window: coefficients of every monomial `β` with
    /// `β_1 < w_1` and `β_2 < w_2`. Used to compare fractions as series.
    pub fn expand_window(&self, w: &Exp2) -> BTreeMap<Exp2, i64> {
        let mut out: BTreeMap<Exp2, i64> = BTreeMap::new();
        let inside = |x: &Exp2| x[0] < w[0] && x[1] < w[1];
        let mut push = |x: Exp2, c: i64| {
            if inside(&x) {
                *out.entry(x).or_insert(0) += c;
            }
        };
        let steps = |b: &Exp2, a: &Exp2| -> i128 {
            // beyond this many steps along a the exponent leaves the window
            let s0 = ceil(&((w[0] - b[0]) / a[0]));
            let s1 = ceil(&((w[1] - b[1]) / a[1]));
            s0.max(s1).max(0)
        };
        for (c, b) in &self.poly {
            push(*b, *c);
        }
        for (c, b) in &self.only1 {
            for j in 0..steps(b, &self.a1) {
                push(add2(b, &scale2(&self.a1, j)), *c);
            }
        }
        for (c, b) in &self.only2 {
            for j in 0..steps(b, &self.a2) {
                push(add2(b, &scale2(&self.a2, j)), *c);
            }
        }
        for (c, b) in &self.both {
            for i in 0..steps(b, &self.a1) {
                let bi = add2(b, &scale2(&self.a1, i));
                for j in 0..steps(&bi, &self.a2) {
                    push(add2(&bi, &scale2(&self.a2, j)), *c);
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

/// `f = f⁺ + f⁻` with `f⁺` a Laurent polynomial, the `both` numerators in
/// `Box(a_1,a_2)`, and the single-denominator numerators in the strips
/// `Ξ_1 = {0 ≤ β_1 < a_{1,1}}`, `Ξ_2 = {0 ≤ β_2 < a_{2,2}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialPartDecomposition {
    pub plus: BTreeMap<Exp2, i64>,
    pub minus: RationalFraction2,
}

impl PolynomialPartDecomposition {
    /// `pc^{e,C}(f) = Σ κ_ℓ [β_ℓ]` for the chamber `C = ⟨a_1, a_2⟩`.
    pub fn pc<C: Ord>(&self, class_of: impl Fn(&Exp2) -> C) -> GroupRing<C> {
        let mut out = GroupRing::new();
        for (b, k) in &self.plus {
            add_to(&mut out, class_of(b), *k);
        }
        tidy(out)
    }

    /// `f⁺(1)`.
    pub fn plus_at_one(&self) -> i64 {
        self.plus.values().sum()
    }

    /// `f⁺ + f⁻` as a fraction again.
    pub fn recombine(&self) -> RationalFraction2 {
        let mut f = self.minus.clone();
        f.poly.extend(self.plus.iter().map(|(b, k)| (*k, *b)));
        f
    }
}

// u^m/(1-u) = 1/(1-u) + P_m(u); returns the (power, coefficient) list of P_m
fn tail(m: i128) -> Vec<(i128, i64)> {
    if m > 0 {
        (0..m).map(|j| (j, -1)).collect()
    } else {
        (m..0).map(|j| (j, 1)).collect()
    }
}

pub fn decompose_polynomial_part(f: &RationalFraction2) -> Result<PolynomialPartDecomposition> {
    let mut f = f.clone();
    f.normalize()?;
    let (a1, a2) = (f.a1, f.a2);
    let mut plus: BTreeMap<Exp2, i64> = BTreeMap::new();
    let mut both: BTreeMap<Exp2, i64> = BTreeMap::new();
    let mut only1: BTreeMap<Exp2, i64> = BTreeMap::new();
    let mut only2: BTreeMap<Exp2, i64> = BTreeMap::new();

    // t^β/(1-t^{a_j}) reduced into the strip Ξ_j
    let mut strip = |beta: Exp2, c: i64, j: usize, plus: &mut BTreeMap<Exp2, i64>| {
        let a = if j == 1 { a1 } else { a2 };
        let n = floor(&(beta[j - 1] / a[j - 1]));
        let base = add2(&beta, &scale2(&a, -n));
        *(if j == 1 { &mut only1 } else { &mut only2 }).entry(base).or_insert(0) += c;
        for (p, k) in tail(n) {
            *plus.entry(add2(&base, &scale2(&a, p))).or_insert(0) += c * k;
        }
    };

    for (c, b) in &f.poly {
        *plus.entry(*b).or_insert(0) += c;
    }
    for (c, b) in &f.only1 {
        strip(*b, *c, 1, &mut plus);
    }
    for (c, b) in &f.only2 {
        strip(*b, *c, 2, &mut plus);
    }
    for (c, b) in &f.both {
        let qs = f.box_coords(b);
        let (m1, m2) = (floor(&qs[0]), floor(&qs[1]));
        let bp = [
            a1[0] * frac(&qs[0]) + a2[0] * frac(&qs[1]),
            a1[1] * frac(&qs[0]) + a2[1] * frac(&qs[1]),
        ];
        *both.entry(bp).or_insert(0) += c;
        let t1 = tail(m1);
        let t2 = tail(m2);
        for (p, k) in &t1 {
            strip(add2(&bp, &scale2(&a1, *p)), c * k, 2, &mut plus);
        }
        for (p, k) in &t2 {
            strip(add2(&bp, &scale2(&a2, *p)), c * k, 1, &mut plus);
        }
        for (p1, k1) in &t1 {
            for (p2, k2) in &t2 {
                let x = add2(&add2(&bp, &scale2(&a1, *p1)), &scale2(&a2, *p2));
                *plus.entry(x).or_insert(0) += c * k1 * k2;
            }
        }
    }
    let collect = |m: BTreeMap<Exp2, i64>| -> Vec<(i64, Exp2)> {
        m.into_iter().filter(|(_, c)| *c != 0).map(|(b, c)| (c, b)).collect()
    };
    plus.retain(|_, c| *c != 0);
    Ok(PolynomialPartDecomposition {
        plus,
        minus: RationalFraction2 {
            a1,
            a2,
            both: collect(both),
            only1: collect(only1),
            only2: collect(only2),
            poly: vec![],
        },
    })
}

/// Drops the coordinates `v` with `b_v ≤ 0` from `b`, from every `a_i` and
/// from the chamber generators. The chamber must be simplicial and contain
/// `b`.
pub fn reduce_positive_support(
    b: &[Q],
    a_list: &[Vec<Q>],
    chamber: &[Vec<Q>],
) -> Result<(Vec<Q>, Vec<Vec<Q>>, Vec<Vec<Q>>)> {
    let n = b.len();
    if chamber.len() != n {
        return Err(Error::Precondition("chamber must be simplicial".into()));
    }
    // b = Σ λ_j g_j with λ ≥ 0
    let m: Vec<Vec<Q>> = (0..n).map(|i| chamber.iter().map(|g| g[i]).collect()).collect();
    let inv = crate::matrix::inverse(&m).ok_or(Error::DegenerateDenominator)?;
    let lam = crate::matrix::mat_vec_q(&inv, b);
    if lam.iter().any(|x| x.is_negative()) {
        return Err(Error::NotInCone);
    }
    let keep: Vec<usize> = (0..n).filter(|&v| b[v].is_positive()).collect();
    let pick = |x: &Vec<Q>| keep.iter().map(|&v| x[v]).collect::<Vec<Q>>();
    Ok((pick(&b.to_vec()), a_list.iter().map(pick).collect(), chamber.iter().map(pick).collect()))
}

/// `(-1)^d #{x ∈ Z^d_{≥1} : ∃v, (Σ x_i a_i)_v ≤ b_v}` after reducing to the
/// positive support of `b`; by reciprocity this is the periodic constant of
/// `t^b / ∏(1 - t^{a_i})` in a chamber containing `b` (trivial group).
pub fn pc_by_reciprocity(b: &[Q], a_list: &[Vec<Q>], chamber: &[Vec<Q>]) -> Result<i64> {
    let (b, a, _) = reduce_positive_support(b, a_list, chamber)?;
    let d = a.len();
    if b.is_empty() {
        return Ok(0);
    }
    let mut count = 0i64;
    let mut x = vec![1i128; d];
    let ok = |x: &[i128]| {
        (0..b.len()).any(|v| {
            let s: Q = x.iter().zip(&a).fold(Q::zero(), |s, (xi, ai)| s + ai[v] * q(*xi));
            s <= b[v]
        })
    };
    // x_i ≤ max_v b_v / a_{i,v}
    let caps: Vec<i128> = a
        .iter()
        .map(|ai| (0..b.len()).map(|v| floor(&(b[v] / ai[v]))).max().unwrap_or(0))
        .collect();
    if caps.iter().any(|&c| c < 1) {
        return Ok(0);
    }
    loop {
        if ok(&x) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                return Ok(sign * count);
            }
            x[i] += 1;
            if x[i] <= caps[i] {
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}

/// A set excised from the normalization of a rank-two affine monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gap {
    /// The single point `b` (type I).
    Point { b: Exp2, mult: i64 },
    /// The ray `b + Z_{≥0} k a_i` (type II), `i ∈ {1,2}`.
    Ray { b: Exp2, k: i128, i: usize, mult: i64 },
}

/// Periodic constant, in the chamber `⟨a_1,a_2⟩`, of the Hilbert series of a
/// monoid module obtained from the normal monoid by removing `gaps`
/// (with signed multiplicities for overlaps). The normal part contributes 0.
pub fn monoid_module_pc<C: Ord>(a1: Exp2, a2: Exp2, gaps: &[Gap], class_of: impl Fn(&Exp2) -> C) -> Result<GroupRing<C>> {
    let f = RationalFraction2::new(vec![], a1, a2)?;
    let swapped = f.a1 != a1;
    let mut out = GroupRing::new();
    for g in gaps {
        match g {
            Gap::Point { b, mult } => {
                for (c, k) in pc_d0(&[(*mult, *b)], &class_of, D0Chamber::C1) {
                    add_to(&mut out, c, -k);
                }
            }
            Gap::Ray { b, k, i, mult } => {
                let i = if swapped { 3 - i } else { *i };
                let a = if i == 1 { f.a1 } else { f.a2 };
                let s = pc_single_denominator(b, &scale2(&a, *k))?;
                let v = if i == 1 { s.c1 } else { s.c2 };
                add_to(&mut out, class_of(b), -(*mult) * v as i64);
            }
        }
    }
    Ok(tidy(out))
}
