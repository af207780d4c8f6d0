//! Truncated expansion of `Z(t) = ∏_v (1 - t^{E*_v})^{δ_v - 2}`.
//!
//! Monomials are stored by their coordinates scaled by `det(-I)` (so they are
//! integers) together with the index of their class in `H`. A series only
//! tracks a subset of the coordinates: all of them for the full expansion,
//! or the nodes after [`TruncatedSeries::reduce_to_nodes`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Class;
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{q, Q};

/// Default cap on the number of stored monomials.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub exp: Vec<i64>,
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    coords: Vec<usize>,
    // counting queries are admissible at l' iff l'|coords ≤ bound
    bound: Vec<i64>,
    scale: i128,
    terms: BTreeMap<Monomial, i64>,
}

struct Factor {
    gen: Vec<i64>,
    class_shift: Vec<usize>,
    power: i64,
}

fn factor_for(lat: &Lattice, coords: &[usize], v: usize, power: i64, classes: &[Class]) -> Factor {
    let full = lat.scaled(lat.e_star(v));
    let g = lat.group();
    let cv = lat.class_of_e_star(v);
    Factor {
        gen: coords.iter().map(|&c| full[c]).collect(),
        class_shift: classes.iter().map(|h| g.index(&g.add(h, &cv))).collect(),
        power,
    }
}

impl TruncatedSeries {
    /// Expansion containing every monomial `l''` with `l'' ≱ bound`, exactly.
    pub fn expand(lat: &Lattice, bound: &LatticeVector, budget: u64) -> Result<Self> {
        let coords: Vec<usize> = (0..lat.rank()).collect();
        Self::expand_on(lat, &coords, &bound.0, budget)
    }

    /// Expansion tracking only `coords`; it contains every monomial whose
    /// restriction to `coords` is `≱ bound`.
    pub fn expand_on(lat: &Lattice, coords: &[usize], bound: &[Q], budget: u64) -> Result<Self> {
        Self::expand_factors(lat, coords, bound, budget, true)
    }

    /// Expansion of the denominator `∏_v (1 - t^{E*_v})^{-(2-δ_v)}` alone,
    /// whose coefficients count the lattice points of the polytopes.
    pub fn expand_denominator(lat: &Lattice, bound: &LatticeVector, budget: u64) -> Result<Self> {
        let coords: Vec<usize> = (0..lat.rank()).collect();
        Self::expand_factors(lat, &coords, &bound.0, budget, false)
    }

    fn expand_factors(lat: &Lattice, coords: &[usize], bound: &[Q], budget: u64, numerators: bool) -> Result<Self> {
        let scale = lat.det();
        let sb: Vec<i64> = bound
            .iter()
            .map(|b| {
                let x = b * q(scale);
                crate::rational::ceil(&x) as i64
            })
            .collect();
        if sb.iter().any(|&b| b <= 0) {
            return Err(Error::Precondition("truncation bound must be positive".into()));
        }
        let classes = lat.classes();
        let g = lat.graph();
        let mut factors: Vec<Factor> = Vec::new();
        for v in 0..lat.rank() {
            let p = g.degree(v) as i64 - 2;
            if p < 0 || (p > 0 && numerators) {
                factors.push(factor_for(lat, coords, v, p, &classes));
            }
        }
        // numerators first: they only have a handful of terms
        factors.sort_by_key(|f| -f.power);

        let inside = |e: &[i64]| e.iter().zip(&sb).any(|(x, b)| x < b);
        let mut terms: BTreeMap<Monomial, i64> = BTreeMap::new();
        terms.insert(Monomial { exp: vec![0; coords.len()], class: 0 }, 1);
        for f in &factors {
            for _ in 0..f.power.unsigned_abs() {
                let mut next: BTreeMap<Monomial, i64> = BTreeMap::new();
                for (m, c) in &terms {
                    let mut exp = m.exp.clone();
                    let mut class = m.class;
                    loop {
                        let e = next.entry(Monomial { exp: exp.clone(), class }).or_insert(0);
                        *e += c;
                        for (x, d) in exp.iter_mut().zip(&f.gen) {
                            *x += d;
                        }
                        class = f.class_shift[class];
                        if f.power > 0 {
                            // one multiplication by (1 - t^g)
                            if inside(&exp) {
                                let e = next.entry(Monomial { exp: exp.clone(), class }).or_insert(0);
                                *e -= c;
                            }
                            break;
                        }
                        if !inside(&exp) {
                            break;
                        }
                    }
                    if next.len() as u64 > budget {
                        return Err(Error::Budget(budget));
                    }
                }
                next.retain(|_, c| *c != 0);
                terms = next;
            }
        }
        Ok(TruncatedSeries { coords: coords.to_vec(), bound: sb, scale, terms })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials as `(exponent restricted to coords, class index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<Q>, usize, i64)> + '_ {
        self.terms.iter().map(move |(m, c)| {
            (m.exp.iter().map(|&x| Q::new(x as i128, self.scale)).collect(), m.class, *c)
        })
    }

    fn scale_query(&self, l: &[Q]) -> Result<Vec<Q>> {
        if l.len() != self.coords.len() {
            return Err(Error::Precondition("query has wrong dimension".into()));
        }
        let s: Vec<Q> = l.iter().map(|x| x * q(self.scale)).collect();
        if s.iter().zip(&self.bound).any(|(x, b)| *x > q(*b as i128)) {
            return Err(Error::Window);
        }
        Ok(s)
    }

    /// Coefficient of the monomial with exponent `l` (restricted to coords)
    /// and class index `class`.
    pub fn coefficient(&self, l: &[Q], class: usize) -> Result<i64> {
        let exp: Vec<i64> = l
            .iter()
            .map(|x| {
                let y = x * q(self.scale);
                if y.is_integer() { Ok(*y.numer() as i64) } else { Err(Error::Precondition("exponent off the lattice".into())) }
            })
            .collect::<Result<_>>()?;
        if !exp.iter().zip(&self.bound).any(|(x, b)| x < b) {
            return Err(Error::Window);
        }
        Ok(*self.terms.get(&Monomial { exp, class }).unwrap_or(&0))
    }

    /// `Q_h(l') = Σ_{l'' ≱ l', [l''] = h} p_{l''}` for every class index `h`.
    pub fn counting(&self, l: &[Q], n_classes: usize) -> Result<Vec<i64>> {
        let s = self.scale_query(l)?;
        let mut out = vec![0i64; n_classes];
        for (m, c) in &self.terms {
            if m.exp.iter().zip(&s).any(|(x, y)| q(*x as i128) < *y) {
                out[m.class] += c;
            }
        }
        Ok(out)
    }

    /// Substitutes `t_v = 1` for every non-node vertex. Graphs without nodes
    /// are returned unchanged.
    pub fn reduce_to_nodes(&self, lat: &Lattice) -> TruncatedSeries {
        let nodes = lat.graph().nodes();
        if nodes.is_empty() {
            return self.clone();
        }
        let pos: Vec<usize> = nodes
            .iter()
            .map(|n| self.coords.iter().position(|c| c == n).expect("node coordinate tracked"))
            .collect();
        let mut terms: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, c) in &self.terms {
            let exp: Vec<i64> = pos.iter().map(|&i| m.exp[i]).collect();
            *terms.entry(Monomial { exp, class: m.class }).or_insert(0) += c;
        }
        terms.retain(|_, c| *c != 0);
        TruncatedSeries {
            coords: nodes,
            bound: pos.iter().map(|&i| self.bound[i]).collect(),
            scale: self.scale,
            terms,
        }
    }
}

/// The element `l'` used by [`sw_from_counting`]: the smallest element of
/// class `-h` with dual coordinates `a_v ≥ -(E_v² + 1) + padding`.
pub fn oracle_point(lat: &Lattice, h: &Class, padding: i128) -> LatticeVector {
    let g = lat.group();
    let mut x = lat.r_h(&g.neg(h));
    let mut a = lat.dual_coords(&x).expect("r_h lies in L'");
    // minimal element of r + L with a_v ≥ |E_v²| - 1 + padding, reached by
    // adding E_v wherever the bound fails
    let need: Vec<i128> = (0..lat.rank()).map(|v| -(lat.graph().euler(v) as i128) - 1 + padding).collect();
    while let Some(v) = (0..a.len()).find(|&v| a[v] < need[v]) {
        x.0[v] += q(1);
        a[v] -= lat.graph().euler(v) as i128;
        for &u in lat.graph().neighbors(v) {
            a[u] -= 1;
        }
    }
    x
}

/// Seiberg–Witten invariant of `h * σ_can` from the counting identity
/// `Σ_{l ∈ L, l ≱ 0} p_{l'+l} = -sw_{[-l']*σ_can} - ((K+2l')² + |V|)/8`.
pub fn sw_from_counting(lat: &Lattice, h: &Class, padding: i128, budget: u64) -> Result<Q> {
    let l = oracle_point(lat, h, padding);
    let series = TruncatedSeries::expand(lat, &l, budget)?;
    sw_on(lat, &series, &l)
}

fn sw_on(lat: &Lattice, series: &TruncatedSeries, l: &LatticeVector) -> Result<Q> {
    let g = lat.group();
    let cls = lat.class_of(l).expect("l' in L'");
    let counts = series.counting(&l.0, g.order() as usize)?;
    let kl = lat.canonical_class() + &(l * q(2));
    let norm = (lat.pair(&kl, &kl) + q(lat.rank() as i128)) / q(8);
    Ok(-q(counts[g.index(&cls)] as i128) - norm)
}

/// Periodic constant `pc_h = -((K+2r_h)² + |V|)/8 - sw_{-h*σ_can}` from the
/// oracle.
pub fn pc_from_counting(lat: &Lattice, h: &Class, budget: u64) -> Result<Q> {
    let g = lat.group();
    let sw = sw_from_counting(lat, &g.neg(h), 0, budget)?;
    Ok(-norm_r(lat, h) - sw)
}

/// `((K + 2r_h)² + |V|)/8`.
pub fn norm_r(lat: &Lattice, h: &Class) -> Q {
    let r = lat.r_h(h);
    let kr = lat.canonical_class() + &(&r * q(2));
    (lat.pair(&kr, &kr) + q(lat.rank() as i128)) / q(8)
}

/// `sw` from the oracle for every class, in canonical order. One expansion
/// up to the componentwise maximum of the oracle points serves every class,
/// since it holds every `l'' ≱ l'` for each of them.
pub fn sw_table(lat: &Lattice, budget: u64) -> Result<Vec<Q>> {
    sw_table_padded(lat, 0, budget)
}

/// [`sw_table`] with every oracle point raised by `padding`; the result does
/// not depend on it.
pub fn sw_table_padded(lat: &Lattice, padding: i128, budget: u64) -> Result<Vec<Q>> {
    let classes = lat.classes();
    let points: Vec<LatticeVector> = classes.iter().map(|h| oracle_point(lat, h, padding)).collect();
    let bound = LatticeVector(
        (0..lat.rank()).map(|v| points.iter().map(|p| p.0[v]).max().expect("H is nonempty")).collect(),
    );
    let series = TruncatedSeries::expand(lat, &bound, budget)?;
    points.iter().map(|l| sw_on(lat, &series, l)).collect()
}
