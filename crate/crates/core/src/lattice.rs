//! The lattice `L`, its dual `L'`, the canonical class and `χ`.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::graph::PlumbingGraph;
use crate::group::{Class, DiscriminantGroup};
use crate::matrix::{det, inverse, mat_vec_q, to_q, IntMatrix, QMatrix};
use crate::rational::{frac, q, qr, to_int, Q};

/// An element of `L ⊗ Q`, written in the basis `E_v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<Q>);

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector(alloc::vec![Q::zero(); n])
    }

    pub fn basis(n: usize, v: usize) -> Self {
        let mut x = Self::zero(n);
        x.0[v] = q(1);
        x
    }

    pub fn from_ints(c: &[i128]) -> Self {
        LatticeVector(c.iter().map(|&x| q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Componentwise `self ≥ other`.
    pub fn geq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn frac(&self) -> Self {
        LatticeVector(self.0.iter().map(frac).collect())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<Q> for &LatticeVector {
    type Output = LatticeVector;
    fn mul(self, k: Q) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }
}

/// All lattice-theoretic data attached to a plumbing graph.
#[derive(Debug, Clone)]
pub struct Lattice {
    graph: PlumbingGraph,
    form: IntMatrix,
    inv: QMatrix,
    det: i128,
    duals: Vec<LatticeVector>,
    group: DiscriminantGroup,
    k: LatticeVector,
}

/// Which vertex the Laufer-type sequence bumps first when several qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LauferOrder {
    Lowest,
    Highest,
}

impl Lattice {
    pub fn new(graph: &PlumbingGraph) -> Self {
        let form = graph.intersection_matrix();
        let n = form.len();
        let inv = inverse(&to_q(&form)).expect("negative definite form is invertible");
        let neg: IntMatrix = form.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let det = det(&neg);
        let duals = (0..n)
            .map(|v| LatticeVector((0..n).map(|w| -inv[w][v]).collect()))
            .collect();
        let group = DiscriminantGroup::new(&form);
        let rhs: Vec<Q> = (0..n).map(|v| q(-(form[v][v]) - 2)).collect();
        let k = LatticeVector(mat_vec_q(&inv, &rhs));
        Lattice {
            graph: graph.clone(),
            form,
            inv,
            det,
            duals,
            group,
            k,
        }
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    /// `I⁻¹`, whose entries are `(E*_v, E*_w)`.
    pub fn inverse(&self) -> &QMatrix {
        &self.inv
    }

    /// `det(-I) = |H|`.
    pub fn det(&self) -> i128 {
        self.det
    }

    pub fn group(&self) -> &DiscriminantGroup {
        &self.group
    }

    /// The dual basis; `E*_v` is column `v` of `-I⁻¹`.
    pub fn dual_basis(&self) -> &[LatticeVector] {
        &self.duals
    }

    pub fn e_star(&self, v: usize) -> &LatticeVector {
        &self.duals[v]
    }

    pub fn e(&self, v: usize) -> LatticeVector {
        LatticeVector::basis(self.rank(), v)
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector::zero(self.rank())
    }

    pub fn canonical_class(&self) -> &LatticeVector {
        &self.k
    }

    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for v in 0..n {
            if x.0[v].is_zero() {
                continue;
            }
            let mut t = Q::zero();
            for w in 0..n {
                if self.form[v][w] != 0 {
                    t += y.0[w] * q(self.form[v][w]);
                }
            }
            s += x.0[v] * t;
        }
        s
    }

    /// `(x, E_v)`.
    pub fn pair_e(&self, x: &LatticeVector, v: usize) -> Q {
        (0..self.rank())
            .filter(|&w| self.form[v][w] != 0)
            .fold(Q::zero(), |s, w| s + x.0[w] * q(self.form[v][w]))
    }

    /// Coordinates in the dual basis, `a_v = -(x, E_v)`; `None` off `L'`.
    pub fn dual_coords(&self, x: &LatticeVector) -> Option<Vec<i128>> {
        (0..self.rank()).map(|v| to_int(&-self.pair_e(x, v))).collect()
    }

    pub fn from_dual(&self, a: &[i128]) -> LatticeVector {
        let n = self.rank();
        let mut x = LatticeVector::zero(n);
        for (v, &c) in a.iter().enumerate() {
            if c != 0 {
                for w in 0..n {
                    x.0[w] += self.duals[v].0[w] * q(c);
                }
            }
        }
        x
    }

    pub fn in_dual_lattice(&self, x: &LatticeVector) -> bool {
        self.dual_coords(x).is_some()
    }

    /// Class in `H` of an element of `L'`.
    pub fn class_of(&self, x: &LatticeVector) -> Option<Class> {
        self.dual_coords(x).map(|a| self.group.class_of_dual(&a))
    }

    pub fn class_of_dual(&self, a: &[i128]) -> Class {
        self.group.class_of_dual(a)
    }

    /// Class of `E*_v`.
    pub fn class_of_e_star(&self, v: usize) -> Class {
        let mut a = alloc::vec![0i128; self.rank()];
        a[v] = 1;
        self.group.class_of_dual(&a)
    }

    /// `χ(x) = -(x, x+K)/2`.
    pub fn chi(&self, x: &LatticeVector) -> Q {
        -self.pair(x, &(x + &self.k)) / q(2)
    }

    /// `K² + |V|` from the canonical class itself.
    pub fn k2_plus_v(&self) -> Q {
        self.pair(&self.k, &self.k) + q(self.rank() as i128)
    }

    /// `K² + |V|` from the valency formula
    /// `Σ E_v² + 3|V| + 2 + Σ_{v,w} (2-δ_v)(2-δ_w)(I⁻¹)_{vw}`.
    pub fn k2_plus_v_from_valencies(&self) -> Q {
        let n = self.rank();
        let mut s = q(3 * n as i128 + 2);
        for v in 0..n {
            s += q(self.form[v][v]);
        }
        for v in 0..n {
            let dv = 2 - self.graph.degree(v) as i128;
            for w in 0..n {
                let dw = 2 - self.graph.degree(w) as i128;
                s += self.inv[v][w] * q(dv * dw);
            }
        }
        s
    }

    /// The unique representative of `h` with all coordinates in `[0,1)`.
    pub fn r_h(&self, h: &Class) -> LatticeVector {
        self.from_dual(&self.group.dual_representative(h)).frac()
    }

    /// The minimal element of class `h` in the Lipman cone.
    pub fn s_h(&self, h: &Class) -> LatticeVector {
        self.s_h_with_order(h, LauferOrder::Lowest)
    }

    pub fn s_h_with_order(&self, h: &Class, order: LauferOrder) -> LatticeVector {
        let mut x = self.r_h(h);
        let n = self.rank();
        loop {
            let bad = |v: &usize| self.pair_e(&x, *v).is_positive();
            let pick = match order {
                LauferOrder::Lowest => (0..n).find(bad),
                LauferOrder::Highest => (0..n).rev().find(bad),
            };
            match pick {
                Some(v) => x.0[v] += q(1),
                None => return x,
            }
        }
    }

    /// `(x, E_v) ≤ 0` for every vertex.
    pub fn in_lipman_cone(&self, x: &LatticeVector) -> bool {
        (0..self.rank()).all(|v| !self.pair_e(x, v).is_positive())
    }

    /// `det(-I)·x` as integers; exact for every `x ∈ L'`.
    pub fn scaled(&self, x: &LatticeVector) -> Vec<i64> {
        x.0.iter()
            .map(|c| {
                let y = c * q(self.det);
                assert!(y.is_integer(), "vector not in L'");
                *y.numer() as i64
            })
            .collect()
    }

    pub fn unscaled(&self, x: &[i64]) -> LatticeVector {
        LatticeVector(x.iter().map(|&c| qr(c as i128, self.det)).collect())
    }

    pub fn classes(&self) -> Vec<Class> {
        self.group.elements()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::seifert_to_graph;

    fn trefoil() -> Lattice {
        Lattice::new(&seifert_to_graph(-1, &[(2, 1), (3, 1), (7, 1)]).unwrap())
    }

    #[test]
    fn trefoil_inverse_and_k() {
        let l = trefoil();
        let expect = [[42, 21, 14, 6], [21, 11, 7, 3], [14, 7, 5, 2], [6, 3, 2, 1]];
        for v in 0..4 {
            for w in 0..4 {
                assert_eq!(-l.inverse()[v][w], q(expect[v][w]));
            }
        }
        assert_eq!(l.det(), 1);
        assert_eq!(-l.canonical_class(), LatticeVector::from_ints(&[2, 1, 1, 1]));
        assert_eq!(l.k2_plus_v(), Q::zero());
        assert_eq!(l.k2_plus_v(), l.k2_plus_v_from_valencies());
        assert!(l.in_lipman_cone(l.e_star(0)));
        assert!(!l.in_lipman_cone(&-&l.e(0)));
    }

    #[test]
    fn small_chains() {
        let g = PlumbingGraph::from_parts(&[("a", -2)], &[]).unwrap();
        let l = Lattice::new(&g);
        assert_eq!(l.e_star(0).0, alloc::vec![qr(1, 2)]);
        assert_eq!(l.canonical_class().0, alloc::vec![Q::zero()]);
        assert_eq!(l.k2_plus_v(), q(1));
        assert_eq!(l.k2_plus_v_from_valencies(), q(1));
        let h = l.classes()[1].clone();
        assert_eq!(l.r_h(&h).0, alloc::vec![qr(1, 2)]);
        assert_eq!(l.chi(&l.r_h(&h)), qr(1, 4));
        assert_eq!(l.chi(&l.zero()), Q::zero());

        let a2 = PlumbingGraph::from_parts(&[("a", -2), ("b", -2)], &[("a", "b")]).unwrap();
        let l = Lattice::new(&a2);
        assert_eq!(l.e_star(0).0, alloc::vec![qr(2, 3), qr(1, 3)]);
    }

    #[test]
    fn example_three_legs_of_three() {
        let l = Lattice::new(&seifert_to_graph(-2, &[(3, 1), (3, 1), (3, 1)]).unwrap());
        assert_eq!(l.det(), 27);
        let h = l.class_of(&(&(l.e_star(1) + l.e_star(2)) + l.e_star(3))).unwrap();
        let s = l.s_h(&h);
        assert_eq!(s, &(l.e_star(1) + l.e_star(2)) + l.e_star(3));
        assert_eq!(l.r_h(&h), &s - &l.e(0));
        assert_eq!(l.chi(&s), Q::zero());
        assert_eq!(l.chi(&l.r_h(&h)), q(1));
        assert_eq!(s, l.s_h_with_order(&h, LauferOrder::Highest));
    }

    #[test]
    fn dual_pairing_is_minus_delta() {
        let l = trefoil();
        for v in 0..4 {
            for w in 0..4 {
                let p = l.pair_e(l.e_star(v), w);
                assert_eq!(p, if v == w { q(-1) } else { Q::zero() });
            }
        }
    }
}
