//! The discriminant group `H = L'/L` as a product of cyclic groups.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{smith, IntMatrix};

/// An element of `H`, stored as residues modulo the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Class(pub Vec<i128>);

/// `Z^n / I·Z^n`, where `Z^n` is `L'` written in the dual basis `E*_v`.
#[derive(Debug, Clone)]
pub struct DiscriminantGroup {
    factors: Vec<i128>,
    // rows of the Smith row transform belonging to nontrivial factors
    rows: Vec<Vec<i128>>,
    // matching columns of the inverse transform
    cols: Vec<Vec<i128>>,
}

impl DiscriminantGroup {
    pub fn new(form: &IntMatrix) -> Self {
        let s = smith(form);
        let n = form.len();
        let mut factors = Vec::new();
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for i in 0..n {
            if s.diag[i] > 1 {
                factors.push(s.diag[i]);
                rows.push(s.u[i].clone());
                cols.push((0..n).map(|r| s.u_inv[r][i]).collect());
            }
        }
        DiscriminantGroup { factors, rows, cols }
    }

    /// Invariant factors greater than one; each divides the next.
    pub fn invariant_factors(&self) -> &[i128] {
        &self.factors
    }

    pub fn order(&self) -> i128 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> Class {
        Class(vec![0; self.factors.len()])
    }

    /// Class of the element of `L'` with dual coordinates `a`.
    pub fn class_of_dual(&self, a: &[i128]) -> Class {
        Class(
            self.rows
                .iter()
                .zip(&self.factors)
                .map(|(r, d)| r.iter().zip(a).map(|(x, y)| x * y).sum::<i128>().rem_euclid(*d))
                .collect(),
        )
    }

    /// Dual coordinates of some element of class `h`.
    pub fn dual_representative(&self, h: &Class) -> Vec<i128> {
        let n = self.rows.first().map_or(0, |r| r.len());
        let mut a = vec![0i128; n];
        for (col, t) in self.cols.iter().zip(&h.0) {
            for (x, c) in a.iter_mut().zip(col) {
                *x += c * t;
            }
        }
        a
    }

    pub fn add(&self, a: &Class, b: &Class) -> Class {
        Class(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y).rem_euclid(*d))
                .collect(),
        )
    }

    pub fn neg(&self, a: &Class) -> Class {
        Class(a.0.iter().zip(&self.factors).map(|(x, d)| (-x).rem_euclid(*d)).collect())
    }

    pub fn scale(&self, a: &Class, k: i128) -> Class {
        Class(a.0.iter().zip(&self.factors).map(|(x, d)| (x * k).rem_euclid(*d)).collect())
    }

    /// All elements, in lexicographic order of residues.
    pub fn elements(&self) -> Vec<Class> {
        let mut out = vec![self.zero()];
        for (i, d) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * *d as usize);
            for c in &out {
                for r in 0..*d {
                    let mut c2 = c.clone();
                    c2.0[i] = r;
                    next.push(c2);
                }
            }
            out = next;
        }
        out
    }

    /// Position of `h` in [`DiscriminantGroup::elements`].
    pub fn index(&self, h: &Class) -> usize {
        h.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (r, d)| acc * (*d as usize) + *r as usize)
    }

    pub fn from_index(&self, mut i: usize) -> Class {
        let mut res = vec![0i128; self.factors.len()];
        for k in (0..self.factors.len()).rev() {
            let d = self.factors[k] as usize;
            res[k] = (i % d) as i128;
            i /= d;
        }
        Class(res)
    }

    /// Image of an integer relation among dual coordinates; zero iff the
    /// combination lies in `L`.
    pub fn kills(&self, a: &[i128]) -> bool {
        self.class_of_dual(a) == self.zero()
    }
}
