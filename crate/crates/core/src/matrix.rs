//! Small dense exact matrices: determinants, inverses, Smith normal form.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::{q, Q};

pub type IntMatrix = Vec<Vec<i128>>;
pub type QMatrix = Vec<Vec<Q>>;

/// Leading principal minors of `m` by fraction-free (Bareiss) elimination.
///
/// Stops after the first minor that vanishes, since later minors are not
/// available without pivoting.
pub fn leading_minors(m: &IntMatrix) -> Vec<i128> {
    let n = m.len();
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        let piv = a[k][k];
        out.push(piv);
        if piv == 0 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = piv;
    }
    out
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn det(m: &IntMatrix) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn to_q(m: &IntMatrix) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Inverse over the rationals by Gauss–Jordan; `None` if singular.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m.clone();
    let mut inv: QMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let x = a[col][j];
                    a[r][j] -= f * x;
                    let y = inv[col][j];
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

pub fn mat_vec_q(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(Q::zero(), |s, (a, b)| s + a * b))
        .collect()
}

pub fn mat_vec_i(m: &IntMatrix, v: &[i128]) -> Vec<i128> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Smith normal form `U·M·V = diag(d)` of a square nonsingular integer matrix.
///
/// Only the row transform `U` and its inverse are kept: they are what the
/// cokernel `Z^n / M·Z^n` needs.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
}

pub fn smith(m: &IntMatrix) -> Smith {
    let n = m.len();
    let mut a = m.clone();
    let mut u: IntMatrix = identity(n);
    let mut ui: IntMatrix = identity(n);

    // row op r_i += k r_j, mirrored on U and U^{-1}
    fn add_row(a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i: usize, j: usize, k: i128) {
        let n = a.len();
        for c in 0..n {
            let x = a[j][c];
            a[i][c] += k * x;
            let y = u[j][c];
            u[i][c] += k * y;
            let z = ui[c][i];
            ui[c][j] -= k * z;
        }
    }
    fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i: usize, j: usize) {
        a.swap(i, j);
        u.swap(i, j);
        for row in ui.iter_mut() {
            row.swap(i, j);
        }
    }
    fn add_col(a: &mut IntMatrix, i: usize, j: usize, k: i128) {
        for row in a.iter_mut() {
            let x = row[j];
            row[i] += k * x;
        }
    }
    fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..n {
        loop {
            // move a smallest nonzero entry of the trailing block to (t,t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            swap_rows(&mut a, &mut u, &mut ui, t, bi);
            swap_cols(&mut a, t, bj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let k = a[i][t].div_euclid(p);
                if k != 0 {
                    add_row(&mut a, &mut u, &mut ui, i, t, -k);
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let k = a[t][j].div_euclid(p);
                if k != 0 {
                    add_col(&mut a, j, t, -k);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide the whole trailing block
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => add_row(&mut a, &mut u, &mut ui, t, i, 1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
                u[t][c] = -u[t][c];
                ui[c][t] = -ui[c][t];
            }
        }
    }
    Smith {
        diag: (0..n).map(|i| a[i][i]).collect(),
        u,
        u_inv: ui,
    }
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = vec![vec![0i128; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul_i(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut c = vec![vec![0i128; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] != 0 {
                for j in 0..m {
                    c[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    c
}
