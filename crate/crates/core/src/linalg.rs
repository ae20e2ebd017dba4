//! Small dense linear algebra over a base field.

use alloc::vec::Vec;

use crate::exactnum::Field;

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>, ctx: &F::Ctx) -> F {
    let n = m.len();
    if n == 0 {
        return F::one(ctx);
    }
    let mut negate = false;
    let mut prev = F::one(ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return F::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// A basis of the right null space `{ v : m v = 0 }`.
pub fn null_space<F: Field>(mut m: Vec<Vec<F>>, cols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in 0..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v: Vec<F> = (0..cols).map(|_| F::zero(ctx)).collect();
        v[free] = F::one(ctx);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}
