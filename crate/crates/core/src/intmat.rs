//! Arbitrary-precision integer matrices, Smith normal form with unimodular
//! transforms, and exact linear solving over Z.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Entrywise reduction mod 2 as a GF(2) matrix.
    pub fn mod2(&self) -> crate::gf2::Gf2Matrix {
        let mut m = crate::gf2::Gf2Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if (&self[(i, j)] % 2i32).abs() == BigInt::one() {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{:>6} ", self[(r, c)].to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// U·A·V = D with U, V unimodular and D diagonal, d₁ | d₂ | …, dᵢ ≥ 0.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithNormalForm {
    /// The nonzero diagonal invariant factors d₁ | d₂ | …
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Elimination on the minimal nonzero pivot, with row/column operations
/// mirrored into the unimodular transforms and their inverses.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut d = a.clone();
    let (r, c) = (d.rows, d.cols);
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    // row ops: D ← E·D means U ← E·U and U⁻¹ ← U⁻¹·E⁻¹
    let swap_rows = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize| {
        for m in [d, u] {
            for col in 0..m.cols {
                let x = m[(i, col)].clone();
                m[(i, col)] = m[(j, col)].clone();
                m[(j, col)] = x;
            }
        }
        for row in 0..u_inv.rows {
            let x = u_inv[(row, i)].clone();
            u_inv[(row, i)] = u_inv[(row, j)].clone();
            u_inv[(row, j)] = x;
        }
    };
    let add_row = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        // row_dst += k · row_src ; inverse: column_src -= k · column_dst
        for m in [d, u] {
            for col in 0..m.cols {
                let add = k * &m[(src, col)];
                m[(dst, col)] += add;
            }
        }
        for row in 0..u_inv.rows {
            let sub = k * &u_inv[(row, dst)];
            u_inv[(row, src)] -= sub;
        }
    };
    let negate_row = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize| {
        for m in [d, u] {
            for col in 0..m.cols {
                let x = -m[(i, col)].clone();
                m[(i, col)] = x;
            }
        }
        for row in 0..u_inv.rows {
            let x = -u_inv[(row, i)].clone();
            u_inv[(row, i)] = x;
        }
    };
    // column ops: D ← D·E means V ← V·E and V⁻¹ ← E⁻¹·V⁻¹
    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize| {
        for m in [d, v] {
            for row in 0..m.rows {
                let x = m[(row, i)].clone();
                m[(row, i)] = m[(row, j)].clone();
                m[(row, j)] = x;
            }
        }
        for col in 0..v_inv.cols {
            let x = v_inv[(i, col)].clone();
            v_inv[(i, col)] = v_inv[(j, col)].clone();
            v_inv[(j, col)] = x;
        }
    };
    let add_col = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        for m in [d, v] {
            for row in 0..m.rows {
                let add = k * &m[(row, src)];
                m[(row, dst)] += add;
            }
        }
        for col in 0..v_inv.cols {
            let sub = k * &v_inv[(dst, col)];
            v_inv[(src, col)] -= sub;
        }
    };

    let n = r.min(c);
    let mut t = 0;
    while t < n {
        // find the minimal-|value| nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !d[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        if pi != t {
            swap_rows(&mut d, &mut u, &mut u_inv, t, pi);
        }
        if pj != t {
            swap_cols(&mut d, &mut v, &mut v_inv, t, pj);
        }
        // clear the pivot row and column by euclidean steps
        let mut dirty = false;
        for i in (t + 1)..r {
            if !d[(i, t)].is_zero() {
                let q = div_round(&d[(i, t)], &d[(t, t)]);
                add_row(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in (t + 1)..c {
            if !d[(t, j)].is_zero() {
                let q = div_round(&d[(t, j)], &d[(t, t)]);
                add_col(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // a smaller pivot appeared; redo this step
        }
        // divisibility: pivot must divide every remaining entry
        let mut fixed = true;
        'scan: for i in (t + 1)..r {
            for j in (t + 1)..c {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    add_row(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, &mut u, &mut u_inv, t);
        }
        t += 1;
    }
    SmithNormalForm { d, u, u_inv, v, v_inv }
}

/// Rounded division keeping |a - q·b| ≤ |b|/2.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, rem) = num_integer::Integer::div_rem(a, b);
    if rem.abs() * 2 > b.abs() {
        if (rem.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Solution of Ax = b over Z: a particular solution plus a basis of the
/// integer kernel, or None when no integral solution exists.
pub struct IntSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

pub fn int_solve(a: &IntMatrix, b: &[BigInt]) -> Option<IntSolution> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let n = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let di = if i < n { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, rem) = num_integer::Integer::div_rem(&ub[i], &di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    let particular = snf.v.mul_vec(&y);
    let rank = snf.rank();
    let kernel = (rank..a.cols())
        .map(|j| (0..a.cols()).map(|i| snf.v[(i, j)].clone()).collect())
        .collect();
    Some(IntSolution { particular, kernel })
}

/// Kernel basis of A over Z (columns of V past the rank).
pub fn int_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols())
        .map(|j| (0..a.cols()).map(|i| snf.v[(i, j)].clone()).collect())
        .collect()
}
