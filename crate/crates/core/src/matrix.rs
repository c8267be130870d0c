//! Dense integer matrices and the exact linear algebra the lattice code
//! is built on: Bareiss determinants, rational solves, congruence
//! diagonalization for signatures, and Smith normal form.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};

/// Row-major integer matrix. Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(LatticeError::DimensionMismatch { expected: ncols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: nrows, cols: ncols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>], nrows: usize) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(LatticeError::DimensionMismatch { expected: nrows, found: c.len() });
            }
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    /// Negation; entries are bounded by the input so this cannot overflow
    /// except at `i64::MIN`, which is rejected.
    pub fn neg(&self) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|v| v.checked_neg().ok_or(LatticeError::Overflow))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LatticeError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(LatticeError::Overflow))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b == 0 {
                        continue;
                    }
                    let t = a.checked_mul(b).ok_or(LatticeError::Overflow)?;
                    let e = &mut out[(i, j)];
                    *e = e.checked_add(t).ok_or(LatticeError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        (0..self.rows)
            .map(|i| checked_dot(self.row(i), v))
            .collect()
    }

    /// All entries reduced into `{0, 1}`.
    pub fn mod2(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.rem_euclid(2)).collect(),
        }
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.data.iter().map(|v| v.saturating_abs()).max().unwrap_or(0)
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(LatticeError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_big();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    pub fn determinant_i64(&self) -> Result<i64> {
        self.determinant()?.to_i64().ok_or(LatticeError::Overflow)
    }

    /// Solves `self * x = b` over the rationals. Errors on singular input.
    pub fn solve_rational(&self, b: &[i64]) -> Result<Vec<BigRational>> {
        let n = self.rows;
        if !self.is_square() || b.len() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, found: b.len() });
        }
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    self.row(i).iter().map(|&v| BigRational::from_integer(v.into())).collect();
                row.push(BigRational::from_integer(b[i].into()));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(LatticeError::Degenerate)?;
            a.swap(piv, col);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=n {
                        let t = &f * &a[col][c];
                        a[r][c] -= t;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }

    /// Signature `(positive, negative)` of a symmetric matrix, computed by
    /// exact congruence diagonalization over the rationals.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| self.row(i).iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let pivot = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
                Some(p) => p,
                None => {
                    // All remaining diagonal entries vanish: replace row/col i by
                    // row/col i + j for some a[i][j] != 0 to create one.
                    let hit = active.iter().copied().find_map(|i| {
                        active.iter().copied().find(|&j| j != i && !a[i][j].is_zero()).map(|j| (i, j))
                    });
                    match hit {
                        Some((i, j)) => {
                            for k in 0..n {
                                let t = a[j][k].clone();
                                a[i][k] += t;
                            }
                            for k in 0..n {
                                let t = a[k][j].clone();
                                a[k][i] += t;
                            }
                            i
                        }
                        None => {
                            zero += active.len();
                            break;
                        }
                    }
                }
            };
            let d = a[pivot][pivot].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != pivot);
            for &i in &active {
                if a[i][pivot].is_zero() {
                    continue;
                }
                let f = &a[i][pivot] / &d;
                for &j in &active {
                    let t = &f * &a[pivot][j];
                    a[i][j] -= t;
                }
            }
            for &i in &active {
                a[i][pivot] = BigRational::zero();
                a[pivot][i] = BigRational::zero();
            }
        }
        Ok((pos, neg, zero))
    }

    /// Smith normal form: returns `(d, p, q)` with `p * self * q = d`,
    /// `p`, `q` unimodular, `d` diagonal with nonnegative entries and
    /// `d[i] | d[i+1]`.
    pub fn smith_normal_form(&self) -> Result<SmithForm> {
        let (r, c) = (self.rows, self.cols);
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|row| row.into_iter().map(i128::from).collect()).collect();
        let mut p: Vec<Vec<i128>> = identity_i128(r);
        let mut q: Vec<Vec<i128>> = identity_i128(c);

        for t in 0..r.min(c) {
            let Some((pi, pj)) = min_abs_nonzero(&a, t..r, t..c) else { break };
            swap_rows(&mut a, &mut p, t, pi);
            swap_cols(&mut a, &mut q, t, pj);
            loop {
                // Bring the smallest entry of row t / column t into the pivot.
                let mut best = (t, t);
                for i in t..r {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, &mut p, t, best.0);
                swap_cols(&mut a, &mut q, t, best.1);

                let piv = a[t][t];
                let mut clean = true;
                for i in t + 1..r {
                    let f = Integer::div_floor(&a[i][t], &piv);
                    if f != 0 {
                        add_row(&mut a, &mut p, i, t, -f)?;
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..c {
                    let f = Integer::div_floor(&a[t][j], &piv);
                    if f != 0 {
                        add_col(&mut a, &mut q, j, t, -f)?;
                    }
                    clean &= a[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % piv != 0));
                match bad {
                    Some(i) => add_row(&mut a, &mut p, t, i, 1)?,
                    None => break,
                }
            }
            if a[t][t] < 0 {
                for v in a[t].iter_mut() {
                    *v = -*v;
                }
                for v in p[t].iter_mut() {
                    *v = -*v;
                }
            }
        }
        Ok(SmithForm { d: narrow(&a)?, p: narrow(&p)?, q: narrow(&q)? })
    }
}

/// Result of [`IntMatrix::smith_normal_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&v| v != 0).count()
    }
}

fn identity_i128(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn min_abs_nonzero(
    a: &[Vec<i128>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows(a: &mut [Vec<i128>], p: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        p.swap(i, j);
    }
}

fn swap_cols(a: &mut [Vec<i128>], q: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in q.iter_mut() {
            row.swap(i, j);
        }
    }
}

// row[dst] += f * row[src], mirrored on p.
fn add_row(a: &mut [Vec<i128>], p: &mut [Vec<i128>], dst: usize, src: usize, f: i128) -> Result<()> {
    for m in [a, p] {
        for k in 0..m[dst].len() {
            let t = f.checked_mul(m[src][k]).and_then(|t| t.checked_add(m[dst][k]));
            m[dst][k] = t.ok_or(LatticeError::Overflow)?;
        }
    }
    Ok(())
}

// col[dst] += f * col[src], mirrored on q.
fn add_col(a: &mut [Vec<i128>], q: &mut [Vec<i128>], dst: usize, src: usize, f: i128) -> Result<()> {
    for m in [a, q] {
        for row in m.iter_mut() {
            let t = f.checked_mul(row[src]).and_then(|t| t.checked_add(row[dst]));
            row[dst] = t.ok_or(LatticeError::Overflow)?;
        }
    }
    Ok(())
}

fn narrow(a: &[Vec<i128>]) -> Result<IntMatrix> {
    let rows = a
        .iter()
        .map(|row| row.iter().map(|&v| i64::try_from(v).map_err(|_| LatticeError::Overflow)).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let cols = a.first().map_or(0, Vec::len);
    let mut m = IntMatrix::from_rows(rows)?;
    m.cols = cols;
    Ok(m)
}

pub(crate) fn checked_dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y).and_then(|t| acc.checked_add(t)).ok_or(LatticeError::Overflow)
    })
}

pub(crate) fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = LatticeError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
