use std::fmt;
use std::ops::{Index, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::{GaussianInteger, GaussianRational};
use crate::error::{Error, Result};

/// Dense square matrix of Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    order: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    /// Panics unless `entries.len() == order * order`.
    pub fn new(order: usize, entries: Vec<GaussianRational>) -> Self {
        assert_eq!(entries.len(), order * order, "matrix entry count must be order^2");
        Matrix { order, entries }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let entries = (0..order * order).map(|k| f(k / order, k % order)).collect();
        Matrix { order, entries }
    }

    pub fn zeros(order: usize) -> Self {
        Matrix::from_fn(order, |_, _| GaussianRational::zero())
    }

    pub fn identity(order: usize) -> Self {
        Matrix::from_fn(order, |r, c| {
            if r == c {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    /// Build from rows; fails if the rows do not form a square.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Precondition("matrix rows must form a square".into()));
        }
        Ok(Matrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussianRational {
        &self.entries[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussianRational]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn conjugate_transpose(&self) -> Matrix {
        Matrix::from_fn(self.order, |r, c| self.get(c, r).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conjugate_transpose()
    }

    /// The matrix with row and column `skip` (0-based) removed.
    pub fn without(&self, skip: usize) -> Matrix {
        let keep: Vec<usize> = (0..self.order).filter(|&k| k != skip).collect();
        Matrix::from_fn(keep.len(), |r, c| self.get(keep[r], keep[c]).clone())
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &GaussianRational> {
        (0..self.order).map(move |k| self.get(k, k))
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(|z| z.to_string()).collect()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        self.get(r, c)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        Matrix::from_fn(self.order, |r, c| {
            (0..self.order).fold(GaussianRational::zero(), |acc, k| {
                &acc + &(self.get(r, k) * rhs.get(k, c))
            })
        })
    }
}

/// One row per line, entries in canonical form separated by spaces.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|z| z.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// JSON form: an array of rows, each an array of canonical strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<GaussianRational>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// A matrix whose `(j, i)` entry is the conjugate of its `(i, j)` entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order
    }
}

impl TryFrom<Matrix> for HermitianMatrix {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        if m.is_hermitian() {
            Ok(HermitianMatrix(m))
        } else {
            Err(Error::Precondition("matrix is not Hermitian".into()))
        }
    }
}

impl std::ops::Deref for HermitianMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl fmt::Display for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rows scaled to Gaussian integers, with the per-row scale factors.
fn integer_rows(m: &Matrix) -> (Vec<GaussianInteger>, Vec<i128>) {
    let n = m.order;
    let mut out = Vec::with_capacity(n * n);
    let mut scales = Vec::with_capacity(n);
    for row in m.rows() {
        let l = row.iter().fold(1i128, |acc, z| num_integer::lcm(acc, z.denominator_lcm()));
        for z in row {
            let re = z.re() * l;
            let im = z.im() * l;
            out.push(GaussianInteger::new(re.to_integer(), im.to_integer()));
        }
        scales.push(l);
    }
    (out, scales)
}

fn bareiss_update(p: GaussianInteger, a: GaussianInteger, b: GaussianInteger, c: GaussianInteger, prev: GaussianInteger) -> GaussianInteger {
    let t = p * a - b * c;
    if prev == GaussianInteger::ONE {
        t
    } else {
        t.exact_div(prev).expect("fraction-free elimination divides exactly")
    }
}

/// Fraction-free (Bareiss) determinant of a Gaussian-integer matrix.
pub(crate) fn det_gaussian_integer(mut a: Vec<GaussianInteger>, n: usize) -> GaussianInteger {
    if n == 0 {
        return GaussianInteger::ONE;
    }
    let mut negate = false;
    let mut prev = GaussianInteger::ONE;
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return GaussianInteger::ZERO;
            };
            for c in 0..n {
                a.swap(k * n + c, r * n + c);
            }
            negate = !negate;
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                a[i * n + j] = bareiss_update(p, a[i * n + j], aik, a[k * n + j], prev);
            }
        }
        prev = p;
    }
    let d = a[n * n - 1];
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant by fraction-free elimination. Rows are first scaled to Gaussian integers;
/// the scale factors are divided back out at the end.
pub fn det_exact(m: &Matrix) -> GaussianRational {
    let (a, scales) = integer_rows(m);
    let d = det_gaussian_integer(a, m.order);
    let s: i128 = scales.iter().product();
    GaussianRational::from_quotient(d, GaussianInteger::new(s, 0)).expect("scales are nonzero")
}

/// Exact inverse by fraction-free Gauss-Jordan elimination on `[A | I]`.
///
/// After step `k` every already-processed diagonal entry equals the current pivot, so the
/// left block ends as `d·I` and the right block as `d·A⁻¹` with `d = ±det A`; all divisions by
/// the previous pivot along the way are exact.
pub fn inverse_exact(m: &Matrix) -> Result<Matrix> {
    let n = m.order;
    let (rows, scales) = integer_rows(m);
    let w = 2 * n;
    let mut a = vec![GaussianInteger::ZERO; n * w];
    for r in 0..n {
        a[r * w..r * w + n].copy_from_slice(&rows[r * n..(r + 1) * n]);
        a[r * w + n + r] = GaussianInteger::ONE;
    }
    let mut prev = GaussianInteger::ONE;
    for k in 0..n {
        if a[k * w + k].is_zero() {
            let r = (k + 1..n).find(|&r| !a[r * w + k].is_zero()).ok_or(Error::Singular)?;
            for c in 0..w {
                a.swap(k * w + c, r * w + c);
            }
        }
        let p = a[k * w + k];
        for i in (0..n).filter(|&i| i != k) {
            let aik = a[i * w + k];
            for j in 0..w {
                if j == k {
                    continue;
                }
                a[i * w + j] = bareiss_update(p, a[i * w + j], aik, a[k * w + j], prev);
            }
            a[i * w + k] = GaussianInteger::ZERO;
        }
        prev = p;
    }
    // A' = D·A with D = diag(scales), so A⁻¹ = A'⁻¹·D: column j picks up scales[j].
    Ok(Matrix::from_fn(n, |r, c| {
        let num = a[r * w + n + c].scale(scales[c]);
        GaussianRational::from_quotient(num, prev).expect("pivot is nonzero")
    }))
}

/// `det` of `m` with row and column `i` removed; `i` is 1-based.
pub fn principal_minor(m: &Matrix, i: usize) -> GaussianRational {
    assert!((1..=m.order).contains(&i), "principal_minor index {i} outside 1..={}", m.order);
    det_exact(&m.without(i - 1))
}
