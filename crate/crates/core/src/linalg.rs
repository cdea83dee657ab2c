//! Exact rational scalars, vectors and matrices.
//!
//! Every quantity in this crate is an arbitrary-precision rational, so rank
//! tests and sign tests on barycentric coordinates are decided without
//! rounding. [`Matrix::rref`] is the workhorse; rank, linear solving and
//! nullspaces are all read off the reduced row echelon form.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form (positive denominator, reduced).
pub type Scalar = BigRational;

/// Builds a scalar from an integer.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Builds the scalar `num/den`. Panics when `den` is zero.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational literal: an integer `p` or a fraction `p/q`.
///
/// A leading `-` or `+` is accepted on the numerator only. Whitespace,
/// decimal points and zero denominators are rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let invalid = |why: &str| Error::InvalidLiteral {
        literal: text.to_string(),
        reason: why.to_string(),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let parse_int = |s: &str, signed: bool| -> Option<BigInt> {
        let digits = if signed {
            s.strip_prefix('-')
                .or_else(|| s.strip_prefix('+'))
                .unwrap_or(s)
        } else {
            s
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse::<BigInt>().ok()
    };
    let n = parse_int(num, true).ok_or_else(|| invalid("malformed numerator"))?;
    let d = match den {
        Some(d) => parse_int(d, false).ok_or_else(|| invalid("malformed denominator"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(invalid("zero denominator"));
    }
    Ok(Scalar::new(n, d))
}

/// A dense vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&e| int(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    /// The `i`-th standard basis vector of length `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    /// Parses a comma-separated list of rational literals, e.g. `1/2,0,-3`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::InvalidLiteral {
                literal: text.to_string(),
                reason: "empty coordinate list".into(),
            });
        }
        text.split(',')
            .map(|part| parse_scalar(part.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Vector)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched vectors");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector(self.0.iter().map(|e| e * k).collect())
    }

    /// Sum of all entries.
    pub fn sum(&self) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, e| acc + e)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    /// Linear combination `Σ weights[i] * vectors[i]`.
    pub fn combination<'a, I>(dim: usize, terms: I) -> Vector
    where
        I: IntoIterator<Item = (&'a Scalar, &'a Vector)>,
    {
        let mut acc = Vector::zeros(dim);
        for (w, v) in terms {
            if w.is_zero() {
                continue;
            }
            for (a, b) in acc.0.iter_mut().zip(&v.0) {
                *a += w * b;
            }
        }
        acc
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Vector(v)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl<'a> Add for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &'a Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "adding mismatched vectors");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &'a Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "subtracting mismatched vectors");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Vector {
    type Output = Vector;
    fn mul(self, k: &'a Scalar) -> Vector {
        self.scale(k)
    }
}

/// Serialized as a list of rational literals, e.g. `["1/2", "0"]`.
impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|e| e.to_string()))
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let literals = Vec::<String>::deserialize(deserializer)?;
        literals
            .iter()
            .map(|l| parse_scalar(l))
            .collect::<Result<Vector>>()
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Vector {
    /// Comma-separated literals, the same syntax [`Vector::parse`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vector),
    /// Every solution is `particular + Σ c_k nullspace[k]`.
    Infinite {
        particular: Vector,
        nullspace: Vec<Vector>,
    },
    Inconsistent,
}

impl Solution {
    /// Some solution of the system, if one exists.
    pub fn particular(&self) -> Option<&Vector> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Infinite { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&e| int(e)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose columns are the given vectors. With no columns
    /// the result has `rows` rows and zero columns.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            col.check_dim(rows)?;
            for (r, e) in col.iter().enumerate() {
                m.set(r, c, e.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector(self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.cols)?;
        Ok((0..self.rows)
            .map(|r| (0..self.cols).fold(Scalar::zero(), |acc, c| acc + self.get(r, c) * &x[c]))
            .collect())
    }

    /// Appends `extra` as a new last column.
    pub fn augment(&self, extra: &Vector) -> Result<Matrix> {
        extra.check_dim(self.rows)?;
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            m.set(r, self.cols, extra[r].clone());
        }
        Ok(m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m.get(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (reduced, pivots) = self.rref();
        nullspace_from_rref(&reduced, &pivots)
    }

    /// Solves `self · x = rhs` exactly.
    pub fn solve(&self, rhs: &Vector) -> Result<Solution> {
        rhs.check_dim(self.rows)?;
        let (reduced, pivots) = self.augment(rhs)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = Vector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            particular.0[c] = reduced.get(r, self.cols).clone();
        }
        debug_assert_eq!(self.mul_vec(&particular).as_ref(), Ok(rhs));
        if pivots.len() == self.cols {
            return Ok(Solution::Unique(particular));
        }
        // Dropping the augmented column leaves the rref of `self`.
        let mut coefficient_part = Matrix::zeros(reduced.rows, self.cols);
        for r in 0..reduced.rows {
            for c in 0..self.cols {
                coefficient_part.set(r, c, reduced.get(r, c).clone());
            }
        }
        Ok(Solution::Infinite {
            particular,
            nullspace: nullspace_from_rref(&coefficient_part, &pivots),
        })
    }

    /// Determinant by elimination. Panics on non-square input.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..m.cols {
            let Some(found) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if found != col {
                m.swap_rows(found, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            for r in col + 1..m.rows {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
            det *= pivot;
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn nullspace_from_rref(reduced: &Matrix, pivots: &[usize]) -> Vec<Vector> {
    let cols = reduced.cols;
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = Vector::zeros(cols);
            v.0[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v.0[p] = -reduced.get(r, free).clone();
            }
            v
        })
        .collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[{}]", self.row(r))?;
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let exact = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Scalar::new(exact(x.numer())?, exact(x.denom())?))
}

/// `true` when `x` is strictly positive.
pub(crate) fn is_positive(x: &Scalar) -> bool {
    x.is_positive()
}
