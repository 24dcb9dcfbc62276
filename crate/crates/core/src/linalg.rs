//! Exact linear algebra over the rationals.
//!
//! Matrices are dense and row-major. Elimination pivots on the first nonzero
//! entry in column order, so reduced echelon forms, kernel bases and span
//! bases are canonical and outputs are reproducible byte for byte.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(text))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(text))?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in `{text}`")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| bad_rational(text))?),
    };
    Ok(parsed)
}

fn bad_rational(text: &str) -> Error {
    Error::input(format!("cannot parse rational `{text}`"))
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat(i))
            } else {
                // Integral numbers beyond i64 still come through as text.
                parse_rational(&n.to_string())
            }
        }
        other => Err(Error::input(format!("expected a rational, got {other}"))),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RMatrix,
    pub pivots: Vec<usize>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RMatrix { rows, cols, data })
    }

    /// Integer rows; every row must have `cols` entries. Panics on ragged input,
    /// so use it for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            data.extend(r.iter().map(|&x| rat(x)));
        }
        RMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(RMatrix { rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::shape(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    /// Column vector.
    pub fn column_vector(entries: &[Rational]) -> Self {
        RMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// The `i`-th standard basis vector of length `n`, as a column.
    pub fn unit_column(n: usize, i: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.data[i] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[r * other.cols + c];
                    *slot += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(factors: &[&RMatrix]) -> Result<RMatrix> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::shape("empty matrix product"))?;
        rest.iter().try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    fn check_same_shape(&self, other: &RMatrix, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::shape(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &RMatrix) -> Result<RMatrix> {
        self.check_same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        self.check_same_shape(other, "subtract")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &Rational) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn neg(&self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Side-by-side concatenation; all blocks need the same row count.
    pub fn hstack(blocks: &[&RMatrix], rows: usize) -> Result<RMatrix> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::shape(format!(
                    "hstack: block has {} rows, expected {rows}",
                    b.rows
                )));
            }
            for r in 0..rows {
                for c in 0..b.cols {
                    out.data[r * cols + offset + c] = b.get(r, c).clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Stacks blocks on top of each other; all blocks need the same column count.
    pub fn vstack(blocks: &[&RMatrix], cols: usize) -> Result<RMatrix> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            if b.cols != cols {
                return Err(Error::shape(format!(
                    "vstack: block has {} columns, expected {cols}",
                    b.cols
                )));
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(RMatrix { rows, cols, data })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> RMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> RMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][col].recip();
            let support: Vec<usize> = (col..self.cols).filter(|&c| !rows[next][c].is_zero()).collect();
            for &c in &support {
                rows[next][c] *= &inv;
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for &c in &support {
                    row[c] -= &factor * &pivot_row[c];
                }
            }
            pivots.push(col);
            next += 1;
        }
        let data = rows.into_iter().flatten().collect();
        Rref {
            matrix: RMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            self.transpose().rref().pivots.len()
        } else {
            self.rref().pivots.len()
        }
    }

    /// Columns form the canonical basis of the null space: one vector per free
    /// column, with a 1 in that position and the negated reduced entries at
    /// the pivot positions.
    pub fn kernel_basis(&self) -> RMatrix {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, Rational::one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = matrix.get(r, fc);
                if !v.is_zero() {
                    k.set(pc, j, -v);
                }
            }
        }
        k
    }

    /// One solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::shape(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = RMatrix::column_vector(b);
        let aug = RMatrix::hstack(&[self, &rhs], self.rows)?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &RMatrix) -> Result<Option<RMatrix>> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            match self.solve(&rhs.column(c))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        RMatrix::from_columns(&cols, self.cols).map(Some)
    }

    pub fn inverse(&self) -> Result<RMatrix> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = RMatrix::hstack(&[self, &RMatrix::identity(n)], n)?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[..n].iter().any(|&p| p >= n) {
            return Err(Error::input("matrix is singular"));
        }
        Ok(matrix.submatrix(0..n, n..2 * n))
    }

    /// Canonical basis of the column span: the transpose of the nonzero rows
    /// of rref(selfᵀ).
    pub fn column_span(&self) -> RMatrix {
        let Rref { matrix, pivots } = self.transpose().rref();
        matrix.submatrix(0..pivots.len(), 0..self.rows).transpose()
    }

    /// Row-major nested arrays of `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| Value::Array(self.row(r).iter().map(rational_to_json).collect()))
                .collect(),
        )
    }

    /// Parses a matrix of known shape. An empty array is accepted for any
    /// shape with no entries.
    pub fn from_json(value: &Value, rows: usize, cols: usize) -> Result<RMatrix> {
        let outer = value
            .as_array()
            .ok_or_else(|| Error::input("matrix must be an array of rows"))?;
        if outer.is_empty() && rows * cols == 0 {
            return Ok(Self::zeros(rows, cols));
        }
        if outer.len() != rows {
            return Err(Error::shape(format!(
                "matrix has {} rows, expected {rows}x{cols}",
                outer.len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in outer {
            let row = row
                .as_array()
                .ok_or_else(|| Error::input("matrix row must be an array"))?;
            if row.len() != cols {
                return Err(Error::shape(format!(
                    "matrix row has {} entries, expected {rows}x{cols}",
                    row.len()
                )));
            }
            for x in row {
                data.push(rational_from_json(x)?);
            }
        }
        Ok(RMatrix { rows, cols, data })
    }

    /// Parses a matrix, inferring its shape from the nesting.
    pub fn from_json_any(value: &Value) -> Result<RMatrix> {
        let outer = value
            .as_array()
            .ok_or_else(|| Error::input("matrix must be an array of rows"))?;
        let cols = match outer.first() {
            Some(r) => r
                .as_array()
                .ok_or_else(|| Error::input("matrix row must be an array"))?
                .len(),
            None => 0,
        };
        Self::from_json(value, outer.len(), cols)
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Basis of the intersection of the column spans of `spaces`, all living in
/// dimension `ambient`. No spaces means the whole ambient space.
pub fn intersect(ambient: usize, spaces: &[RMatrix]) -> Result<RMatrix> {
    let mut acc = RMatrix::identity(ambient);
    for s in spaces {
        if s.rows != ambient {
            return Err(Error::shape(format!(
                "subspace lives in dimension {}, expected {ambient}",
                s.rows
            )));
        }
        acc = intersect_pair(&acc, s)?;
    }
    Ok(acc.column_span())
}

fn intersect_pair(u: &RMatrix, v: &RMatrix) -> Result<RMatrix> {
    let u = u.column_span();
    let v = v.column_span();
    if u.cols == 0 || v.cols == 0 {
        return Ok(RMatrix::zeros(u.rows, 0));
    }
    // u x = v y  <=>  [u | -v] (x; y) = 0
    let joint = RMatrix::hstack(&[&u, &v.neg()], u.rows)?;
    let ker = joint.kernel_basis();
    let coeffs = ker.submatrix(0..u.cols, 0..ker.cols);
    Ok(u.mul(&coeffs)?.column_span())
}

/// Dimension of the column span.
pub fn span_dim(m: &RMatrix) -> usize {
    m.rank()
}

/// Whether colspan(small) ⊆ colspan(big).
pub fn span_contains(big: &RMatrix, small: &RMatrix) -> Result<bool> {
    if big.rows != small.rows {
        return Err(Error::shape(format!(
            "spans live in dimensions {} and {}",
            big.rows, small.rows
        )));
    }
    if small.cols == 0 {
        return Ok(true);
    }
    let joined = RMatrix::hstack(&[big, small], big.rows)?;
    Ok(joined.rank() == big.rank())
}

pub fn span_eq(a: &RMatrix, b: &RMatrix) -> Result<bool> {
    Ok(span_contains(a, b)? && span_contains(b, a)?)
}

/// Appends, in order, those columns of `candidates` that are independent of
/// what has been collected so far.
pub fn extend_basis(basis: &RMatrix, candidates: &RMatrix) -> Result<RMatrix> {
    if basis.rows != candidates.rows {
        return Err(Error::shape(format!(
            "cannot extend a basis in dimension {} by vectors in dimension {}",
            basis.rows, candidates.rows
        )));
    }
    let n = basis.rows;
    let mut cols: Vec<Vec<Rational>> = (0..basis.cols).map(|c| basis.column(c)).collect();
    let mut rank = basis.rank();
    for c in 0..candidates.cols {
        let col = candidates.column(c);
        cols.push(col);
        let trial = RMatrix::from_columns(&cols, n)?;
        let r = trial.rank();
        if r > rank {
            rank = r;
        } else {
            cols.pop();
        }
    }
    RMatrix::from_columns(&cols, n)
}

/// Extends independent columns to a basis of the ambient space using
/// standard basis vectors, lowest index first.
pub fn complete_basis(basis: &RMatrix) -> Result<RMatrix> {
    extend_basis(basis, &RMatrix::identity(basis.rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RMatrix::identity(3).rank(), 3);
        assert_eq!(RMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(RMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RMatrix::zeros(0, 4).rank(), 0);
        assert_eq!(RMatrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(RMatrix::identity(3).kernel_basis().shape(), (3, 0));
        let k = RMatrix::zeros(3, 3).kernel_basis();
        assert_eq!(k, RMatrix::identity(3));
        let k = RMatrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, RMatrix::from_i64(&[&[-1], &[1]]));
        // 0xn has full kernel
        assert_eq!(RMatrix::zeros(0, 2).kernel_basis(), RMatrix::identity(2));
    }

    #[test]
    fn kernel_annihilates() {
        let m = RMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 4 - m.rank());
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn intersect_examples() {
        let e = |i: usize| RMatrix::unit_column(3, i);
        let e12 = RMatrix::hstack(&[&e(0), &e(1)], 3).unwrap();
        let e23 = RMatrix::hstack(&[&e(1), &e(2)], 3).unwrap();
        let meet = intersect(3, &[e12.clone(), e23]).unwrap();
        assert!(span_eq(&meet, &e(1)).unwrap());

        let full = RMatrix::identity(3);
        assert!(span_eq(&intersect(3, &[e12.clone(), full]).unwrap(), &e12).unwrap());

        let a = RMatrix::unit_column(2, 0);
        let b = RMatrix::unit_column(2, 1);
        assert_eq!(intersect(2, &[a, b]).unwrap().cols(), 0);

        let bad = RMatrix::unit_column(2, 0);
        assert!(intersect(3, &[bad]).is_err());
    }

    #[test]
    fn compose_stack_solve() {
        let m = RMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(m.mul(&RMatrix::identity(3)).unwrap(), m);
        let row = RMatrix::from_i64(&[&[7, 8, 9]]);
        assert_eq!(RMatrix::vstack(&[&m, &row], 3).unwrap().shape(), (3, 3));
        let x = RMatrix::from_i64(&[&[2]]).solve(&[rat(1)]).unwrap();
        assert_eq!(x, Some(vec![ratio(1, 2)]));
        // inconsistent
        let s = RMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.solve(&[rat(1), rat(2)]).unwrap(), None);
        assert!(m.mul(&m).is_err());
        assert!(m.add(&row).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RMatrix::identity(2));
        assert!(RMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert_eq!(RMatrix::zeros(0, 0).inverse().unwrap().shape(), (0, 0));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(ratio(-2, 4).to_string(), "-1/2");
        assert_eq!(rat(5).to_string(), "5");
    }

    #[test]
    fn json_shapes() {
        let m = RMatrix::from_i64(&[&[1, 0], &[0, 1]]).scale(&ratio(1, 3));
        let v = m.to_json();
        assert_eq!(RMatrix::from_json(&v, 2, 2).unwrap(), m);
        assert_eq!(RMatrix::from_json_any(&v).unwrap(), m);
        let empty = serde_json::json!([]);
        assert_eq!(RMatrix::from_json(&empty, 3, 0).unwrap().shape(), (3, 0));
        assert!(RMatrix::from_json(&empty, 1, 1).is_err());
    }

    #[test]
    fn complete_basis_is_invertible() {
        let v = RMatrix::from_i64(&[&[0], &[1], &[1]]);
        let g = complete_basis(&v).unwrap();
        assert_eq!(g.shape(), (3, 3));
        assert_eq!(g.rank(), 3);
        assert_eq!(g.column(0), v.column(0));
    }
}
