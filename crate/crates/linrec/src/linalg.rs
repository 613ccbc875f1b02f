//! Exact dense linear algebra over any [`Scalar`] field.
//!
//! Square matrices only (the systems under study are v_{n+1} = A v_n).
//! Characteristic polynomials come from Hessenberg reduction with
//! pivoting followed by the Hessenberg determinant recurrence — valid in
//! every characteristic, unlike Faddeev-LeVerrier (divides by 1..k) or
//! interpolation (needs more than k field points).

use crate::error::{Error, Result};
use crate::ff::{self, FieldElement, FieldRef};
use crate::poly::Poly;
use crate::scalar::{parse_rational, Scalar};
use num_rational::BigRational;
use std::fmt;

/// A square matrix with exact entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T: Scalar> {
    k: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(k * k);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {k} (square matrix)",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Mat { k, entries })
    }

    pub fn identity(proto: &T, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let mut entries = vec![proto.zero_like(); k * k];
        for i in 0..k {
            entries[i * k + i] = proto.one_like();
        }
        Ok(Mat { k, entries })
    }

    pub fn zero(proto: &T, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        Ok(Mat { k, entries: vec![proto.zero_like(); k * k] })
    }

    /// Companion matrix of x_n = c_1 x_{n-1} + ... + c_k x_{n-k}: the
    /// coefficients across the top row, identity below the diagonal. Its
    /// characteristic polynomial is x^k - c_1 x^{k-1} - ... - c_k.
    pub fn companion(c: &[T]) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Dimension("recurrence needs at least one coefficient".into()));
        }
        let k = c.len();
        let proto = &c[0];
        let mut m = Mat::zero(proto, k)?;
        for (j, cj) in c.iter().enumerate() {
            m.entries[j] = cj.clone();
        }
        for i in 1..k {
            m.entries[i * k + (i - 1)] = proto.one_like();
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.k + j]
    }

    pub fn proto(&self) -> &T {
        &self.entries[0]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.k)
            .map(|j| (0..self.k).map(|i| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.k).all(|i| {
            (0..self.k).all(|j| {
                let e = self.entry(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.k != rhs.k {
            return Err(Error::Dimension(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.k, rhs.k
            )));
        }
        let k = self.k;
        let zero = self.proto().zero_like();
        let mut entries = vec![zero; k * k];
        for i in 0..k {
            for l in 0..k {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let prod = a.mul(rhs.entry(l, j))?;
                    entries[i * k + j] = entries[i * k + j].add(&prod)?;
                }
            }
        }
        Ok(Mat { k, entries })
    }

    /// A^e by repeated squaring; A^0 = I.
    pub fn pow(&self, mut e: u128) -> Result<Self> {
        let mut acc = Mat::identity(self.proto(), self.k)?;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.k {
            return Err(Error::Dimension(format!(
                "vector length {} does not match dimension {}",
                v.len(),
                self.k
            )));
        }
        let mut out = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let mut acc = self.proto().zero_like();
            for j in 0..self.k {
                acc = acc.add(&self.entry(i, j).mul(&v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> Result<T> {
        let k = self.k;
        let mut m: Vec<Vec<T>> = (0..k).map(|i| self.row(i).to_vec()).collect();
        let mut det = self.proto().one_like();
        for c in 0..k {
            let Some(pr) = (c..k).find(|&i| !m[i][c].is_zero()) else {
                return Ok(self.proto().zero_like());
            };
            if pr != c {
                m.swap(pr, c);
                det = det.neg();
            }
            det = det.mul(&m[c][c])?;
            let inv = m[c][c].inv()?;
            for i in c + 1..k {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].mul(&inv)?;
                for j in c..k {
                    let sub = f.mul(&m[c][j])?;
                    m[i][j] = m[i][j].sub(&sub)?;
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(!self.determinant()?.is_zero())
    }

    /// Basis of the null space, canonicalized; empty iff invertible.
    pub fn kernel(&self) -> Result<Subspace<T>> {
        let k = self.k;
        let mut rows: Vec<Vec<T>> = (0..k).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref(&mut rows)?;
        let zero = self.proto().zero_like();
        let one = self.proto().one_like();
        let mut basis = Vec::new();
        for f in 0..k {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![zero.clone(); k];
            v[f] = one.clone();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = rows[i][f].neg();
            }
            basis.push(v);
        }
        Subspace::from_spanning(basis, k, self.proto())
    }

    /// Monic characteristic polynomial det(xI - A).
    pub fn char_poly(&self) -> Result<Poly<T>> {
        let k = self.k;
        let mut h: Vec<Vec<T>> = (0..k).map(|i| self.row(i).to_vec()).collect();

        // similarity reduction to upper Hessenberg form with pivoting
        for j in 0..k.saturating_sub(2) {
            let Some(pr) = (j + 1..k).find(|&i| !h[i][j].is_zero()) else {
                continue;
            };
            if pr != j + 1 {
                h.swap(pr, j + 1);
                for row in h.iter_mut() {
                    row.swap(pr, j + 1);
                }
            }
            let inv = h[j + 1][j].inv()?;
            for i in j + 2..k {
                if h[i][j].is_zero() {
                    continue;
                }
                let f = h[i][j].mul(&inv)?;
                // row i -= f * row j+1, then column j+1 += f * column i
                for col in j..k {
                    let sub = f.mul(&h[j + 1][col])?;
                    h[i][col] = h[i][col].sub(&sub)?;
                }
                for row in 0..k {
                    let add = f.mul(&h[row][i])?;
                    h[row][j + 1] = h[row][j + 1].add(&add)?;
                }
            }
        }

        // Hessenberg determinant recurrence on det(xI - H_m)
        let proto = self.proto();
        let x = Poly::x(proto);
        let mut d: Vec<Poly<T>> = Vec::with_capacity(k + 1);
        d.push(Poly::one(proto));
        for m in 1..=k {
            let lead = x.sub(&Poly::constant(h[m - 1][m - 1].clone()))?;
            let mut dm = lead.mul(&d[m - 1])?;
            // subtract contributions of the last column above the diagonal
            let mut subdiag = proto.one_like();
            for i in (1..m).rev() {
                subdiag = subdiag.mul(&h[i][i - 1])?;
                let coeff = h[i - 1][m - 1].mul(&subdiag)?;
                if coeff.is_zero() {
                    continue;
                }
                let term = d[i - 1].mul_scalar(&coeff)?;
                dm = dm.sub(&term)?;
            }
            d.push(dm);
        }
        Ok(d.pop().unwrap())
    }

    /// Evaluates a polynomial at this matrix (Horner with matrix ops).
    pub fn eval_poly(&self, f: &Poly<T>) -> Result<Self> {
        let id = Mat::identity(self.proto(), self.k)?;
        let mut acc = Mat::zero(self.proto(), self.k)?;
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            let term = id.scale(c)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Entry-wise scalar multiple c·A.
    pub fn scale(&self, c: &T) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { k: self.k, entries })
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        if self.k != rhs.k {
            return Err(Error::Dimension("matrix size mismatch in addition".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { k: self.k, entries })
    }

    /// Fitting decomposition V = Im(A^k) + Ker(A^k): A is invertible on
    /// the image and nilpotent on the kernel, and both are A-invariant
    /// (unlike Ker(A) itself). `restricted` is A on the image part, None
    /// when A is nilpotent.
    pub fn fitting_decompose(&self) -> Result<FittingDecomposition<T>> {
        let k = self.k;
        let ak = self.pow(k as u128)?;
        let invertible_part = Subspace::from_spanning(ak.columns(), k, self.proto())?;
        let nilpotent_part = ak.kernel()?;
        if invertible_part.dim() + nilpotent_part.dim() != k {
            return Err(Error::TheoryViolation(
                "image and kernel of A^k do not fill the space".into(),
            ));
        }
        let restricted = if invertible_part.dim() > 0 {
            let r = self.restrict(&invertible_part)?;
            if !r.is_invertible()? {
                return Err(Error::TheoryViolation(
                    "restriction to the image of A^k is singular".into(),
                ));
            }
            Some(r)
        } else {
            None
        };
        Ok(FittingDecomposition { invertible_part, nilpotent_part, restricted })
    }

    /// Matrix of A on an A-invariant subspace, in the subspace basis.
    pub fn restrict(&self, s: &Subspace<T>) -> Result<Self> {
        if s.ambient_dim() != self.k {
            return Err(Error::Dimension(format!(
                "subspace ambient dimension {} does not match matrix dimension {}",
                s.ambient_dim(),
                self.k
            )));
        }
        if s.dim() == 0 {
            return Err(Error::Dimension("cannot restrict to the zero subspace".into()));
        }
        let d = s.dim();
        let zero = self.proto().zero_like();
        let mut entries = vec![zero; d * d];
        for (j, b) in s.basis().iter().enumerate() {
            let w = self.matvec(b)?;
            let coords = s.coordinates(&w)?.ok_or(Error::NotInvariant)?;
            for i in 0..d {
                entries[i * d + j] = coords[i].clone();
            }
        }
        Ok(Mat { k: d, entries })
    }
}

impl<T: Scalar> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`Mat::fitting_decompose`].
#[derive(Debug, Clone)]
pub struct FittingDecomposition<T: Scalar> {
    pub invertible_part: Subspace<T>,
    pub nilpotent_part: Subspace<T>,
    pub restricted: Option<Mat<T>>,
}

/// A subspace with its basis held in reduced row echelon form, so equal
/// subspaces always carry identical bases.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T: Scalar> {
    ambient: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    /// Builds the span of the given vectors; the basis is canonicalized
    /// by row reduction. `proto` supplies the field when no vectors are
    /// given.
    pub fn from_spanning(vectors: Vec<Vec<T>>, ambient: usize, proto: &T) -> Result<Self> {
        let _ = proto;
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::Dimension(format!(
                    "vector length {} does not match ambient dimension {ambient}",
                    v.len()
                )));
            }
        }
        let mut rows = vectors;
        let pivots = rref(&mut rows)?;
        rows.truncate(pivots.len());
        Ok(Subspace { ambient, basis: rows, pivots })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Coordinates of v in the canonical basis, or None if v is outside
    /// the subspace. Reads coefficients off the pivot columns, then
    /// verifies membership exactly.
    pub fn coordinates(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!(
                "vector length {} does not match ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // verify: sum coords_i * basis_i == v
        for j in 0..self.ambient {
            let mut acc = match v.first() {
                Some(e) => e.zero_like(),
                None => return Ok(Some(coords)),
            };
            for (c, b) in coords.iter().zip(&self.basis) {
                acc = acc.add(&c.mul(&b[j])?)?;
            }
            if acc != v[j] {
                return Ok(None);
            }
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }
}

/// In-place reduced row echelon form; returns the pivot columns. Rows
/// beyond the rank are zeroed (callers may truncate).
pub(crate) fn rref<T: Scalar>(rows: &mut Vec<Vec<T>>) -> Result<Vec<usize>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv()?;
        for j in c..ncols {
            rows[r][j] = rows[r][j].mul(&inv)?;
        }
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let sub = f.mul(&rows[r][j])?;
                rows[i][j] = rows[i][j].sub(&sub)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

// ---- parsing: matrix files and vectors ----

/// Matrix file format: first non-empty line is the dimension k, then k
/// lines of k whitespace-separated entries.
fn parse_matrix_lines(text: &str) -> Result<(usize, Vec<(usize, Vec<&str>)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let k: usize = first
        .parse()
        .map_err(|_| Error::parse_at(first_no, format!("expected dimension, found {first:?}")))?;
    if k == 0 {
        return Err(Error::parse_at(first_no, "dimension must be at least 1"));
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (no, line) = lines.next().ok_or_else(|| {
            Error::Parse(format!("matrix file ended before {k} rows were read"))
        })?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != k {
            return Err(Error::parse_at(
                no,
                format!("expected {k} entries, found {}", toks.len()),
            ));
        }
        rows.push((no, toks));
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse_at(no, "unexpected extra content after matrix rows"));
    }
    Ok((k, rows))
}

/// Parses a matrix file over a finite field; entries are integers mod p
/// or bracketed extension elements like `[1,0]`.
pub fn parse_field_matrix(field: &FieldRef, text: &str) -> Result<Mat<FieldElement>> {
    let (_, rows) = parse_matrix_lines(text)?;
    let mut out = Vec::with_capacity(rows.len());
    for (no, toks) in rows {
        let row = toks
            .into_iter()
            .map(|t| FieldElement::parse(field, t).map_err(|e| Error::parse_at(no, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    Mat::from_rows(out)
}

/// Parses a matrix file with exact rational entries ("a" or "a/b").
pub fn parse_rational_matrix(text: &str) -> Result<Mat<BigRational>> {
    let (_, rows) = parse_matrix_lines(text)?;
    let mut out = Vec::with_capacity(rows.len());
    for (no, toks) in rows {
        let row = toks
            .into_iter()
            .map(|t| parse_rational(t).map_err(|e| Error::parse_at(no, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    Mat::from_rows(out)
}

/// Comma-separated vector over a finite field; brackets group extension
/// coefficients: "1,0,[1,1]".
pub fn parse_field_vector(field: &FieldRef, text: &str) -> Result<Vec<FieldElement>> {
    ff::split_top_level(text.trim())
        .into_iter()
        .map(|t| FieldElement::parse(field, t))
        .collect()
}

/// Comma-separated vector of exact rationals.
pub fn parse_rational_vector(text: &str) -> Result<Vec<BigRational>> {
    text.trim().split(',').map(parse_rational).collect()
}

/// "(a, b, c)" rendering shared by reports.
pub fn format_vector<T: Scalar>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("({})", items.join(","))
}
