//! Dense square matrices over a [`Ring`].
//!
//! The rings have zero divisors, so there is no pivoting: determinants and
//! adjugates come from the Samuelson–Berkowitz characteristic polynomial.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    dim: usize,
    data: Vec<RingElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat({})[", self.dim)?;
        for r in 0..self.dim {
            writeln!(f, "  {:?}", &self.data[r * self.dim..(r + 1) * self.dim])?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(ring: &Ring, dim: usize) -> Self {
        Mat { dim, data: vec![ring.zero(); dim * dim] }
    }

    pub fn identity(ring: &Ring, dim: usize) -> Self {
        let mut m = Self::zero(ring, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ring.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RingElem>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimMismatch(dim, row.len()));
            }
            data.extend(row);
        }
        Ok(Mat { dim, data })
    }

    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> RingElem {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: RingElem) {
        self.data[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<RingElem> {
        self.data[r * self.dim..(r + 1) * self.dim].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<RingElem> {
        (0..self.dim).map(|r| self.get(r, c)).collect()
    }

    pub fn is_identity(&self, ring: &Ring) -> bool {
        *self == Self::identity(ring, self.dim)
    }

    /// `row[target] += coef * row[source]`
    #[inline]
    pub fn add_row_multiple(&mut self, ring: &Ring, target: usize, source: usize, coef: RingElem) {
        let d = self.dim;
        for c in 0..d {
            let s = self.data[source * d + c];
            if !ring.is_zero(s) {
                let t = &mut self.data[target * d + c];
                *t = ring.add(*t, ring.mul(coef, s));
            }
        }
    }

    /// `col[target] += col[source] * coef`
    #[inline]
    pub fn add_col_multiple(&mut self, ring: &Ring, target: usize, source: usize, coef: RingElem) {
        let d = self.dim;
        for r in 0..d {
            let s = self.data[r * d + source];
            if !ring.is_zero(s) {
                let t = &mut self.data[r * d + target];
                *t = ring.add(*t, ring.mul(s, coef));
            }
        }
    }

    pub fn scale(&self, ring: &Ring, x: RingElem) -> Mat {
        Mat { dim: self.dim, data: self.data.iter().map(|&a| ring.mul(x, a)).collect() }
    }

    pub fn add(&self, ring: &Ring, other: &Mat) -> Result<Mat> {
        check_dims(self, other)?;
        Ok(Mat { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(&a, &b)| ring.add(a, b)).collect() })
    }

    pub fn to_json(&self, ring: &Ring) -> MatJson {
        MatJson {
            dim: self.dim,
            entries: (0..self.dim).map(|r| (0..self.dim).map(|c| ring.to_coeffs(self.get(r, c))).collect()).collect(),
        }
    }

    pub fn from_json(ring: &Ring, json: &MatJson) -> Result<Mat> {
        if json.entries.len() != json.dim {
            return Err(Error::DimMismatch(json.dim, json.entries.len()));
        }
        Mat::from_rows(json.entries.iter().map(|row| row.iter().map(|c| ring.from_coeffs(c)).collect()).collect())
    }
}

/// Matrix JSON: `{"dim": n, "entries": [[coeffs, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson {
    pub dim: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

fn check_dims(a: &Mat, b: &Mat) -> Result<()> {
    if a.dim != b.dim {
        Err(Error::DimMismatch(a.dim, b.dim))
    } else {
        Ok(())
    }
}

pub fn mul(ring: &Ring, a: &Mat, b: &Mat) -> Result<Mat> {
    check_dims(a, b)?;
    let d = a.dim;
    let mut out = Mat::zero(ring, d);
    for i in 0..d {
        for k in 0..d {
            let x = a.data[i * d + k];
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..d {
                let y = b.data[k * d + j];
                if !ring.is_zero(y) {
                    let t = &mut out.data[i * d + j];
                    *t = ring.add(*t, ring.mul(x, y));
                }
            }
        }
    }
    Ok(out)
}

/// Coefficients `[1, c_1, ..., c_n]` of `det(x e - a)`, division free.
pub fn char_poly(ring: &Ring, a: &Mat) -> Vec<RingElem> {
    let n = a.dim;
    // Build up from the trailing 1x1 block to the full matrix.
    let mut poly = vec![ring.one()];
    for start in (0..n).rev() {
        let size = n - start;
        let a11 = a.get(start, start);
        let row: Vec<RingElem> = (start + 1..n).map(|c| a.get(start, c)).collect();
        let mut col: Vec<RingElem> = (start + 1..n).map(|r| a.get(r, start)).collect();
        // Toeplitz column: 1, -a11, -R C, -R A1 C, ..., -R A1^(size-2) C
        let mut toeplitz = vec![ring.one(), ring.neg(a11)];
        for _ in 0..size.saturating_sub(1) {
            let rc = row.iter().zip(&col).fold(ring.zero(), |acc, (&r, &c)| ring.add(acc, ring.mul(r, c)));
            toeplitz.push(ring.neg(rc));
            // col <- A1 * col
            col = (start + 1..n)
                .map(|r| {
                    (start + 1..n).zip(&col).fold(ring.zero(), |acc, (c, &v)| ring.add(acc, ring.mul(a.get(r, c), v)))
                })
                .collect();
        }
        let mut next = vec![ring.zero(); size + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &p) in poly.iter().enumerate() {
                if i >= j {
                    *slot = ring.add(*slot, ring.mul(toeplitz[i - j], p));
                }
            }
        }
        poly = next;
    }
    poly
}

/// Returns `(det(a), adj(a))` with `a * adj(a) = det(a) * e`.
pub fn det_adjugate(ring: &Ring, a: &Mat) -> (RingElem, Mat) {
    let n = a.dim;
    let p = char_poly(ring, a);
    let sign_n = if n.is_multiple_of(2) { ring.one() } else { ring.neg(ring.one()) };
    let det = ring.mul(sign_n, p[n]);
    // adj = (-1)^(n+1) (a^(n-1) + c_1 a^(n-2) + ... + c_(n-1) e), via Horner.
    let mut acc = Mat::identity(ring, n);
    for &c in &p[1..n] {
        acc = mul(ring, &acc, a).expect("square");
        for i in 0..n {
            let v = ring.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    let adj = acc.scale(ring, ring.neg(sign_n));
    (det, adj)
}

pub fn determinant(ring: &Ring, a: &Mat) -> RingElem {
    let p = char_poly(ring, a);
    let n = a.dim;
    if n.is_multiple_of(2) {
        p[n]
    } else {
        ring.neg(p[n])
    }
}

pub fn inverse(ring: &Ring, a: &Mat) -> Result<Mat> {
    let (det, adj) = det_adjugate(ring, a);
    let inv = ring.invert(det).ok_or(Error::NotInvertible)?;
    Ok(adj.scale(ring, inv))
}

/// `h g h^-1`
pub fn conj(ring: &Ring, g: &Mat, h: &Mat) -> Result<Mat> {
    let h_inv = inverse(ring, h)?;
    mul(ring, &mul(ring, h, g)?, &h_inv)
}

/// `g h g^-1 h^-1`
pub fn commutator(ring: &Ring, g: &Mat, h: &Mat) -> Result<Mat> {
    let g_inv = inverse(ring, g)?;
    let h_inv = inverse(ring, h)?;
    mul(ring, &mul(ring, &mul(ring, g, h)?, &g_inv)?, &h_inv)
}

/// Product of a list of matrices, left to right.
pub fn product<'a>(ring: &Ring, dim: usize, mats: impl IntoIterator<Item = &'a Mat>) -> Result<Mat> {
    let mut acc = Mat::identity(ring, dim);
    for m in mats {
        acc = mul(ring, &acc, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z(m: u64) -> Ring {
        Ring::new(RingSpec::integers_mod(m, 1)).unwrap()
    }

    fn elementary(ring: &Ring, n: usize, i: usize, j: usize, x: i64) -> Mat {
        let mut m = Mat::identity(ring, n);
        m.set(i, j, ring.from_int(x));
        m
    }

    #[test]
    fn small_products() {
        let r = z(5);
        let a = Mat::from_ints(&r, &[&[1, 2], &[3, 4]]).unwrap();
        let b = Mat::from_ints(&r, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(mul(&r, &a, &b).unwrap(), Mat::from_ints(&r, &[&[2, 1], &[4, 3]]).unwrap());
        assert_eq!(mul(&r, &Mat::identity(&r, 2), &a).unwrap(), a);
        assert_eq!(mul(&r, &a, &Mat::identity(&r, 3)).unwrap_err(), Error::DimMismatch(2, 3));
        let t1 = elementary(&r, 3, 0, 1, 2);
        let t2 = elementary(&r, 3, 0, 1, 4);
        assert_eq!(mul(&r, &t1, &t2).unwrap(), elementary(&r, 3, 0, 1, 1));
    }

    #[test]
    fn determinants() {
        let r = z(5);
        assert_eq!(det_adjugate(&r, &Mat::identity(&r, 4)), (r.one(), Mat::identity(&r, 4)));
        let a = Mat::from_ints(&r, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(determinant(&r, &a), r.from_int(3));
        let s = mul(&r, &elementary(&r, 3, 1, 0, 1), &elementary(&r, 3, 0, 2, 2)).unwrap();
        assert_eq!(determinant(&r, &s), r.one());
    }

    #[test]
    fn inverses() {
        let r = z(6);
        let a = Mat::from_ints(&r, &[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(inverse(&r, &a).unwrap(), Mat::from_ints(&r, &[&[1, 4], &[0, 1]]).unwrap());
        let t = elementary(&r, 3, 0, 1, 5);
        assert_eq!(inverse(&r, &t).unwrap(), elementary(&r, 3, 0, 1, 1));
        let singular = Mat::from_ints(&r, &[&[2, 0], &[0, 1]]).unwrap();
        assert_eq!(inverse(&r, &singular).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn commutators() {
        let r = z(7);
        let t12 = elementary(&r, 3, 0, 1, 3);
        let t23 = elementary(&r, 3, 1, 2, 4);
        assert_eq!(commutator(&r, &t12, &t23).unwrap(), elementary(&r, 3, 0, 2, 12));
        assert!(commutator(&r, &t12, &t12).unwrap().is_identity(&r));
        assert_eq!(conj(&r, &t12, &Mat::identity(&r, 3)).unwrap(), t12);
    }

    fn random_mat(ring: &Ring, dim: usize, rng: &mut ChaCha8Rng) -> Mat {
        let rows = (0..dim).map(|_| (0..dim).map(|_| ring.random(rng)).collect()).collect();
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn adjugate_identity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ring in [z(4), z(6), Ring::new(RingSpec::gaussian(3, 1)).unwrap()] {
            for _ in 0..200 {
                let dim = rng.gen_range(1..=5);
                let a = random_mat(&ring, dim, &mut rng);
                let (det, adj) = det_adjugate(&ring, &a);
                let lhs = mul(&ring, &a, &adj).unwrap();
                assert_eq!(lhs, Mat::identity(&ring, dim).scale(&ring, det));
                assert_eq!(mul(&ring, &adj, &a).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn determinant_matches_leibniz_expansion() {
        // independent route: cofactor expansion along the first row
        fn cofactor(ring: &Ring, a: &Mat) -> RingElem {
            let n = a.dim();
            if n == 1 {
                return a.get(0, 0);
            }
            let mut acc = ring.zero();
            for c in 0..n {
                let minor =
                    Mat::from_rows((1..n).map(|r| (0..n).filter(|&k| k != c).map(|k| a.get(r, k)).collect()).collect())
                        .unwrap();
                let term = ring.mul(a.get(0, c), cofactor(ring, &minor));
                acc = if c % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
            }
            acc
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ring = Ring::new(RingSpec::gaussian(5, 1)).unwrap();
        for _ in 0..50 {
            let dim = rng.gen_range(1..=5);
            let a = random_mat(&ring, dim, &mut rng);
            assert_eq!(determinant(&ring, &a), cofactor(&ring, &a));
        }
    }
}
