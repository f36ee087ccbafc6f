//! Real 3x3 matrices acting on normalized Stokes space.

use std::ops::{Add, Index, Mul, Sub};

/// Row-major real 3x3 matrix. Rows and columns follow the Stokes
/// component order (S1, S2, S3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix3 {
    entries: [[f64; 3]; 3],
}

impl Matrix3 {
    pub const ZERO: Matrix3 = Matrix3 {
        entries: [[0.0; 3]; 3],
    };

    pub fn new(entries: [[f64; 3]; 3]) -> Self {
        Matrix3 { entries }
    }

    pub fn identity() -> Self {
        Matrix3::diagonal(1.0, 1.0, 1.0)
    }

    pub fn diagonal(d1: f64, d2: f64, d3: f64) -> Self {
        Matrix3 {
            entries: [[d1, 0.0, 0.0], [0.0, d2, 0.0], [0.0, 0.0, d3]],
        }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let e = &self.entries;
        Matrix3::new([
            [e[0][0], e[1][0], e[2][0]],
            [e[0][1], e[1][1], e[2][1]],
            [e[0][2], e[1][2], e[2][2]],
        ])
    }

    pub fn determinant(&self) -> f64 {
        let e = &self.entries;
        e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
            - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = self.entries;
        for row in &mut out {
            for v in row {
                *v *= k;
            }
        }
        Matrix3::new(out)
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Largest absolute entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Matrix3) -> f64 {
        (*self - *other).max_abs_entry()
    }

    /// Singular values in descending order.
    ///
    /// Uses one-sided (Hestenes) Jacobi orthogonalization of the columns.
    /// Working on the columns directly, instead of the eigenvalues of
    /// MᵀM, keeps small singular values accurate: forming MᵀM would
    /// square them into the roundoff floor. Accuracy is far inside the
    /// 1e-10 absolute contract for entries of order one.
    pub fn singular_values(&self) -> [f64; 3] {
        // cols[j] holds column j of the matrix.
        let mut cols = [[0.0_f64; 3]; 3];
        for (i, row) in self.entries.iter().enumerate() {
            for j in 0..3 {
                cols[j][i] = row[j];
            }
        }
        let eps = f64::EPSILON;
        for _sweep in 0..30 {
            let mut rotated = false;
            for i in 0..2 {
                for j in (i + 1)..3 {
                    let a = dot3(&cols[i], &cols[i]);
                    let b = dot3(&cols[j], &cols[j]);
                    let d = dot3(&cols[i], &cols[j]);
                    if d == 0.0 || d.abs() <= eps * (a * b).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let tau = (b - a) / (2.0 * d);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let cs = 1.0 / (1.0 + t * t).sqrt();
                    let sn = cs * t;
                    let (ci, cj) = (cols[i], cols[j]);
                    for k in 0..3 {
                        cols[i][k] = cs * ci[k] - sn * cj[k];
                        cols[j][k] = sn * ci[k] + cs * cj[k];
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sigma = [
            dot3(&cols[0], &cols[0]).sqrt(),
            dot3(&cols[1], &cols[1]).sqrt(),
            dot3(&cols[2], &cols[2]).sqrt(),
        ];
        sigma.sort_unstable_by(|x, y| y.partial_cmp(x).unwrap());
        sigma
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl Index<(usize, usize)> for Matrix3 {
    type Output = f64;

    /// Zero-based (row, column) access.
    fn index(&self, (row, col): (usize, usize)) -> &f64 {
        &self.entries[row][col]
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;

    fn mul(self, rhs: Matrix3) -> Matrix3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.entries[i][0] * rhs.entries[0][j]
                    + self.entries[i][1] * rhs.entries[1][j]
                    + self.entries[i][2] * rhs.entries[2][j];
            }
        }
        Matrix3::new(out)
    }
}

impl Add for Matrix3 {
    type Output = Matrix3;

    fn add(self, rhs: Matrix3) -> Matrix3 {
        let mut out = self.entries;
        for (row, rrow) in out.iter_mut().zip(rhs.entries.iter()) {
            for (v, r) in row.iter_mut().zip(rrow.iter()) {
                *v += r;
            }
        }
        Matrix3::new(out)
    }
}

impl Sub for Matrix3 {
    type Output = Matrix3;

    fn sub(self, rhs: Matrix3) -> Matrix3 {
        let mut out = self.entries;
        for (row, rrow) in out.iter_mut().zip(rhs.entries.iter()) {
            for (v, r) in row.iter_mut().zip(rrow.iter()) {
                *v -= r;
            }
        }
        Matrix3::new(out)
    }
}
