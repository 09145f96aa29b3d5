//! Dense matrices over the rationals with fraction-free (Bareiss) elimination.
//!
//! Each row is first scaled by the lcm of its denominators so that elimination
//! runs over the integers; Bareiss' update
//! `a'_ij = (a_kk a_ij - a_ik a_kj) / prev_pivot` then divides exactly and the
//! last pivot is the determinant of the scaled matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: Vec<Vec<BigRational>>) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|v| BigRational::from_integer(BigInt::from(*v)))
                        .collect()
                })
                .collect(),
        )
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

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Sub-matrix keeping rows `r0..` and columns `c0..`.
    pub fn trailing_minor(&self, r0: usize, c0: usize) -> Self {
        let mut m = Self::zeros(self.rows - r0, self.cols - c0);
        for i in r0..self.rows {
            for j in c0..self.cols {
                m.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (mut work, scale) = integer_rows(self.rows, self.cols, |i| self.row(i).to_vec());
        let elim = bareiss(&mut work, self.cols);
        if elim.rank < self.rows {
            return Ok(BigRational::zero());
        }
        let det_scaled = if self.rows == 0 {
            BigInt::one()
        } else {
            work[self.rows - 1][self.cols - 1].clone()
        };
        let det_scaled = if elim.swaps % 2 == 1 { -det_scaled } else { det_scaled };
        Ok(BigRational::new(det_scaled, scale))
    }

    pub fn rank(&self) -> usize {
        let (mut work, _) = integer_rows(self.rows, self.cols, |i| self.row(i).to_vec());
        bareiss(&mut work, self.cols).rank
    }

    /// Solves `self * x = b` exactly. The matrix must be square and
    /// non-singular.
    pub fn solve(&self, b: &[BigRational]) -> Result<Vec<BigRational>> {
        let n = self.rows;
        if !self.is_square() || b.len() != n {
            return Err(Error::Dimension(format!(
                "solve with a {}x{} matrix and right-hand side of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let (mut work, _) = integer_rows(n, n + 1, |i| {
            let mut r = self.row(i).to_vec();
            r.push(b[i].clone());
            r
        });
        let elim = bareiss(&mut work, n);
        if elim.rank < n {
            return Err(Error::SingularMatrix);
        }
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(work[i][n].clone());
            for j in i + 1..n {
                acc -= BigRational::from_integer(work[i][j].clone()) * &x[j];
            }
            x[i] = acc / BigRational::from_integer(work[i][i].clone());
        }
        Ok(x)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Clears denominators row by row. Returns the integer rows and the product
/// of the row multipliers.
fn integer_rows(
    rows: usize,
    cols: usize,
    row: impl Fn(usize) -> Vec<BigRational>,
) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let out = (0..rows)
        .map(|i| {
            let r = row(i);
            debug_assert_eq!(r.len(), cols);
            let l = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            r.iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect()
        })
        .collect();
    (out, scale)
}

struct Elimination {
    rank: usize,
    swaps: usize,
}

/// In-place fraction-free forward elimination on the first `pivot_cols`
/// columns. Rows are swapped only to skip a zero pivot. On full rank the
/// result is upper triangular with `work[k][k]` the `k`-th leading minor.
fn bareiss(work: &mut [Vec<BigInt>], pivot_cols: usize) -> Elimination {
    let rows = work.len();
    let width = work.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            work.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &work[r][c] * &work[i][j] - &work[i][c] * &work[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                work[i][j] = q;
            }
            work[i][c] = BigInt::zero();
        }
        prev = work[r][c].clone();
        r += 1;
    }
    Elimination { rank: r, swaps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, ratio};

    #[test]
    fn identity_det_is_one() {
        assert_eq!(RationalMatrix::identity(5).det().unwrap(), int(1));
        assert_eq!(RationalMatrix::identity(0).det().unwrap(), int(1));
    }

    #[test]
    fn det_requires_square() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(matches!(m.det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_small_cases() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[7, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), int(1));
        // a zero leading pivot forces one swap
        let m = RationalMatrix::from_i64_rows(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).unwrap();
        // cofactor expansion: 0*(36-35) - 1*(27-30) + 2*(21-24) = 3 - 6 = -3
        assert_eq!(m.det().unwrap(), int(-3));
        let singular = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.det().unwrap(), int(0));
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn det_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 5)],
        ])
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(m.det().unwrap(), ratio(1, 60));
    }

    #[test]
    fn solve_recovers_vector() {
        let m = RationalMatrix::from_i64_rows(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).unwrap();
        let x = vec![int(1), ratio(-1, 2), int(3)];
        let b = m.mul_vec(&x).unwrap();
        assert_eq!(m.solve(&b).unwrap(), x);
    }

    #[test]
    fn solve_rejects_singular_and_bad_shapes() {
        let singular = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.solve(&[int(1), int(2)]), Err(Error::SingularMatrix));
        let m = RationalMatrix::identity(2);
        assert!(matches!(m.solve(&[int(1)]), Err(Error::Dimension(_))));
    }

    #[test]
    fn from_columns_transposes() {
        let m = RationalMatrix::from_columns(vec![vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        assert_eq!(m.row(0), &[int(1), int(1)]);
        assert_eq!(m.row(1), &[int(0), int(1)]);
        assert!(RationalMatrix::from_rows(vec![vec![int(1)], vec![]]).is_err());
    }
}
