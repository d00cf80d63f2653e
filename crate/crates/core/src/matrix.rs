//! Small exact integer matrices.
//!
//! Row-major `i64` entries with `i128` intermediates; all arithmetic is
//! exact. Rank is computed over the rationals by fraction-free elimination
//! and elementary divisors by the classical gcd reduction, which is all the
//! chain-complex and free-abelian machinery needs at desk scale.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidMorphism("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn row(&self, r: usize) -> Vec<i64> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn col(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::NonComposable(format!(
                "matrix shapes {}x{} and {}x{} do not chain",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as i128 * other.get(k, c) as i128;
                }
                out.set(
                    r,
                    c,
                    i64::try_from(acc)
                        .map_err(|_| Error::InvalidMorphism("matrix entry overflow".into()))?,
                );
            }
        }
        Ok(out)
    }

    /// Keeps the rows whose indices appear in `keep`, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(keep.len(), self.cols);
        for (nr, &r) in keep.iter().enumerate() {
            for c in 0..self.cols {
                out.set(nr, c, self.get(r, c));
            }
        }
        out
    }

    /// Keeps the columns whose indices appear in `keep`, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, keep.len());
        for r in 0..self.rows {
            for (nc, &c) in keep.iter().enumerate() {
                out.set(r, nc, self.get(r, c));
            }
        }
        out
    }

    /// Rank over the rationals, via Bareiss fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<i128>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as i128).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = (row..self.rows).find(|&r| a[r][col] != 0);
            let Some(p) = pivot else { continue };
            a.swap(row, p);
            for r in 0..self.rows {
                if r != row && a[r][col] != 0 {
                    let (num, den) = (a[r][col], a[row][col]);
                    for c in 0..self.cols {
                        a[r][c] = a[r][c] * den - a[row][c] * num;
                    }
                    // Keep entries small: divide the row by its gcd.
                    let g = a[r].iter().fold(0i128, |acc, &v| gcd_i128(acc, v));
                    if g > 1 {
                        for v in a[r].iter_mut() {
                            *v /= g;
                        }
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Nonzero elementary divisors (Smith normal form diagonal), ascending.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        let mut a: Vec<Vec<i128>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as i128).collect())
            .collect();
        let n = self.rows.min(self.cols);
        let mut divisors = Vec::new();
        let mut top = 0;
        while top < n {
            // Find a nonzero pivot in the remaining block.
            let mut pivot = None;
            'find: for r in top..self.rows {
                for c in top..self.cols {
                    if a[r][c] != 0 {
                        pivot = Some((r, c));
                        break 'find;
                    }
                }
            }
            let Some((pr, pc)) = pivot else { break };
            a.swap(top, pr);
            for row in a.iter_mut() {
                row.swap(top, pc);
            }
            loop {
                // Clear the pivot column with euclidean steps.
                let mut clean = true;
                for r in top + 1..self.rows {
                    while a[r][top] != 0 {
                        let q = a[r][top] / a[top][top];
                        for c in top..self.cols {
                            a[r][c] -= q * a[top][c];
                        }
                        if a[r][top] != 0 {
                            a.swap(top, r);
                            clean = false;
                        }
                    }
                }
                for c in top + 1..self.cols {
                    while a[top][c] != 0 {
                        let q = a[top][c] / a[top][top];
                        for row in a.iter_mut().skip(top) {
                            row[c] -= q * row[top];
                        }
                        if a[top][c] != 0 {
                            for row in a.iter_mut() {
                                row.swap(top, c);
                            }
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            divisors.push((a[top][top].unsigned_abs() as u64) as i64);
            top += 1;
        }
        // Enforce the divisibility chain: diag(a, b) ~ diag(gcd, lcm).
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..divisors.len() {
                for j in i + 1..divisors.len() {
                    if divisors[j] % divisors[i] != 0 {
                        let g = gcd_i128(divisors[i] as i128, divisors[j] as i128) as i64;
                        let l = divisors[i] / g * divisors[j];
                        divisors[i] = g;
                        divisors[j] = l;
                        changed = true;
                    }
                }
            }
        }
        divisors.sort_unstable();
        divisors
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_identity() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_rows(), vec![vec![2, 1], vec![4, 3]]);
    }

    #[test]
    fn rank_examples() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(a.rank(), 1);
        let b = IntMatrix::from_rows(vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(b.rank(), 2);
        assert_eq!(IntMatrix::zero(3, 2).rank(), 0);
    }

    #[test]
    fn elementary_divisor_examples() {
        let a = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(a.elementary_divisors(), vec![1, 6]);
        let b = IntMatrix::from_rows(vec![vec![2, 4], vec![0, 0]]).unwrap();
        assert_eq!(b.elementary_divisors(), vec![2]);
        let id = IntMatrix::identity(3);
        assert_eq!(id.elementary_divisors(), vec![1, 1, 1]);
    }
}
