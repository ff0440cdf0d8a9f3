use alloc::vec::Vec;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::algebra::{Coeff, Poly, Rat, RatFunc};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Coeff> Mat<T> {
    /// Panics if `data.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Columns given as vectors of equal length.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Mat::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + c.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += c · col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + self.get(i, src).clone() * c.clone();
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(i, j).clone() * c.clone();
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, j).clone() * c.clone();
            self.set(i, j, v);
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }
}

impl<T: Coeff> Mul<&Mat<T>> for &Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                let a = self.get(i, k);
                let b = rhs.get(k, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        })
    }
}

impl Mat<RatFunc> {
    /// `(N, d)` with `self = diag(d)⁻¹ · N`, `N` polynomial and `d_i` the
    /// lcm of the denominators in row `i`.
    fn clear_rows(&self) -> (Mat<Poly<Rat>>, Vec<Poly<Rat>>) {
        let dens: Vec<Poly<Rat>> = (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Poly::one(), |acc: Poly<Rat>, j| {
                    acc.lcm(self.get(i, j).den())
                })
            })
            .collect();
        let n = Mat::from_fn(self.rows, self.cols, |i, j| {
            let x = self.get(i, j);
            x.num() * &dens[i].exact_div(x.den()).expect("lcm is a multiple")
        });
        (n, dens)
    }

    /// Determinant by fraction-free elimination of the cleared matrix.
    pub fn det(&self) -> RatFunc {
        assert!(self.is_square());
        let (n, dens) = self.clear_rows();
        let d = dens.iter().fold(Poly::one(), |acc, x| &acc * x);
        &RatFunc::from_poly(bareiss(n, 0).0) / &RatFunc::from_poly(d)
    }

    /// Inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let k = self.rows;
        let (n, dens) = self.clear_rows();
        let aug = n.hconcat(&Mat::identity(k));
        let (det, reduced) = bareiss(aug, k);
        if det.is_zero() {
            return None;
        }
        // The left block is ±det·I, so N⁻¹ = right block / pivot and
        // self⁻¹ = N⁻¹ · diag(d).
        let pivot = RatFunc::from_poly(reduced.get(0, 0).clone());
        Some(Mat::from_fn(k, k, |i, j| {
            let x = reduced.get(i, k + j) * &dens[j];
            &RatFunc::from_poly(x) / &pivot
        }))
    }
}

/// Fraction-free Gauss-Jordan elimination (Bareiss) on the leading square
/// block of `m`, which has `extra` additional columns. Returns the
/// determinant of that block and the reduced matrix, whose leading block is
/// then `±det · I`. Every division is exact.
fn bareiss(mut m: Mat<Poly<Rat>>, extra: usize) -> (Poly<Rat>, Mat<Poly<Rat>>) {
    let n = m.rows;
    let width = n + extra;
    let mut prev = Poly::<Rat>::one();
    let mut sign = true;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
            return (Poly::zero(), m);
        };
        if p != k {
            m.swap_rows(p, k);
            sign = !sign;
        }
        let pivot = m.get(k, k).clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let lead = m.get(i, k).clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = &(&pivot * m.get(i, j)) - &(&lead * m.get(k, j));
                m.set(i, j, v.exact_div(&prev).expect("Bareiss division is exact"));
            }
            m.set(i, k, Poly::zero());
        }
        prev = pivot;
    }
    let det = if sign { prev.clone() } else { -prev.clone() };
    (det, m)
}

impl Mat<Poly<Rat>> {
    pub fn to_ratfunc(&self) -> Mat<RatFunc> {
        self.map(|p| RatFunc::from_poly(p.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Int;
    use alloc::vec;

    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn determinant_and_inverse() {
        let z = RatFunc::z();
        let m = Mat::new(2, 2, vec![&z + &c(1), z.clone(), z.clone(), z.clone()]);
        assert_eq!(m.det(), z);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        let singular = Mat::new(2, 2, vec![z.clone(), c(0), c(0), c(0)]);
        assert!(singular.det().is_zero());
        assert!(singular.inverse().is_none());
    }

    fn cofactor_det(m: &Mat<RatFunc>) -> RatFunc {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        (0..n).fold(RatFunc::zero(), |acc, j| {
            let minor = Mat::from_fn(n - 1, n - 1, |i, k| {
                m.get(i + 1, if k < j { k } else { k + 1 }).clone()
            });
            let term = m.get(0, j) * &cofactor_det(&minor);
            if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        })
    }

    #[test]
    fn pivoting_with_denominators() {
        let z = RatFunc::z();
        let half = RatFunc::from_rat(Rat::new(Int::from(1), Int::from(2)));
        let m = Mat::new(
            3,
            3,
            vec![
                c(0),
                z.clone(),
                &c(1) / &(&z - &c(1)),
                &z * &z,
                c(0),
                half.clone(),
                &c(3) / &z,
                &z + &c(2),
                c(0),
            ],
        );
        assert_eq!(m.det(), cofactor_det(&m));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(3));
        assert_eq!(&inv * &m, Mat::identity(3));
        let swapped = Mat::new(2, 2, vec![c(0), c(1), c(1), c(0)]);
        assert_eq!(swapped.det(), c(-1));
        assert_eq!(swapped.inverse().unwrap(), swapped);
    }

    #[test]
    fn row_and_column_operations() {
        let mut m = Mat::<Int>::identity(3);
        m.add_row_multiple(0, 2, &Int::from(5));
        m.swap_cols(0, 1);
        assert_eq!(m.get(0, 2), &Int::from(5));
        assert_eq!(m.get(0, 1), &Int::from(1));
        assert!(!m.is_upper_triangular());
        assert!(Mat::<Int>::identity(3).is_diagonal());
    }
}
