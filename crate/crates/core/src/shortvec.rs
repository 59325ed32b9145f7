//! Fincke–Pohst enumeration of lattice points in an ellipsoid, in exact
//! rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::Int;

/// Quadratic form `q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2` obtained from
/// a positive definite integer Gram matrix.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    d: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

impl Ellipsoid {
    /// Factor a symmetric integer matrix; fails unless it is positive definite.
    pub fn new(gram: &[Vec<BigInt>]) -> Result<Self> {
        let n = gram.len();
        let mut q: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        for i in 0..n {
            if !q[i][i].is_positive() {
                return Err(Error::pre("quadratic form is not positive definite"));
            }
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        let d = (0..n).map(|i| q[i][i].clone()).collect();
        let mu = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if j > i { q[i][j].clone() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Ok(Ellipsoid { d, mu })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// Calls `visit` on every integer vector `x` with `q(x) <= bound`, the
    /// zero vector included. The visiting order is deterministic.
    pub fn for_each(&self, bound: &BigInt, mut visit: impl FnMut(&[Int])) {
        let n = self.dim();
        if bound.is_negative() || n == 0 {
            if n == 0 && !bound.is_negative() {
                visit(&[]);
            }
            return;
        }
        let zero = vec![BigRational::zero(); n];
        self.for_each_centered(&zero, &BigRational::from_integer(bound.clone()), visit);
    }

    /// Calls `visit` on every integer vector `x` with `q(x − m) <= bound`.
    pub fn for_each_centered(&self, m: &[BigRational], bound: &BigRational, mut visit: impl FnMut(&[Int])) {
        let n = self.dim();
        assert_eq!(m.len(), n, "center has the wrong dimension");
        if bound.is_negative() || n == 0 {
            if n == 0 && !bound.is_negative() {
                visit(&[]);
            }
            return;
        }
        let mut x = vec![0 as Int; n];
        self.descend(n - 1, bound, m, &mut x, &mut visit);
    }

    fn descend(
        &self,
        i: usize,
        budget: &BigRational,
        m: &[BigRational],
        x: &mut Vec<Int>,
        visit: &mut impl FnMut(&[Int]),
    ) {
        let n = self.dim();
        let mut center = -m[i].clone();
        for j in i + 1..n {
            let shift = BigRational::from_integer(BigInt::from(x[j])) - &m[j];
            if !shift.is_zero() {
                center += &self.mu[i][j] * shift;
            }
        }
        let ratio = budget / &self.d[i];
        let radius = ratio.floor().to_integer().sqrt();
        let mid = (-center.clone()).floor().to_integer();
        let lo = &mid - &radius - BigInt::one();
        let hi = &mid + &radius + BigInt::from(2);
        let (lo, hi) = (lo.to_i128().expect("coordinate range"), hi.to_i128().expect("coordinate range"));
        for t in lo..=hi {
            let shifted = BigRational::from_integer(BigInt::from(t)) + &center;
            let used = &self.d[i] * &shifted * &shifted;
            if &used > budget {
                continue;
            }
            x[i] = t;
            if i == 0 {
                visit(x);
            } else {
                let rest = budget - used;
                self.descend(i - 1, &rest, m, x, visit);
            }
        }
        x[i] = 0;
    }
}

/// LLL reduction (`δ = 3/4`) of the standard basis of `Z^n` with respect to
/// the positive definite Gram matrix `gram`. Returns the unimodular change
/// of basis: row `i` holds the coordinates of the `i`-th reduced vector.
pub fn lll(gram: &[Vec<BigInt>]) -> Vec<Vec<Int>> {
    let n = gram.len();
    let mut b: Vec<Vec<Int>> = (0..n).map(|i| (0..n).map(|j| Int::from(i == j)).collect()).collect();
    let ip = |x: &[Int], y: &[Int]| -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] != 0 {
                    s += &gram[i][j] * BigInt::from(x[i]) * BigInt::from(y[j]);
                }
            }
        }
        s
    };
    let gso = |b: &[Vec<Int>]| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut bs: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut norm = BigRational::from_integer(ip(&b[i], &b[i]));
            for j in 0..i {
                let mut m = BigRational::from_integer(ip(&b[i], &b[j]));
                for k in 0..j {
                    m -= &mu[j][k] * &mu[i][k] * &bs[k];
                }
                m /= bs[j].clone();
                norm -= &m * &m * &bs[j];
                mu[i][j] = m;
            }
            bs.push(norm);
        }
        (mu, bs)
    };
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&b);
            if mu[k][j].abs() > half {
                let q = (&mu[k][j] + &half).floor().to_integer().to_i128().expect("LLL coefficient");
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(bj) {
                    *x -= q * y;
                }
            }
        }
        let (mu, bs) = gso(&b);
        let lhs = bs[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bs[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Integer square root rounded down, for nonnegative `n`.
pub fn isqrt(n: Int) -> Int {
    assert!(n >= 0, "isqrt of a negative number");
    let r = BigInt::from(n).sqrt();
    r.to_i128().expect("isqrt fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn counts_points_of_z2_disk() {
        let e = Ellipsoid::new(&gram(&[&[1, 0], &[0, 1]])).unwrap();
        let mut count = 0;
        e.for_each(&BigInt::from(2), |_| count += 1);
        // (0,0), four of norm 1, four of norm 2
        assert_eq!(count, 9);
    }

    #[test]
    fn a2_hexagon() {
        let e = Ellipsoid::new(&gram(&[&[2, -1], &[-1, 2]])).unwrap();
        let mut count = 0;
        e.for_each(&BigInt::from(2), |x| {
            let q = 2 * x[0] * x[0] - 2 * x[0] * x[1] + 2 * x[1] * x[1];
            assert!(q <= 2);
            count += 1;
        });
        assert_eq!(count, 7);
    }

    #[test]
    fn centered_disk() {
        let e = Ellipsoid::new(&gram(&[&[1, 0], &[0, 1]])).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut pts = Vec::new();
        e.for_each_centered(&[half.clone(), half.clone()], &half, |x| pts.push(x.to_vec()));
        pts.sort();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn lll_shortens_a_skewed_basis() {
        // the basis (1, 0), (100, 1) of Z^2 under the standard form
        let g = gram(&[&[1, 100], &[100, 10001]]);
        let t = lll(&g);
        let norm = |x: &[Int]| {
            let (a, b) = (x[0], x[1]);
            a * a + 200 * a * b + 10001 * b * b
        };
        assert!(t.iter().all(|row| norm(row) == 1));
    }

    #[test]
    fn rejects_indefinite() {
        assert!(Ellipsoid::new(&gram(&[&[0, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn isqrt_small() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
    }
}
