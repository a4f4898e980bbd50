//! Linear feasibility of `A x = b, x >= 0` by a phase-1 simplex.
//!
//! One generic implementation serves both scalar modes: `f64` with a
//! nonnegativity tolerance, and `BigRational` with exact arithmetic
//! (tolerance zero). Bland's rule pivoting guarantees termination in exact
//! mode; problems here are tiny (dimension <= 8, a handful of columns), so
//! no anti-cycling heuristics beyond that are needed.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scalar field for the simplex. `tol` is the caller-supplied slack on
/// nonnegativity comparisons; exact implementations ignore it.
pub trait LpScalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    /// self > o + tol
    fn gt(&self, o: &Self, tol: &Self) -> bool;
    /// self < o - tol
    fn lt(&self, o: &Self, tol: &Self) -> bool;
    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn gt(&self, o: &Self, tol: &Self) -> bool {
        *self > o + tol
    }
    fn lt(&self, o: &Self, tol: &Self) -> bool {
        *self < o - tol
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn gt(&self, o: &Self, _tol: &Self) -> bool {
        self > o
    }
    fn lt(&self, o: &Self, _tol: &Self) -> bool {
        self < o
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Outcome of a feasibility solve.
#[derive(Clone, Debug)]
pub struct Feasibility<T> {
    /// A nonnegative solution of `A x = b` when one exists.
    pub solution: Option<Vec<T>>,
    /// Phase-1 objective at optimum (0 when feasible; otherwise a residual
    /// measuring how far `b` is from the nonnegative column span).
    pub residual: T,
}

impl<T: LpScalar> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        self.solution.is_some()
    }
}

/// Decide whether `A x = b` admits `x >= 0`; `a` is given row-major with
/// `m = b.len()` rows. Feasible when the phase-1 optimum is within `tol`
/// (scaled by `1 + |b|_inf`).
pub fn feasible_nonneg<T: LpScalar>(a: &[Vec<T>], b: &[T], tol: &T) -> Feasibility<T> {
    let m = b.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    debug_assert!(a.len() == m);

    if m == 0 {
        return Feasibility {
            solution: Some(vec![T::zero(); n]),
            residual: T::zero(),
        };
    }

    // Tableau: n structural columns, m artificial columns, rhs.
    // Rows are sign-normalized so the rhs is nonnegative.
    let width = n + m + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    for (i, bi) in b.iter().enumerate() {
        let flip = bi.lt(&T::zero(), tol) || (!bi.gt(&T::zero(), tol) && bi.to_f64() < 0.0);
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            let v = a[i][j].clone();
            row.push(if flip { v.neg() } else { v });
        }
        for k in 0..m {
            row.push(if k == i { T::one() } else { T::zero() });
        }
        row.push(if flip { bi.neg() } else { bi.clone() });
        t.push(row);
    }

    let mut basis: Vec<usize> = (n..n + m).collect();
    let zero = T::zero();

    // Minimize the sum of artificials. Reduced cost of column j is
    // c_j - sum over artificial-basic rows of t[i][j].
    let max_iters = 60 * (n + m) + 200;
    for _ in 0..max_iters {
        let mut entering = None;
        for j in 0..n + m {
            if basis.contains(&j) {
                continue;
            }
            let cj = if j < n { T::zero() } else { T::one() };
            let mut z = T::zero();
            for i in 0..m {
                if basis[i] >= n {
                    z = z.add(&t[i][j]);
                }
            }
            // Bland: first improving column.
            if z.gt(&cj, tol) {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };

        // Ratio test, Bland tie-break on basis index.
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if t[i][j].gt(&zero, tol) {
                let ratio = t[i][width - 1].div(&t[i][j]);
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio.lt(lr, tol) || (!ratio.gt(lr, tol) && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            // Unbounded phase-1 cannot happen (objective bounded below by 0);
            // bail out defensively.
            break;
        };

        // Pivot.
        let pv = t[pivot_row][j].clone();
        for x in t[pivot_row].iter_mut() {
            *x = x.div(&pv);
        }
        for i in 0..m {
            if i == pivot_row {
                continue;
            }
            let factor = t[i][j].clone();
            if factor.gt(&zero, &T::zero()) || factor.lt(&zero, &T::zero()) {
                for k in 0..width {
                    let delta = factor.mul(&t[pivot_row][k]);
                    t[i][k] = t[i][k].sub(&delta);
                }
            }
        }
        basis[pivot_row] = j;
    }

    let mut objective = T::zero();
    for i in 0..m {
        if basis[i] >= n {
            objective = objective.add(&t[i][width - 1]);
        }
    }

    let mut scale = T::one();
    for bi in b {
        let a = bi.abs();
        if a.gt(&scale, &T::zero()) {
            scale = a;
        }
    }
    let feasible = !objective.gt(&tol.mul(&scale), &T::zero());

    let solution = feasible.then(|| {
        let mut x = vec![T::zero(); n];
        for i in 0..m {
            if basis[i] < n {
                x[basis[i]] = t[i][width - 1].clone();
            }
        }
        x
    });

    Feasibility {
        solution,
        residual: objective,
    }
}

/// Membership of `p` in the convex hull of `points`: solve
/// `sum w_i v_i = p, sum w_i = 1, w >= 0`.
pub fn in_convex_hull(points: &[Vec<f64>], p: &[f64], tol: f64) -> Feasibility<f64> {
    let dim = p.len();
    let mut a = vec![vec![0.0; points.len()]; dim + 1];
    for (j, v) in points.iter().enumerate() {
        for i in 0..dim {
            a[i][j] = v[i];
        }
        a[dim][j] = 1.0;
    }
    let mut b = p.to_vec();
    b.push(1.0);
    feasible_nonneg(&a, &b, &tol)
}

/// Exact rational of an f64 (binary expansion, no rounding).
pub fn rational_of(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn feasible_f64(a: &[Vec<f64>], b: &[f64]) -> bool {
        feasible_nonneg(a, b, &1e-9).is_feasible()
    }

    #[test]
    fn quadrant_membership() {
        // x*(1,0) + y*(1,1) = p, x,y >= 0
        let a = vec![vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(feasible_f64(&a, &[2.0, 1.0]));
        assert!(!feasible_f64(&a, &[-1.0, 0.0]));
        assert!(feasible_f64(&a, &[0.0, 0.0]));
    }

    #[test]
    fn hull_membership_square() {
        let square = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ];
        assert!(in_convex_hull(&square, &[0.5, 0.5], 1e-9).is_feasible());
        assert!(!in_convex_hull(&square, &[1.2, 0.5], 1e-9).is_feasible());
        let f = in_convex_hull(&square, &[1.5, 0.5], 1e-9);
        assert!(f.residual > 0.1);
    }

    #[test]
    fn exact_mode_rejects_epsilon_outside() {
        use num_bigint::BigInt;
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // cone{(1,0),(1,1)}; p = (1, -1/100000000) is outside no matter how small.
        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(0, 1), r(1, 1)]];
        let b = vec![r(1, 1), r(-1, 100_000_000)];
        let zero: BigRational = num_traits::Zero::zero();
        let f = feasible_nonneg(&a, &b, &zero);
        assert!(!f.is_feasible());
        let b2 = vec![r(1, 1), r(1, 100_000_000)];
        assert!(feasible_nonneg(&a, &b2, &zero).is_feasible());
    }

    proptest! {
        // Constructed-feasible systems must be reported feasible, and the
        // returned solution must reproduce b.
        #[test]
        fn recognizes_constructed_feasible(
            rows in 1usize..5, cols in 1usize..7, seed in 0u64..500
        ) {
            let rng = crate::rng::CounterRng::new(seed, 11);
            let a: Vec<Vec<f64>> = (0..rows)
                .map(|i| (0..cols).map(|j| rng.range_at((i * cols + j) as u64, -2.0, 2.0)).collect())
                .collect();
            let x0: Vec<f64> = (0..cols).map(|j| rng.uniform_at(1000 + j as u64) * 3.0).collect();
            let b: Vec<f64> = (0..rows)
                .map(|i| (0..cols).map(|j| a[i][j] * x0[j]).sum())
                .collect();
            let f = feasible_nonneg(&a, &b, &1e-7);
            prop_assert!(f.is_feasible());
            let x = f.solution.unwrap();
            for i in 0..rows {
                let bi: f64 = (0..cols).map(|j| a[i][j] * x[j]).sum();
                prop_assert!((bi - b[i]).abs() < 1e-6);
            }
        }

        // Farkas: if y^T A <= 0 componentwise and y^T b > 0 then infeasible.
        #[test]
        fn rejects_farkas_certified_infeasible(
            rows in 2usize..5, cols in 1usize..6, seed in 0u64..500
        ) {
            let rng = crate::rng::CounterRng::new(seed, 12);
            let y: Vec<f64> = (0..rows).map(|i| rng.range_at(i as u64, -1.0, 1.0)).collect();
            prop_assume!(y.iter().any(|v: &f64| f64::abs(*v) > 0.1));
            // Build columns orthogonal-or-negative against y.
            let mut a = vec![vec![0.0; cols]; rows];
            for j in 0..cols {
                let mut col: Vec<f64> = (0..rows)
                    .map(|i| rng.range_at((100 + j * rows + i) as u64, -1.0, 1.0))
                    .collect();
                let dot: f64 = col.iter().zip(&y).map(|(c, yi)| c * yi).sum();
                if dot > -0.05 {
                    let y2: f64 = y.iter().map(|v| v * v).sum();
                    for (c, yi) in col.iter_mut().zip(&y) {
                        *c -= (dot + 0.1) * yi / y2;
                    }
                }
                for i in 0..rows {
                    a[i][j] = col[i];
                }
            }
            // b with y^T b = 1.
            let y2: f64 = y.iter().map(|v| v * v).sum();
            let b: Vec<f64> = y.iter().map(|yi| yi / y2).collect();
            let f = feasible_nonneg(&a, &b, &1e-9);
            prop_assert!(!f.is_feasible());
        }
    }
}
