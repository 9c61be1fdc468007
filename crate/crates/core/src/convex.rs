//! Exact convex-hull membership by linear feasibility.
//!
//! Decides whether `target = Σ λ_v v` with `λ_v ≥ 0`, `Σ λ_v = 1` using a
//! phase-one simplex over arbitrary-precision rationals with Bland's rule, so
//! the answer never depends on floating-point tolerances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::weight::Rational;

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// True iff `target` lies in the convex hull of `vertices`.
pub fn hull_contains(vertices: &[Vec<Rational>], target: &[Rational]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let dim = target.len();
    assert!(vertices.iter().all(|v| v.len() == dim), "vertex dimension mismatch");

    // Rows: one per coordinate plus the affine row Σλ = 1.
    let rows = dim + 1;
    let n = vertices.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut b: Vec<BigRational> = Vec::with_capacity(rows);
    for k in 0..dim {
        a.push(vertices.iter().map(|v| big(&v[k])).collect());
        b.push(big(&target[k]));
    }
    a.push(vec![BigRational::one(); n]);
    b.push(BigRational::one());
    feasible(a, b)
}

/// Phase one: is `{x ≥ 0 : A x = b}` nonempty?
fn feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            *rhs = -rhs.clone();
        }
    }
    // Tableau columns: n structural, m artificial, then rhs.
    let width = n + m;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row = a[r].clone();
            row.extend((0..m).map(|k| if k == r { BigRational::one() } else { BigRational::zero() }));
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Objective: minimise the sum of artificials, expressed in reduced costs.
    let mut cost: Vec<BigRational> = vec![BigRational::zero(); width + 1];
    for row in &t {
        for (c, x) in cost.iter_mut().zip(row) {
            *c -= x;
        }
    }
    for c in cost.iter_mut().take(width).skip(n) {
        *c = BigRational::zero();
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded in phase one cannot happen (objective bounded below by 0).
            unreachable!("phase-one objective is bounded");
        };
        let p = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &p;
        }
        let pivot_row = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        basis[pr] = enter;
    }
    // cost[width] holds minus the objective value.
    cost[width].is_zero()
}
