//! Exact linear feasibility: phase one of the simplex method over the
//! rationals, with Bland's rule so that it terminates on degenerate input.

use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

/// Finds some `x ≥ 0` with `A x = b`, or `None` when the system is
/// infeasible.
///
/// Every row of `a` must have the same length (the number of variables).
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Rational> = Vec::with_capacity(width);
        r.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        r.push(if flip { -bi } else { bi.clone() });
        t.push(r);
    }
    // Objective: minimize the sum of artificials, i.e. reduced costs are
    // minus the column sums over the original columns.
    let mut obj = vec![Rational::zero(); width];
    for r in &t {
        for (j, x) in r.iter().enumerate() {
            if j < n || j == width - 1 {
                obj[j] -= x;
            }
        }
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut t, &mut obj, row, enter);
        basis[row] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn small_systems() {
        // x + y = 1, x − y = 3 has the solution (2, −1): infeasible for x ≥ 0.
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert!(feasible_point(&a, &[int(1), int(3)]).is_none());
        let x = feasible_point(&a, &[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        // Redundant rows are fine.
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(feasible_point(&a, &[int(1), int(2)]).is_some());
    }
}
