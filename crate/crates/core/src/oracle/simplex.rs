//! Dense exact-rational primal simplex for `max c·x s.t. Ax <= b, x >= 0`
//! with `b >= 0`, so the slack basis is feasible from the start. Bland's
//! rule on both entering and leaving choices rules out cycling.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Default)]
pub(crate) struct Lp {
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

pub(crate) fn maximize(lp: &Lp) -> Result<LpSolution> {
    let n = lp.objective.len();
    let r = lp.rows.len();
    let width = n + r;
    // tableau rows: [a | slack identity | rhs]
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(r);
    for (i, (a, b)) in lp.rows.iter().enumerate() {
        if a.len() != n {
            return Err(Error::Internal("LP row width mismatch".into()));
        }
        if b.is_negative() {
            return Err(Error::Internal("LP right-hand side must be non-negative".into()));
        }
        let mut row = a.clone();
        row.resize(width + 1, Rational::zero());
        row[n + i] = Rational::from_integer(1.into());
        row[width] = b.clone();
        tab.push(row);
    }
    // reduced objective coefficients; positive entries can still improve
    let mut obj: Vec<Rational> = lp.objective.clone();
    obj.resize(width + 1, Rational::zero());
    let mut basis: Vec<usize> = (n..width).collect();

    while let Some(enter) = (0..width).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            return Err(Error::Internal("LP is unbounded".into()));
        };

        let pivot = tab[pivot_row][enter].clone();
        for v in tab[pivot_row].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_vals = tab[pivot_row].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pivot_row || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_vals) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_vals) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        basis[pivot_row] = enter;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i][width].clone();
        }
    }
    Ok(LpSolution {
        value: -obj[width].clone(),
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn textbook() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
        let lp = Lp {
            objective: vec![q(3, 1), q(5, 1)],
            rows: vec![
                (vec![q(1, 1), q(0, 1)], q(4, 1)),
                (vec![q(0, 1), q(2, 1)], q(12, 1)),
                (vec![q(3, 1), q(2, 1)], q(18, 1)),
            ],
        };
        let sol = maximize(&lp).unwrap();
        assert_eq!(sol.value, q(36, 1));
        assert_eq!(sol.x, vec![q(2, 1), q(6, 1)]);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 2x + y <= 1, x + 2y <= 1  -> 2/3 at (1/3, 1/3)
        let lp = Lp {
            objective: vec![q(1, 1), q(1, 1)],
            rows: vec![
                (vec![q(2, 1), q(1, 1)], q(1, 1)),
                (vec![q(1, 1), q(2, 1)], q(1, 1)),
            ],
        };
        let sol = maximize(&lp).unwrap();
        assert_eq!(sol.value, q(2, 3));
        assert_eq!(sol.x, vec![q(1, 3), q(1, 3)]);
    }

    #[test]
    fn degenerate_does_not_cycle() {
        // classic Beale-style degenerate instance
        let lp = Lp {
            objective: vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1)],
            rows: vec![
                (vec![q(1, 4), q(-60, 1), q(-1, 25), q(9, 1)], q(0, 1)),
                (vec![q(1, 2), q(-90, 1), q(-1, 50), q(3, 1)], q(0, 1)),
                (vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)], q(1, 1)),
            ],
        };
        let sol = maximize(&lp).unwrap();
        assert_eq!(sol.value, q(1, 20));
    }

    #[test]
    fn unbounded() {
        let lp = Lp {
            objective: vec![q(1, 1), q(0, 1)],
            rows: vec![(vec![q(0, 1), q(1, 1)], q(1, 1))],
        };
        assert!(maximize(&lp).is_err());
    }
}
