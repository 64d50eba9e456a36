//! Exact feasibility of strict homogeneous inequality systems via
//! Fourier–Motzkin elimination.
//!
//! The chamber oracle needs to decide systems `s_i · ⟨a_i, x⟩ > 0`. Because
//! the constraints are homogeneous, such a system has a solution exactly when
//! the inhomogeneous system `s_i · ⟨a_i, x⟩ ≥ 1` does (scale any strict
//! solution by `1 / min_i s_i⟨a_i, x⟩`), and the latter is decided exactly by
//! Fourier–Motzkin elimination over the rationals, with a witness point
//! recovered by back-substitution.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::rational::{Int, Rational};

/// One inequality `coeffs · x ≥ rhs`. Coefficients are kept as a primitive
/// integer vector (positive rescaling only, so the inequality is unchanged).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Row {
    coeffs: Vec<Int>,
    rhs: Rational,
}

impl Row {
    fn new(coeffs: Vec<Int>, rhs: Rational) -> Self {
        let mut row = Row { coeffs, rhs };
        row.canonicalize();
        row
    }

    /// Divides through by the positive content of the coefficient vector.
    fn canonicalize(&mut self) {
        use num_integer::Integer;
        let mut gcd = Int::zero();
        for c in &self.coeffs {
            gcd = gcd.gcd(c);
        }
        if gcd.is_zero() || gcd == Int::from(1) {
            return;
        }
        for c in &mut self.coeffs {
            *c = &*c / &gcd;
        }
        self.rhs /= Rational::from(gcd);
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// A constant row `0 ≥ rhs` with positive rhs is unsatisfiable.
    fn is_contradiction(&self) -> bool {
        self.is_constant() && self.rhs.is_positive()
    }

    fn is_trivial(&self) -> bool {
        self.is_constant() && !self.rhs.is_positive()
    }
}

/// Merges rows with equal coefficient vectors, keeping the binding (largest)
/// right-hand side, and drops trivially true rows.
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut best: HashMap<Vec<Int>, Rational> = HashMap::new();
    let mut order: Vec<Vec<Int>> = Vec::new();
    for row in rows {
        if row.is_trivial() {
            continue;
        }
        match best.get_mut(&row.coeffs) {
            Some(rhs) => {
                if row.rhs > *rhs {
                    *rhs = row.rhs;
                }
            }
            None => {
                order.push(row.coeffs.clone());
                best.insert(row.coeffs, row.rhs);
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let rhs = best.remove(&coeffs).unwrap();
            Row { coeffs, rhs }
        })
        .collect()
}

/// Eliminates variable `k`: pairs every lower bound on `x_k` with every upper
/// bound. Returns `None` if a contradictory constant row appears.
fn eliminate(rows: &[Row], k: usize) -> Option<Vec<Row>> {
    let mut kept = Vec::new();
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for row in rows {
        match row.coeffs[k].sign() {
            num_bigint::Sign::NoSign => kept.push(row.clone()),
            num_bigint::Sign::Plus => lowers.push(row),
            num_bigint::Sign::Minus => uppers.push(row),
        }
    }
    for lo in &lowers {
        for up in &uppers {
            // positive combination (−c_k)·lo + a_k·up zeroes coefficient k
            let a = &lo.coeffs[k];
            let c_neg = -&up.coeffs[k];
            let coeffs: Vec<Int> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(l, u)| l * &c_neg + u * a)
                .collect();
            let rhs = &lo.rhs * Rational::from(c_neg.clone())
                + &up.rhs * Rational::from(a.clone());
            let row = Row::new(coeffs, rhs);
            if row.is_contradiction() {
                return None;
            }
            kept.push(row);
        }
    }
    Some(prune(kept))
}

/// Decides `coeffs_i · x ≥ rhs_i` over `dim` rational variables, returning a
/// witness point when the system is satisfiable.
pub fn feasible_point(dim: usize, system: &[(Vec<Int>, Rational)]) -> Option<Vec<Rational>> {
    let rows: Vec<Row> = system
        .iter()
        .map(|(coeffs, rhs)| {
            assert_eq!(coeffs.len(), dim, "constraint arity mismatch");
            Row::new(coeffs.clone(), rhs.clone())
        })
        .collect();
    if rows.iter().any(|r| r.is_contradiction()) {
        return None;
    }

    // levels[k] constrains variables 0..k only
    let mut levels: Vec<Vec<Row>> = vec![Vec::new(); dim + 1];
    levels[dim] = prune(rows);
    for k in (0..dim).rev() {
        levels[k] = eliminate(&levels[k + 1], k)?;
    }
    debug_assert!(levels[0].is_empty());

    let mut point: Vec<Rational> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for row in &levels[k + 1] {
            if row.coeffs[k].is_zero() {
                continue;
            }
            let mut partial = row.rhs.clone();
            for (i, x) in point.iter().enumerate() {
                partial -= Rational::from(row.coeffs[i].clone()) * x;
            }
            let bound = partial / Rational::from(row.coeffs[k].clone());
            if row.coeffs[k].is_positive() {
                lower = Some(lower.map_or(bound.clone(), |b| b.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |b| b.min(bound)));
            }
        }
        let value = match (lower, upper) {
            (Some(lo), Some(hi)) => {
                debug_assert!(lo <= hi, "back-substitution interval empty");
                (lo + hi) / Rational::from(Int::from(2))
            }
            (Some(lo), None) => lo + Rational::from(Int::from(1)),
            (None, Some(hi)) => hi - Rational::from(Int::from(1)),
            (None, None) => Rational::zero(),
        };
        point.push(value);
    }
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ge_one(coeffs: &[i64]) -> (Vec<Int>, Rational) {
        (coeffs.iter().map(|&c| Int::from(c)).collect(), int(1))
    }

    fn check_witness(dim: usize, system: &[(Vec<Int>, Rational)]) {
        let point = feasible_point(dim, system).expect("system should be feasible");
        for (coeffs, rhs) in system {
            let value = crate::rational::dot(coeffs, &point);
            assert!(value >= *rhs, "witness violates {coeffs:?} ≥ {rhs}");
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(feasible_point(3, &[]), Some(vec![int(0), int(0), int(0)]));
    }

    #[test]
    fn cyclic_braid_signs_are_infeasible() {
        // x1 > x2, x3 > x1, x2 > x3 closes a cycle
        let system = vec![ge_one(&[1, -1, 0]), ge_one(&[-1, 0, 1]), ge_one(&[0, 1, -1])];
        assert_eq!(feasible_point(3, &system), None);
    }

    #[test]
    fn consistent_braid_signs_have_witness() {
        // x1 > x2 > x3
        let system = vec![ge_one(&[1, -1, 0]), ge_one(&[1, 0, -1]), ge_one(&[0, 1, -1])];
        check_witness(3, &system);
    }

    #[test]
    fn bounded_interval_witness() {
        // 1 ≤ x ≤ 3/2, witness lands at the midpoint
        let system = vec![
            (vec![Int::from(1)], int(1)),
            (vec![Int::from(-1)], crate::rational::ratio(-3, 2)),
        ];
        check_witness(1, &system);
        assert_eq!(
            feasible_point(1, &system).unwrap(),
            vec![crate::rational::ratio(5, 4)]
        );
    }

    #[test]
    fn contradictory_constants_detected() {
        let system = vec![(vec![Int::from(0), Int::from(0)], int(1))];
        assert_eq!(feasible_point(2, &system), None);
    }
}
