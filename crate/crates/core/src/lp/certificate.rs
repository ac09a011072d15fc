//! Independent verification of simplex optimality certificates.
//!
//! Only the problem data and the reported primal/dual vectors are used, so a
//! passing check does not depend on the correctness of the pivoting code.

use crate::scalar::ExactNum;

use super::problem::{LpProblem, LpSolution, LpStatus, Relation};

/// Verifies that `(primal, duals)` prove optimality of `sol` for `p`:
/// primal feasibility, dual sign feasibility, complementary slackness on
/// every row, and reduced-cost sign consistency with the variable bounds.
pub fn check_certificate<T: ExactNum>(p: &LpProblem<T>, sol: &LpSolution<T>) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    if sol.status != LpStatus::Optimal {
        return Err(vec![format!("status is {:?}, not optimal", sol.status)]);
    }
    let n = p.num_vars();
    if sol.primal.len() != n || sol.duals.len() != p.constraints.len() {
        return Err(vec![format!(
            "certificate shape: {} primal for {n} vars, {} duals for {} rows",
            sol.primal.len(),
            sol.duals.len(),
            p.constraints.len()
        )]);
    }
    let x = &sol.primal;

    for j in 0..n {
        if x[j] < p.lower[j] {
            errs.push(format!("{} = {} below lower bound {}", p.vars[j], x[j], p.lower[j]));
        }
        if let Some(u) = &p.upper[j] {
            if &x[j] > u {
                errs.push(format!("{} = {} above upper bound {u}", p.vars[j], x[j]));
            }
        }
    }

    let mut reduced = p.objective.clone();
    for (c, pi) in p.constraints.iter().zip(&sol.duals) {
        let act = c.activity(x);
        if !c.relation.holds(&act, &c.rhs) {
            errs.push(format!("row {}: {act} {} {} fails", c.name, c.relation.symbol(), c.rhs));
        }
        let sign_ok = match c.relation {
            Relation::Le => !pi.is_positive(),
            Relation::Ge => !pi.is_negative(),
            Relation::Eq => true,
        };
        if !sign_ok {
            errs.push(format!("row {}: dual {pi} has wrong sign for {}", c.name, c.relation.symbol()));
        }
        if !pi.is_zero() && act != c.rhs {
            errs.push(format!("row {}: dual {pi} nonzero on slack row", c.name));
        }
        for (j, a) in &c.coeffs {
            reduced[*j] = reduced[*j].clone() - pi.clone() * a.clone();
        }
    }

    for j in 0..n {
        let d = &reduced[j];
        if d.is_positive() && x[j] != p.lower[j] {
            errs.push(format!("{}: reduced cost {d} > 0 but not at lower bound", p.vars[j]));
        }
        if d.is_negative() && p.upper[j].as_ref() != Some(&x[j]) {
            errs.push(format!("{}: reduced cost {d} < 0 but not at upper bound", p.vars[j]));
        }
    }

    if p.objective_value(x) != sol.objective {
        errs.push(format!("reported objective {} differs from c·x = {}", sol.objective, p.objective_value(x)));
    }

    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}
