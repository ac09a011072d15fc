//! Dense two-phase tableau simplex over an exact field with Bland's rule.

use crate::scalar::ExactField;

use super::problem::{LpProblem, LpSolution, LpStatus, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<T> {
    /// Constraint rows; the last entry of each row is its right-hand side.
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last entry is minus the current objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
}

impl<T: ExactField> Tableau<T> {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let rhs = self.width();
        let p = self.rows[r][e].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() / p.clone();
                }
            }
        }
        let support: Vec<usize> = (0..=rhs).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for &j in &support {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        if !self.cost[e].is_zero() {
            let f = self.cost[e].clone();
            for &j in &support {
                self.cost[j] = self.cost[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = e;
    }

    /// Recomputes reduced costs for column costs `c` under the current basis.
    fn price(&mut self, c: &[T]) {
        let w = self.width();
        let mut cost: Vec<T> = c.to_vec();
        cost.push(T::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    cost[j] = cost[j].clone() - cb.clone() * row[j].clone();
                }
            }
        }
        self.cost = cost;
    }

    /// Runs Bland-rule iterations until optimal or unbounded. Artificial
    /// columns never enter.
    fn iterate(&mut self) -> Result<(), ()> {
        let w = self.width();
        loop {
            let entering = (0..w).find(|&j| self.kinds[j] != ColKind::Artificial && self.cost[j].is_negative());
            let Some(e) = entering else { return Ok(()) };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = row[w].clone() / row[e].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, e),
                None => return Err(()),
            }
        }
    }
}

/// Solves `p` exactly. Optimal results are basic solutions and carry one dual
/// value per constraint row. Identical input always yields identical output.
pub fn simplex_solve<T: ExactField>(p: &LpProblem<T>) -> LpSolution<T> {
    let n = p.num_vars();

    // Rows in terms of the shifted variables x' = x - lower.
    struct Row<T> {
        coeffs: Vec<(usize, T)>,
        relation: Relation,
        rhs: T,
    }
    let shift = |coeffs: &[(usize, T)], rhs: &T| -> T {
        coeffs.iter().fold(rhs.clone(), |s, (j, c)| s - c.clone() * p.lower[*j].clone())
    };
    let mut rows: Vec<Row<T>> = p
        .constraints
        .iter()
        .map(|c| Row { coeffs: c.coeffs.clone(), relation: c.relation, rhs: shift(&c.coeffs, &c.rhs) })
        .collect();
    let user_rows = rows.len();
    for j in 0..n {
        if let Some(u) = &p.upper[j] {
            rows.push(Row { coeffs: vec![(j, T::one())], relation: Relation::Le, rhs: u.clone() - p.lower[j].clone() });
        }
    }

    let mut flipped = vec![false; rows.len()];
    for (i, row) in rows.iter_mut().enumerate() {
        if row.rhs.is_negative() {
            flipped[i] = true;
            row.rhs = -row.rhs.clone();
            for (_, c) in row.coeffs.iter_mut() {
                *c = -c.clone();
            }
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let mut kinds = vec![ColKind::Structural; n];
    let mut identity = Vec::with_capacity(rows.len());
    let mut surplus = Vec::new();
    for row in &rows {
        match row.relation {
            Relation::Le => {
                identity.push(kinds.len());
                kinds.push(ColKind::Slack);
            }
            Relation::Ge => {
                surplus.push(kinds.len());
                kinds.push(ColKind::Slack);
                identity.push(kinds.len());
                kinds.push(ColKind::Artificial);
            }
            Relation::Eq => {
                identity.push(kinds.len());
                kinds.push(ColKind::Artificial);
            }
        }
    }
    let width = kinds.len();

    let mut tab_rows = Vec::with_capacity(rows.len());
    let mut surplus_iter = surplus.iter();
    for (i, row) in rows.iter().enumerate() {
        let mut dense = vec![T::zero(); width + 1];
        for (j, c) in &row.coeffs {
            dense[*j] = dense[*j].clone() + c.clone();
        }
        if row.relation == Relation::Ge {
            dense[*surplus_iter.next().expect("one surplus per >= row")] = -T::one();
        }
        dense[identity[i]] = T::one();
        dense[width] = row.rhs.clone();
        tab_rows.push(dense);
    }

    let mut tab = Tableau { rows: tab_rows, cost: Vec::new(), basis: identity.clone(), kinds };

    // Phase 1: minimize the sum of artificials.
    let phase1: Vec<T> = tab.kinds.iter().map(|k| if *k == ColKind::Artificial { T::one() } else { T::zero() }).collect();
    tab.price(&phase1);
    tab.iterate().expect("phase one is bounded below by zero");
    if !tab.cost[width].is_zero() {
        return LpSolution {
            status: LpStatus::Infeasible,
            primal: Vec::new(),
            duals: Vec::new(),
            objective: T::zero(),
        };
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // where that is impossible are redundant and keep their artificial at 0.
    for r in 0..tab.rows.len() {
        if tab.kinds[tab.basis[r]] != ColKind::Artificial {
            continue;
        }
        if let Some(e) = (0..width).find(|&j| tab.kinds[j] != ColKind::Artificial && !tab.rows[r][j].is_zero()) {
            tab.pivot(r, e);
        }
    }

    // Phase 2.
    let mut phase2 = vec![T::zero(); width];
    phase2[..n].clone_from_slice(&p.objective);
    tab.price(&phase2);
    if tab.iterate().is_err() {
        return LpSolution {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            duals: Vec::new(),
            objective: T::zero(),
        };
    }

    let mut primal = p.lower.clone();
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            primal[b] = primal[b].clone() + tab.rows[i][width].clone();
        }
    }
    let duals = (0..user_rows)
        .map(|i| {
            let pi = -tab.cost[identity[i]].clone();
            if flipped[i] {
                -pi
            } else {
                pi
            }
        })
        .collect();
    let objective = p.objective_value(&primal);
    LpSolution { status: LpStatus::Optimal, primal, duals, objective }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::certificate::check_certificate;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(v: i64) -> Q {
        Q::from_integer(v)
    }

    #[test]
    fn lower_bound_row() {
        let mut p: LpProblem<Q> = LpProblem::new();
        let x = p.add_var("x");
        p.set_cost(x, q(1));
        p.add_constraint("c", vec![(x, q(1))], Relation::Ge, q(3));
        let s = simplex_solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.primal, vec![q(3)]);
        assert_eq!(s.duals, vec![q(1)]);
        check_certificate(&p, &s).unwrap();
    }

    #[test]
    fn infeasible_row() {
        let mut p: LpProblem<Q> = LpProblem::new();
        let x = p.add_var("x");
        p.set_cost(x, q(1));
        p.add_constraint("c", vec![(x, q(1))], Relation::Le, q(-1));
        assert_eq!(simplex_solve(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let mut p: LpProblem<Q> = LpProblem::new();
        let x = p.add_var("x");
        let y = p.add_var("y");
        p.set_cost(x, q(-1));
        p.add_constraint("c", vec![(x, q(1)), (y, q(-1))], Relation::Le, q(2));
        assert_eq!(simplex_solve(&p).status, LpStatus::Unbounded);
    }

    #[test]
    fn bounded_variables_and_equalities() {
        // max x + 2y s.t. x + y = 3, 1 <= x <= 4, y <= 3/2
        let mut p: LpProblem<Q> = LpProblem::new();
        let x = p.add_var("x");
        let y = p.add_var("y");
        p.set_cost(x, q(-1));
        p.set_cost(y, q(-2));
        p.set_bounds(x, q(1), Some(q(4)));
        p.set_bounds(y, q(0), Some(Q::new(3, 2)));
        p.add_constraint("sum", vec![(x, q(1)), (y, q(1))], Relation::Eq, q(3));
        let s = simplex_solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.primal, vec![Q::new(3, 2), Q::new(3, 2)]);
        assert_eq!(s.objective, Q::new(-9, 2));
        check_certificate(&p, &s).unwrap();
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance; Bland's rule must terminate.
        let mut p: LpProblem<Q> = LpProblem::new();
        let v: Vec<usize> = (0..4).map(|i| p.add_var(format!("x{i}"))).collect();
        for (j, c) in [Q::new(-3, 4), q(150), Q::new(-1, 50), q(6)].into_iter().enumerate() {
            p.set_cost(v[j], c);
        }
        p.add_constraint("r1", vec![(v[0], Q::new(1, 4)), (v[1], q(-60)), (v[2], Q::new(-1, 25)), (v[3], q(9))], Relation::Le, q(0));
        p.add_constraint("r2", vec![(v[0], Q::new(1, 2)), (v[1], q(-90)), (v[2], Q::new(-1, 50)), (v[3], q(3))], Relation::Le, q(0));
        p.add_constraint("r3", vec![(v[2], q(1))], Relation::Le, q(1));
        let s = simplex_solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, Q::new(-1, 20));
        check_certificate(&p, &s).unwrap();
    }

    #[test]
    fn redundant_equalities() {
        let mut p: LpProblem<Q> = LpProblem::new();
        let x = p.add_var("x");
        let y = p.add_var("y");
        p.set_cost(x, q(1));
        p.set_cost(y, q(1));
        p.add_constraint("e1", vec![(x, q(1)), (y, q(1))], Relation::Eq, q(2));
        p.add_constraint("e2", vec![(x, q(2)), (y, q(2))], Relation::Eq, q(4));
        p.add_constraint("c", vec![(x, q(1))], Relation::Ge, q(-5));
        let s = simplex_solve(&p);
        assert_eq!(s.objective, q(2));
        check_certificate(&p, &s).unwrap();
    }

    #[test]
    fn deterministic() {
        let mut p: LpProblem<Q> = LpProblem::new();
        let x = p.add_var("x");
        let y = p.add_var("y");
        p.set_cost(x, q(1));
        p.set_cost(y, q(1));
        p.add_constraint("c", vec![(x, q(1)), (y, q(1))], Relation::Ge, q(1));
        assert_eq!(simplex_solve(&p), simplex_solve(&p));
    }
}
