//! Dense two-phase simplex over exact rationals, with Bland's rule so that
//! degenerate pivots cannot cycle.

use num_traits::{One, Signed, Zero};

use crate::lengths::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize c·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self { num_vars: objective.len(), objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_vars: usize,
    artificial_from: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        // Normalise to non-negative right-hand sides.
        let rows: Vec<Constraint> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    Constraint {
                        coeffs: c.coeffs.iter().map(|x| -x).collect(),
                        relation: match c.relation {
                            Relation::Le => Relation::Ge,
                            Relation::Ge => Relation::Le,
                            Relation::Eq => Relation::Eq,
                        },
                        rhs: -&c.rhs,
                    }
                } else {
                    c.clone()
                }
            })
            .collect();
        let slack_count = rows.iter().filter(|c| c.relation != Relation::Eq).count();
        let artificial_count = rows.iter().filter(|c| c.relation != Relation::Le).count();
        let artificial_from = lp.num_vars + slack_count;
        let width = artificial_from + artificial_count;

        let mut table = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let (mut slack, mut artificial) = (lp.num_vars, artificial_from);
        for c in rows {
            let mut row = vec![Rational::zero(); width + 1];
            row[..lp.num_vars].clone_from_slice(&c.coeffs);
            row[width] = c.rhs;
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    row[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            table.push(row);
        }
        Self { rows: table, basis, num_vars: lp.num_vars, artificial_from, width }
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        if self.artificial_from < self.width {
            let mut phase_one = vec![Rational::zero(); self.width];
            for c in &mut phase_one[self.artificial_from..] {
                *c = -Rational::one();
            }
            let mut obj = self.reduced_costs(&phase_one);
            if !self.run(&mut obj, self.width) {
                unreachable!("phase one is bounded by zero");
            }
            if obj[self.width].is_negative() {
                return LpOutcome::Infeasible;
            }
            self.evict_artificials();
        }
        let mut costs = objective.to_vec();
        costs.resize(self.width, Rational::zero());
        let mut obj = self.reduced_costs(&costs);
        if !self.run(&mut obj, self.artificial_from) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); self.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_vars {
                point[b] = row[self.width].clone();
            }
        }
        LpOutcome::Optimal { point, value: obj[self.width].clone() }
    }

    /// Objective row `-c` made consistent with the current basis.
    fn reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = costs.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let factor = obj[b].clone();
            if !factor.is_zero() {
                for (o, r) in obj.iter_mut().zip(row) {
                    *o -= &factor * r;
                }
            }
        }
        obj
    }

    /// Pivots until optimal; only columns below `allowed` may enter. Returns
    /// `false` if the objective is unbounded.
    fn run(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter, obj);
        }
    }

    fn pivot(&mut self, r: usize, col: usize, obj: &mut [Rational]) {
        let inv = Rational::one() / &self.rows[r][col];
        for x in &mut self.rows[r] {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |target: &mut [Rational]| {
            let factor = target[col].clone();
            if !factor.is_zero() {
                for (t, p) in target.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *t -= &factor * p;
                    }
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(obj);
        self.basis[r] = col;
    }

    /// After a successful phase one, pivot zero-level artificials out of the
    /// basis, dropping rows that turn out to be redundant.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.artificial_from {
                i += 1;
                continue;
            }
            match (0..self.artificial_from).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    let mut scratch = vec![Rational::zero(); self.width + 1];
                    self.pivot(i, j, &mut scratch);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lengths::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn row(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
        let mut lp = LinearProgram::new(row(&[3, 5]));
        lp.constrain(row(&[1, 0]), Relation::Le, q("4"));
        lp.constrain(row(&[0, 2]), Relation::Le, q("12"));
        lp.constrain(row(&[3, 2]), Relation::Le, q("18"));
        assert_eq!(lp.maximize(), LpOutcome::Optimal { point: row(&[2, 6]), value: q("36") });
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x s.t. x + y = 1, y >= 1/3
        let mut lp = LinearProgram::new(row(&[1, 0]));
        lp.constrain(row(&[1, 1]), Relation::Eq, q("1"));
        lp.constrain(row(&[0, 1]), Relation::Ge, q("1/3"));
        assert_eq!(
            lp.maximize(),
            LpOutcome::Optimal { point: vec![q("2/3"), q("1/3")], value: q("2/3") }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(row(&[1]));
        lp.constrain(row(&[1]), Relation::Le, q("1"));
        lp.constrain(row(&[1]), Relation::Ge, q("2"));
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(row(&[1, 1]));
        lp.constrain(row(&[1, -1]), Relation::Le, q("1"));
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // -x <= -1 means x >= 1; duplicated equality is redundant.
        let mut lp = LinearProgram::new(row(&[-1, 0]));
        lp.constrain(row(&[-1, 0]), Relation::Le, q("-1"));
        lp.constrain(row(&[1, 1]), Relation::Eq, q("3"));
        lp.constrain(row(&[2, 2]), Relation::Eq, q("6"));
        assert_eq!(
            lp.maximize(),
            LpOutcome::Optimal { point: row(&[1, 2]), value: q("-1") }
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example (Beale) under the largest-coefficient rule.
        let mut lp = LinearProgram::new(vec![q("3/4"), q("-150"), q("1/50"), q("-6")]);
        lp.constrain(vec![q("1/4"), q("-60"), q("-1/25"), q("9")], Relation::Le, q("0"));
        lp.constrain(vec![q("1/2"), q("-90"), q("-1/50"), q("3")], Relation::Le, q("0"));
        lp.constrain(row(&[0, 0, 1, 0]), Relation::Le, q("1"));
        match lp.maximize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q("1/20")),
            other => panic!("{other:?}"),
        }
    }
}
