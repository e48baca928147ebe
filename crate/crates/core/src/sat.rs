//! Max-2-SAT instances: literals, two-literal clauses, assignments.

use std::fmt;

use log::warn;
use rand::Rng;

use crate::error::{Error, Result};

/// `x_var` or its negation. `var` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: usize,
    positive: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn negative(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn var(self) -> usize {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn eval(self, x: &Assignment) -> bool {
        x.get(self.var) == self.positive
    }

    /// DIMACS rendering: `i` or `-i` with 1-based `i`.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(lit: i64) -> Option<Self> {
        match lit {
            0 => None,
            l if l > 0 => Some(Literal::positive(l as usize - 1)),
            l => Some(Literal::negative((-l) as usize - 1)),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "¬x{}", self.var + 1)
        }
    }
}

/// Disjunction of literals on distinct variables.
///
/// `x ∨ x` collapses to the unit clause `x`; `x ∨ ¬x` is rejected because the
/// clause-string block for that variable would have to be both `00` and `11`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    first: Literal,
    second: Option<Literal>,
}

impl Clause {
    pub fn new(a: Literal, b: Literal) -> Result<Self> {
        if a.var == b.var {
            if a.positive != b.positive {
                return Err(Error::Input(format!("tautological clause ({a} ∨ {b})")));
            }
            warn!("duplicate literal in clause ({a} ∨ {b}); treating it as ({a})");
            return Ok(Clause {
                first: a,
                second: None,
            });
        }
        Ok(Clause {
            first: a,
            second: Some(b),
        })
    }

    pub fn unit(a: Literal) -> Self {
        Clause {
            first: a,
            second: None,
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        std::iter::once(self.first).chain(self.second)
    }

    pub fn width(&self) -> usize {
        1 + self.second.is_some() as usize
    }

    /// Literal on `var`, if the clause mentions it.
    pub fn literal_on(&self, var: usize) -> Option<Literal> {
        self.literals().find(|l| l.var == var)
    }

    pub fn is_satisfied(&self, x: &Assignment) -> bool {
        self.literals().any(|l| l.eval(x))
    }

    pub fn falsified_count(&self, x: &Assignment) -> usize {
        self.literals().filter(|l| !l.eval(x)).count()
    }

    pub fn max_var(&self) -> usize {
        self.literals().map(Literal::var).max().expect("non-empty")
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.second {
            Some(b) => write!(f, "({} ∨ {})", self.first, b),
            None => write!(f, "({})", self.first),
        }
    }
}

/// Truth value per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    /// Assignment number `index` in lexicographic order (false < true, first
    /// variable most significant).
    pub fn from_index(n: usize, index: u64) -> Self {
        Assignment((0..n).map(|v| (index >> (n - 1 - v)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// Every assignment of `n` variables in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Assignment> {
        assert!(n < 64);
        (0..1u64 << n).map(move |i| Assignment::from_index(n, i))
    }
}

impl fmt::Display for Assignment {
    /// DIMACS-style literal list, e.g. `1 -2 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if v {
                write!(f, "{}", i + 1)?;
            } else {
                write!(f, "-{}", i + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Max2SatInstance {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl Max2SatInstance {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self> {
        if variable_count == 0 {
            return Err(Error::Input("a 2-CNF needs at least one variable".into()));
        }
        if clauses.is_empty() {
            return Err(Error::Input("a 2-CNF needs at least one clause".into()));
        }
        if let Some((j, c)) = clauses
            .iter()
            .enumerate()
            .find(|(_, c)| c.max_var() >= variable_count)
        {
            return Err(Error::Input(format!(
                "clause {} {c} mentions a variable beyond x{variable_count}",
                j + 1
            )));
        }
        Ok(Max2SatInstance {
            variable_count,
            clauses,
        })
    }

    /// `m` uniformly random clauses, each on two distinct variables with
    /// independent random polarities.
    pub fn random<R: Rng>(variable_count: usize, clause_count: usize, rng: &mut R) -> Result<Self> {
        if variable_count < 2 {
            return Err(Error::Input(
                "random 2-CNF needs at least two variables".into(),
            ));
        }
        let clauses = (0..clause_count)
            .map(|_| {
                let a = rng.gen_range(0..variable_count);
                let mut b = rng.gen_range(0..variable_count - 1);
                if b >= a {
                    b += 1;
                }
                let lit = |v, pos: bool| {
                    if pos {
                        Literal::positive(v)
                    } else {
                        Literal::negative(v)
                    }
                };
                Clause::new(lit(a, rng.gen()), lit(b, rng.gen()))
            })
            .collect::<Result<Vec<_>>>()?;
        Max2SatInstance::new(variable_count, clauses)
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn satisfied_count(&self, x: &Assignment) -> Result<usize> {
        if x.len() != self.variable_count {
            return Err(Error::LengthMismatch {
                expected: self.variable_count,
                found: x.len(),
            });
        }
        Ok(self.clauses.iter().filter(|c| c.is_satisfied(x)).count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_rules() {
        let x1 = Literal::positive(0);
        assert!(Clause::new(x1, Literal::negative(0)).is_err());
        let c = Clause::new(x1, x1).unwrap();
        assert_eq!(c.width(), 1);
        let c = Clause::new(x1, Literal::negative(2)).unwrap();
        assert_eq!(c.to_string(), "(x1 ∨ ¬x3)");
        assert!(c.is_satisfied(&Assignment::new(vec![false, false, false])));
        assert!(!c.is_satisfied(&Assignment::new(vec![false, false, true])));
    }

    #[test]
    fn assignment_order() {
        let all: Vec<String> = Assignment::all(2).map(|a| a.to_string()).collect();
        assert_eq!(all, vec!["-1 -2", "-1 2", "1 -2", "1 2"]);
    }

    #[test]
    fn dimacs_literals() {
        assert_eq!(Literal::from_dimacs(-3), Some(Literal::negative(2)));
        assert_eq!(Literal::negative(2).to_dimacs(), -3);
        assert_eq!(Literal::from_dimacs(0), None);
    }

    #[test]
    fn instance_validation() {
        let c = Clause::new(Literal::positive(0), Literal::positive(3)).unwrap();
        assert!(Max2SatInstance::new(3, vec![c]).is_err());
        assert!(Max2SatInstance::new(4, vec![c]).is_ok());
        assert!(Max2SatInstance::new(4, vec![]).is_err());
    }

    #[test]
    fn random_clauses_use_distinct_variables() {
        let mut rng = crate::rng::seeded(3);
        let phi = Max2SatInstance::random(3, 50, &mut rng).unwrap();
        assert!(phi.clauses().iter().all(|c| c.width() == 2));
    }
}
