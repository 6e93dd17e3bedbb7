use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{Budget, MPoly, OracleError, PrimeField};

/// The ambient space of a counting problem.
///
/// Variable names: `Affine(n)` and `Projective(n)` use `x0, x1, ...`;
/// `MultiProjective` gives block `i` the letter `BLOCK_LETTERS[i]`, so
/// `P^3 x P^2` has `x0..x3` and `y0..y2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Affine(u32),
    Projective(u32),
    MultiProjective(Vec<u32>),
}

pub const BLOCK_LETTERS: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub projective: bool,
    /// Positions of this block's coordinates in the full variable list.
    pub vars: Range<usize>,
}

impl Ambient {
    pub fn blocks(&self) -> Vec<Block> {
        match self {
            Ambient::Affine(n) => vec![Block {
                projective: false,
                vars: 0..*n as usize,
            }],
            Ambient::Projective(n) => vec![Block {
                projective: true,
                vars: 0..*n as usize + 1,
            }],
            Ambient::MultiProjective(dims) => {
                let mut start = 0;
                dims.iter()
                    .map(|n| {
                        let end = start + *n as usize + 1;
                        let b = Block {
                            projective: true,
                            vars: start..end,
                        };
                        start = end;
                        b
                    })
                    .collect()
            }
        }
    }

    pub fn variable_names(&self) -> Result<Vec<String>, OracleError> {
        match self {
            Ambient::Affine(n) => Ok((0..*n).map(|i| format!("x{i}")).collect()),
            Ambient::Projective(n) => Ok((0..=*n).map(|i| format!("x{i}")).collect()),
            Ambient::MultiProjective(dims) => {
                if dims.len() > BLOCK_LETTERS.len() {
                    return Err(OracleError::InvalidProblem(format!(
                        "at most {} projective blocks are supported",
                        BLOCK_LETTERS.len()
                    )));
                }
                Ok(dims
                    .iter()
                    .zip(BLOCK_LETTERS)
                    .flat_map(|(n, letter)| (0..=*n).map(move |i| format!("{letter}{i}")))
                    .collect())
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.blocks().iter().map(|b| b.vars.len()).sum()
    }
}

/// A polynomial system over `F_p` whose solutions in the ambient space are
/// counted by brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingProblem {
    ambient: Ambient,
    equations: Vec<MPoly>,
    field: PrimeField,
}

impl CountingProblem {
    /// Checks variable counts and per-block homogeneity.
    pub fn new(ambient: Ambient, equations: Vec<MPoly>, field: PrimeField) -> Result<Self, OracleError> {
        let nvars = ambient.nvars();
        let blocks = ambient.blocks();
        for (idx, eq) in equations.iter().enumerate() {
            if eq.nvars() != nvars {
                return Err(OracleError::InvalidProblem(format!(
                    "equation {idx} has {} variables, ambient has {nvars}",
                    eq.nvars()
                )));
            }
            for (b, block) in blocks.iter().enumerate() {
                if block.projective && eq.block_degree(block.vars.clone()).is_none() {
                    return Err(OracleError::NonHomogeneous { equation: idx, block: b });
                }
            }
        }
        Ok(Self {
            ambient,
            equations,
            field,
        })
    }

    /// Parses equations written in the ambient's variable names.
    pub fn from_text<S: AsRef<str>>(ambient: Ambient, equations: &[S], field: PrimeField) -> Result<Self, OracleError> {
        let names = ambient.variable_names()?;
        let eqs = equations
            .iter()
            .map(|s| {
                crate::dsl::parse_polynomial(s.as_ref(), &names)
                    .map_err(|e| OracleError::InvalidProblem(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ambient, eqs, field)
    }

    /// Reads the JSON form `{"ambient": ..., "equations": [...], "p": q}`.
    pub fn from_json(text: &str) -> Result<Self, OracleError> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| OracleError::InvalidProblem(e.to_string()))?;
        let field = PrimeField::new(file.p)?;
        Self::from_text(file.ambient, &file.equations, field)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn equations(&self) -> &[MPoly] {
        &self.equations
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Same problem with one more equation.
    pub fn with_equation(&self, eq: MPoly) -> Result<Self, OracleError> {
        let mut equations = self.equations.clone();
        equations.push(eq);
        Self::new(self.ambient.clone(), equations, self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub ambient: Ambient,
    pub equations: Vec<String>,
    pub p: u32,
}

/// A point count of some variety over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSample {
    pub q: i64,
    pub count: u64,
}

fn ensure_within(tuples: Option<u64>, budget: Budget) -> Result<u64, OracleError> {
    match tuples {
        Some(n) if n <= budget.0 => Ok(n),
        _ => Err(OracleError::BudgetExceeded {
            needed: tuples,
            budget: budget.0,
        }),
    }
}

/// Every point of `A^n(F_p)`, in lexicographic order.
pub fn enumerate_affine(n: u32, field: PrimeField, budget: Budget) -> Result<Vec<Vec<u32>>, OracleError> {
    let total = ensure_within(u64::from(field.p()).checked_pow(n), budget)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u32; n as usize];
    for _ in 0..total {
        out.push(cur.clone());
        // odometer, last coordinate fastest
        for slot in cur.iter_mut().rev() {
            *slot += 1;
            if *slot < field.p() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// One representative per point of `P^n(F_p)`: the one whose first nonzero
/// coordinate is `1`. Returned in lexicographic order.
pub fn enumerate_projective(n: u32, field: PrimeField, budget: Budget) -> Result<Vec<Vec<u32>>, OracleError> {
    ensure_within(u64::from(field.p()).checked_pow(n + 1), budget)?;
    let mut out = Vec::new();
    // Leading 1 further right sorts first.
    for lead in (0..=n).rev() {
        for tail in enumerate_affine(n - lead, field, budget)? {
            let mut v = vec![0u32; lead as usize];
            v.push(1);
            v.extend(tail);
            out.push(v);
        }
    }
    Ok(out)
}

/// Number of ambient points satisfying every equation.
pub fn count_points(problem: &CountingProblem, budget: Budget) -> Result<CountSample, OracleError> {
    let field = problem.field;
    let blocks = problem.ambient.blocks();

    let tuples = blocks.iter().try_fold(1u64, |acc, b| {
        let exp = b.vars.len() as u32;
        u64::from(field.p()).checked_pow(exp).and_then(|n| acc.checked_mul(n))
    });
    ensure_within(tuples, budget)?;

    let lists = blocks
        .iter()
        .map(|b| {
            let len = b.vars.len() as u32;
            if b.projective {
                enumerate_projective(len - 1, field, budget)
            } else {
                enumerate_affine(len, field, budget)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let equations: Vec<_> = problem.equations.iter().map(|e| e.reduced(field)).collect();

    if lists.iter().any(Vec::is_empty) {
        return Ok(CountSample { q: field.q(), count: 0 });
    }
    let mut idx = vec![0usize; lists.len()];
    let mut point = Vec::with_capacity(problem.ambient.nvars());
    let mut count = 0u64;
    loop {
        point.clear();
        for (list, i) in lists.iter().zip(&idx) {
            point.extend_from_slice(&list[*i]);
        }
        if equations.iter().all(|e| e.vanishes_at(&point)) {
            count += 1;
        }
        let mut carry = true;
        for (slot, list) in idx.iter_mut().zip(&lists).rev() {
            *slot += 1;
            if *slot < list.len() {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            break;
        }
    }
    Ok(CountSample { q: field.q(), count })
}

/// The blow-up of `P^3` at `[1:0:0:0]` as the closed subvariety of
/// `P^3 x P^2` cut out by the minors `x_i*y_(j-1) - x_j*y_(i-1)`, `1 <= i < j <= 3`.
pub fn one_point_blowup_p3(field: PrimeField) -> CountingProblem {
    let mut eqs = Vec::new();
    for i in 1..=3 {
        for j in (i + 1)..=3 {
            eqs.push(format!("x{i}*y{} - x{j}*y{}", j - 1, i - 1));
        }
    }
    CountingProblem::from_text(Ambient::MultiProjective(vec![3, 2]), &eqs, field)
        .expect("minor equations are homogeneous in each block")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn projective_enumeration_sizes() {
        assert_eq!(enumerate_projective(2, f(2), Budget::default()).unwrap().len(), 7);
        assert_eq!(enumerate_projective(3, f(3), Budget::default()).unwrap().len(), 40);
        for p in [2, 3, 5, 97] {
            assert_eq!(enumerate_projective(0, f(p), Budget::default()).unwrap(), vec![vec![1]]);
        }
    }

    #[test]
    fn projective_representatives_are_normalized_and_sorted() {
        let pts = enumerate_projective(2, f(5), Budget::default()).unwrap();
        let set: HashSet<_> = pts.iter().collect();
        assert_eq!(set.len(), pts.len());
        for pt in &pts {
            assert_eq!(pt.iter().find(|c| **c != 0), Some(&1));
        }
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(pts[0], vec![0, 0, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_projective(3, f(5), Budget(100)).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { needed: Some(625), budget: 100 }));
        let problem = one_point_blowup_p3(f(3));
        assert!(count_points(&problem, Budget(1000)).is_err());
    }

    #[test]
    fn one_point_blowup_counts() {
        let expected = [(2, 21), (3, 52), (5, 186), (7, 456)];
        for (p, n) in expected {
            let s = count_points(&one_point_blowup_p3(f(p)), Budget::default()).unwrap();
            assert_eq!(s, CountSample { q: p as i64, count: n });
        }
    }

    #[test]
    fn empty_system_counts_ambient() {
        let pb = CountingProblem::new(Ambient::Projective(2), vec![], f(5)).unwrap();
        assert_eq!(count_points(&pb, Budget::default()).unwrap().count, 31);
        let pb = CountingProblem::new(Ambient::Affine(0), vec![], f(5)).unwrap();
        assert_eq!(count_points(&pb, Budget::default()).unwrap().count, 1);
    }

    #[test]
    fn rejects_inhomogeneous_equations() {
        let err = CountingProblem::from_text(Ambient::Projective(2), &["x0^2 - x1"], f(3)).unwrap_err();
        assert_eq!(err, OracleError::NonHomogeneous { equation: 0, block: 0 });
        // Affine equations need not be homogeneous.
        assert!(CountingProblem::from_text(Ambient::Affine(2), &["x0^2 - x1"], f(3)).is_ok());
        // Out-of-range variables are rejected by the parser.
        assert!(CountingProblem::from_text(Ambient::Projective(1), &["x0*x2"], f(3)).is_err());
    }

    #[test]
    fn parabola_in_affine_plane() {
        let pb = CountingProblem::from_text(Ambient::Affine(2), &["x1 - x0^2"], f(7)).unwrap();
        assert_eq!(count_points(&pb, Budget::default()).unwrap().count, 7);
    }

    #[test]
    fn json_problem_file() {
        let text = r#"{"ambient": {"multi_projective": [3, 2]},
            "equations": ["x1*y1 - x2*y0", "x1*y2 - x3*y0", "x2*y2 - x3*y1"], "p": 2}"#;
        let pb = CountingProblem::from_json(text).unwrap();
        assert_eq!(count_points(&pb, Budget::default()).unwrap().count, 21);
        assert!(CountingProblem::from_json(r#"{"ambient": {"affine": 1}, "equations": [], "p": 4}"#).is_err());
    }
}
