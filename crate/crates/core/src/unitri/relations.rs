//! Exact checks of the defining identities among Nielsen generators and the
//! generators of `V_3 ≤ Aut(F_2)`.

use std::fmt;

use serde::Serialize;

use super::{alpha_image, LambdaLetter, LambdaWord, UniTri};
use crate::error::Result;
use crate::morphism::EndoMap;

/// Source of generator values for the relation checks. The corrupted table
/// replaces `λ_{2,1}` and `σ_{2,1}` by their squares and serves as a negative
/// control.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeneratorTable {
    corrupt: bool,
}

impl GeneratorTable {
    pub fn standard() -> Self {
        GeneratorTable { corrupt: false }
    }

    pub fn corrupted() -> Self {
        GeneratorTable { corrupt: true }
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupt
    }

    pub fn lambda(&self, rank: u32, i: u32, j: u32) -> Result<UniTri> {
        let g = UniTri::lambda(rank, i, j)?;
        Ok(if self.corrupt && (i, j) == (2, 1) {
            g.pow(2)
        } else {
            g
        })
    }

    pub fn evaluate(&self, rank: u32, word: &LambdaWord) -> Result<UniTri> {
        let mut acc = UniTri::identity(rank)?;
        for l in word.letters() {
            let g = self.lambda(rank, l.i, l.j)?;
            acc = acc.compose(&g.pow(l.exponent.into()))?;
        }
        Ok(acc)
    }

    pub fn tau(&self, i: u32) -> EndoMap {
        EndoMap::tau(2, i).expect("i in {1, 2}")
    }

    pub fn sigma(&self) -> EndoMap {
        if self.corrupt {
            EndoMap::sigma().compose(&EndoMap::sigma()).unwrap()
        } else {
            EndoMap::sigma()
        }
    }

    pub fn sigma_inverse(&self) -> EndoMap {
        let s = EndoMap::nielsen(2, 2, 1, true).unwrap();
        if self.corrupt {
            s.compose(&s).unwrap()
        } else {
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, group: &str, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            group: group.to_owned(),
            name: name.into(),
            passed,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn group(&self, group: &str) -> impl Iterator<Item = &Check> {
        let group = group.to_owned();
        self.checks.iter().filter(move |c| c.group == group)
    }

    pub fn retain_groups(&mut self, groups: &[&str]) {
        self.checks.retain(|c| groups.contains(&c.group.as_str()));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{verdict}  [{}] {}", c.group, c.name)?;
        }
        Ok(())
    }
}

fn l(i: u32, j: u32, exponent: i8) -> LambdaLetter {
    LambdaLetter::new(i, j, exponent)
}

/// Runs the relation catalog over all Nielsen generators of `U_limit`:
///
/// * `eq4`: conjugation of `λ_{3,1}`, `λ_{3,2}` by `λ_{2,1}` in `U_3`;
/// * `eq5`: conjugation of `τ_1`, `τ_2` by `σ_{2,1}` in `Aut(F_2)`;
/// * `remark1`: `[λ_{i,j}, λ_{j,k}] = λ_{i,k}` for `k < j < i <= limit`;
/// * `commute`: `[λ_{i,j}, λ_{k,l}] = 1` whenever `i ∉ {k, l}` and `k ≠ j`;
/// * `hydra`: `[[λ_{3,2}, λ_{2,1}], λ_{2,1}] = 1`.
pub fn check_relation_suite(limit: u32, table: &GeneratorTable) -> Result<Report> {
    let mut report = Report::default();
    let eval = |rank, word: &[LambdaLetter]| table.evaluate(rank, &LambdaWord(word.to_vec()));

    let lhs = eval(3, &[l(2, 1, -1), l(3, 1, 1), l(2, 1, 1)])?;
    report.push(
        "eq4",
        "L(2,1)^-1 L(3,1) L(2,1) = L(3,1)",
        lhs == eval(3, &[l(3, 1, 1)])?,
    );
    let lhs = eval(3, &[l(2, 1, -1), l(3, 2, 1), l(2, 1, 1)])?;
    report.push(
        "eq4",
        "L(2,1)^-1 L(3,2) L(2,1) = L(3,1) L(3,2)",
        lhs == eval(3, &[l(3, 1, 1), l(3, 2, 1)])?,
    );

    let (t1, t2) = (table.tau(1), table.tau(2));
    let (s, s_inv) = (table.sigma(), table.sigma_inverse());
    let conj = |x: &EndoMap| s_inv.compose(x).and_then(|y| y.compose(&s));
    report.push("eq5", "sigma^-1 tau(1) sigma = tau(1)", conj(&t1)? == t1);
    report.push(
        "eq5",
        "sigma^-1 tau(2) sigma = tau(1) tau(2)",
        conj(&t2)? == t1.compose(&t2)?,
    );

    for i in 3..=limit {
        for j in 2..i {
            for k in 1..j {
                let c = table
                    .lambda(limit, i, j)?
                    .commutator(&table.lambda(limit, j, k)?)?;
                report.push(
                    "remark1",
                    format!("[L({i},{j}), L({j},{k})] = L({i},{k})"),
                    c == table.lambda(limit, i, k)?,
                );
            }
        }
    }

    let pairs: Vec<(u32, u32)> = (2..=limit)
        .flat_map(|i| (1..i).map(move |j| (i, j)))
        .collect();
    for &(i, j) in &pairs {
        for &(k, m) in &pairs {
            if (i, j) >= (k, m) || i == k || i == m || k == j {
                continue;
            }
            let c = table
                .lambda(limit, i, j)?
                .commutator(&table.lambda(limit, k, m)?)?;
            report.push(
                "commute",
                format!("[L({i},{j}), L({k},{m})] = 1"),
                c.is_identity(),
            );
        }
    }

    let a = table.lambda(3, 3, 2)?;
    let b = table.lambda(3, 2, 1)?;
    let hydra = a.commutator(&b)?.commutator(&b)?;
    report.push(
        "hydra",
        "[[L(3,2), L(2,1)], L(2,1)] = 1",
        hydra.is_identity(),
    );

    Ok(report)
}

/// Checks that `α` sends the Nielsen generators of `U_3` to `τ_1, τ_2, σ_{2,1}`
/// and respects both conjugation identities of `U_3`.
pub fn check_alpha(table: &GeneratorTable) -> Result<Report> {
    let mut report = Report::default();
    let img = |w: &[LambdaLetter]| alpha_image(&LambdaWord(w.to_vec()));
    report.push(
        "alpha",
        "alpha(L(3,1)) = tau(1)",
        img(&[l(3, 1, 1)])? == table.tau(1),
    );
    report.push(
        "alpha",
        "alpha(L(3,2)) = tau(2)",
        img(&[l(3, 2, 1)])? == table.tau(2),
    );
    report.push(
        "alpha",
        "alpha(L(2,1)) = sigma",
        img(&[l(2, 1, 1)])? == table.sigma(),
    );
    for (lhs, rhs, name) in [
        (
            vec![l(2, 1, -1), l(3, 1, 1), l(2, 1, 1)],
            vec![l(3, 1, 1)],
            "alpha respects L(2,1)^-1 L(3,1) L(2,1) = L(3,1)",
        ),
        (
            vec![l(2, 1, -1), l(3, 2, 1), l(2, 1, 1)],
            vec![l(3, 1, 1), l(3, 2, 1)],
            "alpha respects L(2,1)^-1 L(3,2) L(2,1) = L(3,1) L(3,2)",
        ),
    ] {
        let same_in_u3 = table.evaluate(3, &LambdaWord(lhs.clone()))?
            == table.evaluate(3, &LambdaWord(rhs.clone()))?;
        report.push("alpha", name, same_in_u3 && img(&lhs)? == img(&rhs)?);
    }
    Ok(report)
}
