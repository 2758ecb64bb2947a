use super::{SparsePoly, TruncatedSeries};
use crate::error::{Error, Result};

type Rhs<'a> = dyn Fn(&[TruncatedSeries], &TruncatedSeries) -> Result<TruncatedSeries> + Sync + 'a;

/// One equation `S_i = F_i(S_1, …, S_{i-1}, S_i)` of a triangular system.
pub struct Equation<'a> {
    pub name: String,
    /// Constant term of the solution.
    pub initial: SparsePoly,
    /// Receives the solutions of earlier equations and the current candidate,
    /// all truncated to a common order, and returns the image at that order.
    pub rhs: Box<Rhs<'a>>,
}

impl<'a> Equation<'a> {
    pub fn new(
        name: impl Into<String>,
        rhs: impl Fn(&[TruncatedSeries], &TruncatedSeries) -> Result<TruncatedSeries> + Sync + 'a,
    ) -> Self {
        Equation {
            name: name.into(),
            initial: SparsePoly::one(),
            rhs: Box::new(rhs),
        }
    }
}

/// Solves each equation in turn by t-adic iteration.
///
/// Iteration `j` evaluates `F` at truncation order `j` on the previous iterate,
/// so a contractive `F` fixes one more coefficient per step. After `order`
/// steps one more evaluation at full order must reproduce the iterate.
pub fn fixed_point_solve(system: &[Equation<'_>], order: usize) -> Result<Vec<TruncatedSeries>> {
    let mut solved: Vec<TruncatedSeries> = Vec::with_capacity(system.len());
    for eq in system {
        let mut cur = TruncatedSeries::constant(eq.initial.clone(), 0);
        for j in 1..=order {
            let earlier: Vec<TruncatedSeries> = solved.iter().map(|s| s.truncate(j)).collect();
            cur = evaluate(eq, &earlier, &cur.padded(j), j)?;
        }
        let check = evaluate(eq, &solved, &cur, order)?;
        if let Some(degree) = check.first_difference(&cur) {
            return Err(Error::NonContractive {
                equation: eq.name.clone(),
                degree,
            });
        }
        solved.push(cur);
    }
    Ok(solved)
}

fn evaluate(
    eq: &Equation<'_>,
    earlier: &[TruncatedSeries],
    cur: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries> {
    let out = (eq.rhs)(earlier, cur)?;
    if out.order() < order {
        return Err(Error::NonContractive {
            equation: eq.name.clone(),
            degree: out.order() + 1,
        });
    }
    Ok(out.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;

    fn catalan_eq<'a>() -> Equation<'a> {
        // D = 1 + t D^2
        Equation::new("D", |_, d| {
            let t = TruncatedSeries::t(d.order());
            Ok(TruncatedSeries::one(d.order()).add(&t.mul(&d.mul(d))))
        })
    }

    #[test]
    fn catalan() {
        let d = &fixed_point_solve(&[catalan_eq()], 5).unwrap()[0];
        let got: Vec<i64> = d
            .univariate()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(got, [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn catalan_as_sum_of_powers() {
        // D = 1 + Σ_{k>0} t^k D^k
        let eq = Equation::new("D", |_, d| {
            let n = d.order();
            let td = TruncatedSeries::t(n).mul(d);
            let mut acc = TruncatedSeries::one(n);
            let mut pw = TruncatedSeries::one(n);
            for _ in 1..=n {
                pw = pw.mul(&td);
                acc = acc.add(&pw);
            }
            Ok(acc)
        });
        let a = &fixed_point_solve(&[eq], 5).unwrap()[0];
        let b = &fixed_point_solve(&[catalan_eq()], 5).unwrap()[0];
        assert_eq!(a, b);
    }

    #[test]
    fn non_contractive_detected() {
        // S = 1 + y S has no t-adic fixed point.
        let eq = Equation::new("S", |_, s| {
            let y = TruncatedSeries::constant(SparsePoly::var(VarId::Y), s.order());
            Ok(TruncatedSeries::one(s.order()).add(&y.mul(s)))
        });
        assert!(matches!(
            fixed_point_solve(&[eq], 3),
            Err(Error::NonContractive { .. })
        ));
    }

    #[test]
    fn later_equations_see_earlier_solutions() {
        let eqs = vec![
            catalan_eq(),
            Equation::new("E", |prev, _| Ok(prev[0].mul(&prev[0]))),
        ];
        let sol = fixed_point_solve(&eqs, 4).unwrap();
        assert_eq!(sol[1], sol[0].mul(&sol[0]));
    }
}
