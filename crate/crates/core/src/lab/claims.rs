use crate::gen::{canonical_graph, CANON_MAX_N};
use crate::graph::{is_clique_free, Graph};
use crate::solver::{solve, solve_subset, Norm, Objective, SizeSpec};
use crate::Rational;

use super::{CheckRecord, ClaimId, LabError, Status, Witness};

/// Parameters some claims need.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Subset proportion for C_UNB2, C_UNB and KS.
    pub alpha: Option<Rational>,
    /// Clique number bound for KS (the graph must be `K_{r+1}`-free).
    pub r: Option<usize>,
    /// Additive slack for T7; defaults to `ceil(n^2 / 100)`.
    pub t7_slack: Option<Rational>,
}

fn r(a: i128, b: i128) -> Rational {
    Rational::new(a, b)
}

struct Ctx<'a> {
    claim: ClaimId,
    g: &'a Graph,
    g6: String,
}

impl Ctx<'_> {
    fn record(
        &self,
        value: Option<Rational>,
        bound: Option<Rational>,
        witness: Option<Witness>,
    ) -> CheckRecord {
        let status = match (value, bound) {
            (Some(v), Some(b)) => Status::compare(v, b),
            _ => Status::NotApplicable,
        };
        CheckRecord {
            claim: self.claim,
            g6: self.g6.clone(),
            n: self.g.n(),
            value,
            bound,
            status,
            witness,
            note: None,
        }
    }

    fn not_applicable(&self, why: impl Into<String>) -> CheckRecord {
        let mut rec = self.record(None, None, None);
        rec.note = Some(why.into());
        rec
    }

    fn partition(
        &self,
        spec: SizeSpec,
        norm: Norm,
        bound: Rational,
    ) -> Result<CheckRecord, LabError> {
        let (p, cost) = solve(self.g, &spec, norm)?;
        let value = match norm {
            Norm::Inf => cost.max(),
            _ => cost.total(),
        };
        Ok(self.record(
            Some(Rational::from_integer(value as i128)),
            Some(bound),
            Some(Witness::Partition(p.assign().to_vec())),
        ))
    }

    fn subset(
        &self,
        m: usize,
        objective: Objective,
        bound: Rational,
    ) -> Result<CheckRecord, LabError> {
        let (set, cost) = solve_subset(self.g, m, objective)?;
        Ok(self.record(
            Some(Rational::from_integer(cost as i128)),
            Some(bound),
            Some(Witness::Set(set.to_vec())),
        ))
    }
}

fn with_note(mut rec: CheckRecord, note: Option<String>) -> CheckRecord {
    if rec.note.is_none() {
        rec.note = note;
    }
    rec
}

fn floor_times(alpha: Rational, n: usize) -> usize {
    (alpha * Rational::from_integer(n as i128))
        .floor()
        .to_integer() as usize
}

/// Evaluates `claim` on `g` exactly. The graph is first brought to canonical
/// form (up to 16 vertices) so records of isomorphic inputs coincide.
pub fn check(g: &Graph, claim: ClaimId, opts: &CheckOptions) -> Result<CheckRecord, LabError> {
    let canon = if g.n() <= CANON_MAX_N {
        canonical_graph(g)?
    } else {
        g.clone()
    };
    let g = &canon;
    let ctx = Ctx {
        claim,
        g,
        g6: g.to_graph6(),
    };
    let n = g.n();
    let nn = Rational::from_integer((n * n) as i128);
    let triangle_free = is_clique_free(g, 3);
    let k4_free = is_clique_free(g, 4);
    let non_integral = |d: usize| {
        (n * n % d != 0)
            .then(|| format!("n^2/{d} is not an integer at n = {n}, so equality cannot occur"))
    };
    let alpha = |c: ClaimId| {
        opts.alpha.ok_or(LabError::MissingParameter {
            claim: c,
            param: "alpha",
        })
    };
    if n == 0 {
        return Ok(ctx.not_applicable("empty graph"));
    }
    Ok(match claim {
        ClaimId::T1 | ClaimId::T6 | ClaimId::T5 | ClaimId::T7 | ClaimId::Raz | ClaimId::CD3
            if !triangle_free =>
        {
            ctx.not_applicable("graph contains a triangle")
        }
        ClaimId::CUnb2 | ClaimId::CUnb if !triangle_free => {
            alpha(claim)?;
            ctx.not_applicable("graph contains a triangle")
        }
        ClaimId::K4A | ClaimId::K4B | ClaimId::K4C if !k4_free => {
            ctx.not_applicable("graph contains a K_4")
        }
        ClaimId::T1 | ClaimId::T6 | ClaimId::K4A | ClaimId::K4B if n % 2 != 0 => {
            ctx.not_applicable("n is odd")
        }
        ClaimId::T5 | ClaimId::T7 | ClaimId::K4C if n % 3 != 0 => {
            ctx.not_applicable("n is not divisible by 3")
        }
        ClaimId::T1 => with_note(
            ctx.partition(SizeSpec::Balanced(2), Norm::L1, nn / 16)?,
            non_integral(16),
        ),
        ClaimId::T5 => with_note(
            ctx.partition(SizeSpec::Balanced(3), Norm::L1, nn / 36)?,
            non_integral(36),
        ),
        ClaimId::T6 => ctx.partition(SizeSpec::Balanced(2), Norm::Inf, nn / 18)?,
        ClaimId::T7 => {
            let slack = opts.t7_slack.unwrap_or_else(|| (nn / 100).ceil());
            let mut rec = ctx.partition(SizeSpec::Balanced(3), Norm::Inf, nn / 48 + slack)?;
            rec.note = Some(format!("bound is n^2/48 = {} plus slack {slack}", nn / 48));
            rec
        }
        ClaimId::Raz => ctx.subset(n / 2, Objective::Sparse, nn * r(27, 1024))?,
        ClaimId::CD3 => ctx.partition(SizeSpec::Free(3), Norm::L1, nn / 121)?,
        ClaimId::CUnb2 => {
            let a = alpha(claim)?;
            if a < r(53, 120) || a > r(1, 1) {
                ctx.not_applicable(format!("alpha = {a} lies outside [53/120, 1]"))
            } else {
                let beta = if a >= r(17, 30) {
                    (a * 2 - 1) / 4
                } else {
                    (a * 5 - 2) / 25
                };
                ctx.subset(floor_times(a, n), Objective::Sparse, beta * nn)?
            }
        }
        ClaimId::CUnb => {
            let a = alpha(claim)?;
            if a < r(1, 2) || a > r(1, 1) {
                ctx.not_applicable(format!("alpha = {a} lies outside [1/2, 1]"))
            } else {
                // alpha >= 2 - sqrt(2)  <=>  (2 - alpha)^2 <= 2
                let two = Rational::from_integer(2);
                let beta = if (two - a) * (two - a) <= two {
                    (a * 2 - 1) / 4
                } else {
                    (Rational::from_integer(1) - a) * (Rational::from_integer(1) - a) / 4
                };
                ctx.subset(floor_times(a, n), Objective::TwoSided, beta * nn)?
            }
        }
        ClaimId::K4A => ctx.partition(SizeSpec::Balanced(2), Norm::L1, nn / 9)?,
        ClaimId::K4B => ctx.partition(SizeSpec::Balanced(2), Norm::Inf, nn / 16)?,
        ClaimId::K4C => ctx.partition(SizeSpec::Balanced(3), Norm::L1, nn * r(4, 81))?,
        ClaimId::Ks => {
            let a = alpha(claim)?;
            let rr = opts
                .r
                .ok_or(LabError::MissingParameter { claim, param: "r" })?;
            if rr == 0 {
                return Err(LabError::BadArgument("r must be at least 1".into()));
            }
            if !is_clique_free(g, rr + 1) {
                ctx.not_applicable(format!("graph contains a K_{}", rr + 1))
            } else if a < r(1, 2) || a > r(1, 1) {
                ctx.not_applicable(format!("alpha = {a} lies outside [1/2, 1]"))
            } else {
                let rr = rr as i128;
                let bound = r(rr - 1, 2 * rr) * (a * 2 - 1) * nn;
                ctx.subset(floor_times(a, n), Objective::TwoSided, bound)?
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, turan};

    fn run(g: &Graph, c: ClaimId) -> CheckRecord {
        check(g, c, &CheckOptions::default()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            run(&complete_bipartite(3, 1).unwrap(), ClaimId::T1).status,
            Status::Equality
        );
        assert_eq!(
            run(&complete_bipartite(5, 5).unwrap(), ClaimId::T1).status,
            Status::Satisfied
        );
        assert_eq!(
            run(&complete_bipartite(3, 3).unwrap(), ClaimId::T5).status,
            Status::Equality
        );
        assert_eq!(
            run(&cycle(5).unwrap(), ClaimId::T1).status,
            Status::NotApplicable
        );
        assert_eq!(
            run(&complete(3).unwrap(), ClaimId::Raz).status,
            Status::NotApplicable
        );
        let k22 = run(&complete_bipartite(1, 1).unwrap(), ClaimId::T1);
        assert!(k22.note.unwrap().contains("not an integer"));
    }

    #[test]
    fn t6_fails_on_k31() {
        // the theorem needs large n; the exact small case exceeds n^2/18
        let rec = run(&complete_bipartite(3, 1).unwrap(), ClaimId::T6);
        assert_eq!(rec.value, Some(r(1, 1)));
        assert_eq!(rec.bound, Some(r(16, 18)));
        assert_eq!(rec.status, Status::Violated);
    }

    #[test]
    fn parameters() {
        let g = cycle(6).unwrap();
        assert!(matches!(
            check(&g, ClaimId::Ks, &CheckOptions::default()),
            Err(LabError::MissingParameter { .. })
        ));
        let opts = CheckOptions {
            alpha: Some(r(2, 3)),
            r: Some(2),
            ..Default::default()
        };
        let rec = check(&g, ClaimId::Ks, &opts).unwrap();
        // |A| = 4 on C6 leaves two paths or a path plus a non-edge
        assert_eq!(rec.value, Some(r(2, 1)));
        assert_eq!(rec.bound, Some(r(1, 4) * r(1, 3) * 36));
        let t = check(
            &turan(6, 3).unwrap(),
            ClaimId::Ks,
            &CheckOptions {
                r: Some(3),
                ..opts.clone()
            },
        )
        .unwrap();
        assert_ne!(t.status, Status::NotApplicable);
        let c = check(&g, ClaimId::CUnb, &opts).unwrap();
        assert_eq!(c.bound, Some(r(1, 12) * 36));
    }

    #[test]
    fn witnesses_reproduce_values() {
        let g = cycle(7).unwrap();
        let rec = run(&g, ClaimId::CD3);
        let canon = Graph::from_graph6(&rec.g6).unwrap();
        let Some(Witness::Partition(assign)) = rec.witness else {
            panic!("partition witness expected")
        };
        let p = crate::solver::Partition::new(assign, 3).unwrap();
        assert_eq!(
            Some(Rational::from_integer(
                crate::solver::CostVector::of(&canon, &p).total() as i128
            )),
            rec.value
        );
    }
}
