//! Cross-check of finite type against mutation-finiteness of the principal extension.

use std::fmt;

use super::certificate::{CertificateError, GrowthTrace};
use super::explore::{explore_with, ClassReport, ExploreOptions, Outcome};
use super::{decide_finite_type, ClassifyError, FiniteType};
use crate::diagram::Diagram;
use crate::exchange::{ExchangeMatrix, ExtendedMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Finite type with a closed extended class, or infinite type with a verified certificate.
    Consistent,
    UndecidedAtBudget,
    /// Anything else, including a certificate that fails to replay.
    Mismatch(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => f.write_str("CONSISTENT"),
            Verdict::UndecidedAtBudget => f.write_str("UNDECIDED-AT-BUDGET"),
            Verdict::Mismatch(why) => write!(f, "MISMATCH: {why}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub lhs: FiniteType,
    pub rhs: ClassReport,
    /// Growth replay of the certificate, when one was found and verified.
    pub replay: Option<Result<GrowthTrace, CertificateError>>,
    pub verdict: Verdict,
}

impl TheoremReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }
}

/// Decides finite type of `b0` and explores the class of its principal
/// extension, then compares the two answers.
pub fn verify_theorem(b0: &ExchangeMatrix, opts: &ExploreOptions) -> Result<TheoremReport, ClassifyError> {
    let gamma = Diagram::of_exchange(b0);
    if !gamma.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let lhs = decide_finite_type(&gamma)?;
    let start = ExtendedMatrix::principal_extension(b0);
    let rhs = explore_with(&start, opts);
    let mut replay = None;
    let verdict = match (&lhs, &rhs.outcome) {
        (_, Outcome::BudgetExhausted { .. }) => Verdict::UndecidedAtBudget,
        (FiniteType::Finite(_), Outcome::Closed { .. }) => Verdict::Consistent,
        (FiniteType::Infinite { .. }, Outcome::Infinite(cert)) => {
            let r = cert.verify(&start);
            let v = match &r {
                Ok(_) => Verdict::Consistent,
                Err(e) => Verdict::Mismatch(format!("certificate does not replay: {e}")),
            };
            replay = Some(r);
            v
        }
        (FiniteType::Finite(_), Outcome::Infinite(cert)) => {
            Verdict::Mismatch(format!("finite type but certificate {}", cert.kind))
        }
        (FiniteType::Infinite { .. }, Outcome::Closed { .. }) => {
            Verdict::Mismatch("infinite type but the extended class closed".into())
        }
    };
    Ok(TheoremReport {
        lhs,
        rhs,
        replay,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(rows: Vec<Vec<i64>>, finite: bool) -> TheoremReport {
        let b0 = ExchangeMatrix::new(crate::matrix::IntMatrix::from_rows(rows)).unwrap();
        let r = verify_theorem(&b0, &ExploreOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent, "{:?}", r.rhs.outcome);
        assert_eq!(r.lhs.is_finite(), finite);
        r
    }

    #[test]
    fn a2_consistent() {
        check(vec![vec![0, 1], vec![-1, 0]], true);
    }

    #[test]
    fn kronecker_consistent() {
        let r = check(vec![vec![0, 2], vec![-2, 0]], false);
        assert!(r.rhs.certificate().is_some());
    }

    #[test]
    fn c2_tilde_consistent() {
        let r = check(vec![vec![0, 2, 0], vec![-1, 0, 1], vec![0, -2, 0]], false);
        let trace = r.replay.unwrap().unwrap();
        assert!(trace.sums().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn disconnected_rejected() {
        let b0 = ExchangeMatrix::from_rows([[0, 0], [0, 0]]).unwrap();
        assert!(matches!(
            verify_theorem(&b0, &ExploreOptions::default()),
            Err(ClassifyError::Disconnected)
        ));
    }
}
