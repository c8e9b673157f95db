//! Exact psi-extended umbral calculus on polynomials with rational coefficients.
//!
//! The crate provides the psi-derivative `d_psi`, the raising operator
//! `x_hat_psi`, psi-integration, the noncommutative `*_psi` product, and
//! Bernoulli-Taylor type expansions with Cauchy-form remainders for the
//! classical, difference, psi and Hahn/Jackson calculi. Every identity is
//! checked in exact rational arithmetic; the only floating-point code is the
//! truncated Jackson series in [`hahn::jackson_integral_numeric`].
//!
//! ```
//! use umbral_core::{parse_poly, psi_bernoulli_taylor, PsiContext, rational::int};
//!
//! let f = parse_poly("x^3").unwrap();
//! let report = psi_bernoulli_taylor(&PsiContext::fibonomial(), &f, &int(1), &int(2), 2).unwrap();
//! assert!(report.exact);
//! ```

pub mod discrete;
pub mod error;
pub mod expansion;
pub mod hahn;
pub mod identities;
pub mod operators;
pub mod parse;
pub mod poly;
pub mod psi;
pub mod rational;
pub mod report;

pub use error::{CalcError, ParseError, Result};
pub use expansion::{psi_bernoulli_taylor, taylor_classical, verify_expansion, ExpansionReport};
pub use identities::GhwPair;
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use psi::{AdmissibleSequence, PsiContext};
pub use rational::Rational;
pub use report::VerificationReport;
