//! Named verification suites with fixed sweeps.
//!
//! `D` below is `--max-degree`.

use std::thread;

use serde::Serialize;
use umbral_core::discrete::{bernoulli_maclaurin_with, MaclaurinSigns};
use umbral_core::hahn::{verify_hahn_reduction, verify_jackson_inverse, HahnParams};
use umbral_core::identities::{
    verify_bernoulli_identity, verify_commutator, verify_exp_addition, verify_fundamental_theorem,
    verify_historical_series, verify_historical_series_with, verify_leibniz, verify_per_partes,
    verify_psi_power_derivative, verify_psi_power_product, verify_telescoping,
    verify_telescoping_difference, verify_umbral_product, GhwPair, SeriesSigns,
};
use umbral_core::psi::AdmissibleSequence;
use umbral_core::rational::{int, ratio};
use umbral_core::{
    verify_expansion, CalcError, Polynomial, PsiContext, Rational, VerificationReport,
};

pub const SUITE_NAMES: [&str; 10] = [
    "commutator",
    "telescoping",
    "bernoulli",
    "leibniz",
    "exp-addition",
    "per-partes",
    "fundamental",
    "historical",
    "hahn-reduction",
    "jackson-inverse",
];

/// Suites that run wrong-sign variants of two formulas and are expected to
/// fail. Not part of `all`.
pub const SIGN_VARIANT_NAMES: [&str; 2] = ["historical-unsigned", "maclaurin-flipped"];

/// Shown under `verify --help`.
pub const SWEEPS: &str = "\
Suites and their fixed sweeps (D = --max-degree):
  commutator      [p,q] x^m = x^m, m <= D, for (D, x-y) at y in {0, 1, -2},
                  (Delta, x E^-1) and (d_psi, x_hat_psi)
  telescoping     sum a^k (1-ab) b^k f = f - a^(n+1) b^(n+1) f for (int_psi, d_psi)
                  and (sum, Delta), f = x^m with m <= min(D, 16), n <= 8
  bernoulli       p sum (-q)^k p^k/k! x^m = (-q)^n p^(n+1)/n! x^m for the
                  commutator pairs, m <= D, n <= min(D, 16)
  leibniz         Leibniz rule and umbral product on x^i, x^j with i, j <= min(D, 12);
                  psi-power derivative rule n <= D; psi-power product n, k <= min(D, 12)
  exp-addition    exp[a x] *_psi exp_psi[b x] = exp_psi[(a+b) x] to degree D,
                  (a, b) in {(1, 1), (1/2, -3/4), (-2/3, 5/7)}
  per-partes      psi-integration by parts on x^i, x^j with i, j <= min(D, 8)
                  over [0, 1], [-1/2, 3/2], [2, -7/3]
  fundamental     d_psi int_psi x^m = x^m, m <= D
  historical      both divided-difference series on x^m, m <= D (classical D only)
  hahn-reduction  d_{q,h} = E_{1,-c} d_q E_{1,c} on x^n, n <= D,
                  q in {2, 1/2, 3/2, -2}, h in {0, 1, -3, 7/5}
  jackson-inverse d_q int_q x^m = x^m, m <= D, q in {1/2, 2, 3/2} plus the
                  --psi base when it is q:<r>

Not in `all`; these run wrong-sign variants and are expected to fail:
  historical-unsigned  divided-difference series without the alternating sign,
                       on x^m, m <= D
  maclaurin-flipped    Bernoulli-Maclaurin with every sign flipped, on x^m + 1,
                       m <= D, alpha in 1..=8, n in 1..=min(D, 8)";

/// Outcome of one named suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

/// Highest psi index any suite touches for a given `--max-degree`.
pub fn required_psi_index(max_degree: usize) -> usize {
    max_degree + 17
}

fn mono(m: usize) -> Polynomial {
    Polynomial::monomial(int(1), m)
}

fn pairs(ctx: &PsiContext) -> Vec<GhwPair> {
    vec![
        GhwPair::derivative(int(0)),
        GhwPair::derivative(int(1)),
        GhwPair::derivative(int(-2)),
        GhwPair::difference(),
        GhwPair::psi(ctx),
    ]
}

/// Runs one suite. Unknown names are a caller error.
pub fn run_suite(
    name: &str,
    ctx: &PsiContext,
    max_degree: usize,
) -> Result<Vec<VerificationReport>, CalcError> {
    let d = max_degree;
    let mut out = Vec::new();
    match name {
        "commutator" => {
            for pair in pairs(ctx) {
                out.push(verify_commutator(&pair, d)?);
            }
        }
        "telescoping" => {
            for m in 0..=d.min(16) {
                let f = mono(m);
                for n in 0..=8 {
                    out.push(verify_telescoping(ctx, n, &f)?);
                    out.push(verify_telescoping_difference(n, &f)?);
                }
            }
        }
        "bernoulli" => {
            for pair in pairs(ctx) {
                for m in 0..=d {
                    let f = mono(m);
                    for n in 0..=d.min(16) {
                        out.push(verify_bernoulli_identity(&pair, n, &f)?);
                    }
                }
            }
        }
        "leibniz" => {
            let top = d.min(12);
            for i in 0..=top {
                for j in 0..=top {
                    out.push(verify_leibniz(ctx, &mono(i), &mono(j))?);
                    out.push(verify_umbral_product(ctx, &mono(i), &mono(j))?);
                }
            }
            out.push(verify_psi_power_derivative(ctx, d)?);
            out.push(verify_psi_power_product(ctx, top)?);
        }
        "exp-addition" => {
            for (a, b) in [
                (int(1), int(1)),
                (ratio(1, 2), ratio(-3, 4)),
                (ratio(-2, 3), ratio(5, 7)),
            ] {
                out.push(verify_exp_addition(ctx, &a, &b, d)?);
            }
        }
        "per-partes" => {
            let top = d.min(8);
            let intervals = [
                (int(0), int(1)),
                (ratio(-1, 2), ratio(3, 2)),
                (int(2), ratio(-7, 3)),
            ];
            for i in 0..=top {
                for j in 0..=top {
                    for (a, b) in &intervals {
                        out.push(verify_per_partes(ctx, &mono(i), &mono(j), a, b)?);
                    }
                }
            }
        }
        "fundamental" => {
            for m in 0..=d {
                out.push(verify_fundamental_theorem(ctx, &mono(m))?);
            }
        }
        "historical" => {
            for m in 0..=d {
                out.push(verify_historical_series(&mono(m)));
            }
        }
        "hahn-reduction" => {
            for q in [int(2), ratio(1, 2), ratio(3, 2), int(-2)] {
                for h in [int(0), int(1), int(-3), ratio(7, 5)] {
                    out.push(verify_hahn_reduction(&HahnParams::new(q.clone(), h), d)?);
                }
            }
        }
        "jackson-inverse" => {
            let mut qs: Vec<Rational> = vec![ratio(1, 2), int(2), ratio(3, 2)];
            if let AdmissibleSequence::GaussQ(q) = ctx.sequence() {
                if !qs.contains(q) {
                    qs.push(q.clone());
                }
            }
            for q in &qs {
                for m in 0..=d {
                    out.push(verify_jackson_inverse(&mono(m), q)?);
                }
            }
        }
        "historical-unsigned" => {
            for m in 0..=d {
                out.push(verify_historical_series_with(
                    &mono(m),
                    SeriesSigns::Unsigned,
                ));
            }
        }
        "maclaurin-flipped" => {
            for m in 0..=d {
                let f = mono(m) + Polynomial::one();
                for alpha in 1..=8 {
                    for n in 1..=d.min(8) {
                        let r = bernoulli_maclaurin_with(&f, alpha, n, MaclaurinSigns::Flipped);
                        out.push(verify_expansion(&r));
                    }
                }
            }
        }
        other => return Err(CalcError::Domain(format!("unknown suite `{other}`"))),
    }
    Ok(out)
}

/// Runs the suites concurrently; results come back in the order given.
pub fn run_suites(
    names: &[&str],
    ctx: &PsiContext,
    max_degree: usize,
) -> Result<Vec<SuiteResult>, CalcError> {
    let results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| s.spawn(move || (name, run_suite(name, ctx, max_degree))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    results
        .into_iter()
        .map(|(name, reports)| {
            let reports = reports?;
            Ok(SuiteResult {
                suite: name.to_string(),
                passed: reports.iter().all(VerificationReport::passed),
                reports,
            })
        })
        .collect()
}
