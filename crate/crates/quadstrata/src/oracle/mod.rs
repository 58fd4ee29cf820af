// SPDX-License-Identifier: MIT OR Apache-2.0
//! The realizability decision procedure.
//!
//! [`classify`] encodes the classification of the residue map images as
//! ordered guards; every leaf carries a descriptive citation key naming the
//! clause it comes from. [`decide`] additionally reports whether a
//! realizable case is covered by one of the constructors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::core::{
    stratum_nonempty_holomorphic, validate_signature, ComponentSelector, CoreError,
    GaussianRational, RootedResidueConfig, StratumSignature, Q,
};

/// Errors raised by the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("every differential of the stratum is a global square")]
    NonPrimitiveStratum,
    #[error("component selectors are not supported in genus at least two")]
    ComponentUnknownForGenusGe2,
    #[error("invalid component: {0}")]
    InvalidComponent(String),
    #[error("the stratum is empty")]
    EmptyStratum,
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Outcome of a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Realizable,
    NotRealizable,
    /// Realizable, but no constructor covers the case.
    RealizableNoWitness,
}

/// Reason for non-realizability.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Obstruction {
    Origin,
    Crosse,
    Triangular,
    ArithmeticOddSum,
    ArithmeticEvenSum,
    ExceptionalComponent,
    ProportionalAllOnes,
    SpecialFamily(String),
}

/// A verdict: status, obstruction (present exactly when not realizable)
/// and the clause it follows from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    pub citation: String,
}

impl Verdict {
    fn yes(citation: &str) -> Self {
        Self {
            status: Status::Realizable,
            obstruction: None,
            citation: citation.into(),
        }
    }

    fn no(obstruction: Obstruction, citation: &str) -> Self {
        Self {
            status: Status::NotRealizable,
            obstruction: Some(obstruction),
            citation: citation.into(),
        }
    }

    /// True unless the status is `NotRealizable`.
    pub fn is_realizable(&self) -> bool {
        self.status != Status::NotRealizable
    }
}

/// Closed-form triangularity test on residues:
/// `R₁² + R₂² + R₃² = 2(R₁R₂ + R₁R₃ + R₂R₃)`.
pub fn is_triangular(r1: &GaussianRational, r2: &GaussianRational, r3: &GaussianRational) -> bool {
    let lhs = &(&r1.square() + &r2.square()) + &r3.square();
    let rhs = &(&(r1 * r2) + &(r1 * r3)) + &(r2 * r3);
    lhs == &rhs + &rhs
}

/// Triangularity through square roots: some choice of signs makes the
/// roots sum to zero.
pub fn is_triangular_rooted(
    x1: &GaussianRational,
    x2: &GaussianRational,
    x3: &GaussianRational,
) -> bool {
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .any(|&(s2, s3)| {
            let t2 = if s2 > 0 { x2.clone() } else { -x2.clone() };
            let t3 = if s3 > 0 { x3.clone() } else { -x3.clone() };
            (&(x1 + &t2) + &t3).is_zero()
        })
}

/// True if some permutation of the residues, after scaling, has the form
/// `(A, …, A, B, B)` with `A, B` non-zero (`A = B` allowed). Needs at
/// least three entries.
pub fn is_crosse(residues: &[GaussianRational]) -> bool {
    residues.len() >= 3 && matches_crosse(residues)
}

/// The crosse pattern for any length `≥ 2` (two entries: a pair of equal
/// residues).
fn matches_crosse(residues: &[GaussianRational]) -> bool {
    if residues.len() < 2 || residues.iter().any(|r| r.is_zero()) {
        return false;
    }
    for (i, b) in residues.iter().enumerate() {
        let Some(j) = residues
            .iter()
            .enumerate()
            .position(|(k, x)| k > i && x == b)
        else {
            continue;
        };
        let rest: Vec<&GaussianRational> = residues
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, x)| x)
            .collect();
        if rest.windows(2).all(|w| w[0] == w[1]) {
            return true;
        }
    }
    false
}

/// The triangular pattern `(R₁, R₂, R₃, …, R₃)` with `R₁, R₂, R₃`
/// triangular, up to permutation; at least three entries.
fn matches_triangular(residues: &[GaussianRational]) -> bool {
    let n = residues.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let rest: Vec<&GaussianRational> = (0..n)
                .filter(|k| *k != i && *k != j)
                .map(|k| &residues[k])
                .collect();
            if rest.windows(2).all(|w| w[0] == w[1])
                && is_triangular(&residues[i], &residues[j], rest[0])
            {
                return true;
            }
        }
    }
    false
}

/// Coprime positive integer form of an arithmetic configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticForm {
    /// Coprime positive integers `n_i` with `R_i = λ² n_i²`.
    pub roots: Vec<i64>,
    /// `λ` such that the given roots are `±λ n_i` (rooted input only).
    pub lambda: GaussianRational,
    /// `Σ n_i`.
    pub sum: i64,
}

impl ArithmeticForm {
    /// True if `Σ n_i` is even.
    pub fn sum_is_even(&self) -> bool {
        self.sum % 2 == 0
    }
}

/// Coprime integers proportional to positive rationals.
fn coprime_integers(ratios: &[Q]) -> Option<Vec<i64>> {
    let lcm = ratios
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<num_bigint::BigInt> = ratios.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| i64::try_from(x / &g).ok()).collect()
}

/// Normal form of a rooted configuration: defined when every root is a
/// non-zero real rational multiple of the first.
pub fn arithmetic_normal_form(roots: &[GaussianRational]) -> Option<ArithmeticForm> {
    let first = roots.first()?;
    if roots.iter().any(|r| r.is_zero()) {
        return None;
    }
    let inv = first.inv();
    let mut ratios = Vec::with_capacity(roots.len());
    for r in roots {
        let q = r * &inv;
        if !q.is_real() {
            return None;
        }
        ratios.push(q.re().abs());
    }
    let ints = coprime_integers(&ratios)?;
    let lambda = first.scale(&Q::new(1.into(), ints[0].into()));
    let sum = ints.iter().sum();
    Some(ArithmeticForm {
        roots: ints,
        lambda,
        sum,
    })
}

/// Normal form from residues alone: defined when every ratio `R_i/R_1` is
/// the square of a rational. `λ` is returned only if `R₁` has a square
/// root in `Q(i)`; otherwise it is set to zero.
pub fn arithmetic_normal_form_residues(residues: &[GaussianRational]) -> Option<ArithmeticForm> {
    let first = residues.first()?;
    if residues.iter().any(|r| r.is_zero()) {
        return None;
    }
    let inv = first.inv();
    let mut ratios = Vec::with_capacity(residues.len());
    for r in residues {
        let q = r * &inv;
        if !q.is_real() || !q.re().is_positive() {
            return None;
        }
        ratios.push(crate::core::arith::rational_sqrt(q.re())?);
    }
    let ints = coprime_integers(&ratios)?;
    let lambda = first
        .sqrt()
        .map(|s| s.scale(&Q::new(1.into(), ints[0].into())))
        .unwrap_or_else(GaussianRational::zero);
    let sum = ints.iter().sum();
    Some(ArithmeticForm {
        roots: ints,
        lambda,
        sum,
    })
}

/// `gcd` of all non-zero orders.
fn orders_gcd(sig: &StratumSignature) -> i64 {
    sig.orders().iter().fold(0i64, |acc, x| acc.gcd(x))
}

/// Legal rotation numbers of the primitive genus-one components: odd
/// divisors of the `gcd` of the orders, strict divisors of `a` for
/// `(a; −a)`.
pub fn rotation_numbers(sig: &StratumSignature) -> Vec<i64> {
    let g = orders_gcd(sig);
    let zeros: Vec<i64> = sig
        .zero_orders
        .iter()
        .copied()
        .filter(|a| *a != 0)
        .collect();
    let single = zeros.len() == 1 && sig.pole_orders().len() == 1;
    (1..=g.max(1))
        .filter(|d| d % 2 == 1 && g % d == 0)
        .filter(|d| !single || *d < zeros[0])
        .collect()
}

/// Non-zero zero orders, ascending.
fn zeros_sorted(sig: &StratumSignature) -> Vec<i64> {
    sig.nonzero_zero_orders_sorted()
}

fn all_equal(v: &[GaussianRational]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

fn genus_one(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    component: ComponentSelector,
) -> Result<Verdict, OracleError> {
    if let ComponentSelector::RotationNumber(rho) = component {
        if !rotation_numbers(sig).contains(&rho) {
            return Err(OracleError::InvalidComponent(format!(
                "rotation number {rho} is not one of {:?}",
                rotation_numbers(sig)
            )));
        }
    }
    let zeros = zeros_sorted(sig);
    let origin = config.is_origin();
    let only_fours = sig.r() == 0 && sig.s() == 0 && sig.even_pole_orders.iter().all(|b| *b == 4);
    let a = sig.p() as i64;
    if only_fours && a >= 1 && origin {
        if zeros == [4 * a] {
            return Ok(Verdict::no(
                Obstruction::Origin,
                "genus1-origin-single-zero",
            ));
        }
        if zeros == [2 * a - 1, 2 * a + 1] {
            return Ok(Verdict::no(Obstruction::Origin, "genus1-origin-odd-pair"));
        }
    }
    let s = sig.s() as i64;
    if sig.p() == 0 && sig.r() == 0 && s >= 2 && s % 2 == 0 && all_equal(&config.double_residues())
    {
        if zeros == [2 * s] {
            return Ok(Verdict::no(
                Obstruction::ProportionalAllOnes,
                "genus1-all-ones-single-zero",
            ));
        }
        if zeros == [s - 1, s + 1] {
            return Ok(Verdict::no(
                Obstruction::ProportionalAllOnes,
                "genus1-all-ones-odd-pair",
            ));
        }
    }
    if let ComponentSelector::RotationNumber(rho) = component {
        let mut poles = sig.even_pole_orders.clone();
        poles.sort_unstable();
        let pure = sig.r() == 0 && sig.s() == 0;
        let exceptional = pure
            && origin
            && matches!(
                (zeros.as_slice(), poles.as_slice(), rho),
                ([6], [6], 1) | ([3, 3], [6], 1) | ([12], [6, 6], 3)
            );
        if exceptional {
            return Ok(Verdict::no(
                Obstruction::ExceptionalComponent,
                "genus1-exceptional-component",
            ));
        }
    }
    Ok(Verdict::yes("genus1-surjective"))
}

/// Mixed even and double poles with two odd zeros.
fn genus_zero_mixed(sig: &StratumSignature, config: &RootedResidueConfig) -> Verdict {
    let zeros = zeros_sorted(sig);
    let n_even = sig.p() as i64;
    let s = sig.s() as i64;
    let fours = sig.even_pole_orders.iter().all(|b| *b == 4);
    let even = config.even_residues();
    let doubles = config.double_residues();
    let even_zero = even.iter().all(|r| r.is_zero());
    let doubles_equal = all_equal(&doubles);
    if fours && zeros.len() == 2 {
        let (a1, a2) = (zeros[0], zeros[1]);
        // (2s'−1, 2s'+1; −4; (−2)^{2s'}), s' ≥ 1.
        if n_even == 1
            && s >= 2
            && s % 2 == 0
            && a1 == s - 1
            && a2 == s + 1
            && even_zero
            && doubles_equal
        {
            return Verdict::no(
                Obstruction::SpecialFamily("zero-and-equal-doubles".into()),
                "genus0-mixed-equal-doubles",
            );
        }
        // (2a−1, 2a+1; (−4)^a; (−2)²), a ≥ 1.
        if s == 2 && a1 == 2 * n_even - 1 && a2 == 2 * n_even + 1 && even_zero && doubles_equal {
            return Verdict::no(
                Obstruction::SpecialFamily("zeros-and-equal-pair".into()),
                "genus0-mixed-equal-pair",
            );
        }
        // (2s'+1, 2s'+1; −4; (−2)^{2s'+1}), s' ≥ 0.
        if n_even == 1 && s % 2 == 1 && a1 == s && a2 == s {
            let mut all = even.clone();
            all.extend(doubles.iter().cloned());
            if all_equal(&all) {
                return Verdict::no(
                    Obstruction::SpecialFamily("all-equal".into()),
                    "genus0-mixed-all-equal",
                );
            }
        }
        // (2a−1, 2a−1; (−4)^a; −2), a ≥ 1.
        if s == 1 && a1 == 2 * n_even - 1 && a2 == a1 {
            let nonzero: Vec<&GaussianRational> = even.iter().filter(|r| !r.is_zero()).collect();
            if nonzero.len() == 1 && *nonzero[0] == doubles[0] {
                return Verdict::no(
                    Obstruction::SpecialFamily("one-equal-rest-zero".into()),
                    "genus0-mixed-one-equal",
                );
            }
        }
    }
    Verdict::yes("genus0-mixed-surjective")
}

/// Only even poles of order `≤ −4`, two odd zeros.
fn genus_zero_even_poles(sig: &StratumSignature, config: &RootedResidueConfig) -> Verdict {
    let zeros = zeros_sorted(sig);
    let p = sig.p() as i64;
    let res = config.even_residues();
    let mut poles = sig.even_pole_orders.clone();
    poles.sort_unstable();
    if zeros.len() == 2 && p >= 2 {
        let (a1, a2) = (zeros[0], zeros[1]);
        // Special pairs of orders (b, b+2) with a₁ = a₂ = 2p + b − 5, or
        // (b, b) with (a₁, a₂) = (2p + b − 7, 2p + b − 5).
        let pair = if a1 == a2 {
            let b = a1 - 2 * p + 5;
            Some((b, b + 2))
        } else if a2 == a1 + 2 {
            let b = a2 - 2 * p + 5;
            Some((b, b))
        } else {
            None
        };
        if let Some((b1, b2)) = pair {
            let mut expected = vec![b1, b2];
            expected.extend(std::iter::repeat_n(4, (p - 2) as usize));
            expected.sort_unstable();
            if b1 >= 4 && b1 % 2 == 0 && expected == poles {
                let orders = &sig.even_pole_orders;
                let n = orders.len();
                for i in 0..n {
                    for j in 0..n {
                        if i == j || orders[i] != b1 || orders[j] != b2 {
                            continue;
                        }
                        let rest_zero = (0..n)
                            .filter(|k| *k != i && *k != j)
                            .all(|k| res[k].is_zero());
                        if rest_zero && res[i] == res[j] {
                            return Verdict::no(
                                Obstruction::SpecialFamily("equal-special-pair".into()),
                                "genus0-even-poles-special-pair",
                            );
                        }
                    }
                }
                return Verdict::yes("genus0-even-poles-special-pair");
            }
        }
    }
    if sig.even_zero_sum() < 2 * p {
        if config.is_origin() {
            return Verdict::no(Obstruction::Origin, "genus0-even-poles-origin");
        }
        return Verdict::yes("genus0-even-poles-origin");
    }
    Verdict::yes("genus0-even-poles-surjective")
}

/// Only double poles, two odd zeros.
fn genus_zero_double_poles(sig: &StratumSignature, config: &RootedResidueConfig) -> Verdict {
    let zeros = zeros_sorted(sig);
    let s = sig.s() as i64;
    let res = config.double_residues();
    let odd = sig.odd_zeros();
    let (a_small, a_big) = (odd[1], odd[0]);
    if zeros == [-1, -1] && s == 1 {
        return Verdict::yes("genus0-degenerate");
    }
    if zeros.len() == 2 {
        let (a1, a2) = (zeros[0], zeros[1]);
        // (2s'−1, 2s'+1; (−2)^{2s'+2}).
        if a2 == a1 + 2 && s == a1 + 3 && matches_crosse(&res) {
            return Verdict::no(Obstruction::Crosse, "genus0-double-poles-crosse");
        }
        // (2s'−1, 2s'−1; (−2)^{2s'+1}), s' ≥ 1.
        if a1 == a2 && s == a1 + 2 && s >= 3 && matches_triangular(&res) {
            return Verdict::no(Obstruction::Triangular, "genus0-double-poles-triangular");
        }
    }
    if let Some(form) = arithmetic_normal_form_residues(&res) {
        if !form.sum_is_even() && form.sum < a_big + 2 {
            return Verdict::no(
                Obstruction::ArithmeticOddSum,
                "genus0-double-poles-arithmetic-odd",
            );
        }
        if form.sum_is_even() && form.sum < a_small + a_big + 4 {
            return Verdict::no(
                Obstruction::ArithmeticEvenSum,
                "genus0-double-poles-arithmetic-even",
            );
        }
    }
    Verdict::yes("genus0-double-poles-surjective")
}

/// The classification, without the coverage check.
pub fn classify(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    component: ComponentSelector,
) -> Result<Verdict, OracleError> {
    let v = validate_signature(sig)?;
    if v.forces_square {
        return Err(OracleError::NonPrimitiveStratum);
    }
    config.check_against(sig)?;
    if sig.is_holomorphic() && sig.genus >= 1 {
        if !stratum_nonempty_holomorphic(sig)? {
            return Err(OracleError::EmptyStratum);
        }
        if let ComponentSelector::RotationNumber(_) = component {
            if sig.genus >= 2 {
                return Err(OracleError::ComponentUnknownForGenusGe2);
            }
        }
        return Ok(Verdict::yes("finite-area-nonempty"));
    }
    match sig.genus {
        0 => {}
        1 => return genus_one(sig, config, component),
        _ => {
            if component != ComponentSelector::WholeStratum {
                return Err(OracleError::ComponentUnknownForGenusGe2);
            }
            return Ok(Verdict::yes("genus-ge2-surjective"));
        }
    }
    if component != ComponentSelector::WholeStratum {
        return Err(OracleError::InvalidComponent(
            "genus-zero strata are connected".into(),
        ));
    }
    let i = sig.odd_zero_count();
    let r = sig.r();
    if i + r >= 4 {
        return Ok(Verdict::yes("genus0-four-odd-surjective"));
    }
    if r == 2 {
        return Ok(Verdict::yes("genus0-two-odd-poles-surjective"));
    }
    if r == 1 {
        // One odd pole and one odd zero.
        if sig.even_zero_sum() < 2 * sig.p() as i64 {
            if config.is_origin() {
                return Ok(Verdict::no(
                    Obstruction::Origin,
                    "genus0-one-odd-pole-origin",
                ));
            }
            return Ok(Verdict::yes("genus0-one-odd-pole-origin"));
        }
        return Ok(Verdict::yes("genus0-one-odd-pole-surjective"));
    }
    // Two odd zeros, no odd pole.
    Ok(match (sig.p(), sig.s()) {
        (0, _) => genus_zero_double_poles(sig, config),
        (_, 0) => genus_zero_even_poles(sig, config),
        _ => genus_zero_mixed(sig, config),
    })
}

/// Largest number of double poles for which the coverage check runs.
pub const COVERAGE_MAX_DOUBLE_POLES: usize = 7;

/// The full decision: [`classify`], then a construction attempt for
/// realizable cases; `RealizableNoWitness` when no constructor covers the
/// case.
pub fn decide(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    component: ComponentSelector,
) -> Result<Verdict, OracleError> {
    let mut v = classify(sig, config, component)?;
    if v.status == Status::Realizable {
        let covered = sig.s() <= COVERAGE_MAX_DOUBLE_POLES
            && crate::constructors::construct(sig, config, component).is_ok();
        if !covered {
            v.status = Status::RealizableNoWitness;
        }
    }
    Ok(v)
}
