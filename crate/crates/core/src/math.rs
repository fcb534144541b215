//! Densities, envelope, acceptance rates and the rate lower bound.
//!
//! Functions taking a bare `delta` work on the standardized scale `beta = 1`; general
//! draws are recovered by dividing the standardized X by `beta`.

use crate::error::{check_nonneg, check_positive, domain, Result};
use crate::params::{BecParams, EnvelopeConfig};
use crate::quadrature::{integrate_exp_tail, QuadratureSettings};

/// Split point used by the automatic choice for `delta >= 1`.
pub const DEFAULT_SPLIT: f64 = 0.7;

/// A rejection algorithm, or `Auto` to pick one from `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    /// Product-exponential proposal for the pair, accepted with probability `exp(-delta X Y)`.
    A,
    /// Two-piece envelope for the X marginal split at `c`, exact exponential conditional for Y.
    B { c: f64 },
    /// Exponential proposal for the X marginal, exact exponential conditional for Y.
    C,
    /// `C` for `delta < 1`, otherwise `B` with `c = 0.7`.
    Auto,
}

impl Algorithm {
    /// Replaces `Auto` with the concrete algorithm for this `delta`.
    pub fn resolve(self, delta: f64) -> Algorithm {
        match self {
            Algorithm::Auto => choose_algorithm(delta),
            other => other,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Algorithm::A => "A".to_owned(),
            Algorithm::B { c } => format!("B(c={c})"),
            Algorithm::C => "C".to_owned(),
            Algorithm::Auto => "auto".to_owned(),
        }
    }
}

pub fn unnormalized_density(params: &BecParams, x: f64, y: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    check_nonneg("y", y)?;
    let (b, g, d) = (params.beta(), params.gamma(), params.delta());
    Ok((-(b * x + g * y + d * b * g * x * y)).exp())
}

/// Unnormalized marginal density of the standardized X, `exp(-x) / (1 + delta x)`.
pub fn marginal_x_unnormalized(delta: f64, x: f64) -> Result<f64> {
    check_nonneg("delta", delta)?;
    check_nonneg("x", x)?;
    Ok(marginal(delta, x))
}

#[inline]
pub(crate) fn marginal(delta: f64, x: f64) -> f64 {
    (-x).exp() / (1.0 + delta * x)
}

/// Rate of the exponential law of Y given X = x (original units): `gamma (1 + delta beta x)`.
pub fn conditional_y_rate(params: &BecParams, x: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    Ok(params.gamma() * (1.0 + params.delta() * params.beta() * x))
}

/// The envelope `g(x; c)`, which dominates [`marginal_x_unnormalized`] for every `c >= 0`.
pub fn envelope_g(delta: f64, c: f64, x: f64) -> Result<f64> {
    check_nonneg("delta", delta)?;
    check_nonneg("c", c)?;
    check_nonneg("x", x)?;
    Ok(if x < c {
        1.0 / (1.0 + delta * x)
    } else {
        (-x).exp() / (1.0 + delta * c)
    })
}

pub fn mixture_weights(delta: f64, c: f64) -> Result<EnvelopeConfig> {
    EnvelopeConfig::new(delta, c)
}

/// Inverse CDF of the bounded envelope piece, `((1 + c delta)^u - 1) / delta`.
pub fn g1_inverse_cdf(delta: f64, c: f64, u: f64) -> Result<f64> {
    check_positive("delta", delta)?;
    check_positive("c", c)?;
    if !(u > 0.0 && u < 1.0) {
        return Err(domain("u", u, "must lie in (0, 1)"));
    }
    Ok(g1_quantile(delta, (delta * c).ln_1p(), u))
}

/// `log_mass` is `ln(1 + c delta)`.
#[inline]
pub(crate) fn g1_quantile(delta: f64, log_mass: f64, u: f64) -> f64 {
    (u * log_mass).exp_m1() / delta
}

/// CDF of the bounded envelope piece on `[0, c]`, `ln(1 + delta x) / ln(1 + delta c)`.
pub fn g1_cdf(delta: f64, c: f64, x: f64) -> Result<f64> {
    check_positive("delta", delta)?;
    check_positive("c", c)?;
    check_nonneg("x", x)?;
    Ok(((delta * x.min(c)).ln_1p() / (delta * c).ln_1p()).min(1.0))
}

/// `I(delta) = integral over (0, inf) of exp(-x) / (1 + delta x)`.
///
/// This is both the mass of the standardized X marginal and the acceptance rate of the
/// product-exponential proposals (algorithms A and C).
pub fn tail_integral(delta: f64, settings: &QuadratureSettings) -> Result<f64> {
    check_nonneg("delta", delta)?;
    if delta == 0.0 {
        return Ok(1.0);
    }
    integrate_exp_tail(|x| marginal(delta, x), 0.0, settings)
}

/// Acceptance rate of algorithm A, equal to that of algorithm C.
pub fn acceptance_rate_a(delta: f64, settings: &QuadratureSettings) -> Result<f64> {
    tail_integral(delta, settings)
}

/// Acceptance rate of algorithm B, `I(delta) / (d1 + d2)`.
///
/// At `delta = 0` this returns the limit `1 / (c + exp(-c))`.
pub fn acceptance_rate_b(delta: f64, c: f64, settings: &QuadratureSettings) -> Result<f64> {
    check_positive("c", c)?;
    check_nonneg("delta", delta)?;
    if delta == 0.0 {
        return Ok(1.0 / (c + (-c).exp()));
    }
    let env = EnvelopeConfig::new(delta, c)?;
    Ok(tail_integral(delta, settings)? / env.mass())
}

/// Rate for a `(delta, c)` cell of a rate table: `c = 0` is the exponential envelope.
pub fn rate_cell(delta: f64, c: f64, settings: &QuadratureSettings) -> Result<f64> {
    check_nonneg("c", c)?;
    if c == 0.0 {
        acceptance_rate_a(delta, settings)
    } else {
        acceptance_rate_b(delta, c, settings)
    }
}

/// Theoretical acceptance probability per proposal of `algorithm` at `delta`.
pub fn theoretical_rate(
    algorithm: Algorithm,
    delta: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    match algorithm.resolve(delta) {
        Algorithm::A | Algorithm::C => acceptance_rate_a(delta, settings),
        Algorithm::B { c } => acceptance_rate_b(delta, c, settings),
        Algorithm::Auto => unreachable!("resolved above"),
    }
}

/// Lower bound `1 / (exp(c) + 1/c)` on the algorithm B rate, valid for every `delta > 0`.
pub fn proposition_lower_bound(c: f64) -> Result<f64> {
    check_positive("c", c)?;
    Ok(1.0 / (c.exp() + c.recip()))
}

/// Total mass of the unnormalized density, `I(delta) / (beta gamma)`.
pub fn normalizing_constant(params: &BecParams, settings: &QuadratureSettings) -> Result<f64> {
    Ok(tail_integral(params.delta(), settings)? / (params.beta() * params.gamma()))
}

/// `C` when `delta < 1`, otherwise `B` with `c = 0.7`.
pub fn choose_algorithm(delta: f64) -> Algorithm {
    if delta < 1.0 {
        Algorithm::C
    } else {
        Algorithm::B { c: DEFAULT_SPLIT }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use proptest::prelude::*;

    const E2: f64 = 0.1353352832366127;

    fn settings() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn density_examples() {
        let p = BecParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(unnormalized_density(&p, 0.0, 0.0).unwrap(), 1.0);
        let p = BecParams::new(1.0, 1.0, 0.0).unwrap();
        assert!((unnormalized_density(&p, 1.0, 1.0).unwrap() - E2).abs() < 1e-16);
        let p = BecParams::new(1.0, 2.0, 1.0).unwrap();
        let v = unnormalized_density(&p, 1.0, 0.5).unwrap();
        assert!((v - (-3.0f64).exp()).abs() < 1e-16);
        assert!((v - 0.0497871).abs() < 5e-8);
        assert!(unnormalized_density(&p, -1.0, 0.5).is_err());
        assert!(unnormalized_density(&p, 1.0, -0.5).is_err());
    }

    #[test]
    fn marginal_examples() {
        for d in [0.0, 0.3, 7.0, 1e3] {
            assert_eq!(marginal_x_unnormalized(d, 0.0).unwrap(), 1.0);
        }
        assert!((marginal_x_unnormalized(0.0, 2.0).unwrap() - E2).abs() < 1e-16);
        assert!((marginal_x_unnormalized(1.0, 1.0).unwrap() - 0.1839397).abs() < 5e-8);
        assert!(marginal_x_unnormalized(1.0, -0.1).is_err());
    }

    #[test]
    fn conditional_rate_examples() {
        let p = BecParams::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(conditional_y_rate(&p, 5.0).unwrap(), 1.0);
        let p = BecParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(conditional_y_rate(&p, 1.0).unwrap(), 2.0);
        let p = BecParams::new(2.0, 3.0, 1.0).unwrap();
        assert_eq!(conditional_y_rate(&p, 0.5).unwrap(), 6.0);
        assert!(conditional_y_rate(&p, -1.0).is_err());
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(envelope_g(1.0, 0.7, 0.0).unwrap(), 1.0);
        assert!((envelope_g(1.0, 0.0, 2.0).unwrap() - E2).abs() < 1e-16);
        let g = envelope_g(1.0, 0.7, 1.0).unwrap();
        assert!((g - (-1.0f64).exp() / 1.7).abs() < 1e-16);
        assert!((g - 0.2163996).abs() < 1e-7);
    }

    #[test]
    fn g1_inverse_examples() {
        let x = g1_inverse_cdf(1.0, 0.7, 0.5).unwrap();
        assert!((x - (1.7f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((x - 0.3038405).abs() < 5e-8);
        assert!(g1_inverse_cdf(1.0, 0.7, 1e-300).unwrap() < 1e-299);
        let top = g1_inverse_cdf(1.0, 0.7, 1.0 - f64::EPSILON).unwrap();
        assert!(top < 0.7 && 0.7 - top < 1e-15);
        for u in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(g1_inverse_cdf(1.0, 0.7, u).is_err());
        }
        assert!(g1_inverse_cdf(0.0, 0.7, 0.5).is_err());
        assert!(g1_inverse_cdf(1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn tail_integral_examples() {
        let s = settings();
        assert_eq!(tail_integral(0.0, &s).unwrap(), 1.0);
        let i1 = tail_integral(1.0, &s).unwrap();
        assert!((i1 - 0.5963474).abs() < 5e-8);
        assert!((i1 - 0.596).abs() < 5e-4);
        assert!((tail_integral(10.0, &s).unwrap() - 0.201).abs() < 5e-4);
        assert!(tail_integral(-1.0, &s).is_err());
    }

    #[test]
    fn rate_a_examples() {
        let s = settings();
        assert_eq!(acceptance_rate_a(0.0, &s).unwrap(), 1.0);
        assert!((acceptance_rate_a(100.0, &s).unwrap() - 0.041).abs() < 5e-4);
        assert!((acceptance_rate_a(0.5, &s).unwrap() - 0.723).abs() < 5e-4);
    }

    #[test]
    fn rate_b_examples() {
        let s = settings();
        assert!((acceptance_rate_b(1.0, 0.7, &s).unwrap() - 0.725).abs() < 5e-4);
        assert!((acceptance_rate_b(100.0, 0.5, &s).unwrap() - 0.796).abs() < 5e-4);
        let lim = acceptance_rate_b(0.0, 1.0, &s).unwrap();
        assert!((lim - 1.0 / (1.0 + (-1.0f64).exp())).abs() < 1e-16);
        assert!((lim - 0.731).abs() < 5e-4);
        assert!(acceptance_rate_b(1.0, 0.0, &s).is_err());
    }

    #[test]
    fn rate_b_zero_limit_is_continuous() {
        let s = settings();
        for c in [0.5, 0.7, 1.0] {
            let lim = acceptance_rate_b(0.0, c, &s).unwrap();
            let near = acceptance_rate_b(1e-7, c, &s).unwrap();
            assert!((lim - near).abs() < 1e-6, "c={c}: {lim} vs {near}");
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert!((proposition_lower_bound(0.7).unwrap() - 0.2905).abs() < 5e-5);
        assert!((proposition_lower_bound(1.0).unwrap() - 0.2689).abs() < 5e-5);
        assert!(proposition_lower_bound(0.0).is_err());
        assert!(proposition_lower_bound(-1.0).is_err());
        let r = acceptance_rate_b(5.0, 0.7, &settings()).unwrap();
        assert!(r >= proposition_lower_bound(0.7).unwrap());
    }

    #[test]
    fn normalizing_constant_examples() {
        let s = settings();
        let z = |b, g, d| normalizing_constant(&BecParams::new(b, g, d).unwrap(), &s).unwrap();
        assert_eq!(z(1.0, 1.0, 0.0), 1.0);
        assert!((z(2.0, 3.0, 0.0) - 1.0 / 6.0).abs() < 1e-16);
        assert!((z(1.0, 1.0, 1.0) - 0.5963474).abs() < 5e-8);
    }

    #[test]
    fn algorithm_choice() {
        assert_eq!(choose_algorithm(0.0), Algorithm::C);
        assert_eq!(choose_algorithm(0.5), Algorithm::C);
        assert_eq!(choose_algorithm(1.0), Algorithm::B { c: 0.7 });
        assert_eq!(choose_algorithm(2.0), Algorithm::B { c: 0.7 });
        assert_eq!(Algorithm::Auto.resolve(0.2), Algorithm::C);
        assert_eq!(Algorithm::A.resolve(5.0), Algorithm::A);
    }

    #[test]
    fn tail_integral_strictly_decreasing() {
        let s = settings();
        let grid: Vec<f64> = (0..60).map(|k| 1e-3 * 10f64.powf(k as f64 / 8.0)).collect();
        let mut prev = tail_integral(0.0, &s).unwrap();
        for d in grid {
            let v = tail_integral(d, &s).unwrap();
            assert!(v < prev, "I({d}) = {v} not below {prev}");
            prev = v;
        }
    }

    #[test]
    fn rate_b_approaches_rate_a_as_split_vanishes() {
        let s = settings();
        for d in [1e-3, 0.1, 1.0, 10.0, 1e3, 1e4] {
            let a = acceptance_rate_a(d, &s).unwrap();
            let b = acceptance_rate_b(d, 1e-9, &s).unwrap();
            assert!((a - b).abs() <= 1e-6, "delta={d}: {a} vs {b}");
        }
    }

    #[test]
    fn envelope_mass_matches_weights() {
        let s = settings();
        for d in [1e-6, 0.1, 1.0, 5.0, 100.0, 1e4] {
            for c in [0.0, 0.1, 0.5, 0.7, 1.0, 3.0] {
                let env = mixture_weights(d, c).unwrap();
                let low = integrate(|x| 1.0 / (1.0 + d * x), 0.0, c, &s).unwrap();
                let high = integrate_exp_tail(|x| (-x).exp() / (1.0 + d * c), c, &s).unwrap();
                assert!(
                    (env.mass() - (low + high)).abs() <= 1e-8,
                    "delta={d} c={c}: {} vs {}",
                    env.mass(),
                    low + high
                );
            }
        }
    }

    #[test]
    fn lower_bound_holds_on_log_grid() {
        let s = settings();
        for c in [0.1, 0.3, 0.5, 0.7, 1.0, 2.0, 3.0] {
            let bound = proposition_lower_bound(c).unwrap();
            for k in 0..=35 {
                let d = 1e-3 * 10f64.powf(7.0 * k as f64 / 35.0);
                let r = acceptance_rate_b(d, c, &s).unwrap();
                assert!(r >= bound, "delta={d} c={c}: {r} < {bound}");
            }
        }
    }

    #[test]
    fn rate_b_spread_over_moderate_splits() {
        // Over c in [0.5, 1] the rate varies by at most 0.06 once delta >= 1.
        let s = settings();
        for d in [1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 100.0] {
            let rates: Vec<f64> = (0..=50)
                .map(|k| acceptance_rate_b(d, 0.5 + 0.01 * k as f64, &s).unwrap())
                .collect();
            let max = rates.iter().cloned().fold(f64::MIN, f64::max);
            let min = rates.iter().cloned().fold(f64::MAX, f64::min);
            assert!(max - min <= 0.06, "delta={d}: spread {}", max - min);
        }
        // At delta = 0.5 the spread is larger.
        let lo = acceptance_rate_b(0.5, 1.0, &s).unwrap();
        let hi = acceptance_rate_b(0.5, 0.5, &s).unwrap();
        assert!((hi - lo - 0.0916).abs() < 5e-4);
    }

    proptest! {
        #[test]
        fn envelope_dominates_marginal(d in 1e-6f64..1e4, c in 0.0f64..5.0, x in 0.0f64..50.0) {
            let m = marginal_x_unnormalized(d, x).unwrap();
            let g = envelope_g(d, c, x).unwrap();
            prop_assert!(m <= g, "m={m} g={g}");
        }

        #[test]
        fn g1_cdf_inverts_quantile(d in 1e-6f64..1e4, c in 1e-3f64..5.0, u in 1e-9f64..(1.0 - 1e-9)) {
            let x = g1_inverse_cdf(d, c, u).unwrap();
            prop_assert!(x > 0.0 && x < c);
            let back = g1_cdf(d, c, x).unwrap();
            prop_assert!((back - u).abs() <= 1e-12, "u={u} back={back}");
        }

        #[test]
        fn g1_quantile_increasing(d in 1e-6f64..1e4, c in 1e-3f64..5.0, u in 1e-6f64..0.99) {
            let a = g1_inverse_cdf(d, c, u).unwrap();
            let b = g1_inverse_cdf(d, c, u + 0.005).unwrap();
            prop_assert!(b > a);
        }
    }
}
