//! Statistical and numerical checks of sampler output.

use crate::error::{check_positive, domain, BecError, Result};
use crate::math::{tail_integral, theoretical_rate, Algorithm};
use crate::params::BecParams;
use crate::parallel::count_acceptances_sharded;
use crate::quadrature::{integrate, integrate_exp_tail, QuadratureSettings};
use crate::sampler::{SamplePair, Sampler};
use crate::uniform::UniformStream;

/// Asymptotic Kolmogorov–Smirnov coefficient `c(alpha)` at `alpha = 0.01`.
pub const KS_COEFF_001: f64 = 1.628;

/// Smallest proposal count accepted by [`empirical_acceptance`].
pub const MIN_PROPOSALS: u64 = 1_000;

/// Binomial estimate of an acceptance probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub point: f64,
    pub standard_error: f64,
    pub n_proposals: u64,
}

impl RateEstimate {
    pub fn from_counts(accepted: u64, n_proposals: u64) -> Self {
        let point = accepted as f64 / n_proposals as f64;
        Self {
            point,
            standard_error: (point * (1.0 - point) / n_proposals as f64).sqrt(),
            n_proposals,
        }
    }

    /// Distance from `expected` in units of the binomial standard error at `expected`.
    ///
    /// The standard error is taken at the theoretical value, so a point estimate of
    /// exactly 0 or 1 is still judged on a nonzero scale.
    pub fn z_score(&self, expected: f64) -> f64 {
        let se = (expected * (1.0 - expected) / self.n_proposals as f64).sqrt();
        if se == 0.0 {
            return if self.point == expected { 0.0 } else { f64::INFINITY };
        }
        (self.point - expected) / se
    }
}

/// Runs `n_proposals` proposals of `algorithm` from `source` and counts acceptances.
pub fn empirical_acceptance<S: UniformStream + ?Sized>(
    params: &BecParams,
    algorithm: Algorithm,
    n_proposals: u64,
    source: &mut S,
) -> Result<RateEstimate> {
    check_proposals(n_proposals)?;
    let sampler = Sampler::new(*params, algorithm)?;
    let accepted = (0..n_proposals)
        .filter(|_| sampler.propose(source).is_some())
        .count() as u64;
    Ok(RateEstimate::from_counts(accepted, n_proposals))
}

/// [`empirical_acceptance`] over independent streams of `seed`, split into `shards`.
pub fn empirical_acceptance_sharded(
    params: &BecParams,
    algorithm: Algorithm,
    n_proposals: u64,
    seed: u64,
    shards: usize,
) -> Result<RateEstimate> {
    check_proposals(n_proposals)?;
    let sampler = Sampler::new(*params, algorithm)?;
    let accepted = count_acceptances_sharded(&sampler, n_proposals, seed, shards);
    Ok(RateEstimate::from_counts(accepted, n_proposals))
}

fn check_proposals(n: u64) -> Result<()> {
    if n < MIN_PROPOSALS {
        return Err(domain("n_proposals", n as f64, "must be >= 1000"));
    }
    Ok(())
}

/// Which exact conditional to push the pairs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PitAxis {
    YGivenX,
    XGivenY,
}

/// Probability integral transform through the exact exponential conditional.
///
/// `YGivenX` maps `(x, y)` to `1 - exp(-gamma (1 + delta beta x) y)`; `XGivenY` is the
/// mirror image. For pairs from the target density the output is i.i.d. uniform.
pub fn pit_conditional(params: &BecParams, pairs: &[SamplePair], axis: PitAxis) -> Vec<f64> {
    let (b, g, d) = (params.beta(), params.gamma(), params.delta());
    pairs
        .iter()
        .map(|p| {
            let t = match axis {
                PitAxis::YGivenX => g * (1.0 + d * b * p.x) * p.y,
                PitAxis::XGivenY => b * (1.0 + d * g * p.y) * p.x,
            };
            -(-t).exp_m1()
        })
        .collect()
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n(t) - t|` against uniform(0, 1).
pub fn ks_uniform(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(domain("n", 0.0, "need at least one value"));
    }
    if let Some(&bad) = values.iter().find(|&&v| !(v > 0.0 && v < 1.0)) {
        return Err(domain("value", bad, "must lie in (0, 1)"));
    }
    let v = sorted(values);
    let n = v.len() as f64;
    Ok(v.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let above = (i + 1) as f64 / n - x;
        let below = x - i as f64 / n;
        d.max(above).max(below)
    }))
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a(t) - F_b(t)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("n", 0.0, "both samples must be nonempty"));
    }
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic one-sample critical value `coeff / sqrt(n)`.
pub fn ks_critical(coeff: f64, n: usize) -> f64 {
    coeff / (n as f64).sqrt()
}

/// Asymptotic two-sample critical value `coeff * sqrt((n + m) / (n m))`.
pub fn ks_critical_two_sample(coeff: f64, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    coeff * ((n + m) / (n * m)).sqrt()
}

/// Mean of the standardized X, `(1 - I) / (delta I)`; 1 at `delta = 0`.
///
/// Divide by `beta` for original units. By the symmetry of the standardized density
/// the same value divided by `gamma` is the mean of Y.
pub fn mean_x_theoretical(delta: f64, settings: &QuadratureSettings) -> Result<f64> {
    let i = tail_integral(delta, settings)?;
    if delta == 0.0 {
        return Ok(1.0);
    }
    Ok((1.0 - i) / (delta * i))
}

/// Means of X and Y in original units.
pub fn means_theoretical(params: &BecParams, settings: &QuadratureSettings) -> Result<(f64, f64)> {
    let m = mean_x_theoretical(params.delta(), settings)?;
    Ok((m / params.beta(), m / params.gamma()))
}

/// `Cov(X, Y)` in original units.
///
/// Uses `E[Y | X] = 1 / (gamma (1 + delta beta x))` to reduce `E[XY]` to a single
/// integral against the X marginal.
pub fn covariance_theoretical(params: &BecParams, settings: &QuadratureSettings) -> Result<f64> {
    let delta = params.delta();
    if delta == 0.0 {
        return Ok(0.0);
    }
    let i = tail_integral(delta, settings)?;
    let m = mean_x_theoretical(delta, settings)?;
    let cross = integrate_exp_tail(
        |x| x * (-x).exp() / ((1.0 + delta * x) * (1.0 + delta * x)),
        0.0,
        settings,
    )? / i;
    Ok((cross - m * m) / (params.beta() * params.gamma()))
}

/// Sample moments with standard errors of the means and covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub n: usize,
    pub mean_x: f64,
    pub mean_y: f64,
    pub se_mean_x: f64,
    pub se_mean_y: f64,
    pub covariance: f64,
    pub se_covariance: f64,
}

pub fn sample_summary(pairs: &[SamplePair]) -> Result<SampleSummary> {
    if pairs.len() < 2 {
        return Err(domain("n", pairs.len() as f64, "need at least two pairs"));
    }
    let n = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.x).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|p| p.y).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in pairs {
        let (dx, dy) = (p.x - mean_x, p.y - mean_y);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let covariance = sxy / (n - 1.0);
    let cov_var = pairs
        .iter()
        .map(|p| {
            let w = (p.x - mean_x) * (p.y - mean_y) - covariance;
            w * w
        })
        .sum::<f64>()
        / (n - 1.0);
    Ok(SampleSummary {
        n: pairs.len(),
        mean_x,
        mean_y,
        se_mean_x: (sxx / (n - 1.0) / n).sqrt(),
        se_mean_y: (syy / (n - 1.0) / n).sqrt(),
        covariance,
        se_covariance: (cov_var / n).sqrt(),
    })
}

/// Rectangular truncation `[0, x_max] x [0, y_max]` split into equal cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_max: f64,
    pub y_max: f64,
    pub cells_per_axis: usize,
}

/// Largest probability mass allowed outside the grid.
pub const GRID_MASS_SLACK: f64 = 1e-6;

impl GridSpec {
    pub fn new(x_max: f64, y_max: f64, cells_per_axis: usize) -> Result<Self> {
        check_positive("x_max", x_max)?;
        check_positive("y_max", y_max)?;
        if cells_per_axis == 0 {
            return Err(domain("cells_per_axis", 0.0, "must be >= 1"));
        }
        Ok(Self {
            x_max,
            y_max,
            cells_per_axis,
        })
    }

    fn x_edge(&self, i: usize) -> f64 {
        self.x_max * i as f64 / self.cells_per_axis as f64
    }

    fn y_edge(&self, j: usize) -> f64 {
        self.y_max * j as f64 / self.cells_per_axis as f64
    }
}

/// Probability of each grid cell under the normalized density, row-major in x.
///
/// The y-integral over a cell is exact (the conditional is exponential); the x-integral
/// is adaptive quadrature.
pub fn grid_cell_masses(
    params: &BecParams,
    grid: &GridSpec,
    settings: &QuadratureSettings,
) -> Result<Vec<f64>> {
    let (b, g, d) = (params.beta(), params.gamma(), params.delta());
    let z = crate::math::normalizing_constant(params, settings)?;
    let k = grid.cells_per_axis;
    let cell = |i: usize, j: usize| -> Result<f64> {
        let (y0, y1) = (grid.y_edge(j), grid.y_edge(j + 1));
        let strip = |x: f64| {
            let r = g * (1.0 + d * b * x);
            (-b * x).exp() * ((-r * y0).exp() - (-r * y1).exp()) / r
        };
        integrate(strip, grid.x_edge(i), grid.x_edge(i + 1), settings).map(|m| m / z)
    };
    let mut masses = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            masses.push(cell(i, j)?);
        }
    }
    Ok(masses)
}

/// Total-variation distance between the binned sample and the normalized density.
///
/// Pairs outside the grid fall in one extra bin whose reference mass is whatever the
/// grid leaves out. Errors if that mass exceeds [`GRID_MASS_SLACK`].
pub fn grid_density_check(
    params: &BecParams,
    pairs: &[SamplePair],
    grid: &GridSpec,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if pairs.is_empty() {
        return Err(domain("n", 0.0, "need at least one pair"));
    }
    let masses = grid_cell_masses(params, grid, settings)?;
    let outside = (1.0 - masses.iter().sum::<f64>()).max(0.0);
    if outside > GRID_MASS_SLACK {
        return Err(BecError::Config(format!(
            "grid [0, {}] x [0, {}] leaves mass {outside:e} outside (limit {GRID_MASS_SLACK:e})",
            grid.x_max, grid.y_max
        )));
    }
    let k = grid.cells_per_axis;
    let mut counts = vec![0u64; k * k];
    let mut out_count = 0u64;
    for p in pairs {
        if p.x < grid.x_max && p.y < grid.y_max {
            let i = ((p.x / grid.x_max) * k as f64) as usize;
            let j = ((p.y / grid.y_max) * k as f64) as usize;
            counts[i.min(k - 1) * k + j.min(k - 1)] += 1;
        } else {
            out_count += 1;
        }
    }
    let n = pairs.len() as f64;
    let inside: f64 = counts
        .iter()
        .zip(&masses)
        .map(|(&c, &m)| (c as f64 / n - m).abs())
        .sum();
    Ok(0.5 * (inside + (out_count as f64 / n - outside).abs()))
}

/// Outcome of one check in a [`verify`] run.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Seeded battery: empirical acceptance, conditional PIT on both axes, and means.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub algorithm: Algorithm,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Options for [`verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub algorithm: Algorithm,
    pub n_proposals: u64,
    pub n_draws: usize,
    pub seed: u64,
    pub shards: usize,
}

/// Rate tolerance in binomial standard errors.
pub const RATE_SIGMAS: f64 = 3.0;
/// Mean tolerance in standard errors.
pub const MEAN_SIGMAS: f64 = 4.0;

pub fn verify(
    params: &BecParams,
    config: &VerifyConfig,
    settings: &QuadratureSettings,
) -> Result<VerifyReport> {
    let algorithm = config.algorithm.resolve(params.delta());
    let mut checks = Vec::new();

    let rate = empirical_acceptance_sharded(
        params,
        algorithm,
        config.n_proposals,
        config.seed,
        config.shards,
    )?;
    let expected = theoretical_rate(algorithm, params.delta(), settings)?;
    let z = rate.z_score(expected);
    checks.push(CheckOutcome {
        name: "acceptance_rate".into(),
        observed: rate.point,
        expected,
        threshold: RATE_SIGMAS,
        passed: z.abs() <= RATE_SIGMAS,
    });

    // Draws use a seed distinct from the acceptance run.
    let (pairs, _) = crate::parallel::sample_sharded(
        params,
        config.n_draws,
        algorithm,
        config.seed.wrapping_add(1),
        config.shards,
    )?;
    let critical = ks_critical(KS_COEFF_001, pairs.len());
    for (axis, name) in [(PitAxis::YGivenX, "pit_y_given_x"), (PitAxis::XGivenY, "pit_x_given_y")] {
        let d = ks_uniform(&pit_conditional(params, &pairs, axis))?;
        checks.push(CheckOutcome {
            name: name.into(),
            observed: d,
            expected: 0.0,
            threshold: critical,
            passed: d < critical,
        });
    }

    let summary = sample_summary(&pairs)?;
    let (mx, my) = means_theoretical(params, settings)?;
    for (name, observed, expected, se) in [
        ("mean_x", summary.mean_x, mx, summary.se_mean_x),
        ("mean_y", summary.mean_y, my, summary.se_mean_y),
    ] {
        checks.push(CheckOutcome {
            name: name.into(),
            observed,
            expected,
            threshold: MEAN_SIGMAS * se,
            passed: (observed - expected).abs() <= MEAN_SIGMAS * se,
        });
    }

    Ok(VerifyReport { algorithm, checks })
}
