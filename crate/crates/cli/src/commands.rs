use std::io::Write;
use std::time::Instant;

use bec::parallel::sample_sharded;
use bec::verification::{verify as run_checks, VerifyConfig};
use bec::{rate_cell, table1 as reference, theoretical_rate, Algorithm, QuadratureSettings};

use crate::args::{BenchArgs, RatesArgs, SampleArgs, VerifyArgs};
use crate::output;
use crate::{CliError, Outcome};

/// Relative slack allowed between mean proposals and `1 / R` in `bench`.
const TRIAL_SLACK: f64 = 0.05;

pub fn sample(args: &SampleArgs) -> Result<Outcome, CliError> {
    let params = args.model.params()?;
    let algorithm = args.model.algorithm()?;
    let workers = args.model.workers()?;
    if args.n == 0 {
        return Err(CliError::usage("--n must be >= 1"));
    }
    let resolved = algorithm.resolve(params.delta());
    if algorithm == Algorithm::Auto {
        eprintln!("algorithm: auto -> {} (delta = {})", resolved.label(), params.delta());
    }
    let seed = args.model.seed();
    let (pairs, stats) = sample_sharded(&params, args.n, resolved, seed, workers)?;
    let mut out = output::open(args.output.as_deref())?;
    output::write_pairs(&mut out, &pairs, args.format)?;
    eprintln!(
        "proposals: {} accepted: {} ({:.6})",
        stats.proposals,
        stats.accepted,
        stats.acceptance_fraction()
    );
    Ok(Outcome::Passed)
}

pub fn rates(args: &RatesArgs) -> Result<Outcome, CliError> {
    let deltas = if args.delta.is_empty() { reference::DELTAS.to_vec() } else { args.delta.clone() };
    let splits = if args.c.is_empty() { reference::SPLITS.to_vec() } else { args.c.clone() };
    let settings = QuadratureSettings::default();
    let mut rows = Vec::new();
    for &c in &splits {
        for &delta in &deltas {
            rows.push((c, delta, rate_cell(delta, c, &settings)?));
        }
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "c,delta,rate")?;
    for (c, delta, rate) in rows {
        writeln!(out, "{c},{delta},{rate:.10}")?;
    }
    Ok(Outcome::Passed)
}

pub fn table1() -> Result<Outcome, CliError> {
    let start = Instant::now();
    let cells = reference::compute(&QuadratureSettings::default())?;
    let elapsed = start.elapsed();
    let mut out = std::io::stdout().lock();

    write!(out, "{:>5}", "c")?;
    for delta in reference::DELTAS {
        write!(out, " {delta:>6}")?;
    }
    writeln!(out)?;
    for row in cells.chunks(reference::DELTAS.len()) {
        write!(out, "{:>5}", row[0].c)?;
        for cell in row {
            write!(out, " {:>6.3}", cell.computed)?;
        }
        writeln!(out)?;
    }

    let misses: Vec<_> = cells.iter().filter(|c| !c.matches()).collect();
    for m in &misses {
        writeln!(
            out,
            "mismatch c={} delta={}: computed {:.7}, printed {:.3}, |diff| {:.7} > {}",
            m.c,
            m.delta,
            m.computed,
            m.printed,
            (m.computed - m.printed).abs(),
            reference::TOLERANCE
        )?;
    }
    let status = if misses.is_empty() { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{status}: {}/{} cells within {} of the published values",
        cells.len() - misses.len(),
        cells.len(),
        reference::TOLERANCE
    )?;
    eprintln!("computed in {:.3} s", elapsed.as_secs_f64());
    Ok(if misses.is_empty() { Outcome::Passed } else { Outcome::Failed })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let params = args.model.params()?;
    let config = VerifyConfig {
        algorithm: args.model.algorithm()?,
        n_proposals: args.proposals,
        n_draws: args.n,
        seed: args.model.seed(),
        shards: args.model.workers()?,
    };
    if args.n < 2 {
        return Err(CliError::usage("--n must be >= 2"));
    }
    let report = run_checks(&params, &config, &QuadratureSettings::default())?;
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "# beta={} gamma={} delta={} algorithm={} seed={} proposals={} draws={}",
        params.beta(),
        params.gamma(),
        params.delta(),
        report.algorithm.label(),
        config.seed,
        config.n_proposals,
        config.n_draws
    )?;
    writeln!(out, "check,observed,expected,threshold,status")?;
    for c in &report.checks {
        writeln!(
            out,
            "{},{},{},{},{}",
            c.name,
            c.observed,
            c.expected,
            c.threshold,
            if c.passed { "pass" } else { "fail" }
        )?;
    }
    if report.passed() {
        Ok(Outcome::Passed)
    } else {
        for c in report.failures() {
            eprintln!("check failed: {}", c.name);
        }
        Ok(Outcome::Failed)
    }
}

pub fn bench(args: &BenchArgs) -> Result<Outcome, CliError> {
    let params = args.model.params()?;
    let workers = args.model.workers()?;
    if args.n == 0 {
        return Err(CliError::usage("--n must be >= 1"));
    }
    let seed = args.model.seed();
    let delta = params.delta();
    let mut algorithms = vec![Algorithm::A];
    if delta > 0.0 {
        algorithms.push(Algorithm::B { c: args.model.c });
    }
    algorithms.push(Algorithm::C);

    let settings = QuadratureSettings::default();
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "algorithm,delta,draws,seconds,draws_per_second,mean_proposals,expected_proposals,within_5pct"
    )?;
    for algorithm in algorithms {
        let expected = 1.0 / theoretical_rate(algorithm, delta, &settings)?;
        let start = Instant::now();
        let (_, stats) = sample_sharded(&params, args.n, algorithm, seed, workers)?;
        let seconds = start.elapsed().as_secs_f64();
        let mean = stats.mean_trials();
        writeln!(
            out,
            "{},{delta},{},{seconds:.6},{:.0},{mean:.4},{expected:.4},{}",
            algorithm.label(),
            args.n,
            args.n as f64 / seconds,
            (mean - expected).abs() <= TRIAL_SLACK * expected
        )?;
    }
    Ok(Outcome::Passed)
}
