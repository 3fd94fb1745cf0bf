//! Execution of parsed subcommands.

use serde_json::json;

use edgeflow::boundary::{
    expected_flow, final_config_stability, green_monte_carlo, green_numeric, limit_flow, recurrence_probe,
    stabilization_probe, Window,
};
use edgeflow::walk::{
    drift_estimate, entropy_series, inequality_report, sphere_sizes, Estimate, InequalityParams, Trajectory,
    WalkConfig,
};
use edgeflow::{length_bounds, mb_eval, min_word_exact_with, parse_word, Edge, Error, LampGroupSpec, LatticePoint, SearchLimits, Word};

use crate::args::{BoundaryCommand, Command, GroupArgs};
use crate::element::{self, Element};
use crate::output::{cell, real, Output, Table};
use crate::{CliError, EXIT_BUDGET, EXIT_OK};

/// Output plus the exit code it should be reported with.
pub struct Outcome {
    pub output: Output,
    pub code: i32,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome { output, code: EXIT_OK }
    }
}

fn config(g: &GroupArgs) -> Result<WalkConfig, CliError> {
    Ok(WalkConfig::new(g.variety.into(), g.d, g.m)?)
}

fn evaluate(cfg: &WalkConfig, text: &str) -> Result<Element, CliError> {
    element::eval(cfg, &element::parse(cfg, text)?)
}

fn steps_list(mut xs: Vec<u64>, flag: &str) -> Result<Vec<u64>, CliError> {
    xs.sort_unstable();
    xs.dedup();
    if xs.is_empty() || xs[0] == 0 {
        return Err(CliError::Usage(format!("--{flag} needs positive step counts")));
    }
    Ok(xs)
}

fn estimate_row(quantity: &str, n: impl ToString, e: &Estimate) -> Vec<String> {
    vec![quantity.into(), n.to_string(), real(e.mean), real(e.low()), real(e.high())]
}

fn point(coords: Vec<i64>, d: usize, flag: &str) -> Result<LatticePoint, CliError> {
    if coords.len() != d {
        return Err(CliError::Usage(format!("--{flag} needs {d} coordinates, got {}", coords.len())));
    }
    Ok(LatticePoint::new(coords))
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Eval { group, word } => {
            let cfg = config(group)?;
            Ok(Output::json(evaluate(&cfg, word)?.to_json()).into())
        }
        Command::Eq { group, u, v } => {
            let cfg = config(group)?;
            let (a, b) = (evaluate(&cfg, u)?, evaluate(&cfg, v)?);
            Ok(Output::json(json!({"equal": a == b, "difference": a.difference(&b)})).into())
        }
        Command::Mul { group, u, v } => {
            let cfg = config(group)?;
            let (a, b) = (evaluate(&cfg, u)?, evaluate(&cfg, v)?);
            Ok(Output::json(a.mul(&b)?.to_json()).into())
        }
        Command::Inv { group, word } => {
            let cfg = config(group)?;
            Ok(Output::json(evaluate(&cfg, word)?.inv().to_json()).into())
        }
        Command::Minlen { d, word, max_len, node_limit } => minlen(*d, word, *max_len, *node_limit),
        Command::Walk { group, seed, steps, samples, trace } => {
            let cfg = config(group)?;
            let steps = steps_list(steps.clone(), "steps")?;
            if *trace {
                return trace_walk(&cfg, *seed, *steps.last().expect("nonempty"));
            }
            if *samples == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let stats = drift_estimate(&cfg, &steps, *samples, *seed);
            let mut rows = Vec::new();
            for p in &stats.points {
                rows.push(estimate_row("lower", p.n, &p.lower));
                rows.push(estimate_row("upper", p.n, &p.upper));
                if let Some(e) = &p.exact {
                    rows.push(estimate_row("exact", p.n, e));
                }
            }
            let json = json!({"config": cfg, "seed": seed, "drift": stats});
            Ok(Output { json, table: Some(Table { headers: vec!["quantity", "N", "value", "ci_low", "ci_high"], rows }) }
                .into())
        }
        Command::Growth { group, n_max, budget } => {
            let cfg = config(group)?;
            let stats = sphere_sizes(&cfg, *n_max, *budget);
            let rows = stats
                .ball_sizes
                .iter()
                .enumerate()
                .map(|(n, b)| vec![n.to_string(), b.to_string(), String::new(), String::new()])
                .collect();
            let json = json!({
                "config": cfg,
                "ball_sizes": stats.ball_sizes,
                "truncated": stats.truncated,
                "v_upper": stats.v_upper(),
            });
            let code = if stats.truncated { EXIT_BUDGET } else { EXIT_OK };
            Ok(Outcome { output: Output { json, table: Some(Table { headers: vec!["N", "value", "ci_low", "ci_high"], rows }) }, code })
        }
        Command::Entropy { group, n_max } => {
            let cfg = config(group)?;
            let stats = entropy_series(&cfg, *n_max)?;
            let rows = stats
                .entries
                .iter()
                .map(|e| vec![e.n.to_string(), real(e.entropy), String::new(), String::new()])
                .collect();
            let json = json!({"config": cfg, "entries": stats.entries, "h_upper": stats.h_upper()});
            Ok(Output { json, table: Some(Table { headers: vec!["N", "value", "ci_low", "ci_high"], rows }) }.into())
        }
        Command::Inequality { group, seed, entropy_n, growth_n, drift_n, samples } => {
            let cfg = config(group)?;
            let mut params = InequalityParams::default_for(&cfg);
            params.seed = *seed;
            params.entropy_n_max = entropy_n.unwrap_or(params.entropy_n_max);
            params.growth_n_max = growth_n.unwrap_or(params.growth_n_max);
            params.drift_n = drift_n.unwrap_or(params.drift_n);
            params.drift_samples = samples.unwrap_or(params.drift_samples);
            let r = inequality_report(&cfg, &params)?;
            let rows = vec![
                vec!["h_upper".into(), r.entropy.last().map_or(String::new(), |e| e.n.to_string()), real(r.h_upper), String::new(), String::new()],
                vec!["c_upper".into(), r.drift.n.to_string(), real(r.c_upper), real(r.c_interval.0), real(r.c_interval.1)],
                vec!["v_upper".into(), (r.growth.ball_sizes.len() - 1).to_string(), real(r.v_upper), String::new(), String::new()],
                vec!["gap".into(), String::new(), real(r.gap), String::new(), String::new()],
            ];
            let json = serde_json::to_value(&r).expect("serializable");
            Ok(Output { json, table: Some(Table { headers: vec!["quantity", "N", "value", "ci_low", "ci_high"], rows }) }
                .into())
        }
        Command::Boundary(b) => boundary(b),
        Command::Replay { .. } => unreachable!("replay is handled by the runner"),
    }
}

fn minlen(d: usize, text: &str, max_len: Option<usize>, node_limit: u64) -> Result<Outcome, CliError> {
    if d == 0 {
        return Err(CliError::Usage("--d must be at least 1".into()));
    }
    let w = parse_word(text, d).map_err(|e| CliError::Usage(format!("malformed word {text:?}: {e}")))?;
    let g = mb_eval(&w);
    let bounds = length_bounds(&g);
    let limits = SearchLimits { max_len: max_len.unwrap_or(bounds.upper as usize), node_limit };
    let report = |lower: u64, exact: Option<u64>, upper: u64, witness: &Word| {
        json!({"lower": lower, "exact": exact, "upper": upper, "witness": witness.to_string()})
    };
    match min_word_exact_with(&g, limits) {
        Ok(best) => {
            let n = best.len() as u64;
            Ok(Output::json(report(n, Some(n), n, &best)).into())
        }
        Err(Error::BudgetExceeded(_)) => Ok(Outcome {
            output: Output::json(report(bounds.lower, None, bounds.upper, &bounds.witness)),
            code: EXIT_BUDGET,
        }),
        Err(e) => Err(e.into()),
    }
}

fn trace_walk(cfg: &WalkConfig, seed: u64, steps: u64) -> Result<Outcome, CliError> {
    let traj = Trajectory::new(seed, 0, cfg.generators(), steps);
    let word = Word::new(cfg.generators(), traj.letters().collect())?;
    let g = element::eval(cfg, &word)?;
    let json = json!({"config": cfg, "seed": seed, "steps": steps, "word": word.to_string(), "element": g.to_json()});
    Ok(Output::json(json).into())
}

fn boundary(b: &BoundaryCommand) -> Result<Outcome, CliError> {
    match b {
        BoundaryCommand::StableFlow { d, seed, index, steps, radius } => {
            if *d == 0 || *steps < 2 {
                return Err(CliError::Usage("stable-flow needs --d >= 1 and --steps >= 2".into()));
            }
            let traj = Trajectory::new(*seed, *index, *d, *steps);
            let report = limit_flow(&traj, *steps, &Window::new(*d, *radius));
            let rows = report
                .rows()
                .into_iter()
                .map(|r| vec![r.edge.to_string(), r.half.to_string(), r.full.to_string(), r.stabilized.to_string()])
                .collect();
            let mut json = serde_json::to_value(&report).expect("serializable");
            json["unstable_fraction"] = json!(report.unstable_fraction());
            json["seed"] = json!(seed);
            json["index"] = json!(index);
            Ok(Output { json, table: Some(Table { headers: vec!["edge", "half", "value", "stabilized"], rows }) }.into())
        }
        BoundaryCommand::Green { d, x, tol, walks, horizon, seed } => {
            let p = point(x.clone(), *d, "x")?;
            let value = green_numeric(&p, *d, *tol)?;
            let mut rows = vec![vec!["quadrature".into(), real(value), String::new(), String::new()]];
            let mut json = json!({"d": d, "x": p, "tolerance": tol, "value": value});
            if *walks > 0 {
                let seed = seed.ok_or_else(|| CliError::Usage("--walks needs an explicit --seed".into()))?;
                let e = green_monte_carlo(std::slice::from_ref(&p), *d, *walks, *horizon, seed)?[0];
                rows.push(vec!["monte_carlo".into(), real(e.mean), real(e.low()), real(e.high())]);
                json["monte_carlo"] = json!({"walks": walks, "horizon": horizon, "seed": seed, "estimate": e});
            }
            Ok(Output { json, table: Some(Table { headers: vec!["method", "value", "ci_low", "ci_high"], rows }) }.into())
        }
        BoundaryCommand::ExpectedFlow { d, base, axis, tol } => {
            let base = point(base.clone(), *d, "base")?;
            let edge = Edge::new(base, *axis)?;
            let value = expected_flow(&edge, *d, *tol)?;
            let rows = vec![vec![edge.to_string(), real(value)]];
            let json = json!({"d": d, "edge": edge, "tolerance": tol, "value": value});
            Ok(Output { json, table: Some(Table { headers: vec!["edge", "value"], rows }) }.into())
        }
        BoundaryCommand::Recurrence { d, seed, seeds, checkpoints } => {
            if *d == 0 || *seeds == 0 {
                return Err(CliError::Usage("recurrence needs --d >= 1 and --seeds >= 1".into()));
            }
            let checkpoints = steps_list(checkpoints.clone(), "checkpoints")?;
            let rec = recurrence_probe(*d, &checkpoints, *seeds, *seed);
            let stab = stabilization_probe(*d, &checkpoints, *seeds, *seed);
            let mut rows = Vec::new();
            for (k, n) in checkpoints.iter().enumerate() {
                rows.push(vec!["median_traversals".into(), n.to_string(), real(rec.medians[k])]);
                rows.push(vec!["stabilized_fraction".into(), n.to_string(), real(stab.fractions[k])]);
                if k > 0 {
                    rows.push(vec!["constant_fraction".into(), n.to_string(), real(rec.constant_fraction[k - 1])]);
                }
            }
            let json = json!({
                "seed": seed,
                "recurrence": rec,
                "medians_strictly_increasing": rec.medians_strictly_increasing(),
                "stabilization": stab,
            });
            Ok(Output { json, table: Some(Table { headers: vec!["quantity", "N", "value"], rows }) }.into())
        }
        BoundaryCommand::FinalConfig { d, m, seed, seeds, horizons, radius, check_seeds } => {
            if *d == 0 || *seeds == 0 {
                return Err(CliError::Usage("final-config needs --d >= 1 and --seeds >= 1".into()));
            }
            let spec = LampGroupSpec::new(*m)?;
            let horizons = steps_list(horizons.clone(), "horizons")?;
            let r = final_config_stability(*d, spec, &horizons, *radius, *seeds, *seed, *check_seeds);
            let mut rows = Vec::new();
            for (k, n) in horizons.iter().enumerate() {
                rows.push(vec!["node_fraction".into(), n.to_string(), cell(Some(r.node_fraction[k]))]);
                rows.push(vec!["seed_fraction".into(), n.to_string(), cell(Some(r.seed_fraction[k]))]);
            }
            let mut json = serde_json::to_value(&r).expect("serializable");
            json["seed"] = json!(seed);
            Ok(Output { json, table: Some(Table { headers: vec!["quantity", "N", "value"], rows }) }.into())
        }
    }
}

