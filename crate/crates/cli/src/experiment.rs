//! Drives a full experiment from an `ExperimentConfig`: one table row per
//! instance, one column per method.

use crate::config::{DegreePolicy, ExperimentConfig, Method};
use crate::noise::{noise_trial_suite, NoiseSuiteSettings};
use crate::runner::{find_min_evaluations, run_method, MethodSettings, MinEvalOutcome};
use crate::table::{format_min_evals, format_noise_cell, Table};
use interp_core::error::Result;
use interp_core::oracle::EvaluationOracle;
use interp_core::poly::Instance;
use interp_core::recover::relative_error;

/// The hierarchy on ten-variable instances solves a semidefinite program
/// with thousands of variables; it only runs when `slow` is set.
fn gated(cfg: &ExperimentConfig, method: Method, dimension: usize) -> bool {
    !cfg.slow && method == Method::Superres && dimension >= 10
}

fn min_eval_cell(cfg: &ExperimentConfig, inst: &Instance, method: Method) -> Result<String> {
    let truth = inst.polynomial()?;
    if gated(cfg, method, truth.dimension()) {
        return Ok("skipped (--slow)".to_string());
    }
    let settings = MethodSettings {
        rank_threshold: cfg.rank_threshold,
        ..MethodSettings::default()
    };
    match cfg.degree {
        DegreePolicy::Search => {
            let out =
                find_min_evaluations(&truth, inst.degree_bound, method, cfg.scheme, &settings)?;
            Ok(format_min_evals(&out))
        }
        DegreePolicy::Fixed(d) => {
            let oracle = EvaluationOracle::new(truth.clone(), None);
            match run_method(
                method,
                &oracle,
                inst.degree_bound,
                d,
                truth.sparsity(),
                cfg.scheme,
                &settings,
            ) {
                Ok(run) => {
                    let err = relative_error(&run.estimate, &truth)?;
                    if err <= crate::runner::EXACT_TOL {
                        Ok(format_min_evals(&MinEvalOutcome::Recovered {
                            evaluations: run.evaluations,
                            degree: run.degree,
                        }))
                    } else {
                        Ok(format!("{:.2}%", err))
                    }
                }
                Err(interp_core::error::Error::Config(_)) => Ok("N. A.".to_string()),
                Err(e) => Ok(format!("failed: {}", e)),
            }
        }
    }
}

/// Renders the configured experiment as a table in the configured format.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let mut headers = vec!["blackbox".to_string()];
    headers.extend(cfg.methods.iter().map(|m| m.label().to_string()));
    if cfg.noise.is_some() {
        headers.push("degree".to_string());
    }
    let mut table = Table::new(headers);

    for inst_ref in &cfg.instances {
        let inst = inst_ref.load()?;
        let truth = inst.polynomial()?;
        let mut row = vec![inst_ref.label()];
        match &cfg.noise {
            None => {
                for &m in &cfg.methods {
                    row.push(min_eval_cell(cfg, &inst, m)?);
                }
            }
            Some(noise) => {
                let settings = NoiseSuiteSettings {
                    amplitude: noise.amplitude,
                    trials: noise.trials,
                    base_seed: noise.seed,
                    rank_threshold: cfg.rank_threshold,
                };
                let degree_override = match cfg.degree {
                    DegreePolicy::Fixed(d) => Some(d),
                    DegreePolicy::Search => None,
                };
                let methods: Vec<Method> = cfg
                    .methods
                    .iter()
                    .copied()
                    .filter(|&m| !gated(cfg, m, truth.dimension()))
                    .collect();
                let cells = noise_trial_suite(
                    &truth,
                    inst.degree_bound,
                    &methods,
                    cfg.scheme,
                    degree_override,
                    &settings,
                )?;
                let mut degree = None;
                for &m in &cfg.methods {
                    match cells.iter().find(|(cm, _)| *cm == m) {
                        Some((_, cell)) => {
                            if let crate::noise::NoiseCell::Stats(s) = cell {
                                degree = Some(s.degree);
                            }
                            row.push(format_noise_cell(cell));
                        }
                        None => row.push("skipped (--slow)".to_string()),
                    }
                }
                row.push(degree.map_or("-".to_string(), |d| d.to_string()));
            }
        }
        table.push_row(row);
    }
    Ok(table.render(cfg.format))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{InstanceRef, OutputFormat, SchemeChoice};

    #[test]
    fn univariate_search_table() {
        let cfg = ExperimentConfig {
            instances: vec![InstanceRef::Bundled(1)],
            methods: vec![Method::RigorousLp, Method::ToeplitzProny, Method::AdvancedT],
            scheme: SchemeChoice::A1,
            degree: DegreePolicy::Search,
            noise: None,
            rank_threshold: 0.1,
            format: OutputFormat::Csv,
            slow: false,
        };
        let text = run_experiment(&cfg).unwrap();
        assert_eq!(
            text,
            "blackbox,rigorous_lp,toeplitz_prony,advanced_t\np1,2 (1),3 (2),3\n"
        );
    }

    #[test]
    fn byte_identical_reruns() {
        let cfg = ExperimentConfig {
            instances: vec![InstanceRef::Bundled(1)],
            methods: vec![Method::ToeplitzProny],
            scheme: SchemeChoice::A1,
            degree: DegreePolicy::Search,
            noise: Some(crate::config::NoiseSettings {
                amplitude: 0.1,
                trials: 3,
                seed: 5,
            }),
            rank_threshold: 0.1,
            format: OutputFormat::Csv,
            slow: false,
        };
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.lines().count() == 2);
    }
}
