//! Experiment harness for sparse interpolation from black-box evaluations:
//! instance generation, method dispatch, noiseless minimum-evaluation
//! search, noisy trial suites, and table emission.

pub mod config;
pub mod experiment;
pub mod gen;
pub mod noise;
pub mod runner;
pub mod table;

pub use config::{
    DegreePolicy, ExperimentConfig, InstanceRef, Method, NoiseSettings, OutputFormat, SchemeChoice,
};
pub use experiment::run_experiment;
pub use gen::{generate_instance, generate_instance_record};
pub use noise::{
    method_relaxation, noise_trial_suite, noise_trials, shared_noise_degree, NoiseCell, NoiseStats,
    NoiseSuiteSettings,
};
pub use runner::{
    find_min_evaluations, refit_coefficients, run_method, MethodRun, MethodSettings,
    MinEvalOutcome, DEGREE_CAP, EXACT_TOL,
};
pub use table::{format_min_evals, format_noise_cell, Table};
