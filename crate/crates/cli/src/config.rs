//! Experiment configuration: method and scheme selection, instance sources,
//! and the JSON config consumed by `interp run`.

use interp_core::error::{Error, Result};
use interp_core::moments::SchemeKind;
use interp_core::poly::Instance;
use serde::{Deserialize, Serialize};

/// The recovery approaches the harness can dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    HankelProny,
    ToeplitzProny,
    AdvancedH,
    AdvancedT,
    NaiveLp,
    RigorousLp,
    Superres,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::HankelProny => "hankel_prony",
            Method::ToeplitzProny => "toeplitz_prony",
            Method::AdvancedH => "advanced_h",
            Method::AdvancedT => "advanced_t",
            Method::NaiveLp => "naive_lp",
            Method::RigorousLp => "rigorous_lp",
            Method::Superres => "superres",
        }
    }

    pub fn from_name(name: &str) -> Result<Method> {
        Ok(match name {
            "hankel_prony" => Method::HankelProny,
            "toeplitz_prony" => Method::ToeplitzProny,
            "advanced_h" => Method::AdvancedH,
            "advanced_t" => Method::AdvancedT,
            "naive_lp" => Method::NaiveLp,
            "rigorous_lp" => Method::RigorousLp,
            "superres" => Method::Superres,
            other => {
                return Err(Error::Input(format!(
                    "unknown method '{}'; expected one of hankel_prony, toeplitz_prony, \
                     advanced_h, advanced_t, naive_lp, rigorous_lp, superres",
                    other
                )))
            }
        })
    }

    /// Advanced variants run once with a known term bound; everything else
    /// scans the scheme degree.
    pub fn is_advanced(&self) -> bool {
        matches!(self, Method::AdvancedH | Method::AdvancedT)
    }
}

/// Which index scheme the evaluations are drawn from: `a1` is the signed
/// difference set, `a2` the nonnegative simplex, `inf` the sup-norm box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeChoice {
    A1,
    A2,
    Inf,
}

impl SchemeChoice {
    pub fn kind(&self) -> SchemeKind {
        match self {
            SchemeChoice::A1 => SchemeKind::OneNormSigned,
            SchemeChoice::A2 => SchemeKind::OneNormNatural,
            SchemeChoice::Inf => SchemeKind::InfNorm,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SchemeChoice::A1 => "a1",
            SchemeChoice::A2 => "a2",
            SchemeChoice::Inf => "inf",
        }
    }

    pub fn from_name(name: &str) -> Result<SchemeChoice> {
        Ok(match name {
            "a1" => SchemeChoice::A1,
            "a2" => SchemeChoice::A2,
            "inf" => SchemeChoice::Inf,
            other => {
                return Err(Error::Input(format!(
                    "unknown scheme '{}'; expected a1, a2 or inf",
                    other
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Markdown,
}

/// Either search the minimal scheme degree or run at a fixed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreePolicy {
    Search,
    Fixed(i64),
}

impl Default for DegreePolicy {
    fn default() -> Self {
        DegreePolicy::Search
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NoiseSettings {
    pub amplitude: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Where an instance comes from: the bundled set (1-based index or "pK"
/// name), a JSON file, or inline JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceRef {
    Bundled(usize),
    Path(String),
    Inline(Instance),
}

impl InstanceRef {
    /// Accepts "p3", a bare index, or a file path.
    pub fn parse(text: &str) -> InstanceRef {
        if let Some(rest) = text.strip_prefix('p') {
            if let Ok(k) = rest.parse::<usize>() {
                return InstanceRef::Bundled(k);
            }
        }
        if let Ok(k) = text.parse::<usize>() {
            return InstanceRef::Bundled(k);
        }
        InstanceRef::Path(text.to_string())
    }

    pub fn load(&self) -> Result<Instance> {
        match self {
            InstanceRef::Bundled(k) => interp_core::catalog::bundled_instance(*k),
            InstanceRef::Path(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("cannot read {}: {}", path, e)))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Input(format!("bad instance JSON in {}: {}", path, e)))
            }
            InstanceRef::Inline(inst) => Ok(inst.clone()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            InstanceRef::Bundled(k) => format!("p{}", k),
            InstanceRef::Path(path) => std::path::Path::new(path)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.clone()),
            InstanceRef::Inline(_) => "inline".to_string(),
        }
    }
}

fn default_rank_threshold() -> f64 {
    0.1
}

fn default_format() -> OutputFormat {
    OutputFormat::Markdown
}

/// Top-level config for `interp run`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceRef>,
    pub methods: Vec<Method>,
    pub scheme: SchemeChoice,
    #[serde(default)]
    pub degree: DegreePolicy,
    #[serde(default)]
    pub noise: Option<NoiseSettings>,
    #[serde(default = "default_rank_threshold")]
    pub rank_threshold: f64,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
    /// Include rows whose minimum-evaluation search is very expensive.
    #[serde(default)]
    pub slow: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::Input("config lists no instances".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Input("config lists no methods".into()));
        }
        if let Some(noise) = &self.noise {
            if noise.trials < 1 {
                return Err(Error::Input("noise trials must be at least 1".into()));
            }
            if noise.amplitude < 0.0 {
                return Err(Error::Input("noise amplitude must be nonnegative".into()));
            }
        }
        if !(0.0 < self.rank_threshold && self.rank_threshold < 1.0) {
            return Err(Error::Input("rank threshold must lie in (0, 1)".into()));
        }
        Ok(())
    }
}
