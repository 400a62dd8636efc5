//! Plain-text experiment configuration.
//!
//! One `key = value` pair per line, `#` starts a comment, lists are comma
//! separated. `experiment` and `s_list` are required.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fraclap_core::Domain;

use crate::error::{LabError, Result};
use crate::profiles::ProfileSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    KernelCheck,
    MollifierCheck,
    Solve,
    Consistency,
    Rates,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::KernelCheck,
        ExperimentKind::MollifierCheck,
        ExperimentKind::Solve,
        ExperimentKind::Consistency,
        ExperimentKind::Rates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::KernelCheck => "kernel_check",
            ExperimentKind::MollifierCheck => "mollifier_check",
            ExperimentKind::Solve => "solve",
            ExperimentKind::Consistency => "consistency",
            ExperimentKind::Rates => "rates",
        }
    }

    /// Accepts both `kernel_check` and the CLI spelling `kernel-check`.
    pub fn parse(text: &str) -> Option<Self> {
        let norm = text.trim().replace('-', "_");
        Self::ALL.into_iter().find(|k| k.name() == norm)
    }
}

/// Inner strip width as a function of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RRule {
    /// `r = (1-s)^{1/s}`.
    Paper,
    Fixed(f64),
}

impl RRule {
    pub fn eval(self, s: f64) -> f64 {
        match self {
            RRule::Paper => (1.0 - s).powf(1.0 / s),
            RRule::Fixed(r) => r,
        }
    }
}

/// Outer strip width as a function of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoRule {
    /// `ρ = 1 - s`.
    Paper,
    /// `ρ = (1-s) |ln((1-s)/2)|`.
    Log,
    Fixed(f64),
}

impl RhoRule {
    pub fn eval(self, s: f64) -> f64 {
        match self {
            RhoRule::Paper => 1.0 - s,
            RhoRule::Log => (1.0 - s) * ((1.0 - s) / 2.0).ln().abs(),
            RhoRule::Fixed(r) => r,
        }
    }
}

/// Weight of the right-hand side perturbation in `f_s = f + weight · perturb`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PerturbScale {
    OneMinusS,
    Fixed(f64),
}

impl PerturbScale {
    pub fn eval(self, s: f64) -> f64 {
        match self {
            PerturbScale::OneMinusS => 1.0 - s,
            PerturbScale::Fixed(w) => w,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub domain: Domain,
    pub n: usize,
    pub s_list: Vec<f64>,
    pub eps: f64,
    pub eps_list: Vec<f64>,
    pub r_rule: RRule,
    pub rho_rule: RhoRule,
    pub f_spec: ProfileSpec,
    pub f_s_spec: Option<ProfileSpec>,
    pub f_s_perturb: Option<ProfileSpec>,
    pub f_s_scale: PerturbScale,
    pub g_spec: Option<ProfileSpec>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub fit_min_s: f64,
    pub samples: usize,
    pub bumps: usize,
    pub timing: bool,
}

const KEYS: &[&str] = &[
    "experiment",
    "omega",
    "box",
    "n",
    "s_list",
    "eps",
    "eps_list",
    "r_rule",
    "rho_rule",
    "f_spec",
    "f_s_spec",
    "f_s_perturb",
    "f_s_scale",
    "g_spec",
    "output_dir",
    "seed",
    "fit_min_s",
    "samples",
    "bumps",
    "timing",
];

impl ExperimentConfig {
    /// Defaults for everything but the experiment and the `s` values.
    pub fn new(experiment: ExperimentKind, s_list: Vec<f64>) -> Result<Self> {
        let cfg = Self {
            experiment,
            domain: Domain::unit(),
            n: 513,
            s_list,
            eps: 0.0,
            eps_list: vec![0.0, 0.3],
            r_rule: RRule::Paper,
            rho_rule: RhoRule::Paper,
            f_spec: ProfileSpec::new("constant", &[("value", 1.0)]),
            f_s_spec: None,
            f_s_perturb: None,
            f_s_scale: PerturbScale::OneMinusS,
            g_spec: None,
            output_dir: PathBuf::from("out"),
            seed: 42,
            fit_min_s: 0.6,
            samples: 101,
            bumps: 100,
            timing: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(LabError::Config(m));
        if self.s_list.is_empty() {
            return err("s_list is empty".into());
        }
        if let Some(s) = self.s_list.iter().find(|s| !(**s > 0.0 && **s < 1.0)) {
            return err(format!("s_list entries must lie in (0, 1), got {s}"));
        }
        if self.n < 33 {
            return err(format!("n must be at least 33, got {}", self.n));
        }
        if !(0.0..1.0).contains(&self.eps) {
            return err(format!("eps must lie in [0, 1), got {}", self.eps));
        }
        if let Some(e) = self.eps_list.iter().find(|e| !(0.0..1.0).contains(*e)) {
            return err(format!("eps_list entries must lie in [0, 1), got {e}"));
        }
        if self.output_dir.as_os_str().is_empty() {
            return err("output_dir is empty".into());
        }
        if self.samples < 2 {
            return err(format!("samples must be at least 2, got {}", self.samples));
        }
        if self.f_s_spec.is_some() && self.f_s_perturb.is_some() {
            return err("f_s_spec and f_s_perturb are mutually exclusive".into());
        }
        Ok(())
    }

    /// Exterior data, zero unless given.
    pub fn g_or_zero(&self) -> ProfileSpec {
        self.g_spec
            .clone()
            .unwrap_or_else(|| ProfileSpec::new("constant", &[("value", 0.0)]))
    }
}

pub fn parse_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ExperimentConfig> {
    let mut map: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            LabError::Config(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let k = k.trim().to_string();
        if map
            .insert(k.clone(), (lineno + 1, v.trim().to_string()))
            .is_some()
        {
            return Err(LabError::Config(format!(
                "line {}: duplicate key `{k}`",
                lineno + 1
            )));
        }
    }
    let unknown: Vec<&str> = map
        .keys()
        .map(String::as_str)
        .filter(|k| !KEYS.contains(k))
        .collect();
    if !unknown.is_empty() {
        return Err(LabError::Config(format!(
            "unknown keys: {}",
            unknown.join(", ")
        )));
    }

    let required = |key: &str| {
        map.get(key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| LabError::Config(format!("missing required key `{key}`")))
    };
    let exp_text = required("experiment")?;
    let experiment = ExperimentKind::parse(exp_text)
        .ok_or_else(|| LabError::Config(format!("unknown experiment `{exp_text}`")))?;
    let s_list = parse_list("s_list", required("s_list")?)?;
    let mut cfg = ExperimentConfig::new(experiment, vec![0.5])?;
    cfg.s_list = s_list;

    for (key, (_, value)) in &map {
        let v = value.as_str();
        match key.as_str() {
            "experiment" | "s_list" => {}
            "omega" | "box" => {}
            "n" => cfg.n = parse_num(key, v)?,
            "eps" => cfg.eps = parse_num(key, v)?,
            "eps_list" => cfg.eps_list = parse_list(key, v)?,
            "r_rule" => cfg.r_rule = parse_r_rule(v)?,
            "rho_rule" => cfg.rho_rule = parse_rho_rule(v)?,
            "f_spec" => cfg.f_spec = ProfileSpec::parse(v)?,
            "f_s_spec" => cfg.f_s_spec = Some(ProfileSpec::parse(v)?),
            "f_s_perturb" => cfg.f_s_perturb = Some(ProfileSpec::parse(v)?),
            "f_s_scale" => {
                cfg.f_s_scale = match v {
                    "one_minus_s" => PerturbScale::OneMinusS,
                    _ => PerturbScale::Fixed(parse_num(key, v)?),
                }
            }
            "g_spec" => cfg.g_spec = Some(ProfileSpec::parse(v)?),
            "output_dir" => cfg.output_dir = PathBuf::from(v),
            "seed" => cfg.seed = parse_num(key, v)?,
            "fit_min_s" => cfg.fit_min_s = parse_num(key, v)?,
            "samples" => cfg.samples = parse_num(key, v)?,
            "bumps" => cfg.bumps = parse_num(key, v)?,
            "timing" => cfg.timing = parse_num(key, v)?,
            _ => unreachable!("checked against KEYS"),
        }
    }
    let pair = |key: &str, def: (f64, f64)| -> Result<(f64, f64)> {
        match map.get(key) {
            None => Ok(def),
            Some((_, v)) => match parse_list(key, v)?.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(LabError::Config(format!(
                    "`{key}` needs two values `lo, hi`"
                ))),
            },
        }
    };
    let (olo, ohi) = pair("omega", (cfg.domain.omega_lo(), cfg.domain.omega_hi()))?;
    let (blo, bhi) = pair("box", (cfg.domain.box_lo(), cfg.domain.box_hi()))?;
    cfg.domain = Domain::new(olo, ohi, blo, bhi)
        .map_err(|e| LabError::Config(format!("bad domain: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| LabError::Config(format!("`{key}`: malformed value `{v}`")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    let items: Vec<&str> = v
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if items.is_empty() {
        return Err(LabError::Config(format!("`{key}` is empty")));
    }
    items.into_iter().map(|t| parse_num(key, t)).collect()
}

fn fixed_value(key: &str, v: &str) -> Result<Option<f64>> {
    match v.strip_prefix("fixed:") {
        Some(x) => Ok(Some(parse_num(key, x)?)),
        None => Ok(None),
    }
}

fn parse_r_rule(v: &str) -> Result<RRule> {
    if v == "paper" {
        return Ok(RRule::Paper);
    }
    match fixed_value("r_rule", v)? {
        Some(r) if r > 0.0 => Ok(RRule::Fixed(r)),
        _ => Err(LabError::Config(format!(
            "`r_rule`: expected paper or fixed:<r>, got `{v}`"
        ))),
    }
}

fn parse_rho_rule(v: &str) -> Result<RhoRule> {
    match v {
        "paper" => return Ok(RhoRule::Paper),
        "log" => return Ok(RhoRule::Log),
        _ => {}
    }
    match fixed_value("rho_rule", v)? {
        Some(r) if r > 0.0 => Ok(RhoRule::Fixed(r)),
        _ => Err(LabError::Config(format!(
            "`rho_rule`: expected paper, log or fixed:<rho>, got `{v}`"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config_str("experiment = rates\ns_list = 0.5, 0.7, 0.9\n").unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::Rates);
        assert_eq!(cfg.s_list, vec![0.5, 0.7, 0.9]);
        assert_eq!(cfg.n, 513);
        assert_eq!(cfg.eps, 0.0);
        assert_eq!(cfg.domain, Domain::unit());
    }

    #[test]
    fn rejects_bad_s_and_unknown_keys() {
        let e = parse_config_str("experiment = rates\ns_list = 0.5, 1.0").unwrap_err();
        assert!(matches!(e, LabError::Config(_)));
        let e = parse_config_str("experiment = rates\ns_list = 0.5\nfoo = 1\nbar=2").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("foo") && msg.contains("bar"), "{msg}");
        assert!(parse_config_str("s_list = 0.5").is_err());
        assert!(parse_config_str("experiment = rates\ns_list = ").is_err());
        assert!(parse_config_str("experiment = rates\ns_list = 0.5\nn = 17").is_err());
        assert!(parse_config_str("experiment = rates\ns_list = 0.5\nn = many").is_err());
    }

    #[test]
    fn parses_rules_profiles_and_comments() {
        let text = "
            # comment line
            experiment = consistency   # trailing comment
            s_list = 0.6,0.8
            r_rule = fixed:0.1
            rho_rule = log
            g_spec = gaussian(center=0.1, width=0.5)
            omega = -0.5, 0.5
            box = -1.5, 1.5
            timing = true
        ";
        let cfg = parse_config_str(text).unwrap();
        assert_eq!(cfg.r_rule, RRule::Fixed(0.1));
        assert_eq!(cfg.rho_rule, RhoRule::Log);
        assert_eq!(cfg.g_spec.unwrap().name, "gaussian");
        assert_eq!(cfg.domain.omega_lo(), -0.5);
        assert!(cfg.timing);
    }

    #[test]
    fn rules_match_their_formulas() {
        assert!((RRule::Paper.eval(0.5) - 0.25).abs() < 1e-15);
        assert!((RhoRule::Log.eval(0.9) - 0.1 * 0.05f64.ln().abs()).abs() < 1e-15);
        assert_eq!(
            ExperimentKind::parse("kernel-check"),
            Some(ExperimentKind::KernelCheck)
        );
    }
}
