//! Experiment configuration files (TOML).
//!
//! ```toml
//! experiment = "corollary_c_decay"    # or the short names E1 ... E7
//! seed = 0
//!
//! [system]                            # see `SystemDescription`
//! algebra = "heisenberg"
//! u = ["sqrt(2)", "sqrt(3)", "0"]
//!
//! [[observables]]
//! kind = "central_character"
//! m = 1
//!
//! [weight]
//! kind = "mobius"                     # liouville | constant_one | archimedean (tau)
//!
//! [statistic]
//! h = [10, 30, 100, 300]              # ladder: M = m_factor * H^2 ...
//! m_factor = 100
//! # ladder = [[10, 10000], [30, 90000]]   # ... or explicit (H, M) pairs
//!
//! [assertions]
//! strictly_decreasing = true
//! fixture = "../fixtures/regression.toml"
//!
//! [output]
//! json = "results.json"
//! csv = "ladder.csv"
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arith::WeightSpec;
use crate::dynamics::Observable;
use crate::nilmanifold::SystemDescription;
use crate::scalar::Number;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    #[serde(alias = "E1")]
    CorollaryCDecay,
    #[serde(alias = "E2")]
    PropDPolynomial,
    #[serde(alias = "E3")]
    TheoremENilsequence,
    #[serde(alias = "E4")]
    CorollaryFMulticorrelation,
    #[serde(alias = "E5")]
    CorollaryHProgressions,
    #[serde(alias = "E6")]
    JoiningProbe,
    #[serde(alias = "E7")]
    KbszSweep,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::CorollaryCDecay,
        ExperimentKind::PropDPolynomial,
        ExperimentKind::TheoremENilsequence,
        ExperimentKind::CorollaryFMulticorrelation,
        ExperimentKind::CorollaryHProgressions,
        ExperimentKind::JoiningProbe,
        ExperimentKind::KbszSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CorollaryCDecay => "corollary_c_decay",
            ExperimentKind::PropDPolynomial => "prop_d_polynomial",
            ExperimentKind::TheoremENilsequence => "theorem_e_nilsequence",
            ExperimentKind::CorollaryFMulticorrelation => "corollary_f_multicorrelation",
            ExperimentKind::CorollaryHProgressions => "corollary_h_progressions",
            ExperimentKind::JoiningProbe => "joining_probe",
            ExperimentKind::KbszSweep => "kbsz_sweep",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            ExperimentKind::CorollaryCDecay => "E1",
            ExperimentKind::PropDPolynomial => "E2",
            ExperimentKind::TheoremENilsequence => "E3",
            ExperimentKind::CorollaryFMulticorrelation => "E4",
            ExperimentKind::CorollaryHProgressions => "E5",
            ExperimentKind::JoiningProbe => "E6",
            ExperimentKind::KbszSweep => "E7",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ExperimentKind::ALL.into_iter().find(|k| k.name() == s || k.short().eq_ignore_ascii_case(s))
    }

    /// One-paragraph description and the parameters it reads.
    pub fn describe(self) -> &'static str {
        match self {
            ExperimentKind::CorollaryCDecay => {
                "Short-interval averages of f(phi^h x) u(h) for a nil-translation, one ladder per observable.\n\
                 reads: system, observables, weight, statistic.{h, m_factor | ladder}"
            }
            ExperimentKind::PropDPolynomial => {
                "Short-interval averages of e(P(floor(gamma h + rho))) u(h) through the Weyl system of P.\n\
                 reads: weight, statistic.{polynomial, gamma, rho, h, m_factor | ladder}"
            }
            ExperimentKind::TheoremENilsequence => {
                "Short-interval averages of a basic nilsequence sum_i c_i f_i(g^h x) against u.\n\
                 reads: system, observables, statistic.{coefficients, h, m_factor | ladder}, weight"
            }
            ExperimentKind::CorollaryFMulticorrelation => {
                "Short-interval averages of the closed-form circle multicorrelation d_h against u.\n\
                 reads: statistic.{alpha, characters, polynomials, h, m_factor | ladder}, weight"
            }
            ExperimentKind::CorollaryHProgressions => {
                "(1/N) sum f(T^n x) u(kn + j) over (k, j), plus a short-interval ladder per progression.\n\
                 reads: system, observables (first), weight, statistic.{progressions, n, h, m_factor | ladder}"
            }
            ExperimentKind::JoiningProbe => {
                "Drift of s t1 - r t2 and of the intertwiner along (t1, t2) -> (t1 + r alpha, t2 + s alpha), all coprime r, s <= r_max.\n\
                 reads: statistic.{alpha, r_max, n}, seed (random starts)"
            }
            ExperimentKind::KbszSweep => {
                "(1/N) sum a_{pn} conj(a_{qn}) over prime pairs p < q <= p_max for a = f(phi^n x).\n\
                 reads: system, observables (first), statistic.{p_max, n}"
            }
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatisticParams {
    /// Explicit `(H, M)` rungs.
    pub ladder: Option<Vec<[u64; 2]>>,
    pub h: Option<Vec<u64>>,
    pub m_factor: Option<u64>,
    pub n: Option<u64>,
    /// Polynomial coefficients, constant term first (E2).
    pub polynomial: Option<Vec<String>>,
    pub gamma: Option<String>,
    pub rho: Option<String>,
    /// Rotation number(s) (E4 uses the first, E6 the whole vector).
    pub alpha: Option<Vec<String>>,
    pub characters: Option<Vec<i64>>,
    pub polynomials: Option<Vec<Vec<i64>>>,
    /// `(k, j)` pairs (E5).
    pub progressions: Option<Vec<[u64; 2]>>,
    pub r_max: Option<i64>,
    pub p_max: Option<u64>,
    /// Coefficients of the observables in the E3 nilsequence.
    pub coefficients: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    #[serde(default)]
    pub strictly_decreasing: bool,
    pub final_below: Option<f64>,
    /// Regression fixture; its `[<experiment name>]` table may set
    /// `final_below` and frozen `ladder` values.
    pub fixture: Option<PathBuf>,
    /// `(target, tol)` for every ladder value.
    pub value_near: Option<[f64; 2]>,
    pub max_drift: Option<f64>,
    pub max_modulus: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_json")]
    pub json: String,
    #[serde(default = "default_csv")]
    pub csv: String,
}

fn default_json() -> String {
    "results.json".into()
}

fn default_csv() -> String {
    "ladder.csv".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { json: default_json(), csv: default_csv() }
    }
}

/// Default cap on the largest series index an experiment may touch.
pub const DEFAULT_MAX_INDEX: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    #[serde(default = "default_max_index")]
    pub max_index: u64,
}

fn default_max_index() -> u64 {
    DEFAULT_MAX_INDEX
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_index: DEFAULT_MAX_INDEX }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    pub system: Option<SystemDescription>,
    #[serde(default)]
    pub observables: Vec<Observable>,
    pub weight: Option<WeightSpec>,
    #[serde(default)]
    pub statistic: StatisticParams,
    #[serde(default)]
    pub assertions: Assertions,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub limits: Limits,
    /// Raw text the config was parsed from, echoed into run records.
    #[serde(skip)]
    pub source: String,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub(crate) fn number(s: &str, what: &str) -> Result<f64> {
    Number::parse(s).map(|n| n.to_f64()).map_err(|e| schema(format!("{what}: {e}")))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c: ExperimentConfig = toml::from_str(text).map_err(|e| schema(e.to_string()))?;
        c.source = text.to_string();
        Ok(c)
    }

    /// Parses `path`; relative paths inside (fixture, algebra file) resolve
    /// against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut c = ExperimentConfig::parse(&text)?;
        let dir = path.parent().map(Path::to_path_buf);
        if let (Some(sys), Some(d)) = (c.system.as_mut(), dir.as_ref()) {
            if let Some(f) = sys.algebra_file.as_mut() {
                if f.is_relative() {
                    *f = d.join(&*f);
                }
            }
        }
        c.base_dir = dir;
        Ok(c)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        match &self.base_dir {
            Some(d) if p.is_relative() => d.join(p),
            _ => p.to_path_buf(),
        }
    }

    pub fn weight_spec(&self) -> WeightSpec {
        self.weight.clone().unwrap_or(WeightSpec::Mobius)
    }

    /// `(H, M)` rungs in configured order.
    pub fn ladder(&self) -> Result<Vec<(u64, u64)>> {
        let s = &self.statistic;
        let rungs: Vec<(u64, u64)> = match (&s.ladder, &s.h) {
            (Some(l), None) => l.iter().map(|&[h, m]| (h, m)).collect(),
            (None, Some(hs)) => {
                let f = s.m_factor.ok_or_else(|| schema("statistic.h needs statistic.m_factor"))?;
                hs.iter().map(|&h| (h, f * h * h)).collect()
            }
            (Some(_), Some(_)) => return Err(schema("give either statistic.ladder or statistic.h, not both")),
            (None, None) => return Err(schema("missing ladder: set statistic.h and statistic.m_factor, or statistic.ladder")),
        };
        if rungs.is_empty() || rungs.iter().any(|&(h, m)| h == 0 || m == 0) {
            return Err(schema("ladder rungs need H, M >= 1"));
        }
        Ok(rungs)
    }

    fn needs(&self, field: bool, name: &str) -> Result<()> {
        if field {
            Ok(())
        } else {
            Err(schema(format!("{} requires {name}", self.experiment)))
        }
    }

    /// Checks everything that can be checked without running.
    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        let s = &self.statistic;
        match self.experiment {
            CorollaryCDecay | TheoremENilsequence | CorollaryHProgressions | KbszSweep => {
                self.needs(self.system.is_some(), "[system]")?;
                self.needs(!self.observables.is_empty(), "[[observables]]")?;
                let (sys, _) = crate::dynamics::AffineSystem::from_description(self.system.as_ref().expect("checked"))?;
                for f in &self.observables {
                    f.check(sys.nilmanifold())?;
                }
            }
            _ => {}
        }
        match self.experiment {
            CorollaryCDecay | PropDPolynomial | TheoremENilsequence | CorollaryFMulticorrelation | CorollaryHProgressions => {
                let rungs = self.ladder()?;
                let top = rungs.iter().map(|&(h, m)| 2 * m + h).max().unwrap_or(0);
                let k = s.progressions.iter().flatten().map(|p| p[0]).max().unwrap_or(1);
                if top.saturating_mul(k) > self.limits.max_index {
                    return Err(Error::ResourceCap(format!(
                        "ladder needs series indices up to {}, above limits.max_index = {}",
                        top.saturating_mul(k),
                        self.limits.max_index
                    )));
                }
            }
            _ => {}
        }
        match self.experiment {
            PropDPolynomial => {
                let p = s.polynomial.as_ref();
                self.needs(p.is_some_and(|p| p.len() >= 2), "statistic.polynomial with degree >= 1")?;
                for c in p.expect("checked") {
                    number(c, "statistic.polynomial")?;
                }
                for v in [&s.gamma, &s.rho].into_iter().flatten() {
                    number(v, "statistic.gamma/rho")?;
                }
            }
            TheoremENilsequence => {
                if let Some(c) = &s.coefficients {
                    if c.len() != self.observables.len() {
                        return Err(schema("statistic.coefficients must match the observables"));
                    }
                }
            }
            CorollaryFMulticorrelation => {
                self.needs(s.alpha.as_ref().is_some_and(|a| !a.is_empty()), "statistic.alpha")?;
                self.needs(s.characters.is_some() && s.polynomials.is_some(), "statistic.characters and statistic.polynomials")?;
                number(&s.alpha.as_ref().expect("checked")[0], "statistic.alpha")?;
            }
            CorollaryHProgressions => {
                let p = s.progressions.as_ref();
                self.needs(p.is_some_and(|p| !p.is_empty()), "statistic.progressions")?;
                if p.expect("checked").iter().any(|&[k, j]| k == 0 || j >= k) {
                    return Err(schema("progressions need k >= 1 and 0 <= j < k"));
                }
                self.needs(s.n.is_some(), "statistic.n")?;
            }
            JoiningProbe => {
                self.needs(s.alpha.as_ref().is_some_and(|a| !a.is_empty()), "statistic.alpha")?;
                for a in s.alpha.as_ref().expect("checked") {
                    number(a, "statistic.alpha")?;
                }
                self.needs(s.n.is_some() && s.r_max.is_some_and(|r| r >= 1), "statistic.n and statistic.r_max")?;
            }
            KbszSweep => {
                self.needs(s.n.is_some() && s.p_max.is_some_and(|p| p >= 3), "statistic.n and statistic.p_max >= 3")?;
                let top = s.p_max.expect("checked") * s.n.expect("checked");
                if top > self.limits.max_index {
                    return Err(Error::ResourceCap(format!("p_max * n = {top} above limits.max_index")));
                }
            }
            CorollaryCDecay => {}
        }
        Ok(())
    }
}
