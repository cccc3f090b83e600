//! TOML run configuration: schedules, layouts, the map and run limits.

use std::path::PathBuf;

use serde::Deserialize;
use thiserror::Error;

use moran_core::analysis::DEFAULT_NODE_BUDGET;
use moran_core::{
    parse_rational, Address, EventuallyPeriodic, LayoutRule, MoranSet, ParameterSchedule, Rational, SectionPairingMap,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid value for `{key}`: {source}")]
    Validation {
        key: String,
        #[source]
        source: moran_core::Error,
    },
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::Parse { .. } => "ParseError",
            ConfigError::Validation { .. } | ConfigError::Invalid { .. } => "ValidationError",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schedule: RawSchedule,
    #[serde(default)]
    layout: Option<RawLayout>,
    #[serde(default)]
    target: Option<RawTarget>,
    #[serde(default)]
    map: Option<RawMap>,
    #[serde(default)]
    run: RawRun,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchedule {
    #[serde(default)]
    n_preamble: Vec<u32>,
    n_period: Vec<u32>,
    #[serde(default)]
    r_preamble: Vec<String>,
    r_period: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLayout {
    kind: String,
    #[serde(default)]
    offsets_preamble: Vec<Vec<String>>,
    #[serde(default)]
    offsets_period: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    #[serde(default)]
    schedule: Option<RawSchedule>,
    #[serde(default)]
    layout: Option<RawLayout>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    pairs: Vec<[String; 2]>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    depth: Option<usize>,
    node_budget: Option<u64>,
    lipschitz_depth: Option<usize>,
    max_depth: Option<usize>,
    certify_depth: Option<usize>,
    out: Option<PathBuf>,
}

/// Limits with their defaults filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunLimits {
    pub depth: usize,
    pub node_budget: u64,
    pub lipschitz_depth: usize,
    pub max_depth: usize,
    pub certify_depth: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunLimits {
    fn default() -> Self {
        RunLimits {
            depth: 6,
            node_budget: DEFAULT_NODE_BUDGET,
            lipschitz_depth: 6,
            max_depth: 20,
            certify_depth: 6,
            out: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: MoranSet,
    pub target: MoranSet,
    /// Pairs from `[map]` as written.
    pub map_pairs: Option<Vec<(Address, Address)>>,
    /// The validated map; `None` without `[map]` or when validation was deferred.
    pub map: Option<SectionPairingMap>,
    pub limits: RunLimits,
}

fn rationals(key: &str, values: &[String]) -> Result<Vec<Rational>, ConfigError> {
    values
        .iter()
        .map(|v| {
            parse_rational(v).map_err(|source| ConfigError::Validation {
                key: key.to_string(),
                source,
            })
        })
        .collect()
}

fn build_schedule(prefix: &str, raw: &RawSchedule) -> Result<ParameterSchedule, ConfigError> {
    let r_pre = rationals(&format!("{prefix}.r_preamble"), &raw.r_preamble)?;
    let r_per = rationals(&format!("{prefix}.r_period"), &raw.r_period)?;
    ParameterSchedule::new(raw.n_preamble.clone(), raw.n_period.clone(), r_pre, r_per).map_err(|source| {
        ConfigError::Validation {
            key: prefix.to_string(),
            source,
        }
    })
}

fn build_layout(prefix: &str, raw: Option<&RawLayout>) -> Result<LayoutRule, ConfigError> {
    let Some(raw) = raw else {
        return Ok(LayoutRule::default());
    };
    let explicit_given = !raw.offsets_preamble.is_empty() || !raw.offsets_period.is_empty();
    let rule = match raw.kind.as_str() {
        "ends_anchored" => LayoutRule::EndsAnchored,
        "left_packed" => LayoutRule::LeftPacked,
        "right_packed" => LayoutRule::RightPacked,
        "explicit" => {
            let level = |key: &str, rows: &[Vec<String>]| {
                rows.iter()
                    .map(|row| rationals(key, row))
                    .collect::<Result<Vec<_>, _>>()
            };
            let pre = level(&format!("{prefix}.offsets_preamble"), &raw.offsets_preamble)?;
            let per = level(&format!("{prefix}.offsets_period"), &raw.offsets_period)?;
            LayoutRule::Explicit(
                EventuallyPeriodic::new(pre, per).map_err(|source| ConfigError::Validation {
                    key: format!("{prefix}.offsets_period"),
                    source,
                })?,
            )
        }
        other => {
            return Err(ConfigError::Invalid {
                key: format!("{prefix}.kind"),
                message: format!(
                    "unknown layout `{other}` (expected ends_anchored, left_packed, right_packed or explicit)"
                ),
            })
        }
    };
    if explicit_given && !matches!(rule, LayoutRule::Explicit(_)) {
        return Err(ConfigError::Invalid {
            key: format!("{prefix}.kind"),
            message: "offsets are only allowed with kind = \"explicit\"".into(),
        });
    }
    Ok(rule)
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

/// Parses and validates a configuration document, including the map.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, true)
}

/// As [`parse_config`], but leaves map validation to the caller so that
/// violations can be reported rather than treated as a parse failure.
pub fn parse_config_deferred(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, false)
}

fn parse_config_with(text: &str, validate_map: bool) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
        ConfigError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;

    let schedule = build_schedule("schedule", &raw.schedule)?;
    let layout = build_layout("layout", raw.layout.as_ref())?;
    let source = MoranSet::new(schedule.clone(), layout.clone()).map_err(|source| ConfigError::Validation {
        key: "layout".into(),
        source,
    })?;

    let target = match &raw.target {
        None => source.clone(),
        Some(t) => {
            let schedule = match &t.schedule {
                Some(s) => build_schedule("target.schedule", s)?,
                None => schedule,
            };
            let layout = match &t.layout {
                Some(_) => build_layout("target.layout", t.layout.as_ref())?,
                None => layout,
            };
            MoranSet::new(schedule, layout).map_err(|source| ConfigError::Validation {
                key: "target.layout".into(),
                source,
            })?
        }
    };

    let map_pairs = match &raw.map {
        None => None,
        Some(m) => {
            let pairs = m
                .pairs
                .iter()
                .map(|[a, b]| {
                    let parse = |s: &str| {
                        s.parse::<Address>().map_err(|source| ConfigError::Validation {
                            key: "map.pairs".into(),
                            source,
                        })
                    };
                    Ok((parse(a)?, parse(b)?))
                })
                .collect::<Result<Vec<_>, ConfigError>>()?;
            Some(pairs)
        }
    };
    let map = match &map_pairs {
        Some(pairs) if validate_map => Some(
            SectionPairingMap::new(source.clone(), target.clone(), pairs.clone()).map_err(|source| {
                ConfigError::Validation {
                    key: "map.pairs".into(),
                    source,
                }
            })?,
        ),
        _ => None,
    };

    let defaults = RunLimits::default();
    let limits = RunLimits {
        depth: raw.run.depth.unwrap_or(defaults.depth),
        node_budget: raw.run.node_budget.unwrap_or(defaults.node_budget),
        lipschitz_depth: raw.run.lipschitz_depth.unwrap_or(defaults.lipschitz_depth),
        max_depth: raw.run.max_depth.unwrap_or(defaults.max_depth),
        certify_depth: raw.run.certify_depth.unwrap_or(defaults.certify_depth),
        out: raw.run.out,
    };
    Ok(RunConfig {
        source,
        target,
        map_pairs,
        map,
        limits,
    })
}
