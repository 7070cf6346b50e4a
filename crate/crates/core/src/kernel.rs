//! Pairwise influence: attitude similarity, transfer weight, stance factor,
//! and the composed influence probability `P_i(u, v)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::TopicId;
use crate::stance::Stance;

/// Which factor of the transfer weight enters the influence probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferMode {
    /// `P = (1 - W) * sim * f`, the formula as printed.
    #[default]
    Literal,
    /// `P = W * sim * f`.
    Complement,
}

/// Rate override for one ordered pair of node ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRate {
    pub source: String,
    pub target: String,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelParams {
    /// Stance factor for stances half a step apart.
    pub lambda: f64,
    /// Stance factor for opposed stances.
    pub mu: f64,
    /// Dissemination rate used for every pair without an override.
    pub rate: f64,
    /// Exposure window; same time unit as `1 / rate`.
    pub horizon: f64,
    pub transfer_interpretation: TransferMode,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edge_rates: Vec<EdgeRate>,
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams {
            lambda: 0.5,
            mu: 0.25,
            rate: 1.0,
            horizon: 1.0,
            transfer_interpretation: TransferMode::Literal,
            edge_rates: Vec::new(),
        }
    }
}

impl KernelParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("lambda", self.lambda), ("mu", self.mu)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::param(format!("{name} = {v} outside [0, 1]")));
            }
        }
        check_rate(self.rate)?;
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::param(format!("horizon = {} must be positive", self.horizon)));
        }
        for e in &self.edge_rates {
            check_rate(e.rate)?;
        }
        Ok(())
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if rate >= 0.0 && !rate.is_nan() {
        Ok(())
    } else {
        Err(Error::param(format!("rate = {rate} must be non-negative")))
    }
}

/// `sqrt(z) / (sqrt(z) + ||t_u - t_v||)`, in `(0, 1]`.
///
/// Unknown stances enter the distance at their numeric value `-1`.
pub fn attitude_similarity(t_u: &[Stance], t_v: &[Stance]) -> Result<f64> {
    if t_u.len() != t_v.len() {
        return Err(Error::LengthMismatch { left: t_u.len(), right: t_v.len() });
    }
    if t_u.is_empty() {
        return Err(Error::NoTopics);
    }
    Ok(similarity(t_u, t_v))
}

/// Unchecked form of [`attitude_similarity`] for equal-length, non-empty rows.
#[inline]
pub(crate) fn similarity(t_u: &[Stance], t_v: &[Stance]) -> f64 {
    let squared: f64 = t_u
        .iter()
        .zip(t_v)
        .map(|(a, b)| {
            let d = a.value() - b.value();
            d * d
        })
        .sum();
    let root_z = (t_u.len() as f64).sqrt();
    root_z / (root_z + squared.sqrt())
}

/// Probability that content crosses a link within `horizon`: `1 - exp(-rate * horizon)`.
pub fn transfer_weight(rate: f64, horizon: f64) -> Result<f64> {
    check_rate(rate)?;
    if horizon.is_nan() || horizon <= 0.0 {
        return Err(Error::param(format!("horizon = {horizon} must be positive")));
    }
    Ok(weight(rate, horizon))
}

#[inline]
fn weight(rate: f64, horizon: f64) -> f64 {
    -(-rate * horizon).exp_m1()
}

/// Weight of a stance held by the influencer `t_u` on the receiver `t_v`.
///
/// Cases are tested in order: receivers that are unknown, neutral, or already
/// agree get `1`; stances within half a step get `lambda`; the rest get `mu`.
pub fn stance_factor(t_v: Stance, t_u: Stance, params: &KernelParams) -> f64 {
    if matches!(t_v, Stance::Unknown | Stance::Neutral) || t_v == t_u {
        1.0
    } else if (t_v.value() - t_u.value()).abs() <= 0.5 {
        params.lambda
    } else {
        params.mu
    }
}

/// `P_i(u, v)`: influence of `u` (attitudes `t_u`) on `v` (attitudes `t_v`)
/// regarding `topic`, at the default rate.
pub fn influence_probability(
    t_u: &[Stance],
    t_v: &[Stance],
    topic: TopicId,
    params: &KernelParams,
) -> Result<f64> {
    influence_probability_at_rate(t_u, t_v, topic, params, params.rate)
}

pub fn influence_probability_at_rate(
    t_u: &[Stance],
    t_v: &[Stance],
    topic: TopicId,
    params: &KernelParams,
    rate: f64,
) -> Result<f64> {
    let sim = attitude_similarity(t_u, t_v)?;
    if topic >= t_u.len() {
        return Err(Error::TopicOutOfRange { topic, topic_count: t_u.len() });
    }
    let w = transfer_weight(rate, params.horizon)?;
    Ok(compose(w, sim, stance_factor(t_v[topic], t_u[topic], params), params.transfer_interpretation))
}

#[inline]
pub(crate) fn compose(w: f64, sim: f64, factor: f64, mode: TransferMode) -> f64 {
    let carried = match mode {
        TransferMode::Literal => 1.0 - w,
        TransferMode::Complement => w,
    };
    let p = carried * sim * factor;
    debug_assert!((0.0..=1.0).contains(&p), "influence probability {p} out of range");
    p.clamp(0.0, 1.0)
}

/// Precomputed kernel for one run: resolves per-pair rate overrides to
/// node indices so the engine can evaluate `P` without re-validating.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    params: KernelParams,
    default_weight: f64,
    overrides: std::collections::HashMap<(usize, usize), f64>,
}

impl Kernel {
    pub(crate) fn new(params: &KernelParams, graph: &crate::graph::SocialGraph) -> Result<Self> {
        params.validate()?;
        let mut overrides = std::collections::HashMap::new();
        for e in &params.edge_rates {
            let u = graph.index_of(&e.source).ok_or_else(|| Error::UnknownNode(e.source.clone()))?;
            let v = graph.index_of(&e.target).ok_or_else(|| Error::UnknownNode(e.target.clone()))?;
            overrides.insert((u, v), weight(e.rate, params.horizon));
        }
        Ok(Kernel {
            default_weight: weight(params.rate, params.horizon),
            params: params.clone(),
            overrides,
        })
    }

    #[inline]
    pub(crate) fn similarity(&self, t_u: &[Stance], t_v: &[Stance]) -> f64 {
        similarity(t_u, t_v)
    }

    /// `P_topic(u, v)` with `u`'s and `v`'s attitude rows.
    #[inline]
    pub(crate) fn probability(&self, u: usize, v: usize, t_u: &[Stance], t_v: &[Stance], topic: TopicId) -> f64 {
        let w = if self.overrides.is_empty() {
            self.default_weight
        } else {
            self.overrides.get(&(u, v)).copied().unwrap_or(self.default_weight)
        };
        let factor = stance_factor(t_v[topic], t_u[topic], &self.params);
        compose(w, similarity(t_u, t_v), factor, self.params.transfer_interpretation)
    }
}
