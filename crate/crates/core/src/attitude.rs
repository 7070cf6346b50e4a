//! Perseverance update and the stance transition rule applied to one
//! receiver/influencer pair.

use crate::error::{Error, Result};
use crate::graph::NodeIndex;
use crate::stance::Stance;

/// One influencer's contribution to a receiver's perseverance update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceEvent {
    pub source: NodeIndex,
    pub source_stance: Stance,
    pub probability: f64,
}

/// Complemented XOR on the stance grid: `1` when the stances are equal.
pub fn agreement_indicator(t_u: Stance, t_v: Stance) -> u8 {
    u8::from(t_u == t_v)
}

/// New perseverance of a receiver holding `t_v` after the influence `events`:
///
/// `A' = A - sum_u (|t_u - t_v| * P - agree(t_u, t_v) * P) / k`, clamped to `[0, 1]`.
///
/// Disagreeing influence lowers `A`, agreeing influence raises it.
pub fn update_perseverance(perseverance: f64, events: &[InfluenceEvent], t_v: Stance) -> Result<f64> {
    if !(0.0..=1.0).contains(&perseverance) {
        return Err(Error::param(format!("perseverance {perseverance} outside [0, 1]")));
    }
    if events.is_empty() {
        return Err(Error::NoEvents);
    }
    let mut total = 0.0;
    for e in events {
        if !(0.0..=1.0).contains(&e.probability) {
            return Err(Error::param(format!("influence probability {} outside [0, 1]", e.probability)));
        }
        total += perseverance_term(e.source_stance, t_v, e.probability);
    }
    Ok((perseverance - total / events.len() as f64).clamp(0.0, 1.0))
}

#[inline]
pub(crate) fn perseverance_term(t_u: Stance, t_v: Stance, p: f64) -> f64 {
    (t_u.value() - t_v.value()).abs() * p - f64::from(agreement_indicator(t_u, t_v)) * p
}

/// Whether a receiver is treated as seeing the topic for the first time.
/// Unknown and neutral receivers adopt or fall back to neutral; receivers
/// with a committed stance move by at most half a step.
pub fn first_contact(t_v: Stance) -> bool {
    matches!(t_v, Stance::Unknown | Stance::Neutral)
}

/// Stance of receiver `t_v` after influence from `t_u` with probability `p`
/// against perseverance `a`.
///
/// First contact: adopt `t_u` when `p >= a`, otherwise become neutral.
/// Committed receivers keep their stance when they already agree or when
/// `p < a`; otherwise they move half a step toward `t_u`. A tie `p == a`
/// counts as `p > a`.
pub fn att_update(t_v: Stance, t_u: Stance, p: f64, a: f64) -> Result<Stance> {
    if !t_u.is_known() {
        return Err(Error::UnknownInfluencer);
    }
    if p.is_nan() || a.is_nan() {
        return Err(Error::param("probability and perseverance must be numbers"));
    }
    Ok(transition(t_v, t_u, p, a))
}

#[inline]
pub(crate) fn transition(t_v: Stance, t_u: Stance, p: f64, a: f64) -> Stance {
    debug_assert!(t_u.is_known());
    if first_contact(t_v) {
        if p >= a {
            t_u
        } else {
            Stance::Neutral
        }
    } else if t_u == t_v || p < a {
        t_v
    } else {
        t_v.step_toward(t_u).expect("known stances stay on the grid")
    }
}
