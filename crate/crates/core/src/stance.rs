use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A node's position on one topic.
///
/// The numeric encoding is fixed: `-1` unknown, `0` positive, `0.5` neutral,
/// `1` negative. Equations operate on [`Stance::value`]; the half-step
/// structure of the known states is exposed through [`Stance::step_toward`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stance {
    Unknown,
    Positive,
    Neutral,
    Negative,
}

impl Stance {
    pub const ALL: [Stance; 4] = [Stance::Unknown, Stance::Positive, Stance::Neutral, Stance::Negative];
    pub const KNOWN: [Stance; 3] = [Stance::Positive, Stance::Neutral, Stance::Negative];

    pub fn value(self) -> f64 {
        match self {
            Stance::Unknown => -1.0,
            Stance::Positive => 0.0,
            Stance::Neutral => 0.5,
            Stance::Negative => 1.0,
        }
    }

    pub fn from_value(value: f64) -> Result<Self> {
        if value == -1.0 {
            Ok(Stance::Unknown)
        } else if value == 0.0 {
            Ok(Stance::Positive)
        } else if value == 0.5 {
            Ok(Stance::Neutral)
        } else if value == 1.0 {
            Ok(Stance::Negative)
        } else {
            Err(Error::OffGridStance(value))
        }
    }

    pub fn is_known(self) -> bool {
        self != Stance::Unknown
    }

    /// Position of a known stance in half-steps from `Positive`.
    fn half_steps(self) -> Option<i8> {
        match self {
            Stance::Unknown => None,
            Stance::Positive => Some(0),
            Stance::Neutral => Some(1),
            Stance::Negative => Some(2),
        }
    }

    fn from_half_steps(steps: i8) -> Option<Self> {
        match steps {
            0 => Some(Stance::Positive),
            1 => Some(Stance::Neutral),
            2 => Some(Stance::Negative),
            _ => None,
        }
    }

    /// Moves a known stance one half-step toward `target`. Returns `None` when
    /// either stance is unknown.
    pub fn step_toward(self, target: Stance) -> Option<Stance> {
        let from = self.half_steps()?;
        let to = target.half_steps()?;
        Stance::from_half_steps(from + (to - from).signum())
    }

    /// Index into per-known-stance tables (`0`, `0.5`, `1`).
    pub fn known_index(self) -> Option<usize> {
        self.half_steps().map(|s| s as usize)
    }

    pub fn label(self) -> &'static str {
        match self {
            Stance::Unknown => "-1",
            Stance::Positive => "0",
            Stance::Neutral => "0.5",
            Stance::Negative => "1",
        }
    }
}

impl fmt::Display for Stance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Stance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("`{s}` is not a stance value")))?;
        Stance::from_value(value)
    }
}

impl Serialize for Stance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for Stance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = f64::deserialize(deserializer)?;
        Stance::from_value(value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        for s in Stance::ALL {
            assert_eq!(Stance::from_value(s.value()).unwrap(), s);
            assert_eq!(s.label().parse::<Stance>().unwrap(), s);
        }
    }

    #[test]
    fn off_grid_rejected() {
        assert_eq!(Stance::from_value(0.25), Err(Error::OffGridStance(0.25)));
        assert!("2".parse::<Stance>().is_err());
        assert!("x".parse::<Stance>().is_err());
    }

    #[test]
    fn half_step_moves() {
        use Stance::*;
        assert_eq!(Positive.step_toward(Negative), Some(Neutral));
        assert_eq!(Negative.step_toward(Positive), Some(Neutral));
        assert_eq!(Neutral.step_toward(Negative), Some(Negative));
        assert_eq!(Neutral.step_toward(Neutral), Some(Neutral));
        assert_eq!(Unknown.step_toward(Negative), None);
        assert_eq!(Positive.step_toward(Unknown), None);
    }

    #[test]
    fn json_uses_numeric_encoding() {
        let json = serde_json::to_string(&vec![Stance::Unknown, Stance::Neutral]).unwrap();
        assert_eq!(json, "[-1.0,0.5]");
        let back: Vec<Stance> = serde_json::from_str("[-1,0,0.5,1]").unwrap();
        assert_eq!(back, Stance::ALL.to_vec());
        assert!(serde_json::from_str::<Stance>("0.3").is_err());
    }
}
