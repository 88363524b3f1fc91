//! Radius coefficients promised for excluded-minor classes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What is known about the excluded minor `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GenusBound {
    /// The genus parameter: for a finite host, the largest Euler genus no
    /// surface of which holds `H`; for a locally finite host, the same for
    /// `K_max(|V(H)|+1, 5)`.
    Value(usize),
    /// `H = K6`: the excluded minor of linklessly embeddable graphs.
    Linkless,
    /// `H = K7`, for knotlessly embeddable graphs.
    Knotless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorClassDescriptor {
    /// Host graphs are finite rather than locally finite.
    pub finite: bool,
    pub planar: bool,
    pub apex: bool,
    pub genus: Option<GenusBound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RadiusBound {
    /// Balls of radius `c·r + ℓ`.
    Coefficient(f64),
    /// Balls of radius `r/2`.
    HalfRadius,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantLedgerEntry {
    pub descriptor: MinorClassDescriptor,
    pub bound: RadiusBound,
    /// Which rule produced the bound, e.g. `4γ+22`.
    pub rule: String,
}

/// The smallest radius coefficient available for the described class.
///
/// Planar graphs are apex, so `planar` without `apex` is inconsistent, as
/// is either flag next to a linkless or knotless class. A numeric genus is
/// needed unless a finite host with apex `H` makes it irrelevant.
pub fn c_h_ledger(d: MinorClassDescriptor) -> Result<ConstantLedgerEntry> {
    if d.planar && !d.apex {
        return Err(Error::invalid("a planar graph is also apex"));
    }
    let special = matches!(d.genus, Some(GenusBound::Linkless | GenusBound::Knotless));
    if special && (d.planar || d.apex) {
        return Err(Error::invalid("K6 and K7 are neither planar nor apex"));
    }
    let entry = |bound, rule: &str| {
        Ok(ConstantLedgerEntry {
            descriptor: d,
            bound,
            rule: rule.to_string(),
        })
    };
    match (d.finite, d.genus) {
        (true, Some(GenusBound::Linkless)) => entry(RadiusBound::Coefficient(22.0), "linkless"),
        (true, Some(GenusBound::Knotless)) => entry(RadiusBound::Coefficient(30.0), "knotless"),
        (false, Some(GenusBound::Linkless)) => entry(RadiusBound::Coefficient(60.0), "linkless"),
        (false, Some(GenusBound::Knotless)) => entry(RadiusBound::Coefficient(68.0), "knotless"),
        (true, _) if d.planar => entry(RadiusBound::HalfRadius, "planar"),
        (true, Some(GenusBound::Value(g))) if !d.apex => {
            entry(RadiusBound::Coefficient((4 * g + 22) as f64), "4γ+22")
        }
        (true, _) if d.apex => entry(RadiusBound::Coefficient(14.0), "apex"),
        (_, Some(GenusBound::Value(g))) if !d.finite => {
            entry(RadiusBound::Coefficient((8 * g + 44) as f64), "8γ+44")
        }
        _ => Err(Error::invalid("a genus bound is needed for this class")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(finite: bool, planar: bool, apex: bool, genus: Option<GenusBound>) -> MinorClassDescriptor {
        MinorClassDescriptor {
            finite,
            planar,
            apex,
            genus,
        }
    }

    fn coefficient(d: MinorClassDescriptor) -> RadiusBound {
        c_h_ledger(d).unwrap().bound
    }

    #[test]
    fn promised_values() {
        assert_eq!(coefficient(desc(true, false, true, None)), RadiusBound::Coefficient(14.0));
        assert_eq!(coefficient(desc(true, false, false, Some(GenusBound::Linkless))), RadiusBound::Coefficient(22.0));
        assert_eq!(coefficient(desc(true, false, false, Some(GenusBound::Knotless))), RadiusBound::Coefficient(30.0));
        assert_eq!(coefficient(desc(false, false, false, Some(GenusBound::Linkless))), RadiusBound::Coefficient(60.0));
        assert_eq!(coefficient(desc(false, false, false, Some(GenusBound::Knotless))), RadiusBound::Coefficient(68.0));
        assert_eq!(coefficient(desc(false, false, false, Some(GenusBound::Value(0)))), RadiusBound::Coefficient(44.0));
        assert_eq!(coefficient(desc(true, false, false, Some(GenusBound::Value(3)))), RadiusBound::Coefficient(34.0));
        assert_eq!(coefficient(desc(true, true, true, None)), RadiusBound::HalfRadius);
        // apex beats 4γ+22 whatever γ is
        assert_eq!(coefficient(desc(true, false, true, Some(GenusBound::Value(0)))), RadiusBound::Coefficient(14.0));
    }

    #[test]
    fn inconsistent_descriptors() {
        assert!(c_h_ledger(desc(true, true, false, None)).is_err());
        assert!(c_h_ledger(desc(true, false, true, Some(GenusBound::Linkless))).is_err());
        assert!(c_h_ledger(desc(true, false, false, None)).is_err());
        assert!(c_h_ledger(desc(false, true, true, None)).is_err());
    }

    #[test]
    fn keyed_json() {
        let e = c_h_ledger(desc(true, false, false, Some(GenusBound::Linkless))).unwrap();
        let json = serde_json::to_value(&e).unwrap();
        assert_eq!(json["bound"]["kind"], "coefficient");
        assert_eq!(json["bound"]["value"], 22.0);
        assert_eq!(json["descriptor"]["genus"]["kind"], "linkless");
    }
}
