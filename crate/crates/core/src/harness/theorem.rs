use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::IneqError;

/// Every inequality the harness can sample and check. The wire id is the
/// string used in instance files, reports and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    SchwarzBall,
    SchwarzPair,
    TriangleBall,
    TrianglePair,
    GrussBall,
    GrussBallRefined,
    GrussPair,
    GrussPairRefined,
    BesselBall,
    BesselPair,
    OrthoGrussBall,
    OrthoGrussPair,
    LegacySchwarzBall,
    LegacySchwarzPair,
    LegacyTriangleBall,
    LegacyTrianglePair,
    LegacyGrussBall,
    LegacyGrussPair,
    LegacyBesselBall,
    LegacyBesselPair,
    IntegralSchwarzBall,
    IntegralSchwarzPair,
    IntegralSchwarzRange,
    IntegralTriangle,
    IntegralGruss,
}

/// Hypothesis and parameter layout shared by several theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `x, a, r`
    Ball,
    /// `x, y, pair`
    Pair,
    /// `x, y, m, M`
    Range,
    /// `x, y, e, r1, r2`
    GrussBall,
    /// `x, y, e, pair_x, pair_y`
    GrussPair,
    /// `x, family, lam, r`
    BesselBall,
    /// `x, family, gammas, big_gammas`
    BesselPair,
    /// `x, y, family, lam, mu, r1, r2`
    OrthoBall,
    /// `x, y, family, gammas, big_gammas, phis, big_phis`
    OrthoPair,
    /// `f, g, r` on a domain
    IntegralBall,
    /// `f, g, pair` on a domain
    IntegralPair,
    /// `f, g, m, M` on a domain
    IntegralRange,
    /// `f, g, h, pair_x, pair_y` on a domain
    IntegralGruss,
}

/// Extra restrictions some of the older bounds put on their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    None,
    /// `r < ‖a‖` or `r² < Σ|λ_i|²`
    RadiusBelowCenter,
    /// `Re(Γγ̄) > 0`, or `ΣRe(Γ_iγ̄_i) > 0` for sequences
    PositiveProduct,
    /// `r₁, r₂ ∈ (0, 1)`
    UnitRadii,
}

use TheoremId::*;

const TABLE: [(TheoremId, &str); 25] = [
    (SchwarzBall, "thm2.1"),
    (SchwarzPair, "thm2.2"),
    (TriangleBall, "prop2.3"),
    (TrianglePair, "prop2.4"),
    (GrussBall, "thm4.1"),
    (GrussBallRefined, "thm4.2"),
    (GrussPair, "thm4.3"),
    (GrussPairRefined, "thm4.4"),
    (BesselBall, "thm5.1"),
    (BesselPair, "thm5.2"),
    (OrthoGrussBall, "thm6.1"),
    (OrthoGrussPair, "thm6.2"),
    (LegacySchwarzBall, "legacy1.1"),
    (LegacySchwarzPair, "legacy1.3"),
    (LegacyTriangleBall, "legacy1.7"),
    (LegacyTrianglePair, "legacy1.8"),
    (LegacyGrussBall, "legacy1.10"),
    (LegacyGrussPair, "legacy1.13"),
    (LegacyBesselBall, "legacy1.18"),
    (LegacyBesselPair, "legacy1.20"),
    (IntegralSchwarzBall, "prop7.1"),
    (IntegralSchwarzPair, "prop7.2"),
    (IntegralSchwarzRange, "rem7.11"),
    (IntegralTriangle, "prop7.12"),
    (IntegralGruss, "prop7.3"),
];

impl TheoremId {
    /// All theorems in canonical order.
    pub fn all() -> Vec<TheoremId> {
        TABLE.iter().map(|(t, _)| *t).collect()
    }

    pub fn as_str(self) -> &'static str {
        TABLE.iter().find(|(t, _)| *t == self).unwrap().1
    }

    pub fn shape(self) -> Shape {
        match self {
            SchwarzBall | TriangleBall | LegacySchwarzBall | LegacyTriangleBall => Shape::Ball,
            SchwarzPair | LegacySchwarzPair => Shape::Pair,
            TrianglePair | LegacyTrianglePair => Shape::Range,
            GrussBall | GrussBallRefined | LegacyGrussBall => Shape::GrussBall,
            GrussPair | GrussPairRefined | LegacyGrussPair => Shape::GrussPair,
            BesselBall | LegacyBesselBall => Shape::BesselBall,
            BesselPair | LegacyBesselPair => Shape::BesselPair,
            OrthoGrussBall => Shape::OrthoBall,
            OrthoGrussPair => Shape::OrthoPair,
            IntegralSchwarzBall => Shape::IntegralBall,
            IntegralSchwarzPair => Shape::IntegralPair,
            IntegralSchwarzRange | IntegralTriangle => Shape::IntegralRange,
            IntegralGruss => Shape::IntegralGruss,
        }
    }

    pub fn restriction(self) -> Restriction {
        match self {
            LegacySchwarzBall | LegacyTriangleBall | LegacyBesselBall => {
                Restriction::RadiusBelowCenter
            }
            LegacySchwarzPair | LegacyGrussPair | LegacyBesselPair => Restriction::PositiveProduct,
            LegacyGrussBall => Restriction::UnitRadii,
            _ => Restriction::None,
        }
    }

    pub fn is_integral(self) -> bool {
        matches!(
            self.shape(),
            Shape::IntegralBall | Shape::IntegralPair | Shape::IntegralRange | Shape::IntegralGruss
        )
    }

    /// Parses a comma-separated list; `all` selects every theorem.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremId>, IneqError> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let ids = if part.eq_ignore_ascii_case("all") {
                Self::all()
            } else {
                vec![part.parse()?]
            };
            for t in ids {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = IneqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        TABLE
            .iter()
            .find(|(_, id)| *id == key)
            .map(|(t, _)| *t)
            .ok_or_else(|| IneqError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::all() {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(serde_json::from_str::<TheoremId>(&json).unwrap(), t);
        }
        assert!(matches!(
            "thm9.9".parse::<TheoremId>(),
            Err(IneqError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn list_parsing() {
        assert_eq!(
            TheoremId::parse_list("thm2.1, THM2.2").unwrap(),
            vec![SchwarzBall, SchwarzPair]
        );
        assert_eq!(TheoremId::parse_list("all").unwrap().len(), 25);
    }
}
