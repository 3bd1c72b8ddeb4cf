use std::fmt;
use std::str::FromStr;

use super::GroupError;

/// Largest `n` accepted for `C<n>` and `D<n>`.
pub const MAX_AXIS_ORDER: u32 = 120;

/// Rotation group family (Type 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl Family {
    pub fn order(self) -> usize {
        match self {
            Family::Cyclic(n) => n as usize,
            Family::Dihedral(n) => 2 * n as usize,
            Family::Tetrahedral => 12,
            Family::Octahedral => 24,
            Family::Icosahedral => 60,
        }
    }

    /// Whether all elements have rational entries in the standard placement.
    pub fn is_rational(self) -> bool {
        match self {
            Family::Cyclic(n) | Family::Dihedral(n) => matches!(n, 1 | 2 | 4),
            Family::Tetrahedral | Family::Octahedral => true,
            Family::Icosahedral => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "C{n}"),
            Family::Dihedral(n) => write!(f, "D{n}"),
            Family::Tetrahedral => f.write_str("T"),
            Family::Octahedral => f.write_str("O"),
            Family::Icosahedral => f.write_str("I"),
        }
    }
}

/// A point group by name: a rotation group, its extension by the central
/// inversion `J = −I`, or `G₁ ∪ J(G₂ ∖ G₁)` for an index-2 subgroup `G₁ ⊂ G₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Rotation(Family),
    WithInversion(Family),
    Mixed { group: Family, subgroup: Family },
}

impl GroupSpec {
    pub fn order(self) -> usize {
        match self {
            GroupSpec::Rotation(f) => f.order(),
            GroupSpec::WithInversion(f) => 2 * f.order(),
            GroupSpec::Mixed { group, .. } => group.order(),
        }
    }

    pub fn is_rational(self) -> bool {
        match self {
            GroupSpec::Rotation(f) | GroupSpec::WithInversion(f) => f.is_rational(),
            GroupSpec::Mixed { group, subgroup } => group.is_rational() && subgroup.is_rational(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Rotation(g) => write!(f, "{g}"),
            GroupSpec::WithInversion(g) => write!(f, "{g}i"),
            GroupSpec::Mixed { group, subgroup } => write!(f, "type3:{group}/{subgroup}"),
        }
    }
}

fn parse_family(s: &str) -> Result<Family, GroupError> {
    let bad = || GroupError::Parse(s.to_string());
    let mut chars = s.chars();
    let head = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    let axis = |ctor: fn(u32) -> Family| -> Result<Family, GroupError> {
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.len() > 6 {
            return Err(bad());
        }
        let n: u32 = rest.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        if n > MAX_AXIS_ORDER {
            return Err(GroupError::TooLarge(n as usize));
        }
        Ok(ctor(n))
    };
    match (head, rest.is_empty()) {
        ('C', _) => axis(Family::Cyclic),
        ('D', _) => axis(Family::Dihedral),
        ('T', true) => Ok(Family::Tetrahedral),
        ('O', true) => Ok(Family::Octahedral),
        ('I', true) => Ok(Family::Icosahedral),
        _ => Err(bad()),
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Accepts `C<n>`, `D<n>`, `T`, `O`, `I`, any of these with a trailing
    /// `i` (adjoin `J`), and `type3:<G2>/<G1>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("type3:") {
            let (g2, g1) = body
                .split_once('/')
                .ok_or_else(|| GroupError::Parse(s.to_string()))?;
            return Ok(GroupSpec::Mixed {
                group: parse_family(g2.trim())?,
                subgroup: parse_family(g1.trim())?,
            });
        }
        if let Some(base) = s.strip_suffix('i') {
            return parse_family(base).map(GroupSpec::WithInversion);
        }
        parse_family(s).map(GroupSpec::Rotation)
    }
}
