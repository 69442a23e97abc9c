//! String operators of the four anyon types along oriented paths.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{boundary_path, classify_path, HexCoord, OrientedPath, Region};
use crate::pauli_ops::{DiagonalForm, PhasedXOperator};

/// Anyon types of the double semion model: vacuum, semion, anti-semion and
/// their bound state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AnyonLabel {
    #[serde(rename = "1")]
    Vacuum,
    #[serde(rename = "S")]
    Semion,
    #[serde(rename = "Sbar")]
    AntiSemion,
    #[serde(rename = "B")]
    Bound,
}

impl AnyonLabel {
    pub const ALL: [AnyonLabel; 4] =
        [AnyonLabel::Vacuum, AnyonLabel::Semion, AnyonLabel::AntiSemion, AnyonLabel::Bound];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL.get(i).copied().ok_or(Error::BadLabel(i))
    }

    pub fn symbol(self) -> &'static str {
        ["1", "S", "Sbar", "B"][self.index()]
    }

    /// Bits `(semion, bound)`: S = (1,0), B = (0,1), Sbar = (1,1).
    fn bits(self) -> (u8, u8) {
        match self {
            AnyonLabel::Vacuum => (0, 0),
            AnyonLabel::Semion => (1, 0),
            AnyonLabel::AntiSemion => (1, 1),
            AnyonLabel::Bound => (0, 1),
        }
    }

    fn from_bits(s: u8, b: u8) -> Self {
        match (s & 1, b & 1) {
            (0, 0) => AnyonLabel::Vacuum,
            (1, 0) => AnyonLabel::Semion,
            (1, 1) => AnyonLabel::AntiSemion,
            _ => AnyonLabel::Bound,
        }
    }

    /// Fusion product; the fusion rules form the group Z2 x Z2.
    pub fn fuse(self, other: AnyonLabel) -> AnyonLabel {
        let (s1, b1) = self.bits();
        let (s2, b2) = other.bits();
        Self::from_bits(s1 ^ s2, b1 ^ b2)
    }
}

impl fmt::Display for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for AnyonLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(AnyonLabel::Vacuum),
            "S" => Ok(AnyonLabel::Semion),
            "Sbar" | "S̄" => Ok(AnyonLabel::AntiSemion),
            "B" => Ok(AnyonLabel::Bound),
            _ => Err(Error::InvalidData(format!("unknown anyon label {s:?}"))),
        }
    }
}

/// `X` on the six edges of a plaquette.
pub fn plaquette_flip(p: HexCoord) -> PhasedXOperator {
    PhasedXOperator::x(p.edges())
}

/// `X` on the edge boundary of a region.
pub fn region_flip(region: &Region) -> PhasedXOperator {
    PhasedXOperator::x(region.boundary_edges())
}

/// Semion-like string: `X` along the path, `i^{b}` on each right leg and
/// `(-1)^{b_in (1 - b_out)}` at each left-turning vertex. `r_leg_exponent`
/// is 1 for the semion and 3 for the anti-semion.
fn chiral_string(path: &OrientedPath, r_leg_exponent: i64) -> PhasedXOperator {
    let class = classify_path(path);
    let mut form = DiagonalForm::zero();
    for leg in class.r_legs() {
        form.add_linear(leg, r_leg_exponent);
    }
    for (j, k) in class.l_vertices() {
        form.add_linear(j, 2);
        form.add_quadratic(j, k);
    }
    PhasedXOperator::new(path.edge_set(), form)
}

pub fn semion_string(path: &OrientedPath) -> PhasedXOperator {
    chiral_string(path, 1)
}

pub fn antisemion_string(path: &OrientedPath) -> PhasedXOperator {
    chiral_string(path, 3)
}

/// Product of `Z` over the right legs of the path.
pub fn bound_string(path: &OrientedPath) -> PhasedXOperator {
    PhasedXOperator::z(classify_path(path).r_legs())
}

pub fn string_operator(label: AnyonLabel, path: &OrientedPath) -> PhasedXOperator {
    match label {
        AnyonLabel::Vacuum => PhasedXOperator::identity(),
        AnyonLabel::Semion => semion_string(path),
        AnyonLabel::AntiSemion => antisemion_string(path),
        AnyonLabel::Bound => bound_string(path),
    }
}

/// Diagonal part of the square of the semion string: `Z` on each right leg
/// and `Z_in Z_out` at each left-turning vertex.
pub fn omega_ss_string(path: &OrientedPath) -> PhasedXOperator {
    let class = classify_path(path);
    let mut form = DiagonalForm::zero();
    for leg in class.r_legs() {
        form.add_linear(leg, 2);
    }
    for (j, k) in class.l_vertices() {
        form.add_linear(j, 2);
        form.add_linear(k, 2);
    }
    PhasedXOperator::diagonal(form)
}

/// `Omega_SS` times `Z` on the initial and final edges of an open path.
pub fn v_string(path: &OrientedPath) -> Result<PhasedXOperator> {
    if path.is_closed() {
        return Err(Error::ClosedPath);
    }
    let ends = PhasedXOperator::z([path.initial_edge(), path.final_edge()]);
    Ok(omega_ss_string(path).compose(&ends))
}

/// Closed counter-clockwise loop around a single plaquette.
pub fn plaquette_loop(p: HexCoord) -> OrientedPath {
    boundary_path(&Region::new([p])).remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::VertexId;

    fn zigzag() -> OrientedPath {
        let h = HexCoord::ORIGIN;
        let v: Vec<VertexId> = (0..4).map(|k| h.corner(k)).collect();
        OrientedPath::open(v).unwrap()
    }

    #[test]
    fn fusion_table() {
        use AnyonLabel::*;
        assert_eq!(Semion.fuse(Semion), Vacuum);
        assert_eq!(Semion.fuse(AntiSemion), Bound);
        assert_eq!(Semion.fuse(Bound), AntiSemion);
        assert_eq!(Bound.fuse(Bound), Vacuum);
    }

    #[test]
    fn antisemion_is_semion_times_bound() {
        let p = zigzag();
        assert_eq!(antisemion_string(&p), semion_string(&p).compose(&bound_string(&p)));
        let lp = plaquette_loop(HexCoord::ORIGIN);
        assert_eq!(antisemion_string(&lp), semion_string(&lp).compose(&bound_string(&lp)));
    }

    #[test]
    fn square_of_semion_string() {
        for p in [zigzag(), zigzag().reversed(), plaquette_loop(HexCoord::ORIGIN)] {
            let w = semion_string(&p);
            assert_eq!(w.compose(&w), omega_ss_string(&p));
        }
    }

    #[test]
    fn v_rejects_closed_paths() {
        assert!(v_string(&plaquette_loop(HexCoord::ORIGIN)).is_err());
    }
}
