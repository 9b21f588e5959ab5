//! Fault-type vocabulary: scenario fault types, label classes and the
//! four-output target encoding used by the modular classifier.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Simulatable fault event on phases R, Y, B with or without ground.
///
/// `Ryb` (a three-phase fault with no ground connection) is electrically
/// indistinguishable from `Rybg` on a balanced network — both are labeled as
/// the three-phase class — but it is kept as a distinct scenario so the
/// simulator can be driven with either wiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaultType {
    Rg,
    Yg,
    Bg,
    Ry,
    Rb,
    Yb,
    Ryg,
    Rbg,
    Ybg,
    Ryb,
    Rybg,
    None,
}

impl FaultType {
    /// The ten classifiable fault types, in label-class order.
    pub const TEN: [FaultType; 10] = [
        FaultType::Rg,
        FaultType::Yg,
        FaultType::Bg,
        FaultType::Ryg,
        FaultType::Rbg,
        FaultType::Ybg,
        FaultType::Rybg,
        FaultType::Ry,
        FaultType::Rb,
        FaultType::Yb,
    ];

    /// Involvement of phases (R, Y, B).
    pub fn phases(self) -> [bool; 3] {
        match self {
            FaultType::Rg => [true, false, false],
            FaultType::Yg => [false, true, false],
            FaultType::Bg => [false, false, true],
            FaultType::Ry | FaultType::Ryg => [true, true, false],
            FaultType::Rb | FaultType::Rbg => [true, false, true],
            FaultType::Yb | FaultType::Ybg => [false, true, true],
            FaultType::Ryb | FaultType::Rybg => [true, true, true],
            FaultType::None => [false, false, false],
        }
    }

    /// Whether the fault has a ground connection.
    pub fn grounded(self) -> bool {
        matches!(
            self,
            FaultType::Rg
                | FaultType::Yg
                | FaultType::Bg
                | FaultType::Ryg
                | FaultType::Rbg
                | FaultType::Ybg
                | FaultType::Rybg
        )
    }

    pub fn is_none(self) -> bool {
        matches!(self, FaultType::None)
    }

    /// Label class this scenario belongs to. `Ryb` collapses onto the
    /// three-phase class: the four-output code space has a single pattern for
    /// three-phase faults.
    pub fn label_class(self) -> FaultClass {
        match self {
            FaultType::Rg => FaultClass::Rg,
            FaultType::Yg => FaultClass::Yg,
            FaultType::Bg => FaultClass::Bg,
            FaultType::Ryg => FaultClass::Ryg,
            FaultType::Rbg => FaultClass::Rbg,
            FaultType::Ybg => FaultClass::Ybg,
            FaultType::Ryb | FaultType::Rybg => FaultClass::Rybg,
            FaultType::Ry => FaultClass::Ry,
            FaultType::Rb => FaultClass::Rb,
            FaultType::Yb => FaultClass::Yb,
            FaultType::None => FaultClass::NoFault,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FaultType::Rg => "R-G",
            FaultType::Yg => "Y-G",
            FaultType::Bg => "B-G",
            FaultType::Ry => "RY",
            FaultType::Rb => "RB",
            FaultType::Yb => "YB",
            FaultType::Ryg => "RY-G",
            FaultType::Rbg => "RB-G",
            FaultType::Ybg => "YB-G",
            FaultType::Ryb => "RYB",
            FaultType::Rybg => "RYB-G",
            FaultType::None => "NONE",
        }
    }
}

impl fmt::Display for FaultType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FaultType {
    type Err = Error;

    /// Case-insensitive; hyphens are ignored, so `R-Y-B-G`, `RYB-G` and
    /// `rybg` all parse to the same type.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-')
            .map(|c| c.to_ascii_uppercase())
            .collect();
        Ok(match key.as_str() {
            "RG" => FaultType::Rg,
            "YG" => FaultType::Yg,
            "BG" => FaultType::Bg,
            "RY" => FaultType::Ry,
            "RB" => FaultType::Rb,
            "YB" => FaultType::Yb,
            "RYG" => FaultType::Ryg,
            "RBG" => FaultType::Rbg,
            "YBG" => FaultType::Ybg,
            "RYB" => FaultType::Ryb,
            "RYBG" => FaultType::Rybg,
            "NONE" => FaultType::None,
            _ => return Err(Error::invalid(format!("unknown fault type {s:?}"))),
        })
    }
}

/// Classification target class: the ten fault classes plus "no fault".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaultClass {
    Rg,
    Yg,
    Bg,
    Ryg,
    Rbg,
    Ybg,
    Rybg,
    Ry,
    Rb,
    Yb,
    NoFault,
}

impl FaultClass {
    pub const ALL: [FaultClass; 11] = [
        FaultClass::Rg,
        FaultClass::Yg,
        FaultClass::Bg,
        FaultClass::Ryg,
        FaultClass::Rbg,
        FaultClass::Ybg,
        FaultClass::Rybg,
        FaultClass::Ry,
        FaultClass::Rb,
        FaultClass::Yb,
        FaultClass::NoFault,
    ];

    /// Stable index into 11-wide report arrays.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|c| *c == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            FaultClass::Rg => "R-G",
            FaultClass::Yg => "Y-G",
            FaultClass::Bg => "B-G",
            FaultClass::Ryg => "RY-G",
            FaultClass::Rbg => "RB-G",
            FaultClass::Ybg => "YB-G",
            FaultClass::Rybg => "RYB-G",
            FaultClass::Ry => "RY",
            FaultClass::Rb => "RB",
            FaultClass::Yb => "YB",
            FaultClass::NoFault => "NONE",
        }
    }
}

impl fmt::Display for FaultClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ground-truth targets attached to a simulated record: the four binary
/// phase/ground involvements, the decoded class name and the line section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaultLabel {
    /// +1 when phase R participates in the fault, -1 otherwise.
    pub r: i8,
    pub y: i8,
    pub b: i8,
    /// +1 when the fault involves ground.
    pub g: i8,
    pub class: FaultClass,
    /// +1 for faults before the midpoint capacitor, -1 after.
    pub section: i8,
}

impl FaultLabel {
    pub fn fault_name(&self) -> &'static str {
        self.class.name()
    }

    pub fn code(&self) -> (i8, i8, i8, i8) {
        (self.r, self.y, self.b, self.g)
    }
}

/// The four binary targets for a fault type, one row of the code table.
///
/// +1 marks involvement of the corresponding phase (or ground), -1 absence.
/// A three-phase fault maps to `(+1, +1, +1, +1)` whether or not it is
/// grounded: the code space has no ungrounded three-phase row. `NONE` maps to
/// all -1.
pub fn targets_from_fault_type(fault_type: FaultType) -> (i8, i8, i8, i8) {
    let [r, y, b] = fault_type.phases();
    let sign = |involved: bool| if involved { 1 } else { -1 };
    let g = match fault_type {
        FaultType::Ryb | FaultType::Rybg => 1,
        FaultType::None => -1,
        other => sign(other.grounded()),
    };
    (sign(r), sign(y), sign(b), g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_phase_ground_rows() {
        assert_eq!(targets_from_fault_type(FaultType::Rg), (1, -1, -1, 1));
        assert_eq!(targets_from_fault_type(FaultType::Yg), (-1, 1, -1, 1));
        assert_eq!(targets_from_fault_type(FaultType::Bg), (-1, -1, 1, 1));
    }

    #[test]
    fn phase_to_phase_rows() {
        assert_eq!(targets_from_fault_type(FaultType::Ry), (1, 1, -1, -1));
        assert_eq!(targets_from_fault_type(FaultType::Rb), (1, -1, 1, -1));
        assert_eq!(targets_from_fault_type(FaultType::Yb), (-1, 1, 1, -1));
    }

    #[test]
    fn three_phase_row_is_all_positive() {
        assert_eq!(targets_from_fault_type(FaultType::Rybg), (1, 1, 1, 1));
        // The ungrounded variant shares the same code: there is no separate row.
        assert_eq!(targets_from_fault_type(FaultType::Ryb), (1, 1, 1, 1));
    }

    #[test]
    fn none_is_all_negative() {
        assert_eq!(targets_from_fault_type(FaultType::None), (-1, -1, -1, -1));
    }

    /// The encoding must be injective over the ten classes plus NONE.
    #[test]
    fn targets_are_injective_over_label_classes() {
        let mut seen = std::collections::HashSet::new();
        let mut types: Vec<FaultType> = FaultType::TEN.to_vec();
        types.push(FaultType::None);
        for t in types {
            assert!(
                seen.insert(targets_from_fault_type(t)),
                "duplicate code for {t}"
            );
        }
        assert_eq!(seen.len(), 11);
    }

    #[test]
    fn parse_accepts_hyphen_variants() {
        assert_eq!("R-Y-B-G".parse::<FaultType>().unwrap(), FaultType::Rybg);
        assert_eq!("RYB-G".parse::<FaultType>().unwrap(), FaultType::Rybg);
        assert_eq!("Y-B".parse::<FaultType>().unwrap(), FaultType::Yb);
        assert_eq!("none".parse::<FaultType>().unwrap(), FaultType::None);
        assert!("XYZ".parse::<FaultType>().is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let mut all: Vec<FaultType> = FaultType::TEN.to_vec();
        all.push(FaultType::Ryb);
        all.push(FaultType::None);
        for t in all {
            assert_eq!(t.name().parse::<FaultType>().unwrap(), t);
        }
    }
}
