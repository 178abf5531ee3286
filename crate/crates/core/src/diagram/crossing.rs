use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use super::field::FieldKind;
use crate::grid::{Axis, Passage};

/// Key of a crossing field: over-colour and lattice corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    pub kind: FieldKind,
    pub x: i32,
    pub y: i32,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            FieldKind::GreenOver => "GO",
            FieldKind::RedOver => "RO",
        };
        write!(f, "{k}({},{})", self.x, self.y)
    }
}

/// One of the eight crossing types `x1..x8`.
///
/// Codes are assigned as `1 + 4*[red over] + 2*[over runs backwards] +
/// [under runs backwards]`, so `x1` is green over red with both strands
/// running in the positive direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingType {
    pub over: FieldKind,
    pub over_direction: i8,
    pub under_direction: i8,
}

impl CrossingType {
    pub const ALL: [CrossingType; 8] = {
        let mut out = [CrossingType { over: FieldKind::GreenOver, over_direction: 1, under_direction: 1 }; 8];
        let mut i = 0;
        while i < 8 {
            out[i] = CrossingType {
                over: if i & 4 == 0 { FieldKind::GreenOver } else { FieldKind::RedOver },
                over_direction: if i & 2 == 0 { 1 } else { -1 },
                under_direction: if i & 1 == 0 { 1 } else { -1 },
            };
            i += 1;
        }
        out
    };

    pub fn code(self) -> u8 {
        let red = u8::from(self.over == FieldKind::RedOver);
        1 + 4 * red + 2 * u8::from(self.over_direction < 0) + u8::from(self.under_direction < 0)
    }

    pub fn from_code(code: u8) -> Option<Self> {
        (1..=8).contains(&code).then(|| Self::ALL[usize::from(code - 1)])
    }

    /// Under-strand colour.
    pub fn under_axis(self) -> Axis {
        match self.over {
            FieldKind::GreenOver => Axis::Y,
            FieldKind::RedOver => Axis::X,
        }
    }

    /// Right-hand-rule sign: the sign of `over x under` seen from above.
    pub fn sign(self) -> i8 {
        let green_red = self.over_direction * self.under_direction;
        match self.over {
            FieldKind::GreenOver => green_red,
            FieldKind::RedOver => -green_red,
        }
    }
}

impl fmt::Display for CrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.code())
    }
}

/// The fixed sign of every crossing type, in code order.
pub fn sign_table() -> [(CrossingType, i8); 8] {
    CrossingType::ALL.map(|c| (c, c.sign()))
}

/// Location of a crossing point along a passage, measured in the direction
/// of traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    /// `unit + shear * eps` for an infinitesimal positive `eps`.
    Symbolic { unit: i32, shear: i32 },
    /// Exact parameter in `(0, 1)` under a concrete projection.
    Exact(Ratio<i128>),
}

impl Position {
    /// Symbolic offset of a crossing from a passage's minimum corner,
    /// flipped when the passage runs backwards.
    pub fn along(direction: i8, unit: i32, shear: i32) -> Self {
        if direction > 0 {
            Position::Symbolic { unit, shear }
        } else {
            Position::Symbolic { unit: 1 - unit, shear: -shear }
        }
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Position::Symbolic { unit: a, shear: b }, Position::Symbolic { unit: c, shear: d }) => {
                Some((a, b).cmp(&(c, d)))
            }
            (Position::Exact(a), Position::Exact(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: Passage,
    pub under: Passage,
    pub field: FieldId,
    pub crossing_type: CrossingType,
    pub sign: i8,
    pub position_over: Position,
    pub position_under: Position,
}

impl Crossing {
    pub fn is_mixed(&self) -> bool {
        self.over.component != self.under.component
    }
}

/// Builds the crossing between an over and an under passage of different
/// colours, with positions from the infinitesimal shear.
pub(crate) fn symbolic_crossing(field: FieldId, over: Passage, under: Passage) -> Crossing {
    let (green, red) = if over.axis == Axis::X { (&over, &under) } else { (&under, &over) };
    let green_unit = red.anchor.x - green.anchor.x;
    let red_unit = green.anchor.y - red.anchor.y;
    let green_pos = Position::along(green.direction, green_unit, red.z - green.z);
    let red_pos = Position::along(red.direction, red_unit, green.z - red.z);
    let crossing_type =
        CrossingType { over: field.kind, over_direction: over.direction, under_direction: under.direction };
    let (position_over, position_under) =
        if over.axis == Axis::X { (green_pos, red_pos) } else { (red_pos, green_pos) };
    Crossing { over, under, field, crossing_type, sign: crossing_type.sign(), position_over, position_under }
}
