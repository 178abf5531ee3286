//! Grid links: closed lattice curves inside the box `[0, L]^3`.
//!
//! A [`GridLink`] is stored as a list of components, each a start vertex plus
//! a sequence of unit [`Move`]s. Components are concatenated in label order to
//! form one global parametrization; the position of a unit edge in that
//! concatenation is its arc index `t` (see [`Passage`]).

mod format;
mod generate;
mod validate;

use std::fmt;

pub use format::{parse_grid_link, parse_grid_link_unchecked, serialize_grid_link, ParseError};
pub use generate::{
    make_dense_fill, make_dense_pair, make_hopf_link, make_torus_link, make_unknot, mix_grid_link, random_grid_link,
    GenerateError,
};
pub use validate::{validate, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl LatticePoint {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Self { x, y, z }
    }

    pub fn step(self, mv: Move) -> Self {
        let (dx, dy, dz) = mv.delta();
        Self::new(self.x + dx, self.y + dy, self.z + dz)
    }

    pub fn in_box(self, size: i32) -> bool {
        (0..=size).contains(&self.x) && (0..=size).contains(&self.y) && (0..=size).contains(&self.z)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A unit step along one axis: `E`/`W` = ±x, `N`/`S` = ±y, `U`/`D` = ±z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    E,
    W,
    N,
    S,
    U,
    D,
}

impl Move {
    pub const ALL: [Move; 6] = [Move::E, Move::W, Move::N, Move::S, Move::U, Move::D];

    pub fn delta(self) -> (i32, i32, i32) {
        match self {
            Move::E => (1, 0, 0),
            Move::W => (-1, 0, 0),
            Move::N => (0, 1, 0),
            Move::S => (0, -1, 0),
            Move::U => (0, 0, 1),
            Move::D => (0, 0, -1),
        }
    }

    pub fn from_delta(dx: i32, dy: i32, dz: i32) -> Option<Move> {
        Move::ALL.into_iter().find(|m| m.delta() == (dx, dy, dz))
    }

    pub fn between(from: LatticePoint, to: LatticePoint) -> Option<Move> {
        Move::from_delta(to.x - from.x, to.y - from.y, to.z - from.z)
    }

    pub fn negate(self) -> Move {
        match self {
            Move::E => Move::W,
            Move::W => Move::E,
            Move::N => Move::S,
            Move::S => Move::N,
            Move::U => Move::D,
            Move::D => Move::U,
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Move::E | Move::W => Axis::X,
            Move::N | Move::S => Axis::Y,
            Move::U | Move::D => Axis::Z,
        }
    }

    /// `+1` for E/N/U, `-1` for W/S/D.
    pub fn direction(self) -> i8 {
        match self {
            Move::E | Move::N | Move::U => 1,
            Move::W | Move::S | Move::D => -1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::E => 'E',
            Move::W => 'W',
            Move::N => 'N',
            Move::S => 'S',
            Move::U => 'U',
            Move::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Move> {
        Move::ALL.into_iter().find(|m| m.letter() == c)
    }
}

/// Edge axis. X edges are drawn green, Y edges red, vertical Z edges blue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub start: LatticePoint,
    pub moves: Vec<Move>,
}

impl Component {
    pub fn new(start: LatticePoint, moves: Vec<Move>) -> Self {
        Self { start, moves }
    }

    /// Builds a closed component from its cyclic vertex list (the closing
    /// edge back to `cycle[0]` is implicit). Returns `None` if two
    /// consecutive vertices are not lattice neighbours.
    pub fn from_cycle(cycle: &[LatticePoint]) -> Option<Self> {
        let first = *cycle.first()?;
        let mut moves = Vec::with_capacity(cycle.len());
        for (i, &p) in cycle.iter().enumerate() {
            let q = cycle[(i + 1) % cycle.len()];
            moves.push(Move::between(p, q)?);
        }
        Some(Self::new(first, moves))
    }

    /// All visited vertices, including the final one (equal to `start` when
    /// the component closes).
    pub fn vertices(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        std::iter::once(self.start).chain(self.moves.iter().scan(self.start, |p, &m| {
            *p = p.step(m);
            Some(*p)
        }))
    }

    pub fn end(&self) -> LatticePoint {
        self.moves.iter().fold(self.start, |p, &m| p.step(m))
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.start, self.moves.iter().rev().map(|m| m.negate()).collect())
    }
}

/// One unit edge of a link together with its place in the parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    /// Zero-based component label.
    pub component: usize,
    /// Global arc index: components concatenated in label order.
    pub t: usize,
    pub axis: Axis,
    pub direction: i8,
    /// Height of the edge (lower endpoint for vertical edges).
    pub z: i32,
    /// Minimum corner of the edge.
    pub anchor: LatticePoint,
}

impl Passage {
    pub fn from_move(component: usize, t: usize, from: LatticePoint, mv: Move) -> Self {
        let to = from.step(mv);
        let anchor = LatticePoint::new(from.x.min(to.x), from.y.min(to.y), from.z.min(to.z));
        Self { component, t, axis: mv.axis(), direction: mv.direction(), z: anchor.z, anchor }
    }

    /// Traversal start vertex.
    pub fn start(&self) -> LatticePoint {
        if self.direction > 0 {
            self.anchor
        } else {
            self.far_corner()
        }
    }

    pub fn end(&self) -> LatticePoint {
        if self.direction > 0 {
            self.far_corner()
        } else {
            self.anchor
        }
    }

    fn far_corner(&self) -> LatticePoint {
        let a = self.anchor;
        match self.axis {
            Axis::X => LatticePoint::new(a.x + 1, a.y, a.z),
            Axis::Y => LatticePoint::new(a.x, a.y + 1, a.z),
            Axis::Z => LatticePoint::new(a.x, a.y, a.z + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error("invalid grid link: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// A grid knot or link of size `L`: every vertex lies in `[0, L]^3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridLink {
    size: i32,
    components: Vec<Component>,
}

impl GridLink {
    /// Builds a link and checks every invariant.
    pub fn new(size: i32, components: Vec<Component>) -> Result<Self, LinkError> {
        let link = Self::from_parts_unchecked(size, components);
        let violations = validate(&link);
        if violations.is_empty() {
            Ok(link)
        } else {
            Err(LinkError::Invalid(violations))
        }
    }

    /// Builds a link without validation. Downstream algorithms assume a
    /// valid link; use [`validate`] before trusting the result.
    pub fn from_parts_unchecked(size: i32, components: Vec<Component>) -> Self {
        Self { size, components }
    }

    /// Side length `L`.
    pub fn size(&self) -> i32 {
        self.size
    }

    /// `V = L^3`.
    pub fn volume(&self) -> i64 {
        i64::from(self.size).pow(3)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.moves.len()).sum()
    }

    /// Every unit edge in parametrization order; `passages()[t].t == t`.
    pub fn passages(&self) -> Vec<Passage> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (ci, comp) in self.components.iter().enumerate() {
            let mut p = comp.start;
            for &mv in &comp.moves {
                out.push(Passage::from_move(ci, out.len(), p, mv));
                p = p.step(mv);
            }
        }
        out
    }

    fn map_points(&self, f: impl Fn(LatticePoint) -> LatticePoint, g: impl Fn(Move) -> Move) -> Self {
        let components = self
            .components
            .iter()
            .map(|c| Component::new(f(c.start), c.moves.iter().map(|&m| g(m)).collect()))
            .collect();
        Self::from_parts_unchecked(self.size, components)
    }

    /// Shifts every vertex by `(dx, dy, dz)`. The result may leave the box.
    pub fn translated(&self, dx: i32, dy: i32, dz: i32) -> Self {
        self.map_points(|p| LatticePoint::new(p.x + dx, p.y + dy, p.z + dz), |m| m)
    }

    /// Translates so that the bounding box's minimum corner is the origin.
    pub fn normalized(&self) -> Self {
        let mut min = LatticePoint::new(i32::MAX, i32::MAX, i32::MAX);
        for p in self.components.iter().flat_map(|c| c.vertices()) {
            min = LatticePoint::new(min.x.min(p.x), min.y.min(p.y), min.z.min(p.z));
        }
        if min.x == i32::MAX {
            return self.clone();
        }
        self.translated(-min.x, -min.y, -min.z)
    }

    /// Reflects through the mid-plane orthogonal to `axis` (`c -> L - c`).
    pub fn mirrored(&self, axis: Axis) -> Self {
        let l = self.size;
        self.map_points(
            |p| match axis {
                Axis::X => LatticePoint::new(l - p.x, p.y, p.z),
                Axis::Y => LatticePoint::new(p.x, l - p.y, p.z),
                Axis::Z => LatticePoint::new(p.x, p.y, l - p.z),
            },
            |m| if m.axis() == axis { m.negate() } else { m },
        )
    }

    /// Reverses the orientation of component `index`.
    pub fn with_reversed_component(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.components[index] = out.components[index].reversed();
        out
    }

    /// Reorders components; `order[i]` is the old index of the new i-th component.
    pub fn with_component_order(&self, order: &[usize]) -> Self {
        Self::from_parts_unchecked(self.size, order.iter().map(|&i| self.components[i].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_negate_pairwise() {
        for m in Move::ALL {
            assert_eq!(m.negate().negate(), m);
            assert_ne!(m.negate(), m);
            let (dx, dy, dz) = m.delta();
            assert_eq!(m.negate().delta(), (-dx, -dy, -dz));
            assert_eq!(Move::from_letter(m.letter()), Some(m));
        }
    }

    #[test]
    fn passages_are_indexed_by_t() {
        let link = make_hopf_link();
        let passages = link.passages();
        assert_eq!(passages.len(), link.edge_count());
        for (i, p) in passages.iter().enumerate() {
            assert_eq!(p.t, i);
            assert_eq!(Move::between(p.start(), p.end()).unwrap().axis(), p.axis);
        }
        assert_eq!(passages.last().unwrap().component, 1);
    }

    #[test]
    fn normalize_moves_min_corner_to_origin() {
        let link = make_unknot(2).translated(1, 0, 3);
        let n = link.normalized();
        assert_eq!(n, make_unknot(2));
    }

    #[test]
    fn mirror_is_an_involution() {
        let link = make_torus_link(2);
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let m = link.mirrored(axis);
            assert!(validate(&m).is_empty());
            assert_eq!(m.mirrored(axis), link);
        }
    }
}
