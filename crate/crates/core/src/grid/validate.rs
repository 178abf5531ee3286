use std::collections::HashMap;
use std::fmt;

use super::{GridLink, LatticePoint};

/// A broken grid-link invariant. Component and step indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonPositiveSize { size: i32 },
    EmptyComponent { component: usize },
    OpenCycle { component: usize, end: LatticePoint },
    OutOfBounds { component: usize, step: usize, point: LatticePoint },
    DuplicateEdge { from: LatticePoint, to: LatticePoint, first: (usize, usize), second: (usize, usize) },
    VertexCollision { point: LatticePoint, first: (usize, usize), second: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveSize { size } => write!(f, "size L={size} is not positive"),
            Violation::EmptyComponent { component } => {
                write!(f, "component {} has no moves", component + 1)
            }
            Violation::OpenCycle { component, end } => {
                write!(f, "component {} does not return to its start (ends at {end})", component + 1)
            }
            Violation::OutOfBounds { component, step, point } => {
                write!(f, "component {} leaves the box at step {step}: {point}", component + 1)
            }
            Violation::DuplicateEdge { from, to, first, second } => write!(
                f,
                "edge {from}-{to} used twice (component {} step {}, component {} step {})",
                first.0 + 1,
                first.1,
                second.0 + 1,
                second.1
            ),
            Violation::VertexCollision { point, first, second } => write!(
                f,
                "vertex {point} visited twice (component {} step {}, component {} step {})",
                first.0 + 1,
                first.1,
                second.0 + 1,
                second.1
            ),
        }
    }
}

/// Returns every invariant violation of `link`; empty means valid.
pub fn validate(link: &GridLink) -> Vec<Violation> {
    let mut out = Vec::new();
    let size = link.size();
    if size <= 0 {
        out.push(Violation::NonPositiveSize { size });
    }
    let mut vertices: HashMap<LatticePoint, (usize, usize)> = HashMap::new();
    let mut edges: HashMap<(LatticePoint, LatticePoint), (usize, usize)> = HashMap::new();

    for (ci, comp) in link.components().iter().enumerate() {
        if comp.moves.is_empty() {
            out.push(Violation::EmptyComponent { component: ci });
            continue;
        }
        let pts: Vec<LatticePoint> = comp.vertices().collect();
        let end = *pts.last().unwrap();
        let closed = end == comp.start;
        if !closed {
            out.push(Violation::OpenCycle { component: ci, end });
        }
        for (step, &p) in pts.iter().enumerate() {
            if !p.in_box(size) {
                out.push(Violation::OutOfBounds { component: ci, step, point: p });
            }
        }
        // The closing vertex of a cycle is the start vertex again.
        let distinct = if closed { &pts[..pts.len() - 1] } else { &pts[..] };
        for (step, &p) in distinct.iter().enumerate() {
            if let Some(&first) = vertices.get(&p) {
                out.push(Violation::VertexCollision { point: p, first, second: (ci, step) });
            } else {
                vertices.insert(p, (ci, step));
            }
        }
        for (step, w) in pts.windows(2).enumerate() {
            let key = if w[0] <= w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
            if let Some(&first) = edges.get(&key) {
                out.push(Violation::DuplicateEdge { from: key.0, to: key.1, first, second: (ci, step) });
            } else {
                edges.insert(key, (ci, step));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_unknot, Component, Move};

    fn square(start: LatticePoint) -> Component {
        Component::new(start, vec![Move::E, Move::N, Move::W, Move::S])
    }

    #[test]
    fn unknot_is_valid() {
        assert!(validate(&make_unknot(3)).is_empty());
    }

    #[test]
    fn doubled_square_has_duplicate_edges() {
        let mut c = square(LatticePoint::new(0, 0, 0));
        c.moves.extend_from_slice(&[Move::E, Move::N, Move::W, Move::S]);
        let v = validate(&GridLink::from_parts_unchecked(1, vec![c]));
        assert!(v.iter().any(|v| matches!(v, Violation::DuplicateEdge { .. })));
    }

    #[test]
    fn components_sharing_one_vertex_collide() {
        // Two unit squares in different planes meeting only at (1, 1, 0).
        let a = square(LatticePoint::new(0, 0, 0));
        let b = Component::new(LatticePoint::new(1, 1, 0), vec![Move::E, Move::U, Move::W, Move::D]);
        let link = GridLink::from_parts_unchecked(2, vec![a.clone(), b.clone()]);
        let v = validate(&link);

        // Brute-force vertex scan.
        let va: Vec<_> = a.vertices().take(4).collect();
        let vb: Vec<_> = b.vertices().take(4).collect();
        let shared: Vec<_> = va.iter().filter(|p| vb.contains(p)).collect();
        assert_eq!(shared, vec![&LatticePoint::new(1, 1, 0)]);

        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::VertexCollision { point, .. } if point == LatticePoint::new(1, 1, 0)));
    }

    #[test]
    fn open_and_out_of_bounds_are_reported() {
        let c = Component::new(LatticePoint::new(0, 0, 0), vec![Move::E, Move::E, Move::N]);
        let v = validate(&GridLink::from_parts_unchecked(1, vec![c]));
        assert!(v.iter().any(|v| matches!(v, Violation::OpenCycle { .. })));
        assert!(v.iter().any(|v| matches!(v, Violation::OutOfBounds { step: 2, .. })));
    }

    #[test]
    fn empty_component_is_reported() {
        let v = validate(&GridLink::from_parts_unchecked(1, vec![Component::new(LatticePoint::new(0, 0, 0), vec![])]));
        assert_eq!(v, vec![Violation::EmptyComponent { component: 0 }]);
    }
}
