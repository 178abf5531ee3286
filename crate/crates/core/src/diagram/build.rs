use std::cmp::Ordering;

use super::crossing::{symbolic_crossing, Crossing, FieldId};
use super::field::{enumerate_fields, CrossingField, FieldKind};
use crate::grid::GridLink;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// The over strand: the tail of the Gauss arrow.
    Over,
    /// The under strand: the head of the Gauss arrow.
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub crossing: usize,
    pub role: Role,
}

/// Crossings of a projected link plus the order of their `2n` endpoints
/// along the global parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub component_count: usize,
    pub crossings: Vec<Crossing>,
    pub endpoints: Vec<Endpoint>,
}

/// Comparable summary of a diagram: the sorted crossing multiset and the
/// endpoint sequence, both expressed through passage indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSignature {
    /// `(over t, under t, sign, type code, field)` sorted.
    pub crossings: Vec<(usize, usize, i8, u8, FieldId)>,
    /// `(t, role, over t, under t)` in endpoint order.
    pub endpoints: Vec<(usize, Role, usize, usize)>,
}

impl PlanarDiagram {
    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub(crate) fn from_crossings(component_count: usize, crossings: Vec<Crossing>) -> Self {
        let mut endpoints: Vec<Endpoint> = (0..crossings.len())
            .flat_map(|c| [Endpoint { crossing: c, role: Role::Over }, Endpoint { crossing: c, role: Role::Under }])
            .collect();
        let key = |e: &Endpoint| {
            let c = &crossings[e.crossing];
            match e.role {
                Role::Over => (c.over.t, c.position_over),
                Role::Under => (c.under.t, c.position_under),
            }
        };
        endpoints.sort_by(|a, b| {
            let (ta, pa) = key(a);
            let (tb, pb) = key(b);
            ta.cmp(&tb).then_with(|| pa.partial_cmp(&pb).unwrap_or(Ordering::Equal))
        });
        Self { component_count, crossings, endpoints }
    }

    pub fn signature(&self) -> DiagramSignature {
        let mut crossings: Vec<_> =
            self.crossings.iter().map(|c| (c.over.t, c.under.t, c.sign, c.crossing_type.code(), c.field)).collect();
        crossings.sort();
        let endpoints = self
            .endpoints
            .iter()
            .map(|e| {
                let c = &self.crossings[e.crossing];
                let t = if e.role == Role::Over { c.over.t } else { c.under.t };
                (t, e.role, c.over.t, c.under.t)
            })
            .collect();
        DiagramSignature { crossings, endpoints }
    }
}

/// The crossings of one field: every pair whose strand of the field's
/// over-colour lies strictly above the other.
pub fn field_crossings(field: &CrossingField) -> Vec<Crossing> {
    let id = FieldId { kind: field.kind, x: field.corner.0, y: field.corner.1 };
    let (overs, unders) = match field.kind {
        FieldKind::GreenOver => (&field.greens, &field.reds),
        FieldKind::RedOver => (&field.reds, &field.greens),
    };
    let mut out = Vec::new();
    for o in overs {
        for u in unders.iter().take_while(|u| u.z < o.z) {
            out.push(symbolic_crossing(id, *o, *u));
        }
    }
    out
}

/// Projects a link under the canonical infinitesimal shear.
pub fn build_diagram(link: &GridLink) -> PlanarDiagram {
    let crossings = enumerate_fields(link).iter().flat_map(field_crossings).collect();
    PlanarDiagram::from_crossings(link.component_count(), crossings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_hopf_link, make_unknot, Axis, LatticePoint, Passage};

    fn strand(axis: Axis, t: usize, z: i32, anchor: (i32, i32)) -> Passage {
        Passage { component: 0, t, axis, direction: 1, z, anchor: LatticePoint::new(anchor.0, anchor.1, z) }
    }

    fn field(kind: FieldKind, greens: &[i32], reds: &[i32]) -> CrossingField {
        let (x, y) = (1, 1);
        let (g_anchor, r_anchor) = match kind {
            FieldKind::RedOver => ((x, y), (x, y - 1)),
            FieldKind::GreenOver => ((x - 1, y), (x, y)),
        };
        CrossingField {
            corner: (x, y),
            kind,
            greens: greens.iter().enumerate().map(|(i, &z)| strand(Axis::X, i, z, g_anchor)).collect(),
            reds: reds.iter().enumerate().map(|(i, &z)| strand(Axis::Y, 10 + i, z, r_anchor)).collect(),
        }
    }

    #[test]
    fn red_over_single_pair() {
        let c = field_crossings(&field(FieldKind::RedOver, &[1], &[2]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].over.axis, Axis::Y);
        assert!(field_crossings(&field(FieldKind::GreenOver, &[1], &[2])).is_empty());
    }

    #[test]
    fn green_over_pairs_match_brute_force() {
        let (g, r) = ([2, 4], [1, 3, 5]);
        let c = field_crossings(&field(FieldKind::GreenOver, &g, &r));
        let brute = g.iter().flat_map(|a| r.iter().filter(move |b| a > *b)).count();
        assert_eq!(c.len(), brute);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn unknot_and_hopf() {
        assert_eq!(build_diagram(&make_unknot(4)).n(), 0);
        let d = build_diagram(&make_hopf_link());
        assert_eq!(d.n(), 2);
        assert!(d.crossings.iter().all(|c| c.is_mixed()));
        assert_eq!(d.crossings[0].sign, d.crossings[1].sign);
        assert_eq!(d.endpoints.len(), 4);
    }
}
