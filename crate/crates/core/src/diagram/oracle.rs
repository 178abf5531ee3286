//! Exact projection under a concrete shear `(x, y, z) -> (x + a z, y + b z)`.
//!
//! Independent of the field machinery: every pair of nearby edges is
//! intersected with integer arithmetic after scaling by the common
//! denominator of `a` and `b`.

use std::collections::HashMap;

use num_rational::Ratio;

use super::build::PlanarDiagram;
use super::crossing::{Crossing, CrossingType, FieldId, Position};
use super::field::FieldKind;
use crate::grid::{Axis, GridLink, LatticePoint, Passage};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("shear parameters must satisfy 0 < a, b < 1/{size}, got a={a}, b={b}")]
    InvalidShear { size: i32, a: Ratio<i64>, b: Ratio<i64> },
    #[error("shear denominators too large for exact 128-bit arithmetic")]
    TooFine,
    #[error("degenerate projection between edges t={first} and t={second}: {reason}")]
    Degenerate { first: usize, second: usize, reason: &'static str },
}

type Pt = (i128, i128);

fn cross(u: Pt, v: Pt) -> i128 {
    u.0 * v.1 - u.1 * v.0
}

fn sub(u: Pt, v: Pt) -> Pt {
    (u.0 - v.0, u.1 - v.1)
}

struct Projector {
    sx: i128,
    sz_x: i128,
    sz_y: i128,
}

impl Projector {
    fn project(&self, p: LatticePoint) -> Pt {
        let (x, y, z) = (i128::from(p.x), i128::from(p.y), i128::from(p.z));
        (x * self.sx + z * self.sz_x, y * self.sx + z * self.sz_y)
    }
}

/// Projects `link` under the shear `(a, b)` and returns its planar diagram.
pub fn oracle_shear_diagram(link: &GridLink, a: Ratio<i64>, b: Ratio<i64>) -> Result<PlanarDiagram, OracleError> {
    let size = link.size();
    let limit = Ratio::new(1, i64::from(size));
    if a <= Ratio::from_integer(0) || b <= Ratio::from_integer(0) || a >= limit || b >= limit {
        return Err(OracleError::InvalidShear { size, a, b });
    }
    let (an, ad) = (i128::from(*a.numer()), i128::from(*a.denom()));
    let (bn, bd) = (i128::from(*b.numer()), i128::from(*b.denom()));
    let scale = ad * bd;
    // Coordinates stay below 2 (L + 1) S; cross products of differences
    // must fit comfortably in i128.
    let bound = 4 * (i128::from(size) + 1) * scale;
    if bound.checked_mul(bound).and_then(|v| v.checked_mul(4)).is_none() {
        return Err(OracleError::TooFine);
    }
    let proj = Projector { sx: scale, sz_x: an * bd, sz_y: bn * ad };

    let passages = link.passages();
    let ends: Vec<(Pt, Pt)> = passages.iter().map(|p| (proj.project(p.start()), proj.project(p.end()))).collect();

    // First and last t of every component, for the consecutive-edge test.
    let mut bounds = Vec::new();
    let mut offset = 0;
    for c in link.components() {
        bounds.push((offset, offset + c.moves.len() - 1));
        offset += c.moves.len();
    }
    let consecutive = |p: &Passage, q: &Passage| {
        if p.component != q.component {
            return false;
        }
        let (lo, hi) = bounds[p.component];
        p.t.abs_diff(q.t) == 1 || (p.t.min(q.t) == lo && p.t.max(q.t) == hi)
    };

    let mut buckets: HashMap<(i32, i32), Vec<usize>> = HashMap::new();
    for (i, p) in passages.iter().enumerate() {
        buckets.entry((p.anchor.x, p.anchor.y)).or_default().push(i);
    }

    let mut crossings = Vec::new();
    for (i, p) in passages.iter().enumerate() {
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(cands) = buckets.get(&(p.anchor.x + dx, p.anchor.y + dy)) else { continue };
                for &j in cands.iter().filter(|&&j| j > i) {
                    let q = &passages[j];
                    if consecutive(p, q) {
                        continue;
                    }
                    if let Some(c) = intersect(p, ends[i], q, ends[j])? {
                        crossings.push(c);
                    }
                }
            }
        }
    }

    let mut per_passage: HashMap<usize, Vec<Ratio<i128>>> = HashMap::new();
    for c in &crossings {
        for (t, pos) in [(c.over.t, c.position_over), (c.under.t, c.position_under)] {
            if let Position::Exact(s) = pos {
                per_passage.entry(t).or_default().push(s);
            }
        }
    }
    for (&t, list) in per_passage.iter_mut() {
        list.sort();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(OracleError::Degenerate { first: t, second: t, reason: "triple point" });
        }
    }

    Ok(PlanarDiagram::from_crossings(link.component_count(), crossings))
}

fn intersect(
    p: &Passage,
    (p1, p2): (Pt, Pt),
    q: &Passage,
    (q1, q2): (Pt, Pt),
) -> Result<Option<Crossing>, OracleError> {
    let degenerate = |reason| Err(OracleError::Degenerate { first: p.t, second: q.t, reason });
    let (lo_p, hi_p) = ((p1.0.min(p2.0), p1.1.min(p2.1)), (p1.0.max(p2.0), p1.1.max(p2.1)));
    let (lo_q, hi_q) = ((q1.0.min(q2.0), q1.1.min(q2.1)), (q1.0.max(q2.0), q1.1.max(q2.1)));
    if hi_p.0 < lo_q.0 || hi_q.0 < lo_p.0 || hi_p.1 < lo_q.1 || hi_q.1 < lo_p.1 {
        return Ok(None);
    }
    let r = sub(p2, p1);
    let s = sub(q2, q1);
    let w = sub(q1, p1);
    let det = cross(r, s);
    if det == 0 {
        if cross(w, r) != 0 {
            return Ok(None);
        }
        // Collinear with overlapping bounding boxes: the segments touch.
        return degenerate("collinear overlap");
    }
    let (mut d, mut sn, mut un) = (det, cross(w, s), cross(w, r));
    if d < 0 {
        (d, sn, un) = (-d, -sn, -un);
    }
    if sn < 0 || sn > d || un < 0 || un > d {
        return Ok(None);
    }
    if sn == 0 || sn == d || un == 0 || un == d {
        return degenerate("endpoint incidence");
    }
    if p.axis == Axis::Z || q.axis == Axis::Z {
        return degenerate("vertical edge in a crossing");
    }
    if p.axis == q.axis {
        return degenerate("same-colour crossing");
    }
    if p.z == q.z {
        return degenerate("edges meet in space");
    }
    let (sp, sq) = (Position::Exact(Ratio::new(sn, d)), Position::Exact(Ratio::new(un, d)));
    let p_over = p.z > q.z;
    let (over, under, position_over, position_under) = if p_over { (*p, *q, sp, sq) } else { (*q, *p, sq, sp) };
    let orientation = if p_over { det } else { -det };
    let sign = if orientation > 0 { 1 } else { -1 };
    let (green, red) = if p.axis == Axis::X { (p, q) } else { (q, p) };
    let kind = if over.axis == Axis::X { FieldKind::GreenOver } else { FieldKind::RedOver };
    let field = FieldId { kind, x: red.anchor.x, y: green.anchor.y };
    let crossing_type = CrossingType { over: kind, over_direction: over.direction, under_direction: under.direction };
    Ok(Some(Crossing { over, under, field, crossing_type, sign, position_over, position_under }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::grid::{make_hopf_link, make_torus_link, make_unknot, Component, Move};

    #[test]
    fn unknot_has_no_crossings() {
        let d = oracle_shear_diagram(&make_unknot(3), Ratio::new(1, 13), Ratio::new(1, 17)).unwrap();
        assert_eq!(d.n(), 0);
    }

    #[test]
    fn hopf_matches_symbolic_projection() {
        let link = make_hopf_link();
        let d = oracle_shear_diagram(&link, Ratio::new(1, 5), Ratio::new(1, 7)).unwrap();
        assert_eq!(d.signature(), build_diagram(&link).signature());
    }

    #[test]
    fn torus_matches_under_several_shears() {
        let link = make_torus_link(3);
        let l = i64::from(link.size());
        for (a, b) in [(Ratio::new(1, l + 1), Ratio::new(1, l + 3)), (Ratio::new(2, 3 * l), Ratio::new(1, 5 * l))] {
            let d = oracle_shear_diagram(&link, a, b).unwrap();
            assert_eq!(d.signature(), build_diagram(&link).signature());
        }
    }

    #[test]
    fn rejects_steep_shear() {
        let err = oracle_shear_diagram(&make_unknot(3), Ratio::new(1, 3), Ratio::new(1, 7)).unwrap_err();
        assert!(matches!(err, OracleError::InvalidShear { .. }));
    }

    #[test]
    fn geometric_sign_of_x1() {
        // An eastward edge above a northward edge.
        let green =
            Component::new(LatticePoint::new(0, 1, 2), vec![Move::E, Move::E, Move::D, Move::W, Move::W, Move::U]);
        let red =
            Component::new(LatticePoint::new(1, 0, 0), vec![Move::N, Move::N, Move::E, Move::S, Move::S, Move::W]);
        let link = GridLink::new(2, vec![green, red]).unwrap();
        let d = oracle_shear_diagram(&link, Ratio::new(1, 5), Ratio::new(1, 7)).unwrap();
        let x1: Vec<_> = d.crossings.iter().filter(|c| c.crossing_type.code() == 1).collect();
        assert!(!x1.is_empty());
        for c in x1 {
            assert_eq!(c.sign, CrossingType::from_code(1).unwrap().sign());
        }
    }
}
