use crate::grid::{Axis, GridLink, Passage};

/// Which strand colour passes on top inside a crossing field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    GreenOver,
    RedOver,
}

impl FieldKind {
    pub fn over_axis(self) -> Axis {
        match self {
            FieldKind::GreenOver => Axis::X,
            FieldKind::RedOver => Axis::Y,
        }
    }
}

/// One of the `2L^2` triangular crossing fields.
///
/// A `RedOver` field at corner `(x, y)` pairs the green edges `[x, x+1] x {y}`
/// with the red edges `{x} x [y-1, y]`; a `GreenOver` field pairs
/// `[x-1, x] x {y}` with `{x} x [y, y+1]`. Strand lists are sorted by height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingField {
    pub corner: (i32, i32),
    pub kind: FieldKind,
    pub greens: Vec<Passage>,
    pub reds: Vec<Passage>,
}

/// Number of fields of a link of size `L`.
pub fn field_count(size: i32) -> usize {
    2 * (size as usize).pow(2)
}

/// Position of a field in the canonical `(kind, x, y)` order, or `None` if
/// no such field exists in a box of size `L`.
pub fn field_index(size: i32, kind: FieldKind, x: i32, y: i32) -> Option<usize> {
    let l = size as usize;
    match kind {
        FieldKind::GreenOver if (1..=size).contains(&x) && (0..size).contains(&y) => {
            Some((x as usize - 1) * l + y as usize)
        }
        FieldKind::RedOver if (0..size).contains(&x) && (1..=size).contains(&y) => {
            Some(l * l + x as usize * l + (y as usize - 1))
        }
        _ => None,
    }
}

/// Inverse of [`field_index`].
pub fn field_at(size: i32, index: usize) -> (FieldKind, i32, i32) {
    let l = size as usize;
    if index < l * l {
        (FieldKind::GreenOver, (index / l) as i32 + 1, (index % l) as i32)
    } else {
        let i = index - l * l;
        (FieldKind::RedOver, (i / l) as i32, (i % l) as i32 + 1)
    }
}

/// Fields containing a passage: at most two for green and red edges, none
/// for vertical ones.
pub fn fields_of(size: i32, p: &Passage) -> [Option<usize>; 2] {
    let a = p.anchor;
    match p.axis {
        Axis::X => {
            [field_index(size, FieldKind::RedOver, a.x, a.y), field_index(size, FieldKind::GreenOver, a.x + 1, a.y)]
        }
        Axis::Y => {
            [field_index(size, FieldKind::RedOver, a.x, a.y + 1), field_index(size, FieldKind::GreenOver, a.x, a.y)]
        }
        Axis::Z => [None, None],
    }
}

/// Calls `f(field, passage)` for every (field, green/red passage)
/// incidence, in nondecreasing height order.
pub(crate) fn for_each_incidence(link: &GridLink, passages: &[Passage], mut f: impl FnMut(usize, &Passage)) {
    let size = link.size();
    // Counting sort by height keeps this linear in the number of edges.
    let mut by_height: Vec<Vec<usize>> = vec![Vec::new(); size.max(0) as usize + 1];
    for (i, p) in passages.iter().enumerate() {
        if p.axis != Axis::Z {
            by_height[p.z as usize].push(i);
        }
    }
    for bucket in &by_height {
        for &i in bucket {
            let p = &passages[i];
            for fi in fields_of(size, p).into_iter().flatten() {
                f(fi, p);
            }
        }
    }
}

/// All `2L^2` crossing fields in canonical `(kind, x, y)` order.
pub fn enumerate_fields(link: &GridLink) -> Vec<CrossingField> {
    let size = link.size();
    let mut fields: Vec<CrossingField> = (0..field_count(size))
        .map(|i| {
            let (kind, x, y) = field_at(size, i);
            CrossingField { corner: (x, y), kind, greens: Vec::new(), reds: Vec::new() }
        })
        .collect();
    let passages = link.passages();
    for_each_incidence(link, &passages, |fi, p| match p.axis {
        Axis::X => fields[fi].greens.push(*p),
        _ => fields[fi].reds.push(*p),
    });
    fields
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_hopf_link, make_unknot};

    #[test]
    fn index_round_trips() {
        for l in 1..6 {
            for i in 0..field_count(l) {
                let (k, x, y) = field_at(l, i);
                assert_eq!(field_index(l, k, x, y), Some(i));
            }
        }
        assert_eq!(field_index(3, FieldKind::GreenOver, 0, 0), None);
        assert_eq!(field_index(3, FieldKind::RedOver, 3, 1), None);
    }

    #[test]
    fn unknot_fields() {
        let fields = enumerate_fields(&make_unknot(3));
        assert_eq!(fields.len(), 18);
        for f in &fields {
            assert!(f.greens.is_empty() || f.reds.is_empty() || f.greens[0].z == f.reds[0].z);
        }
    }

    #[test]
    fn field_membership_follows_kind_rule() {
        let link = make_hopf_link();
        for f in enumerate_fields(&link) {
            let (x, y) = f.corner;
            for g in &f.greens {
                match f.kind {
                    FieldKind::RedOver => assert_eq!((g.anchor.x, g.anchor.y), (x, y)),
                    FieldKind::GreenOver => assert_eq!((g.anchor.x, g.anchor.y), (x - 1, y)),
                }
            }
            for r in &f.reds {
                match f.kind {
                    FieldKind::RedOver => assert_eq!((r.anchor.x, r.anchor.y), (x, y - 1)),
                    FieldKind::GreenOver => assert_eq!((r.anchor.x, r.anchor.y), (x, y)),
                }
            }
            assert!(f.greens.windows(2).all(|w| w[0].z < w[1].z));
            assert!(f.reds.windows(2).all(|w| w[0].z < w[1].z));
        }
    }
}
