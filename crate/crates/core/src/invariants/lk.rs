use super::InvariantError;
use crate::diagram::{field_at, field_count, fields_of, for_each_incidence, FieldKind, PlanarDiagram};
use crate::grid::GridLink;

fn require_two(found: usize) -> Result<(), InvariantError> {
    if found == 2 {
        Ok(())
    } else {
        Err(InvariantError::ComponentCount { expected: 2, found })
    }
}

fn halve(sum: i64) -> Result<i64, InvariantError> {
    if sum % 2 == 0 {
        Ok(sum / 2)
    } else {
        Err(InvariantError::OddSignedSum(sum))
    }
}

/// Half the signed count of crossings between the two components.
pub fn lk_2d(diagram: &PlanarDiagram) -> Result<i64, InvariantError> {
    require_two(diagram.component_count)?;
    let sum = diagram.crossings.iter().filter(|c| c.is_mixed()).map(|c| i64::from(c.sign)).sum();
    halve(sum)
}

/// Number of pairs with `lower[i] < upper[j]`, by one merge sweep over two
/// strictly increasing height lists. On equal heights the upper strand is
/// taken first, so ties never count.
pub fn field_pair_count(lower: &[i32], upper: &[i32]) -> u64 {
    let (mut before, mut found) = (0u64, 0u64);
    let mut i = 0;
    for &z in upper {
        while i < lower.len() && lower[i] < z {
            before += 1;
            i += 1;
        }
        found += before;
    }
    found
}

/// Linking number from the crossing fields alone, in time linear in the
/// number of edges.
pub fn lk_3d(link: &GridLink) -> Result<i64, InvariantError> {
    require_two(link.component_count())?;
    let size = link.size();
    let passages = link.passages();

    // Counting sort of (field, passage) incidences by field; the height
    // order from `for_each_incidence` survives inside each field.
    let fields = field_count(size);
    let mut start = vec![0usize; fields + 1];
    for p in &passages {
        for f in fields_of(size, p).into_iter().flatten() {
            start[f + 1] += 1;
        }
    }
    for f in 0..fields {
        start[f + 1] += start[f];
    }
    let mut fill = start.clone();
    let mut slots = vec![0usize; start[fields]];
    for_each_incidence(link, &passages, |f, p| {
        slots[fill[f]] = p.t;
        fill[f] += 1;
    });

    // Height lists per (over/under, direction, component).
    let mut buckets: [[[Vec<i32>; 2]; 2]; 2] = Default::default();
    let mut sum = 0i64;
    for f in 0..fields {
        let (kind, _, _) = field_at(size, f);
        let over_axis = kind.over_axis();
        for b in buckets.iter_mut().flatten().flatten() {
            b.clear();
        }
        for &t in &slots[start[f]..start[f + 1]] {
            let p = &passages[t];
            let role = usize::from(p.axis != over_axis);
            buckets[role][usize::from(p.direction < 0)][p.component].push(p.z);
        }
        for over_dir in 0..2 {
            for under_dir in 0..2 {
                let dirs = if over_dir == under_dir { 1 } else { -1 };
                let sign = match kind {
                    FieldKind::GreenOver => dirs,
                    FieldKind::RedOver => -dirs,
                };
                for (over_comp, under_comp) in [(0, 1), (1, 0)] {
                    let count = field_pair_count(&buckets[1][under_dir][under_comp], &buckets[0][over_dir][over_comp]);
                    sum += sign * count as i64;
                }
            }
        }
    }
    halve(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::grid::{make_hopf_link, make_torus_link, make_unknot, GridLink};

    #[test]
    fn sweep_matches_brute_force() {
        assert_eq!(field_pair_count(&[1, 3], &[2, 4]), 3);
        assert_eq!(field_pair_count(&[1, 3], &[2, 4, 5]), 5);
        assert_eq!(field_pair_count(&[5, 6], &[1, 2]), 0);
        assert_eq!(field_pair_count(&[2], &[2]), 0);
        let (lo, hi) = ([0, 2, 3, 7, 9], [1, 3, 4, 8]);
        let brute = lo.iter().flat_map(|a| hi.iter().filter(move |b| a < *b)).count() as u64;
        assert_eq!(field_pair_count(&lo, &hi), brute);
    }

    #[test]
    fn hopf_and_torus() {
        let hopf = make_hopf_link();
        let lk = lk_2d(&build_diagram(&hopf)).unwrap();
        assert_eq!(lk.abs(), 1);
        assert_eq!(lk_3d(&hopf).unwrap(), lk);
        for k in 1..=4 {
            let link = make_torus_link(k);
            let lk = lk_2d(&build_diagram(&link)).unwrap();
            assert_eq!(lk.abs(), i64::from(k));
            assert_eq!(lk_3d(&link).unwrap(), lk);
        }
    }

    #[test]
    fn split_link_and_knot() {
        let a = make_unknot(1).components()[0].clone();
        let b = make_unknot(1).translated(2, 2, 2).components()[0].clone();
        let link = GridLink::new(3, vec![a, b]).unwrap();
        assert_eq!(lk_2d(&build_diagram(&link)).unwrap(), 0);
        assert_eq!(lk_3d(&link).unwrap(), 0);
        let err = lk_3d(&make_unknot(2)).unwrap_err();
        assert_eq!(err, InvariantError::ComponentCount { expected: 2, found: 1 });
    }
}
