use std::fmt;

use super::build::{PlanarDiagram, Role};
use super::crossing::CrossingType;

/// One arrow of a Gauss diagram. Ranks are 1-based positions of the
/// endpoints along the parametrizing interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    /// Rank of the over-strand endpoint.
    pub tail: usize,
    /// Rank of the under-strand endpoint.
    pub head: usize,
    pub sign: i8,
    pub crossing_type: CrossingType,
    /// Zero-based component labels of (over, under).
    pub components: (usize, usize),
}

impl Arrow {
    pub fn first_rank(&self) -> usize {
        self.tail.min(self.head)
    }
}

/// Arrows are sorted by the rank of their first endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussDiagram {
    pub component_count: usize,
    pub arrows: Vec<Arrow>,
}

impl GaussDiagram {
    pub fn n(&self) -> usize {
        self.arrows.len()
    }

    /// Component label of each rank, indexed from 0 for rank 1.
    pub fn rank_components(&self) -> Vec<usize> {
        let mut out = vec![0; 2 * self.arrows.len()];
        for a in &self.arrows {
            out[a.tail - 1] = a.components.0;
            out[a.head - 1] = a.components.1;
        }
        out
    }
}

pub fn to_gauss(diagram: &PlanarDiagram) -> GaussDiagram {
    let mut ranks = vec![(0, 0); diagram.crossings.len()];
    for (i, e) in diagram.endpoints.iter().enumerate() {
        match e.role {
            Role::Over => ranks[e.crossing].0 = i + 1,
            Role::Under => ranks[e.crossing].1 = i + 1,
        }
    }
    let mut arrows: Vec<Arrow> = diagram
        .crossings
        .iter()
        .zip(&ranks)
        .map(|(c, &(tail, head))| Arrow {
            tail,
            head,
            sign: c.sign,
            crossing_type: c.crossing_type,
            components: (c.over.component, c.under.component),
        })
        .collect();
    arrows.sort_by_key(Arrow::first_rank);
    GaussDiagram { component_count: diagram.component_count, arrows }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.arrows.iter().enumerate() {
            writeln!(
                f,
                "arrow {}: tail={} head={} sign={} type={} comps=({},{})",
                k + 1,
                a.tail,
                a.head,
                if a.sign > 0 { '+' } else { '-' },
                a.crossing_type,
                a.components.0 + 1,
                a.components.1 + 1
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::grid::{make_hopf_link, make_unknot};

    #[test]
    fn empty_diagram() {
        let g = to_gauss(&build_diagram(&make_unknot(2)));
        assert_eq!(g.n(), 0);
        assert_eq!(g.to_string(), "");
    }

    #[test]
    fn hopf_arrows_join_both_components() {
        let g = to_gauss(&build_diagram(&make_hopf_link()));
        assert_eq!(g.n(), 2);
        for a in &g.arrows {
            assert_ne!(a.components.0, a.components.1);
            assert_ne!(a.tail, a.head);
        }
        let mut ranks: Vec<usize> = g.arrows.iter().flat_map(|a| [a.tail, a.head]).collect();
        ranks.sort();
        assert_eq!(ranks, vec![1, 2, 3, 4]);
        assert!(g.arrows[0].first_rank() < g.arrows[1].first_rank());
        assert_eq!(g.to_string().lines().count(), 2);
    }
}
