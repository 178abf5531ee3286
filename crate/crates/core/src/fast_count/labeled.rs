use super::instance::{CountingInstance, Token};
use super::CountError;
use crate::diagram::{CrossingField, CrossingType};
use crate::grid::{Axis, Passage};
use crate::invariants::{GaussCode, RawEnd, MAX_ARROWS};

/// A Gauss diagram on an interval whose arrows carry crossing-type labels.
///
/// Endpoint `i` of the interval is slot `i` of the counting instance built
/// from it: heads become under-strand slots, tails over-strand slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGaussDiagram {
    /// `(arrow, is_head)` per endpoint; arrows numbered by first occurrence.
    pub endpoints: Vec<(usize, bool)>,
    /// Crossing type of each arrow.
    pub labels: Vec<CrossingType>,
    /// Zero-based component label of each endpoint.
    pub components: Vec<usize>,
}

impl LabeledGaussDiagram {
    pub fn arrow_count(&self) -> usize {
        self.labels.len()
    }

    /// Slot of the head of arrow `j`.
    pub fn head_slot(&self, j: usize) -> usize {
        self.endpoints.iter().position(|&e| e == (j, true)).expect("every arrow has a head")
    }

    /// Slot of the tail of arrow `j`.
    pub fn tail_slot(&self, j: usize) -> usize {
        self.endpoints.iter().position(|&e| e == (j, false)).expect("every arrow has a tail")
    }

    /// Code of the underlying unlabeled diagram.
    pub fn code(&self) -> GaussCode {
        let ends: Vec<RawEnd> = self
            .endpoints
            .iter()
            .zip(&self.components)
            .map(|(&(arrow, head), &component)| RawEnd { arrow, head, component })
            .collect();
        let signs: Vec<i8> = self.labels.iter().map(|l| l.sign()).collect();
        GaussCode::canonical(&ends, &signs)
    }
}

/// Arrow endpoint sequences with `arrows` arrows, numbered by first
/// occurrence: `(2l)! / l!` of them.
pub(crate) fn oriented_shapes(arrows: usize) -> Vec<Vec<(usize, bool)>> {
    fn extend(
        arrows: usize,
        seq: &mut Vec<(usize, bool)>,
        open: &mut Vec<(usize, bool)>,
        opened: usize,
        out: &mut Vec<Vec<(usize, bool)>>,
    ) {
        if seq.len() == 2 * arrows {
            out.push(seq.clone());
            return;
        }
        if opened < arrows {
            for head in [false, true] {
                seq.push((opened, head));
                open.push((opened, !head));
                extend(arrows, seq, open, opened + 1, out);
                open.pop();
                seq.pop();
            }
        }
        for k in 0..open.len() {
            let end = open.remove(k);
            seq.push(end);
            extend(arrows, seq, open, opened, out);
            seq.pop();
            open.insert(k, end);
        }
    }
    let mut out = Vec::new();
    extend(arrows, &mut Vec::new(), &mut Vec::new(), 0, &mut out);
    out
}

/// Nondecreasing label sequences of the given length over `0..components`.
fn monotone_labels(len: usize, components: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|seq: Vec<usize>| {
                let from = seq.last().copied().unwrap_or(0);
                (from..components).map(move |c| {
                    let mut s = seq.clone();
                    s.push(c);
                    s
                })
            })
            .collect();
    }
    out
}

/// Every labeled diagram with `1..=d` arrows for a link with the given
/// number of components. Component labels never decrease along the
/// interval because components are concatenated in label order.
pub fn enumerate_labeled_diagrams(d: usize, components: usize) -> Result<Vec<LabeledGaussDiagram>, CountError> {
    if d == 0 || d > MAX_ARROWS {
        return Err(CountError::OrderOutOfRange { order: d, max: MAX_ARROWS });
    }
    let mut out = Vec::new();
    for arrows in 1..=d {
        let shapes = oriented_shapes(arrows);
        let comps = monotone_labels(2 * arrows, components);
        let label_count = 8usize.pow(arrows as u32);
        for shape in &shapes {
            for chi in 0..label_count {
                let labels: Vec<CrossingType> = (0..arrows).map(|j| CrossingType::ALL[(chi >> (3 * j)) & 7]).collect();
                for c in &comps {
                    out.push(LabeledGaussDiagram {
                        endpoints: shape.clone(),
                        labels: labels.clone(),
                        components: c.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn tokens(passages: &[Passage], direction: i8, component: usize) -> Vec<Token> {
    let mut out: Vec<Token> = passages
        .iter()
        .filter(|p| p.direction == direction && p.component == component)
        .map(|p| Token::new(p.t as i64, p.z))
        .collect();
    out.sort_unstable_by_key(|b| b.t);
    out
}

pub(crate) fn strands(field: &CrossingField, axis: Axis) -> &[Passage] {
    if axis == Axis::X {
        &field.greens
    } else {
        &field.reds
    }
}

/// The counting instance of a labeled diagram against one field per arrow.
/// Arrow `j` asks for a crossing of type `labels[j]` in `fields[j]`; if the
/// field's over-colour differs from the label's, both of its slots are empty.
pub fn build_instance(diagram: &LabeledGaussDiagram, fields: &[&CrossingField], size: i32) -> CountingInstance {
    let mut slots = vec![Vec::new(); diagram.endpoints.len()];
    let mut conditions = Vec::with_capacity(diagram.arrow_count());
    for (j, (label, field)) in diagram.labels.iter().zip(fields).enumerate() {
        let (head, tail) = (diagram.head_slot(j), diagram.tail_slot(j));
        conditions.push((head, tail));
        if field.kind != label.over {
            continue;
        }
        let over_axis = label.over.over_axis();
        slots[head] = tokens(strands(field, label.under_axis()), label.under_direction, diagram.components[head]);
        slots[tail] = tokens(strands(field, over_axis), label.over_direction, diagram.components[tail]);
    }
    CountingInstance::new(size, slots, conditions)
}
