//! φ_d from crossing fields without building the planar diagram.
//!
//! A subdiagram with `l` arrows is a choice, for each arrow, of a field and
//! crossing type, together with one strand per arrow endpoint such that the
//! endpoints appear along the link in the diagram's order and each arrow's
//! over strand lies above its under strand. Counting those choices is a
//! [`CountingInstance`].
//!
//! Endpoints that fall on one unit edge (a strand crossing several others)
//! need care: strict `t`-order forbids them, so each run of adjacent
//! endpoints that could share an edge is also counted merged, with the
//! order along the edge turned into extra height conditions.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::instance::Token;
use super::kernels::{count_sorted, height_bits};
use super::labeled::{build_instance, enumerate_labeled_diagrams, strands, tokens, LabeledGaussDiagram};
use super::CountError;
use crate::diagram::{enumerate_fields, CrossingField, CrossingType, FieldId, FieldKind};
use crate::grid::{Axis, GridLink};
use crate::invariants::{GaussCode, PhiVector, RawEnd, MAX_ARROWS};

/// One endpoint slot: strands of one colour, direction and component in a
/// field.
#[derive(Clone, Debug)]
pub(crate) struct SlotSpec<'a> {
    pub field: FieldId,
    pub axis: Axis,
    pub direction: i8,
    pub component: usize,
    pub tokens: &'a [Token],
}

/// Order of a field's crossings along an edge of the given colour and
/// direction: an edge meets its two fields one after the other.
fn rank(axis: Axis, direction: i8, kind: FieldKind) -> u8 {
    let first = match axis {
        Axis::X => FieldKind::RedOver,
        _ => FieldKind::GreenOver,
    };
    u8::from((kind == first) != (direction > 0))
}

/// Whether one edge can carry both endpoints, with `a` first.
fn mergeable(a: &SlotSpec, b: &SlotSpec) -> bool {
    if a.axis != b.axis || a.direction != b.direction || a.component != b.component {
        return false;
    }
    if a.field == b.field {
        return true;
    }
    let (ro, go) = match (a.field.kind, b.field.kind) {
        (FieldKind::RedOver, FieldKind::GreenOver) => (a.field, b.field),
        (FieldKind::GreenOver, FieldKind::RedOver) => (b.field, a.field),
        _ => return false,
    };
    let siblings = match a.axis {
        Axis::X => ro.x + 1 == go.x && ro.y == go.y,
        _ => ro.x == go.x && ro.y == go.y + 1,
    };
    siblings && rank(a.axis, a.direction, a.field.kind) < rank(b.axis, b.direction, b.field.kind)
}

fn intersect(a: &[Token], b: &[Token]) -> Vec<Token> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].t.cmp(&b[j].t) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Sum over collision patterns of the count for one assignment of slots.
/// `partner[i]` is the other endpoint of endpoint `i`'s arrow; `heads`
/// marks under-strand endpoints.
pub(crate) fn collision_total(slots: &[SlotSpec], partner: &[usize], heads: &[bool], bits: u32) -> BigUint {
    let m = slots.len();
    let mut mask = 0u32;
    for i in 0..m.saturating_sub(1) {
        if mergeable(&slots[i], &slots[i + 1]) {
            mask |= 1 << i;
        }
    }
    let mut total = BigUint::zero();
    let mut pattern = mask;
    loop {
        total += pattern_count(slots, partner, heads, bits, pattern);
        if pattern == 0 {
            break;
        }
        pattern = (pattern - 1) & mask;
    }
    total
}

fn pattern_count(slots: &[SlotSpec], partner: &[usize], heads: &[bool], bits: u32, pattern: u32) -> BigUint {
    let m = slots.len();
    let mut group = vec![0usize; m];
    for i in 1..m {
        group[i] = group[i - 1] + usize::from(pattern & (1 << (i - 1)) == 0);
    }
    let groups = group[m - 1] + 1;
    let mut members: Vec<Vec<Token>> = Vec::with_capacity(groups);
    for i in 0..m {
        if i > 0 && group[i] == group[i - 1] {
            let last = members.last_mut().expect("group started");
            *last = intersect(last, slots[i].tokens);
        } else {
            members.push(slots[i].tokens.to_vec());
        }
    }
    let mut conditions = Vec::with_capacity(m);
    for i in 0..m {
        if heads[i] {
            conditions.push((group[i], group[partner[i]]));
        }
        if i + 1 < m && group[i] == group[i + 1] && slots[i].field == slots[i + 1].field {
            // Along the edge, crossings in one field are ordered by the
            // partner strand's height.
            let (p, q) = (group[partner[i]], group[partner[i + 1]]);
            conditions.push(if slots[i].direction > 0 { (p, q) } else { (q, p) });
        }
    }
    count_sorted(&mut members, &conditions, bits)
}

/// Slot tables for one link.
struct Catalog<'a> {
    fields: &'a [CrossingField],
    ids: Vec<FieldId>,
    /// Tokens by `(field, axis is red, direction is negative, component)`.
    slots: HashMap<(usize, bool, bool, usize), Vec<Token>>,
    empty: Vec<Token>,
}

impl<'a> Catalog<'a> {
    fn new(fields: &'a [CrossingField], components: usize) -> Self {
        let mut slots = HashMap::new();
        for (f, field) in fields.iter().enumerate() {
            for axis in [Axis::X, Axis::Y] {
                for direction in [1i8, -1] {
                    for c in 0..components {
                        let t = tokens(strands(field, axis), direction, c);
                        if !t.is_empty() {
                            slots.insert((f, axis == Axis::Y, direction < 0, c), t);
                        }
                    }
                }
            }
        }
        let ids = fields.iter().map(|f| FieldId { kind: f.kind, x: f.corner.0, y: f.corner.1 }).collect();
        Self { fields, ids, slots, empty: Vec::new() }
    }

    fn slot(&self, field: usize, axis: Axis, direction: i8, component: usize) -> SlotSpec<'_> {
        let tokens = self.slots.get(&(field, axis == Axis::Y, direction < 0, component)).unwrap_or(&self.empty);
        SlotSpec { field: self.ids[field], axis, direction, component, tokens }
    }
}

/// A field, crossing type and component pair with at least one crossing.
#[derive(Clone, Copy, Debug)]
struct ArrowChoice {
    field: usize,
    label: CrossingType,
    over_component: usize,
    under_component: usize,
}

impl ArrowChoice {
    fn slot<'c>(&self, catalog: &'c Catalog, head: bool) -> SlotSpec<'c> {
        if head {
            catalog.slot(self.field, self.label.under_axis(), self.label.under_direction, self.under_component)
        } else {
            catalog.slot(self.field, self.label.over.over_axis(), self.label.over_direction, self.over_component)
        }
    }
}

fn arrow_choices(catalog: &Catalog, components: usize) -> Vec<ArrowChoice> {
    let mut out = Vec::new();
    for (f, field) in catalog.fields.iter().enumerate() {
        for label in CrossingType::ALL.into_iter().filter(|l| l.over == field.kind) {
            for over_component in 0..components {
                for under_component in 0..components {
                    let c = ArrowChoice { field: f, label, over_component, under_component };
                    let (over, under) = (c.slot(catalog, false), c.slot(catalog, true));
                    let top = over.tokens.iter().map(|b| b.z).max();
                    let bottom = under.tokens.iter().map(|b| b.z).min();
                    if matches!((top, bottom), (Some(t), Some(b)) if b < t) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Placed {
    arrow: usize,
    head: bool,
    /// Earliest feasible position of this endpoint.
    earliest: i64,
}

struct Search<'c> {
    catalog: &'c Catalog<'c>,
    choices: &'c [ArrowChoice],
    order: usize,
    bits: u32,
    seq: Vec<Placed>,
    arrows: Vec<usize>,
    open: Vec<usize>,
    found: HashMap<GaussCode, BigUint>,
}

impl Search<'_> {
    fn slot_of(&self, e: &Placed) -> SlotSpec<'_> {
        self.choices[self.arrows[e.arrow]].slot(self.catalog, e.head)
    }

    /// Earliest position for a new endpoint in `slot` after the current
    /// sequence, or `None` if no strand fits.
    fn earliest(&self, slot: &SlotSpec) -> Option<i64> {
        let Some(last) = self.seq.last() else { return slot.tokens.first().map(|b| b.t) };
        let strict = !mergeable(&self.slot_of(last), slot);
        let k = slot.tokens.partition_point(|b| if strict { b.t <= last.earliest } else { b.t < last.earliest });
        slot.tokens.get(k).map(|b| b.t)
    }

    fn place(&mut self, arrow: usize, head: bool) {
        let slot = self.choices[self.arrows[arrow]].slot(self.catalog, head);
        let Some(earliest) = self.earliest(&slot) else { return };
        self.seq.push(Placed { arrow, head, earliest });
        self.descend();
        self.seq.pop();
    }

    fn descend(&mut self) {
        if self.open.is_empty() && !self.seq.is_empty() {
            self.record();
        }
        for k in 0..self.open.len() {
            let arrow = self.open.remove(k);
            let head = !self.seq.iter().any(|e| e.arrow == arrow && e.head);
            self.place(arrow, head);
            self.open.insert(k, arrow);
        }
        if self.arrows.len() < self.order {
            for c in 0..self.choices.len() {
                self.open_arrow(c, false);
                self.open_arrow(c, true);
            }
        }
    }

    fn open_arrow(&mut self, choice: usize, head: bool) {
        let arrow = self.arrows.len();
        self.arrows.push(choice);
        self.open.push(arrow);
        self.place(arrow, head);
        self.open.pop();
        self.arrows.pop();
    }

    fn record(&mut self) {
        let slots: Vec<SlotSpec> = self.seq.iter().map(|e| self.slot_of(e)).collect();
        let partner: Vec<usize> = self
            .seq
            .iter()
            .map(|e| self.seq.iter().position(|f| f.arrow == e.arrow && f.head != e.head).expect("arrow closed"))
            .collect();
        let heads: Vec<bool> = self.seq.iter().map(|e| e.head).collect();
        let count = collision_total(&slots, &partner, &heads, self.bits);
        if count.is_zero() {
            return;
        }
        let ends: Vec<RawEnd> = self
            .seq
            .iter()
            .zip(&slots)
            .map(|(e, s)| RawEnd { arrow: e.arrow, head: e.head, component: s.component })
            .collect();
        let signs: Vec<i8> = self.arrows.iter().map(|&c| self.choices[c].label.sign()).collect();
        *self.found.entry(GaussCode::canonical(&ends, &signs)).or_default() += count;
    }
}

fn check_order(d: usize) -> Result<(), CountError> {
    if d == 0 || d > MAX_ARROWS {
        Err(CountError::OrderOutOfRange { order: d, max: MAX_ARROWS })
    } else {
        Ok(())
    }
}

/// φ_d of a link computed from its crossing fields.
///
/// The search places arrow endpoints in order along the link, choosing a
/// field and crossing type whenever an arrow is opened, and abandons a
/// partial diagram as soon as no strand can follow the previous endpoint.
pub fn phi_3d(link: &GridLink, d: usize) -> Result<PhiVector, CountError> {
    check_order(d)?;
    let components = link.component_count();
    let fields = enumerate_fields(link);
    let catalog = Catalog::new(&fields, components);
    let choices = arrow_choices(&catalog, components);
    let bits = height_bits(link.size());

    let starts: Vec<(usize, bool)> = (0..choices.len()).flat_map(|c| [(c, false), (c, true)]).collect();
    let found = starts
        .par_iter()
        .map(|&(c, head)| {
            let mut search = Search {
                catalog: &catalog,
                choices: &choices,
                order: d,
                bits,
                seq: Vec::with_capacity(2 * d),
                arrows: Vec::with_capacity(d),
                open: Vec::with_capacity(d),
                found: HashMap::new(),
            };
            search.open_arrow(c, head);
            search.found
        })
        .reduce(HashMap::new, |mut a, b| {
            for (code, v) in b {
                *a.entry(code).or_default() += v;
            }
            a
        });
    let mut out = PhiVector::new(d);
    for (code, v) in found {
        out.add(code, v);
    }
    Ok(out)
}

/// φ_d by the literal enumeration: every labeled diagram against every
/// tuple of compatible fields. Exponentially slower than [`phi_3d`]; meant
/// for cross-checking on small links.
pub fn phi_3d_by_labeled_diagrams(link: &GridLink, d: usize) -> Result<PhiVector, CountError> {
    let diagrams = enumerate_labeled_diagrams(d, link.component_count())?;
    let fields = enumerate_fields(link);
    let bits = height_bits(link.size());
    let mut out = PhiVector::new(d);
    for diagram in &diagrams {
        let mut total = BigUint::zero();
        let candidates: Vec<Vec<usize>> =
            diagram.labels.iter().map(|l| (0..fields.len()).filter(|&f| fields[f].kind == l.over).collect()).collect();
        let mut pick = vec![0usize; diagram.arrow_count()];
        'tuples: loop {
            let chosen: Vec<&CrossingField> = pick.iter().zip(&candidates).map(|(&k, c)| &fields[c[k]]).collect();
            total += labeled_count(diagram, &chosen, link.size(), bits);
            for j in (0..pick.len()).rev() {
                pick[j] += 1;
                if pick[j] < candidates[j].len() {
                    continue 'tuples;
                }
                pick[j] = 0;
            }
            break;
        }
        out.add(diagram.code(), total);
    }
    Ok(out)
}

fn labeled_count(diagram: &LabeledGaussDiagram, fields: &[&CrossingField], size: i32, bits: u32) -> BigUint {
    let inst = build_instance(diagram, fields, size);
    if inst.slots.iter().any(Vec::is_empty) {
        return BigUint::zero();
    }
    let slots: Vec<SlotSpec> = diagram
        .endpoints
        .iter()
        .enumerate()
        .map(|(i, &(arrow, head))| {
            let label = diagram.labels[arrow];
            let f = fields[arrow];
            let (axis, direction) = if head {
                (label.under_axis(), label.under_direction)
            } else {
                (label.over.over_axis(), label.over_direction)
            };
            SlotSpec {
                field: FieldId { kind: f.kind, x: f.corner.0, y: f.corner.1 },
                axis,
                direction,
                component: diagram.components[i],
                tokens: &inst.slots[i],
            }
        })
        .collect();
    let partner: Vec<usize> = diagram
        .endpoints
        .iter()
        .map(|&(arrow, head)| if head { diagram.tail_slot(arrow) } else { diagram.head_slot(arrow) })
        .collect();
    let heads: Vec<bool> = diagram.endpoints.iter().map(|e| e.1).collect();
    collision_total(&slots, &partner, &heads, bits)
}
