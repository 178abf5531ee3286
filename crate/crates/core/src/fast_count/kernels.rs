use num_bigint::BigUint;
use num_traits::{CheckedAdd, One, Zero};

use super::instance::{CountingInstance, Token};

/// Counter arithmetic: a fast fixed-width pass is tried first and redone
/// with big integers only if it overflows.
trait Counter: Clone + Zero + One + CheckedAdd + Into<BigUint> {
    fn from_len(n: usize) -> Self;
}

impl Counter for u128 {
    fn from_len(n: usize) -> Self {
        n as u128
    }
}

impl Counter for BigUint {
    fn from_len(n: usize) -> Self {
        BigUint::from(n)
    }
}

/// `N[i][k]` = number of increasing chains through slots `0..=i` ending at
/// or before the `k`-th smallest element of slot `i`.
fn chains<C: Counter, T>(slots: &[&[T]], key: impl Fn(&T) -> i64) -> Option<C> {
    let Some(first) = slots.first() else { return Some(C::one()) };
    let mut prev: Vec<C> = (0..=first.len()).map(C::from_len).collect();
    for w in slots.windows(2) {
        let (below, here) = (w[0], w[1]);
        let mut cur = Vec::with_capacity(here.len() + 1);
        cur.push(C::zero());
        for (k, b) in here.iter().enumerate() {
            let t = key(b);
            let before = below.partition_point(|a| key(a) < t);
            cur.push(cur[k].checked_add(&prev[before])?);
        }
        prev = cur;
    }
    prev.pop()
}

fn chains_any<T>(slots: &[&[T]], key: impl Fn(&T) -> i64 + Copy) -> BigUint {
    match chains::<u128, T>(slots, key) {
        Some(c) => c.into(),
        None => chains::<BigUint, T>(slots, key).expect("big integers do not overflow"),
    }
}

/// Number of tuples with strictly increasing `t`, one element per slot, in
/// time linear in the slot sizes up to the cost of sorting.
pub fn count_increasing(slots: &[Vec<i64>]) -> BigUint {
    let sorted: Vec<Vec<i64>> = slots
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let refs: Vec<&[i64]> = sorted.iter().map(Vec::as_slice).collect();
    chains_any(&refs, |&t| t)
}

/// Bits needed for every height in `[0, L]`.
pub fn height_bits(size: i32) -> u32 {
    (32 - size.max(0).leading_zeros()).max(1)
}

/// Exact count of an instance with height conditions, by splitting each
/// condition at the longest common binary prefix of its two heights.
pub fn count_with_z(inst: &CountingInstance) -> BigUint {
    let mut slots: Vec<Vec<Token>> = inst
        .slots
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable_by_key(|b| b.t);
            s
        })
        .collect();
    count_sorted(&mut slots, &inst.conditions, height_bits(inst.size))
}

/// As [`count_with_z`] for slots already sorted by `t`; the slots are
/// restored before returning.
pub(crate) fn count_sorted(slots: &mut [Vec<Token>], conditions: &[(usize, usize)], bits: u32) -> BigUint {
    if slots.iter().any(Vec::is_empty) || conditions.iter().any(|&(lo, hi)| lo == hi) {
        return BigUint::zero();
    }
    let mut walker = Walker { slots, bits, trail: Vec::new(), log: None };
    match walker.conditions::<u128>(conditions) {
        Some(c) => c.into(),
        None => walker.conditions::<BigUint>(conditions).expect("big integers do not overflow"),
    }
}

/// A prefix cell: per condition, the length and value of the common prefix.
type Cell = Vec<(u32, i32)>;

struct Walker<'a> {
    slots: &'a mut [Vec<Token>],
    bits: u32,
    trail: Cell,
    log: Option<Vec<(Cell, BigUint)>>,
}

fn with_bit(tokens: &[Token], bit: u32, value: i32) -> Vec<Token> {
    tokens.iter().copied().filter(|b| (b.z >> bit) & 1 == value).collect()
}

impl Walker<'_> {
    /// Sums over the cells of the remaining conditions.
    fn conditions<C: Counter>(&mut self, conditions: &[(usize, usize)]) -> Option<C> {
        let Some((&(lo, hi), rest)) = conditions.split_first() else {
            let refs: Vec<&[Token]> = self.slots.iter().map(Vec::as_slice).collect();
            let count = chains::<C, Token>(&refs, |b| b.t)?;
            if let Some(log) = &mut self.log {
                log.push((self.trail.clone(), count.clone().into()));
            }
            return Some(count);
        };
        let saved_lo = std::mem::take(&mut self.slots[lo]);
        let saved_hi = std::mem::take(&mut self.slots[hi]);
        let out = self.prefix::<C>(lo, hi, (0, 0), &saved_lo, &saved_hi, rest);
        self.slots[lo] = saved_lo;
        self.slots[hi] = saved_hi;
        out
    }

    /// Both slots of condition `(lo, hi)` share the prefix `(depth, value)`;
    /// either the heights split at the next bit or the prefix grows.
    fn prefix<C: Counter>(
        &mut self,
        lo: usize,
        hi: usize,
        (depth, value): (u32, i32),
        lo_set: &[Token],
        hi_set: &[Token],
        rest: &[(usize, usize)],
    ) -> Option<C> {
        let bit = self.bits - 1 - depth;
        let mut total = C::zero();
        let below = with_bit(lo_set, bit, 0);
        let above = with_bit(hi_set, bit, 1);
        if !below.is_empty() && !above.is_empty() {
            self.slots[lo] = below;
            self.slots[hi] = above;
            self.trail.push((depth, value));
            let inner = self.conditions::<C>(rest);
            self.trail.pop();
            total = total.checked_add(&inner?)?;
        }
        if depth + 1 < self.bits {
            for b in 0..2 {
                let l = with_bit(lo_set, bit, b);
                let h = with_bit(hi_set, bit, b);
                if !l.is_empty() && !h.is_empty() {
                    let next = (depth + 1, 2 * value + b);
                    total = total.checked_add(&self.prefix::<C>(lo, hi, next, &l, &h, rest)?)?;
                }
            }
        }
        Some(total)
    }
}
