use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::CountError;

/// Largest product of slot sizes [`brute_count`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// An element of a slot: a position `t` along the parametrization and a
/// height `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub t: i64,
    pub z: i32,
}

impl Token {
    pub const fn new(t: i64, z: i32) -> Self {
        Self { t, z }
    }
}

/// Count the tuples `(b_1, ..., b_m)` with `b_i` in slot `i`, `t` strictly
/// increasing, and `z(b_lo) < z(b_hi)` for every condition.
///
/// Slot indices in `conditions` are zero-based; the text format uses 1-based
/// labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountingInstance {
    pub size: i32,
    pub slots: Vec<Vec<Token>>,
    pub conditions: Vec<(usize, usize)>,
}

impl CountingInstance {
    pub fn new(size: i32, slots: Vec<Vec<Token>>, conditions: Vec<(usize, usize)>) -> Self {
        Self { size, slots, conditions }
    }

    /// Checks injectivity of `t` and `z` within each slot, the height range
    /// and condition indices.
    pub fn check(&self) -> Result<(), CountError> {
        let bad = |reason: String| Err(CountError::InvalidInstance(reason));
        for (i, slot) in self.slots.iter().enumerate() {
            let mut ts: Vec<i64> = slot.iter().map(|b| b.t).collect();
            let mut zs: Vec<i32> = slot.iter().map(|b| b.z).collect();
            ts.sort_unstable();
            zs.sort_unstable();
            if ts.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("slot {} repeats a t value", i + 1));
            }
            if zs.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("slot {} repeats a z value", i + 1));
            }
            if let Some(b) = slot.iter().find(|b| b.z < 0 || b.z > self.size) {
                return bad(format!("slot {} height {} outside [0, {}]", i + 1, b.z, self.size));
            }
        }
        for &(lo, hi) in &self.conditions {
            if lo >= self.slots.len() || hi >= self.slots.len() {
                return bad(format!("condition ({}, {}) names a missing slot", lo + 1, hi + 1));
            }
        }
        Ok(())
    }
}

/// Exhaustive count over the product of all slots.
pub fn brute_count(inst: &CountingInstance) -> Result<BigUint, CountError> {
    let mut product: u128 = 1;
    for s in &inst.slots {
        product = product.saturating_mul(s.len() as u128);
    }
    if product > BRUTE_FORCE_LIMIT {
        return Err(CountError::TooLarge { product, limit: BRUTE_FORCE_LIMIT });
    }
    if product == 0 {
        return Ok(BigUint::default());
    }
    let m = inst.slots.len();
    let mut idx = vec![0usize; m];
    let mut count: u64 = 0;
    loop {
        let pick = |i: usize| inst.slots[i][idx[i]];
        let ordered = (1..m).all(|i| pick(i - 1).t < pick(i).t);
        if ordered && inst.conditions.iter().all(|&(lo, hi)| pick(lo).z < pick(hi).z) {
            count += 1;
        }
        // Odometer step.
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(BigUint::from(count));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < inst.slots[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

impl fmt::Display for CountingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance m={} L={}", self.slots.len(), self.size)?;
        for (i, slot) in self.slots.iter().enumerate() {
            write!(f, "B{}:", i + 1)?;
            for b in slot {
                write!(f, " ({},{})", b.t, b.z)?;
            }
            writeln!(f)?;
        }
        for &(lo, hi) in &self.conditions {
            writeln!(f, "cond {} {}", lo + 1, hi + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct InstanceParseError {
    pub line: usize,
    pub message: String,
}

impl FromStr for CountingInstance {
    type Err = InstanceParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: &str| InstanceParseError { line, message: message.to_string() };
        let mut header: Option<(usize, i32)> = None;
        let mut inst = CountingInstance::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("instance") {
                let mut m = None;
                let mut l = None;
                for tok in rest.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("m=") {
                        m = v.parse::<usize>().ok();
                    } else if let Some(v) = tok.strip_prefix("L=") {
                        l = v.parse::<i32>().ok();
                    } else {
                        return Err(err(line, "expected `instance m=<int> L=<int>`"));
                    }
                }
                let (Some(m), Some(l)) = (m, l) else { return Err(err(line, "expected `instance m=<int> L=<int>`")) };
                header = Some((m, l));
                inst.size = l;
            } else if let Some(rest) = body.strip_prefix("cond") {
                let nums: Vec<usize> = rest
                    .split_whitespace()
                    .map(|v| v.parse().ok())
                    .collect::<Option<_>>()
                    .ok_or_else(|| err(line, "bad condition"))?;
                match nums[..] {
                    [lo, hi] if lo >= 1 && hi >= 1 => inst.conditions.push((lo - 1, hi - 1)),
                    _ => return Err(err(line, "expected `cond <lo> <hi>`")),
                }
            } else if let Some(rest) = body.strip_prefix('B') {
                let (label, tokens) = rest.split_once(':').ok_or_else(|| err(line, "expected `B<i>:`"))?;
                if label.trim().parse::<usize>().ok() != Some(inst.slots.len() + 1) {
                    return Err(err(line, "slots must be numbered 1, 2, ... in order"));
                }
                let mut slot = Vec::new();
                for tok in tokens.split_whitespace() {
                    let inner = tok
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| err(line, "expected `(t,z)`"))?;
                    let (t, z) = inner.split_once(',').ok_or_else(|| err(line, "expected `(t,z)`"))?;
                    let t = t.parse().map_err(|_| err(line, "bad t value"))?;
                    let z = z.parse().map_err(|_| err(line, "bad z value"))?;
                    slot.push(Token::new(t, z));
                }
                inst.slots.push(slot);
            } else {
                return Err(err(line, "unknown line"));
            }
        }
        let (m, _) = header.ok_or_else(|| err(1, "missing `instance` header"))?;
        if m != inst.slots.len() {
            return Err(err(text.lines().count().max(1), "slot count does not match header"));
        }
        if inst.conditions.iter().any(|&(lo, hi)| lo >= m || hi >= m) {
            return Err(err(text.lines().count().max(1), "condition names a missing slot"));
        }
        Ok(inst)
    }
}
