use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::InvariantError;
use crate::diagram::GaussDiagram;

/// Largest number of arrows a [`GaussCode`] can hold.
pub const MAX_ARROWS: usize = 4;

/// Canonical code of a Gauss diagram with at most [`MAX_ARROWS`] arrows on
/// an interval: the endpoint pattern with arrows numbered by first
/// occurrence, the arrow signs, and the component label of each endpoint.
///
/// Text form: `T1H1:+:1.2` (tail of arrow 1, then its head; positive;
/// tail on component 1, head on component 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussCode {
    arrows: u8,
    /// `2 * arrow + [head]` for each endpoint in order.
    ends: [u8; 2 * MAX_ARROWS],
    signs: [i8; MAX_ARROWS],
    comps: [u8; 2 * MAX_ARROWS],
}

/// One endpoint of a subdiagram before canonical renumbering.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RawEnd {
    pub arrow: usize,
    pub head: bool,
    pub component: usize,
}

impl GaussCode {
    /// Renumbers arrows by first occurrence. `ends` must be in interval
    /// order and `signs` is indexed by the raw arrow numbers.
    pub(crate) fn canonical(ends: &[RawEnd], signs: &[i8]) -> Self {
        debug_assert!(ends.len() <= 2 * MAX_ARROWS && ends.len().is_multiple_of(2));
        let mut code = GaussCode { arrows: (ends.len() / 2) as u8, ends: [0; 8], signs: [0; 4], comps: [0; 8] };
        let mut renumber = [u8::MAX; 2 * MAX_ARROWS];
        let mut next = 0u8;
        for (i, e) in ends.iter().enumerate() {
            if renumber[e.arrow] == u8::MAX {
                renumber[e.arrow] = next;
                code.signs[usize::from(next)] = signs[e.arrow];
                next += 1;
            }
            code.ends[i] = 2 * renumber[e.arrow] + u8::from(e.head);
            code.comps[i] = e.component as u8;
        }
        code
    }

    pub fn arrow_count(&self) -> usize {
        usize::from(self.arrows)
    }

    /// `(arrow, is_head)` per endpoint, arrows numbered from 0.
    pub fn endpoints(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.ends[..2 * self.arrow_count()].iter().map(|&e| (usize::from(e / 2), e % 2 == 1))
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs[..self.arrow_count()]
    }

    /// Zero-based component label per endpoint.
    pub fn components(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps[..2 * self.arrow_count()].iter().map(|&c| usize::from(c))
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, head) in self.endpoints() {
            write!(f, "{}{}", if head { 'H' } else { 'T' }, a + 1)?;
        }
        f.write_str(":")?;
        for &s in self.signs() {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        f.write_str(":")?;
        for (i, c) in self.components().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", c + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed Gauss code `{code}`: {reason}")]
pub struct CodeParseError {
    pub code: String,
    pub reason: &'static str,
}

impl FromStr for GaussCode {
    type Err = CodeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason| CodeParseError { code: s.to_string(), reason };
        let mut parts = s.split(':');
        let (Some(pattern), Some(signs), Some(comps), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(fail("expected three `:`-separated fields"));
        };

        let mut ends = Vec::new();
        let mut chars = pattern.chars().peekable();
        while let Some(role) = chars.next() {
            let head = match role {
                'T' => false,
                'H' => true,
                _ => return Err(fail("endpoint role must be T or H")),
            };
            let mut digits = String::new();
            while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(*c);
                chars.next();
            }
            let arrow: usize = digits.parse().map_err(|_| fail("missing arrow number"))?;
            if arrow == 0 || arrow > MAX_ARROWS {
                return Err(fail("arrow number out of range"));
            }
            ends.push((arrow - 1, head));
        }
        let arrows = ends.len() / 2;
        if ends.len() % 2 == 1 || ends.len() > 2 * MAX_ARROWS {
            return Err(fail("wrong number of endpoints"));
        }
        let mut seen = [[false; 2]; MAX_ARROWS];
        let mut next = 0;
        for &(a, head) in &ends {
            if a >= arrows || seen[a][usize::from(head)] {
                return Err(fail("each arrow needs exactly one tail and one head"));
            }
            if !seen[a][0] && !seen[a][1] {
                if a != next {
                    return Err(fail("arrows must be numbered by first occurrence"));
                }
                next += 1;
            }
            seen[a][usize::from(head)] = true;
        }

        let sign_list: Vec<i8> = signs
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(fail("signs must be + or -")),
            })
            .collect::<Result<_, _>>()?;
        if sign_list.len() != arrows {
            return Err(fail("one sign per arrow"));
        }
        let comp_list: Vec<usize> = if comps.is_empty() {
            Vec::new()
        } else {
            comps
                .split('.')
                .map(|c| c.parse::<usize>().ok().filter(|&c| (1..=256).contains(&c)))
                .collect::<Option<_>>()
                .ok_or_else(|| fail("bad component label"))?
        };
        if comp_list.len() != ends.len() {
            return Err(fail("one component label per endpoint"));
        }
        let raw: Vec<RawEnd> =
            ends.iter().zip(&comp_list).map(|(&(arrow, head), &c)| RawEnd { arrow, head, component: c - 1 }).collect();
        Ok(GaussCode::canonical(&raw, &sign_list))
    }
}

/// Sparse nonnegative vector over Gauss codes of at most `order` arrows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhiVector {
    pub order: usize,
    pub entries: BTreeMap<GaussCode, BigUint>,
}

impl PhiVector {
    pub fn new(order: usize) -> Self {
        Self { order, entries: BTreeMap::new() }
    }

    pub fn get(&self, code: &GaussCode) -> BigUint {
        self.entries.get(code).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, code: GaussCode, amount: BigUint) {
        if !amount.is_zero() {
            *self.entries.entry(code).or_default() += amount;
        }
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigUint {
        self.entries.values().sum()
    }
}

impl fmt::Display for PhiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines: Vec<(String, &BigUint)> = self.entries.iter().map(|(c, v)| (c.to_string(), v)).collect();
        lines.sort();
        for (code, v) in lines {
            writeln!(f, "{code} {v}")?;
        }
        Ok(())
    }
}

/// `Σ_{i=1..d} C(n, i)`, the mass of the order-`d` vector of an
/// `n`-crossing diagram.
pub fn expected_mass(n: usize, d: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::from(1u32);
    for i in 1..=d.min(n) {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        total += &binom;
    }
    total
}

fn check_order(d: usize) -> Result<(), InvariantError> {
    if (1..=MAX_ARROWS).contains(&d) {
        Ok(())
    } else {
        Err(InvariantError::OrderOutOfRange { order: d, max: MAX_ARROWS })
    }
}

/// Sum of all subdiagrams with `1..=d` arrows, by direct enumeration.
pub fn phi_2d(gauss: &GaussDiagram, d: usize) -> Result<PhiVector, InvariantError> {
    check_order(d)?;
    let mut counts: HashMap<GaussCode, u64> = HashMap::new();
    let mut chosen = Vec::with_capacity(d);
    enumerate_subsets(gauss, d, 0, &mut chosen, &mut counts);
    let mut v = PhiVector::new(d);
    for (code, c) in counts {
        v.add(code, BigUint::from(c));
    }
    Ok(v)
}

fn enumerate_subsets(
    g: &GaussDiagram,
    d: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    counts: &mut HashMap<GaussCode, u64>,
) {
    for i in from..g.arrows.len() {
        chosen.push(i);
        *counts.entry(subdiagram_code(g, chosen)).or_insert(0) += 1;
        if chosen.len() < d {
            enumerate_subsets(g, d, i + 1, chosen, counts);
        }
        chosen.pop();
    }
}

fn subdiagram_code(g: &GaussDiagram, arrows: &[usize]) -> GaussCode {
    let mut ends: Vec<(usize, RawEnd)> = Vec::with_capacity(2 * arrows.len());
    let mut signs = [0i8; MAX_ARROWS];
    for (j, &i) in arrows.iter().enumerate() {
        let a = &g.arrows[i];
        signs[j] = a.sign;
        ends.push((a.tail, RawEnd { arrow: j, head: false, component: a.components.0 }));
        ends.push((a.head, RawEnd { arrow: j, head: true, component: a.components.1 }));
    }
    ends.sort_unstable_by_key(|e| e.0);
    let raw: Vec<RawEnd> = ends.into_iter().map(|e| e.1).collect();
    GaussCode::canonical(&raw, &signs)
}

/// Finitely supported rational weights on Gauss codes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Functional {
    pub weights: BTreeMap<GaussCode, BigRational>,
}

impl Functional {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn indicator(code: GaussCode) -> Self {
        let mut f = Self::zero();
        f.weights.insert(code, BigRational::from_integer(1.into()));
        f
    }

    /// Largest arrow count in the support.
    pub fn order(&self) -> usize {
        self.weights.keys().map(GaussCode::arrow_count).max().unwrap_or(0)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines: Vec<(String, &BigRational)> = self.weights.iter().map(|(c, w)| (c.to_string(), w)).collect();
        lines.sort();
        for (code, w) in lines {
            writeln!(f, "{code} {w}")?;
        }
        Ok(())
    }
}

pub fn apply_functional(omega: &Functional, v: &PhiVector) -> BigRational {
    let mut total = BigRational::zero();
    for (code, w) in &omega.weights {
        if let Some(c) = v.entries.get(code) {
            total += w * BigRational::from_integer(BigInt::from(c.clone()));
        }
    }
    total
}

/// Linking number as a functional on one-arrow codes: `±1/2` on every
/// arrow between components 1 and 2.
pub fn omega_lk() -> Functional {
    let half = BigRational::new(1.into(), 2.into());
    let mut f = Functional::zero();
    for head_first in [false, true] {
        for (tail_comp, head_comp) in [(0, 1), (1, 0)] {
            for sign in [1i8, -1] {
                let tail = RawEnd { arrow: 0, head: false, component: tail_comp };
                let head = RawEnd { arrow: 0, head: true, component: head_comp };
                let ends = if head_first { [head, tail] } else { [tail, head] };
                let w = if sign > 0 { half.clone() } else { -half.clone() };
                f.weights.insert(GaussCode::canonical(&ends, &[sign]), w);
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, to_gauss};
    use crate::grid::{make_hopf_link, make_torus_link, make_unknot};
    use num_traits::Signed;

    #[test]
    fn code_text_round_trips() {
        for s in ["T1H1:+:1.2", "H1T1:-:1.1", "T1T2H1H2:+-:1.1.1.1", "T1H2T2H1:++:1.1.2.2"] {
            let c: GaussCode = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        for bad in
            ["T1H1:+", "T2H2:+:1.1", "T1T1:+:1.1", "T1H1:+-:1.1", "T1H1:+:1", "X1H1:+:1.1", "T1H2T2H1:++:0.1.1.1"]
        {
            assert!(bad.parse::<GaussCode>().is_err(), "{bad}");
        }
    }

    #[test]
    fn empty_and_mass() {
        let g = to_gauss(&build_diagram(&make_unknot(3)));
        assert!(phi_2d(&g, 2).unwrap().entries.is_empty());
        let g = to_gauss(&build_diagram(&make_torus_link(3)));
        let n = g.n();
        assert_eq!(phi_2d(&g, 1).unwrap().mass(), BigUint::from(n));
        assert_eq!(phi_2d(&g, 2).unwrap().mass(), BigUint::from(n + n * (n - 1) / 2));
        assert_eq!(phi_2d(&g, 3).unwrap().mass(), expected_mass(n, 3));
        assert!(phi_2d(&g, 0).is_err());
        assert!(phi_2d(&g, 5).is_err());
    }

    #[test]
    fn functionals() {
        let g = to_gauss(&build_diagram(&make_hopf_link()));
        let v = phi_2d(&g, 1).unwrap();
        assert!(apply_functional(&Functional::zero(), &v).is_zero());
        let (code, coef) = v.entries.iter().next().unwrap();
        assert_eq!(
            apply_functional(&Functional::indicator(*code), &v),
            BigRational::from_integer(BigInt::from(coef.clone()))
        );
        let lk = apply_functional(&omega_lk(), &v);
        assert_eq!(lk.abs(), BigRational::from_integer(1.into()));
        assert_eq!(omega_lk().weights.len(), 8);
        let t3 = phi_2d(&to_gauss(&build_diagram(&make_torus_link(3))), 1).unwrap();
        assert_eq!(apply_functional(&omega_lk(), &t3).abs(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn expected_mass_small_cases() {
        assert_eq!(expected_mass(0, 3), BigUint::zero());
        assert_eq!(expected_mass(4, 2), BigUint::from(10u32));
        assert_eq!(expected_mass(5, 3), BigUint::from(25u32));
    }
}
