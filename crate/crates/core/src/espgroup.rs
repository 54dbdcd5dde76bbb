//! Exact arithmetic in extra-special 2-groups.
//!
//! A group is presented by `n = 2m` generators `g_0..g_{n-1}`, a symmetric
//! zero-diagonal Gram table `f(g_i, g_j)` over F2 (`[g_i, g_j] = λ^f`), and
//! square bits `g_i² = λ^{s_i}`. An element `(e, v)` stands for the reduced
//! word `λ^e · Π g_i^{v_i}` taken in increasing index order. Multiplying two
//! reduced words means sorting the concatenation, which costs one commutator
//! for every transposed pair and one square for every repeated generator:
//!
//! ```text
//! (e1, u) · (e2, v) = (e1 + e2 + c(u, v), u + v)
//! c(u, v) = Σ_{i>j} u_i v_j f_ij + Σ_i s_i u_i v_i
//! ```

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::VerificationReport;

pub const MAX_GENERATORS: usize = 62;

/// Largest group (as a power of two) whose λ-membership is also decided by
/// explicit closure.
pub const CLOSURE_LIMIT_BITS: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element has bits beyond generator {n}: v = {v:#x}")]
    DimensionMismatch { n: usize, v: u64 },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("Gram table is degenerate")]
    Degenerate,
    #[error("closure and rank methods disagree on λ-membership (closure: {closure}, rank: {rank})")]
    CrossCheckMismatch { closure: bool, rank: bool },
    #[error("malformed hex: {0:?}")]
    Hex(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct GroupElement {
    /// Exponent of the central involution λ.
    pub e: u8,
    /// Generator exponents, bit i for generator i.
    pub v: u64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { e: 0, v: 0 };
    pub const LAMBDA: GroupElement = GroupElement { e: 1, v: 0 };

    pub fn new(e: u8, v: u64) -> Self {
        GroupElement { e: e & 1, v }
    }

    pub fn generator(i: usize) -> Self {
        GroupElement { e: 0, v: 1 << i }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn is_central_lambda(self) -> bool {
        self == Self::LAMBDA
    }

    /// Multiply by λ.
    pub fn times_lambda(self) -> Self {
        GroupElement { e: self.e ^ 1, v: self.v }
    }

    /// Place this element's generator bits at an offset, for embedding into
    /// a central product.
    pub fn shifted(self, offset: usize) -> Self {
        GroupElement { e: self.e, v: self.v << offset }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:#x})", self.e, self.v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    n: usize,
    square_bits: u64,
    gram: Vec<u64>,
    /// `cocycle_rows[i]`: bits `j < i` with `f_ij = 1`, plus bit `i` if `s_i`.
    cocycle_rows: Vec<u64>,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

impl GroupDescriptor {
    pub fn new(n: usize, square_bits: u64, gram: Vec<u64>) -> Result<Self, GroupError> {
        if n > MAX_GENERATORS {
            return Err(GroupError::InvalidDescriptor(format!(
                "{n} generators exceeds {MAX_GENERATORS}"
            )));
        }
        if gram.len() != n {
            return Err(GroupError::InvalidDescriptor(format!(
                "{} Gram rows for {n} generators",
                gram.len()
            )));
        }
        if square_bits & !mask(n) != 0 {
            return Err(GroupError::InvalidDescriptor("square bits beyond n".into()));
        }
        for (i, &row) in gram.iter().enumerate() {
            if row & !mask(n) != 0 {
                return Err(GroupError::InvalidDescriptor(format!("row {i} has bits beyond n")));
            }
            if row >> i & 1 == 1 {
                return Err(GroupError::InvalidDescriptor(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if row >> j & 1 != gram[j] >> i & 1 {
                    return Err(GroupError::InvalidDescriptor(format!(
                        "Gram table not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let cocycle_rows = (0..n)
            .map(|i| (gram[i] & ((1u64 << i) - 1)) | (square_bits & (1 << i)))
            .collect();
        Ok(GroupDescriptor {
            n,
            square_bits,
            gram,
            cocycle_rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn square_bits(&self) -> u64 {
        self.square_bits
    }

    pub fn gram(&self) -> &[u64] {
        &self.gram
    }

    /// `log2 |G|`.
    pub fn order_bits(&self) -> u32 {
        self.n as u32 + 1
    }

    pub fn order(&self) -> u128 {
        1u128 << self.order_bits()
    }

    pub fn check(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        if g.v & !mask(self.n) != 0 {
            Err(GroupError::DimensionMismatch { n: self.n, v: g.v })
        } else {
            Ok(g)
        }
    }

    /// Row vector `Σ_{i ∈ u} cocycle_rows[i]`, so that `c(u, v) = <w, v>`.
    #[inline]
    fn cocycle_row(&self, mut u: u64) -> u64 {
        let mut w = 0;
        while u != 0 {
            let i = u.trailing_zeros() as usize;
            w ^= self.cocycle_rows[i];
            u &= u - 1;
        }
        w
    }

    #[inline]
    pub fn cocycle(&self, u: u64, v: u64) -> u8 {
        parity(self.cocycle_row(u) & v)
    }

    /// The symplectic form `f(u, v) = u · Gram · v`.
    pub fn form(&self, mut u: u64, v: u64) -> u8 {
        let mut acc = 0;
        while u != 0 {
            let i = u.trailing_zeros() as usize;
            acc ^= self.gram[i];
            u &= u - 1;
        }
        parity(acc & v)
    }

    /// The quadratic form `q(v) = c(v, v)`: `(e, v)² = λ^{q(v)}`.
    pub fn quadratic(&self, v: u64) -> u8 {
        self.cocycle(v, v)
    }

    /// Multiplication without dimension checks.
    #[inline]
    pub fn product(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement {
            e: g.e ^ h.e ^ self.cocycle(g.v, h.v),
            v: g.v ^ h.v,
        }
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement, GroupError> {
        Ok(self.product(self.check(g)?, self.check(h)?))
    }

    pub fn inverse(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        let g = self.check(g)?;
        Ok(GroupElement {
            e: g.e ^ self.quadratic(g.v),
            v: g.v,
        })
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`, computed by multiplication.
    pub fn commutator(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement, GroupError> {
        let gi = self.inverse(g)?;
        let hi = self.inverse(h)?;
        Ok(self.product(self.product(gi, hi), self.product(g, h)))
    }

    pub fn square(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        self.mul(g, g)
    }

    pub fn element_order(&self, g: GroupElement) -> Result<u32, GroupError> {
        let g = self.check(g)?;
        let mut x = g;
        let mut k = 1;
        while !x.is_identity() {
            x = self.product(x, g);
            k += 1;
        }
        Ok(k)
    }

    pub fn is_involution(&self, g: GroupElement) -> Result<bool, GroupError> {
        Ok(!self.check(g)?.is_identity() && self.square(g)?.is_identity())
    }

    /// Product of generators in the given order, times `λ^e`.
    pub fn word(&self, letters: &[usize], e: u8) -> GroupElement {
        letters.iter().fold(GroupElement::new(e, 0), |acc, &i| {
            self.product(acc, GroupElement::generator(i))
        })
    }

    pub fn to_json(&self) -> DescriptorJson {
        let w = hex_width(self.n);
        DescriptorJson {
            n: self.n,
            square_bits: format!("{:0w$x}", self.square_bits),
            gram: self.gram.iter().map(|r| format!("{r:0w$x}")).collect(),
        }
    }

    pub fn from_json(json: &DescriptorJson) -> Result<Self, GroupError> {
        let gram = json.gram.iter().map(|r| parse_hex(r)).collect::<Result<_, _>>()?;
        GroupDescriptor::new(json.n, parse_hex(&json.square_bits)?, gram)
    }
}

pub fn d8() -> GroupDescriptor {
    GroupDescriptor::new(2, 0, vec![0b10, 0b01]).expect("valid")
}

pub fn q8() -> GroupDescriptor {
    GroupDescriptor::new(2, 0b11, vec![0b10, 0b01]).expect("valid")
}

/// Central product amalgamating the centres: generators of `b` follow those
/// of `a`, and the two blocks commute.
pub fn central_product(a: &GroupDescriptor, b: &GroupDescriptor) -> Result<GroupDescriptor, GroupError> {
    let gram = a
        .gram
        .iter()
        .copied()
        .chain(b.gram.iter().map(|r| r << a.n))
        .collect();
    GroupDescriptor::new(a.n + b.n, a.square_bits | b.square_bits << a.n, gram)
}

pub fn central_power(a: &GroupDescriptor, copies: usize) -> Result<GroupDescriptor, GroupError> {
    let mut acc = GroupDescriptor::new(0, 0, vec![])?;
    for _ in 0..copies {
        acc = central_product(&acc, a)?;
    }
    Ok(acc)
}

/// Arf invariant of `q` relative to `f`, by symplectic Gram–Schmidt over the
/// standard basis.
pub fn arf_invariant(desc: &GroupDescriptor) -> Result<u8, GroupError> {
    let mut pool: Vec<u64> = (0..desc.n).map(|i| 1u64 << i).collect();
    let mut arf = 0;
    while let Some(a) = pool.pop() {
        if a == 0 {
            continue;
        }
        let Some(pos) = pool.iter().position(|&b| desc.form(a, b) == 1) else {
            return Err(GroupError::Degenerate);
        };
        let b = pool.swap_remove(pos);
        arf ^= desc.quadratic(a) & desc.quadratic(b);
        for w in pool.iter_mut() {
            let fa = desc.form(*w, a);
            let fb = desc.form(*w, b);
            if fb == 1 {
                *w ^= a;
            }
            if fa == 1 {
                *w ^= b;
            }
        }
    }
    Ok(arf)
}

/// `+` iff the group is a central product of copies of `D8`.
pub fn group_sign(desc: &GroupDescriptor) -> Result<Sign, GroupError> {
    Ok(if arf_invariant(desc)? == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedSubgroup {
    /// Dimension of the image in `G / Z(G)`.
    pub rank: u32,
    pub order: u128,
    pub contains_lambda: bool,
    /// Whether explicit closure ran and agreed with the rank method.
    pub closure_checked: bool,
}

/// Order of the subgroup generated by `gens`, and whether it contains λ.
///
/// The rank method reduces the generators to a basis of their image modulo
/// the centre using group multiplication; λ is present iff some generator
/// reduces to λ, some basis element squares to λ, or two basis elements fail
/// to commute. When the subgroup is small enough it is also enumerated
/// explicitly and the two answers must agree.
pub fn generated_order(
    desc: &GroupDescriptor,
    gens: &[GroupElement],
) -> Result<GeneratedSubgroup, GroupError> {
    for &g in gens {
        desc.check(g)?;
    }
    let (rank, by_rank) = lambda_by_rank(desc, gens);
    let mut closure_checked = false;
    if rank < CLOSURE_LIMIT_BITS {
        let by_closure = lambda_by_closure(desc, gens);
        if by_closure != by_rank {
            return Err(GroupError::CrossCheckMismatch {
                closure: by_closure,
                rank: by_rank,
            });
        }
        closure_checked = true;
    }
    Ok(GeneratedSubgroup {
        rank,
        order: 1u128 << (rank + by_rank as u32),
        contains_lambda: by_rank,
        closure_checked,
    })
}

fn lambda_by_rank(desc: &GroupDescriptor, gens: &[GroupElement]) -> (u32, bool) {
    let mut pivot: Vec<Option<GroupElement>> = vec![None; 64];
    let mut lambda = false;
    for &g in gens {
        let mut x = g;
        while x.v != 0 {
            let hb = 63 - x.v.leading_zeros() as usize;
            match pivot[hb] {
                Some(p) => x = desc.product(x, p),
                None => break,
            }
        }
        if x.v == 0 {
            lambda |= x.e == 1;
        } else {
            let hb = 63 - x.v.leading_zeros() as usize;
            pivot[hb] = Some(x);
        }
    }
    let basis: Vec<GroupElement> = pivot.into_iter().flatten().collect();
    lambda |= basis.iter().any(|p| desc.quadratic(p.v) == 1);
    lambda |= basis
        .iter()
        .enumerate()
        .any(|(i, p)| basis[i + 1..].iter().any(|r| desc.form(p.v, r.v) == 1));
    (basis.len() as u32, lambda)
}

fn lambda_by_closure(desc: &GroupDescriptor, gens: &[GroupElement]) -> bool {
    let mut distinct: Vec<GroupElement> = gens
        .iter()
        .copied()
        .filter(|g| !g.is_identity())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    distinct.sort();
    let key = |g: GroupElement| (g.v << 1 | g.e as u64) as usize;
    let dense = desc.n < 26;
    let mut bits = if dense { vec![0u64; (1usize << (desc.n + 1)).div_ceil(64)] } else { Vec::new() };
    let mut sparse = HashSet::new();
    let mut insert = |g: GroupElement| -> bool {
        if dense {
            let k = key(g);
            let fresh = bits[k / 64] >> (k % 64) & 1 == 0;
            bits[k / 64] |= 1 << (k % 64);
            fresh
        } else {
            sparse.insert(g)
        }
    };
    insert(GroupElement::IDENTITY);
    let mut queue = VecDeque::from([GroupElement::IDENTITY]);
    let mut lambda = false;
    while let Some(x) = queue.pop_front() {
        let w = desc.cocycle_row(x.v);
        for &g in &distinct {
            let y = GroupElement {
                e: x.e ^ g.e ^ parity(w & g.v),
                v: x.v ^ g.v,
            };
            if insert(y) {
                lambda |= y.is_central_lambda();
                queue.push_back(y);
            }
        }
    }
    lambda
}

/// Checks the group axioms and the extra-special structure of a descriptor.
/// Exhaustive where affordable, sampled (seeded) otherwise.
pub fn verify_descriptor(desc: &GroupDescriptor, seed: u64) -> VerificationReport {
    let n = desc.n;
    let mut report = VerificationReport::new(format!("extra-special descriptor n={n}"));
    let all = |n: usize| (0..1u64 << n).flat_map(|v| [GroupElement::new(0, v), GroupElement::new(1, v)]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| GroupElement::new(rng.gen::<u8>() & 1, rng.gen::<u64>() & mask(n));

    // Associativity.
    let assoc_fail = |a: GroupElement, b: GroupElement, c: GroupElement| {
        let l = desc.product(desc.product(a, b), c);
        let r = desc.product(a, desc.product(b, c));
        (l != r).then(|| format!("({a})({b})({c})"))
    };
    if n <= 6 {
        let elems: Vec<_> = all(n).collect();
        let mut fail = None;
        'a: for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    if let Some(f) = assoc_fail(a, b, c) {
                        fail = Some(f);
                        break 'a;
                    }
                }
            }
        }
        let k = elems.len() as u64;
        report.record_with("associativity (exhaustive)", k * k * k, fail);
    } else {
        const SAMPLES: u64 = 10_000;
        let fail = (0..SAMPLES).find_map(|_| {
            let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
            assoc_fail(a, b, c)
        });
        report.record_with("associativity (sampled)", SAMPLES, fail);
    }

    // Identity and inverses.
    let id_fail = all(n.min(12)).find(|&g| {
        desc.product(g, GroupElement::IDENTITY) != g
            || desc.product(GroupElement::IDENTITY, g) != g
            || desc.inverse(g).map(|h| desc.product(g, h)) != Ok(GroupElement::IDENTITY)
    });
    report.record_with(
        "identity and inverses",
        1 << (n.min(12) + 1),
        id_fail.map(|g| g.to_string()),
    );

    // Centre: elements commuting with every generator.
    let gens: Vec<GroupElement> = (0..n).map(GroupElement::generator).collect();
    let centre_size: u128 = if n <= 20 {
        let count = (0..1u64 << n)
            .filter(|&v| {
                let g = GroupElement::new(0, v);
                gens.iter().all(|&h| desc.product(g, h) == desc.product(h, g))
            })
            .count();
        2 * count as u128
    } else {
        2u128 << (n as u32 - gram_rank(&desc.gram))
    };
    report.record_with(
        "centre is {1, λ}",
        if n <= 20 { 1 << n } else { n as u64 },
        (centre_size != 2).then(|| format!("centre has {centre_size} elements")),
    );

    // Commutators: always in {1, λ}; λ is attained.
    let mut saw_lambda = false;
    let mut bad = None;
    let mut check_pair = |g: GroupElement, h: GroupElement| {
        let c = desc.commutator(g, h).expect("in range");
        if c.v != 0 {
            bad.get_or_insert_with(|| format!("[{g},{h}] = {c}"));
        }
        if c.is_central_lambda() {
            saw_lambda = true;
        }
    };
    let mut pairs = 0u64;
    if n <= 6 {
        for g in all(n) {
            for h in all(n) {
                check_pair(g, h);
                pairs += 1;
            }
        }
    } else {
        for &g in &gens {
            for &h in &gens {
                check_pair(g, h);
                pairs += 1;
            }
        }
        for _ in 0..10_000 {
            check_pair(random(&mut rng), random(&mut rng));
            pairs += 1;
        }
    }
    report.record_with(
        "commutator subgroup is {1, λ}",
        pairs,
        bad.or_else(|| (!saw_lambda).then(|| "group is abelian".to_string())),
    );

    // Squares central; element orders divide 4 and 4 occurs.
    let sample: Vec<GroupElement> = if n <= 20 {
        all(n).collect()
    } else {
        (0..10_000).map(|_| random(&mut rng)).collect()
    };
    let bad_square = sample.iter().find(|&&g| desc.product(g, g).v != 0);
    report.record_with(
        "squares lie in {1, λ}",
        sample.len() as u64,
        bad_square.map(|g| g.to_string()),
    );
    let orders: Vec<u32> = sample.iter().map(|&g| desc.element_order(g).expect("in range")).collect();
    let exponent_ok = orders.iter().all(|o| matches!(o, 1 | 2 | 4));
    report.record_with(
        "exponent 4",
        sample.len() as u64,
        (!exponent_ok || !orders.contains(&4)).then(|| "element orders do not have lcm 4".to_string()),
    );
    report
}

fn gram_rank(rows: &[u64]) -> u32 {
    let mut pivot = [0u64; 64];
    let mut rank = 0;
    for &r in rows {
        let mut x = r;
        while x != 0 {
            let hb = 63 - x.leading_zeros() as usize;
            if pivot[hb] == 0 {
                pivot[hb] = x;
                rank += 1;
                break;
            }
            x ^= pivot[hb];
        }
    }
    rank
}

fn hex_width(n: usize) -> usize {
    n.div_ceil(4).max(1)
}

pub fn parse_hex(s: &str) -> Result<u64, GroupError> {
    let t = s.strip_prefix("0x").unwrap_or(s);
    u64::from_str_radix(t, 16).map_err(|_| GroupError::Hex(s.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub n: usize,
    pub square_bits: String,
    pub gram: Vec<String>,
}

/// `{"e": 0|1, "v": hex}` with bit i of `v` the exponent of generator i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub e: u8,
    pub v: String,
}

impl From<GroupElement> for ElementJson {
    fn from(g: GroupElement) -> Self {
        ElementJson {
            e: g.e,
            v: format!("{:x}", g.v),
        }
    }
}

impl TryFrom<ElementJson> for GroupElement {
    type Error = GroupError;

    fn try_from(j: ElementJson) -> Result<Self, GroupError> {
        if j.e > 1 {
            return Err(GroupError::InvalidDescriptor(format!("centre bit {}", j.e)));
        }
        Ok(GroupElement::new(j.e, parse_hex(&j.v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(e: u8, v: u64) -> GroupElement {
        GroupElement::new(e, v)
    }

    /// Independent Arf oracle: q has 2^{2m-1} + 2^{m-1} zeros iff Arf = 0.
    fn arf_by_counting(desc: &GroupDescriptor) -> u8 {
        let n = desc.n();
        let zeros = (0..1u64 << n).filter(|&v| desc.quadratic(v) == 0).count();
        let plus = (1usize << (n - 1)) + (1usize << (n / 2 - 1));
        if zeros == plus {
            0
        } else {
            1
        }
    }

    #[test]
    fn q8_relations() {
        let q = q8();
        let (i, j) = (GroupElement::generator(0), GroupElement::generator(1));
        let k = q.mul(i, j).unwrap();
        assert_eq!(k, el(0, 0b11));
        assert_eq!(q.square(i).unwrap(), GroupElement::LAMBDA);
        assert_eq!(q.square(k).unwrap(), GroupElement::LAMBDA);
        assert_eq!(q.mul(j, k).unwrap(), i);
        assert_eq!(q.mul(k, i).unwrap(), j);
        assert_eq!(q.commutator(i, j).unwrap(), GroupElement::LAMBDA);
    }

    #[test]
    fn d8_relations() {
        let d = d8();
        let (a, b) = (GroupElement::generator(0), GroupElement::generator(1));
        assert!(d.is_involution(a).unwrap() && d.is_involution(b).unwrap());
        let ab = d.mul(a, b).unwrap();
        let ba = d.mul(b, a).unwrap();
        assert_ne!(ab, ba);
        assert_eq!(ba, ab.times_lambda());
        assert_eq!(d.commutator(a, b).unwrap(), GroupElement::LAMBDA);
        assert_eq!(d.element_order(ab).unwrap(), 4);
        assert_eq!(d.mul(a, GroupElement::IDENTITY).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch_faults() {
        let d = d8();
        assert!(matches!(
            d.mul(el(0, 0b100), GroupElement::IDENTITY),
            Err(GroupError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn signs_of_small_products() {
        let d = d8();
        let q = q8();
        assert_eq!(group_sign(&d).unwrap(), Sign::Plus);
        assert_eq!(group_sign(&q).unwrap(), Sign::Minus);
        for (a, b) in [(&d, &d), (&d, &q), (&q, &d), (&q, &q)] {
            let p = central_product(a, b).unwrap();
            let expected = arf_invariant(a).unwrap() ^ arf_invariant(b).unwrap();
            assert_eq!(arf_invariant(&p).unwrap(), expected);
            assert_eq!(arf_by_counting(&p), expected);
        }
        let qq = central_product(&q, &q).unwrap();
        assert_eq!(group_sign(&qq).unwrap(), Sign::Plus);
        let n6 = central_product(&central_power(&d, 2).unwrap(), &q).unwrap();
        assert_eq!(n6.n(), 6);
        assert_eq!(group_sign(&n6).unwrap(), Sign::Minus);
        assert_eq!(arf_by_counting(&n6), 1);
    }

    #[test]
    fn degenerate_sign_faults() {
        let z = GroupDescriptor::new(2, 0, vec![0, 0]).unwrap();
        assert_eq!(group_sign(&z), Err(GroupError::Degenerate));
    }

    #[test]
    fn invalid_descriptors_rejected() {
        assert!(GroupDescriptor::new(2, 0, vec![0b10, 0b00]).is_err());
        assert!(GroupDescriptor::new(2, 0, vec![0b11, 0b01]).is_err());
        assert!(GroupDescriptor::new(2, 0b100, vec![0b10, 0b01]).is_err());
    }

    #[test]
    fn six_d8_order() {
        let g = central_power(&d8(), 6).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(g.order(), 8192);
        assert_eq!(group_sign(&g).unwrap(), Sign::Plus);
    }

    #[test]
    fn generated_order_cases() {
        let g = central_power(&d8(), 3).unwrap();
        let all: Vec<_> = (0..6).map(GroupElement::generator).collect();
        let full = generated_order(&g, &all).unwrap();
        assert_eq!(full.order, 128);
        assert!(full.contains_lambda && full.closure_checked);
        let one = generated_order(&g, &[GroupElement::generator(0)]).unwrap();
        assert_eq!((one.order, one.contains_lambda), (2, false));
        // a, b·a·b-type dependency: a and aλ generate {1, a, λ, aλ}
        let two = generated_order(&g, &[el(0, 1), el(1, 1)]).unwrap();
        assert_eq!((two.rank, two.order, two.contains_lambda), (1, 4, true));
        // isotropic generators: even generators commute
        let iso: Vec<_> = (0..3).map(|k| GroupElement::generator(2 * k)).collect();
        assert_eq!(generated_order(&g, &iso).unwrap().order, 8);
        assert_eq!(generated_order(&g, &[]).unwrap().order, 1);
    }

    #[test]
    fn verify_small_descriptors() {
        for d in [d8(), q8(), central_product(&d8(), &q8()).unwrap()] {
            let r = verify_descriptor(&d, 7);
            assert!(r.passed(), "{r}");
        }
        let z = GroupDescriptor::new(2, 0, vec![0, 0]).unwrap();
        let r = verify_descriptor(&z, 7);
        assert!(!r.get("centre is {1, λ}").unwrap().passed);
    }

    #[test]
    fn json_round_trip() {
        let d = central_product(&d8(), &q8()).unwrap();
        let j = serde_json::to_string(&d.to_json()).unwrap();
        let back = GroupDescriptor::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, d);
        let g = el(1, 0x2f);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"e":1,"v":"2f"}"#);
        assert_eq!(serde_json::from_str::<GroupElement>(&s).unwrap(), g);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn desc18() -> GroupDescriptor {
            let m = central_power(&d8(), 6).unwrap();
            let n = central_product(&central_power(&d8(), 2).unwrap(), &q8()).unwrap();
            central_product(&m, &n).unwrap()
        }

        fn element(n: usize) -> impl Strategy<Value = GroupElement> {
            (0u8..2, 0u64..(1 << n)).prop_map(|(e, v)| GroupElement::new(e, v))
        }

        proptest! {
            #[test]
            fn associative(a in element(18), b in element(18), c in element(18)) {
                let d = desc18();
                prop_assert_eq!(
                    d.product(d.product(a, b), c),
                    d.product(a, d.product(b, c))
                );
            }

            #[test]
            fn commutator_is_form(a in element(18), b in element(18)) {
                let d = desc18();
                let c = d.commutator(a, b).unwrap();
                prop_assert_eq!(c, GroupElement::new(d.form(a.v, b.v), 0));
            }

            #[test]
            fn square_is_quadratic(a in element(18)) {
                let d = desc18();
                prop_assert_eq!(d.square(a).unwrap(), GroupElement::new(d.quadratic(a.v), 0));
                prop_assert!(matches!(d.element_order(a).unwrap(), 1 | 2 | 4));
            }
        }
    }
}
