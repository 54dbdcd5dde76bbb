//! Non-abelian representations of the two near hexagons: `Q(5,2) x L3` in
//! `2^{1+12}_+` and `S_θ` in `2^{1+18}_-`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::espgroup::{
    central_power, central_product, d8, generated_order, group_sign, q8, DescriptorJson,
    GroupDescriptor, GroupElement, Sign,
};
use crate::fgeom::{PartialLinearSpace, Spread};
use crate::gmodels::{
    build_duad_q52, build_product_l3, duad_coordinates, elliptic_form, swap_pairs,
};
use crate::report::VerificationReport;
use crate::stheta::SThetaGeometry;
use crate::triples::AdmissibleTriple;

/// `B·m`, where `B` is the Gram matrix of the polar form.
pub fn bar_vector(m: u8) -> u8 {
    swap_pairs(m)
}

/// Interleave `m` (even generators) and `n` (odd generators) into a vector
/// of the 12-generator descriptor.
pub fn interleave(m: u8, n: u8) -> u64 {
    (0..6).fold(0u64, |acc, k| {
        acc | (u64::from(m >> k & 1) << (2 * k)) | (u64::from(n >> k & 1) << (2 * k + 1))
    })
}

/// `2^{1+12}_+` as six commuting copies of `D8`; copy `k` is generated by
/// the `k`-th coordinates of `M` and `M̄`.
pub fn descriptor_12() -> GroupDescriptor {
    central_power(&d8(), 6).expect("valid")
}

pub fn m_element(m: u8) -> GroupElement {
    GroupElement::new(0, interleave(m, 0))
}

pub fn mbar_element(m: u8) -> GroupElement {
    GroupElement::new(0, interleave(0, bar_vector(m)))
}

/// `m m̄`, times `λ` unless `m` is zero or singular.
pub fn doublebar_element(m: u8, is_quadric_point: bool) -> GroupElement {
    GroupElement::new(u8::from(!is_quadric_point), interleave(m, bar_vector(m)))
}

pub fn is_zero_or_singular(m: u8) -> bool {
    m == 0 || elliptic_form(m) == 0
}

#[derive(Debug, Clone)]
pub struct Representation {
    pub desc: GroupDescriptor,
    pub psi: Vec<GroupElement>,
    pub geometry: PartialLinearSpace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub group: DescriptorJson,
    pub psi: Vec<GroupElement>,
}

impl Representation {
    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            group: self.desc.to_json(),
            psi: self.psi.clone(),
        }
    }

    pub fn from_json(json: &RepresentationJson, geometry: PartialLinearSpace) -> Result<Self> {
        let desc = GroupDescriptor::from_json(&json.group)?;
        for &g in &json.psi {
            desc.check(g)?;
        }
        Ok(Representation {
            desc,
            psi: json.psi.clone(),
            geometry,
        })
    }
}

/// The representation of `Q(5,2) x L3` on the duad model: `x ↦ m_x`,
/// `x̄ ↦ m̄_x`, `x̿ ↦ m_x m̄_x`.
pub fn build_rep_81() -> Result<Representation> {
    let duad = build_duad_q52();
    let coords = duad_coordinates(&duad)?;
    let geometry = build_product_l3(&duad);
    let mut psi: Vec<GroupElement> = coords.iter().map(|&m| m_element(m)).collect();
    psi.extend(coords.iter().map(|&m| mbar_element(m)));
    psi.extend(coords.iter().map(|&m| doublebar_element(m, true)));
    Ok(Representation {
        desc: descriptor_12(),
        psi,
        geometry,
    })
}

/// `2^{1+6}_-` as `D8 ∘ D8 ∘ Q8` with generators `a, b, c, d, i, j`.
pub fn descriptor_6() -> GroupDescriptor {
    let dd = central_product(&d8(), &d8()).expect("valid");
    central_product(&dd, &q8()).expect("valid")
}

/// Values of `δ` on the duad model, as words in `a, b, c, d, i, j`, with
/// `k = ij` and a trailing `L` for `λ`.
pub const DELTA_WORDS: [(&str, &str); 27] = [
    ("{1,2}", "a"),
    ("{3,4}", "c"),
    ("{5,6}", "ac"),
    ("{1,4}", "abdi"),
    ("1", "cdj"),
    ("4'", "abckL"),
    ("{2,6}", "abiL"),
    ("2", "acdk"),
    ("6'", "bcdjL"),
    ("{1,6}", "b"),
    ("{2,4}", "bd"),
    ("{3,5}", "d"),
    ("{1,5}", "abci"),
    ("1'", "cdkL"),
    ("5", "abdj"),
    ("{2,3}", "bcdiL"),
    ("2'", "acdjL"),
    ("3", "abk"),
    ("{1,3}", "abcdL"),
    ("{2,5}", "bcL"),
    ("{4,6}", "adL"),
    ("{3,6}", "acdiL"),
    ("3'", "abjL"),
    ("6", "bcdk"),
    ("{4,5}", "cdi"),
    ("4", "abcj"),
    ("5'", "abdkL"),
];

pub fn parse_delta_word(desc: &GroupDescriptor, word: &str) -> Result<GroupElement> {
    let mut letters = Vec::new();
    let mut e = 0;
    for ch in word.chars() {
        match ch {
            'a' => letters.push(0),
            'b' => letters.push(1),
            'c' => letters.push(2),
            'd' => letters.push(3),
            'i' => letters.push(4),
            'j' => letters.push(5),
            'k' => letters.extend([4, 5]),
            'L' => e ^= 1,
            _ => return Err(Error::Parse(format!("letter {ch:?} in {word:?}"))),
        }
    }
    Ok(desc.word(&letters, e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTable {
    pub desc: GroupDescriptor,
    /// Indexed by point of the duad model.
    pub delta: Vec<GroupElement>,
}

pub fn delta_table(duad: &PartialLinearSpace) -> Result<DeltaTable> {
    let desc = descriptor_6();
    let mut delta = vec![None; duad.num_points()];
    for (label, word) in DELTA_WORDS {
        let p = duad
            .point_index(label)
            .ok_or_else(|| Error::Construction(format!("no point labelled {label}")))?;
        delta[p] = Some(parse_delta_word(&desc, word)?);
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(p, d)| d.ok_or_else(|| Error::Construction(format!("no value at point {p}"))))
        .collect::<Result<_>>()?;
    Ok(DeltaTable { desc, delta })
}

pub fn verify_delta(
    duad: &PartialLinearSpace,
    spread: &Spread,
    dt: &DeltaTable,
) -> Result<VerificationReport> {
    let n = duad.num_points();
    let d = &dt.delta;
    let desc = &dt.desc;
    let mut r = VerificationReport::new("delta table");

    let inv = (0..n).find(|&p| !desc.is_involution(d[p]).unwrap_or(false));
    r.record_with("images are involutions", n as u64, inv.map(|p| format!("point {p}")));

    let mut dup = None;
    let mut pairs = 0u64;
    let mut comm = None;
    for x in 0..n {
        for y in x + 1..n {
            pairs += 1;
            if d[x] == d[y] && dup.is_none() {
                dup = Some(format!("points {x} and {y}"));
            }
            let commute = desc.commutator(d[x], d[y])?.is_identity();
            if commute != duad.collinear(x, y) && comm.is_none() {
                comm = Some(format!("points {x} and {y}"));
            }
        }
    }
    r.record_with("(i) injective", pairs, dup);
    r.record_with("(ii) commute iff collinear", pairs, comm);

    let mut prod = None;
    let mut cases = 0u64;
    for (li, l) in duad.lines().iter().enumerate() {
        for (x, y, z) in ordered_pairs(*l) {
            cases += 1;
            let mut p = desc.mul(d[x], d[y])?;
            if !spread.contains(li) {
                p = p.times_lambda();
            }
            if p != d[z] && prod.is_none() {
                prod = Some(format!("line {li}, pair ({x},{y})"));
            }
        }
    }
    r.record_with("(iii) products along lines", cases, prod);

    let gen = generated_order(desc, d)?;
    r.record_with(
        "(iv) images generate the group",
        1,
        (gen.order != desc.order() || !gen.contains_lambda)
            .then(|| format!("generated order {}", gen.order)),
    );
    Ok(r)
}

/// `(x, y, x*y)` for the six ordered pairs of distinct points on a line.
fn ordered_pairs([a, b, c]: [usize; 3]) -> [(usize, usize, usize); 6] {
    [(a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonLabeling {
    pub eps: Vec<u8>,
}

/// Propagate `ε(α2) = ε(α1) + θ(L1, L2)` over collinear pairs on distinct
/// spread lines, starting from `ε = 0` at the first point of the first
/// spread line.
pub fn build_epsilon(
    duad: &PartialLinearSpace,
    spread: &Spread,
    triple: &AdmissibleTriple,
) -> Result<EpsilonLabeling> {
    let n = duad.num_points();
    let pos = spread.point_map(duad);
    let step = |x: usize, y: usize| triple.get(pos[x], pos[y]);
    let x0 = duad.line(spread.lines[0])[0];
    let mut eps: Vec<Option<u8>> = vec![None; n];
    eps[x0] = Some(0);
    let mut queue = std::collections::VecDeque::from([x0]);
    while let Some(x) = queue.pop_front() {
        let ex = eps[x].expect("queued points are labelled");
        for y in duad.neighbours(x).iter() {
            if pos[y] == pos[x] {
                continue;
            }
            let want = (ex + step(x, y)) % 3;
            match eps[y] {
                None => {
                    eps[y] = Some(want);
                    queue.push_back(y);
                }
                Some(e) if e != want => {
                    return Err(Error::InconsistentLabeling(format!(
                        "points {x} and {y}: {e} != {want}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let eps: Vec<u8> = eps
        .into_iter()
        .enumerate()
        .map(|(p, e)| e.ok_or_else(|| Error::InconsistentLabeling(format!("point {p} unreached"))))
        .collect::<Result<_>>()?;
    for &l in &spread.lines {
        let mut vals = duad.line(l).map(|p| eps[p]);
        vals.sort_unstable();
        if vals != [0, 1, 2] {
            return Err(Error::InconsistentLabeling(format!(
                "spread line {l} receives {vals:?}"
            )));
        }
    }
    Ok(EpsilonLabeling { eps })
}

/// For distinct spread lines `L1, L2` and `αi ∈ Li`: `α1 ~ α2` iff
/// `ε(α2) − ε(α1) = θ(L1, L2)`.
pub fn verify_epsilon(
    duad: &PartialLinearSpace,
    spread: &Spread,
    triple: &AdmissibleTriple,
    eps: &EpsilonLabeling,
) -> VerificationReport {
    let e = &eps.eps;
    let mut r = VerificationReport::new("epsilon labeling");
    let bij = spread.lines.iter().find(|&&l| {
        let mut v = duad.line(l).map(|p| e[p]);
        v.sort_unstable();
        v != [0, 1, 2]
    });
    r.record_with(
        "bijective on each spread line",
        spread.len() as u64,
        bij.map(|l| format!("line {l}")),
    );
    let mut fail = None;
    let mut cases = 0u64;
    for (i, &l1) in spread.lines.iter().enumerate() {
        for (j, &l2) in spread.lines.iter().enumerate() {
            if i == j {
                continue;
            }
            for a in duad.line(l1) {
                for b in duad.line(l2) {
                    cases += 1;
                    let shift = (e[b] + 3 - e[a]) % 3 == triple.get(i, j);
                    if shift != duad.collinear(a, b) && fail.is_none() {
                        fail = Some(format!("points {a} and {b}"));
                    }
                }
            }
        }
    }
    r.record_with("collinear iff labels differ by theta", cases, fail);
    r
}

/// `2^{1+18}_-`: the 12-generator group followed by `a, b, c, d, i, j`.
pub fn descriptor_18() -> GroupDescriptor {
    central_product(&descriptor_12(), &descriptor_6()).expect("valid")
}

/// `ψ(a, b, i) = φ(b) φ(ā) δ(u)` with `u ∈ ab`, `ε(u) = i`; `ψ = φ` on the
/// points of the first three kinds.
pub fn build_rep_243(g: &SThetaGeometry) -> Result<Representation> {
    let rep81 = build_rep_81()?;
    if g.duad.lines() != &rep81.geometry.lines()[..g.duad.num_lines()] {
        return Err(Error::Construction("geometry is not built on the duad model".into()));
    }
    let dt = delta_table(&g.duad)?;
    let eps = build_epsilon(&g.duad, &g.spread, &g.triple)?;
    let desc = descriptor_18();
    let shift = rep81.desc.n();
    let phi = &rep81.psi;
    let mut psi = phi.clone();
    for &(a, b, i) in &g.p4 {
        let line = g
            .duad
            .line_of(a, b)
            .ok_or_else(|| Error::Construction(format!("points {a}, {b} not collinear")))?;
        let u = g
            .duad
            .line(line)
            .into_iter()
            .find(|&u| eps.eps[u] == i)
            .ok_or_else(|| Error::InconsistentLabeling(format!("no label {i} on line {line}")))?;
        let head = desc.product(phi[b], phi[g.bar(a)]);
        psi.push(desc.product(head, dt.delta[u].shifted(shift)));
    }
    Ok(Representation {
        desc,
        psi,
        geometry: g.space.clone(),
    })
}

/// Summary figures recorded alongside a representation's checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationSummary {
    pub points: usize,
    pub lines: usize,
    pub group_order: String,
    pub generated_order: String,
    pub sign: Sign,
    pub distance_pairs: u64,
}

pub fn verify_representation(rep: &Representation) -> Result<(VerificationReport, RepresentationSummary)> {
    let desc = &rep.desc;
    let space = &rep.geometry;
    let n = space.num_points();
    let psi = &rep.psi;
    let mut r = VerificationReport::new(format!("representation of {}", space.name()));

    r.record_with(
        "map is total",
        n as u64,
        (psi.len() != n).then(|| format!("{} images for {n} points", psi.len())),
    );
    if psi.len() != n {
        let summary = RepresentationSummary {
            points: n,
            lines: space.num_lines(),
            group_order: desc.order().to_string(),
            generated_order: "0".into(),
            sign: group_sign(desc)?,
            distance_pairs: 0,
        };
        return Ok((r, summary));
    }
    for &g in psi {
        desc.check(g)?;
    }

    let inv = (0..n).find(|&p| !desc.is_involution(psi[p]).unwrap_or(false));
    r.record_with("images are involutions", n as u64, inv.map(|p| format!("point {p}")));

    let mut r2 = None;
    let mut cases = 0u64;
    for (li, l) in space.lines().iter().enumerate() {
        for (x, y, z) in ordered_pairs(*l) {
            cases += 1;
            let ok = psi[x] != psi[y] && desc.product(psi[x], psi[y]) == psi[z];
            if !ok && r2.is_none() {
                r2 = Some(format!("line {li}, pair ({x},{y})"));
            }
        }
    }
    r.record_with("(R2) line products", cases, r2);

    let gen = generated_order(desc, psi)?;
    r.record_with(
        "(R1) images generate the group",
        1,
        (gen.order != desc.order()).then(|| format!("generated order {}", gen.order)),
    );

    let mut sorted = psi.clone();
    sorted.sort_unstable();
    sorted.dedup();
    r.record_with(
        "faithful",
        n as u64,
        (sorted.len() != n).then(|| format!("{} distinct images", sorted.len())),
    );

    let dt = space.distances();
    let mut law = None;
    let mut non_abelian = false;
    let mut pairs = 0u64;
    for x in 0..n {
        for y in x + 1..n {
            pairs += 1;
            let c = desc.cocycle(psi[x].v, psi[y].v) ^ desc.cocycle(psi[y].v, psi[x].v);
            non_abelian |= c == 1;
            if (c == 1) != (dt.get(x, y) == 3) && law.is_none() {
                law = Some(format!("points {x} and {y} at distance {}", dt.get(x, y)));
            }
        }
    }
    r.record("non-abelian", pairs, non_abelian);
    r.record_with("commutator nontrivial iff distance 3", pairs, law);

    let summary = RepresentationSummary {
        points: n,
        lines: space.num_lines(),
        group_order: desc.order().to_string(),
        generated_order: gen.order.to_string(),
        sign: group_sign(desc)?,
        distance_pairs: pairs,
    };
    r.note("group order", &summary.group_order);
    r.note("sign", summary.sign.to_string());
    r.note(
        "lambda membership",
        if gen.closure_checked {
            "rank method and explicit closure"
        } else {
            "rank method"
        },
    );
    Ok((r, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::espgroup::verify_descriptor;
    use crate::gmodels::{canonical_spread, polar_form};
    use crate::stheta::build_stheta;
    use crate::triples::{coordinatize_ag23, spread_linear_space};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (PartialLinearSpace, Spread, AdmissibleTriple) {
        let q = build_duad_q52();
        let s = canonical_spread(&q).unwrap();
        let ls = spread_linear_space(&q, &s).unwrap();
        let t = AdmissibleTriple::from_coords(ls.clone(), coordinatize_ag23(&ls, 0).unwrap());
        (q, s, t)
    }

    #[test]
    fn bar_basics() {
        assert_eq!(bar_vector(0), 0);
        for a in 0..64u8 {
            for b in 0..64u8 {
                assert_eq!(bar_vector(a ^ b), bar_vector(a) ^ bar_vector(b));
            }
        }
    }

    #[test]
    fn bar_commutator_is_polar_form() {
        let desc = descriptor_12();
        let singular: Vec<u8> = (1..64).filter(|&m| elliptic_form(m) == 0).collect();
        assert_eq!(singular.len(), 27);
        for &m in &singular {
            for mp in 0..64u8 {
                let c = desc.commutator(mbar_element(m), m_element(mp)).unwrap();
                assert_eq!(c, GroupElement::new(polar_form(m, mp), 0));
            }
        }
    }

    #[test]
    fn doublebar_values() {
        assert_eq!(doublebar_element(0, true), GroupElement::IDENTITY);
        let desc = descriptor_12();
        let m = (1..64).find(|&m| elliptic_form(m) == 0).unwrap();
        let g = doublebar_element(m, true);
        assert_eq!(g.e, 0);
        assert!(desc.is_involution(g).unwrap());
        assert_eq!(desc.mul(m_element(m), mbar_element(m)).unwrap(), g);
    }

    #[test]
    fn doublebar_is_homomorphism() {
        let desc = descriptor_12();
        let db = |m: u8| doublebar_element(m, is_zero_or_singular(m));
        for m1 in 1..64u8 {
            for m2 in 1..64u8 {
                if m1 != m2 {
                    assert_eq!(desc.mul(db(m1), db(m2)).unwrap(), db(m1 ^ m2), "{m1} {m2}");
                }
            }
        }
    }

    #[test]
    fn rep_81_line_products_and_order() {
        let rep = build_rep_81().unwrap();
        let q = build_duad_q52();
        for l in q.lines() {
            assert_eq!(rep.desc.mul(rep.psi[l[0]], rep.psi[l[1]]).unwrap(), rep.psi[l[2]]);
        }
        let gen = generated_order(&rep.desc, &rep.psi).unwrap();
        assert_eq!(gen.order, 8192);
        assert!(gen.contains_lambda);
        for x in 0..27 {
            for y in q.neighbours(x).iter() {
                assert!(rep.desc.commutator(rep.psi[x], rep.psi[27 + y]).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn m_side_is_elementary_abelian() {
        let rep = build_rep_81().unwrap();
        let gen = generated_order(&rep.desc, &rep.psi[..27]).unwrap();
        assert_eq!((gen.order, gen.contains_lambda), (64, false));
    }

    #[test]
    fn rep_81_verifies() {
        let rep = build_rep_81().unwrap();
        let (r, s) = verify_representation(&rep).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!((s.group_order.as_str(), s.sign), ("8192", Sign::Plus));
        assert_eq!(s.distance_pairs, 3240);
    }

    #[test]
    fn delta_entries() {
        let q = build_duad_q52();
        let dt = delta_table(&q).unwrap();
        let at = |l: &str| dt.delta[q.point_index(l).unwrap()];
        assert_eq!(at("{1,4}"), GroupElement::new(0, 0b011011));
        assert_eq!(at("4'"), GroupElement::new(1, 0b110111));
        assert_eq!(at("1"), GroupElement::new(0, 0b101100));
        assert_eq!(group_sign(&dt.desc).unwrap(), Sign::Minus);
        let (a, c) = (at("{1,2}"), at("{3,4}"));
        assert_eq!(dt.desc.mul(a, c).unwrap(), at("{5,6}"));
    }

    #[test]
    fn delta_verifies() {
        let (q, s, _) = setup();
        let dt = delta_table(&q).unwrap();
        let r = verify_delta(&q, &s, &dt).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("(ii) commute iff collinear").unwrap().universe, 351);
    }

    #[test]
    fn delta_mutations_fail() {
        let (q, s, _) = setup();
        let dt = delta_table(&q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..12 {
            let mut bad = dt.clone();
            let p = rng.gen_range(0..27);
            let flip = GroupElement::new(rng.gen_range(0..2), rng.gen_range(1..64));
            bad.delta[p] = bad.desc.product(bad.delta[p], flip);
            assert!(!verify_delta(&q, &s, &bad).unwrap().passed());
        }
    }

    #[test]
    fn epsilon_properties() {
        let (q, s, t) = setup();
        let eps = build_epsilon(&q, &s, &t).unwrap();
        let x0 = q.line(s.lines[0])[0];
        assert_eq!(eps.eps[x0], 0);
        let lstar = q.line(s.lines[0]);
        for y in 0..27 {
            if !lstar.contains(&y) {
                let x = *lstar.iter().find(|&&x| q.collinear(x, y)).unwrap();
                assert_eq!(eps.eps[y], eps.eps[x]);
            }
        }
        let r = verify_epsilon(&q, &s, &t, &eps);
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("collinear iff labels differ by theta").unwrap().universe, 648);
    }

    #[test]
    fn epsilon_for_other_origins() {
        let (q, s, t) = setup();
        for origin in 1..9 {
            let ls = t.base.clone();
            let t2 = AdmissibleTriple::from_coords(ls.clone(), coordinatize_ag23(&ls, origin).unwrap());
            let eps = build_epsilon(&q, &s, &t2).unwrap();
            assert!(verify_epsilon(&q, &s, &t2, &eps).passed());
        }
    }

    #[test]
    fn rep_243_verifies() {
        let (q, s, t) = setup();
        let g = build_stheta(&q, &s, &t).unwrap();
        let rep = build_rep_243(&g).unwrap();
        assert!(verify_descriptor(&rep.desc, 1).passed());
        let (r, sum) = verify_representation(&rep).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!((sum.group_order.as_str(), sum.sign), ("524288", Sign::Minus));
        assert_eq!(sum.distance_pairs, 29403);
    }

    #[test]
    fn l8_delta_parts_multiply() {
        let (q, s, t) = setup();
        let g = build_stheta(&q, &s, &t).unwrap();
        let rep = build_rep_243(&g).unwrap();
        let mask = 0b111111u64 << 12;
        for (li, l) in g.space.lines().iter().enumerate() {
            if g.space.line_tag(li) == Some("L8") {
                let parts: Vec<u64> = l.iter().map(|&p| rep.psi[p].v & mask).collect();
                assert_eq!(parts[0] ^ parts[1], parts[2]);
            }
        }
    }

    #[test]
    fn mutated_image_fails() {
        let mut rep = build_rep_81().unwrap();
        rep.psi[5] = GroupElement::IDENTITY;
        let (r, _) = verify_representation(&rep).unwrap();
        assert!(!r.get("images are involutions").unwrap().passed);
        assert!(!r.get("(R2) line products").unwrap().passed);
    }

    #[test]
    fn json_round_trip() {
        let rep = build_rep_81().unwrap();
        let s = serde_json::to_string(&rep.to_json()).unwrap();
        let back: RepresentationJson = serde_json::from_str(&s).unwrap();
        let rep2 = Representation::from_json(&back, rep.geometry.clone()).unwrap();
        assert_eq!(rep2.psi, rep.psi);
        assert_eq!(rep2.desc, rep.desc);
    }
}
