//! Concrete models of `Q(5,2)` and of the product near hexagon `Q(5,2) x L3`.

use crate::error::{Error, Result};
use crate::fgeom::{find_isomorphism, GeometryJson, PartialLinearSpace, Spread};

/// Identifier of the elliptic form used by [`build_quadric_q52`].
pub const ELLIPTIC_FORM: &str = "x1*x2 + x3*x4 + x5^2 + x5*x6 + x6^2";

/// Elliptic quadratic form on F2^6; bit i of `x` is coordinate `x_{i+1}`.
pub fn elliptic_form(x: u8) -> u8 {
    let b = |i: u8| x >> i & 1;
    (b(0) & b(1)) ^ (b(2) & b(3)) ^ b(4) ^ (b(4) & b(5)) ^ b(5)
}

/// Polarization `g(x, y) = Q(x + y) + Q(x) + Q(y)`: the standard symplectic
/// form pairing coordinates (1,2), (3,4), (5,6).
pub fn polar_form(x: u8, y: u8) -> u8 {
    ((x & swap_pairs(y)).count_ones() & 1) as u8
}

/// Gram matrix of [`polar_form`] applied to a vector.
pub fn swap_pairs(m: u8) -> u8 {
    ((m & 0b010101) << 1) | ((m & 0b101010) >> 1)
}

pub fn duad_label(i: usize, j: usize) -> String {
    format!("{{{},{}}}", i.min(j), i.max(j))
}

pub fn symbol_label(i: usize) -> String {
    i.to_string()
}

pub fn primed_label(i: usize) -> String {
    format!("{i}'")
}

/// `Q(5,2)` on the 15 duads of `{1..6}` and two copies of the six symbols.
///
/// Points: duads in lexicographic order, then `1..6`, then `1'..6'`.
/// Lines: the 15 synthemes, then `{i, {i,j}, j'}` for `i != j`.
pub fn build_duad_q52() -> PartialLinearSpace {
    let mut labels = Vec::with_capacity(27);
    let mut duad = [[usize::MAX; 7]; 7];
    for i in 1..=6 {
        for j in i + 1..=6 {
            duad[i][j] = labels.len();
            duad[j][i] = labels.len();
            labels.push(duad_label(i, j));
        }
    }
    let symbol = |i: usize| 14 + i;
    let primed = |i: usize| 20 + i;
    labels.extend((1..=6).map(symbol_label));
    labels.extend((1..=6).map(primed_label));

    let mut lines = Vec::with_capacity(45);
    for a in 2..=6 {
        let rest: Vec<usize> = (2..=6).filter(|&x| x != a).collect();
        let b = rest[0];
        for &c in &rest[1..] {
            let others: Vec<usize> = rest.iter().copied().filter(|&x| x != b && x != c).collect();
            lines.push([duad[1][a], duad[b][c], duad[others[0]][others[1]]]);
        }
    }
    for i in 1..=6 {
        for j in 1..=6 {
            if i != j {
                lines.push([symbol(i), duad[i][j], primed(j)]);
            }
        }
    }
    PartialLinearSpace::new("Q(5,2) duad model", labels, lines)
}

/// The nine lines `L1..L9` of the canonical regular spread, by point labels.
pub const CANONICAL_SPREAD_LABELS: [[&str; 3]; 9] = [
    ["{1,2}", "{3,4}", "{5,6}"],
    ["{1,4}", "1", "4'"],
    ["{2,6}", "2", "6'"],
    ["{1,6}", "{2,4}", "{3,5}"],
    ["{1,5}", "1'", "5"],
    ["{2,3}", "2'", "3"],
    ["{1,3}", "{2,5}", "{4,6}"],
    ["{3,6}", "3'", "6"],
    ["{4,5}", "4", "5'"],
];

pub fn canonical_spread(duad: &PartialLinearSpace) -> Result<Spread> {
    let lines = CANONICAL_SPREAD_LABELS
        .iter()
        .map(|labels| {
            let pts = labels.map(|l| duad.point_index(l));
            let pts = match pts {
                [Some(a), Some(b), Some(c)] => [a, b, c],
                _ => return Err(Error::Construction(format!("unknown label in {labels:?}"))),
            };
            duad.find_line(pts)
                .ok_or_else(|| Error::Construction(format!("{labels:?} is not a line")))
        })
        .collect::<Result<Vec<_>>>()?;
    let spread = Spread::new(lines);
    spread.validate(duad)?;
    Ok(spread)
}

#[derive(Debug, Clone)]
pub struct QuadricModel {
    pub space: PartialLinearSpace,
    /// Vector in F2^6 of each point.
    pub coords: Vec<u8>,
    pub form: &'static str,
}

impl QuadricModel {
    pub fn to_json(&self) -> GeometryJson {
        GeometryJson {
            coords: Some(self.coords.clone()),
            form: Some(self.form.to_string()),
            ..self.space.to_json()
        }
    }
}

/// `Q(5,2)` as the 27 singular points of the elliptic quadric in `PG(5,2)`.
pub fn build_quadric_q52() -> QuadricModel {
    let coords: Vec<u8> = (1u8..64).filter(|&x| elliptic_form(x) == 0).collect();
    let index = |x: u8| coords.iter().position(|&c| c == x);
    let mut lines = Vec::new();
    for (i, &x) in coords.iter().enumerate() {
        for (j, &y) in coords.iter().enumerate().skip(i + 1) {
            let z = x ^ y;
            if polar_form(x, y) != 0 {
                continue;
            }
            if let Some(k) = index(z) {
                if k > j {
                    lines.push([i, j, k]);
                }
            }
        }
    }
    let labels = coords.iter().map(|c| format!("<{c:06b}>")).collect();
    QuadricModel {
        space: PartialLinearSpace::new("Q(5,2) elliptic quadric", labels, lines),
        coords,
        form: ELLIPTIC_FORM,
    }
}

/// Quadric vector of each duad point, transported by the first isomorphism
/// found between the two models.
pub fn duad_coordinates(duad: &PartialLinearSpace) -> Result<Vec<u8>> {
    let quadric = build_quadric_q52();
    let iso = find_isomorphism(duad, &quadric.space)
        .ok_or_else(|| Error::Construction("no isomorphism between Q(5,2) models".into()))?;
    Ok(iso.into_iter().map(|q| quadric.coords[q]).collect())
}

pub fn bar_label(label: &str) -> String {
    format!("bar{label}")
}

pub fn double_bar_label(label: &str) -> String {
    format!("bbar{label}")
}

/// Three copies of `q` joined along corresponding points. Copy `c` of point
/// `x` has index `c * |q| + x`; lines are tagged `L1`..`L4` (first copy,
/// second, third, joins).
pub fn build_product_l3(q: &PartialLinearSpace) -> PartialLinearSpace {
    let n = q.num_points();
    let mut labels: Vec<String> = q.labels().to_vec();
    labels.extend(q.labels().iter().map(|l| bar_label(l)));
    labels.extend(q.labels().iter().map(|l| double_bar_label(l)));
    let mut lines = Vec::with_capacity(3 * q.num_lines() + n);
    let mut tags = Vec::with_capacity(lines.capacity());
    for (c, tag) in ["L1", "L2", "L3"].into_iter().enumerate() {
        for l in q.lines() {
            lines.push(l.map(|p| c * n + p));
            tags.push(tag.to_string());
        }
    }
    for x in 0..n {
        lines.push([x, n + x, 2 * n + x]);
        tags.push("L4".to_string());
    }
    PartialLinearSpace::new(format!("{} x L3", q.name()), labels, lines).with_tags(tags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgeom::{
        distance, is_line_preserving, is_regular_spread, verify_near_polygon,
        verify_partial_linear,
    };

    #[test]
    fn duad_census() {
        let q = build_duad_q52();
        assert_eq!(q.num_points(), 27);
        assert_eq!(q.num_lines(), 45);
        assert!(verify_partial_linear(&q).passed());
        let r = verify_near_polygon(&q).unwrap();
        assert!(r.is_gq(2, 4), "{r:?}");
    }

    #[test]
    fn duad_named_lines() {
        let q = build_duad_q52();
        let id = |l: &str| q.point_index(l).unwrap();
        assert!(q.find_line([id("{1,2}"), id("{3,4}"), id("{5,6}")]).is_some());
        assert!(q.find_line([id("2"), id("{2,6}"), id("6'")]).is_some());
        assert!(q.find_line([id("2"), id("{2,6}"), id("2'")]).is_none());
        let l = q.find_line([id("1"), id("{1,4}"), id("4'")]).unwrap();
        assert_eq!(crate::fgeom::third_point(&q, l, id("1"), id("4'")), Ok(id("{1,4}")));
    }

    #[test]
    fn canonical_spread_is_regular() {
        let q = build_duad_q52();
        let s = canonical_spread(&q).unwrap();
        assert_eq!(s.len(), 9);
        let id = |l: &str| q.point_index(l).unwrap();
        assert!(s.contains(q.find_line([id("{1,4}"), id("1"), id("4'")]).unwrap()));
        assert!(s.contains(q.find_line([id("{1,3}"), id("{2,5}"), id("{4,6}")]).unwrap()));
        let r = is_regular_spread(&q, &s).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("grid third line in spread").unwrap().universe, 36);
    }

    #[test]
    fn singular_vector_count_by_enumeration() {
        // 63 nonzero vectors; count the singular ones directly.
        let singular = (1u8..64).filter(|&x| elliptic_form(x) == 0).count();
        assert_eq!(singular, 27);
    }

    #[test]
    fn quadric_model_structure() {
        let m = build_quadric_q52();
        assert_eq!(m.space.num_points(), 27);
        assert_eq!(m.space.num_lines(), 45);
        for l in m.space.lines() {
            assert_eq!(m.coords[l[0]] ^ m.coords[l[1]] ^ m.coords[l[2]], 0);
        }
        // g(m_x, m_y) = 0 iff d(x, y) <= 1
        for x in 0..27 {
            for y in 0..27 {
                let close = distance(&m.space, x, y).unwrap() <= 1;
                assert_eq!(polar_form(m.coords[x], m.coords[y]) == 0, close);
            }
        }
        assert!(verify_near_polygon(&m.space).unwrap().is_gq(2, 4));
    }

    #[test]
    fn polar_form_is_polarization() {
        for x in 0u8..64 {
            for y in 0u8..64 {
                assert_eq!(
                    polar_form(x, y),
                    elliptic_form(x ^ y) ^ elliptic_form(x) ^ elliptic_form(y)
                );
            }
        }
    }

    #[test]
    fn models_isomorphic_with_abelian_embedding() {
        let q = build_duad_q52();
        let m = build_quadric_q52();
        let iso = find_isomorphism(&q, &m.space).unwrap();
        assert!(is_line_preserving(&q, &m.space, &iso));
        let coords = duad_coordinates(&q).unwrap();
        for l in q.lines() {
            assert_eq!(coords[l[0]] ^ coords[l[1]] ^ coords[l[2]], 0);
        }
    }

    #[test]
    fn product_census() {
        let q = build_duad_q52();
        let p = build_product_l3(&q);
        assert_eq!(p.num_points(), 81);
        assert_eq!(p.num_lines(), 162);
        assert_eq!(p.num_lines(), 81 * 6 / 3);
        let r = verify_near_polygon(&p).unwrap();
        assert_eq!(r.diameter, 3);
        assert!(r.near_polygon && r.dense);
        assert_eq!(r.lines_per_point, Some(6));
    }

    #[test]
    fn product_distances() {
        let q = build_duad_q52();
        let p = build_product_l3(&q);
        let (a, b) = (q.point_index("{1,2}").unwrap(), q.point_index("{3,4}").unwrap());
        assert!(q.collinear(a, b));
        assert_eq!(distance(&p, a, 27 + b), Ok(2));
        let v = q.point_index("{1,3}").unwrap();
        assert!(!q.perp(a).contains(v));
        assert_eq!(distance(&p, 27 + a, v), Ok(3));
    }
}
