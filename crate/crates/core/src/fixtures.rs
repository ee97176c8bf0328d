//! Gadget host maps for each configuration, with role names for the
//! interesting vertices. The outer face is always the ring `c0, c1, ...`.

use std::collections::BTreeMap;

use crate::builder::MapBuilder;
use crate::embed::PlanarMap;
use crate::format::write_nbmap;
use crate::graph::{CycleRef, Vertex};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub map: PlanarMap,
    pub c0: CycleRef,
    pub roles: BTreeMap<&'static str, Vertex>,
}

impl Fixture {
    fn new(name: &'static str, b: MapBuilder, ring: &[Vertex], roles: &[(&'static str, Vertex)]) -> Self {
        let map = b.finish_with_dart((ring[1], ring[0]));
        let c0 = map.outer_cycle().expect("ring bounds the outer face");
        Fixture { name, map, c0, roles: roles.iter().copied().collect() }
    }

    pub fn role(&self, name: &str) -> Vertex {
        self.roles[name]
    }

    /// `.nbmap` text with the role table as leading comments.
    pub fn to_nbmap(&self) -> String {
        let roles: Vec<String> = self.roles.iter().map(|(r, v)| format!("{r}={v}")).collect();
        format!("# {}\n# roles: {}\n{}", self.name, roles.join(" "), write_nbmap(&self.map))
    }
}

pub const FIXTURE_NAMES: &[&str] = &["tetrad", "tetrad_min", "m_face", "mm_face", "fa1", "fa2", "charge_cases"];

pub fn fixture(name: &str) -> Option<Fixture> {
    Some(match name {
        "tetrad" => tetrad(),
        "tetrad_min" => tetrad_min(),
        "m_face" => m_face(),
        "mm_face" => mm_face(),
        "fa1" => fa1(),
        "fa2" => fa2(),
        "charge_cases" => charge_cases(),
        _ => return None,
    })
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES.iter().map(|n| fixture(n).unwrap()).collect()
}

fn ring_and_inner(n: usize) -> (MapBuilder, Vec<Vertex>, Vec<(Vertex, Vertex)>) {
    let (b, c) = MapBuilder::cycle(n);
    let inner = b.faces().into_iter().find(|w| w.contains(&(c[0], c[1]))).unwrap();
    (b, c, inner)
}

/// Ring of 14; the tetrad runs from `x = c0` to `y = c3`, the apexes hang
/// inside and are joined by a path, with `t12` also tied to `c8`.
fn tetrad() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(14);
    let v = b.ear_in(&inner, c[0], c[3], 4);
    let t12 = b.ear(v[0], v[1], 1, &[c[13]])[0];
    let t34 = b.ear(v[2], v[3], 1, &[c[13]])[0];
    let p = b.ear(t12, t34, 4, &[c[13]]);
    b.ear(t12, c[8], 0, &[c[13]]);
    let roles = [
        ("v1", v[0]),
        ("v2", v[1]),
        ("v3", v[2]),
        ("v4", v[3]),
        ("t12", t12),
        ("t34", t34),
        ("x", c[0]),
        ("y", c[3]),
        ("a", p[0]),
        ("d", p[3]),
    ];
    Fixture::new("tetrad", b, &c, &roles)
}

/// The smallest host: ring of 14, four bad vertices and two apexes.
fn tetrad_min() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(14);
    let v = b.ear_in(&inner, c[0], c[3], 4);
    let t12 = b.ear(v[0], v[1], 1, &[c[13]])[0];
    let t34 = b.ear(v[2], v[3], 1, &[c[13]])[0];
    let roles =
        [("v1", v[0]), ("v2", v[1]), ("v3", v[2]), ("v4", v[3]), ("t12", t12), ("t34", t34), ("x", c[0]), ("y", c[3])];
    Fixture::new("tetrad_min", b, &c, &roles)
}

/// Ring of 12 with `v4 = c0`; `t78` is tied to `c4` and `t23` to `c7`.
fn m_face() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(12);
    let right = b.ear_in(&inner, c[0], c[4], 4);
    let (v5, v6, v7, t78) = (right[0], right[1], right[2], right[3]);
    let left = b.ear(c[0], c[7], 3, &[v5]);
    let (v3, v2, t23) = (left[0], left[1], left[2]);
    let top = b.ear(v2, v7, 2, &[c[5]]);
    let (v1, v8) = (top[0], top[1]);
    b.ear(t78, v8, 0, &[c[5]]);
    b.ear(t23, v3, 0, &[c[9]]);
    let t18 = b.ear(v1, v8, 1, &[c[5]])[0];
    let t56 = b.ear(v5, v6, 1, &[c[2]])[0];
    let roles = [
        ("v1", v1),
        ("v2", v2),
        ("v3", v3),
        ("v4", c[0]),
        ("v5", v5),
        ("v6", v6),
        ("v7", v7),
        ("v8", v8),
        ("t18", t18),
        ("t23", t23),
        ("t56", t56),
        ("t78", t78),
    ];
    Fixture::new("m_face", b, &c, &roles)
}

/// Ring of 12 with `v5 = c0`; `t56` is tied to `c6` and `t23` to `c8`.
fn mm_face() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(12);
    let t56 = b.ear_in(&inner, c[0], c[6], 1)[0];
    let v6 = b.ear(c[0], t56, 1, &[c[8]])[0];
    let left = b.ear(c[0], c[8], 3, &[v6]);
    let (v4, v3, t23) = (left[0], left[1], left[2]);
    let top = b.ear(v6, v3, 4, &[t56]);
    let (v7, v8, v1, v2) = (top[0], top[1], top[2], top[3]);
    b.ear(t23, v2, 0, &[c[7]]);
    let t78 = b.ear(v7, v8, 1, &[c[7]])[0];
    let t18 = b.ear(v8, v1, 1, &[c[7]])[0];
    let t45 = b.ear(c[0], v4, 1, &[c[10]])[0];
    let roles = [
        ("v1", v1),
        ("v2", v2),
        ("v3", v3),
        ("v4", v4),
        ("v5", c[0]),
        ("v6", v6),
        ("v7", v7),
        ("v8", v8),
        ("t18", t18),
        ("t23", t23),
        ("t45", t45),
        ("t56", t56),
        ("t78", t78),
    ];
    Fixture::new("mm_face", b, &c, &roles)
}

/// Ring of 12 holding `t34, v3, v2, v1, t18` as `c0..c4`; the willing
/// `v7` is tied to `c9`.
fn fa1() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(12);
    let v = b.ear_in(&inner, c[1], c[3], 5);
    let (v4, v5, v6, v7, v8) = (v[0], v[1], v[2], v[3], v[4]);
    b.ear(c[0], v4, 0, &[c[5]]);
    b.ear(c[4], v8, 0, &[c[6]]);
    b.ear(v7, c[9], 0, &[c[6]]);
    let t56 = b.ear(v5, v6, 1, &[c[10]])[0];
    let roles = [
        ("v1", c[3]),
        ("v2", c[2]),
        ("v3", c[1]),
        ("v4", v4),
        ("v5", v5),
        ("v6", v6),
        ("v7", v7),
        ("v8", v8),
        ("t18", c[4]),
        ("t34", c[0]),
        ("t56", t56),
    ];
    Fixture::new("fa1", b, &c, &roles)
}

/// Ring of 8 holding `t34, v3, v2, v1, t18` as `c0..c4`; the poor `v6`
/// carries two 3-faces.
fn fa2() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(8);
    let v = b.ear_in(&inner, c[1], c[3], 5);
    let (v4, v5, v6, v7, v8) = (v[0], v[1], v[2], v[3], v[4]);
    b.ear(c[0], v4, 0, &[c[5]]);
    b.ear(c[4], v8, 0, &[c[6]]);
    let t56 = b.ear(v5, v6, 1, &[c[6]])[0];
    let t67 = b.ear(v6, v7, 1, &[c[6]])[0];
    let roles = [
        ("v1", c[3]),
        ("v2", c[2]),
        ("v3", c[1]),
        ("v4", v4),
        ("v5", v5),
        ("v6", v6),
        ("v7", v7),
        ("v8", v8),
        ("t18", c[4]),
        ("t34", c[0]),
        ("t56", t56),
        ("t67", t67),
    ];
    Fixture::new("fa2", b, &c, &roles)
}

/// One vertex for each local charge situation: a content pair, bad,
/// willing, 4-vertices with zero, one and two 3-faces, a 5-vertex with two
/// 3-faces, and a ring vertex of degree 4.
fn charge_cases() -> Fixture {
    let (mut b, c, inner) = ring_and_inner(20);
    let z = b.ear_in(&inner, c[2], c[3], 1)[0];
    let p = b.ear(z, c[9], 5, &[c[5]]);
    let q = b.ear(c[12], c[19], 7, &[z]);
    let x = b.ear(q[3], p[2], 4, &[c[0]]);
    b.ear(q[3], c[16], 4, &[c[14]]);
    b.ear(q[5], q[6], 1, &[c[18]]);
    b.ear(q[5], c[18], 4, &[c[17]]);
    b.ear(q[0], q[1], 1, &[c[13]]);
    b.ear(q[1], q[2], 1, &[c[13]]);
    let r = b.ear(c[4], c[8], 5, &[p[0]]);
    b.ear(r[1], r[2], 1, &[z]);
    b.ear(r[2], r[3], 1, &[z]);
    b.ear(r[2], c[6], 3, &[c[5]]);
    b.ear(c[10], x[1], 3, &[c[11]]);
    b.ear(c[10], p[3], 5, &[c[9]]);
    let roles = [
        ("ring2", c[0]),
        ("content", c[2]),
        ("ring3", c[9]),
        ("ring4", c[10]),
        ("bad", z),
        ("willing3", p[2]),
        ("four_n0", q[3]),
        ("four_n1", q[5]),
        ("four_n2", q[1]),
        ("five_n2", r[2]),
    ];
    Fixture::new("charge_cases", b, &c, &roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{self, HitKind};

    fn kinds(f: &Fixture) -> Vec<HitKind> {
        let cls = detect::classify(&f.map, &f.c0).unwrap();
        let mut hits = detect::find_tetrads(&f.map, &cls);
        hits.extend(detect::find_m_faces(&f.map, &cls));
        hits.extend(detect::find_mm_faces(&f.map, &cls));
        hits.extend(detect::find_fa_faces(&cls).hits);
        hits.into_iter().map(|h| h.kind).collect()
    }

    #[test]
    fn fixtures_are_in_the_class() {
        for f in all_fixtures() {
            let g = f.map.graph();
            assert!(g.cycle_in_length_range(4, 7).is_none(), "{} has a 4-7 cycle", f.name);
            assert!(f.c0.len() <= 20, "{}", f.name);
            assert!(g.cut_vertices().is_empty() || f.name == "charge_cases", "{}", f.name);
        }
    }

    #[test]
    fn host_sizes() {
        let n = |name: &str| fixture(name).unwrap().map.graph().vertex_count();
        assert_eq!(n("tetrad"), 24);
        assert_eq!(n("tetrad_min"), 20);
        assert_eq!(n("m_face"), 23);
        assert_eq!(n("mm_face"), 24);
        assert_eq!(n("fa1"), 18);
        assert_eq!(n("fa2"), 15);
    }

    #[test]
    fn each_gadget_has_exactly_its_configuration() {
        assert_eq!(kinds(&fixture("tetrad").unwrap()), vec![HitKind::Tetrad]);
        assert_eq!(kinds(&fixture("tetrad_min").unwrap()), vec![HitKind::Tetrad]);
        assert_eq!(kinds(&fixture("m_face").unwrap()), vec![HitKind::MFace]);
        assert_eq!(kinds(&fixture("mm_face").unwrap()), vec![HitKind::MmFace]);
        assert_eq!(kinds(&fixture("fa1").unwrap()), vec![HitKind::Fa1]);
        assert_eq!(kinds(&fixture("fa2").unwrap()), vec![HitKind::Fa2]);
        assert!(kinds(&fixture("charge_cases").unwrap()).is_empty());
    }

    #[test]
    fn hit_roles_match_the_construction() {
        for (name, kind) in [
            ("tetrad", HitKind::Tetrad),
            ("m_face", HitKind::MFace),
            ("mm_face", HitKind::MmFace),
            ("fa1", HitKind::Fa1),
            ("fa2", HitKind::Fa2),
        ] {
            let f = fixture(name).unwrap();
            let cls = detect::classify(&f.map, &f.c0).unwrap();
            let hit = detect::detect_all(&f.map, &cls).into_iter().find(|h| h.kind == kind).unwrap();
            // the canonical labeling may be the mirrored one
            let shared: Vec<&String> = hit.roles.iter().map(|(r, _)| r).filter(|r| f.roles.contains_key(r.as_str())).collect();
            let direct = shared.iter().all(|r| hit.role(r) == Some(f.role(r)));
            let mirrored = {
                let mut a: Vec<Vertex> = shared.iter().map(|r| hit.role(r).unwrap()).collect();
                let mut b: Vec<Vertex> = shared.iter().map(|r| f.role(r)).collect();
                a.sort();
                b.sort();
                a == b
            };
            assert!(direct || mirrored, "{name}: {}", hit.describe());
        }
    }

    #[test]
    fn charge_cases_flags() {
        let f = charge_cases();
        let cls = detect::classify(&f.map, &f.c0).unwrap();
        let g = f.map.graph();
        assert!(cls.is_content(f.role("content")));
        assert!(cls.is_bad(f.role("bad")));
        assert!(cls.is_willing(f.role("willing3")) && !cls.is_bad(f.role("willing3")));
        for (r, d, n3) in [("four_n0", 4, 0), ("four_n1", 4, 1), ("four_n2", 4, 2), ("five_n2", 5, 2)] {
            let v = f.role(r);
            assert_eq!(g.degree(v), d, "{r}");
            assert_eq!(detect::triangles_at(&f.map, v).len(), n3, "{r}");
        }
        assert!(cls.is_willing(f.role("four_n1")) && cls.is_willing(f.role("four_n2")));
        assert!(!cls.is_willing(f.role("four_n0")));
        assert_eq!(g.degree(f.role("ring4")), 4);
        assert_eq!(g.degree(f.role("ring2")), 2);
    }

    #[test]
    fn fa_content_vertices_become_special() {
        for name in ["fa1", "fa2"] {
            let f = fixture(name).unwrap();
            let cls = detect::classify(&f.map, &f.c0).unwrap();
            assert!(cls.is_special(f.role("v1")) && cls.is_special(f.role("v3")), "{name}");
            assert_eq!(detect::find_fa_faces(&cls).n_fa, 1);
        }
    }
}
