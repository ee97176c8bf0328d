//! The eleven acceptance criteria, one PASS/FAIL line each.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use nearbip::coloring::{check_superextendable, count_all, solve, validate};
use nearbip::corpus::{choose_outer, classic, classics, gnp_pool, standard_corpus};
use nearbip::detect::{classify, detect_all, HitKind};
use nearbip::discharge::{audit_map, discharge, initial_charges, regular_vertices, Element, ElementKind, Thirds, Verdict};
use nearbip::fixtures::{all_fixtures, fixture};
use nearbip::reduce::{lift_unchecked, verify_reducibility, verify_reducibility_with, ReductionTrace};
use nearbip::{Coloring, CycleRef, Graph, PlanarMap, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Corpus maps re-rooted on a short face, plus the fixtures.
fn audit_inputs() -> (Vec<(String, PlanarMap, CycleRef)>, usize) {
    let corpus = standard_corpus(500, 40, 2024);
    let mut out = Vec::new();
    let mut skipped = 0;
    for (i, (_, m)) in corpus.iter().enumerate() {
        match choose_outer(m) {
            Some((m, c0)) => out.push((format!("corpus#{i}"), m, c0)),
            None => skipped += 1,
        }
    }
    for fx in all_fixtures() {
        out.push((fx.name.to_string(), fx.map, fx.c0));
    }
    (out, skipped)
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut graphs = gnp_pool(240, 10, 1);
    graphs.extend(classics().into_iter().map(|(_, g)| g));
    for (i, g) in graphs.iter().enumerate() {
        let solved = solve(g, &Coloring::new()).map_err(|e| e.to_string())?.is_some();
        let counted = count_all(g).map_err(|e| e.to_string())? > 0;
        ensure(solved == counted, || format!("graph #{i}: solve says {solved}, count_all says {counted}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} graphs agree in {t:.2?}", graphs.len()))
}

fn c2_known_negatives() -> Outcome {
    for name in ["k4", "moser"] {
        let g = classic(name).unwrap();
        ensure(solve(&g, &Coloring::new()).unwrap().is_none(), || format!("{name} reported near-bipartite"))?;
    }
    for name in ["c3", "c5", "c8", "bowtie"] {
        let g = classic(name).unwrap();
        let c = solve(&g, &Coloring::new()).unwrap().ok_or(format!("{name} reported NOT near-bipartite"))?;
        ensure(validate(&g, &c).unwrap().is_none(), || format!("{name}: certificate does not validate"))?;
    }
    Ok("K4 and Moser spindle rejected; C3, C5, C8, bowtie certified".into())
}

fn c3_class_empirics() -> Outcome {
    let start = Instant::now();
    let corpus = standard_corpus(500, 40, 2024);
    let mut tri = 0;
    for (p, m) in &corpus {
        let g = m.graph();
        ensure(g.vertex_count() <= 40 && g.cycle_in_length_range(4, 7).is_none(), || format!("{p:?} left the class"))?;
        let c = solve(g, &Coloring::new()).unwrap().ok_or(format!("{p:?}: no IF-coloring"))?;
        ensure(validate(g, &c).unwrap().is_none(), || format!("{p:?}: invalid certificate"))?;
        tri += usize::from(g.girth() == Some(3));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("{} maps ({tri} with triangles) all colored in {t:.2?}", corpus.len()))
}

fn c4_euler_identity() -> Outcome {
    let corpus = standard_corpus(500, 40, 2024);
    let mut n = 0;
    let maps = corpus.iter().map(|(_, m)| m.clone()).chain(all_fixtures().into_iter().map(|f| f.map));
    for m in maps {
        let l = initial_charges(&m).map_err(|e| e.to_string())?;
        ensure(l.totals().0 == Thirds::ZERO, || format!("initial total {}", l.totals().0))?;
        n += 1;
    }
    Ok(format!("initial total 0 on {n} maps"))
}

fn c5_conservation() -> Outcome {
    let (inputs, _) = audit_inputs();
    for (name, m, c0) in &inputs {
        let (l, _) = discharge(m, c0).map_err(|e| format!("{name}: {e}"))?;
        let (a, b, c) = l.totals();
        ensure(a == Thirds::ZERO && b == Thirds::ZERO && c == Thirds::ZERO, || format!("{name}: totals {a} {b} {c}"))?;
        for (e, line) in &l.lines {
            ensure(line.kind != ElementKind::Face || line.final_ <= Thirds::ZERO, || {
                format!("{name}: internal face {e} ends at {}", line.final_)
            })?;
        }
    }
    Ok(format!("ch1 and final totals 0, internal faces <= 0, on {} inputs", inputs.len()))
}

/// Final charge of `v` by the per-case arithmetic, from local data only.
fn closed_form(m: &PlanarMap, c0: &CycleRef, v: Vertex) -> Option<i64> {
    let g = m.graph();
    let d = g.degree(v) as i64;
    let outer = m.outer_face();
    let corners = m.corners(v);
    // the cases assume 2-connectivity: each corner lies in a distinct face
    if corners.iter().collect::<BTreeSet<_>>().len() != corners.len() {
        return None;
    }
    let internal: Vec<usize> =
        m.corners(v).into_iter().filter(|&f| f != outer).map(|f| m.face(f).degree()).collect();
    let n3 = internal.iter().filter(|&&x| x == 3).count() as i64;
    if internal.iter().any(|&x| x != 3 && x < 8) {
        return None;
    }
    // all values in thirds: start at 3(d - 4), add what arrives, subtract what leaves
    let start = 3 * (d - 4);
    if c0.vertex_set().contains(&v) {
        return match (d, n3) {
            // 2/3 from its 8+-face, 4/3 from the outer face
            (2, 0) => Some(start + 2 + 4),
            // content: 1/3 to the 3-face, then 4/3 either way (from the outer
            // face if special, else 1/3 from the 8+-face and 1 from the outer face)
            (3, 1) => Some(start - 1 + 4),
            // both internal faces 8+: only 1 from the outer face
            (3, 0) => Some(start + 3),
            // 1 from the outer face, 1/3 to each of the d - 1 internal faces
            (d, _) if d >= 4 => Some(start + 3 - (d - 1)),
            _ => None,
        };
    }
    match (d, n3) {
        // willing: 1/3 from each of three 8+-faces
        (3, 0) => Some(start + 3),
        // bad: 1/3 to the 3-face, 2/3 from each 8+-face
        (3, 1) => Some(start - 1 + 2 * 2),
        // poor: 1/3 to each 3-face, 1/3 back from as many 8+-faces
        (4, k) if k <= 2 => Some(start - k + k),
        // 1/3 to each 3-face, plus 1/3 to the 8+-face between two of them
        (5, k) if k <= 2 => Some(start - k - i64::from(k == 2)),
        _ => None,
    }
}

fn c6_closed_forms() -> Outcome {
    let fx = fixture("charge_cases").unwrap();
    let (ledger, _) = discharge(&fx.map, &fx.c0).map_err(|e| e.to_string())?;
    let expected: BTreeMap<&str, i64> = [
        ("ring2", 0),
        ("content", 0),
        ("ring3", 0),
        ("ring4", 0),
        ("bad", 0),
        ("willing3", 0),
        ("four_n0", 0),
        ("four_n1", 0),
        ("four_n2", 0),
        ("five_n2", 0),
    ]
    .into_iter()
    .collect();
    for (role, want) in &expected {
        let v = fx.role(role);
        let got = ledger.vertex(v).final_.0;
        let oracle = closed_form(&fx.map, &fx.c0, v).ok_or(format!("{role}: no case applies"))?;
        ensure(got == *want && oracle == *want, || format!("{role} (v{v}): ledger {got}/3, closed form {oracle}/3"))?;
    }
    // every regular vertex elsewhere with an applicable case agrees too
    let (inputs, _) = audit_inputs();
    let mut checked = 0;
    for (name, m, c0) in &inputs {
        let (l, _) = discharge(m, c0).map_err(|e| e.to_string())?;
        for v in regular_vertices(m) {
            if let Some(want) = closed_form(m, c0, v) {
                let got = l.line(Element::Vertex(v)).final_.0;
                ensure(got == want, || format!("{name}: v{v} ledger {got}/3, closed form {want}/3"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} constructed cases exact; {checked} further vertices agree", expected.len()))
}

fn c7_worked_ledger() -> Outcome {
    let (b, _) = nearbip::builder::MapBuilder::cycle(8);
    let m = b.finish_with_dart((1, 0));
    let c0 = m.outer_cycle().unwrap();
    let (l, _) = discharge(&m, &c0).map_err(|e| e.to_string())?;
    let inner = m.faces().iter().find(|f| f.id != m.outer_face()).unwrap().id;
    let (ch1_inner, fin_outer) = (l.face(inner).ch1.0, l.face(m.outer_face()).final_.0);
    let total = l.totals().2;
    ensure(ch1_inner == -4 && fin_outer == 4 && total == Thirds::ZERO, || {
        format!("inner ch1 {ch1_inner}/3, outer final {fin_outer}/3, total {total}")
    })?;
    Ok("inner face ch1 = -4/3, outer final = 4/3, total 0".into())
}

fn c8_reducibility() -> Outcome {
    let mut parts = Vec::new();
    for (name, kind) in
        [("tetrad", HitKind::Tetrad), ("tetrad_min", HitKind::Tetrad), ("m_face", HitKind::MFace), ("mm_face", HitKind::MmFace)]
    {
        let fx = fixture(name).unwrap();
        let cls = classify(&fx.map, &fx.c0).unwrap();
        let hit = detect_all(&fx.map, &cls).into_iter().find(|h| h.kind == kind).ok_or(format!("{name}: no hit"))?;
        let r = verify_reducibility(fx.map.graph(), &fx.c0, &hit).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds(), || format!("{name}: {} lift failures", r.failures.len()))?;
        parts.push(format!("{name} {}", r.superextensions));
        let flip = |g: &Graph, c: &CycleRef, t: &ReductionTrace, s: &Coloring| {
            let mut l = lift_unchecked(g, c, t, s)?;
            let v2 = t.roles["v2"];
            let col = l.coloring.get(v2).unwrap().opposite();
            l.coloring.set(v2, col);
            Ok(l)
        };
        let bad = verify_reducibility_with(fx.map.graph(), &fx.c0, &hit, &flip).map_err(|e| e.to_string())?;
        ensure(!bad.failures.is_empty(), || format!("{name}: corrupted lift not caught"))?;
    }
    Ok(format!("zero failures ({} lifts checked); corrupted lift caught", parts.join(", ")))
}

fn c9_superextendability() -> Outcome {
    let tri = classic("c3").unwrap();
    let c = CycleRef::new(vec![0, 1, 2]);
    let r = check_superextendable(&tri, &c).map_err(|e| e.to_string())?;
    ensure(r.verdicts.len() == 3 && r.all_extend(), || format!("C3: {} precolorings, all extend {}", r.verdicts.len(), r.all_extend()))?;
    let k4 = classic("k4").unwrap();
    let r = check_superextendable(&k4, &c).map_err(|e| e.to_string())?;
    ensure(!r.verdicts.is_empty() && r.failures().count() == r.verdicts.len(), || "K4: some precoloring extends".into())?;
    Ok(format!("C3: 3/3 extend; K4: {}/{} fail", r.verdicts.len(), r.verdicts.len()))
}

fn c10_audit_soundness() -> Outcome {
    let (inputs, skipped) = audit_inputs();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (name, m, c0) in &inputs {
        let r = audit_map(m, c0, &[]).map_err(|e| format!("{name}: {e}"))?;
        match &r.verdict {
            Verdict::ChargeContradiction => return Err(format!("{name}: charge contradiction")),
            Verdict::ReducibleConfigurationPresent(w) => ensure(!w.is_empty(), || format!("{name}: empty witness"))?,
            Verdict::BoundViolation(w) => ensure(!w.is_empty(), || format!("{name}: empty witness"))?,
        }
        *counts.entry(r.verdict.name()).or_default() += 1;
    }
    Ok(format!("{counts:?}; {skipped} corpus maps without a face cycle of length <= 14 skipped"))
}

fn canonical_hits(m: &PlanarMap) -> BTreeSet<(String, BTreeSet<Vertex>)> {
    let c0 = m.outer_cycle().unwrap();
    let cls = classify(m, &c0).unwrap();
    detect_all(m, &cls).iter().map(|h| (h.kind.name(), h.vertex_set())).collect()
}

fn c11_detector_fidelity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut runs = 0;
    for fx in all_fixtures() {
        let base = canonical_hits(&fx.map);
        for _ in 0..24 {
            let vs: Vec<Vertex> = fx.map.graph().vertices().collect();
            let mut ids: Vec<Vertex> = vs.iter().map(|v| v + 500).collect();
            ids.shuffle(&mut rng);
            let perm: BTreeMap<Vertex, Vertex> = vs.iter().copied().zip(ids).collect();
            let shift: u64 = rng.gen();
            let mut m = fx.map.relabel(&perm).rotate_rotations(|v| (shift ^ v as u64) as usize);
            if rng.gen_bool(0.5) {
                m = m.mirror();
            }
            let inv: BTreeMap<Vertex, Vertex> = perm.iter().map(|(&a, &b)| (b, a)).collect();
            let got: BTreeSet<_> =
                canonical_hits(&m).into_iter().map(|(k, s)| (k, s.iter().map(|v| inv[v]).collect())).collect();
            ensure(got == base, || format!("{}: hits changed under relabeling", fx.name))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} relabel/rotate/mirror runs leave canonical hits unchanged"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", c1_oracle_equivalence),
        ("known negatives", c2_known_negatives),
        ("class empirics", c3_class_empirics),
        ("Euler charge identity", c4_euler_identity),
        ("conservation under rules", c5_conservation),
        ("closed-form vertex charges", c6_closed_forms),
        ("worked C8 ledger", c7_worked_ledger),
        ("reducibility fixtures", c8_reducibility),
        ("superextendability desk check", c9_superextendability),
        ("audit soundness signal", c10_audit_soundness),
        ("detector fidelity", c11_detector_fidelity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
