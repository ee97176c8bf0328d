//! Charges in exact thirds, rules R1 to R5, and the audit verdict.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::{self, Classification, ConfigurationHit, HitKind};
use crate::embed::{FaceId, PlanarMap};
use crate::graph::{CycleRef, Graph, Vertex};

/// A charge counted in units of one third.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Thirds(pub i64);

impl Thirds {
    pub const ZERO: Thirds = Thirds(0);

    pub fn whole(n: i64) -> Thirds {
        Thirds(3 * n)
    }

    pub fn render(self) -> String {
        format!("{}/3", self.0)
    }
}

impl fmt::Display for Thirds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 3 == 0 {
            write!(f, "{}", self.0 / 3)
        } else {
            write!(f, "{}/3", self.0)
        }
    }
}

impl Add for Thirds {
    type Output = Thirds;
    fn add(self, o: Thirds) -> Thirds {
        Thirds(self.0 + o.0)
    }
}

impl Sub for Thirds {
    type Output = Thirds;
    fn sub(self, o: Thirds) -> Thirds {
        Thirds(self.0 - o.0)
    }
}

impl Neg for Thirds {
    type Output = Thirds;
    fn neg(self) -> Thirds {
        Thirds(-self.0)
    }
}

impl AddAssign for Thirds {
    fn add_assign(&mut self, o: Thirds) {
        self.0 += o.0;
    }
}

impl Sum for Thirds {
    fn sum<I: Iterator<Item = Thirds>>(iter: I) -> Thirds {
        iter.fold(Thirds::ZERO, Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "R1")]
    R1,
    #[serde(rename = "R2.1")]
    R2_1,
    #[serde(rename = "R2.2")]
    R2_2,
    #[serde(rename = "R3.1")]
    R3_1,
    #[serde(rename = "R3.2")]
    R3_2,
    #[serde(rename = "R4.1")]
    R4_1,
    #[serde(rename = "R4.2")]
    R4_2,
    #[serde(rename = "R5")]
    R5,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R1 => "R1",
            Rule::R2_1 => "R2.1",
            Rule::R2_2 => "R2.2",
            Rule::R3_1 => "R3.1",
            Rule::R3_2 => "R3.2",
            Rule::R4_1 => "R4.1",
            Rule::R4_2 => "R4.2",
            Rule::R5 => "R5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Element,
    pub to: Element,
    pub thirds: Thirds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Vertex,
    Face,
    OuterFace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeLine {
    pub kind: ElementKind,
    pub initial: Thirds,
    pub ch1: Thirds,
    #[serde(rename = "final")]
    pub final_: Thirds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub outer: FaceId,
    pub lines: BTreeMap<Element, ChargeLine>,
    pub transfers: Vec<Transfer>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargeError {
    #[error("initial charges sum to {0} thirds instead of 0")]
    EulerChargeMismatch(i64),
}

impl ChargeLedger {
    pub fn line(&self, e: Element) -> &ChargeLine {
        &self.lines[&e]
    }

    pub fn vertex(&self, v: Vertex) -> &ChargeLine {
        self.line(Element::Vertex(v))
    }

    pub fn face(&self, f: FaceId) -> &ChargeLine {
        self.line(Element::Face(f))
    }

    pub fn totals(&self) -> (Thirds, Thirds, Thirds) {
        let sum = |f: fn(&ChargeLine) -> Thirds| self.lines.values().map(f).sum();
        (sum(|l| l.initial), sum(|l| l.ch1), sum(|l| l.final_))
    }

    pub fn transfers_by(&self, rule: Rule) -> impl Iterator<Item = &Transfer> {
        self.transfers.iter().filter(move |t| t.rule == rule)
    }
}

/// `ch(v) = d(v) - 4`, `ch(f) = d(f) - 4`, `ch(f0) = d(f0) + 4`.
pub fn initial_charges(map: &PlanarMap) -> Result<ChargeLedger, DischargeError> {
    let g = map.graph();
    let outer = map.outer_face();
    let mut lines = BTreeMap::new();
    let line = |kind, c: i64| {
        let t = Thirds::whole(c);
        ChargeLine { kind, initial: t, ch1: t, final_: t }
    };
    for v in g.vertices() {
        lines.insert(Element::Vertex(v), line(ElementKind::Vertex, g.degree(v) as i64 - 4));
    }
    for f in map.faces() {
        let d = f.degree() as i64;
        let entry = if f.id == outer { line(ElementKind::OuterFace, d + 4) } else { line(ElementKind::Face, d - 4) };
        lines.insert(Element::Face(f.id), entry);
    }
    let ledger = ChargeLedger { outer, lines, transfers: Vec::new() };
    let (total, _, _) = ledger.totals();
    if total != Thirds::ZERO {
        return Err(DischargeError::EulerChargeMismatch(total.0));
    }
    Ok(ledger)
}

/// Transfers of R1 to R4, all read off the classification of the map.
pub fn rule_transfers(map: &PlanarMap, cls: &Classification) -> Vec<Transfer> {
    let g = map.graph();
    let outer = map.outer_face();
    let mut out = Vec::new();
    let mut push = |rule, from, to, t: i64| out.push(Transfer { rule, from, to, thirds: Thirds(t) });

    for face in map.faces().iter().filter(|f| f.id != outer) {
        let f = Element::Face(face.id);
        let d = face.degree();
        for v in face.vertex_set() {
            let ve = Element::Vertex(v);
            let dv = g.degree(v);
            if d == 3 {
                push(Rule::R1, ve, f, 1);
                continue;
            }
            if d < 8 {
                continue;
            }
            if dv == 2 || cls.is_bad(v) {
                push(Rule::R2_1, f, ve, 2);
            } else if (cls.is_internal(v) && dv == 3)
                || cls.is_poor_to(v, face.id)
                || (cls.is_content(v) && !cls.is_special_to(v, face.id))
            {
                push(Rule::R2_2, f, ve, 1);
            }
            if cls.is_internal(v) && dv >= 5 {
                let adjacent = detect::triangles_at(map, v)
                    .into_iter()
                    .filter(|&t| map.faces_adjacent(t, face.id))
                    .count();
                if adjacent >= 2 {
                    push(Rule::R3_1, ve, f, 1);
                }
            } else if !cls.is_internal(v) && dv >= 4 {
                push(Rule::R3_2, ve, f, 1);
            }
        }
    }
    let f0 = Element::Face(outer);
    for v in map.face(outer).vertex_set() {
        let ve = Element::Vertex(v);
        if g.degree(v) == 2 || cls.is_special(v) {
            push(Rule::R4_1, f0, ve, 4);
        } else {
            push(Rule::R4_2, f0, ve, 3);
        }
    }
    out
}

/// Applies R1 to R4 simultaneously to obtain `ch1`, then R5.
pub fn apply_rules(ledger: &ChargeLedger, map: &PlanarMap, cls: &Classification) -> ChargeLedger {
    let mut out = ledger.clone();
    for l in out.lines.values_mut() {
        l.ch1 = l.initial;
    }
    let mut transfers = rule_transfers(map, cls);
    for t in &transfers {
        out.lines.get_mut(&t.from).unwrap().ch1 += -t.thirds;
        out.lines.get_mut(&t.to).unwrap().ch1 += t.thirds;
    }
    for l in out.lines.values_mut() {
        l.final_ = l.ch1;
    }
    let f0 = Element::Face(out.outer);
    let surplus: Vec<(Element, Thirds)> = out
        .lines
        .iter()
        .filter(|(_, l)| l.kind == ElementKind::Face && l.ch1 > Thirds::ZERO)
        .map(|(&e, l)| (e, l.ch1))
        .collect();
    for (e, t) in surplus {
        out.lines.get_mut(&e).unwrap().final_ += -t;
        out.lines.get_mut(&f0).unwrap().final_ += t;
        transfers.push(Transfer { rule: Rule::R5, from: e, to: f0, thirds: t });
    }
    out.transfers = transfers;
    out
}

/// Initial charges plus all rules for `map` with outer cycle `c0`.
pub fn discharge(map: &PlanarMap, c0: &CycleRef) -> Result<(ChargeLedger, Classification), AuditError> {
    let cls = detect::classify(map, c0)?;
    let ledger = initial_charges(map)?;
    Ok((apply_rules(&ledger, map, &cls), cls))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error(transparent)]
    Detect(#[from] detect::DetectError),
    #[error(transparent)]
    Discharge(#[from] DischargeError),
}

/// One reason a map cannot be a minimal counterexample.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reason {
    pub kind: String,
    pub detail: String,
}

impl Reason {
    fn new(kind: &str, detail: impl Into<String>) -> Self {
        Reason { kind: kind.to_string(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFailure {
    pub element: Element,
    pub kind: ElementKind,
    pub bound: String,
    pub line: ChargeLine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "witnesses")]
pub enum Verdict {
    ReducibleConfigurationPresent(Vec<Reason>),
    ChargeContradiction,
    BoundViolation(Vec<BoundFailure>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ReducibleConfigurationPresent(_) => "reducible_configuration_present",
            Verdict::ChargeContradiction => "charge_contradiction",
            Verdict::BoundViolation(_) => "bound_violation",
        }
    }
}

/// Structures that rule the map out as a minimal counterexample.
pub fn structural_reasons(
    map: &PlanarMap,
    c0: &CycleRef,
    cls: &Classification,
    hits: &[ConfigurationHit],
    catalog: &[(String, Graph)],
) -> Vec<Reason> {
    let g = map.graph();
    let mut out = Vec::new();
    let on_c0 = c0.vertex_set();
    if g.vertex_count() == c0.len() && g.edge_count() == c0.len() {
        out.push(Reason::new("outer_cycle_only", "G equals its outer cycle"));
    }
    if c0.len() > 14 {
        out.push(Reason::new("outer_cycle_too_long", format!("|C0| = {} exceeds 14", c0.len())));
    }
    for (u, v) in g.edges() {
        if on_c0.contains(&u) && on_c0.contains(&v) && !c0.has_edge(u, v) {
            out.push(Reason::new("outer_chord", format!("chord {u}-{v} of C0")));
        }
    }
    if let Some(c) = g.cycle_in_length_range(4, 7) {
        out.push(Reason::new("short_cycle", format!("cycle of length {}: {:?}", c.len(), c.vertices())));
    }
    let cuts = g.cut_vertices();
    if !g.is_connected() || !cuts.is_empty() {
        out.push(Reason::new("not_2_connected", format!("cut vertices {cuts:?}")));
    }
    for c in g.cycles_up_to(14) {
        if let Ok(sep) = map.separation(&c) {
            if sep.separating {
                out.push(Reason::new(
                    "separating_cycle",
                    format!("separating cycle of length {}: {:?}", c.len(), c.vertices()),
                ));
                break;
            }
        }
    }
    for h in detect::match_fb(g, catalog) {
        out.push(Reason::new("fb_subgraph", h.describe()));
    }
    for h in hits {
        if matches!(h.kind, HitKind::LowDegree | HitKind::Tetrad | HitKind::MFace | HitKind::MmFace) {
            out.push(Reason::new(&h.kind.name(), h.describe()));
        }
    }
    for (f, run) in detect::five_bad_runs(map, cls) {
        out.push(Reason::new("five_bad_run", format!("face f{f}: {run:?}")));
    }
    for (f, run) in detect::bad_run_edge_violations(map, cls) {
        out.push(Reason::new("bad_run_edges", format!("face f{f}: {run:?}")));
    }
    out
}

/// Elements whose final charge breaks its bound.
pub fn bound_failures(ledger: &ChargeLedger) -> Vec<BoundFailure> {
    ledger
        .lines
        .iter()
        .filter_map(|(&element, &line)| {
            let (ok, bound) = match line.kind {
                ElementKind::OuterFace => (line.final_ > Thirds::ZERO, "> 0"),
                _ => (line.final_ >= Thirds::ZERO, ">= 0"),
            };
            (!ok).then(|| BoundFailure { element, kind: line.kind, bound: bound.to_string(), line })
        })
        .collect()
}

pub fn audit(
    map: &PlanarMap,
    c0: &CycleRef,
    ledger: &ChargeLedger,
    cls: &Classification,
    hits: &[ConfigurationHit],
    catalog: &[(String, Graph)],
) -> Verdict {
    let reasons = structural_reasons(map, c0, cls, hits, catalog);
    if !reasons.is_empty() {
        return Verdict::ReducibleConfigurationPresent(reasons);
    }
    let failures = bound_failures(ledger);
    if failures.is_empty() {
        Verdict::ChargeContradiction
    } else {
        Verdict::BoundViolation(failures)
    }
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub ledger: ChargeLedger,
    pub classification: Classification,
    pub hits: Vec<ConfigurationHit>,
    pub verdict: Verdict,
}

/// Classification, ledger, detection and verdict in one pass.
pub fn audit_map(map: &PlanarMap, c0: &CycleRef, catalog: &[(String, Graph)]) -> Result<AuditReport, AuditError> {
    let (ledger, cls) = discharge(map, c0)?;
    let hits = detect::detect_all(map, &cls);
    let verdict = audit(map, c0, &ledger, &cls, &hits, catalog);
    Ok(AuditReport { ledger, classification: cls, hits, verdict })
}

/// Vertices whose every incident internal face is a 3-face or an
/// 8⁺-face, the setting the per-vertex bounds assume.
pub fn regular_vertices(map: &PlanarMap) -> BTreeSet<Vertex> {
    let outer = map.outer_face();
    map.graph()
        .vertices()
        .filter(|&v| {
            map.incident_faces(v).iter().all(|&f| {
                let d = map.face(f).degree();
                f == outer || d == 3 || d >= 8
            })
        })
        .collect()
}
