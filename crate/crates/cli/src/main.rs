use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use nearbip::coloring::{self, check_superextendable, count_all, solve, superextends};
use nearbip::corpus::{self, GenParams, Strategy};
use nearbip::detect::{self, classify, detect_all, ConfigurationHit, HitKind};
use nearbip::discharge::{audit_map, discharge, ChargeLedger, ElementKind, Verdict};
use nearbip::fixtures::{self, FIXTURE_NAMES};
use nearbip::format::{self, parse_any_graph, parse_nbg, parse_nbmap, write_nbg, write_nbmap};
use nearbip::reduce::{self, lift_unchecked, verify_reducibility_with, ReducibilityReport};
use nearbip::{Coloring, CycleRef, Graph, PlanarMap};

#[derive(Parser)]
#[command(name = "nbp", version, about = "Near-bipartite partitions of planar graphs without 4- to 7-cycles")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide near-bipartiteness and print a certificate.
    Check(FileOrDir),
    /// Check that precolorings of a cycle superextend.
    Superextend {
        file: PathBuf,
        /// Cycle as a comma-separated vertex list.
        #[arg(long)]
        cycle: String,
        /// Check a single precoloring `v=I,w=F,...` instead of all of them.
        #[arg(long)]
        precolor: Option<String>,
    },
    /// List reducible configurations relative to the outer cycle.
    Detect { file: PathBuf },
    /// Print the charge ledger.
    Discharge { file: PathBuf },
    /// Run the minimal-counterexample audit.
    Audit {
        #[command(flatten)]
        input: FileOrDir,
        /// Directory of `.nbg` catalog graphs (defaults to `<fixtures>/fb`).
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Apply a reduction and print the reduced graph and trace.
    Reduce {
        file: PathBuf,
        /// `kind#k` or `kind:role=id,...`
        #[arg(long)]
        hit: String,
    },
    /// Exhaustively verify a reduction on a small host.
    Verify {
        /// Fixture name, read from the fixtures directory.
        #[arg(long, conflicts_with = "file")]
        fixture: Option<String>,
        file: Option<PathBuf>,
        #[arg(long)]
        hit: Option<String>,
        /// Flip the color of `v2` after lifting (negative control).
        #[arg(long)]
        corrupt: bool,
    },
    /// Generate a planar map without 4- to 7-cycles.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Sub)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count all valid IF-colorings by brute force.
    Oracle { file: PathBuf },
    /// List the gadget fixtures or write them to a directory.
    Fixtures {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FileOrDir {
    #[arg(required_unless_present = "dir")]
    file: Option<PathBuf>,
    /// Process every `.nbg` and `.nbmap` file in a directory.
    #[arg(long, conflicts_with = "file")]
    dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Sub,
    Glue,
}

const HOLDS: i32 = 0;
const FAILS: i32 = 1;
const INPUT_ERROR: i32 = 2;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Report {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
    verdict: String,
    exit_code: i32,
    /// Human-readable summary lines.
    summary: Vec<String>,
    witnesses: Value,
}

impl Report {
    fn new(command: &str, input: Option<&Path>, canonical: Option<&str>) -> Self {
        Report {
            command: command.into(),
            input: input.map(|p| p.display().to_string()),
            digest: canonical.map(|c| hex::encode(Sha256::digest(c.as_bytes()))),
            verdict: String::new(),
            exit_code: HOLDS,
            summary: Vec::new(),
            witnesses: Value::Null,
        }
    }

    fn verdict(mut self, verdict: &str, exit_code: i32) -> Self {
        self.verdict = verdict.into();
        self.exit_code = exit_code;
        self
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    fn witnesses(mut self, w: Value) -> Self {
        self.witnesses = w;
        self
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_any_graph(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_map(path: &Path) -> Result<PlanarMap> {
    parse_nbmap(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn outer_cycle(map: &PlanarMap) -> Result<CycleRef> {
    map.outer_cycle().ok_or_else(|| anyhow!("the outer face is not bounded by a cycle"))
}

fn coloring_json(c: &Coloring) -> Value {
    let m: serde_json::Map<String, Value> = c.iter().map(|(v, col)| (v.to_string(), json!(col.to_string()))).collect();
    Value::Object(m)
}

fn fixtures_dir() -> PathBuf {
    match std::env::var_os("NBP_FIXTURES") {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from("fixtures"),
    }
}

fn check(path: &Path) -> Result<Report> {
    let g = load_graph(path)?;
    let r = Report::new("check", Some(path), Some(&write_nbg(&g)));
    Ok(match solve(&g, &Coloring::new())? {
        Some(c) => {
            let valid = coloring::validate(&g, &c)?.is_none();
            if !valid {
                bail!("internal error: certificate does not validate");
            }
            r.verdict("near_bipartite", HOLDS)
                .line("near-bipartite")
                .line(format!("certificate: {}", format::write_coloring(&c).trim_end().replace('\n', ", ")))
                .witnesses(json!({ "coloring": coloring_json(&c) }))
        }
        None => r.verdict("not_near_bipartite", FAILS).line("NOT near-bipartite").witnesses(json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
        })),
    })
}

fn superextend(path: &Path, cycle: &str, precolor: Option<&str>) -> Result<Report> {
    let g = load_graph(path)?;
    let c = CycleRef::new(format::parse_vertex_list(cycle)?);
    g.check_cycle(&c).with_context(|| format!("--cycle {cycle}"))?;
    let r = Report::new("superextend", Some(path), Some(&format!("{}cycle {cycle}\n", write_nbg(&g))));
    if let Some(p) = precolor {
        let pre = format::parse_precoloring(p)?;
        return Ok(match superextends(&g, &c, &pre)? {
            Some(ext) => r
                .verdict("superextends", HOLDS)
                .line("the precoloring superextends")
                .witnesses(json!({ "precoloring": coloring_json(&pre), "extension": coloring_json(&ext) })),
            None => r
                .verdict("no_superextension", FAILS)
                .line("the precoloring has no superextension")
                .witnesses(json!({ "precoloring": coloring_json(&pre) })),
        });
    }
    let report = check_superextendable(&g, &c)?;
    let rows: Vec<Value> = report
        .verdicts
        .iter()
        .map(|(p, e)| json!({ "precoloring": coloring_json(p), "extension": e.as_ref().map(coloring_json) }))
        .collect();
    let failed = report.failures().count();
    let total = report.verdicts.len();
    let r = r.witnesses(json!({ "precolorings": rows }));
    Ok(if failed == 0 {
        r.verdict("superextendable", HOLDS).line(format!("all {total} precolorings superextend"))
    } else {
        r.verdict("not_superextendable", FAILS).line(format!("{failed} of {total} precolorings do not superextend"))
    })
}

fn detect_cmd(path: &Path) -> Result<Report> {
    let map = load_map(path)?;
    let c0 = outer_cycle(&map)?;
    let cls = classify(&map, &c0)?;
    let hits = detect_all(&map, &cls);
    let fa = detect::find_fa_faces(&cls);
    let mut r = Report::new("detect", Some(path), Some(&write_nbmap(&map)))
        .verdict(if hits.is_empty() { "none" } else { "found" }, HOLDS)
        .line(format!("{} hits", hits.len()));
    for h in &hits {
        r = r.line(h.describe());
    }
    let set = |s: &std::collections::BTreeSet<u32>| s.iter().copied().collect::<Vec<_>>();
    Ok(r.witnesses(json!({
        "hits": hits.iter().map(ConfigurationHit::describe).collect::<Vec<_>>(),
        "n_fa": fa.n_fa,
        "fa_within_bound": fa.within_bound(),
        "bad": set(&cls.bad),
        "willing": set(&cls.willing),
        "content": set(&cls.content),
        "five_bad_runs": detect::five_bad_runs(&map, &cls).len(),
    })))
}

fn ledger_json(ledger: &ChargeLedger) -> Value {
    let lines: Vec<Value> = ledger
        .lines
        .iter()
        .map(|(e, l)| {
            let kind = match l.kind {
                ElementKind::Vertex => "vertex",
                ElementKind::Face => "face",
                ElementKind::OuterFace => "outer_face",
            };
            json!({
                "element": e.to_string(),
                "kind": kind,
                "initial": l.initial.0,
                "ch1": l.ch1.0,
                "final": l.final_.0,
                "final_value": l.final_.to_string(),
            })
        })
        .collect();
    let transfers: Vec<Value> = ledger
        .transfers
        .iter()
        .map(|t| json!({ "rule": t.rule, "from": t.from.to_string(), "to": t.to.to_string(), "thirds": t.thirds.0 }))
        .collect();
    let (a, b, c) = ledger.totals();
    json!({
        "unit": "thirds",
        "outer": format!("f{}", ledger.outer),
        "totals": { "initial": a.0, "ch1": b.0, "final": c.0 },
        "lines": lines,
        "transfers": transfers,
    })
}

fn discharge_cmd(path: &Path) -> Result<Report> {
    let map = load_map(path)?;
    let c0 = outer_cycle(&map)?;
    let (ledger, _) = discharge(&map, &c0)?;
    let (a, b, c) = ledger.totals();
    let zero = [a, b, c].iter().all(|t| t.0 == 0);
    let mut r = Report::new("discharge", Some(path), Some(&write_nbmap(&map)))
        .verdict(if zero { "conserved" } else { "not_conserved" }, if zero { HOLDS } else { FAILS })
        .line(format!("totals: initial {a}, ch1 {b}, final {c}"));
    for (e, l) in &ledger.lines {
        let tag = if l.kind == ElementKind::OuterFace { " (outer)" } else { "" };
        r = r.line(format!("{e}{tag}: {} -> {} -> {}", l.initial, l.ch1, l.final_));
    }
    Ok(r.witnesses(ledger_json(&ledger)))
}

fn load_catalog(dir: &Path) -> Result<Vec<(String, Graph)>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for p in sorted_files(dir, &["nbg"])? {
        let name = p.file_stem().unwrap().to_string_lossy().into_owned();
        out.push((name, parse_nbg(&read(&p)?).with_context(|| p.display().to_string())?));
    }
    Ok(out)
}

fn audit_cmd(path: &Path, catalog: &[(String, Graph)]) -> Result<Report> {
    let map = load_map(path)?;
    let c0 = outer_cycle(&map)?;
    let report = audit_map(&map, &c0, catalog)?;
    let r = Report::new("audit", Some(path), Some(&write_nbmap(&map)));
    let (r, witnesses) = match &report.verdict {
        Verdict::ReducibleConfigurationPresent(reasons) => {
            let mut r = r.verdict(report.verdict.name(), HOLDS).line("(a) reducible configuration present");
            for x in reasons {
                r = r.line(format!("{}: {}", x.kind, x.detail));
            }
            (r, json!({ "reasons": reasons }))
        }
        Verdict::BoundViolation(failures) => {
            let mut r = r.verdict(report.verdict.name(), HOLDS).line("(c) bound violation");
            let mut rows = Vec::new();
            for f in failures {
                r = r.line(format!("{}: final {} breaks {}", f.element, f.line.final_, f.bound));
                rows.push(json!({
                    "element": f.element.to_string(),
                    "bound": f.bound,
                    "initial": f.line.initial.0,
                    "ch1": f.line.ch1.0,
                    "final": f.line.final_.0,
                }));
            }
            (r, json!({ "failures": rows }))
        }
        Verdict::ChargeContradiction => (
            r.verdict(report.verdict.name(), FAILS)
                .line("(b) charge contradiction: no configuration and every bound holds; review by hand"),
            json!({}),
        ),
    };
    Ok(r.witnesses(json!({ "verdict": witnesses, "ledger": ledger_json(&report.ledger) })))
}

fn parse_hit(desc: &str, map: &PlanarMap) -> Result<ConfigurationHit> {
    if let Some((kind, k)) = desc.split_once('#') {
        let kind = HitKind::parse(kind).ok_or_else(|| anyhow!("unknown configuration kind `{kind}`"))?;
        let k: usize = k.parse().with_context(|| format!("bad hit index in `{desc}`"))?;
        let c0 = outer_cycle(map)?;
        let cls = classify(map, &c0)?;
        let hits: Vec<_> = detect_all(map, &cls).into_iter().filter(|h| h.kind == kind).collect();
        let n = hits.len();
        return hits.into_iter().nth(k).ok_or_else(|| anyhow!("`{desc}`: only {n} hits of that kind"));
    }
    let (kind, roles) = desc.split_once(':').ok_or_else(|| anyhow!("hit `{desc}` is neither `kind#k` nor `kind:role=id,...`"))?;
    let kind = HitKind::parse(kind).ok_or_else(|| anyhow!("unknown configuration kind `{kind}`"))?;
    let mut given = BTreeMap::new();
    for item in roles.split(',').filter(|s| !s.is_empty()) {
        let (r, v) = item.split_once('=').ok_or_else(|| anyhow!("expected role=id, found `{item}`"))?;
        given.insert(r.trim().to_string(), v.trim().parse::<u32>().with_context(|| format!("vertex id in `{item}`"))?);
    }
    let ids = kind
        .roles()
        .iter()
        .map(|r| given.get(*r).copied().ok_or_else(|| anyhow!("hit `{desc}` is missing role `{r}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConfigurationHit::new(kind, None, &ids))
}

fn reduce_cmd(path: &Path, hit: &str) -> Result<Report> {
    let map = load_map(path)?;
    let c0 = outer_cycle(&map)?;
    let h = parse_hit(hit, &map)?;
    let (g_star, trace) = reduce::reduce_keeping(map.graph(), &h, &c0.vertex_set())?;
    let text = write_nbg(&g_star);
    Ok(Report::new("reduce", Some(path), Some(&format!("{}hit {hit}\n", write_nbmap(&map))))
        .verdict("reduced", HOLDS)
        .line(format!("{} -> {} vertices", map.graph().vertex_count(), g_star.vertex_count()))
        .line(text.trim_end().to_string())
        .witnesses(json!({ "g_star": text, "trace": trace })))
}

fn verify_cmd(fixture: Option<&str>, file: Option<&Path>, hit: Option<&str>, corrupt: bool) -> Result<Report> {
    let (map, label) = match (fixture, file) {
        (Some(name), _) => {
            let p = fixtures_dir().join(format!("{name}.nbmap"));
            let map = if p.exists() {
                load_map(&p)?
            } else {
                fixtures::fixture(name)
                    .ok_or_else(|| anyhow!("unknown fixture `{name}` (known: {})", FIXTURE_NAMES.join(", ")))?
                    .map
            };
            (map, p)
        }
        (None, Some(p)) => (load_map(p)?, p.to_path_buf()),
        (None, None) => bail!("give --fixture NAME or a map file"),
    };
    let c0 = outer_cycle(&map)?;
    let h = match hit {
        Some(d) => parse_hit(d, &map)?,
        None => {
            let cls = classify(&map, &c0)?;
            let hits = detect_all(&map, &cls);
            let pick = |k: &[HitKind]| hits.iter().find(|h| k.contains(&h.kind)).cloned();
            pick(&[HitKind::Tetrad, HitKind::MFace, HitKind::MmFace])
                .or_else(|| pick(&[HitKind::LowDegree]))
                .ok_or_else(|| anyhow!("no reducible configuration found; pass --hit"))?
        }
    };
    let flip = |g: &Graph, c: &CycleRef, t: &reduce::ReductionTrace, s: &Coloring| {
        let mut l = lift_unchecked(g, c, t, s)?;
        if let Some(&v2) = t.roles.get("v2").or_else(|| t.roles.get("v")) {
            let col = l.coloring.get(v2).expect("lift is total").opposite();
            l.coloring.set(v2, col);
        }
        Ok(l)
    };
    let report: ReducibilityReport = if corrupt {
        verify_reducibility_with(map.graph(), &c0, &h, &flip)?
    } else {
        verify_reducibility_with(map.graph(), &c0, &h, &lift_unchecked)?
    };
    let canonical = format!("{}hit {}\ncorrupt {corrupt}\n", write_nbmap(&map), h.describe());
    let r = Report::new("verify", Some(&label), Some(&canonical))
        .line(h.describe())
        .line(format!(
            "{} precolorings, {} superextensions of G* lifted, {} failures",
            report.precolorings,
            report.superextensions,
            report.failures.len()
        ))
        .line(format!("branches: {:?}", report.branches));
    let first: Vec<_> = report.failures.iter().take(5).collect();
    let w = json!({
        "hit": h.describe(),
        "precolorings": report.precolorings,
        "superextensions": report.superextensions,
        "branches": report.branches,
        "failure_count": report.failures.len(),
        "failures": first.iter().map(|f| json!({
            "precoloring": coloring_json(&f.precoloring),
            "reduced": coloring_json(&f.reduced),
            "lifted": f.lifted.as_ref().map(coloring_json),
            "branch": f.branch,
            "problem": f.problem,
        })).collect::<Vec<_>>(),
    });
    Ok(if report.holds() { r.verdict("reducible", HOLDS) } else { r.verdict("lift_failures", FAILS) }.witnesses(w))
}

fn gen_cmd(n: usize, seed: u64, strategy: StrategyArg, density: f64, out: Option<&Path>) -> Result<Report> {
    let strategy = match strategy {
        StrategyArg::Sub => Strategy::Subdivision,
        StrategyArg::Glue => Strategy::TriangleGlue,
    };
    let params = GenParams { n, seed, strategy, density };
    let map = corpus::generate(&params)?;
    let text = write_nbmap(&map);
    if let Some(p) = out {
        std::fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    let g = map.graph();
    let mut r = Report::new("gen", out, Some(&text))
        .verdict("generated", HOLDS)
        .line(format!("{} vertices, {} edges, girth {:?}", g.vertex_count(), g.edge_count(), g.girth()));
    if out.is_none() {
        r = r.line(text.trim_end().to_string());
    }
    Ok(r.witnesses(json!({ "params": params, "nbmap": text })))
}

fn oracle_cmd(path: &Path) -> Result<Report> {
    let g = load_graph(path)?;
    let n = count_all(&g)?;
    Ok(Report::new("oracle", Some(path), Some(&write_nbg(&g)))
        .verdict("counted", HOLDS)
        .line(format!("{n} valid IF-colorings"))
        .witnesses(json!({ "count": n })))
}

fn fixtures_cmd(write: Option<&Path>) -> Result<Report> {
    let mut r = Report::new("fixtures", write, None).verdict("listed", HOLDS);
    for fx in fixtures::all_fixtures() {
        if let Some(d) = write {
            std::fs::create_dir_all(d)?;
            std::fs::write(d.join(format!("{}.nbmap", fx.name)), fx.to_nbmap())?;
        }
        r = r.line(format!("{}: {} vertices", fx.name, fx.map.graph().vertex_count()));
    }
    Ok(r.witnesses(json!({ "names": FIXTURE_NAMES })))
}

fn sorted_files(dir: &Path, exts: &[&str]) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| exts.iter().any(|e| x == *e)))
        .collect();
    files.sort();
    Ok(files)
}

fn input_error(command: &str, input: Option<&Path>, e: &anyhow::Error) -> Report {
    Report::new(command, input, None)
        .verdict("input_error", INPUT_ERROR)
        .line(format!("error: {e:#}"))
        .witnesses(json!({ "error": format!("{e:#}") }))
}

/// Runs `f` on every file of `dir` in parallel; per-file reports are kept in
/// path order and the worst exit code wins.
fn fan_out(command: &str, dir: &Path, exts: &[&str], f: impl Fn(&Path) -> Result<Report> + Sync) -> Result<Report> {
    let files = sorted_files(dir, exts)?;
    let reports: Vec<Report> =
        files.par_iter().map(|p| f(p).unwrap_or_else(|e| input_error(command, Some(p), &e))).collect();
    let worst = reports.iter().map(|r| r.exit_code).max().unwrap_or(HOLDS);
    let verdict = match worst {
        HOLDS => "all_hold",
        FAILS => "some_fail",
        _ => "some_input_errors",
    };
    let mut r = Report::new(command, Some(dir), None).verdict(verdict, worst);
    for x in &reports {
        r = r.line(format!("{}: {}", x.input.as_deref().unwrap_or("?"), x.verdict));
    }
    let per_file = serde_json::to_value(&reports)?;
    Ok(r.witnesses(per_file))
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Check(FileOrDir { file: Some(f), .. }) => check(f),
        Command::Check(FileOrDir { dir: Some(d), .. }) => fan_out("check", d, &["nbg", "nbmap"], check),
        Command::Superextend { file, cycle, precolor } => superextend(file, cycle, precolor.as_deref()),
        Command::Detect { file } => detect_cmd(file),
        Command::Discharge { file } => discharge_cmd(file),
        Command::Audit { input, catalog } => {
            let cat_dir = catalog.clone().unwrap_or_else(|| fixtures_dir().join("fb"));
            let cat = load_catalog(&cat_dir)?;
            match input {
                FileOrDir { file: Some(f), .. } => audit_cmd(f, &cat),
                FileOrDir { dir: Some(d), .. } => fan_out("audit", d, &["nbmap"], |p| audit_cmd(p, &cat)),
                _ => bail!("give a file or --dir"),
            }
        }
        Command::Reduce { file, hit } => reduce_cmd(file, hit),
        Command::Verify { fixture, file, hit, corrupt } => {
            verify_cmd(fixture.as_deref(), file.as_deref(), hit.as_deref(), *corrupt)
        }
        Command::Gen { n, seed, strategy, density, out } => gen_cmd(*n, *seed, *strategy, *density, out.as_deref()),
        Command::Oracle { file } => oracle_cmd(file),
        Command::Fixtures { write } => fixtures_cmd(write.as_deref()),
        Command::Check(_) => bail!("give a file or --dir"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Superextend { .. } => "superextend",
        Command::Detect { .. } => "detect",
        Command::Discharge { .. } => "discharge",
        Command::Audit { .. } => "audit",
        Command::Reduce { .. } => "reduce",
        Command::Verify { .. } => "verify",
        Command::Gen { .. } => "gen",
        Command::Oracle { .. } => "oracle",
        Command::Fixtures { .. } => "fixtures",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { HOLDS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let report = run(&cli).unwrap_or_else(|e| input_error(command_name(&cli.command), None, &e));
    // write errors (a closed pipe) are not worth a panic
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        for l in &report.summary {
            let _ = if report.exit_code == INPUT_ERROR { writeln!(err, "{l}") } else { writeln!(out, "{l}") };
        }
        if let Some(d) = &report.digest {
            let _ = writeln!(out, "digest: {d}");
        }
    }
    ExitCode::from(report.exit_code as u8)
}
