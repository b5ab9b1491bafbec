//! Command implementations behind the `quasitree` binary: single-diagram
//! reports, the Reidemeister III rewrite, the bundled counterexample run,
//! batch verification of the determinant identity, and the standalone
//! subset-expansion calculator for map files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{parse_pd, reidemeister_3, DiagramError, KnotDiagram};
use crate::goeritz::knot_determinant;
use crate::map::{CombMap, MapError};
use crate::quasi::{brt_polynomial, quasi_tree_polynomial};
use crate::ribbon::{all_a_ribbon_graph, kauffman_state, state_graph, turaev_genus, Marker};

/// Stable process exit codes: 0 success, 1 verification failure, 2 input
/// error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Map(#[from] MapError),
    #[error("{0}")]
    Table(String),
    #[error("fixture {0} is corrupted: {1}")]
    Fixture(&'static str, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// One row of a knot table: a name, a PD code, and optionally the expected
/// determinant.
#[derive(Debug, Clone)]
pub struct KnotTableRow {
    pub name: String,
    pub pd: String,
    pub expected_det: Option<BigInt>,
}

/// Parses a CSV knot table with header `name,pd[,det]`. The PD column may
/// be quoted to protect its commas.
pub fn parse_table(text: &str) -> Result<Vec<KnotTableRow>, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Table("empty table: missing header row".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 2 || cols[0] != "name" || cols[1] != "pd" {
        return Err(CliError::Table(format!(
            "expected header `name,pd[,det]`, got `{header}`"
        )));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let fields = split_csv_line(line);
        if fields.len() < 2 {
            return Err(CliError::Table(format!(
                "row {}: expected at least 2 fields",
                idx + 1
            )));
        }
        let expected_det = match fields.get(2).map(|s| s.trim()) {
            None | Some("") => None,
            Some(d) => Some(
                d.parse::<BigInt>()
                    .map_err(|_| CliError::Table(format!("row {}: bad det `{d}`", idx + 1)))?,
            ),
        };
        rows.push(KnotTableRow {
            name: fields[0].trim().to_string(),
            pd: fields[1].trim().to_string(),
            expected_det,
        });
    }
    Ok(rows)
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    fields.push(current);
    fields
}

/// Metadata lines of a PD fixture file: `# key: value` comments.
pub fn pd_file_metadata(text: &str) -> BTreeMap<String, String> {
    let mut meta = BTreeMap::new();
    for line in text.lines() {
        let Some(comment) = line.trim().strip_prefix('#') else {
            continue;
        };
        if let Some((key, value)) = comment.split_once(':') {
            meta.insert(key.trim().to_string(), value.trim().to_string());
        }
    }
    meta
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct MapStats {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

/// Full single-diagram report, serialized as the machine output of `q`.
#[derive(Debug, Serialize)]
pub struct DiagramReport {
    pub name: String,
    pub crossings: usize,
    pub s_a: usize,
    pub s_b: usize,
    pub turaev_genus: usize,
    pub map: MapStats,
    pub q: Vec<u64>,
    pub det: u64,
    pub q_at_minus_1: i64,
}

pub fn map_stats(map: &CombMap) -> MapStats {
    let full = map.full_edge_set();
    MapStats {
        v: map.vertex_count(),
        e: map.edge_count(),
        f: map.boundary_components(full).expect("full set valid"),
        g: map.genus(),
    }
}

/// Analyzes a diagram with the chosen state marker.
pub fn analyze(diagram: &KnotDiagram, marker: Marker) -> Result<DiagramReport, CliError> {
    let s_a = kauffman_state(diagram, Marker::A).circle_count();
    let s_b = kauffman_state(diagram, Marker::B).circle_count();
    let map = state_graph(diagram, marker);
    let q = quasi_tree_polynomial(&map)?;
    let det = knot_determinant(diagram);
    let q_at_minus_1 = q.at_minus_one();
    Ok(DiagramReport {
        name: diagram.name().unwrap_or("unnamed").to_string(),
        crossings: diagram.crossing_count(),
        s_a,
        s_b,
        turaev_genus: turaev_genus(diagram),
        map: map_stats(&map),
        q: q.coefficients()
            .iter()
            .map(|c| u64::try_from(c).expect("coefficient fits u64 at this scale"))
            .collect(),
        det: u64::try_from(&det).expect("determinant fits u64 at this scale"),
        q_at_minus_1: i64::try_from(&q_at_minus_1).expect("evaluation fits i64"),
    })
}

impl DiagramReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string(self).expect("serializable"),
            OutputFormat::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "name:         {}", self.name);
                let _ = writeln!(out, "crossings:    {}", self.crossings);
                let _ = writeln!(out, "s_A:          {}", self.s_a);
                let _ = writeln!(out, "s_B:          {}", self.s_b);
                let _ = writeln!(out, "turaev genus: {}", self.turaev_genus);
                let _ = writeln!(
                    out,
                    "state graph:  V={} E={} f={} g={}",
                    self.map.v, self.map.e, self.map.f, self.map.g
                );
                let _ = writeln!(out, "q(t):         {}", poly_text(&self.q));
                let _ = writeln!(out, "q(-1):        {}", self.q_at_minus_1);
                let _ = writeln!(out, "determinant:  {}", self.det);
                out
            }
        }
    }
}

fn poly_text(coeffs: &[u64]) -> String {
    let poly = crate::poly::QuasiTreePoly::from_counts(coeffs);
    poly.to_string()
}

/// Loads a PD file (the text may carry `# key: value` metadata) and names
/// the diagram from the metadata or the fallback.
pub fn load_pd(text: &str, fallback_name: &str) -> Result<KnotDiagram, CliError> {
    let mut diagram = parse_pd(text)?;
    let meta = pd_file_metadata(text);
    let name = meta
        .get("name")
        .cloned()
        .unwrap_or_else(|| fallback_name.to_string());
    diagram.set_name(name);
    Ok(diagram)
}

/// The `q` command over already-loaded file contents.
pub fn cmd_q(
    text: &str,
    fallback_name: &str,
    all_b: bool,
    format: OutputFormat,
) -> Result<String, CliError> {
    let diagram = load_pd(text, fallback_name)?;
    let marker = if all_b { Marker::B } else { Marker::A };
    let report = analyze(&diagram, marker)?;
    Ok(report.render(format))
}

/// The `r3` command: rewrite at the given face (or the face recorded in the
/// file metadata) and return the new PD text.
pub fn cmd_r3(text: &str, face: Option<usize>, format: OutputFormat) -> Result<String, CliError> {
    let diagram = load_pd(text, "diagram")?;
    let face = match face {
        Some(f) => f,
        None => pd_file_metadata(text)
            .get("r3-face")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| {
                CliError::Table("no --face given and no `# r3-face:` metadata in the file".into())
            })?,
    };
    let moved = reidemeister_3(&diagram, face)?;
    match format {
        OutputFormat::Text => Ok(moved.serialize()),
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct R3Report {
                pd: String,
                face: usize,
                turaev_genus_before: usize,
                turaev_genus_after: usize,
            }
            Ok(serde_json::to_string(&R3Report {
                pd: moved.serialize(),
                face,
                turaev_genus_before: turaev_genus(&diagram),
                turaev_genus_after: turaev_genus(&moved),
            })
            .expect("serializable"))
        }
    }
}

/// Bundled fixtures for the offline counterexample run.
pub const FIXTURE_KNOTATLAS: &str = include_str!("../fixtures/8_21_knotatlas.pd");
pub const FIXTURE_KNOTATLAS_R3: &str = include_str!("../fixtures/8_21_knotatlas_r3.pd");
pub const FIXTURE_KNOTSCAPE: &str = include_str!("../fixtures/8_21_knotscape.pd");
pub const FIXTURE_TREFOIL: &str = include_str!("../fixtures/trefoil.pd");
pub const FIXTURE_FIGURE_EIGHT: &str = include_str!("../fixtures/figure_eight.pd");
pub const FIXTURE_TABLE: &str = include_str!("../fixtures/knots.csv");

/// Outcome of the counterexample pipeline: every check the verdict rests on.
#[derive(Debug, Serialize)]
pub struct CounterexampleReport {
    pub atlas_genus_before: usize,
    pub atlas_genus_after: usize,
    pub knotscape_genus: usize,
    pub q_atlas: Vec<u64>,
    pub q_knotscape: Vec<u64>,
    pub q_atlas_at_minus_1: i64,
    pub q_knotscape_at_minus_1: i64,
    pub atlas_det: u64,
    pub knotscape_det: u64,
    pub polynomials_differ: bool,
    pub verdict: bool,
    pub failures: Vec<String>,
}

/// Runs the full counterexample pipeline on the bundled fixtures (or any
/// replacement texts, for testing the negative path).
pub fn run_counterexample(
    atlas_text: &str,
    knotscape_text: &str,
) -> Result<CounterexampleReport, CliError> {
    let atlas = load_pd(atlas_text, "8_21 (Knot Atlas)")
        .map_err(|e| CliError::Fixture("8_21_knotatlas.pd", e.to_string()))?;
    let face: usize = pd_file_metadata(atlas_text)
        .get("r3-face")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| {
            CliError::Fixture("8_21_knotatlas.pd", "missing `# r3-face:` metadata".into())
        })?;
    let knotscape = load_pd(knotscape_text, "8_21 (KnotScape)")
        .map_err(|e| CliError::Fixture("8_21_knotscape.pd", e.to_string()))?;

    let atlas_genus_before = turaev_genus(&atlas);
    let moved = reidemeister_3(&atlas, face)
        .map_err(|e| CliError::Fixture("8_21_knotatlas.pd", e.to_string()))?;
    let atlas_genus_after = turaev_genus(&moved);
    let knotscape_genus = turaev_genus(&knotscape);

    let q_atlas = quasi_tree_polynomial(&all_a_ribbon_graph(&moved))?;
    let q_knotscape = quasi_tree_polynomial(&all_a_ribbon_graph(&knotscape))?;
    let atlas_det = knot_determinant(&atlas);
    let knotscape_det = knot_determinant(&knotscape);

    let mut failures = Vec::new();
    if atlas_genus_before != 2 {
        failures.push(format!(
            "Knot Atlas fixture has Turaev genus {atlas_genus_before}, expected 2"
        ));
    }
    if atlas_genus_after != 1 {
        failures.push(format!(
            "post-move diagram has Turaev genus {atlas_genus_after}, expected 1"
        ));
    }
    if knotscape_genus != 1 {
        failures.push(format!(
            "KnotScape fixture has Turaev genus {knotscape_genus}, expected 1"
        ));
    }
    let polynomials_differ = q_atlas != q_knotscape;
    if !polynomials_differ {
        failures.push("the two quasi-tree polynomials are equal".into());
    }
    for (side, q) in [("atlas", &q_atlas), ("knotscape", &q_knotscape)] {
        if q.at_minus_one().abs() != BigInt::from(15) {
            failures.push(format!(
                "{side} polynomial does not evaluate to +-15 at t = -1"
            ));
        }
    }
    for (side, det) in [("atlas", &atlas_det), ("knotscape", &knotscape_det)] {
        if *det != BigInt::from(15) {
            failures.push(format!("{side} Goeritz determinant is {det}, expected 15"));
        }
    }

    let verdict = failures.is_empty();
    Ok(CounterexampleReport {
        atlas_genus_before,
        atlas_genus_after,
        knotscape_genus,
        q_atlas: to_u64s(&q_atlas),
        q_knotscape: to_u64s(&q_knotscape),
        q_atlas_at_minus_1: i64::try_from(&q_atlas.at_minus_one()).expect("fits"),
        q_knotscape_at_minus_1: i64::try_from(&q_knotscape.at_minus_one()).expect("fits"),
        atlas_det: u64::try_from(&atlas_det).expect("fits"),
        knotscape_det: u64::try_from(&knotscape_det).expect("fits"),
        polynomials_differ,
        verdict,
        failures,
    })
}

fn to_u64s(q: &crate::poly::QuasiTreePoly) -> Vec<u64> {
    q.coefficients()
        .iter()
        .map(|c| u64::try_from(c).expect("fits"))
        .collect()
}

impl CounterexampleReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string(self).expect("serializable"),
            OutputFormat::Text => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "Knot Atlas 8_21: Turaev genus {} -> {} after the recorded move",
                    self.atlas_genus_before, self.atlas_genus_after
                );
                let _ = writeln!(
                    out,
                    "KnotScape 8_21:  Turaev genus {}",
                    self.knotscape_genus
                );
                let _ = writeln!(
                    out,
                    "q (Knot Atlas, after move): {}",
                    poly_text(&self.q_atlas)
                );
                let _ = writeln!(
                    out,
                    "q (KnotScape):              {}",
                    poly_text(&self.q_knotscape)
                );
                let _ = writeln!(
                    out,
                    "q(-1): {} and {}; Goeritz determinants: {} and {}",
                    self.q_atlas_at_minus_1,
                    self.q_knotscape_at_minus_1,
                    self.atlas_det,
                    self.knotscape_det
                );
                if self.verdict {
                    let _ = writeln!(
                        out,
                        "verdict: q is NOT a knot invariant (two minimal-genus diagrams, different polynomials)"
                    );
                } else {
                    for f in &self.failures {
                        let _ = writeln!(out, "FAIL: {f}");
                    }
                    let _ = writeln!(out, "verdict: checks failed");
                }
                out
            }
        }
    }
}

/// Per-row verification outcome.
#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub passed: usize,
    pub failed: usize,
}

/// Checks |q(-1)| = det on one row.
fn verify_row(row: &KnotTableRow) -> VerifyRow {
    let check = || -> Result<(BigInt, BigInt), CliError> {
        let diagram = load_pd(&row.pd, &row.name)?;
        let q = quasi_tree_polynomial(&all_a_ribbon_graph(&diagram))?;
        let det = knot_determinant(&diagram);
        Ok((q.at_minus_one().abs(), det))
    };
    match check() {
        Ok((q_abs, det)) => {
            let mut ok = q_abs == det;
            let mut detail = format!("|q(-1)| = {q_abs}, det = {det}");
            if let Some(expected) = &row.expected_det {
                if det != *expected {
                    ok = false;
                    let _ = write!(detail, ", expected det {expected}");
                }
            }
            VerifyRow {
                name: row.name.clone(),
                ok,
                detail,
            }
        }
        Err(e) => VerifyRow {
            name: row.name.clone(),
            ok: false,
            detail: format!("unreadable row: {e}"),
        },
    }
}

/// The `verify` command: checks every row, optionally across `jobs`
/// threads. Row order in the report always matches the input order.
pub fn run_verify(rows: &[KnotTableRow], jobs: usize) -> VerifyReport {
    let jobs = jobs.max(1).min(rows.len().max(1));
    let results: Vec<VerifyRow> = if jobs <= 1 {
        rows.iter().map(verify_row).collect()
    } else {
        let mut slots: Vec<Option<VerifyRow>> = Vec::new();
        slots.resize_with(rows.len(), || None);
        let chunk = rows.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (i, batch) in rows.chunks(chunk).enumerate() {
                handles.push((
                    i * chunk,
                    scope.spawn(move || batch.iter().map(verify_row).collect::<Vec<_>>()),
                ));
            }
            for (base, handle) in handles {
                for (offset, row) in handle
                    .join()
                    .expect("worker panicked")
                    .into_iter()
                    .enumerate()
                {
                    slots[base + offset] = Some(row);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("row filled")).collect()
    };
    let passed = results.iter().filter(|r| r.ok).count();
    let failed = results.len() - passed;
    VerifyReport {
        rows: results,
        passed,
        failed,
    }
}

impl VerifyReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string(self).expect("serializable"),
            OutputFormat::Text => {
                let mut out = String::new();
                for row in &self.rows {
                    let _ = writeln!(
                        out,
                        "{} {}: {}",
                        if row.ok { "PASS" } else { "FAIL" },
                        row.name,
                        row.detail
                    );
                }
                let _ = writeln!(
                    out,
                    "{} rows: {} passed, {} failed",
                    self.rows.len(),
                    self.passed,
                    self.failed
                );
                out
            }
        }
    }
}

/// The `brt` command: subset-expansion polynomial of a map file.
pub fn cmd_brt(text: &str, format: OutputFormat) -> Result<String, CliError> {
    let map = CombMap::parse(text)?;
    let stats = map_stats(&map);
    let poly = brt_polynomial(&map)?;
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "map: V={} E={} f={} g={}",
                stats.v, stats.e, stats.f, stats.g
            );
            let _ = writeln!(out, "C(X,Y,Z) = {poly}");
            Ok(out)
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct BrtReport {
                map: MapStats,
                brt: Vec<(String, u32, u32, u32)>,
            }
            let brt = poly
                .terms()
                .map(|(&(i, j, k), c)| (c.to_string(), i, j, k))
                .collect();
            Ok(serde_json::to_string(&BrtReport { map: stats, brt }).expect("serializable"))
        }
    }
}
