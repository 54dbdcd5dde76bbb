//! Command-line frontend: builders, verifiers, table exports and the
//! certificate for both near hexagons.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::espgroup::{central_product, d8, group_sign, q8, verify_descriptor, Sign};
use crate::fgeom::{
    is_regular_spread, verify_near_polygon, verify_partial_linear, GeometryJson,
    PartialLinearSpace, Spread,
};
use crate::gmodels::{build_duad_q52, build_product_l3, build_quadric_q52, canonical_spread};
use crate::report::{Check, VerificationReport};
use crate::reps::{
    build_epsilon, build_rep_243, build_rep_81, delta_table, descriptor_12, descriptor_18,
    descriptor_6, verify_delta, verify_epsilon, verify_representation, Representation,
    RepresentationJson,
};
use crate::stheta::{build_stheta, hexagon_structure, quad_census, SThetaGeometry};
use crate::triples::{
    coordinatize_ag23, spread_linear_space, verify_admissible, AdmissibleTriple,
};

pub const DEFAULT_SEED: u64 = 20_260_101;

#[derive(Debug, Parser)]
#[command(name = "hexarep", version, about = "Near hexagons on 81 and 243 points and their non-abelian representations")]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, env = "HEXAREP_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for verification scans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Format of the summary printed to standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a geometry or representation as JSON.
    Build {
        target: BuildTarget,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyKind),
    /// Write one of the construction tables as JSON.
    Export {
        what: ExportKind,
        /// Hexagon whose distance matrix is exported.
        #[arg(long, value_enum, default_value_t = HexagonKind::Q52xL3)]
        geometry: HexagonKind,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyKind {
    /// Partial-linear, near-polygon and quad checks on a geometry file.
    Geometry { file: PathBuf },
    /// Representation checks for a representation file over a geometry file.
    Representation { geometry: PathBuf, representation: PathBuf },
    /// The full pipeline for both hexagons, written as a certificate.
    Theorem {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time per check (makes the certificate vary).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildTarget {
    #[value(name = "q52-duad")]
    Q52Duad,
    #[value(name = "q52-quadric")]
    Q52Quadric,
    #[value(name = "q52xL3")]
    Q52xL3,
    #[value(name = "stheta")]
    STheta,
    #[value(name = "rep-81")]
    Rep81,
    #[value(name = "rep-243")]
    Rep243,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Theta,
    Epsilon,
    Delta,
    Distances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HexagonKind {
    #[value(name = "q52xL3")]
    Q52xL3,
    #[value(name = "stheta")]
    STheta,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    VerificationFailed = 1,
    Fault = 2,
    Io = 3,
}

impl Outcome {
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::Io(_) => Outcome::Io,
            _ => Outcome::Fault,
        }
    }
}

/// The canonical inputs: duad model, canonical spread and the determinant
/// triple with the first spread line as origin.
pub fn canonical_inputs() -> Result<(PartialLinearSpace, Spread, AdmissibleTriple)> {
    let duad = build_duad_q52();
    let spread = canonical_spread(&duad)?;
    let ls = spread_linear_space(&duad, &spread)?;
    let coords = coordinatize_ag23(&ls, 0)?;
    Ok((duad, spread, AdmissibleTriple::from_coords(ls, coords)))
}

pub fn canonical_stheta() -> Result<SThetaGeometry> {
    let (duad, spread, triple) = canonical_inputs()?;
    build_stheta(&duad, &spread, &triple)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub name: String,
    pub universe: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexagonSummary {
    pub name: String,
    pub points: usize,
    pub lines: usize,
    pub group_order: String,
    pub generated_order: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub hexagons: Vec<HexagonSummary>,
    pub records: Vec<CertificateRecord>,
    pub verdict: String,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn record(&self, name: &str) -> Option<&CertificateRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

struct Recorder {
    timings: bool,
    records: Vec<CertificateRecord>,
}

impl Recorder {
    fn section<T>(
        &mut self,
        prefix: &str,
        f: impl FnOnce() -> Result<(VerificationReport, T)>,
    ) -> Result<T> {
        let start = Instant::now();
        let (report, out) = f()?;
        let ms = start.elapsed().as_millis() as u64;
        let n = report.checks.len();
        for (i, c) in report.checks.into_iter().enumerate() {
            let Check {
                name,
                universe,
                passed,
                detail,
            } = c;
            self.records.push(CertificateRecord {
                name: format!("{prefix}/{name}"),
                universe,
                passed,
                detail,
                elapsed_ms: (self.timings && i + 1 == n).then_some(ms),
            });
        }
        Ok(out)
    }
}

fn census_report(space: &PartialLinearSpace, points: usize, lines: usize, per_point: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(space.name());
    r.merge("", verify_partial_linear(space));
    let np = verify_near_polygon(space)?;
    r.merge("", np.to_report(space.name()));
    r.record_with(
        "point and line counts",
        1,
        (space.num_points() != points || space.num_lines() != lines)
            .then(|| format!("{} points, {} lines", space.num_points(), space.num_lines())),
    );
    r.record_with(
        "diameter 3",
        1,
        (np.diameter != 3).then(|| format!("diameter {}", np.diameter)),
    );
    r.record_with(
        "lines per point",
        points as u64,
        (np.lines_per_point != Some(per_point)).then(|| format!("{:?}", np.lines_per_point)),
    );
    Ok(r)
}

/// Every check behind the existence of both representations.
pub fn certify(seed: u64, timings: bool) -> Result<Certificate> {
    let mut rec = Recorder {
        timings,
        records: Vec::new(),
    };

    rec.section("group", || {
        let mut r = VerificationReport::new("group engine");
        for (name, desc) in [
            ("2^{1+12}_+", descriptor_12()),
            ("2^{1+6}_-", descriptor_6()),
            ("2^{1+18}_-", descriptor_18()),
        ] {
            r.merge(&format!("{name} "), verify_descriptor(&desc, seed));
        }
        let expected = [
            ("d8", d8(), Sign::Plus),
            ("q8", q8(), Sign::Minus),
            ("d8*q8", central_product(&d8(), &q8())?, Sign::Minus),
            ("q8*q8", central_product(&q8(), &q8())?, Sign::Plus),
            ("2^{1+12}_+", descriptor_12(), Sign::Plus),
            ("2^{1+6}_-", descriptor_6(), Sign::Minus),
            ("2^{1+18}_-", descriptor_18(), Sign::Minus),
        ];
        for (name, desc, want) in expected {
            let got = group_sign(&desc)?;
            r.record_with(
                format!("sign of {name}"),
                1,
                (got != want).then(|| format!("got {got}")),
            );
        }
        Ok((r, ()))
    })?;

    let rep81 = build_rep_81()?;
    rec.section("81", || {
        let mut r = census_report(&rep81.geometry, 81, 162, 6)?;
        r.merge("", quad_census(&rep81.geometry).report);
        Ok((r, ()))
    })?;
    let sum81 = rec.section("81/rep", || verify_representation(&rep81))?;

    let (duad, spread, triple) = canonical_inputs()?;
    rec.section("spread", || {
        let mut r = is_regular_spread(&duad, &spread)?;
        r.merge("linear space ", triple.base.verify());
        r.merge("", verify_admissible(&triple));
        Ok((r, ()))
    })?;
    rec.section("delta", || {
        let dt = delta_table(&duad)?;
        Ok((verify_delta(&duad, &spread, &dt)?, ()))
    })?;
    rec.section("epsilon", || {
        let eps = build_epsilon(&duad, &spread, &triple)?;
        Ok((verify_epsilon(&duad, &spread, &triple, &eps), ()))
    })?;

    let g = build_stheta(&duad, &spread, &triple)?;
    rec.section("243", || {
        let mut r = census_report(&g.space, 243, 729, 9)?;
        let census = g.census();
        r.record_with(
            "line-type census",
            9,
            (census != [45, 45, 45, 27, 81, 81, 81, 108, 216]).then(|| format!("{census:?}")),
        );
        let h = hexagon_structure(&g.space)?;
        r.merge("", h.report);
        r.record_with(
            "|T1| = |T2| = 9 and |S⊗| = 81",
            1,
            (h.t1.len() != 9 || h.t2.len() != 9 || h.s_tensor.len() != 81).then(|| {
                format!("{} / {} / {}", h.t1.len(), h.t2.len(), h.s_tensor.len())
            }),
        );
        Ok((r, ()))
    })?;
    let rep243 = build_rep_243(&g)?;
    let sum243 = rec.section("243/rep", || verify_representation(&rep243))?;

    let hexagons = vec![
        HexagonSummary {
            name: rep81.geometry.name().to_string(),
            points: sum81.points,
            lines: sum81.lines,
            group_order: sum81.group_order,
            generated_order: sum81.generated_order,
            sign: sum81.sign,
        },
        HexagonSummary {
            name: g.space.name().to_string(),
            points: sum243.points,
            lines: sum243.lines,
            group_order: sum243.group_order,
            generated_order: sum243.generated_order,
            sign: sum243.sign,
        },
    ];
    let pass = rec.records.iter().all(|r| r.passed);
    Ok(Certificate {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        hexagons,
        records: rec.records,
        verdict: if pass { "pass" } else { "fail" }.to_string(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let s = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&s)?)
}

fn emit(format: Format, report: &VerificationReport) -> Result<()> {
    match format {
        Format::Text => print!("{report}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
    }
    Ok(())
}

fn verdict(report: &VerificationReport) -> Outcome {
    if report.passed() {
        Outcome::Pass
    } else {
        Outcome::VerificationFailed
    }
}

fn cmd_build(target: BuildTarget, out: &Path) -> Result<Outcome> {
    match target {
        BuildTarget::Q52Duad => write_json(out, &build_duad_q52().to_json())?,
        BuildTarget::Q52Quadric => write_json(out, &build_quadric_q52().to_json())?,
        BuildTarget::Q52xL3 => write_json(out, &build_product_l3(&build_duad_q52()).to_json())?,
        BuildTarget::STheta => write_json(out, &canonical_stheta()?.to_json())?,
        BuildTarget::Rep81 => write_json(out, &build_rep_81()?.to_json())?,
        BuildTarget::Rep243 => write_json(out, &build_rep_243(&canonical_stheta()?)?.to_json())?,
    }
    println!("wrote {}", out.display());
    Ok(Outcome::Pass)
}

fn load_geometry(path: &Path) -> Result<PartialLinearSpace> {
    let json: GeometryJson = read_json(path)?;
    let space = PartialLinearSpace::from_json(&json);
    let raw_lines = json.lines.len();
    if space.num_lines() != raw_lines {
        return Err(Error::Parse(format!(
            "{} of {raw_lines} lines reference points out of range",
            raw_lines - space.num_lines()
        )));
    }
    Ok(space)
}

pub fn geometry_report(space: &PartialLinearSpace) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("geometry {}", space.name()));
    r.merge("", verify_partial_linear(space));
    let np = match verify_near_polygon(space) {
        Ok(np) => np,
        Err(e) => {
            r.record_with("connected", 1, Some(e.to_string()));
            return Ok(r);
        }
    };
    r.merge("", np.to_report(space.name()));
    if np.diameter == 3 && np.near_polygon {
        if space.num_points() == 243 {
            r.merge("", hexagon_structure(space)?.report);
        } else {
            r.merge("", quad_census(space).report);
        }
    }
    Ok(r)
}

fn cmd_verify(kind: &VerifyKind, seed: u64, format: Format) -> Result<Outcome> {
    match kind {
        VerifyKind::Geometry { file } => {
            let space = load_geometry(file)?;
            let r = geometry_report(&space)?;
            emit(format, &r)?;
            Ok(verdict(&r))
        }
        VerifyKind::Representation {
            geometry,
            representation,
        } => {
            let space = load_geometry(geometry)?;
            let json: RepresentationJson = read_json(representation)?;
            let rep = Representation::from_json(&json, space)?;
            let (r, _) = verify_representation(&rep)?;
            emit(format, &r)?;
            Ok(verdict(&r))
        }
        VerifyKind::Theorem { out, timings } => {
            let cert = certify(seed, *timings)?;
            if let Some(path) = out {
                write_json(path, &cert)?;
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&cert)?),
                Format::Text => {
                    for h in &cert.hexagons {
                        println!(
                            "{}: {} points, {} lines, group order {} ({}), generated {}",
                            h.name, h.points, h.lines, h.group_order, h.sign, h.generated_order
                        );
                    }
                    for c in cert.records.iter().filter(|c| !c.passed) {
                        println!("FAIL {} ({} cases): {}", c.name, c.universe, c.detail);
                    }
                    println!("{} checks, verdict {}", cert.records.len(), cert.verdict);
                }
            }
            Ok(if cert.passed() {
                Outcome::Pass
            } else {
                Outcome::VerificationFailed
            })
        }
    }
}

#[derive(Serialize)]
struct LabelledTable<'a, T: Serialize> {
    points: &'a [String],
    #[serde(flatten)]
    values: T,
}

fn cmd_export(what: ExportKind, geometry: HexagonKind, out: &Path) -> Result<Outcome> {
    match what {
        ExportKind::Theta => {
            let (_, _, triple) = canonical_inputs()?;
            write_json(out, &triple.to_json())?;
        }
        ExportKind::Epsilon => {
            let (duad, spread, triple) = canonical_inputs()?;
            let eps = build_epsilon(&duad, &spread, &triple)?;
            write_json(out, &LabelledTable { points: duad.labels(), values: eps })?;
        }
        ExportKind::Delta => {
            let duad = build_duad_q52();
            let dt = delta_table(&duad)?;
            #[derive(Serialize)]
            struct Delta {
                group: crate::espgroup::DescriptorJson,
                delta: Vec<crate::espgroup::GroupElement>,
            }
            let values = Delta {
                group: dt.desc.to_json(),
                delta: dt.delta,
            };
            write_json(out, &LabelledTable { points: duad.labels(), values })?;
        }
        ExportKind::Distances => {
            let space = match geometry {
                HexagonKind::Q52xL3 => build_product_l3(&build_duad_q52()),
                HexagonKind::STheta => canonical_stheta()?.space,
            };
            #[derive(Serialize)]
            struct Distances {
                name: String,
                matrix: Vec<Vec<u8>>,
            }
            let values = Distances {
                name: space.name().to_string(),
                matrix: space.distances().matrix(),
            };
            write_json(out, &LabelledTable { points: space.labels(), values })?;
        }
    }
    println!("wrote {}", out.display());
    Ok(Outcome::Pass)
}

pub fn run(cli: &Cli) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build();
    let work = || match &cli.command {
        Command::Build { target, out } => cmd_build(*target, out),
        Command::Verify(kind) => cmd_verify(kind, cli.seed, cli.format),
        Command::Export { what, geometry, out } => cmd_export(*what, *geometry, out),
    };
    let result = match pool {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    match result {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            Outcome::of_error(&e)
        }
    }
}
