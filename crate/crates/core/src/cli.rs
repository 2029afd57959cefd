//! Command-line front end. Every command is a thin wrapper over library
//! calls; JSON output is canonical so identical inputs give identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::Field;
use crate::bar::Barcode;
use crate::circle::{self, AngleSpace};
use crate::dictionary::{self, Configuration};
use crate::error::Error;
use crate::io::{self, barcode_json, endpoint, to_canonical_string, SpaceDocument};
use crate::levelset;
use crate::morse::{self, ChainComplexData, HodgeSummary};
use crate::oracle::{self, RandomSpec};
use crate::plcomplex::{self, PlSpace, DEFAULT_MAX_DIM};
use crate::sublevel;
use crate::svg;

#[derive(Debug, Parser)]
#[command(
    name = "levelpers",
    version,
    about = "Level and sub-level persistence barcodes of PL maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Both,
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input document (JSON).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Prime characteristic; overrides the document's "field".
    #[arg(long)]
    pub field: Option<u32>,
    /// Output path; JSON goes to stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Number of random spaces added to the named fixtures.
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    #[arg(long, default_value_t = 12)]
    pub max_vertices: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sub-level barcodes of the lower-star filtration.
    Sublevel(IoArgs),
    /// The four level barcodes.
    Level(IoArgs),
    /// δ and γ point configurations of the level barcodes.
    DeltaGamma(IoArgs),
    /// Refinement and duality identities on one input or a seeded corpus.
    RefineCheck {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Hodge counts and the filtered complex rebuilt from level barcodes.
    Morse {
        #[command(flatten)]
        io: IoArgs,
        /// Declared Morse chain complex to compare against.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Quotient barcodes and Novikov counts of an angle-valued map.
    Circle {
        #[command(flatten)]
        io: IoArgs,
        /// Sheets of the cyclic cover (default: #angles + 2, at least 3).
        #[arg(long)]
        periods: Option<usize>,
    },
    /// Full property suite over fixtures and a seeded corpus.
    Check {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

/// Why a command stopped early; maps onto the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or input documents. Exit 2.
    Input(String),
    /// A checked identity failed. Exit 1 with the counterexample.
    Identity(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    run(&cli, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match &cli.command {
        Command::Sublevel(io) => sublevel_cmd(io, stdout),
        Command::Level(io) => level_cmd(io, stdout),
        Command::DeltaGamma(io) => delta_gamma_cmd(io, stdout),
        Command::RefineCheck { io, corpus } => refine_check_cmd(io, corpus, stdout),
        Command::Morse { io, complex } => morse_cmd(io, complex.as_deref(), stdout),
        Command::Circle { io, periods } => circle_cmd(io, *periods, stdout),
        Command::Check { io, corpus } => check_cmd(io, corpus, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Identity(counterexample)) => {
            let _ = write!(
                stderr,
                "identity check failed:\n{}",
                to_canonical_string(&counterexample)
            );
            1
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn required(io: &IoArgs) -> std::result::Result<&Path, Failure> {
    io.input
        .as_deref()
        .ok_or_else(|| Failure::Input("--input is required".into()))
}

fn field(flag: Option<u32>, document: Option<u32>) -> std::result::Result<Field, Failure> {
    Ok(Field::new(flag.or(document).unwrap_or(2))?)
}

fn load_space(io: &IoArgs) -> std::result::Result<(PlSpace, Field), Failure> {
    let path = required(io)?;
    let doc = io::parse_space(&read(path)?)?;
    let f = field(io.field, doc.field)?;
    Ok((plcomplex::load(&doc, DEFAULT_MAX_DIM)?, f))
}

/// Writes through a sibling temporary file so readers never see a partial
/// file.
fn write_atomic(path: &Path, contents: &str) -> Outcome {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, contents)
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(io: &IoArgs, value: &Value, svg: Option<String>, stdout: &mut dyn Write) -> Outcome {
    let text = to_canonical_string(value);
    let stdout_err = |e: std::io::Error| Failure::Input(format!("stdout: {e}"));
    match (io.format, &io.output, svg) {
        (Format::Json, None, _) => stdout.write_all(text.as_bytes()).map_err(stdout_err),
        (Format::Json, Some(p), _) => write_atomic(p, &text),
        (Format::Svg, None, Some(s)) => stdout.write_all(s.as_bytes()).map_err(stdout_err),
        (Format::Svg, Some(p), Some(s)) => write_atomic(p, &s),
        (Format::Both, Some(p), Some(s)) => {
            write_atomic(p, &text)?;
            write_atomic(&p.with_extension("svg"), &s)
        }
        (Format::Both, None, Some(_)) => Err(Failure::Input("--format both needs --output".into())),
        (_, _, None) => Err(Failure::Input("this command only produces JSON".into())),
    }
}

fn sublevel_cmd(io: &IoArgs, stdout: &mut dyn Write) -> Outcome {
    let (s, f) = load_space(io)?;
    let sb = sublevel::sublevel_barcodes(&s, f)?;
    let value = json!({
        "field": f.characteristic(),
        "infinite": barcode_json(&sb.infinite),
        "finite": barcode_json(&sb.finite),
        "zero_length_pairs": sb.zero_length,
    });
    let mut all = sb.infinite.clone();
    all.extend(&sb.finite);
    emit(
        io,
        &value,
        Some(svg::barcode_svg(&all, "sub-level barcodes")),
        stdout,
    )
}

fn level_json(f: Field, bars: &Barcode) -> Value {
    json!({ "field": f.characteristic(), "bars": barcode_json(bars) })
}

fn level_cmd(io: &IoArgs, stdout: &mut dyn Write) -> Outcome {
    let (s, f) = load_space(io)?;
    let bars = levelset::level_barcodes(&s, f)?;
    emit(
        io,
        &level_json(f, &bars),
        Some(svg::barcode_svg(&bars, "level barcodes")),
        stdout,
    )
}

fn configuration_json(c: &Configuration) -> Value {
    Value::Array(
        c.iter()
            .map(|(p, &m)| json!({ "x": endpoint(p.x), "y": endpoint(p.y), "multiplicity": m, "diagonal": p.on_diagonal() }))
            .collect(),
    )
}

fn delta_gamma_cmd(io: &IoArgs, stdout: &mut dyn Write) -> Outcome {
    let (s, f) = load_space(io)?;
    let c = dictionary::configurations(&levelset::level_barcodes(&s, f)?);
    let per_degree = |m: &std::collections::BTreeMap<usize, Configuration>| -> Value {
        Value::Object(
            m.iter()
                .map(|(r, c)| (r.to_string(), configuration_json(c)))
                .collect::<Map<_, _>>(),
        )
    };
    let value = json!({
        "field": f.characteristic(),
        "delta": per_degree(&c.delta),
        "gamma": per_degree(&c.gamma),
    });
    emit(
        io,
        &value,
        Some(svg::configurations_svg(&c, "δ and γ configurations")),
        stdout,
    )
}

/// One case of a corpus run.
struct Case {
    name: String,
    space: PlSpace,
    field: Field,
}

impl Case {
    fn describe(&self, check: &str, detail: String) -> Value {
        let doc = SpaceDocument {
            field: Some(self.field.characteristic()),
            vertices: self
                .space
                .ids()
                .iter()
                .zip(self.space.values())
                .map(|(&id, &value)| io::VertexEntry { id, value })
                .collect(),
            simplices: self
                .space
                .simplices_by_id()
                .into_iter()
                .filter(|s| s.len() > 1)
                .collect(),
        };
        json!({
            "case": self.name,
            "check": check,
            "detail": detail,
            "space": serde_json::to_value(doc).expect("document serializes"),
        })
    }
}

fn corpus(io: &IoArgs, args: &CorpusArgs) -> std::result::Result<Vec<Case>, Failure> {
    let fixed = io.field.map(Field::new).transpose()?;
    let cycle = |k: u64| fixed.unwrap_or_else(|| Field::new([2, 3, 5][(k % 3) as usize]).unwrap());
    let mut cases: Vec<Case> = crate::fixtures::real_fixtures()
        .into_iter()
        .enumerate()
        .map(|(k, (name, space))| Case {
            name: name.into(),
            space,
            field: cycle(k as u64),
        })
        .collect();
    for seed in 0..args.seeds {
        let spec = RandomSpec {
            max_vertices: args.max_vertices.max(2),
            ..RandomSpec::small(seed)
        };
        cases.push(Case {
            name: format!("seed {seed}"),
            space: oracle::random_space(&spec),
            field: cycle(seed),
        });
    }
    Ok(cases)
}

/// Refinement to sub-level bars and the `-f` duality on one case.
fn refine_identities(case: &Case) -> std::result::Result<(), Failure> {
    let (s, f) = (&case.space, case.field);
    let bars = levelset::level_barcodes(s, f)?;
    let refined = dictionary::refine_to_sublevel(&bars);
    let sb = sublevel::sublevel_barcodes(s, f)?;
    if !refined.matches(&sb) {
        return Err(Failure::Identity(case.describe(
            "refinement",
            format!(
                "predicted {} {} but sub-level gives {} {}",
                refined.infinite, refined.finite, sb.infinite, sb.finite
            ),
        )));
    }
    let neg = s.negate();
    let neg_bars = levelset::level_barcodes(&neg, f)?;
    let mirrored = dictionary::mirror(&bars);
    if neg_bars != mirrored {
        return Err(Failure::Identity(case.describe(
            "duality",
            format!("mirror {mirrored} but -f gives {neg_bars}"),
        )));
    }
    let neg_finite = sublevel::sublevel_barcodes(&neg, f)?.finite;
    for (b, m) in refined.invisible.iter() {
        let back = crate::bar::Bar::finite(b.degree, -b.right, -b.left);
        if neg_finite.multiplicity(&back) < m {
            return Err(Failure::Identity(case.describe(
                "invisibility",
                format!("{b} missing from -f as {back}"),
            )));
        }
    }
    Ok(())
}

fn refine_check_cmd(io: &IoArgs, args: &CorpusArgs, stdout: &mut dyn Write) -> Outcome {
    let cases = match &io.input {
        Some(_) => {
            let (space, field) = load_space(io)?;
            vec![Case {
                name: "input".into(),
                space,
                field,
            }]
        }
        None => corpus(io, args)?,
    };
    for case in &cases {
        refine_identities(case)?;
    }
    let value = json!({ "cases": cases.len(), "checks": ["refinement", "duality", "invisibility"], "passed": true });
    emit(io, &value, None, stdout)
}

fn summary_json(h: &HodgeSummary) -> Value {
    json!({ "beta": h.beta, "rho": h.rho, "c": h.c })
}

fn morse_cmd(io: &IoArgs, complex: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let (s, f) = load_space(io)?;
    let bars = levelset::level_barcodes(&s, f)?;
    let rebuilt = morse::reconstruct(&bars, f);
    let mut stages = Vec::new();
    for (k, stage) in rebuilt.stages.iter().enumerate() {
        let at = morse::counts_at(&bars, stage.threshold);
        let mut entry = summary_json(&at);
        entry["t"] = endpoint(stage.threshold);
        entry["homology"] = json!(rebuilt.homology_dims(k)?);
        entry["dims"] = json!((0..rebuilt.degrees())
            .map(|r| stage.dim(r))
            .collect::<Vec<_>>());
        stages.push(entry);
    }
    let failure = rebuilt.check()?;
    let mut value = json!({
        "field": f.characteristic(),
        "counts": summary_json(&morse::counts_from_barcodes(&bars)),
        "stages": stages,
        "reconstruction": { "consistent": failure.is_none(), "failure": failure },
    });
    let mut mismatch = None;
    if let Some(path) = complex {
        let data = ChainComplexData::from_document(&io::parse_chain_complex(&read(path)?)?, f)?;
        let report = morse::compare(&data, &rebuilt)?;
        value["compare"] = json!({
            "thresholds": report.thresholds.iter().map(|&t| endpoint(t)).collect::<Vec<_>>(),
            "matched": report.matched(),
            "mismatch": report.mismatch.as_ref().map(|(r, t, d)| json!({ "degree": r, "t": endpoint(*t), "detail": d })),
        });
        mismatch = report.mismatch;
    }
    if failure.is_some() || mismatch.is_some() {
        return Err(Failure::Identity(value));
    }
    emit(io, &value, None, stdout)
}

fn circle_cmd(io: &IoArgs, periods: Option<usize>, stdout: &mut dyn Write) -> Outcome {
    let path = required(io)?;
    let doc = io::parse_angle(&read(path)?)?;
    let f = field(io.field, doc.field)?;
    let a = AngleSpace::from_document(&doc, DEFAULT_MAX_DIM)?;
    let n = periods.unwrap_or_else(|| a.default_periods());
    let q = circle::quotient_barcodes_with_periods(&a, f, n)?;
    let degrees = a.base().dim() + 1;
    let value = json!({
        "field": f.characteristic(),
        "periods": n,
        "bars": barcode_json(&q.bars),
        "unbounded": q.unbounded.iter().map(|(r, m)| (r.to_string(), json!(m))).collect::<Map<_, _>>(),
        "novikov_betti": circle::novikov_betti(&q, degrees),
    });
    emit(
        io,
        &value,
        Some(svg::barcode_svg(&q.bars, "quotient barcodes")),
        stdout,
    )
}

fn counts_identities(case: &Case) -> std::result::Result<(), Failure> {
    let (s, f) = (&case.space, case.field);
    let bars = levelset::level_barcodes(s, f)?;
    let counts = morse::counts_from_barcodes(&bars);
    let betti = oracle::betti(s, f)?;
    for r in 0..betti.len().max(counts.beta.len()) {
        if counts.beta(r) != betti.get(r).copied().unwrap_or(0) {
            return Err(Failure::Identity(case.describe(
                "betti",
                format!(
                    "degree {r}: bars give {} but oracle {betti:?}",
                    counts.beta(r)
                ),
            )));
        }
    }
    for t in plcomplex::level_values(s)? {
        let at = morse::counts_at(&bars, t);
        let ob = oracle::sublevel_betti(s, t, f)?;
        if !at.identity_holds()
            || (0..ob.len().max(at.beta.len()))
                .any(|r| at.beta(r) != ob.get(r).copied().unwrap_or(0))
        {
            return Err(Failure::Identity(case.describe(
                "sublevel counts",
                format!("t = {t}: bars give {at:?}, oracle {ob:?}"),
            )));
        }
    }
    let rebuilt = morse::reconstruct(&bars, f);
    if let Some(msg) = rebuilt.check()? {
        return Err(Failure::Identity(case.describe("reconstruction", msg)));
    }
    for r in 0..=s.dim() {
        let z = levelset::build_zigzag(s, f, r)?;
        let p = oracle::zigzag_profile(s, f, r)?;
        if z.dims() != p.dims.as_slice() || z.arrow_ranks()? != p.ranks {
            return Err(Failure::Identity(
                case.describe("zigzag profile", format!("degree {r}")),
            ));
        }
    }
    Ok(())
}

fn check_cmd(io: &IoArgs, args: &CorpusArgs, stdout: &mut dyn Write) -> Outcome {
    let cases = corpus(io, args)?;
    for case in &cases {
        refine_identities(case)?;
        counts_identities(case)?;
    }
    for (name, a) in [
        ("s1map", crate::fixtures::s1map()),
        ("s1v", crate::fixtures::s1v()),
    ] {
        let f = field(io.field, None)?;
        let n = a.default_periods();
        let q = circle::quotient_barcodes_with_periods(&a, f, n)?;
        if q != circle::quotient_barcodes_with_periods(&a, f, n + 1)? {
            return Err(Failure::Identity(
                json!({ "case": name, "check": "quotient stability" }),
            ));
        }
    }
    for seed in 0..args.seeds {
        let f = field(io.field, Some([2, 3, 5][(seed % 3) as usize]))?;
        let c = oracle::random_chain_complex(seed, f);
        let h = morse::hodge(&c).map_err(|e| Failure::Identity(json!({ "case": format!("complex {seed}"), "check": "hodge", "detail": e.to_string() })))?;
        if h.beta
            .iter()
            .enumerate()
            .any(|(r, &b)| b != oracle::chain_complex_betti(&c)[r])
        {
            return Err(Failure::Identity(
                json!({ "case": format!("complex {seed}"), "check": "hodge betti" }),
            ));
        }
    }
    let value = json!({
        "spaces": cases.len(),
        "angle_fixtures": 2,
        "chain_complexes": args.seeds,
        "passed": true,
    });
    emit(io, &value, None, stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("levelpers").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn level_on_circle() {
        let (code, out, _) = run_args(&["level", "--input", &fixture("circ.json")]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["bars"].as_array().unwrap().len(), 2);
        assert_eq!(v["bars"][0]["left_closed"], json!(true));
        assert_eq!(v["bars"][1]["right_closed"], json!(false));
    }

    #[test]
    fn missing_input_is_a_usage_error() {
        let (code, _, err) = run_args(&["sublevel"]);
        assert_eq!(code, 2);
        assert!(err.contains("--input"));
    }

    #[test]
    fn small_corpus_passes() {
        let (code, out, err) = run_args(&["check", "--seeds", "5"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("\"passed\": true"));
    }

    #[test]
    fn svg_without_svg_support() {
        let (code, _, err) = run_args(&["refine-check", "--seeds", "1", "--format", "svg"]);
        assert_eq!(code, 2);
        assert!(err.contains("only produces JSON"));
    }
}
