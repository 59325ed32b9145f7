//! Request parsing, dispatch and rendering for the `mukai` command.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::BufRead;

use clap::{ArgAction, Args, Parser, Subcommand};
use mukai_core::selftest::{self, Level, SuiteReport};
use mukai_core::walls::walls_through;
use mukai_core::{
    candidate_walls, canonical_reduce, chamber_representative, enumerate_hn_types, mu_stable_exists,
    verify_min_codim, CaseBMode, CodimReport, Dimension, Error, ExistenceReport, Int, MukaiVector, NSClass,
    NodalPredicate, Reduction, SlopeTable, StratumKind, StratumType, SurfaceConfig, WallClass, WallConfig,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const SELFTEST_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const PRECONDITION: i32 = 3;
}

/// Citation tags for verdicts produced outside the existence oracle.
pub mod tags {
    pub const REDUCE_RANK_TWO: &str = "Thm-reduction-rank-two";
    pub const REDUCE_RANK_FOUR: &str = "Thm-reduction-rank-four";
    pub const PSS_CODIM: &str = "Lemma-pss-codim";
    pub const HN_CODIM: &str = "Lemma-hn-codim";
    pub const GENERAL_POLARIZATION: &str = "Def-general-polarization";
}

#[derive(Parser, Debug, Clone)]
#[command(name = "mukai", version, about = "Exact Mukai lattice computations on Enriques surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bound on |2a_i| for stratum enumeration.
    #[arg(long, global = true, default_value_t = 6, value_name = "N")]
    pub height_bound: Int,
    /// Whether the surface has no (−2) curves.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    pub unnodal: bool,
    /// Factor on the wall window 2 r_F (r − r_F) Δ(v).
    #[arg(long, global = true, default_value_t = 1, value_name = "Q")]
    pub wall_bound_scale: Int,
    /// A vector of square −2 whose slope carries a rigid sheaf, or `all`.
    /// Repeatable; needs `--unnodal false`.
    #[arg(long = "nodal-witness", global = true, value_name = "V")]
    pub nodal_witness: Vec<String>,
    /// Grant case B only to the slopes of `--minus1-witness`.
    #[arg(long, global = true)]
    pub strict_case_b: bool,
    /// A vector of square −1 granted as a case B witness. Repeatable.
    #[arg(long = "minus1-witness", global = true, value_name = "V")]
    pub minus1_witness: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Existence of μ-stable sheaves, dimension and structure of the moduli.
    Analyze {
        /// Mukai vector `(r; [x1,...,x10]; s)` with `s = 2a`.
        vector: String,
        /// Determinant class; defaults to ξ.
        #[arg(long = "L", value_name = "CLASS")]
        l_class: Option<String>,
    },
    /// Reduce a primitive even-rank vector to rank 2 or 4.
    Reduce {
        /// Mukai vector; see `analyze`.
        vector: String,
        /// Determinant class; defaults to ξ.
        #[arg(long = "L", value_name = "CLASS")]
        l_class: Option<String>,
    },
    /// Codimensions of the Harder–Narasimhan and semistable strata.
    Strata {
        /// Mukai vector; see `analyze`.
        vector: String,
        /// List every enumerated type.
        #[arg(long)]
        types: bool,
    },
    /// Candidate walls, an optional polarization test and a chamber representative.
    Walls {
        /// Mukai vector; see `analyze`.
        vector: String,
        /// Bound W on |(η, e1 + e2)|; defaults to 2r.
        #[arg(long, value_name = "W")]
        region: Option<Int>,
        /// Also search for a polarization off every wall.
        #[arg(long)]
        chamber: bool,
        /// Test this polarization against the walls.
        #[arg(long = "H", value_name = "CLASS")]
        h: Option<String>,
    },
    /// Run the self-verification suites: `quick` or `full`.
    Selftest { level: String },
    /// Read one request per line from stdin.
    Batch,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Reduce { .. } => "reduce",
            Command::Strata { .. } => "strata",
            Command::Walls { .. } => "walls",
            Command::Selftest { .. } => "selftest",
            Command::Batch => "batch",
        }
    }
}

/// Successful output wrapped with its schema version and citations.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub result: T,
    pub citations: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    pub position: Option<usize>,
    pub input: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ErrorEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub error: ErrorRecord,
    pub exit_code: i32,
}

/// `⟨v^2⟩` and `ℓ` before and after a reduction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub square_in: Int,
    pub square_out: Int,
    pub ell_in: Int,
    pub ell_out: Int,
    pub preserved: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReduceOutput {
    pub reduction: Reduction,
    pub certificate: Certificate,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StrataOutput {
    pub report: CodimReport,
    pub hn_types: Option<Vec<StratumType>>,
    pub pss_types: Option<Vec<StratumType>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolarizationCheck {
    #[serde(rename = "H")]
    pub h: NSClass,
    pub general: bool,
    pub walls_through: Vec<WallClass>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WallsOutput {
    pub v: MukaiVector,
    pub config: WallConfig,
    pub count: usize,
    pub walls: Vec<WallClass>,
    pub chamber_representative: Option<NSClass>,
    pub polarization: Option<PolarizationCheck>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SelftestOutput {
    pub level: Level,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// The result of one successful request.
#[derive(Clone, PartialEq, Debug)]
pub enum Response {
    Analyze(ExistenceReport),
    Reduce(ReduceOutput),
    Strata(StrataOutput),
    Walls(WallsOutput),
    Selftest(SelftestOutput),
}

/// A failed request with the text it failed on.
#[derive(Clone, PartialEq, Debug)]
pub struct Failure {
    pub command: String,
    pub error: Error,
    pub input: Option<String>,
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self.error {
            Error::Parse { .. } => exit::PARSE,
            _ => exit::PRECONDITION,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        let (kind, position) = match &self.error {
            Error::Parse { position, .. } => ("parse", Some(*position)),
            Error::Precondition(_) => ("precondition", None),
            Error::Infinite(_) => ("infinite", None),
            Error::SearchExhausted(_) => ("search_exhausted", None),
        };
        ErrorRecord { kind: kind.into(), message: self.error.to_string(), position, input: self.input.clone() }
    }

    pub fn envelope(&self) -> ErrorEnvelope {
        ErrorEnvelope {
            schema_version: SCHEMA_VERSION,
            command: self.command.clone(),
            error: self.record(),
            exit_code: self.code(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("error: {}\n", self.error);
        if let (Some(input), Error::Parse { position, .. }) = (&self.input, &self.error) {
            let col = input.get(..*position).map_or(*position, |p| p.chars().count());
            let _ = writeln!(out, "  {input}\n  {}^", " ".repeat(col));
        }
        out
    }
}

/// What a run prints and returns.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn with_input<T>(command: &str, input: &str, r: mukai_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|error| Failure { command: command.into(), error, input: Some(input.into()) })
}

fn plain<T>(command: &str, r: mukai_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|error| Failure { command: command.into(), error, input: None })
}

fn parse_vector(command: &str, s: &str) -> Result<MukaiVector, Failure> {
    with_input(command, s, s.parse())
}

fn parse_class(command: &str, s: &str) -> Result<NSClass, Failure> {
    with_input(command, s, s.parse())
}

fn witness_table(command: &str, list: &[String], square: Int) -> Result<SlopeTable, Failure> {
    let mut t = Vec::new();
    for w in list {
        let v = parse_vector(command, w)?;
        if v.r() <= 0 || v.square() != square {
            let msg = format!("witness {v} must have positive rank and square {square}");
            return Err(Failure { command: command.into(), error: Error::Precondition(msg), input: Some(w.clone()) });
        }
        t.push((v.r(), v.xi()));
    }
    Ok(SlopeTable(t))
}

/// Builds the surface model from the flags.
pub fn surface_config(command: &str, o: &Options) -> Result<SurfaceConfig, Failure> {
    let pre = |m: &str| Failure { command: command.into(), error: Error::Precondition(m.into()), input: None };
    if o.unnodal && !o.nodal_witness.is_empty() {
        return Err(pre("--nodal-witness needs --unnodal false"));
    }
    if !o.strict_case_b && !o.minus1_witness.is_empty() {
        return Err(pre("--minus1-witness needs --strict-case-b"));
    }
    let nodal = if o.nodal_witness.iter().any(|w| w == "all") {
        NodalPredicate::Always
    } else if o.nodal_witness.is_empty() {
        NodalPredicate::Never
    } else {
        NodalPredicate::Table(witness_table(command, &o.nodal_witness, -2)?)
    };
    let case_b = if o.strict_case_b {
        CaseBMode::Strict(witness_table(command, &o.minus1_witness, -1)?)
    } else {
        CaseBMode::Permissive
    };
    Ok(SurfaceConfig { unnodal: o.unnodal, nodal, case_b })
}

/// Runs one parsed request other than `batch`.
pub fn dispatch(cli: &Cli) -> Result<Response, Failure> {
    let o = &cli.opts;
    let name = cli.command.name();
    match &cli.command {
        Command::Analyze { vector, l_class } => {
            let v = parse_vector(name, vector)?;
            let l = l_class.as_deref().map(|s| parse_class(name, s)).transpose()?;
            let cfg = surface_config(name, o)?;
            Ok(Response::Analyze(plain(name, mu_stable_exists(&v, l.as_ref(), &cfg))?))
        }
        Command::Reduce { vector, l_class } => {
            let v = parse_vector(name, vector)?;
            let l = l_class.as_deref().map(|s| parse_class(name, s)).transpose()?;
            let reduction = plain(name, canonical_reduce(&v, l.as_ref()))?;
            let (square_out, ell_out) = (reduction.output.square(), reduction.output.ell());
            let certificate = Certificate {
                square_in: v.square(),
                square_out,
                ell_in: v.ell(),
                ell_out,
                preserved: v.square() == square_out && v.ell() == ell_out,
            };
            Ok(Response::Reduce(ReduceOutput { reduction, certificate }))
        }
        Command::Strata { vector, types } => {
            let v = parse_vector(name, vector)?;
            let cfg = surface_config(name, o)?;
            let report = plain(name, verify_min_codim(&v, o.height_bound, &cfg))?;
            let list = |kind| plain(name, enumerate_hn_types(&v, o.height_bound, kind, &cfg));
            let (hn_types, pss_types) = if *types {
                (Some(list(StratumKind::HnSlope)?), Some(list(StratumKind::HnSurface)?))
            } else {
                (None, None)
            };
            Ok(Response::Strata(StrataOutput { report, hn_types, pss_types }))
        }
        Command::Walls { vector, region, chamber, h } => {
            let v = parse_vector(name, vector)?;
            let config = WallConfig { scale: o.wall_bound_scale, region: *region, ..WallConfig::default() };
            let walls = plain(name, candidate_walls(&v, &config))?;
            let polarization = match h {
                Some(hs) => {
                    let h = parse_class(name, hs)?;
                    let through = plain(name, walls_through(&h, &v, &config))?;
                    Some(PolarizationCheck { h, general: through.is_empty(), walls_through: through })
                }
                None => None,
            };
            let chamber_representative =
                if *chamber { Some(plain(name, chamber_representative(&v, &config))?) } else { None };
            Ok(Response::Walls(WallsOutput {
                v,
                config,
                count: walls.len(),
                walls,
                chamber_representative,
                polarization,
            }))
        }
        Command::Selftest { level } => {
            let level: Level = with_input(name, level, level.parse())?;
            let suites = selftest::run(level);
            let passed = suites.iter().all(SuiteReport::passed);
            Ok(Response::Selftest(SelftestOutput { level, passed, suites }))
        }
        Command::Batch => Err(plain(name, Err(Error::Precondition("batch requests cannot nest".into())))?),
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn dim_text(d: &Dimension) -> String {
    match d {
        Dimension::Exact(n) => format!("{n}"),
        Dimension::AtMost(n) => format!("≤ {n}"),
        Dimension::Rigid => "rigid (−1)".into(),
    }
}

impl Response {
    pub fn command(&self) -> &'static str {
        match self {
            Response::Analyze(_) => "analyze",
            Response::Reduce(_) => "reduce",
            Response::Strata(_) => "strata",
            Response::Walls(_) => "walls",
            Response::Selftest(_) => "selftest",
        }
    }

    pub fn citations(&self) -> Vec<String> {
        match self {
            Response::Analyze(r) => r.citations.clone(),
            Response::Reduce(r) => {
                vec![if r.reduction.ell == 2 { tags::REDUCE_RANK_FOUR } else { tags::REDUCE_RANK_TWO }.to_string()]
            }
            Response::Strata(_) => vec![tags::PSS_CODIM.to_string(), tags::HN_CODIM.to_string()],
            Response::Walls(_) => vec![tags::GENERAL_POLARIZATION.to_string()],
            Response::Selftest(_) => Vec::new(),
        }
    }

    pub fn code(&self) -> i32 {
        match self {
            Response::Selftest(s) if !s.passed => exit::SELFTEST_FAILED,
            _ => exit::OK,
        }
    }

    fn envelope<T: Serialize + Clone>(&self, result: &T) -> Envelope<T> {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: self.command().into(),
            result: result.clone(),
            citations: self.citations(),
        }
    }

    pub fn json_value(&self) -> serde_json::Value {
        let v = match self {
            Response::Analyze(r) => serde_json::to_value(self.envelope(r)),
            Response::Reduce(r) => serde_json::to_value(self.envelope(r)),
            Response::Strata(r) => serde_json::to_value(self.envelope(r)),
            Response::Walls(r) => serde_json::to_value(self.envelope(r)),
            Response::Selftest(r) => serde_json::to_value(self.envelope(r)),
        };
        v.expect("outputs serialize")
    }

    pub fn text(&self) -> String {
        let mut o = String::new();
        match self {
            Response::Analyze(r) => {
                let _ = writeln!(o, "v = {}   L = {}", r.v, r.l_class);
                let _ = writeln!(o, "⟨v^2⟩ = {}   slope: l = {}, r0 = {}, ξ0 = {}", r.square, r.slope.l, r.slope.r0, r.slope.xi0);
                let witness = r.classification.witness.map(|w| format!(" (witness {w})")).unwrap_or_default();
                let _ = writeln!(o, "case {:?}{witness}   threshold = {}", r.classification.case, r.threshold);
                let _ = writeln!(
                    o,
                    "μ-stable exists: {}   locally free: {}",
                    yes_no(Some(r.mu_stable_exists)),
                    yes_no(Some(r.mu_stable_locally_free_exists))
                );
                let stable = r.stack_dim.stable_locus_nonempty.map(|b| format!("   stable locus: {}", yes_no(Some(b))));
                let _ = writeln!(o, "dimension: {}{}", dim_text(&r.stack_dim.dim), stable.unwrap_or_default());
                let _ = writeln!(
                    o,
                    "reduced: {}   normal: {}   connected: {}   irreducible: {}",
                    yes_no(r.reduced),
                    yes_no(r.normal),
                    yes_no(r.connected),
                    yes_no(r.irreducible)
                );
                for n in &r.notes {
                    let _ = writeln!(o, "note: {n}");
                }
            }
            Response::Reduce(r) => {
                let red = &r.reduction;
                let _ = writeln!(o, "{} -> {}", red.input, red.output);
                let _ = writeln!(o, "ℓ = {}   ⟨v^2⟩ = {}", red.ell, red.square);
                if let Some(l) = red.l_out {
                    let _ = writeln!(o, "L' = {l}");
                }
                let c = &r.certificate;
                let _ = writeln!(
                    o,
                    "certificate: ⟨v^2⟩ {} -> {}, ℓ {} -> {}, preserved: {}",
                    c.square_in,
                    c.square_out,
                    c.ell_in,
                    c.ell_out,
                    yes_no(Some(c.preserved))
                );
            }
            Response::Strata(r) => {
                let rep = &r.report;
                let show = |m: Option<Int>| m.map_or("none".to_string(), |x| x.to_string());
                let _ = writeln!(o, "v = {}   height bound {}   case {:?}", rep.v, rep.height_bound, rep.case);
                let _ = writeln!(
                    o,
                    "types checked: {}   min codim: HN {}, semistable {}",
                    rep.types_checked,
                    show(rep.hn_min),
                    show(rep.pss_min)
                );
                let _ = writeln!(
                    o,
                    "exceptional 2v0: {}   above threshold: {}   codim ≥ 1: {}   semistable dichotomy: {}",
                    yes_no(Some(rep.exceptional)),
                    yes_no(Some(rep.above_threshold)),
                    yes_no(Some(rep.positive())),
                    yes_no(Some(rep.pss_dichotomy()))
                );
                let lists = [("low codim", Some(&rep.low_codim_types)), ("HN", r.hn_types.as_ref()), ("semistable", r.pss_types.as_ref())];
                for (label, list) in lists {
                    for t in list.into_iter().flatten() {
                        let parts: Vec<String> = t.surface_vectors().iter().map(|v| v.to_string()).collect();
                        let _ = writeln!(o, "{label}: codim {} dim {}: {}", t.codim, t.dim, parts.join(" + "));
                    }
                }
            }
            Response::Walls(r) => {
                let _ = writeln!(o, "v = {}   walls: {}", r.v, r.count);
                for w in &r.walls {
                    let _ = writeln!(o, "η = {}   rF = {}   η^2 = {}   multiplicity {}", w.eta, w.r_f, w.norm, w.multiplicity);
                }
                if let Some(p) = &r.polarization {
                    let _ = writeln!(o, "H = {} general: {} ({} walls through H)", p.h, yes_no(Some(p.general)), p.walls_through.len());
                }
                if let Some(h) = r.chamber_representative {
                    let _ = writeln!(o, "chamber representative: {h}");
                }
            }
            Response::Selftest(r) => {
                for s in &r.suites {
                    let status = if s.passed() { "ok" } else { "FAILED" };
                    let _ = writeln!(o, "{:<12} {:>9} checks {:>4} failures {:>7} ms  {status}", s.name, s.checks, s.failures, s.millis);
                    if let Some(f) = &s.first_failure {
                        let _ = writeln!(o, "  first failure: {f}");
                    }
                    for line in &s.info {
                        let _ = writeln!(o, "  {line}");
                    }
                }
                let _ = writeln!(o, "selftest {}: {}", r.level, if r.passed { "passed" } else { "FAILED" });
            }
        }
        if !matches!(self, Response::Selftest(_)) {
            let _ = writeln!(o, "citations: {}", self.citations().join(", "));
        }
        o
    }
}

fn render(res: Result<Response, Failure>, json: bool, compact: bool) -> Outcome {
    let to_string = |v: &serde_json::Value| {
        if compact {
            serde_json::to_string(v).expect("values serialize")
        } else {
            serde_json::to_string_pretty(v).expect("values serialize")
        }
    };
    match res {
        Ok(r) => {
            let stdout = if json { to_string(&r.json_value()) + "\n" } else { r.text() };
            Outcome { stdout, stderr: String::new(), code: r.code() }
        }
        Err(f) => {
            let stdout = if json {
                to_string(&serde_json::to_value(f.envelope()).expect("errors serialize")) + "\n"
            } else {
                String::new()
            };
            Outcome { stdout, stderr: f.text(), code: f.code() }
        }
    }
}

fn batch(cli: &Cli, stdin: &mut dyn BufRead) -> Outcome {
    let mut out = Outcome::default();
    for (i, line) in stdin.lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                let _ = writeln!(out.stderr, "line {}: {e}", i + 1);
                out.code = exit::PARSE;
                break;
            }
        };
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let res = match shlex::split(trimmed) {
            None => Err(Failure {
                command: "batch".into(),
                error: Error::Parse { position: 0, message: "unbalanced quotes".into() },
                input: Some(trimmed.into()),
            }),
            Some(tokens) => {
                let args = std::iter::once("mukai".to_string()).chain(tokens);
                match Cli::try_parse_from(args) {
                    Ok(mut req) => {
                        req.opts.json |= cli.opts.json;
                        dispatch(&req)
                    }
                    Err(e) => Err(Failure {
                        command: "batch".into(),
                        error: Error::Parse { position: 0, message: e.kind().to_string() },
                        input: Some(trimmed.into()),
                    }),
                }
            }
        };
        let one = render(res, cli.opts.json, true);
        out.stdout.push_str(&one.stdout);
        if !cli.opts.json && !one.stdout.is_empty() {
            out.stdout.push('\n');
        }
        for l in one.stderr.lines() {
            let _ = writeln!(out.stderr, "line {}: {l}", i + 1);
        }
        if out.code == exit::OK {
            out.code = one.code;
        }
    }
    out
}

/// Runs a parsed request; `batch` reads from `stdin`.
pub fn execute(cli: &Cli, stdin: &mut dyn BufRead) -> Outcome {
    match cli.command {
        Command::Batch => batch(cli, stdin),
        _ => render(dispatch(cli), cli.opts.json, false),
    }
}

/// Parses `args` (program name first) and runs the request.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdin),
        Err(e) => {
            let text = e.render().to_string();
            if e.exit_code() == 0 {
                Outcome { stdout: text, stderr: String::new(), code: exit::OK }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: exit::PARSE }
            }
        }
    }
}
