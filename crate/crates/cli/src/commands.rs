//! Subcommands, their dispatch, and exit codes.

use std::io::Read;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use multicat::colimits::{
    bounded_pushout_oracle, coend_set, pushout_cat_ff, pushout_multicat_along_e,
    pushout_multicat_along_e_iter, verify_pushout, OracleLimits, Profunctor, PushoutResult, Span,
};
use multicat::constructions::{
    cell_multigraph, counit, discrete, embed_e, embed_functor, extend_u, factor_cofibration_style,
    factor_through_image, forget, free_category, free_symmulticat, indiscrete, interval_graph,
    restrict_u, sym, tensor, tensor_map, underlying_1, underlying_functor, ObjectMap,
};
use multicat::karoubi::{
    idempotents_split, is_morita_equivalence, is_morita_multi_equivalence, kar_category,
    kar_functor, kar_multicat, kar_multifunctor, unreachable_objects, unsplit_idempotent,
};
use multicat::modelcheck::{
    check_premises, generating_i, generating_j, has_lifting, is_cofibration, is_equivalence,
    is_essentially_surjective, is_isofibration, is_multi_equivalence, is_multi_fibration,
    is_trivial_fibration, squares, GeneratingSet, LiftingProblem,
};
use multicat::sample::Sampler;
use multicat::search::{count_maps, enumerate_maps, find_isomorphism};
use multicat::standard;
use multicat::validate::{validate_category_with, validate_multicat_with};
use multicat::{
    FiniteCategory, Functor, Graph, Map, Mor, MultiFunctor, MultiGraph, Multicat, Obj, Structure,
    DEFAULT_BUDGET,
};

use crate::text::{print_all, Bundle, Document, ParseError, PrintError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
}

impl CmdError {
    pub fn code(&self) -> i32 {
        match self {
            CmdError::Usage(_) | CmdError::Parse(_) => EXIT_USAGE,
            CmdError::Domain(_) => EXIT_DOMAIN,
            CmdError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<multicat::Error> for CmdError {
    fn from(e: multicat::Error) -> Self {
        match e {
            multicat::Error::BudgetExceeded { .. } => CmdError::Budget(e.to_string()),
            _ => CmdError::Domain(e.to_string()),
        }
    }
}

impl From<PrintError> for CmdError {
    fn from(e: PrintError) -> Self {
        CmdError::Domain(e.to_string())
    }
}

type CmdResult<T> = Result<T, CmdError>;

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(
    name = "multicat",
    version,
    about = "Finite categories and truncated symmetric multicategories"
)]
pub struct Cli {
    /// Arity truncation bound.
    #[arg(long = "K", global = true)]
    pub k: Option<usize>,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Step allowance for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Exit 0 on results flagged inexact.
    #[arg(long, global = true)]
    pub allow_inexact: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Canonical)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Canonical,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Inputs {
    /// Input files; none or `-` reads standard input.
    pub files: Vec<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OneInput {
    /// Document to use; defaults to the last one of a fitting kind.
    #[arg(long)]
    pub doc: Option<String>,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every structure and map in the input.
    Validate(Inputs),
    /// Build a structure or map.
    Construct {
        #[command(subcommand)]
        op: Construct,
    },
    /// Pushout of `C <-f- A -i-> B`, or of `M <- E(M_1) -> E(B)`.
    Pushout(PushoutArgs),
    /// Idempotent completion of a structure or map.
    Kar(OneInput),
    /// Evaluate a predicate; exit 0 when true, 1 when false.
    Check(CheckArgs),
    /// Solve lifting problems of `i` against `p`.
    Lift(LiftArgs),
    /// Print the generating sets I and J at truncation K.
    Gensets,
    /// Check the model-structure premises on a seeded sample.
    Premises(PremiseArgs),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// A named standard structure.
    Standard {
        #[arg(value_enum)]
        name: StandardName,
    },
    /// E(C) at truncation K (default 2).
    E(OneInput),
    /// The underlying category M_1.
    Underlying(OneInput),
    /// Sym(G) of a nonsymmetric multigraph.
    Sym(OneInput),
    /// The underlying multigraph of a multicat.
    Forget {
        #[arg(long)]
        symmetric: bool,
        #[command(flatten)]
        input: OneInput,
    },
    /// The cell multigraph (k+1, A).
    Cell {
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec!["m".to_string()])]
        arrows: Vec<String>,
    },
    /// The graph (2, A), as a multigraph at truncation 1.
    Interval {
        #[arg(long, value_delimiter = ',', default_values_t = vec!["a".to_string()])]
        arrows: Vec<String>,
    },
    /// The free truncated symmetric multicat on a symmetric multigraph.
    Free {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[command(flatten)]
        input: OneInput,
    },
    /// The path category of a unary multigraph.
    FreeCategory {
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[command(flatten)]
        input: OneInput,
    },
    /// u*B for u listing objects of B, with its map to B.
    Restrict {
        #[arg(long, value_delimiter = ',', required = true)]
        objects: Vec<String>,
        #[command(flatten)]
        input: OneInput,
    },
    /// u_!M along the object function of a map M -> N, with the unit.
    Extend {
        #[arg(long)]
        map: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Factor a map through its image, or through u_!M.
    Factor {
        #[arg(long)]
        map: Option<String>,
        #[arg(long, value_enum, default_value_t = FactorStyle::Image)]
        style: FactorStyle,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// M (x) N.
    Tensor {
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// The discrete category on the given objects.
    Discrete {
        #[arg(long, value_delimiter = ',', required = true)]
        objects: Vec<String>,
    },
    /// The indiscrete category on the given objects.
    Indiscrete {
        #[arg(long, value_delimiter = ',', required = true)]
        objects: Vec<String>,
    },
    /// `f (x) g` of two multifunctors.
    TensorMaps {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Every map from one structure to another.
    Maps {
        /// Print only the number of maps.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Classes of the coend of the hom profunctor, i.e. endomorphisms up to
    /// `g∘f ~ f∘g`.
    Trace(OneInput),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StandardName {
    Terminal,
    Empty,
    Arrow,
    IntervalXy,
    Idempotent,
    Z2,
    ParallelPair,
    ComposablePair,
    SplitIdempotent,
    Com,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FactorStyle {
    Image,
    Cofibration,
}

#[derive(Args, Debug)]
pub struct PushoutArgs {
    /// The map `f : A -> C`.
    #[arg(long)]
    pub f: Option<String>,
    /// `i : A -> B`, or `i : M_1 -> B` with `--multicat`.
    #[arg(long)]
    pub i: String,
    /// Push out a multicat along E.
    #[arg(long, conflicts_with = "f")]
    pub multicat: Option<String>,
    /// Use the bounded presentation oracle instead of the formula.
    #[arg(long)]
    pub oracle: bool,
    /// Check the universal property against the small standard targets.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Valid,
    FullFaithful,
    EssentiallySurjective,
    Fibration,
    Equivalence,
    TrivialFibration,
    Cofibration,
    Morita,
    IdempotentsSplit,
    Isomorphic,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub predicate: Predicate,
    /// Second structure for `isomorphic`.
    #[arg(long)]
    pub other: Option<String>,
    #[command(flatten)]
    pub input: OneInput,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long)]
    pub i: String,
    #[arg(long)]
    pub p: String,
    #[arg(long, requires = "bottom")]
    pub top: Option<String>,
    #[arg(long, requires = "top")]
    pub bottom: Option<String>,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Args, Debug)]
pub struct PremiseArgs {
    #[arg(long, default_value_t = 100)]
    pub maps: usize,
    #[arg(long, default_value_t = 30)]
    pub pushouts: usize,
}

/// Every library operation with the subcommand that reaches it.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("validate::validate_category_with", "validate"),
    ("validate::validate_multicat_with", "validate"),
    ("map::Map::problems", "validate"),
    ("standard::terminal", "construct standard"),
    ("standard::empty", "construct standard"),
    ("standard::arrow", "construct standard"),
    ("standard::interval_xy", "construct standard"),
    ("standard::idempotent_monoid", "construct standard"),
    ("standard::z2", "construct standard"),
    ("standard::parallel_pair", "construct standard"),
    ("standard::composable_pair", "construct standard"),
    ("standard::split_idempotent", "construct standard"),
    ("standard::com", "construct standard"),
    ("standard::small_categories", "pushout"),
    ("standard::small_multicats", "pushout"),
    ("constructions::embed_e", "construct e"),
    ("constructions::underlying_1", "construct underlying"),
    ("constructions::sym", "construct sym"),
    ("constructions::forget", "construct forget"),
    ("constructions::cell_multigraph", "construct cell"),
    ("constructions::interval_graph", "construct interval"),
    ("constructions::free_symmulticat", "construct free"),
    ("constructions::free_category", "construct free-category"),
    ("constructions::restrict_u", "construct restrict"),
    ("constructions::extend_u", "construct extend"),
    ("constructions::factor_through_image", "construct factor"),
    (
        "constructions::factor_cofibration_style",
        "construct factor",
    ),
    ("constructions::tensor", "construct tensor"),
    ("constructions::discrete", "construct discrete"),
    ("constructions::indiscrete", "construct indiscrete"),
    ("constructions::counit", "pushout"),
    ("constructions::embed_functor", "pushout"),
    ("search::enumerate_maps", "construct maps"),
    ("search::count_maps", "construct maps"),
    ("constructions::tensor_map", "construct tensor-maps"),
    ("constructions::underlying_functor", "check"),
    ("karoubi::unsplit_idempotent", "check"),
    ("karoubi::unreachable_objects", "check"),
    ("karoubi::is_retract", "check"),
    ("colimits::pushout_multicat_along_e", "pushout"),
    ("modelcheck::rlp_failure", "premises"),
    ("modelcheck::anchors", "premises"),
    ("modelcheck::delta_y", "gensets"),
    ("search::find_isomorphism", "check"),
    ("colimits::coend_set", "construct trace"),
    ("colimits::pushout_cat_ff", "pushout"),
    ("colimits::pushout_multicat_along_e_iter", "pushout"),
    ("colimits::bounded_pushout_oracle", "pushout"),
    ("colimits::verify_pushout", "pushout"),
    ("karoubi::kar_category", "kar"),
    ("karoubi::kar_functor", "kar"),
    ("karoubi::kar_multicat", "kar"),
    ("karoubi::kar_multifunctor", "kar"),
    ("karoubi::idempotents_split", "check"),
    ("karoubi::is_morita_equivalence", "check"),
    ("karoubi::is_morita_multi_equivalence", "check"),
    ("modelcheck::is_essentially_surjective", "check"),
    ("modelcheck::is_isofibration", "check"),
    ("modelcheck::is_equivalence", "check"),
    ("modelcheck::is_multi_equivalence", "check"),
    ("modelcheck::is_multi_fibration", "check"),
    ("modelcheck::is_trivial_fibration", "check"),
    ("modelcheck::is_cofibration", "check"),
    ("modelcheck::has_lifting", "lift"),
    ("modelcheck::squares", "lift"),
    ("modelcheck::generating_i", "gensets"),
    ("modelcheck::generating_j", "gensets"),
    ("modelcheck::check_premises", "premises"),
    ("sample::Sampler::premise_sample", "premises"),
];

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        stdin,
        out: Out::default(),
        code: EXIT_OK,
        stderr: String::new(),
    };
    let result = ctx.dispatch();
    let mut stderr = std::mem::take(&mut ctx.stderr);
    match result.and_then(|()| ctx.out.render()) {
        Ok(stdout) => Outcome {
            code: ctx.code,
            stdout,
            stderr,
        },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                code: e.code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

/// Output documents, with structures deduplicated by name.
#[derive(Default)]
struct Out {
    lines: Vec<String>,
    docs: Vec<Document>,
}

impl Out {
    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn render(&self) -> CmdResult<String> {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str("# ");
            s.push_str(l);
            s.push('\n');
        }
        if !self.docs.is_empty() {
            if !s.is_empty() {
                s.push('\n');
            }
            s.push_str(&print_all(&self.docs)?);
        }
        Ok(s)
    }

    fn taken(&self, name: &str) -> bool {
        self.docs.iter().any(|d| d.name() == name)
    }

    /// Emits `s` unless an identical structure of that name is already out;
    /// a different one of the same name gets primes appended.
    fn structure<S: Emit>(&mut self, s: &Arc<S>) -> Arc<S> {
        let mut name = s.tables().name().to_string();
        loop {
            match self.docs.iter().find(|d| d.name() == name) {
                None => break,
                Some(d) => {
                    if let Some(prev) = S::from_doc(d) {
                        if prev.tables().same_tables(s.tables()) {
                            return prev;
                        }
                    }
                    name.push('\'');
                }
            }
        }
        let s = if name == s.tables().name() {
            s.clone()
        } else {
            Arc::new(renamed(&**s, &name))
        };
        self.docs.push(S::doc(s.clone()));
        s
    }

    fn map<S: Emit>(&mut self, name: &str, f: &Map<S>) {
        let source = self.structure(&f.source);
        let target = self.structure(&f.target);
        let mut name = name.to_string();
        while self.taken(&name) {
            name.push('\'');
        }
        let f = Map::new(source, target, f.objects.clone(), f.morphisms.clone());
        self.docs.push(S::map_doc(name, f));
    }

    fn multigraph(&mut self, g: MultiGraph) {
        let mut g = g;
        while self.taken(&g.name) {
            g.name.push('\'');
        }
        self.docs.push(Document::Multigraph(Arc::new(g)));
    }
}

fn renamed<S: Structure>(s: &S, name: &str) -> S {
    let mut t = s.tables().clone();
    t.set_name(name);
    S::from_tables(t)
}

/// Structures that have document forms.
pub trait Emit: Structure + 'static {
    const KIND: &'static str;
    fn doc(s: Arc<Self>) -> Document;
    fn from_doc(d: &Document) -> Option<Arc<Self>>;
    fn map_doc(name: String, f: Map<Self>) -> Document;
    fn map_from_doc(d: &Document) -> Option<Map<Self>>;
    fn validate(s: &Self, budget: u64) -> multicat::ValidationReport;
    fn small_targets(k: usize) -> Vec<Arc<Self>>;
}

impl Emit for FiniteCategory {
    const KIND: &'static str = "category";
    fn doc(s: Arc<Self>) -> Document {
        Document::Category(s)
    }
    fn from_doc(d: &Document) -> Option<Arc<Self>> {
        match d {
            Document::Category(c) => Some(c.clone()),
            _ => None,
        }
    }
    fn map_doc(name: String, f: Map<Self>) -> Document {
        Document::Functor(name, f)
    }
    fn map_from_doc(d: &Document) -> Option<Map<Self>> {
        match d {
            Document::Functor(_, f) => Some(f.clone()),
            _ => None,
        }
    }
    fn validate(s: &Self, budget: u64) -> multicat::ValidationReport {
        validate_category_with(s, budget)
    }
    fn small_targets(_: usize) -> Vec<Arc<Self>> {
        standard::small_categories()
            .into_iter()
            .map(Arc::new)
            .collect()
    }
}

impl Emit for Multicat {
    const KIND: &'static str = "multicat";
    fn doc(s: Arc<Self>) -> Document {
        Document::Multicat(s)
    }
    fn from_doc(d: &Document) -> Option<Arc<Self>> {
        match d {
            Document::Multicat(m) => Some(m.clone()),
            _ => None,
        }
    }
    fn map_doc(name: String, f: Map<Self>) -> Document {
        Document::Multifunctor(name, f)
    }
    fn map_from_doc(d: &Document) -> Option<Map<Self>> {
        match d {
            Document::Multifunctor(_, f) => Some(f.clone()),
            _ => None,
        }
    }
    fn validate(s: &Self, budget: u64) -> multicat::ValidationReport {
        validate_multicat_with(s, budget)
    }
    fn small_targets(k: usize) -> Vec<Arc<Self>> {
        standard::small_multicats(k)
            .into_iter()
            .map(Arc::new)
            .collect()
    }
}

enum AnyStruct {
    Cat(Arc<FiniteCategory>),
    Multi(Arc<Multicat>),
}

enum AnyMap {
    Cat(Functor),
    Multi(MultiFunctor),
}

macro_rules! on_any {
    ($x:expr, $v:ident => $body:expr) => {
        match $x {
            AnyStruct::Cat($v) => $body,
            AnyStruct::Multi($v) => $body,
        }
    };
}

macro_rules! on_any_map {
    ($x:expr, $v:ident => $body:expr) => {
        match $x {
            AnyMap::Cat($v) => $body,
            AnyMap::Multi($v) => $body,
        }
    };
}

fn find<'b>(bundle: &'b Bundle, name: &str) -> CmdResult<&'b Document> {
    bundle
        .get(name)
        .ok_or_else(|| usage(format!("no document named `{name}`")))
}

/// The named document, or the last one `f` accepts.
fn pick<'b, T>(
    bundle: &'b Bundle,
    name: Option<&str>,
    what: &str,
    f: impl Fn(&'b Document) -> Option<T>,
) -> CmdResult<T> {
    match name {
        Some(n) => f(find(bundle, n)?).ok_or_else(|| usage(format!("`{n}` is not a {what}"))),
        None => bundle
            .documents
            .iter()
            .rev()
            .find_map(&f)
            .ok_or_else(|| usage(format!("the input has no {what}"))),
    }
}

fn any_struct(d: &Document) -> Option<AnyStruct> {
    match d {
        Document::Category(c) => Some(AnyStruct::Cat(c.clone())),
        Document::Multicat(m) => Some(AnyStruct::Multi(m.clone())),
        _ => None,
    }
}

fn any_map(d: &Document) -> Option<AnyMap> {
    match d {
        Document::Functor(_, f) => Some(AnyMap::Cat(f.clone())),
        Document::Multifunctor(_, f) => Some(AnyMap::Multi(f.clone())),
        _ => None,
    }
}

fn multigraph(d: &Document) -> Option<Arc<MultiGraph>> {
    match d {
        Document::Multigraph(g) => Some(g.clone()),
        _ => None,
    }
}

fn map_name(bundle: &Bundle, f: &AnyMap) -> String {
    let found = bundle.documents.iter().find(|d| match (d, f) {
        (Document::Functor(_, g), AnyMap::Cat(f)) => g == f,
        (Document::Multifunctor(_, g), AnyMap::Multi(f)) => g == f,
        _ => false,
    });
    found.map_or_else(|| "f".to_string(), |d| d.name().to_string())
}

struct Ctx<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    out: Out,
    code: i32,
    stderr: String,
}

impl Ctx<'_> {
    fn load(&mut self, inputs: &Inputs) -> CmdResult<Bundle> {
        let mut bundle = Bundle::new();
        let files: Vec<String> = if inputs.files.is_empty() {
            vec!["-".into()]
        } else {
            inputs.files.clone()
        };
        let mut stdin_used = false;
        for f in files {
            let text = if f == "-" {
                if stdin_used {
                    return Err(usage("standard input named twice"));
                }
                stdin_used = true;
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| usage(format!("reading standard input: {e}")))?;
                s
            } else {
                std::fs::read_to_string(&f).map_err(|e| usage(format!("{f}: {e}")))?
            };
            bundle.add_text(if f == "-" { "<stdin>" } else { &f }, &text)?;
        }
        Ok(bundle)
    }

    fn k_or(&self, default: usize) -> CmdResult<usize> {
        let k = self.cli.k.unwrap_or(default);
        if k == 0 {
            return Err(usage("--K must be at least 1"));
        }
        Ok(k)
    }

    fn fail(&mut self, code: i32) {
        self.code = self.code.max(code);
    }

    fn inexact(&mut self, what: &str) {
        self.stderr
            .push_str(&format!("warning: {what} is flagged inexact\n"));
        self.out.note(format!("{what}: inexact"));
        if !self.cli.allow_inexact {
            self.fail(EXIT_BUDGET);
        }
    }

    fn dispatch(&mut self) -> CmdResult<()> {
        match &self.cli.command {
            Command::Validate(inputs) => self.validate(inputs),
            Command::Construct { op } => self.construct(op),
            Command::Pushout(args) => self.pushout(args),
            Command::Kar(input) => self.kar(input),
            Command::Check(args) => self.check(args),
            Command::Lift(args) => self.lift(args),
            Command::Gensets => self.gensets(),
            Command::Premises(args) => self.premises(args),
        }
    }

    fn validate(&mut self, inputs: &Inputs) -> CmdResult<()> {
        let bundle = self.load(inputs)?;
        let budget = self.cli.budget;
        for d in &bundle.documents {
            let (ok, complete, text) = match d {
                Document::Category(c) => report(FiniteCategory::validate(c, budget)),
                Document::Multicat(m) => report(Multicat::validate(m, budget)),
                Document::Multigraph(_) => (true, true, "ok".to_string()),
                Document::Functor(_, f) => problems(f.problems()),
                Document::Multifunctor(_, f) => problems(f.problems()),
            };
            self.out.note(format!(
                "{} {}: {}",
                d.kind(),
                d.name(),
                text.trim_end().replace('\n', "\n# ")
            ));
            if !complete {
                self.fail(EXIT_BUDGET);
            } else if !ok {
                self.fail(EXIT_DOMAIN);
            }
        }
        Ok(())
    }

    fn construct(&mut self, op: &Construct) -> CmdResult<()> {
        match op {
            Construct::Standard { name } => {
                let c = match name {
                    StandardName::Com => {
                        let m = Arc::new(standard::com(self.k_or(2)?));
                        self.out.structure(&m);
                        return Ok(());
                    }
                    StandardName::Terminal => standard::terminal(),
                    StandardName::Empty => standard::empty(),
                    StandardName::Arrow => standard::arrow(),
                    StandardName::IntervalXy => standard::interval_xy(),
                    StandardName::Idempotent => standard::idempotent_monoid(),
                    StandardName::Z2 => standard::z2(),
                    StandardName::ParallelPair => standard::parallel_pair(),
                    StandardName::ComposablePair => standard::composable_pair(),
                    StandardName::SplitIdempotent => standard::split_idempotent(),
                };
                self.out.structure(&Arc::new(c));
            }
            Construct::E(input) => {
                let bundle = self.load(&input.inputs)?;
                let c = pick(
                    &bundle,
                    input.doc.as_deref(),
                    "category",
                    FiniteCategory::from_doc,
                )?;
                let k = self.k_or(2)?;
                let mut e = embed_e(&c, k);
                e.tables_mut().set_name(format!("E{}", c.name()));
                self.out.structure(&Arc::new(e));
            }
            Construct::Underlying(input) => {
                let bundle = self.load(&input.inputs)?;
                let m = pick(
                    &bundle,
                    input.doc.as_deref(),
                    "multicat",
                    Multicat::from_doc,
                )?;
                let mut c = underlying_1(&m);
                c.tables_mut().set_name(format!("{}_1", m.name()));
                self.out.structure(&Arc::new(c));
            }
            Construct::Sym(input) => {
                let bundle = self.load(&input.inputs)?;
                let g = pick(&bundle, input.doc.as_deref(), "multigraph", multigraph)?;
                if g.symmetric {
                    return Err(usage("sym expects a nonsymmetric multigraph"));
                }
                self.out.multigraph(sym(&g));
            }
            Construct::Forget { symmetric, input } => {
                let bundle = self.load(&input.inputs)?;
                let m = pick(
                    &bundle,
                    input.doc.as_deref(),
                    "multicat",
                    Multicat::from_doc,
                )?;
                let mut g = forget(&m, *symmetric);
                g.name = format!("U{}", m.name());
                self.out.multigraph(g);
            }
            Construct::Cell { arity, arrows } => {
                let names: Vec<&str> = arrows.iter().map(String::as_str).collect();
                self.out.multigraph(cell_multigraph(*arity, &names));
            }
            Construct::Interval { arrows } => {
                let names: Vec<&str> = arrows.iter().map(String::as_str).collect();
                self.out
                    .multigraph(graph_multigraph(&interval_graph(&names), "interval"));
            }
            Construct::Free { depth, input } => {
                let bundle = self.load(&input.inputs)?;
                let g = pick(&bundle, input.doc.as_deref(), "multigraph", multigraph)?;
                if !g.symmetric {
                    return Err(usage(
                        "free expects a symmetric multigraph; apply `construct sym` first",
                    ));
                }
                let k = self.k_or(g.bound.max(1))?;
                let free = free_symmulticat(&g, k, *depth)?;
                if !free.exact {
                    self.inexact("free multicat");
                }
                self.out.structure(&Arc::new(free.result));
            }
            Construct::FreeCategory { length, input } => {
                let bundle = self.load(&input.inputs)?;
                let g = pick(&bundle, input.doc.as_deref(), "multigraph", multigraph)?;
                let graph = unary_graph(&g)?;
                let mut free = free_category(&graph, *length);
                if !free.exact {
                    self.inexact("free category");
                }
                free.result.tables_mut().set_name(format!("F{}", g.name));
                self.out.structure(&Arc::new(free.result));
            }
            Construct::Restrict { objects, input } => {
                let bundle = self.load(&input.inputs)?;
                let b = pick(
                    &bundle,
                    input.doc.as_deref(),
                    "category or multicat",
                    any_struct,
                )?;
                on_any!(b, b => self.restrict(&b, objects))?;
            }
            Construct::Extend { map, inputs } => {
                let bundle = self.load(inputs)?;
                let f = pick(&bundle, map.as_deref(), "functor or multifunctor", any_map)?;
                on_any_map!(f, f => self.extend(&f))?;
            }
            Construct::Factor { map, style, inputs } => {
                let bundle = self.load(inputs)?;
                let f = pick(&bundle, map.as_deref(), "functor or multifunctor", any_map)?;
                let name = map_name(&bundle, &f);
                on_any_map!(f, f => self.factor(&f, &name, *style))?;
            }
            Construct::Tensor {
                left,
                right,
                inputs,
            } => {
                let bundle = self.load(inputs)?;
                let multicats: Vec<Arc<Multicat>> = bundle
                    .documents
                    .iter()
                    .filter_map(Multicat::from_doc)
                    .collect();
                let (m, n) = match (left, right) {
                    (Some(l), Some(r)) => (
                        pick(&bundle, Some(l), "multicat", Multicat::from_doc)?,
                        pick(&bundle, Some(r), "multicat", Multicat::from_doc)?,
                    ),
                    (None, None) if multicats.len() >= 2 => {
                        (multicats[0].clone(), multicats[1].clone())
                    }
                    _ => return Err(usage("tensor needs two multicats (--left and --right)")),
                };
                self.out.structure(&Arc::new(tensor(&m, &n)));
            }
            Construct::Discrete { objects } => {
                let names: Vec<&str> = objects.iter().map(String::as_str).collect();
                self.out.structure(&Arc::new(discrete(&names)));
            }
            Construct::Indiscrete { objects } => {
                let names: Vec<&str> = objects.iter().map(String::as_str).collect();
                self.out.structure(&Arc::new(indiscrete(&names)));
            }
            Construct::TensorMaps {
                left,
                right,
                inputs,
            } => {
                let bundle = self.load(inputs)?;
                let f = pick(&bundle, Some(left), "multifunctor", Multicat::map_from_doc)?;
                let g = pick(&bundle, Some(right), "multifunctor", Multicat::map_from_doc)?;
                self.out
                    .map(&format!("{left}x{right}"), &tensor_map(&f, &g));
            }
            Construct::Maps {
                count,
                source,
                target,
                inputs,
            } => {
                let bundle = self.load(inputs)?;
                let s = pick(&bundle, Some(source), "category or multicat", any_struct)?;
                let t = pick(&bundle, Some(target), "category or multicat", any_struct)?;
                match (s, t) {
                    (AnyStruct::Cat(s), AnyStruct::Cat(t)) => self.maps(&s, &t, *count)?,
                    (AnyStruct::Multi(s), AnyStruct::Multi(t)) => self.maps(&s, &t, *count)?,
                    _ => return Err(usage("source and target must be of the same kind")),
                }
            }
            Construct::Trace(input) => {
                let bundle = self.load(&input.inputs)?;
                let c = pick(
                    &bundle,
                    input.doc.as_deref(),
                    "category",
                    FiniteCategory::from_doc,
                )?;
                let coend = coend_set(&c, &Hom(&c));
                self.out.note(format!("{} classes", coend.len()));
                for class in &coend.classes {
                    let members: Vec<&str> =
                        class.iter().map(|&(_, m)| c.morphism_name(m)).collect();
                    self.out.note(format!("[{}]", members.join(" ")));
                }
            }
        }
        Ok(())
    }

    fn restrict<S: Emit>(&mut self, b: &Arc<S>, objects: &[String]) -> CmdResult<()> {
        let t = b.tables();
        let mut images = Vec::new();
        let mut domain: Vec<String> = Vec::new();
        for o in objects {
            let i = t
                .object_index(o)
                .ok_or_else(|| usage(format!("`{}` has no object `{o}`", t.name())))?;
            images.push(i);
            let mut name = o.clone();
            while domain.contains(&name) {
                name.push('\'');
            }
            domain.push(name);
        }
        let r = restrict_u(&ObjectMap::new(domain, images.clone()), t);
        let source = Arc::new(S::from_tables(r.tables));
        self.out
            .map("incl", &Map::new(source, b.clone(), images, r.morphisms));
        Ok(())
    }

    fn extend<S: Emit>(&mut self, f: &Map<S>) -> CmdResult<()> {
        let ext = extend_u(&f.objects, f.tgt().objects(), f.src())?;
        let target = Arc::new(S::from_tables(ext.tables));
        self.out.map(
            "unit",
            &Map::new(f.source.clone(), target, ext.objects, ext.morphisms),
        );
        Ok(())
    }

    fn factor<S: Emit>(&mut self, f: &Map<S>, name: &str, style: FactorStyle) -> CmdResult<()> {
        let (first, second) = match style {
            FactorStyle::Image => factor_through_image(f),
            FactorStyle::Cofibration => factor_cofibration_style(f)?,
        };
        self.out.map(&format!("{name}_1"), &first);
        self.out.map(&format!("{name}_2"), &second);
        Ok(())
    }

    fn maps<S: Emit>(&mut self, s: &Arc<S>, t: &Arc<S>, count: bool) -> CmdResult<()> {
        if count {
            let n = count_maps(s, t, self.cli.budget)?;
            self.out.note(format!("{n} maps"));
            return Ok(());
        }
        let maps = enumerate_maps(s, t, self.cli.budget)?;
        self.out.note(format!("{} maps", maps.len()));
        self.out.structure(s);
        self.out.structure(t);
        for (n, f) in maps.iter().enumerate() {
            self.out.map(&format!("f{}", n + 1), f);
        }
        Ok(())
    }

    fn pushout(&mut self, args: &PushoutArgs) -> CmdResult<()> {
        let bundle = self.load(&args.inputs)?;
        let limits = OracleLimits::default();
        if let Some(m) = &args.multicat {
            let m = pick(&bundle, Some(m), "multicat", Multicat::from_doc)?;
            let i = pick(
                &bundle,
                Some(&args.i),
                "functor",
                FiniteCategory::map_from_doc,
            )?;
            let span = Span {
                f: counit(&m),
                i: embed_functor(&i, m.bound()),
            };
            let r = if args.oracle {
                bounded_pushout_oracle(&span.f, &span.i, limits)?
            } else if i.target.object_count() == i.source.object_count() + 1 {
                pushout_multicat_along_e(&m, &i)?
            } else {
                pushout_multicat_along_e_iter(&m, &i)?
            };
            return self.pushout_out(&span, &r, args.verify, m.bound());
        }
        let f_name = args
            .f
            .as_deref()
            .ok_or_else(|| usage("pushout needs --f, or --multicat"))?;
        let f = pick(&bundle, Some(f_name), "functor or multifunctor", any_map)?;
        let i = pick(&bundle, Some(&args.i), "functor or multifunctor", any_map)?;
        match (f, i) {
            (AnyMap::Cat(f), AnyMap::Cat(i)) => {
                let r = if args.oracle {
                    bounded_pushout_oracle(&f, &i, limits)?
                } else {
                    pushout_cat_ff(&f, &i, limits)?
                };
                self.pushout_out(&Span { f, i }, &r, args.verify, 1)
            }
            (AnyMap::Multi(f), AnyMap::Multi(i)) => {
                if !args.oracle {
                    return Err(usage("formula pushouts of multicats go along E: use --multicat M --i I, or --oracle"));
                }
                let r = bounded_pushout_oracle(&f, &i, limits)?;
                let k = f.target.bound();
                self.pushout_out(&Span { f, i }, &r, args.verify, k)
            }
            _ => Err(usage("--f and --i must be maps of the same kind")),
        }
    }

    fn pushout_out<S: Emit>(
        &mut self,
        span: &Span<S>,
        r: &PushoutResult<S>,
        verify: bool,
        k: usize,
    ) -> CmdResult<()> {
        self.out.note(format!(
            "pushout by {}, {}",
            r.provenance,
            if r.exact { "exact" } else { "inexact" }
        ));
        if !r.exact {
            self.inexact("pushout");
        }
        if verify {
            let check = verify_pushout(span, r, &S::small_targets(k), self.cli.budget)?;
            for line in check.to_string().lines() {
                self.out.note(format!("verify: {line}"));
            }
            if !check.ok() {
                self.fail(EXIT_DOMAIN);
            }
        }
        self.out.structure(&r.object);
        self.out.map("leg_b", &r.leg_b);
        self.out.map("leg_c", &r.leg_c);
        Ok(())
    }

    fn kar(&mut self, input: &OneInput) -> CmdResult<()> {
        let bundle = self.load(&input.inputs)?;
        let doc = match input.doc.as_deref() {
            Some(n) => find(&bundle, n)?,
            None => bundle
                .documents
                .last()
                .ok_or_else(|| usage("the input is empty"))?,
        };
        match doc {
            Document::Category(c) => {
                let k = kar_category(c);
                self.out.map(&format!("alpha_{}", c.name()), &k.alpha);
            }
            Document::Multicat(m) => {
                let k = kar_multicat(m)?;
                let mut km = (*k.multicat).clone();
                km.tables_mut().set_name(format!("{}^Kar", m.name()));
                let km = Arc::new(km);
                let alpha = Map::new(
                    k.alpha.source.clone(),
                    km,
                    k.alpha.objects.clone(),
                    k.alpha.morphisms.clone(),
                );
                self.out.map(&format!("alpha_{}", m.name()), &alpha);
            }
            Document::Functor(name, f) => {
                let (s, t) = (kar_category(&f.source), kar_category(&f.target));
                self.out
                    .map(&format!("{name}^Kar"), &kar_functor(f, &s, &t));
            }
            Document::Multifunctor(name, f) => {
                let (s, t) = (kar_multicat(&f.source)?, kar_multicat(&f.target)?);
                let fk = kar_multifunctor(f, &s, &t)?;
                let rename = |m: &Arc<Multicat>, base: &Multicat| {
                    let mut x = (**m).clone();
                    x.tables_mut().set_name(format!("{}^Kar", base.name()));
                    Arc::new(x)
                };
                let fk = Map::new(
                    rename(&fk.source, &f.source),
                    rename(&fk.target, &f.target),
                    fk.objects,
                    fk.morphisms,
                );
                self.out.map(&format!("{name}^Kar"), &fk);
            }
            Document::Multigraph(g) => return Err(usage(format!("`{}` is a multigraph", g.name))),
        }
        Ok(())
    }

    fn check(&mut self, args: &CheckArgs) -> CmdResult<()> {
        let bundle = self.load(&args.input.inputs)?;
        let name = args.input.doc.as_deref();
        let budget = self.cli.budget;
        let (value, detail): (bool, String) = match args.predicate {
            Predicate::Valid => {
                let d = pick(&bundle, name, "document", |d: &Document| Some(d.clone()))?;
                let (ok, complete, text) = match &d {
                    Document::Category(c) => report(FiniteCategory::validate(c, budget)),
                    Document::Multicat(m) => report(Multicat::validate(m, budget)),
                    Document::Multigraph(_) => (true, true, "ok".into()),
                    Document::Functor(_, f) => problems(f.problems()),
                    Document::Multifunctor(_, f) => problems(f.problems()),
                };
                if !complete {
                    return Err(CmdError::Budget(text));
                }
                (ok, text)
            }
            Predicate::IdempotentsSplit => {
                let c = pick(&bundle, name, "category", FiniteCategory::from_doc)?;
                match unsplit_idempotent(&c) {
                    None => (idempotents_split(&c), String::new()),
                    Some((x, e)) => (
                        false,
                        format!(
                            "{} at {} does not split",
                            c.morphism_name(e),
                            c.object_name(x)
                        ),
                    ),
                }
            }
            Predicate::Isomorphic => {
                let a = pick(&bundle, name, "category or multicat", any_struct)?;
                let other = args
                    .other
                    .as_deref()
                    .ok_or_else(|| usage("isomorphic needs --other"))?;
                let b = pick(&bundle, Some(other), "category or multicat", any_struct)?;
                match (a, b) {
                    (AnyStruct::Cat(a), AnyStruct::Cat(b)) => {
                        (find_isomorphism(&a, &b, budget)?.is_some(), String::new())
                    }
                    (AnyStruct::Multi(a), AnyStruct::Multi(b)) => {
                        (find_isomorphism(&a, &b, budget)?.is_some(), String::new())
                    }
                    _ => (false, "different kinds".into()),
                }
            }
            p => {
                let f = pick(&bundle, name, "functor or multifunctor", any_map)?;
                let v = match (p, &f) {
                    (Predicate::FullFaithful, AnyMap::Cat(f)) => f.is_full_faithful(),
                    (Predicate::FullFaithful, AnyMap::Multi(f)) => f.is_full_faithful(),
                    (Predicate::EssentiallySurjective, AnyMap::Cat(f)) => {
                        is_essentially_surjective(f)
                    }
                    (Predicate::EssentiallySurjective, AnyMap::Multi(f)) => {
                        is_essentially_surjective(&underlying_functor(f))
                    }
                    (Predicate::Fibration, AnyMap::Cat(f)) => is_isofibration(f),
                    (Predicate::Fibration, AnyMap::Multi(f)) => is_multi_fibration(f),
                    (Predicate::Equivalence, AnyMap::Cat(f)) => is_equivalence(f),
                    (Predicate::Equivalence, AnyMap::Multi(f)) => is_multi_equivalence(f),
                    (Predicate::TrivialFibration, AnyMap::Cat(f)) => is_trivial_fibration(f),
                    (Predicate::TrivialFibration, AnyMap::Multi(f)) => is_trivial_fibration(f),
                    (Predicate::Cofibration, AnyMap::Cat(f)) => is_cofibration(f),
                    (Predicate::Cofibration, AnyMap::Multi(f)) => is_cofibration(f),
                    (Predicate::Morita, AnyMap::Cat(f)) => is_morita_equivalence(f),
                    (Predicate::Morita, AnyMap::Multi(f)) => is_morita_multi_equivalence(f),
                    _ => unreachable!("structure predicates handled above"),
                };
                let detail = match (p, &f) {
                    (Predicate::Morita, AnyMap::Cat(f)) => unreachable_note(f),
                    (Predicate::Morita, AnyMap::Multi(f)) => {
                        unreachable_note(&underlying_functor(f))
                    }
                    _ => String::new(),
                };
                (v, detail)
            }
        };
        let label = args
            .predicate
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        self.out.note(format!("{label}: {value}"));
        for line in detail.lines().filter(|l| !l.is_empty()) {
            self.out.note(line.to_string());
        }
        if !value {
            self.fail(EXIT_DOMAIN);
        }
        Ok(())
    }

    fn lift(&mut self, args: &LiftArgs) -> CmdResult<()> {
        let bundle = self.load(&args.inputs)?;
        let get = |n: &str| pick(&bundle, Some(n), "functor or multifunctor", any_map);
        let (i, p) = (get(&args.i)?, get(&args.p)?);
        let square = match (&args.top, &args.bottom) {
            (Some(t), Some(b)) => Some((get(t)?, get(b)?)),
            _ => None,
        };
        match (i, p, square) {
            (AnyMap::Cat(i), AnyMap::Cat(p), None) => self.lift_all(&i, &p),
            (AnyMap::Multi(i), AnyMap::Multi(p), None) => self.lift_all(&i, &p),
            (AnyMap::Cat(i), AnyMap::Cat(p), Some((AnyMap::Cat(top), AnyMap::Cat(bottom)))) => {
                self.lift_one(LiftingProblem { i, p, top, bottom })
            }
            (
                AnyMap::Multi(i),
                AnyMap::Multi(p),
                Some((AnyMap::Multi(top), AnyMap::Multi(bottom))),
            ) => self.lift_one(LiftingProblem { i, p, top, bottom }),
            _ => Err(usage(
                "all maps of a lifting problem must be of the same kind",
            )),
        }
    }

    fn lift_one<S: Emit>(&mut self, prob: LiftingProblem<S>) -> CmdResult<()> {
        if !prob.commutes() {
            return Err(CmdError::Domain("the square does not commute".into()));
        }
        let lifts = has_lifting(&prob, self.cli.budget)?;
        self.out.note(format!("{} lifts", lifts.len()));
        match lifts.first() {
            Some(l) => self.out.map("lift", l),
            None => self.fail(EXIT_DOMAIN),
        }
        Ok(())
    }

    fn lift_all<S: Emit>(&mut self, i: &Map<S>, p: &Map<S>) -> CmdResult<()> {
        let sq = squares(i, p, self.cli.budget)?;
        let mut failures = 0;
        for (n, s) in sq.iter().enumerate() {
            if has_lifting(s, self.cli.budget)?.is_empty() {
                failures += 1;
                self.out.note(format!("square {} has no lift", n + 1));
            }
        }
        self.out
            .note(format!("{} squares, {} without a lift", sq.len(), failures));
        if failures > 0 {
            self.fail(EXIT_DOMAIN);
        }
        Ok(())
    }

    fn gensets(&mut self) -> CmdResult<()> {
        let k = self.k_or(2)?;
        for set in [generating_i(k), generating_j(k)] {
            self.genset(&set);
        }
        Ok(())
    }

    fn genset(&mut self, set: &GeneratingSet) {
        for (n, (f, what)) in set.maps.iter().zip(&set.names).enumerate() {
            let tag = format!("{}{}", set.label, n + 1);
            self.out.note(format!("{tag}: {what}"));
            let f = Map::new(
                Arc::new(renamed(&*f.source, &format!("{tag}_src"))),
                Arc::new(renamed(&*f.target, &format!("{tag}_tgt"))),
                f.objects.clone(),
                f.morphisms.clone(),
            );
            self.out.map(&tag, &f);
        }
    }

    fn premises(&mut self, args: &PremiseArgs) -> CmdResult<()> {
        let k = self.k_or(2)?;
        let mut sampler = Sampler::new(self.cli.seed);
        let (sample, anchors) = sampler.premise_sample(k, args.maps, args.pushouts);
        let report = check_premises(
            &sample,
            &anchors,
            &generating_i(k),
            &generating_j(k),
            self.cli.budget,
            OracleLimits::default(),
        );
        self.out.note(format!(
            "seed {}, {} maps, {} pushouts",
            self.cli.seed,
            sample.len(),
            anchors.len()
        ));
        for line in report.to_string().lines() {
            self.out.note(line.to_string());
        }
        if !report.ok() {
            self.fail(EXIT_DOMAIN);
        } else if !report.skipped.is_empty() {
            self.fail(EXIT_BUDGET);
        }
        Ok(())
    }
}

fn unreachable_note(f: &Functor) -> String {
    let missed: Vec<&str> = unreachable_objects(f)
        .into_iter()
        .map(|o| f.target.object_name(o))
        .collect();
    if missed.is_empty() {
        String::new()
    } else {
        format!("not retracts of the image: {}", missed.join(" "))
    }
}

fn report(r: multicat::ValidationReport) -> (bool, bool, String) {
    (
        r.ok(),
        r.complete || !r.violations.is_empty(),
        r.to_string(),
    )
}

fn problems(p: Vec<String>) -> (bool, bool, String) {
    if p.is_empty() {
        (true, true, "ok".into())
    } else {
        (false, true, p.join("\n"))
    }
}

fn graph_multigraph(g: &Graph, name: &str) -> MultiGraph {
    let mut out = MultiGraph::new(name, 1, g.objects.clone());
    for (n, a, b) in &g.edges {
        out.morphisms.push(multicat::MorphismDecl {
            name: n.clone(),
            sig: multicat::Signature::new(vec![*a], *b),
        });
    }
    out.canonicalize();
    out
}

fn unary_graph(g: &MultiGraph) -> CmdResult<Graph> {
    let mut edges = Vec::new();
    for d in &g.morphisms {
        if d.sig.arity() != 1 {
            return Err(usage(format!("`{}` is not unary", d.name)));
        }
        edges.push((d.name.clone(), d.sig.inputs[0], d.sig.output));
    }
    Ok(Graph {
        objects: g.objects.clone(),
        edges,
    })
}

/// The hom profunctor `C(x, y)` of a category.
struct Hom<'c>(&'c FiniteCategory);

impl Profunctor for Hom<'_> {
    type Elem = Mor;

    fn elements(&self, x: Obj, y: Obj) -> Vec<Mor> {
        self.0.homs(x, y).to_vec()
    }

    fn left(&self, h: Mor, w: &Mor) -> Mor {
        self.0.compose(*w, h)
    }

    fn right(&self, h: Mor, w: &Mor) -> Mor {
        self.0.compose(h, *w)
    }
}
