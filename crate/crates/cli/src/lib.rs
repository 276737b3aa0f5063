//! The `tagkit` command line: corpus splitting, training, tagging,
//! evaluation, lexicon merging, tagger combination, and a full `repro` run.

pub mod config;
pub mod repro;

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use tagkit::combine::{run_tbl_then_tree, run_tree_then_tbl, ExportPolicy};
use tagkit::corpus::{
    read_forms, remap_cardnum, split_sentencewise, write_vertical, Corpus, Tagset,
};
use tagkit::dtree::{self, DTreeModel};
use tagkit::eval::{error_types, evaluate, render_csv, render_error_types, render_table};
use tagkit::lexicon::{Lexicon, TagPriors};
use tagkit::morph::{analyses_by_form, analyzer_from_spec};
use tagkit::tbl::{self, TblModel};
use tagkit::{tag_all, Tagger};

use config::{Settings, DEFAULT_DENOMINATOR};
use repro::{analyze_unknown, run_repro, ReproOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

/// A data error prefixed with `path` unless the message already names it.
pub(crate) fn data_err(path: &str, e: impl Display) -> CliError {
    let msg = e.to_string();
    if msg.starts_with(path) {
        CliError::Data(msg)
    } else {
        CliError::Data(format!("{path}: {msg}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tagkit",
    version,
    about = "German part-of-speech tagging: rule tagger, decision-tree tagger, evaluation, combination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a tagged corpus sentence-wise into training and test parts.
    Split(SplitArgs),
    /// Train the decision-tree trigram tagger.
    TrainDtree(TrainDtreeArgs),
    /// Train the transformation-based rule tagger.
    TrainTbl(TrainTblArgs),
    /// Tag a corpus with a trained model.
    Tag(TagArgs),
    /// Evaluate a tagged corpus against gold, stratified by ambiguity level.
    Eval(EvalArgs),
    /// List (correct tag, tagger tag) error types by frequency.
    ErrorTypes(ErrorTypesArgs),
    /// Add morphological-analyzer entries for unknown forms to a lexicon.
    MergeLex(MergeLexArgs),
    /// Run one tagger, export its tags for unknown forms, run the other.
    Combine(CombineArgs),
    /// Split, train both taggers, evaluate, merge, and combine in one run.
    Repro(ReproArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Flat key=value file of parameters; flags override it
    #[arg(long)]
    config: Option<String>,
    /// Parameter override as name=value (repeatable); flags override it
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Tag inventory file, one tag per line [default: bundled STTS with CARDNUM]
    #[arg(long)]
    tagset: Option<PathBuf>,
    /// Reject corpora and analyses using tags outside the tagset [default: off]
    #[arg(long)]
    validate_tagset: bool,
}

#[derive(Args, Debug, Default)]
struct Jobs {
    /// Tagging threads; 0 uses all cores. Output does not depend on it [default: 1]
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct DtreeFlags {
    /// Number of preceding tags in a context [default: 2]
    #[arg(long)]
    context_length: Option<usize>,
    /// Minimal weighted gain for a context-tree test [default: 0.7]
    #[arg(long)]
    min_gain: Option<f64>,
    /// Weight of the ambiguity-class distribution in lexical probabilities [default: 0.15]
    #[arg(long)]
    eq_class_weight: Option<f64>,
    /// Minimal weighted gain for an affix-tree node [default: 1.2]
    #[arg(long)]
    affix_gain: Option<f64>,
    /// Longest suffix in the affix tree [default: 5]
    #[arg(long)]
    max_suffix: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct TblFlags {
    /// Minimal score of a lexical rule [default: 2]
    #[arg(long)]
    lexical_threshold: Option<i64>,
    /// Minimal score of a contextual rule [default: 1]
    #[arg(long)]
    contextual_threshold: Option<i64>,
    /// Word templates only use this many most frequent words [default: 500]
    #[arg(long)]
    bigram_restriction: Option<usize>,
}

#[derive(Args, Debug)]
struct SplitArgs {
    /// Tagged corpus in vertical format
    #[arg(long = "in")]
    input: PathBuf,
    /// Every n-th sentence goes to the test part [default: 8]
    #[arg(long)]
    denominator: Option<usize>,
    /// Output training corpus
    #[arg(long)]
    train: PathBuf,
    /// Output test corpus
    #[arg(long)]
    test: PathBuf,
    /// Retag digit-sequence CARD tokens as CARDNUM before splitting [default: off]
    #[arg(long)]
    remap_cardnum: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TrainDtreeArgs {
    /// Tagged training corpus
    #[arg(long)]
    train: PathBuf,
    /// Lexicon to train with [default: built from the training corpus]
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Output model file
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    dtree: DtreeFlags,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TrainTblArgs {
    /// Tagged training corpus
    #[arg(long)]
    train: PathBuf,
    /// Output model directory
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    tbl: TblFlags,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TagArgs {
    /// Model: a decision-tree model file or a rule-tagger directory
    #[arg(long)]
    model: PathBuf,
    /// Input: one form per line, blank line between sentences (a tag column is ignored)
    #[arg(long = "in")]
    input: PathBuf,
    /// Output tagged corpus [default: standard output]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replacement lexicon for a rule-tagger model, used without retraining
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[command(flatten)]
    jobs: Jobs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Gold-standard corpus
    #[arg(long)]
    gold: PathBuf,
    /// Tagger output, aligned with the gold corpus
    #[arg(long)]
    pred: PathBuf,
    /// Lexicon the tagger used, for ambiguity levels
    #[arg(long)]
    lexicon: PathBuf,
    /// Also write the rows as CSV to this file
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ErrorTypesArgs {
    /// Gold-standard corpus
    #[arg(long)]
    gold: PathBuf,
    /// Tagger output, aligned with the gold corpus
    #[arg(long)]
    pred: PathBuf,
    /// Print only the most frequent n types [default: all]
    #[arg(long)]
    top: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct MergeLexArgs {
    /// Lexicon to extend
    #[arg(long)]
    lexicon: PathBuf,
    /// Forms to analyze (one per line or a vertical corpus); only unknown ones are sent
    #[arg(long)]
    forms: PathBuf,
    /// Tagged corpus for tag priors ordering the new entries [default: the lexicon's counts]
    #[arg(long)]
    priors_corpus: Option<PathBuf>,
    /// Analyzer: `stub` or `file:<request>,<response>[,<mapping>|bundled]` [default: stub]
    #[arg(long)]
    analyzer: Option<String>,
    /// Output lexicon
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CombineArgs {
    /// tree-tbl or tbl-tree [default: tree-tbl]
    #[arg(long)]
    order: Option<String>,
    /// Export policy for tree-tbl: all, filtered-no-ne or filtered [default: filtered]
    #[arg(long)]
    policy: Option<String>,
    /// Analyzer for the filtered policies: `stub` or `file:...` [default: stub]
    #[arg(long)]
    analyzer: Option<String>,
    /// Decision-tree model (tree-tbl)
    #[arg(long)]
    dtree: Option<PathBuf>,
    /// Rule-tagger model directory
    #[arg(long)]
    tbl: PathBuf,
    /// Training corpus (tbl-tree)
    #[arg(long)]
    train: Option<PathBuf>,
    /// Lexicon for retraining (tbl-tree) [default: built from the training corpus]
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Test input, one form per line (a tag column is ignored)
    #[arg(long = "in")]
    input: PathBuf,
    /// Gold corpus; when given an evaluation table is printed
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Output tagged corpus [default: not written]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Export decisions as form, tag, reason lines [default: standard output]
    #[arg(long)]
    decisions: Option<PathBuf>,
    #[command(flatten)]
    dtree_params: DtreeFlags,
    #[command(flatten)]
    jobs: Jobs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ReproArgs {
    /// Tagged corpus to split and experiment on
    #[arg(long)]
    corpus: PathBuf,
    /// Further tagged corpora of other text types, evaluated with the same models
    #[arg(long)]
    extra: Vec<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    /// Every n-th sentence goes to the test part [default: 8]
    #[arg(long)]
    denominator: Option<usize>,
    /// Analyzer for the extended lexicon and filtered export [default: stub]
    #[arg(long)]
    analyzer: Option<String>,
    #[command(flatten)]
    dtree: DtreeFlags,
    #[command(flatten)]
    tbl: TblFlags,
    #[command(flatten)]
    jobs: Jobs,
    #[command(flatten)]
    common: Common,
}

struct Ctx {
    settings: Settings,
    tagset: Tagset,
    validate: bool,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx, CliError> {
        let settings = Settings::load(c.config.as_deref(), &c.params)?;
        let tagset = match &c.tagset {
            Some(p) => Tagset::read(p).map_err(|e| data_err(&p.display().to_string(), e))?,
            None => Tagset::stts(),
        };
        let validate = c.validate_tagset || settings.get("validate_tagset", false)?;
        Ok(Ctx {
            settings,
            tagset,
            validate,
        })
    }

    fn read_corpus(&self, path: &Path) -> Result<Corpus, CliError> {
        Corpus::read(path, self.validate.then_some(&self.tagset))
            .map_err(|e| data_err(&path.display().to_string(), e))
    }

    fn jobs(&mut self, j: &Jobs) -> Result<usize, CliError> {
        self.settings.flag("jobs", &j.jobs);
        self.settings.get("jobs", 1)
    }

    fn apply_dtree(&mut self, f: &DtreeFlags) {
        let s = &mut self.settings;
        s.flag("context_length", &f.context_length);
        s.flag("min_gain", &f.min_gain);
        s.flag("eq_class_weight", &f.eq_class_weight);
        s.flag("affix_gain", &f.affix_gain);
        s.flag("max_suffix", &f.max_suffix);
    }

    fn apply_tbl(&mut self, f: &TblFlags) {
        let s = &mut self.settings;
        s.flag("lexical_threshold", &f.lexical_threshold);
        s.flag("contextual_threshold", &f.contextual_threshold);
        s.flag("bigram_restriction", &f.bigram_restriction);
    }
}

fn read_lexicon(path: &Path) -> Result<Lexicon, CliError> {
    Lexicon::read(path).map_err(|e| data_err(&path.display().to_string(), e))
}

fn read_input(path: &Path) -> Result<Vec<Vec<String>>, CliError> {
    read_forms(path).map_err(|e| data_err(&path.display().to_string(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn std::io::Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Internal(format!("standard output: {e}")))
}

enum Model {
    Tree(DTreeModel),
    Rules(TblModel),
}

fn load_model(path: &Path, lexicon: Option<Lexicon>) -> Result<Model, CliError> {
    let name = path.display().to_string();
    if path.is_dir() {
        return Ok(Model::Rules(
            TblModel::load(path, lexicon).map_err(|e| data_err(&name, e))?,
        ));
    }
    if lexicon.is_some() {
        return Err(CliError::Usage(
            "--lexicon applies to rule-tagger models; retrain a decision-tree model with train-dtree --lexicon".into(),
        ));
    }
    Ok(Model::Tree(
        DTreeModel::load(path).map_err(|e| data_err(&name, e))?,
    ))
}

fn parse_policy(s: &str) -> Result<ExportPolicy, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn split(a: SplitArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    ctx.settings.flag("denominator", &a.denominator);
    let denominator = ctx.settings.get("denominator", DEFAULT_DENOMINATOR)?;
    let mut corpus = ctx.read_corpus(&a.input)?;
    if a.remap_cardnum {
        corpus = remap_cardnum(&corpus);
    }
    let (train, test) =
        split_sentencewise(&corpus, denominator).map_err(|e| CliError::Usage(e.to_string()))?;
    write_file(&a.train, &write_vertical(&train))?;
    write_file(&a.test, &write_vertical(&test))?;
    emit(
        out,
        &format!(
            "train {} sentences, {} tokens\ntest {} sentences, {} tokens\n",
            train.len(),
            train.token_count(),
            test.len(),
            test.token_count()
        ),
    )
}

fn train_dtree(a: TrainDtreeArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    ctx.apply_dtree(&a.dtree);
    let params = ctx.settings.dtree_params()?;
    let train = ctx.read_corpus(&a.train)?;
    let lexicon = match &a.lexicon {
        Some(p) => read_lexicon(p)?,
        None => Lexicon::build(&train),
    };
    let t0 = Instant::now();
    let model = dtree::train(&train, &lexicon, &params)
        .map_err(|e| data_err(&a.train.display().to_string(), e))?;
    eprintln!("dtree training: {:.2}s", t0.elapsed().as_secs_f64());
    model
        .save(&a.out)
        .map_err(|e| CliError::Data(e.to_string()))?;
    emit(
        out,
        &format!(
            "context tree {} nodes, affix tree {} nodes, {} tags\n",
            model.context_tree().node_count(),
            model.affix_tree().node_count(),
            model.tags().len()
        ),
    )
}

fn train_tbl(a: TrainTblArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    ctx.apply_tbl(&a.tbl);
    let params = ctx.settings.tbl_params()?;
    let train = ctx.read_corpus(&a.train)?;
    let t0 = Instant::now();
    let (model, stats) = tbl::train(&train, &params);
    eprintln!("tbl training: {:.2}s", t0.elapsed().as_secs_f64());
    model
        .save(&a.out)
        .map_err(|e| CliError::Data(e.to_string()))?;
    emit(
        out,
        &format!(
            "{} lexical rules, {} contextual rules\ntraining tokens correct: {} initial, {} after lexical rules, {} final, of {}\n",
            model.lexical_rules.len(),
            model.contextual_rules.len(),
            stats.initial_correct,
            stats.after_lexical_correct,
            stats.final_correct,
            stats.tokens
        ),
    )
}

fn tag(a: TagArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    let jobs = ctx.jobs(&a.jobs)?;
    let forms = read_input(&a.input)?;
    let lexicon = a.lexicon.as_deref().map(read_lexicon).transpose()?;
    let model = load_model(&a.model, lexicon)?;
    let tagger: &dyn Tagger = match &model {
        Model::Tree(m) => m,
        Model::Rules(m) => m,
    };
    let t0 = Instant::now();
    let tagged = Corpus::from_tagging(&forms, tag_all(tagger, &forms, jobs));
    eprintln!("tagging: {:.2}s", t0.elapsed().as_secs_f64());
    let text = write_vertical(&tagged);
    match &a.out {
        Some(p) => write_file(p, &text),
        None => emit(out, &text),
    }
}

fn eval_cmd(a: EvalArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let ctx = Ctx::new(&a.common)?;
    let gold = ctx.read_corpus(&a.gold)?;
    let pred = ctx.read_corpus(&a.pred)?;
    let lexicon = read_lexicon(&a.lexicon)?;
    let report =
        evaluate(&gold, &pred, &lexicon).map_err(|e| data_err(&a.pred.display().to_string(), e))?;
    if let Some(p) = &a.csv {
        write_file(p, &render_csv(&report))?;
    }
    emit(out, &render_table(&report))
}

fn error_types_cmd(a: ErrorTypesArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let ctx = Ctx::new(&a.common)?;
    let gold = ctx.read_corpus(&a.gold)?;
    let pred = ctx.read_corpus(&a.pred)?;
    let mut types =
        error_types(&gold, &pred).map_err(|e| data_err(&a.pred.display().to_string(), e))?;
    if let Some(n) = a.top {
        types.truncate(n);
    }
    emit(out, &render_error_types(&types))
}

fn merge_lex(a: MergeLexArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    ctx.settings.flag("analyzer", &a.analyzer);
    let spec = ctx.settings.get_str("analyzer", "stub");
    let lexicon = read_lexicon(&a.lexicon)?;
    let forms = read_input(&a.forms)?;
    let priors = match &a.priors_corpus {
        Some(p) => TagPriors::from_corpus(&ctx.read_corpus(p)?),
        None => TagPriors::from_lexicon(&lexicon),
    }
    .map_err(|e| CliError::Data(e.to_string()))?;
    let unknown = lexicon.unknown_types(&forms);
    let analyzer =
        analyzer_from_spec(&spec, &ctx.tagset).map_err(|e| CliError::Usage(e.to_string()))?;
    let analyses = analyses_by_form(
        analyzer
            .analyze_batch(&unknown)
            .map_err(|e| CliError::Data(e.to_string()))?,
    );
    let merged = lexicon
        .merge_external(&analyses, &priors, ctx.validate.then_some(&ctx.tagset))
        .map_err(|e| CliError::Data(e.to_string()))?;
    write_file(&a.out, &merged.to_text())?;
    emit(
        out,
        &format!(
            "{} unknown types, {} entries added, {} entries total\n",
            unknown.len(),
            merged.len() - lexicon.len(),
            merged.len()
        ),
    )
}

fn combine(a: CombineArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    let jobs = ctx.jobs(&a.jobs)?;
    ctx.apply_dtree(&a.dtree_params);
    ctx.settings.flag("order", &a.order);
    ctx.settings.flag("policy", &a.policy);
    ctx.settings.flag("analyzer", &a.analyzer);
    let order = ctx.settings.get_str("order", "tree-tbl");
    let forms = read_input(&a.input)?;
    let gold = a.gold.as_deref().map(|p| ctx.read_corpus(p)).transpose()?;
    let tmodel =
        TblModel::load(&a.tbl, None).map_err(|e| data_err(&a.tbl.display().to_string(), e))?;
    let mut text = String::new();
    let (tagged, report) = match order.as_str() {
        "tree-tbl" => {
            if a.train.is_some() || a.lexicon.is_some() {
                return Err(CliError::Usage(
                    "--train and --lexicon apply to --order tbl-tree".into(),
                ));
            }
            let dpath = a
                .dtree
                .as_deref()
                .ok_or_else(|| CliError::Usage("--order tree-tbl needs --dtree".into()))?;
            let policy = parse_policy(&ctx.settings.get_str("policy", "filtered"))?;
            let dmodel =
                DTreeModel::load(dpath).map_err(|e| data_err(&dpath.display().to_string(), e))?;
            let analyses = match policy {
                ExportPolicy::All => None,
                _ => Some(analyze_unknown(
                    &tmodel.lexicon,
                    &forms,
                    &ctx.settings.get_str("analyzer", "stub"),
                    &ctx.tagset,
                )?),
            };
            let r = run_tree_then_tbl(
                &forms,
                &dmodel,
                &tmodel,
                policy,
                analyses.as_ref(),
                gold.as_ref(),
                jobs,
            )
            .map_err(|e| CliError::Data(e.to_string()))?;
            for d in &r.decisions {
                text.push_str(&d.to_line());
                text.push('\n');
            }
            (r.tagged, r.report)
        }
        "tbl-tree" => {
            if a.dtree.is_some() || a.policy.is_some() {
                return Err(CliError::Usage(
                    "--dtree and --policy apply to --order tree-tbl".into(),
                ));
            }
            let tpath = a
                .train
                .as_deref()
                .ok_or_else(|| CliError::Usage("--order tbl-tree needs --train".into()))?;
            let train = ctx.read_corpus(tpath)?;
            let lexicon = match &a.lexicon {
                Some(p) => read_lexicon(p)?,
                None => Lexicon::build(&train),
            };
            let params = ctx.settings.dtree_params()?;
            let r = run_tbl_then_tree(
                &train,
                &forms,
                &tmodel,
                &params,
                &lexicon,
                gold.as_ref(),
                jobs,
            )
            .map_err(|e| CliError::Data(e.to_string()))?;
            (r.tagged, r.report)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown order `{other}` (expected tree-tbl or tbl-tree)"
            )))
        }
    };
    if let Some(p) = &a.out {
        write_file(p, &write_vertical(&tagged))?;
    }
    match &a.decisions {
        Some(p) => write_file(p, &text)?,
        None => emit(out, &text)?,
    }
    if let Some(r) = report {
        emit(out, &render_table(&r))?;
    }
    Ok(())
}

fn repro_cmd(a: ReproArgs, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut ctx = Ctx::new(&a.common)?;
    let jobs = ctx.jobs(&a.jobs)?;
    ctx.apply_dtree(&a.dtree);
    ctx.apply_tbl(&a.tbl);
    ctx.settings.flag("denominator", &a.denominator);
    ctx.settings.flag("analyzer", &a.analyzer);
    let opts = ReproOptions {
        corpus: a.corpus,
        extra: a.extra,
        out: a.out,
        denominator: ctx.settings.get("denominator", DEFAULT_DENOMINATOR)?,
        tbl: ctx.settings.tbl_params()?,
        dtree: ctx.settings.dtree_params()?,
        analyzer: ctx.settings.get_str("analyzer", "stub"),
        tagset: ctx.tagset.clone(),
        validate_tagset: ctx.validate,
        jobs,
    };
    let outcome = run_repro(&opts)?;
    emit(out, &outcome.report)
}

fn dispatch(cli: Cli, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    match cli.command {
        Command::Split(a) => split(a, out),
        Command::TrainDtree(a) => train_dtree(a, out),
        Command::TrainTbl(a) => train_tbl(a, out),
        Command::Tag(a) => tag(a, out),
        Command::Eval(a) => eval_cmd(a, out),
        Command::ErrorTypes(a) => error_types_cmd(a, out),
        Command::MergeLex(a) => merge_lex(a, out),
        Command::Combine(a) => combine(a, out),
        Command::Repro(a) => repro_cmd(a, out),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status: 0 success, 1 usage error, 2 data error, 3 internal error.
/// Results go to `out`; diagnostics and timings go to standard error.
pub fn run_with<I, T>(argv: I, out: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("usage error");
            eprintln!("tagkit: {}", first.trim_start_matches("error: "));
            return 1;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli, out)));
    match result {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("tagkit: {e}");
            e.exit_code()
        }
        Err(_) => {
            eprintln!("tagkit: internal error");
            3
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run_with(argv, &mut lock);
    let _ = lock.flush();
    code
}
