//! One-command experiment: split, train both taggers, evaluate, merge an
//! external lexicon, and run both combinations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use tagkit::combine::{run_tbl_then_tree, run_tree_then_tbl, ExportPolicy, ExportReason};
use tagkit::corpus::{
    names, remap_cardnum, split_sentencewise, write_vertical, Corpus, Tag, Tagset,
};
use tagkit::dtree::{self, DTreeParams};
use tagkit::eval::{
    error_types, evaluate, percent, render_csv, render_error_types, render_table, EvalReport,
};
use tagkit::lexicon::{Lexicon, TagPriors};
use tagkit::morph::{analyses_by_form, analyzer_from_spec};
use tagkit::tbl::{self, TblModel, TblParams};
use tagkit::{tag_all, BaselineTagger, Tagger};

use crate::{data_err, CliError};

const TOP_ERROR_TYPES: usize = 10;

#[derive(Clone, Debug)]
pub struct ReproOptions {
    pub corpus: PathBuf,
    /// Further corpora of other text types, evaluated with the same models.
    pub extra: Vec<PathBuf>,
    pub out: PathBuf,
    pub denominator: usize,
    pub tbl: TblParams,
    pub dtree: DTreeParams,
    pub analyzer: String,
    pub tagset: Tagset,
    pub validate_tagset: bool,
    pub jobs: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub tbl_training: Duration,
    pub dtree_training: Duration,
    pub merged_dtree_training: Duration,
    pub total: Duration,
}

#[derive(Clone, Debug)]
pub struct TextTypeResult {
    pub name: String,
    pub baseline: EvalReport,
    pub tbl: EvalReport,
    pub dtree: EvalReport,
}

#[derive(Clone, Debug)]
pub struct ReproOutcome {
    pub baseline: EvalReport,
    pub tbl: EvalReport,
    pub dtree: EvalReport,
    pub merged_dtree: EvalReport,
    pub merged_tbl: EvalReport,
    /// Per export policy: the report and the number of exported types.
    pub tree_then_tbl: Vec<(ExportPolicy, EvalReport, usize)>,
    pub tbl_then_tree: EvalReport,
    pub text_types: Vec<TextTypeResult>,
    pub report: String,
    pub timings: Timings,
}

fn file_name(p: &Path) -> String {
    p.file_name().map_or_else(
        || p.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn read_corpus(path: &Path, opts: &ReproOptions) -> Result<Corpus, CliError> {
    let ts = opts.validate_tagset.then_some(&opts.tagset);
    Corpus::read(path, ts).map_err(|e| data_err(&path.display().to_string(), e))
}

fn tagged<T: Tagger + ?Sized>(t: &T, forms: &[Vec<String>], jobs: usize) -> Corpus {
    Corpus::from_tagging(forms, tag_all(t, forms, jobs))
}

fn eval(gold: &Corpus, pred: &Corpus, lex: &Lexicon) -> Result<EvalReport, CliError> {
    evaluate(gold, pred, lex).map_err(|e| CliError::Internal(e.to_string()))
}

fn section(out: &mut String, title: &str) {
    let _ = writeln!(out, "\n== {title} ==");
}

fn accuracy_line(r: &EvalReport) -> String {
    format!(
        "accuracy {}% ({} of {} tokens)",
        percent(r.totals.correct, r.totals.tokens),
        r.totals.correct,
        r.totals.tokens
    )
}

/// Correct and total tokens over ambiguity levels `>= from`.
fn from_level(r: &EvalReport, from: usize) -> (u64, u64) {
    r.rows
        .iter()
        .filter(|row| row.ambiguity >= from)
        .fold((0, 0), |(c, t), row| (c + row.correct, t + row.tokens))
}

fn points(a: &EvalReport, b: &EvalReport) -> f64 {
    a.accuracy - b.accuracy
}

pub fn run_repro(opts: &ReproOptions) -> Result<ReproOutcome, CliError> {
    let started = Instant::now();
    let mut timings = Timings::default();
    let out = &opts.out;
    for sub in ["", "tagged", "eval", "errors"] {
        fs::create_dir_all(out.join(sub))
            .map_err(|e| CliError::Data(format!("{}: {e}", out.display())))?;
    }
    let mut rep = String::new();

    let raw = read_corpus(&opts.corpus, opts)?;
    let corpus = remap_cardnum(&raw);
    let remapped = raw
        .tokens()
        .zip(corpus.tokens())
        .filter(|(a, b)| a.tag != b.tag)
        .count();
    let (train, test) = split_sentencewise(&corpus, opts.denominator)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    write(&out.join("train.vrt"), &write_vertical(&train))?;
    write(&out.join("test.vrt"), &write_vertical(&test))?;
    let test_forms = test.forms();
    let _ = writeln!(
        rep,
        "corpus {}: {} sentences, {} tokens",
        file_name(&opts.corpus),
        corpus.len(),
        corpus.token_count()
    );
    let _ = writeln!(
        rep,
        "tagset modification: {remapped} digit-sequence {} tokens retagged {}",
        names::CARD,
        names::CARDNUM
    );
    let _ = writeln!(
        rep,
        "split 1/{}: train {} sentences ({} tokens), test {} sentences ({} tokens)",
        opts.denominator,
        train.len(),
        train.token_count(),
        test.len(),
        test.token_count()
    );

    let lexicon = Lexicon::build(&train);
    write(&out.join("train.lex"), &lexicon.to_text())?;

    // baseline
    let base_tagged = tagged(
        &BaselineTagger { lexicon: &lexicon },
        &test_forms,
        opts.jobs,
    );
    write(
        &out.join("tagged/baseline.vrt"),
        &write_vertical(&base_tagged),
    )?;
    let baseline = eval(&test, &base_tagged, &lexicon)?;
    section(
        &mut rep,
        "baseline: most frequent lexicon tag, NN for unknown forms",
    );
    rep.push_str(&render_table(&baseline));
    write(&out.join("eval/baseline.csv"), &render_csv(&baseline))?;

    // rule tagger
    let t0 = Instant::now();
    let (tmodel, stats) = tbl::train(&train, &opts.tbl);
    timings.tbl_training = t0.elapsed();
    eprintln!("tbl training: {:.2}s", timings.tbl_training.as_secs_f64());
    tmodel
        .save(out.join("tbl"))
        .map_err(|e| CliError::Data(e.to_string()))?;
    let tbl_tagged = tagged(&tmodel, &test_forms, opts.jobs);
    write(&out.join("tagged/tbl.vrt"), &write_vertical(&tbl_tagged))?;
    let tbl_report = eval(&test, &tbl_tagged, &tmodel.lexicon)?;
    section(&mut rep, "rule tagger");
    let _ = writeln!(
        rep,
        "{} lexical rules, {} contextual rules; training accuracy {}% initial, {}% after lexical rules, {}% final",
        tmodel.lexical_rules.len(),
        tmodel.contextual_rules.len(),
        percent(stats.initial_correct as u64, stats.tokens as u64),
        percent(stats.after_lexical_correct as u64, stats.tokens as u64),
        percent(stats.final_correct as u64, stats.tokens as u64),
    );
    rep.push_str(&render_table(&tbl_report));
    write(&out.join("eval/tbl.csv"), &render_csv(&tbl_report))?;

    // tree tagger
    let t0 = Instant::now();
    let dmodel =
        dtree::train(&train, &lexicon, &opts.dtree).map_err(|e| CliError::Data(e.to_string()))?;
    timings.dtree_training = t0.elapsed();
    eprintln!(
        "dtree training: {:.2}s",
        timings.dtree_training.as_secs_f64()
    );
    dmodel
        .save(out.join("dtree.model"))
        .map_err(|e| CliError::Data(e.to_string()))?;
    let dtree_tagged = tagged(&dmodel, &test_forms, opts.jobs);
    write(
        &out.join("tagged/dtree.vrt"),
        &write_vertical(&dtree_tagged),
    )?;
    let dtree_report = eval(&test, &dtree_tagged, dmodel.lexicon())?;
    section(&mut rep, "decision-tree tagger");
    let _ = writeln!(
        rep,
        "context tree {} nodes, affix tree {} nodes",
        dmodel.context_tree().node_count(),
        dmodel.affix_tree().node_count()
    );
    rep.push_str(&render_table(&dtree_report));
    write(&out.join("eval/dtree.csv"), &render_csv(&dtree_report))?;

    for (name, pred) in [
        ("rule tagger", &tbl_tagged),
        ("decision-tree tagger", &dtree_tagged),
    ] {
        let mut types = error_types(&test, pred).map_err(|e| CliError::Internal(e.to_string()))?;
        let file = if name == "rule tagger" {
            "errors/tbl.tsv"
        } else {
            "errors/dtree.tsv"
        };
        write(&out.join(file), &render_error_types(&types))?;
        types.truncate(TOP_ERROR_TYPES);
        section(
            &mut rep,
            &format!("most frequent error types, {name} (correct, tagger, count)"),
        );
        rep.push_str(&render_error_types(&types));
    }

    // external lexicon
    let unknown = lexicon.unknown_types(&test_forms);
    let analyses = analyze_unknown(&lexicon, &test_forms, &opts.analyzer, &opts.tagset)?;
    let priors = TagPriors::from_corpus(&train).map_err(|e| CliError::Data(e.to_string()))?;
    let merged = lexicon
        .merge_external(&analyses, &priors, Some(&opts.tagset))
        .map_err(|e| CliError::Data(e.to_string()))?;
    write(&out.join("merged.lex"), &merged.to_text())?;
    let t0 = Instant::now();
    let merged_model =
        dtree::train(&train, &merged, &opts.dtree).map_err(|e| CliError::Data(e.to_string()))?;
    timings.merged_dtree_training = t0.elapsed();
    eprintln!(
        "dtree training with merged lexicon: {:.2}s",
        timings.merged_dtree_training.as_secs_f64()
    );
    let merged_tagged = tagged(&merged_model, &test_forms, opts.jobs);
    write(
        &out.join("tagged/dtree-merged.vrt"),
        &write_vertical(&merged_tagged),
    )?;
    let merged_dtree = eval(&test, &merged_tagged, &merged)?;
    let merged_tmodel: TblModel = tmodel.with_lexicon(merged.clone());
    let merged_tbl_tagged = tagged(&merged_tmodel, &test_forms, opts.jobs);
    write(
        &out.join("tagged/tbl-merged.vrt"),
        &write_vertical(&merged_tbl_tagged),
    )?;
    let merged_tbl = eval(&test, &merged_tbl_tagged, &merged)?;
    section(
        &mut rep,
        &format!("extended lexicon (analyzer {})", opts.analyzer),
    );
    let analyzed = analyses.values().filter(|t| !t.is_empty()).count();
    let _ = writeln!(
        rep,
        "{} unknown test types, {} analyzed, {} entries added; lexicon-gap tokens {} -> {}",
        unknown.len(),
        analyzed,
        merged.len() - lexicon.len(),
        dtree_report.gap_tokens(),
        merged_dtree.gap_tokens()
    );
    let _ = writeln!(
        rep,
        "decision-tree tagger retrained with the extended lexicon:"
    );
    rep.push_str(&render_table(&merged_dtree));
    let _ = writeln!(
        rep,
        "rule tagger with the extended lexicon (no retraining):"
    );
    rep.push_str(&render_table(&merged_tbl));
    write(
        &out.join("eval/dtree-merged.csv"),
        &render_csv(&merged_dtree),
    )?;
    write(&out.join("eval/tbl-merged.csv"), &render_csv(&merged_tbl))?;

    // combinations
    let mut tree_then_tbl = Vec::new();
    for policy in [
        ExportPolicy::All,
        ExportPolicy::FilteredNoNe,
        ExportPolicy::Filtered,
    ] {
        let r = run_tree_then_tbl(
            &test_forms,
            &dmodel,
            &tmodel,
            policy,
            Some(&analyses),
            Some(&test),
            opts.jobs,
        )
        .map_err(|e| CliError::Data(e.to_string()))?;
        let report = r.report.expect("gold supplied");
        let name = policy.name();
        let mut decisions = String::new();
        for d in &r.decisions {
            decisions.push_str(&d.to_line());
            decisions.push('\n');
        }
        write(&out.join(format!("decisions-{name}.tsv")), &decisions)?;
        write(
            &out.join(format!("tagged/tree-tbl-{name}.vrt")),
            &write_vertical(&r.tagged),
        )?;
        write(
            &out.join(format!("eval/tree-tbl-{name}.csv")),
            &render_csv(&report),
        )?;
        let mut by_reason: BTreeMap<&str, usize> = BTreeMap::new();
        for d in &r.decisions {
            *by_reason.entry(d.reason.name()).or_default() += 1;
        }
        let exported = r
            .decisions
            .iter()
            .filter(|d| d.reason != ExportReason::NoExport)
            .count();
        section(
            &mut rep,
            &format!("combination: tree tagger then rule tagger, export policy {name}"),
        );
        let reasons: Vec<String> = by_reason.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(
            rep,
            "{} of {} unknown types exported ({})",
            exported,
            r.decisions.len(),
            reasons.join(", ")
        );
        rep.push_str(&render_table(&report));
        tree_then_tbl.push((policy, report, exported));
    }
    let r = run_tbl_then_tree(
        &train,
        &test_forms,
        &tmodel,
        &opts.dtree,
        &lexicon,
        Some(&test),
        opts.jobs,
    )
    .map_err(|e| CliError::Data(e.to_string()))?;
    let tbl_then_tree = r.report.expect("gold supplied");
    write(&out.join("tagged/tbl-tree.vrt"), &write_vertical(&r.tagged))?;
    write(&out.join("eval/tbl-tree.csv"), &render_csv(&tbl_then_tree))?;
    section(
        &mut rep,
        "combination: rule tagger then retrained tree tagger",
    );
    rep.push_str(&render_table(&tbl_then_tree));

    // other text types
    let mut text_types = Vec::new();
    for path in &opts.extra {
        let gold = remap_cardnum(&read_corpus(path, opts)?);
        let forms = gold.forms();
        let name = file_name(path);
        let b = eval(
            &gold,
            &tagged(&BaselineTagger { lexicon: &lexicon }, &forms, opts.jobs),
            &lexicon,
        )?;
        let t = eval(&gold, &tagged(&tmodel, &forms, opts.jobs), &tmodel.lexicon)?;
        let d = eval(&gold, &tagged(&dmodel, &forms, opts.jobs), dmodel.lexicon())?;
        section(
            &mut rep,
            &format!(
                "text type {name}: {} sentences, {} tokens",
                gold.len(),
                gold.token_count()
            ),
        );
        let _ = writeln!(rep, "baseline {}", accuracy_line(&b));
        let _ = writeln!(rep, "rule tagger:");
        rep.push_str(&render_table(&t));
        let _ = writeln!(rep, "decision-tree tagger:");
        rep.push_str(&render_table(&d));
        text_types.push(TextTypeResult {
            name,
            baseline: b,
            tbl: t,
            dtree: d,
        });
    }

    section(&mut rep, "comparison");
    let _ = writeln!(rep, "baseline              {}", accuracy_line(&baseline));
    let _ = writeln!(
        rep,
        "rule tagger           {} ({:+.2} points over baseline)",
        accuracy_line(&tbl_report),
        points(&tbl_report, &baseline)
    );
    let _ = writeln!(
        rep,
        "decision-tree tagger  {} ({:+.2} points over baseline)",
        accuracy_line(&dtree_report),
        points(&dtree_report, &baseline)
    );
    let unk = |r: &EvalReport| r.row(0).map_or((0, 0), |row| (row.correct, row.tokens));
    let (tu, n) = unk(&tbl_report);
    let (du, _) = unk(&dtree_report);
    let _ = writeln!(
        rep,
        "unknown forms: rule tagger {}%, decision-tree tagger {}% ({} tokens); decision-tree tagger better: {}",
        percent(tu, n),
        percent(du, n),
        n,
        if du > tu { "yes" } else { "no" }
    );
    let (tc, tn) = from_level(&tbl_report, 4);
    let (dc, _) = from_level(&dtree_report, 4);
    let _ = writeln!(
        rep,
        "ambiguity >= 4: rule tagger {}%, decision-tree tagger {}% ({} tokens); rule tagger better: {}",
        percent(tc, tn),
        percent(dc, tn),
        tn,
        if tc > dc { "yes" } else { "no" }
    );
    let _ = writeln!(
        rep,
        "extended lexicon: gap tokens {} -> {}, decision-tree accuracy {}% -> {}% ({:+.2} points)",
        dtree_report.gap_tokens(),
        merged_dtree.gap_tokens(),
        percent(dtree_report.totals.correct, dtree_report.totals.tokens),
        percent(merged_dtree.totals.correct, merged_dtree.totals.tokens),
        points(&merged_dtree, &dtree_report)
    );
    for (policy, r, exported) in &tree_then_tbl {
        let _ = writeln!(
            rep,
            "tree then rule tagger ({}): {} ({exported} types exported)",
            policy.name(),
            accuracy_line(r)
        );
    }
    let _ = writeln!(
        rep,
        "rule tagger then tree tagger: {}",
        accuracy_line(&tbl_then_tree)
    );

    write(&out.join("report.txt"), &rep)?;
    timings.total = started.elapsed();
    eprintln!("repro total: {:.2}s", timings.total.as_secs_f64());
    Ok(ReproOutcome {
        baseline,
        tbl: tbl_report,
        dtree: dtree_report,
        merged_dtree,
        merged_tbl,
        tree_then_tbl,
        tbl_then_tree,
        text_types,
        report: rep,
        timings,
    })
}

/// Unknown types of `forms` mapped to their analyses, for the combine subcommand.
pub fn analyze_unknown(
    lexicon: &Lexicon,
    forms: &[Vec<String>],
    spec: &str,
    tagset: &Tagset,
) -> Result<BTreeMap<String, BTreeSet<Tag>>, CliError> {
    let unknown = lexicon.unknown_types(forms);
    let analyzer = analyzer_from_spec(spec, tagset).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(analyses_by_form(
        analyzer
            .analyze_batch(&unknown)
            .map_err(|e| CliError::Data(e.to_string()))?,
    ))
}
