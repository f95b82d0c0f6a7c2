//! The `moore-kit` command line: argument parsing, dispatch over a loaded
//! [`Document`], and JSON or text rendering of the reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance;
use crate::chain::{classify_chain, ttf_decompose, ChainComplex, ChainSES, Theory};
use crate::corpus::moore_corpus;
use crate::crossed::{
    classify_crossed_module, crs_e_torsion, validate_2xm, validate_crossed_complex, validate_crossed_module,
    validate_reduced_2xm, validate_stable, xmod_ctf_sequences, AxiomReport, CrossedComplex, CrossedModule, ETorsion,
    TwoCrossedModule,
};
use crate::document::{chain_json, Crossed, Document, Section};
use crate::error::{Error, Result};
use crate::group::library::identify;
use crate::group::{commutator_subgroup, FiniteGroup, GroupHom};
use crate::par::ExecMode;
use crate::simplicial::{classify_membership, homotopy_groups, is_group_t_complex, moore};
use crate::torsion::{
    classify_trivial_object, perf_ab, pretorsion_decompose, verify_preexact, Ambient, Object, TheoryId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Acceptance,
}

#[derive(Debug, Parser)]
#[command(name = "moore-kit", version, about = "Torsion theories of Moore complexes over finite groups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// run sweeps on one thread
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one named object and check its axioms
    Validate { file: PathBuf, name: String },
    /// Moore complex of a simplicial group
    Moore { file: PathBuf, name: String },
    /// Short exact sequence of an object under a torsion theory
    Decompose {
        file: PathBuf,
        name: String,
        #[command(flatten)]
        how: DecomposeHow,
    },
    /// Homotopy groups of a simplicial group
    Homotopy {
        file: PathBuf,
        name: String,
        #[arg(long, default_value_t = 2)]
        max: usize,
    },
    /// Membership flags, crossed-module classes or a trivial-object pattern
    Classify {
        file: PathBuf,
        name: String,
        /// `SMALLER,LARGER` theories; reports the trivial-object pattern
        #[arg(long)]
        pair: Option<String>,
    },
    /// Run a bundled check suite
    Corpus {
        #[arg(long, value_enum, default_value_t = Suite::Acceptance)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DecomposeHow {
    /// a theory name from the document, or `mu-ngeq:N` / `mu-geq:N`
    #[arg(long)]
    pub theory: Option<String>,
    /// `SMALLER,LARGER`
    #[arg(long)]
    pub pretorsion: Option<String>,
    #[arg(long)]
    pub ttf: Option<i32>,
    /// `dis-ab`, `perf-ab` or `crs:N`
    #[arg(long = "e-torsion")]
    pub e_torsion: Option<String>,
}

/// A finished command: the exit code and the report to print.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn verdict(passed: bool, report: Value) -> Outcome {
        Outcome { code: if passed { 0 } else { 1 }, report }
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({"code": e.code(), "message": e.to_string(), "witness": e.witness()})
}

/// Usage, parse and name-resolution failures exit with 2, every other
/// failure with 1.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Document(_) => 2,
        _ => 1,
    }
}

pub fn execute(cli: &Cli) -> std::result::Result<Outcome, Error> {
    let mode = if cli.sequential { ExecMode::Sequential } else { ExecMode::default() };
    match &cli.command {
        Command::Validate { file, name } => cmd_validate(&Document::load(file)?, name),
        Command::Moore { file, name } => cmd_moore(&Document::load(file)?, name),
        Command::Decompose { file, name, how } => cmd_decompose(&Document::load(file)?, name, how, mode),
        Command::Homotopy { file, name, max } => cmd_homotopy(&Document::load(file)?, name, *max),
        Command::Classify { file, name, pair } => cmd_classify(&Document::load(file)?, name, pair.as_deref()),
        Command::Corpus { suite: Suite::Acceptance } => Ok(cmd_corpus(mode)),
    }
}

/// A theory named in the document, or a literal such as `mu-geq:1`.
pub fn resolve_theory(doc: &Document, s: &str) -> Result<TheoryId> {
    match doc.section(s) {
        Ok(Section::Theory) => doc.theory(s),
        _ => Theory::parse(s).map(|t| TheoryId::new(t, Ambient::Simp)),
    }
}

fn resolve_pair(doc: &Document, s: &str) -> Result<(Theory, Theory)> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::Document(format!("expected SMALLER,LARGER, got {s:?}")))?;
    Ok((resolve_theory(doc, a.trim())?.theory, resolve_theory(doc, b.trim())?.theory))
}

fn chain_of_two(t: &TwoCrossedModule) -> Result<ChainComplex> {
    let d1 = GroupHom::new(&t.m, &t.n, t.delta1.clone())?;
    let d2 = GroupHom::new(&t.l, &t.m, t.delta2.clone())?;
    ChainComplex::new(0, vec![t.n.clone(), t.m.clone(), t.l.clone()], vec![d1, d2])
}

/// The chain complex an object contributes to the torsion machinery: a
/// chain complex itself, the Moore complex of a simplicial group, or the
/// underlying complex of a validated crossed structure.
pub fn object_chain(doc: &Document, name: &str) -> Result<ChainComplex> {
    match doc.section(name)? {
        Section::Chain => doc.chain(name),
        Section::Simplicial => Ok(moore(&doc.simplicial(name)?)?.chain.into_chain()),
        Section::Crossed => match doc.crossed(name)? {
            Crossed::Module(x) => {
                validate_crossed_module(&x).into_result()?;
                Ok(x.to_chain())
            }
            Crossed::Two(t) => {
                validate_2xm(&t)?.into_result()?;
                chain_of_two(&t)
            }
            Crossed::Reduced(p) => {
                validate_reduced_2xm(&p)?.into_result()?;
                chain_of_two(&TwoCrossedModule::from_peiffer(&p))
            }
            Crossed::Stable(p) => {
                validate_stable(&p)?.into_result()?;
                Ok(p.underlying_crossed_module().to_chain())
            }
            Crossed::Complex(c) => {
                validate_crossed_complex(&c).into_result()?;
                Ok(c.chain().chain().clone())
            }
        },
        s => Err(Error::Document(format!("`{name}` is a {s:?}, not an object with a chain complex"))),
    }
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({"order": g.order(), "name": identify(g)})
}

fn axiom_json(r: &AxiomReport) -> Value {
    json!({
        "structure": r.structure,
        "checks": r.checks.iter().map(|c| json!({"axiom": c.axiom, "holds": c.holds, "witness": c.witness})).collect::<Vec<_>>(),
    })
}

fn validate_value(doc: &Document, name: &str) -> Result<(bool, Value)> {
    Ok(match doc.section(name)? {
        Section::Group => {
            let g = doc.group(name)?;
            (true, json!({"group": group_json(&g), "abelian": g.is_abelian()}))
        }
        Section::Hom => {
            let h = doc.hom(name)?;
            (true, json!({"injective": h.is_injective(), "surjective": h.is_surjective()}))
        }
        Section::Chain => {
            let c = doc.chain(name)?;
            (true, json!({"orders": c.orders(), "proper": c.is_proper(), "abelian": c.is_abelian()}))
        }
        Section::Simplicial => {
            let x = doc.simplicial(name)?;
            x.check_identities()?;
            (true, json!({"orders": x.orders(), "coskeletal_above": x.coskeletal_above()}))
        }
        Section::Crossed => {
            let r = match doc.crossed(name)? {
                Crossed::Module(x) => validate_crossed_module(&x),
                Crossed::Two(t) => validate_2xm(&t)?,
                Crossed::Reduced(p) => validate_reduced_2xm(&p)?,
                Crossed::Stable(p) => validate_stable(&p)?,
                Crossed::Complex(c) => validate_crossed_complex(&c),
            };
            (r.passed(), axiom_json(&r))
        }
        Section::Theory => {
            let t = doc.theory(name)?;
            (true, json!({"theory": t.theory.to_string(), "ambient": t.ambient.to_string(), "restriction": t.restriction()}))
        }
        Section::Corpus => {
            let mut members = serde_json::Map::new();
            let mut all = true;
            for m in doc.corpus(name)? {
                let (ok, v) = validate_one(doc, m);
                all &= ok;
                members.insert(m.clone(), v);
            }
            (all, json!({"members": members}))
        }
    })
}

fn validate_one(doc: &Document, name: &str) -> (bool, Value) {
    match validate_value(doc, name) {
        Ok((ok, details)) => (ok, json!({"verdict": if ok { "valid" } else { "invalid" }, "witness": null, "details": details})),
        Err(e) => (false, json!({"verdict": "invalid", "witness": error_json(&e), "details": null})),
    }
}

pub fn cmd_validate(doc: &Document, name: &str) -> Result<Outcome> {
    let section = doc.section(name)?;
    let (ok, mut v) = validate_one(doc, name);
    v["object"] = json!(name);
    v["section"] = json!(section);
    Ok(Outcome::verdict(ok, v))
}

pub fn cmd_moore(doc: &Document, name: &str) -> Result<Outcome> {
    let x = doc.simplicial(name)?;
    let m = moore(&x)?;
    Ok(Outcome::verdict(
        true,
        json!({
            "object": name,
            "chain": chain_json(&m.chain),
            "normalized_orders": m.normalized.iter().map(|s| s.order()).collect::<Vec<_>>(),
            "degenerate_orders": m.degenerate.iter().map(|s| s.order()).collect::<Vec<_>>(),
            "group_orders": x.orders(),
        }),
    ))
}

fn ses_json(s: &ChainSES) -> Value {
    json!({"sub": chain_json(&s.sub), "middle": chain_json(&s.middle), "quotient": chain_json(&s.quotient)})
}

fn decompose_theory(name: &str, c: &ChainComplex, t: TheoryId) -> Result<Outcome> {
    let ses = t.decompose(c)?;
    let torsion_in_t = t.theory.is_torsion(&ses.sub);
    let free_in_f = t.theory.is_torsion_free(&ses.quotient);
    let collapse = t.collapse_holds(c)?;
    Ok(Outcome::verdict(
        torsion_in_t && free_in_f && collapse,
        json!({
            "object": name,
            "theory": t.theory.to_string(),
            "ambient": t.ambient.to_string(),
            "restriction": t.restriction(),
            "sequence": ses_json(&ses),
            "torsion_zero": ses.sub.is_zero(),
            "free_zero": ses.quotient.is_zero(),
            "checks": {"torsion_in_t": torsion_in_t, "free_in_f": free_in_f, "collapse": collapse},
        }),
    ))
}

fn decompose_pretorsion(name: &str, c: &ChainComplex, s: Theory, l: Theory, mode: ExecMode) -> Result<Outcome> {
    let dec = pretorsion_decompose(c, s, l)?;
    let mut probes = moore_corpus()?;
    probes.push(Object::new(name, c.clone()));
    let pre = verify_preexact(&dec, &probes, mode)?;
    Ok(Outcome::verdict(
        dec.holds() && pre.passed(),
        json!({
            "object": name,
            "smaller": s.to_string(),
            "larger": l.to_string(),
            "torsion": ses_json(&dec.torsion),
            "free": ses_json(&dec.free),
            "middle": chain_json(&dec.middle),
            "pattern": dec.pattern,
            "checks": {"torsion_ok": dec.torsion_ok, "free_ok": dec.free_ok, "middle_in_z": dec.middle_in_z},
            "preexact": pre,
        }),
    ))
}

fn decompose_ttf(name: &str, c: &ChainComplex, n: i32) -> Result<Outcome> {
    let r = ttf_decompose(c, n)?;
    Ok(Outcome::verdict(
        r.middle_agrees && r.outer_agrees,
        json!({
            "object": name,
            "n": n,
            "first": ses_json(&r.first),
            "second": ses_json(&r.second),
            "checks": {"chain_split": r.chain_split, "middle_agrees": r.middle_agrees, "outer_agrees": r.outer_agrees},
        }),
    ))
}

fn e_torsion_json(e: &ETorsion) -> Value {
    match e {
        ETorsion::Sequence(s) => json!({"in_e": true, "sequence": ses_json(&s.chain)}),
        ETorsion::NotInE { degree, actor, element } => {
            json!({"in_e": false, "witness": {"degree": degree, "actor": actor, "element": element}})
        }
    }
}

fn crossed_complex_of(doc: &Document, name: &str) -> Result<CrossedComplex> {
    match doc.crossed(name)? {
        Crossed::Module(x) => CrossedComplex::from_crossed_module(&doc_module(x)?),
        Crossed::Complex(c) => {
            validate_crossed_complex(&c).into_result()?;
            Ok(c)
        }
        _ => Err(Error::Document(format!("`{name}` is not a crossed module or crossed complex"))),
    }
}

fn doc_module(x: CrossedModule) -> Result<CrossedModule> {
    validate_crossed_module(&x).into_result()?;
    Ok(x)
}

fn decompose_e_torsion(doc: &Document, name: &str, which: &str) -> Result<Outcome> {
    if which == "perf-ab" {
        let g = doc.group(name)?;
        let p = perf_ab(&g)?;
        let exact = p.exact();
        return Ok(Outcome::verdict(
            !p.in_e || exact,
            json!({
                "object": name,
                "in_e": p.in_e,
                "derived_orders": p.derived_orders,
                "commutator": group_json(&p.commutator_group),
                "abelianization": group_json(&p.abelianization),
                "checks": {"exact": exact, "commutator_perfect": commutator_subgroup(&p.commutator_group).is_whole()},
            }),
        ));
    }
    if which == "dis-ab" {
        let x = doc.crossed_module(name)?;
        let s = xmod_ctf_sequences(&x)?;
        let mut v = e_torsion_json(&s.e_torsion);
        v["object"] = json!(name);
        v["checks"] = json!({"counit_monic": s.counit_monic, "quotient_leg_is_morphism": s.quotient_leg_is_morphism});
        return Ok(Outcome::verdict(s.counit_monic && s.e_torsion.in_e() == s.quotient_leg_is_morphism, v));
    }
    let n = which
        .strip_prefix("crs:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| Error::Document(format!("--e-torsion expects dis-ab, perf-ab or crs:N, got {which:?}")))?;
    let c = crossed_complex_of(doc, name)?;
    let r = crs_e_torsion(&c, n)?;
    let mut v = e_torsion_json(&r.sequence);
    v["object"] = json!(name);
    v["n"] = json!(n);
    v["checks"] = json!({
        "counit_monic": r.counit_monic,
        "projection_is_morphism": r.projection_is_morphism,
        "delta1_surjective": r.delta1_surjective,
        "delta1_central_extension": r.delta1_central_extension,
        "implication": r.implication_holds(),
    });
    Ok(Outcome::verdict(r.counit_monic && r.implication_holds(), v))
}

pub fn cmd_decompose(doc: &Document, name: &str, how: &DecomposeHow, mode: ExecMode) -> Result<Outcome> {
    if let Some(which) = &how.e_torsion {
        return decompose_e_torsion(doc, name, which);
    }
    let c = object_chain(doc, name)?;
    if let Some(t) = &how.theory {
        decompose_theory(name, &c, resolve_theory(doc, t)?)
    } else if let Some(p) = &how.pretorsion {
        let (s, l) = resolve_pair(doc, p)?;
        decompose_pretorsion(name, &c, s, l, mode)
    } else if let Some(n) = how.ttf {
        decompose_ttf(name, &c, n)
    } else {
        Err(Error::Document("decompose needs one of --theory, --pretorsion, --ttf, --e-torsion".into()))
    }
}

pub fn cmd_homotopy(doc: &Document, name: &str, max: usize) -> Result<Outcome> {
    let x = doc.simplicial(name)?;
    let pis = homotopy_groups(&x, max)?;
    let names: Vec<String> =
        pis.iter().map(|g| identify(g).map(str::to_string).unwrap_or_else(|| format!("order {}", g.order()))).collect();
    Ok(Outcome::verdict(
        true,
        json!({"object": name, "orders": pis.iter().map(FiniteGroup::order).collect::<Vec<_>>(), "groups": names}),
    ))
}

pub fn cmd_classify(doc: &Document, name: &str, pair: Option<&str>) -> Result<Outcome> {
    if let Some(p) = pair {
        let (s, l) = resolve_pair(doc, p)?;
        let c = object_chain(doc, name)?;
        let pattern = classify_trivial_object(&c, s, l)?;
        return Ok(Outcome::verdict(
            true,
            json!({"object": name, "smaller": s.to_string(), "larger": l.to_string(), "pattern": pattern}),
        ));
    }
    let v = match doc.section(name)? {
        Section::Simplicial => {
            let x = doc.simplicial(name)?;
            json!({"memberships": classify_membership(&x)?, "group_t_complex": is_group_t_complex(&x)?})
        }
        Section::Crossed if matches!(doc.crossed(name)?, Crossed::Module(_)) => {
            let x = doc.crossed_module(name)?;
            json!({"classes": classify_crossed_module(&x)})
        }
        Section::Group => {
            let g = doc.group(name)?;
            json!({"group": group_json(&g), "abelian": g.is_abelian(), "perfect": commutator_subgroup(&g).is_whole()})
        }
        _ => {
            let c = object_chain(doc, name)?;
            let hi = c.hi().max(0);
            let mut classes = serde_json::Map::new();
            for n in 0..=hi + 1 {
                for t in [Theory::MuNgeq(n), Theory::MuGeq(n)] {
                    classes.insert(t.to_string(), json!(classify_chain(&c, t)));
                }
            }
            json!({"theories": classes})
        }
    };
    let mut v = v;
    v["object"] = json!(name);
    Ok(Outcome::verdict(true, v))
}

pub fn cmd_corpus(mode: ExecMode) -> Outcome {
    let results = acceptance::run_all(mode);
    let passed = results.iter().filter(|r| r.passed).count();
    Outcome::verdict(
        passed == results.len(),
        json!({"suite": "acceptance", "passed": passed, "total": results.len(), "criteria": results}),
    )
}

/// Indented `key: value` lines; arrays of scalars stay on one line.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(xs) if xs.iter().all(|x| x.is_array() && scalar(x).is_some()) && xs.len() <= 12 => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(out, x, indent + 1);
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar(v).unwrap_or_default());
        }
    }
}

/// Runs the parsed command and returns the exit code with the text to
/// write to stdout and stderr.
pub fn run(cli: &Cli) -> (i32, String, String) {
    match execute(cli) {
        Ok(o) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&o.report).expect("json values serialize")),
                Format::Text => render_text(&o.report),
            };
            (o.code, text, String::new())
        }
        Err(e) => {
            let code = error_exit_code(&e);
            match cli.format {
                Format::Json => {
                    (code, format!("{}\n", serde_json::to_string_pretty(&error_json(&e)).expect("json values serialize")), String::new())
                }
                Format::Text => (code, String::new(), format!("error [{}]: {e}\n", e.code())),
            }
        }
    }
}
