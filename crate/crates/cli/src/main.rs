use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use e36::classify::solve::render_basis;
use e36::classify::{classification_report, highest_vectors, quasi_singular_space, ListKind};
use e36::dops::{b_op, c_op, d_op, k_op, DOp};
use e36::e510::{check_relations, structure_table, table_to_json, GeneratorId, E510};
use e36::exactalg::scalar::{format_scalar, parse_scalar};
use e36::singular::{
    build_abcd, commutators, proof_comparison, search_singular, singular_vector_in, theta_report, verify_singular,
    CaseId, ThetaSet,
};
use e36::verma::format::{any_from_json, render, to_json, AnyElement, Style};
use e36::verma::{Engine, Family, MElement, VModule};
use e36::Coeff;

#[derive(Parser)]
#[command(name = "e36", version, about = "Exact computations in generalized Verma modules over E(3,6)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the bracket relations, the a, b, c, d calculus and the e0 commutator formulas.
    CheckRelations {
        /// Print every relation, not only the per-family counts.
        #[arg(long)]
        verbose: bool,
        /// Reverse the odd-odd bracket sign (mutation check).
        #[arg(long, hide = true)]
        flip_epsilon: bool,
    },
    /// Write the structure constants as JSON.
    ExportStructureConstants {
        #[arg(long, short)]
        output: Option<String>,
    },
    /// sl3-highest vectors of the exterior part, compared with the lists.
    Highest {
        #[command(flatten)]
        module: ModuleArgs,
        /// Only compute this ldeg (no comparison).
        #[arg(long)]
        ldeg: Option<u32>,
        #[arg(long)]
        published: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Quasi- or semi-singular vectors at bounded sdeg, compared with the lists.
    Classify {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_enum, default_value_t = Kind::Quasi)]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        sdeg_max: u32,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        admissible: bool,
        /// Compare with the lists as printed instead of the amended lists.
        #[arg(long)]
        published: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    #[command(subcommand)]
    Singular(SingularCmd),
    /// Apply a generator or a D-operator to a serialized element.
    Apply {
        /// Generator name (e0, e0minus, f3, dplus1, ...) or D1, D2, D3, B, C, K.
        op: String,
        /// Element JSON file, or - for standard input.
        input: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Render a serialized element as text.
    Render {
        input: String,
        #[arg(long, value_enum, default_value_t = StyleArg::Math)]
        style: StyleArg,
    },
}

#[derive(Subcommand)]
enum SingularCmd {
    /// Verify the vector of one classified case.
    Verify {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 0)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// Use this θ instead of the case's value.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search all singular vectors up to a udeg bound with formal θ.
    Search {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 7)]
        udeg_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    param: u32,
}

impl ModuleArgs {
    fn module(&self) -> VModule {
        match self.family {
            FamilyArg::P => VModule::p(self.param),
            FamilyArg::Q => VModule::q(self.param),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    P,
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Quasi,
    Semi,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    #[value(alias = "paper")]
    Math,
    Plain,
}

/// Outcome of a command that ran: verified or not.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Failed
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::CheckRelations { verbose, flip_epsilon } => Ok(check(verbose, flip_epsilon)),
        Cmd::ExportStructureConstants { output } => {
            let table = structure_table(&E510::standard())?;
            let text = serde_json::to_string_pretty(&table_to_json(&table))? + "\n";
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {path}"))?,
                None => print!("{text}"),
            }
            Ok(Outcome::Ok)
        }
        Cmd::Highest { module, ldeg, published, format } => {
            let v = module.module();
            if let Some(l) = ldeg {
                let spaces = highest_vectors(v, l);
                match format {
                    Format::Text => {
                        println!("sl3-highest vectors of {v}, ldeg {l}");
                        for (w, basis) in &spaces {
                            println!("  wt3 ({},{}) dim {}", w.0, w.1, basis.len());
                            for s in render_basis(basis) {
                                println!("    {s}");
                            }
                        }
                    }
                    Format::Json => print_json(&json!(spaces
                        .iter()
                        .map(|(w, b)| json!({"wt3": [w.0, w.1], "basis": b.iter().map(to_json).collect::<Vec<_>>()}))
                        .collect::<Vec<_>>())),
                }
                return Ok(Outcome::Ok);
            }
            report(classification_report(ListKind::Highest, v, 0, published), format)
        }
        Cmd::Classify { module, kind, sdeg_max, admissible, published, format } => {
            let v = module.module();
            let list = match (kind, admissible) {
                (Kind::Quasi, true) => ListKind::Quasi,
                (Kind::Semi, true) => ListKind::Semi,
                (Kind::Semi, false) => ListKind::FullSemi,
                (Kind::Quasi, false) => {
                    // no list to compare with: print the computed space
                    let space = quasi_singular_space(v, sdeg_max, false);
                    match format {
                        Format::Text => {
                            println!("quasi-singular vectors of {v}, sdeg ≤ {sdeg_max}, all wt2");
                            for (c, basis) in &space {
                                println!("  {c} dim {}", basis.len());
                                for s in render_basis(basis) {
                                    println!("    {s}");
                                }
                            }
                        }
                        Format::Json => print_json(&json!(space
                            .iter()
                            .map(|(c, b)| json!({"cell": c.to_string(), "basis": b.iter().map(to_json).collect::<Vec<_>>()}))
                            .collect::<Vec<_>>())),
                    }
                    return Ok(Outcome::Ok);
                }
            };
            report(classification_report(list, v, sdeg_max, published), format)
        }
        Cmd::Singular(SingularCmd::Verify { case, p, q, r, theta, format }) => singular_verify(&case, p, q, r, theta, format),
        Cmd::Singular(SingularCmd::Search { module, r, udeg_max, format }) => {
            let res = search_singular(module.module(), r, udeg_max);
            match format {
                Format::Text => print!("{}", res.to_text()),
                Format::Json => print_json(&res.to_json()),
            }
            Ok(outcome(res.complete()))
        }
        Cmd::Apply { op, input, shift, format } => {
            let el = any_from_json(&read_json(&input)?)?;
            let out = match el {
                AnyElement::Scalar(m) => apply(&op, shift, &m, format)?,
                AnyElement::Theta(m) => apply(&op, shift, &m, format)?,
            };
            print!("{out}");
            Ok(Outcome::Ok)
        }
        Cmd::Render { input, style } => {
            let style = match style {
                StyleArg::Math => Style::Math,
                StyleArg::Plain => Style::Plain,
            };
            let text = match any_from_json(&read_json(&input)?)? {
                AnyElement::Scalar(m) => render(&m, style),
                AnyElement::Theta(m) => render(&m, style),
            };
            println!("{text}");
            Ok(Outcome::Ok)
        }
    }
}

fn report(r: e36::classify::ClassificationReport, format: Format) -> Result<Outcome> {
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => {
            let mut v = serde_json::to_value(&r)?;
            v["all_match"] = json!(r.all_match());
            print_json(&v);
        }
    }
    Ok(outcome(r.all_match()))
}

fn check(verbose: bool, flip_epsilon: bool) -> Outcome {
    let alg = if flip_epsilon { E510::with_flipped_epsilon() } else { E510::standard() };
    let rep = check_relations(&alg);
    let mut ok = rep.all_ok();
    if verbose {
        print!("{rep}");
    }
    for (family, total, passed) in rep.families() {
        println!("{family}: {passed}/{total} {}", if passed == total { "OK" } else { "FAIL" });
    }
    for c in rep.failures() {
        println!("  FAIL {} = {} (expected {})", c.statement, c.computed, c.expected);
    }
    for c in rep.checks.iter().filter(|c| c.note.is_some()) {
        println!("  note: {}: {}", c.statement, c.note.unwrap_or_default());
    }

    let rels = match build_abcd() {
        Ok(q) => q.relations(),
        Err(e) => {
            println!("abcd: {e}");
            return Outcome::Failed;
        }
    };
    let mut groups: Vec<&str> = Vec::new();
    for r in &rels {
        if !groups.contains(&r.group) {
            groups.push(r.group);
        }
    }
    for g in groups {
        let (n, k) = rels.iter().filter(|r| r.group == g).fold((0, 0), |(n, k), r| (n + 1, k + r.holds as usize));
        println!("abcd {g}: {k}/{n} {}", if k == n { "OK" } else { "FAIL" });
        ok &= k == n;
    }
    let comm = commutators::check_all();
    let k = comm.iter().filter(|(_, h)| *h).count();
    println!("e0 commutators: {k}/{} {}", comm.len(), if k == comm.len() { "OK" } else { "FAIL" });
    for (name, h) in &comm {
        if verbose || !h {
            println!("  [{}] {name}", if *h { "ok" } else { "FAIL" });
        }
    }
    ok &= k == comm.len();
    outcome(ok)
}

fn singular_verify(case: &str, p: u32, q: u32, r: u32, theta: Option<String>, format: Format) -> Result<Outcome> {
    let case: CaseId = case.parse()?;
    if p > 0 && q > 0 {
        bail!("give at most one of --p and --q");
    }
    let v = match (case.family(), q) {
        (Family::Partial, _) | (_, 1..) => VModule::q(q),
        _ => VModule::p(p),
    };
    let theta = match theta {
        Some(t) => parse_scalar(&t).map_err(|e| anyhow!("bad θ {t}: {e}"))?,
        None => case.theta(r),
    };
    let m = singular_vector_in(case, v, r, theta.clone())?;
    let ver = verify_singular(&m);
    let rep = theta_report(case, v, r)?;
    let verified = match &rep.verified {
        ThetaSet::Any => "any".to_string(),
        ThetaSet::Values(vs) => vs.iter().map(format_scalar).collect::<Vec<_>>().join(", "),
    };
    let verified_text = match &rep.verified {
        ThetaSet::Any => "any".to_string(),
        ThetaSet::Values(vs) => vs.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "),
    };
    let proof = proof_comparison(case).filter(|_| r == 1);
    match format {
        Format::Text => {
            println!("case {case} in {v} ⊗ T(r={r}, θ={theta})");
            println!("  vector: {}", render(&m, Style::Math));
            if let Some(w) = &ver.weight {
                println!("  weight: wt3 ({},{}) wt2 {} y {}", w.wt3.0, w.wt3.1, w.wt2, w.wt1);
            }
            println!("  printed θ {}, singular for θ ∈ {{{verified_text}}}{}", rep.printed, if rep.agrees() { "" } else { "  (differs)" });
            if let Some(pc) = &proof {
                let ratio = pc.ratio.as_ref().map_or("not proportional".into(), |x| x.to_string());
                println!("  v2 + v3 of the case analysis = {ratio} × vector");
            }
            for f in &ver.failures {
                println!("  {} ≠ 0: {}", f.op, f.rendered);
            }
            println!("{}", if ver.singular { "singular" } else { "NOT singular" });
        }
        Format::Json => print_json(&json!({
            "case": case.to_string(),
            "module": v.to_string(),
            "r": r,
            "theta": format_scalar(&theta),
            "vector": to_json(&m),
            "singular": ver.singular,
            "weight": ver.weight.as_ref().map(|w| json!({"wt3": [w.wt3.0, w.wt3.1], "wt2": w.wt2, "y": format_scalar(&w.wt1)})),
            "printed_theta": format_scalar(&rep.printed),
            "verified_theta": verified,
            "proof_ratio": proof.and_then(|p| p.ratio).map(|x| format_scalar(&x)),
            "failures": ver.failures.iter().map(|f| json!({"op": f.op, "residual": to_json(&f.residual), "rendered": f.rendered})).collect::<Vec<_>>(),
        })),
    }
    Ok(outcome(ver.singular))
}

fn read_json(path: &str) -> Result<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    serde_json::from_str(&text).context("malformed JSON")
}

fn operator(name: &str, shift: i64) -> Result<DOp> {
    Ok(match name {
        "D1" => d_op(1, shift),
        "D2" => d_op(2, shift),
        "D3" => d_op(3, shift),
        "B" => b_op(),
        "C" => c_op(),
        "K" => k_op(shift),
        _ => DOp::gen(name.parse::<GeneratorId>().map_err(|_| anyhow!("unknown operator {name}"))?),
    })
}

fn apply<C: Coeff>(op: &str, shift: i64, m: &MElement<C>, format: Format) -> Result<String> {
    let out = operator(op, shift)?.apply(Engine::standard(), m);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&to_json(&out))? + "\n",
        Format::Text => render(&out, Style::Math) + "\n",
    })
}
