//! Command-line front end for exact diagram-algebra computations: diagram
//! enumeration and multiplication, tensor actions, weight combinatorics, and
//! verified decompositions of tensor space.
//!
//! Output is deterministic for fixed flags. Exit codes: 0 on success, 1 when
//! a verification fails, 2 on usage or validation errors.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use brauer::decomposition::{
    full_decomposition, iso_check, CheckMode, Context, DecompositionReport,
};
use brauer::diagrams::{
    diagram_multiply, enumerate_diagrams_capped, BrauerDiagram, DEFAULT_ENUMERATION_CAP,
};
use brauer::perm::Permutation;
use brauer::scalars::{delta_parameter, FieldSpec, FormKind, Scalar};
use brauer::tensor_action::{
    act, format_vector, parse_vector, representation_property, FormSpec, DENSE_CAP,
};
use brauer::weights::{
    dim_n, dominant_representative, fiber, image_weights, OrthWeight, SignedPermutation,
};

#[derive(Parser)]
#[command(
    name = "brauer",
    about = "Exact diagram algebras acting on tensor space",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List every diagram on r strands as a canonical edge list
    Diagrams {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
    /// Multiply two diagrams and evaluate the deleted-cycle factor
    Mul {
        #[arg(long)]
        r: usize,
        /// First factor, e.g. "0-1,2-3"
        #[arg(long)]
        d1: String,
        /// Second factor
        #[arg(long)]
        d2: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
    /// Apply an algebra element to a vector on the right
    Act {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        form: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Vector as ";"-separated terms "i1,...,ir:coeff"
        #[arg(long)]
        vector: String,
        /// Element as ";"-separated terms "edge-list:coeff"
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
    /// List the orthogonal weights for (n, r) with dimensions and orbits
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
    /// List the compositions lying over an orthogonal weight
    Fibers {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Weight such as "1,-2" (append ";parity=1" for odd n if desired)
        #[arg(long)]
        xi: String,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
    /// Decompose tensor space into weight summands and verify invariance
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        form: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Check against every diagram instead of the generators only
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
    /// Batch verification over a grid of (n, r, form, char) settings
    Verify {
        #[arg(long = "n", value_delimiter = ',', default_values_t = vec![2usize, 3, 4, 5])]
        n_list: Vec<usize>,
        #[arg(long = "r", value_delimiter = ',', default_values_t = vec![1usize, 2, 3, 4])]
        r_list: Vec<usize>,
        #[arg(long = "forms", value_delimiter = ',', default_values_t = vec!["symmetric".to_string(), "skew".to_string()])]
        forms: Vec<String>,
        #[arg(long = "chars", value_delimiter = ',', default_values_t = vec![0u64, 2, 3, 5, 7])]
        chars: Vec<u64>,
        #[arg(long, value_enum, default_value = "table")]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn enumeration_cap() -> u64 {
    std::env::var("BRAUER_MAX_DIAGRAMS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

fn parse_form(s: &str) -> Result<FormKind, String> {
    FormKind::from_str(s).map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Diagrams { r, output } => cmd_diagrams(r, output),
        Command::Mul {
            r,
            d1,
            d2,
            form,
            n,
            characteristic,
            output,
        } => cmd_mul(r, &d1, &d2, &form, n, characteristic, output),
        Command::Act {
            n,
            r,
            form,
            characteristic,
            vector,
            element,
            output,
        } => cmd_act(n, r, &form, characteristic, &vector, &element, output),
        Command::Weights { n, r, output } => cmd_weights(n, r, output),
        Command::Fibers { n, r, xi, output } => cmd_fibers(n, r, &xi, output),
        Command::Decompose {
            n,
            r,
            form,
            characteristic,
            exhaustive,
            output,
        } => cmd_decompose(n, r, &form, characteristic, exhaustive, output),
        Command::Verify {
            n_list,
            r_list,
            forms,
            chars,
            output,
        } => cmd_verify(&n_list, &r_list, &forms, &chars, output),
    }
}

fn cmd_diagrams(r: usize, output: Output) -> Result<ExitCode, String> {
    let all = enumerate_diagrams_capped(r, enumeration_cap()).map_err(|e| e.to_string())?;
    match output {
        Output::Table => {
            for d in &all {
                println!("{d}");
            }
        }
        Output::Json => {
            let strs: Vec<String> = all.iter().map(|d| d.to_string()).collect();
            println!("{}", serde_json::to_string_pretty(&strs).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_mul(
    r: usize,
    d1: &str,
    d2: &str,
    form: &str,
    n: usize,
    characteristic: u64,
    output: Output,
) -> Result<ExitCode, String> {
    let kind = parse_form(form)?;
    let field = FieldSpec::new(characteristic).map_err(|e| e.to_string())?;
    let d1: BrauerDiagram = d1.parse().map_err(|e: brauer::DiagramError| e.to_string())?;
    let d2: BrauerDiagram = d2.parse().map_err(|e: brauer::DiagramError| e.to_string())?;
    if d1.r() != r || d2.r() != r {
        return Err(format!(
            "diagrams have ranks {} and {}, expected {r}",
            d1.r(),
            d2.r()
        ));
    }
    let delta = delta_parameter(kind, n, field).map_err(|e| e.to_string())?;
    let prod = diagram_multiply(&d1, &d2).map_err(|e| e.to_string())?;
    let scale = delta.pow(prod.cycles as u64);
    match output {
        Output::Table => println!("{scale} * {}", prod.diagram),
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "scalar": scale.to_string(),
                "cycles": prod.cycles,
                "diagram": prod.diagram.to_string(),
            }))
            .unwrap()
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_act(
    n: usize,
    r: usize,
    form: &str,
    characteristic: u64,
    vector: &str,
    element: &str,
    output: Output,
) -> Result<ExitCode, String> {
    let kind = parse_form(form)?;
    let field = FieldSpec::new(characteristic).map_err(|e| e.to_string())?;
    let form = FormSpec::new(kind, n, field).map_err(|e| e.to_string())?;
    let vector = parse_vector(vector, r, n, field).map_err(|e| e.to_string())?;
    let mut parsed: Vec<(BrauerDiagram, Scalar)> = Vec::new();
    for term in element.split(';') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let (edges, coeff) = term
            .rsplit_once(':')
            .ok_or_else(|| format!("bad element term {term:?}, expected \"edges:coeff\""))?;
        let d: BrauerDiagram = edges
            .parse()
            .map_err(|e: brauer::DiagramError| e.to_string())?;
        if d.r() != r {
            return Err(format!("diagram {edges} has rank {}, expected {r}", d.r()));
        }
        let c = Scalar::parse(coeff, field).map_err(|e| e.to_string())?;
        parsed.push((d, c));
    }
    let result = act(&vector, &parsed, &form).map_err(|e| e.to_string())?;
    match output {
        Output::Table => println!("{}", format_vector(&result)),
        Output::Json => {
            let terms: Vec<serde_json::Value> = result
                .iter()
                .map(|(t, c)| json!([t.to_string(), c.to_string()]))
                .collect();
            println!("{}", serde_json::to_string_pretty(&terms).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_weights(n: usize, r: usize, output: Output) -> Result<ExitCode, String> {
    let weights = image_weights(n, r);
    let mut rows = Vec::new();
    for xi in &weights {
        let dim = dim_n(xi, n, r).map_err(|e| e.to_string())?;
        let size = fiber(xi, n, r).map_err(|e| e.to_string())?.len();
        rows.push((xi.clone(), dominant_representative(xi), size, dim));
    }
    match output {
        Output::Table => {
            println!("{:<16} {:<16} {:>10} {:>10}", "xi", "dominant", "fiber", "dim");
            for (xi, dom, size, dim) in &rows {
                println!("{:<16} {:<16} {:>10} {:>10}", xi.to_string(), dom.to_string(), size, dim);
            }
        }
        Output::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(xi, dom, size, dim)| {
                    json!({
                        "xi": xi.entries(),
                        "parity": xi.parity(),
                        "dominant": dom.entries(),
                        "fiber_size": size,
                        "dim": dim.to_string(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fibers(n: usize, r: usize, xi: &str, output: Output) -> Result<ExitCode, String> {
    let xi: OrthWeight = xi.parse().map_err(|e: brauer::WeightError| e.to_string())?;
    let members = fiber(&xi, n, r).map_err(|e| e.to_string())?;
    match output {
        Output::Table => {
            for lambda in &members {
                println!("{lambda}");
            }
        }
        Output::Json => {
            let items: Vec<Vec<usize>> =
                members.iter().map(|c| c.parts().to_vec()).collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report_table(report: &DecompositionReport) {
    println!(
        "n = {}, r = {}, form = {}, char = {}",
        report.n, report.r, report.form, report.characteristic
    );
    println!(
        "{:<16} {:>6} {:<10} {:>6} {:>6}  verified",
        "xi", "parity", "dominant", "dim", "fiber"
    );
    for s in &report.summands {
        let xi = s
            .xi
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let dom = s
            .dominant
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let parity = s.parity.map_or("-".to_string(), |p| p.to_string());
        println!(
            "{:<16} {:>6} {:<10} {:>6} {:>6}  {}",
            xi, parity, dom, s.dim, s.fiber_size, s.verified
        );
    }
    println!("total_dim = {}", report.total_dim);
}

fn cmd_decompose(
    n: usize,
    r: usize,
    form: &str,
    characteristic: u64,
    exhaustive: bool,
    output: Output,
) -> Result<ExitCode, String> {
    let kind = parse_form(form)?;
    let field = FieldSpec::new(characteristic).map_err(|e| e.to_string())?;
    let mode = if exhaustive {
        CheckMode::AllDiagrams
    } else {
        CheckMode::Generators
    };
    let report = full_decomposition(Context::new(n, r, kind), field, mode)
        .map_err(|e| e.to_string())?;
    match output {
        Output::Table => print_report_table(&report),
        Output::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
    }
    Ok(if report.all_verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct VerifyCell {
    n: usize,
    r: usize,
    form: FormKind,
    #[serde(rename = "char")]
    characteristic: u64,
    status: String,
    note: Option<String>,
    decomposition: Option<bool>,
    isomorphisms: Option<bool>,
    representation: Option<bool>,
}

fn hyperoctahedral_generators(l: usize) -> Vec<SignedPermutation> {
    let mut gens = Vec::new();
    for i in 1..=l {
        gens.push(SignedPermutation::entry_negation(l, i).expect("in range"));
    }
    for i in 1..l {
        gens.push(SignedPermutation::entry_permutation(
            Permutation::transposition(l, i, i + 1).expect("in range"),
        ));
    }
    gens
}

fn verify_cell(n: usize, r: usize, kind: FormKind, characteristic: u64) -> VerifyCell {
    let mut cell = VerifyCell {
        n,
        r,
        form: kind,
        characteristic,
        status: "pass".to_string(),
        note: None,
        decomposition: None,
        isomorphisms: None,
        representation: None,
    };
    if kind == FormKind::Skew && n % 2 != 0 {
        cell.status = "excluded".to_string();
        cell.note = Some("skew form needs even n".to_string());
        return cell;
    }
    if kind == FormKind::Symmetric && characteristic == 2 {
        cell.status = "excluded".to_string();
        cell.note = Some("symmetric form excludes characteristic 2".to_string());
        return cell;
    }
    if (n as u128).pow(r as u32) > DENSE_CAP as u128 {
        cell.status = "skipped".to_string();
        cell.note = Some(format!("n^r exceeds the dense cap of {DENSE_CAP}"));
        return cell;
    }
    let field = FieldSpec::new(characteristic).expect("validated");
    let ctx = Context::new(n, r, kind);

    let decomposition = match full_decomposition(ctx, field, CheckMode::Generators) {
        Ok(report) => report.all_verified(),
        Err(_) => false,
    };
    cell.decomposition = Some(decomposition);

    if n <= 4 && r <= 3 {
        let mut all_iso = true;
        for xi in image_weights(n, r) {
            for w in hyperoctahedral_generators(n / 2) {
                match iso_check(&xi, &w, ctx, field) {
                    Ok(true) => {}
                    _ => all_iso = false,
                }
            }
        }
        cell.isomorphisms = Some(all_iso);
    }

    if (2..=3).contains(&r) && n <= 4 {
        let form = FormSpec::new(kind, n, field).expect("validated");
        let rep = matches!(representation_property(r, &form), Ok(None));
        cell.representation = Some(rep);
    }

    let all_ok = [cell.decomposition, cell.isomorphisms, cell.representation]
        .into_iter()
        .flatten()
        .all(|b| b);
    cell.status = if all_ok { "pass" } else { "fail" }.to_string();
    cell
}

fn cmd_verify(
    n_list: &[usize],
    r_list: &[usize],
    forms: &[String],
    chars: &[u64],
    output: Output,
) -> Result<ExitCode, String> {
    let mut kinds = Vec::new();
    for f in forms {
        kinds.push(parse_form(f)?);
    }
    for &c in chars {
        FieldSpec::new(c).map_err(|e| e.to_string())?;
    }
    let mut cells = Vec::new();
    let mut sorted_n = n_list.to_vec();
    sorted_n.sort_unstable();
    sorted_n.dedup();
    let mut sorted_r = r_list.to_vec();
    sorted_r.sort_unstable();
    sorted_r.dedup();
    let mut sorted_chars = chars.to_vec();
    sorted_chars.sort_unstable();
    sorted_chars.dedup();
    for &n in &sorted_n {
        for &r in &sorted_r {
            for &kind in &kinds {
                for &c in &sorted_chars {
                    cells.push(verify_cell(n, r, kind, c));
                }
            }
        }
    }
    let failed = cells.iter().any(|c| c.status == "fail");
    match output {
        Output::Table => {
            println!(
                "{:>3} {:>3} {:<10} {:>5} {:<7} {:<7} {:<7} {:<9} note",
                "n", "r", "form", "char", "decomp", "iso", "rep", "status"
            );
            let show = |b: Option<bool>| match b {
                None => "-".to_string(),
                Some(true) => "ok".to_string(),
                Some(false) => "FAIL".to_string(),
            };
            for c in &cells {
                println!(
                    "{:>3} {:>3} {:<10} {:>5} {:<7} {:<7} {:<7} {:<9} {}",
                    c.n,
                    c.r,
                    c.form.to_string(),
                    c.characteristic,
                    show(c.decomposition),
                    show(c.isomorphisms),
                    show(c.representation),
                    c.status,
                    c.note.as_deref().unwrap_or("")
                );
            }
        }
        Output::Json => println!("{}", serde_json::to_string_pretty(&cells).unwrap()),
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
