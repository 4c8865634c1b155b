use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dimon::certify::certify_rank;
use dimon::engine::{d_classes_by_rank, GreenDecomposition};
use dimon::export::export_to;
use dimon::verify::{run_all, Status, VerifyOptions};
use dimon::{
    card, classify, close_with_workers, factorize, green_structural, rank_formula, standard_generators, Error,
    ExportFormat, GreenRelation, MonoidKind, PartialPerm,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "dimon", version, about = "Exact computations in dihedral inverse monoids")]
struct Cli {
    /// Print a JSON payload instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cardinality from the closed formula, optionally checked by enumeration.
    Card {
        #[arg(value_parser = parse_kind)]
        kind: MonoidKind,
        n: usize,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write the sorted element list.
    Enumerate {
        #[arg(value_parser = parse_kind)]
        kind: MonoidKind,
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        gzip: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Green's classes: count and size histogram.
    Greens {
        #[arg(value_parser = parse_kind)]
        kind: MonoidKind,
        n: usize,
        #[arg(long, value_enum, default_value_t = Relation::J)]
        relation: Relation,
        /// Break J-classes down by rank.
        #[arg(long)]
        by_rank: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Membership in DI, ODI, MDI and OPDI, with order flags.
    Classify { element: String },
    /// Dihedral permutations extending an element.
    Extensions { element: String },
    /// Word over the standard generators, with its round-trip check.
    Factorize {
        #[arg(value_parser = parse_kind)]
        kind: MonoidKind,
        element: String,
    },
    /// The standard generating set.
    Gens {
        #[arg(value_parser = parse_kind)]
        kind: MonoidKind,
        n: usize,
    },
    /// Rank formula, optionally certified by upper and lower bounds.
    Rank {
        #[arg(value_parser = parse_kind)]
        kind: MonoidKind,
        n: usize,
        #[arg(long)]
        certify: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Perturb the cardinality formula (exercises the failure path).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Txt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    #[value(name = "J", alias = "j", alias = "D", alias = "d")]
    J,
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "H", alias = "h")]
    H,
}

fn parse_kind(s: &str) -> Result<MonoidKind, String> {
    s.parse::<MonoidKind>().map_err(|e| e.to_string())
}

/// Failure modes mapped to exit codes 1 and 2.
enum Failure {
    Verification(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Input(err)
    }
}

type Outcome = Result<(), Failure>;

fn workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn require_n(n: usize) -> Result<(), Error> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    Ok(())
}

fn element(text: &str) -> Result<PartialPerm, Error> {
    let alpha: PartialPerm = text.parse()?;
    require_n(alpha.n())?;
    Ok(alpha)
}

fn emit(json: bool, payload: serde_json::Value, plain: impl FnOnce() -> String) {
    if json {
        let mut payload = payload;
        payload["schema_version"] = json!(SCHEMA_VERSION);
        println!("{payload}");
    } else {
        print!("{}", plain());
    }
}

fn cmd_card(json: bool, kind: MonoidKind, n: usize, enumerate: bool, w: Option<usize>) -> Outcome {
    let formula = card(kind, n)?;
    if !enumerate {
        emit(
            json,
            json!({"kind": kind, "n": n, "formula": formula.to_string()}),
            || format!("formula={formula}\n"),
        );
        return Ok(());
    }
    let gens = standard_generators(kind, n)?;
    let enumerated = close_with_workers(n, &gens.values(), workers(w))?.len() as u128;
    let pass = enumerated == formula;
    let verdict = if pass { "PASS" } else { "FAIL" };
    emit(
        json,
        json!({"kind": kind, "n": n, "formula": formula.to_string(), "enumerated": enumerated.to_string(), "pass": pass}),
        || format!("formula={formula} enumerated={enumerated} {verdict}\n"),
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{kind}_{n}: formula {formula} != enumerated {enumerated}"
        )))
    }
}

fn cmd_enumerate(
    kind: MonoidKind,
    n: usize,
    out: Option<PathBuf>,
    format: Format,
    gzip: bool,
    w: Option<usize>,
) -> Outcome {
    require_n(n)?;
    let gens = standard_generators(kind, n)?;
    let monoid = close_with_workers(n, &gens.values(), workers(w))?;
    let format = match format {
        Format::Jsonl => ExportFormat::Jsonl,
        Format::Txt => ExportFormat::Txt,
    };
    match out {
        Some(path) => {
            let file = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            export_to(BufWriter::new(file), monoid.elements(), format, gzip)?;
        }
        None => export_to(io::stdout().lock(), monoid.elements(), format, gzip)?,
    }
    Ok(())
}

fn histogram(classes: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for s in sizes {
        match out.last_mut() {
            Some((size, count)) if *size == s => *count += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn cmd_greens(json: bool, kind: MonoidKind, n: usize, relation: Relation, by_rank: bool, w: Option<usize>) -> Outcome {
    require_n(n)?;
    let gens = standard_generators(kind, n)?;
    let monoid = close_with_workers(n, &gens.values(), workers(w))?;
    let green: GreenDecomposition = green_structural(&monoid)?;
    // J = D in a finite monoid
    let (name, rel) = match relation {
        Relation::J => ("J", GreenRelation::D),
        Relation::L => ("L", GreenRelation::L),
        Relation::R => ("R", GreenRelation::R),
        Relation::H => ("H", GreenRelation::H),
    };
    let classes = green.classes(rel);
    let hist = histogram(classes);
    let ranks = d_classes_by_rank(&monoid, &green);
    let payload = json!({
        "kind": kind,
        "n": n,
        "relation": name,
        "elements": monoid.len(),
        "classes": classes.len(),
        "histogram": hist.iter().map(|(s, c)| json!({"size": s, "count": c})).collect::<Vec<_>>(),
        "j_classes_by_rank": ranks.iter().map(|(r, c, sizes)| json!({"rank": r, "classes": c, "sizes": sizes})).collect::<Vec<_>>(),
    });
    emit(json, payload, || {
        let mut s = format!(
            "kind={kind} n={n} relation={name} elements={} classes={}\n",
            monoid.len(),
            classes.len()
        );
        if by_rank {
            s.push_str("rank,classes,class_sizes\n");
            for (rank, count, sizes) in &ranks {
                let sizes: Vec<String> = sizes.iter().map(ToString::to_string).collect();
                s.push_str(&format!("{rank},{count},{}\n", sizes.join(" ")));
            }
        } else {
            s.push_str("size,count\n");
            for (size, count) in &hist {
                s.push_str(&format!("{size},{count}\n"));
            }
        }
        s
    });
    Ok(())
}

fn cmd_classify(json: bool, text: &str) -> Outcome {
    let alpha = element(text)?;
    let report = classify(&alpha);
    let flags = alpha.classify_order();
    let exts: Vec<String> = report.extensions.iter().map(ToString::to_string).collect();
    emit(
        json,
        json!({"element": alpha.to_string(), "membership": report, "order": flags}),
        || {
            format!(
                "element={alpha}\nin_DI={}\nin_ODI={}\nin_MDI={}\nin_OPDI={}\norder_preserving={}\norder_reversing={}\norientation_preserving={}\norientation_reversing={}\nextensions={}\n",
                report.in_di,
                report.in_odi,
                report.in_mdi,
                report.in_opdi,
                flags.order_preserving,
                flags.order_reversing,
                flags.orientation_preserving,
                flags.orientation_reversing,
                exts.join(" "),
            )
        },
    );
    Ok(())
}

fn cmd_extensions(json: bool, text: &str) -> Outcome {
    let alpha = element(text)?;
    let exts = dimon::extensions(&alpha);
    emit(
        json,
        json!({"element": alpha.to_string(), "count": exts.len(), "extensions": exts}),
        || {
            let mut s = format!("count={}\n", exts.len());
            for e in &exts {
                s.push_str(&format!("{e}\n"));
            }
            s
        },
    );
    Ok(())
}

fn cmd_factorize(json: bool, kind: MonoidKind, text: &str) -> Outcome {
    let alpha = element(text)?;
    let word = factorize(&alpha, kind)?;
    let value = word.evaluate(alpha.n())?;
    let pass = value == alpha;
    let verdict = if pass { "PASS" } else { "FAIL" };
    emit(
        json,
        json!({"kind": kind, "element": alpha.to_string(), "word": word.to_string(), "length": word.len(), "evaluates_to": value.to_string(), "roundtrip": pass}),
        || {
            format!(
                "word={word}\nlength={}\nevaluates_to={value}\nroundtrip={verdict}\n",
                word.len()
            )
        },
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{word} evaluates to {value}, not {alpha}"
        )))
    }
}

fn cmd_gens(json: bool, kind: MonoidKind, n: usize) -> Outcome {
    let gens = standard_generators(kind, n)?;
    let rows: Vec<(String, String)> = gens
        .names()
        .zip(gens.values())
        .map(|(g, v)| (g.to_string(), v.to_string()))
        .collect();
    emit(
        json,
        json!({"kind": kind, "n": n, "generators": rows.iter().map(|(g, v)| json!({"name": g, "element": v})).collect::<Vec<_>>()}),
        || {
            let mut s = String::from("name,element\n");
            for (g, v) in &rows {
                s.push_str(&format!("{g},{v}\n"));
            }
            s
        },
    );
    Ok(())
}

fn cmd_rank(json: bool, kind: MonoidKind, n: usize, certify: bool) -> Outcome {
    let rank = rank_formula(kind, n)?;
    if !certify {
        emit(json, json!({"kind": kind, "n": n, "rank": rank}), || {
            format!("rank={rank}\n")
        });
        return Ok(());
    }
    let report = certify_rank(kind, n)?;
    let verdict = if report.certified { "CERTIFIED" } else { "UNCERTIFIED" };
    emit(json, json!({"report": report}), || {
        format!(
            "rank={rank} {verdict}\nmethod={}\nupper_bound={}\nlower_bound={}\nstandard_set_size={}\n",
            report.method, report.upper_bound, report.lower_bound, report.standard_set_size
        )
    });
    if report.certified {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{kind}_{n}: rank {rank} not certified")))
    }
}

fn cmd_verify(json: bool, max_n: usize, inject_fault: bool) -> Outcome {
    let options = VerifyOptions { max_n, inject_fault };
    let outcomes = run_all(options, |o| {
        if !json {
            let tag = match o.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            println!(
                "{tag} {:>2} {} ({} ms): {}",
                o.id,
                o.name,
                o.elapsed.as_millis(),
                o.detail
            );
            let _ = io::stdout().flush();
        }
    })?;
    let first_failure = outcomes.iter().find(|o| o.status == Status::Fail);
    if json {
        emit(true, json!({"max_n": max_n, "criteria": outcomes}), String::new);
    }
    match first_failure {
        None => Ok(()),
        Some(o) => Err(Failure::Verification(format!("criterion {}: {}", o.id, o.detail))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let result = match cli.command {
        Command::Card {
            kind,
            n,
            enumerate,
            workers,
        } => cmd_card(json, kind, n, enumerate, workers),
        Command::Enumerate {
            kind,
            n,
            out,
            format,
            gzip,
            workers,
        } => cmd_enumerate(kind, n, out, format, gzip, workers),
        Command::Greens {
            kind,
            n,
            relation,
            by_rank,
            workers,
        } => cmd_greens(json, kind, n, relation, by_rank, workers),
        Command::Classify { element } => cmd_classify(json, &element),
        Command::Extensions { element } => cmd_extensions(json, &element),
        Command::Factorize { kind, element } => cmd_factorize(json, kind, &element),
        Command::Gens { kind, n } => cmd_gens(json, kind, n),
        Command::Rank { kind, n, certify } => cmd_rank(json, kind, n, certify),
        Command::Verify { max_n, inject_fault } => cmd_verify(json, max_n, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
