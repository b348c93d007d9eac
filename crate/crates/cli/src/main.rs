mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kohnsym::algebra::{bracket, structure_constants, StructureConstants};
use kohnsym::ansatz::{beta_kernel, classify, stability_scan, Classification};
use kohnsym::determining::{
    check_dependencies, derive_determining, reduced_in_terms_of_nine, reduced_system,
};
use kohnsym::parse::parse_generator_component;
use kohnsym::poly::{rat_string, Poly};
use kohnsym::verify::{numeric_spot_check, verify_generator};
use kohnsym::{fixtures, Error, FCase, VField};
use report::{defect_terms, GeneratorRecord, Report};
use serde_json::{json, Value};

/// Exact Lie point symmetries of Δu + f(u) = 0 on the Heisenberg group.
#[derive(Debug, Parser)]
#[command(name = "kohnsym", version)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derive the determining system and check its dependencies.
    Determine {
        /// Show the seven-equation reduced system instead.
        #[arg(long)]
        reduced: bool,
    },
    /// Exact symmetry test of one generator.
    Verify {
        #[arg(long)]
        f: String,
        /// A name (T, R, Xt, Yt, Z1, Z2, Z3, Z:<p>, V1, V2, V3) or `xi,phi,tau,alpha,beta`.
        #[arg(long)]
        gen: String,
    },
    /// Solve for the polynomial symmetry algebra.
    Classify {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Re-solve at every degree up to this one and report the dimensions.
        #[arg(long)]
        scan: Option<u32>,
    },
    /// Polynomial solutions β of Δβ + kβ = 0.
    BetaKernel {
        #[arg(long)]
        f: String,
        #[arg(long)]
        degree: u32,
    },
    /// Commutator of two generators.
    Bracket {
        #[arg(long)]
        gen1: String,
        #[arg(long)]
        gen2: String,
        /// Also verify the result against this nonlinearity.
        #[arg(long)]
        f: Option<String>,
    },
    /// Commutator table of the classified algebra.
    Table {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Numeric check of the symmetry condition on random polynomial data.
    SpotCheck {
        #[arg(long)]
        f: String,
        #[arg(long)]
        gen: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Defaults to $KS_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    /// Usage or parse error; exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(Report, bool), Failure>;

fn parse_f(src: &str) -> Result<FCase, Failure> {
    Ok(FCase::parse(src)?)
}

fn parse_gen(src: &str) -> Result<VField, Failure> {
    if let Some(v) = fixtures::named(src) {
        return Ok(v);
    }
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 5 {
        return Err(Failure::Usage(format!(
            "`{src}` is neither a named generator ({}) nor five comma-separated components",
            fixtures::NAMES.join(", ")
        )));
    }
    let mut comps = parts
        .into_iter()
        .map(|p| parse_generator_component(p.trim()));
    let mut next = || comps.next().expect("five parts");
    Ok(VField::new(next()?, next()?, next()?, next()?, next()?)?)
}

fn render_combination(sc: &StructureConstants, names: &[String], i: usize, j: usize) -> String {
    let terms = sc.bracket_of(i, j);
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(k, c)| format!("({})*{}", rat_string(c), names[*k]))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn classified_records(
    c: &Classification,
    fc: &FCase,
) -> (Vec<(String, VField)>, Vec<GeneratorRecord>) {
    let named = c.labelled();
    let records = named
        .iter()
        .map(|(n, v)| GeneratorRecord::new(n, v, Some(verify_generator(v, fc).is_symmetry)))
        .collect();
    (named, records)
}

fn determine(reduced: bool) -> Outcome {
    let mut r = Report::new("determine");
    let sys = if reduced {
        reduced_system()
    } else {
        derive_determining()
    };
    let eqs: Vec<Value> = sys
        .equations
        .iter()
        .map(|(l, e)| json!({"label": l, "equation": e.canonical_string()}))
        .collect();
    r.lines
        .extend(sys.equations.iter().map(|(l, e)| format!("{l}: {e} = 0")));
    r.extra.insert("equations", Value::Array(eqs));
    if reduced {
        let via: Vec<Value> = reduced_in_terms_of_nine()
            .into_iter()
            .map(|(l, c)| {
                let s = c.map(|c| c.render());
                r.lines.push(format!(
                    "{l} = {}",
                    s.as_deref().unwrap_or("(not a plain combination)")
                ));
                json!({"label": l, "combination": s})
            })
            .collect();
        r.extra.insert("in_terms_of_full_system", Value::Array(via));
    } else {
        let dep = check_dependencies(&sys);
        let literal = dep.literal_residual.canonical_string();
        let utt = dep.utt.as_ref().map(|c| c.render());
        let ut = dep.ut.as_ref().map(|(d, c)| (d, c.render()));
        r.lines.push(format!(
            "y*uxt + x*uyt - x*uyy - y*uxy reproduces utt: {}",
            dep.literal_holds()
        ));
        if !dep.literal_holds() {
            r.lines.push(format!("  residual: {literal}"));
        }
        r.lines.push(format!(
            "utt = {}",
            utt.as_deref().unwrap_or("(no combination)")
        ));
        r.lines.push(format!(
            "ut from uyy, uxy, uxt, uyt alone: {}",
            dep.ut_restricted.is_some()
        ));
        match &ut {
            Some((d, s)) => r.lines.push(format!("ut (multiplier degree {d}) = {s}")),
            None => r.lines.push("ut: no combination".into()),
        }
        r.extra.insert(
            "dependencies",
            json!({
                "literal_utt_relation_holds": dep.literal_holds(),
                "literal_residual": literal,
                "utt": utt,
                "ut_from_four": dep.ut_restricted.as_ref().map(|c| c.render()),
                "ut": ut.map(|(d, s)| json!({"degree": d, "combination": s})),
            }),
        );
    }
    Ok((r, true))
}

fn verify(f: &str, gen: &str) -> Outcome {
    let fc = parse_f(f)?;
    let v = parse_gen(gen)?;
    let verdict = verify_generator(&v, &fc);
    let mut r = Report::new("verify");
    r.f = Some(fc.to_string());
    r.generators
        .push(GeneratorRecord::new(gen, &v, Some(verdict.is_symmetry)));
    r.defect = defect_terms(&verdict.certificate);
    r.lines.push(format!("verdict: {}", verdict.is_symmetry));
    r.extra.insert("verdict", Value::Bool(verdict.is_symmetry));
    Ok((r, verdict.is_symmetry))
}

fn classify_cmd(f: &str, degree: u32, scan: Option<u32>) -> Outcome {
    let fc = parse_f(f)?;
    let c = classify(&fc, degree);
    let mut r = Report::new("classify");
    r.f = Some(fc.to_string());
    r.degree = Some(degree);
    r.dimension = Some(c.dimension());
    let (named, records) = classified_records(&c, &fc);
    r.generators = records;
    let basis: Vec<VField> = named.into_iter().map(|(_, v)| v).collect();
    match structure_constants(&basis) {
        Ok(sc) => {
            r.set_constants(&sc);
            r.extra.insert("closed", Value::Bool(sc.is_closed()));
        }
        Err(e) => r
            .lines
            .push(format!("structure constants unavailable: {e}")),
    }
    r.lines.extend(c.notes.iter().map(|n| format!("note: {n}")));
    r.extra.insert("notes", json!(c.notes));
    if let Some(to) = scan {
        let dims = if to > degree {
            stability_scan(&fc, degree + 1, to)
        } else {
            Vec::new()
        };
        r.lines.extend(
            dims.iter()
                .map(|(d, n)| format!("degree {d}: dimension {n}")),
        );
        let stable = dims.iter().all(|(_, n)| *n == c.dimension());
        r.lines.push(format!("stable: {stable}"));
        r.extra.insert("scan", json!(dims));
        r.extra.insert("stable", Value::Bool(stable));
    }
    Ok((r, true))
}

fn beta_kernel_cmd(f: &str, degree: u32) -> Outcome {
    let fc = parse_f(f)?;
    let ker = beta_kernel(&fc, degree)?;
    let mut r = Report::new("beta-kernel");
    r.f = Some(fc.to_string());
    r.degree = Some(degree);
    r.dimension = Some(ker.len());
    for (i, b) in ker.iter().enumerate() {
        let w = VField::new(
            Poly::zero(),
            Poly::zero(),
            Poly::zero(),
            Poly::zero(),
            b.clone(),
        )?;
        r.generators.push(GeneratorRecord::new(
            format!("W{}", i + 1),
            &w,
            Some(verify_generator(&w, &fc).is_symmetry),
        ));
    }
    Ok((r, true))
}

fn bracket_cmd(g1: &str, g2: &str, f: Option<&str>) -> Outcome {
    let a = parse_gen(g1)?;
    let b = parse_gen(g2)?;
    let fc = f.map(parse_f).transpose()?;
    let c = bracket(&a, &b)?;
    let mut r = Report::new("bracket");
    r.f = fc.as_ref().map(|f| f.to_string());
    let verified = fc.as_ref().map(|fc| verify_generator(&c, fc).is_symmetry);
    r.generators
        .push(GeneratorRecord::new(format!("[{g1}, {g2}]"), &c, verified));
    Ok((r, true))
}

fn table(f: &str, degree: u32) -> Outcome {
    let fc = parse_f(f)?;
    let c = classify(&fc, degree);
    let mut r = Report::new("table");
    r.f = Some(fc.to_string());
    r.degree = Some(degree);
    r.dimension = Some(c.dimension());
    let (named, records) = classified_records(&c, &fc);
    r.generators = records;
    let names: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
    let basis: Vec<VField> = named.into_iter().map(|(_, v)| v).collect();
    let sc = structure_constants(&basis)?;
    r.set_constants(&sc);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            r.lines.push(format!(
                "[{}, {}] = {}",
                names[i],
                names[j],
                render_combination(&sc, &names, i, j)
            ));
        }
    }
    for (i, j, v) in &sc.non_closed {
        r.lines.push(format!(
            "[{}, {}] leaves the span: {v}",
            names[*i], names[*j]
        ));
    }
    r.extra.insert("closed", Value::Bool(sc.is_closed()));
    Ok((r, true))
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var("KS_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("KS_SEED=`{s}` is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn spot_check(f: &str, gen: &str, trials: usize, seed: Option<u64>) -> Outcome {
    let fc = parse_f(f)?;
    let v = parse_gen(gen)?;
    let seed = match seed {
        Some(s) => s,
        None => seed_from_env()?,
    };
    let ok = numeric_spot_check(&v, &fc, trials, seed)?;
    let mut r = Report::new("spot-check");
    r.f = Some(fc.to_string());
    r.generators.push(GeneratorRecord::new(gen, &v, None));
    r.lines.push(format!(
        "{trials} trials, seed {seed}: {}",
        if ok { "pass" } else { "fail" }
    ));
    r.extra.insert("trials", json!(trials));
    r.extra.insert("seed", json!(seed));
    r.extra.insert("verdict", Value::Bool(ok));
    Ok((r, ok))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Determine { reduced } => determine(*reduced),
        Command::Verify { f, gen } => verify(f, gen),
        Command::Classify { f, degree, scan } => classify_cmd(f, *degree, *scan),
        Command::BetaKernel { f, degree } => beta_kernel_cmd(f, *degree),
        Command::Bracket { gen1, gen2, f } => bracket_cmd(gen1, gen2, f.as_deref()),
        Command::Table { f, degree } => table(f, *degree),
        Command::SpotCheck {
            f,
            gen,
            trials,
            seed,
        } => spot_check(f, gen, *trials, *seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((r, ok)) => {
            let out = if cli.json { r.json() } else { r.text() };
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout(), "{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("kohnsym: {msg}");
            ExitCode::from(2)
        }
    }
}
