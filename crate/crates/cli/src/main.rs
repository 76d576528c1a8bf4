//! Command-line front end: parse a knot or Brieskorn input, dispatch the
//! invariant pipelines, and print either aligned text or key-sorted JSON.
//!
//! Exit codes: 0 on success, 1 on domain errors (diagnostic on standard
//! error), 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::json;

use twistspin_core::alexander::{
    alexander_ideal, bounds_rational_homology_ball, obstruct_roll_spin,
    twist_roll_spin_matrix, twist_roll_spin_presentation, GroupPresentation,
};
use twistspin_core::degree::{
    deg_brieskorn_closed_form, deg_brieskorn_via_floer, deg_montesinos_mapping_torus,
    deg_torus_knot, deg_twist_roll_spin, lspace_obstruction, DegreeReport,
};
use twistspin_core::floer::{brieskorn_summary, seifert_data};
use twistspin_core::knots::{
    braid_to_presentation, parse_presentation, torus_braid, torus_knot, BraidWord,
};
use twistspin_core::Error;

#[derive(Parser)]
#[command(
    name = "twistspin",
    version,
    about = "Alexander ideals, graded roots, and degree invariants of twist-roll-spun 2-knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct KnotInput {
    /// Braid word whose closure is the knot, e.g. "B3: s1 s2^-1 s1 s2^-1"
    #[arg(long, value_name = "WORD")]
    braid: Option<String>,

    /// Path to a presentation file (gens:, weights:, rel:, longitude: lines)
    #[arg(long, value_name = "PATH")]
    presentation: Option<PathBuf>,

    /// Torus knot T(p,q)
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    torus: Option<Vec<i64>>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DegInput {
    /// Torus knot T(p,q) with p, q odd, coprime, and at least 3
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    torus: Option<Vec<i64>>,

    /// Brieskorn sphere Sigma(p,q,r)
    #[arg(long, num_args = 3, value_names = ["P", "Q", "R"])]
    brieskorn: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander ideal of a classical knot
    Alex {
        #[command(flatten)]
        input: KnotInput,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Spun Alexander ideal and ball obstructions for the (m,n) twist-roll-spin
    Spin {
        #[command(flatten)]
        input: KnotInput,

        /// Twist count (m = 0 reports the pure-roll obstruction instead)
        #[arg(long, allow_negative_numbers = true)]
        m: i64,

        /// Roll count
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Degree invariant and the punctured-L-space obstruction
    Deg {
        #[command(flatten)]
        input: DegInput,

        /// Transfer to the m-twist n-roll spin (needs m + 2n = 2 mod 4)
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,

        /// Roll count for the transfer
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Graded root of a Brieskorn sphere with its reflection involution
    Gradedroot {
        /// Brieskorn sphere Sigma(p,q,r)
        #[arg(long, num_args = 3, value_names = ["P", "Q", "R"], required = true)]
        brieskorn: Vec<i64>,

        /// Also list every vertex with its parent and involution image
        #[arg(long)]
        dump: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Degree table for the Sigma(2,3,r) family, both evaluation routes
    Sweep {
        /// Largest r to include
        #[arg(long, value_name = "R_MAX")]
        r_max: i64,

        /// Include the degenerate r = 1 row
        #[arg(long)]
        include_trivial: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Run the calibration protocol and the acceptance table
    Selftest,
}

fn main() -> ExitCode {
    configure_thread_pool();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn configure_thread_pool() {
    if let Ok(raw) = std::env::var("TWISTSPIN_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring invalid TWISTSPIN_THREADS value {raw:?}"),
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Alex { input, format } => run_alex(&input, format),
        Command::Spin { input, m, n, format } => run_spin(&input, m, n, format),
        Command::Deg { input, m, n, format } => run_deg(&input, m, n, format),
        Command::Gradedroot { brieskorn, dump, format } => {
            run_gradedroot(&brieskorn, dump, format)
        }
        Command::Sweep { r_max, include_trivial, format } => {
            run_sweep(r_max, include_trivial, format)
        }
        Command::Selftest => run_selftest(),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("reports serialize"));
}

struct Knot {
    presentation: GroupPresentation,
    description: String,
    echo: serde_json::Value,
}

fn load_knot(input: &KnotInput) -> Result<Knot, Error> {
    if let Some(word) = &input.braid {
        let braid = BraidWord::parse(word)?;
        Ok(Knot {
            presentation: braid_to_presentation(&braid)?,
            description: format!("closure of {word}"),
            echo: json!({ "braid": word }),
        })
    } else if let Some(path) = &input.presentation {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
        Ok(Knot {
            presentation: parse_presentation(&text)?,
            description: format!("presentation {}", path.display()),
            echo: json!({ "presentation": path.display().to_string() }),
        })
    } else {
        let v = input.torus.as_ref().expect("clap enforces one input source");
        let (p, q) = (v[0], v[1]);
        // The braid closure gives a Wirtinger presentation with a
        // longitude, which the spin constructions need.
        let braid = torus_braid(p, q)?;
        Ok(Knot {
            presentation: braid_to_presentation(&braid)?,
            description: format!("torus knot T({p},{q})"),
            echo: json!({ "p": p, "q": q }),
        })
    }
}

fn with_spin_params(mut echo: serde_json::Value, m: i64, n: i64) -> serde_json::Value {
    let obj = echo.as_object_mut().expect("input echoes are objects");
    obj.insert("m".to_string(), json!(m));
    obj.insert("n".to_string(), json!(n));
    echo
}

fn run_alex(input: &KnotInput, format: Format) -> Result<(), Error> {
    let knot = load_knot(input)?;
    let ideal = alexander_ideal(&knot.presentation)?;
    match format {
        Format::Text => {
            println!("input: {}", knot.description);
            println!("alexander ideal: ({ideal})");
        }
        Format::Json => print_json(&json!({
            "invariant": "alexander_ideal",
            "inputs": knot.echo,
            "ideal_generator": ideal.to_string(),
        })),
    }
    Ok(())
}

fn run_spin(input: &KnotInput, m: i64, n: i64, format: Format) -> Result<(), Error> {
    let knot = load_knot(input)?;

    if m == 0 {
        let rolled = twist_roll_spin_presentation(&knot.presentation, 0, n)?;
        let ideal = alexander_ideal(&rolled)?;
        let obstructed = obstruct_roll_spin(&knot.presentation)?;
        match format {
            Format::Text => {
                println!("input: {}, m = 0, n = {n}", knot.description);
                println!("roll-spin ideal: ({ideal})");
                if obstructed {
                    println!("verdict: no roll-spin of this knot bounds a rational homology ball");
                } else {
                    println!("verdict: unit ideal, no obstruction");
                }
            }
            Format::Json => print_json(&json!({
                "invariant": "roll_spin",
                "inputs": with_spin_params(knot.echo, 0, n),
                "ideal_generator": ideal.to_string(),
                "obstructed": obstructed,
            })),
        }
        return Ok(());
    }

    let spun = twist_roll_spin_matrix(&knot.presentation, m, n)?.first_elementary_ideal();
    let base = alexander_ideal(&knot.presentation)?;
    let ball = bounds_rational_homology_ball(&base, m)?;
    match format {
        Format::Text => {
            println!("input: {}, m = {m}, n = {n}", knot.description);
            println!("spun ideal: ({spun})");
            if ball {
                println!("verdict: fiber is a rational homology ball");
            } else {
                println!("verdict: fiber is NOT a rational homology ball");
            }
        }
        Format::Json => print_json(&json!({
            "invariant": "twist_roll_spin",
            "inputs": with_spin_params(knot.echo, m, n),
            "ideal_generator": spun.to_string(),
            "rational_homology_ball": ball,
        })),
    }
    Ok(())
}

fn run_deg(input: &DegInput, m: Option<i64>, n: Option<i64>, format: Format) -> Result<(), Error> {
    let (base, mut description) = if let Some(v) = &input.torus {
        let (p, q) = (v[0], v[1]);
        (deg_torus_knot(p, q)?, format!("torus knot T({p},{q})"))
    } else {
        let v = input.brieskorn.as_ref().expect("clap enforces one input source");
        let (p, q, r) = (v[0], v[1], v[2]);
        if (p, q) == (2, 3) && r.gcd(&6) != 1 {
            return Err(Error::domain(format!("r must be coprime to 6, got {r}")));
        }
        (
            deg_brieskorn_via_floer(p, q, r)?,
            format!("Brieskorn sphere Sigma({p},{q},{r})"),
        )
    };

    let report = if m.is_none() && n.is_none() {
        base
    } else {
        let (m, n) = (m.unwrap_or(0), n.unwrap_or(0));
        description.push_str(&format!(", twist-roll-spin m = {m}, n = {n}"));
        deg_twist_roll_spin(&base, m, n)?
    };
    print_degree_report(&report, &description, format);
    Ok(())
}

fn print_degree_report(report: &DegreeReport, description: &str, format: Format) {
    let obstruction = lspace_obstruction(report);
    match format {
        Format::Text => {
            println!("input: {description}");
            println!("|deg| = {}", report.value);
            println!("method: {}", report.method.as_str());
            println!("L-space obstruction: {}", obstruction.as_str());
            if let Some(note) = &report.note {
                println!("note: {note}");
            }
            for warning in &report.warnings {
                println!("warning: {warning}");
            }
        }
        Format::Json => {
            let mut value = json!({
                "invariant": "deg",
                "value": report.value,
                "method": report.method.as_str(),
                "inputs": report.inputs,
                "obstruction": obstruction.as_str(),
                "warnings": report.warnings,
            });
            if let Some(note) = &report.note {
                value
                    .as_object_mut()
                    .expect("built as an object")
                    .insert("note".to_string(), json!(note));
            }
            print_json(&value);
        }
    }
}

fn run_gradedroot(brieskorn: &[i64], dump: bool, format: Format) -> Result<(), Error> {
    let (p, q, r) = (brieskorn[0], brieskorn[1], brieskorn[2]);
    let (root, summary) = brieskorn_summary(p, q, r)?;
    match format {
        Format::Text => {
            println!("input: Brieskorn sphere Sigma({p},{q},{r})");
            println!("levels: {} .. {}", root.min_level(), root.root_level());
            println!("vertices: {}", root.vertices().len());
            println!("reduced rank: {}", summary.total_rank);
            println!("z2 grading: {}", summary.z2_grading);
            println!("involution two-cycles: {}", root.involution_two_cycles());
            println!("anti-invariant euler: {}", summary.anti_invariant_euler);
            if dump {
                println!();
                println!("{:>4}  {:>6}  {:>6}  {:>10}", "id", "level", "parent", "involution");
                for (id, v) in root.vertices().iter().enumerate() {
                    let parent = v.parent.map_or_else(|| "-".to_string(), |x| x.to_string());
                    println!("{id:>4}  {:>6}  {parent:>6}  {:>10}", v.level, v.involution_image);
                }
            }
        }
        Format::Json => {
            let mut value = json!({
                "invariant": "graded_root",
                "inputs": { "p": p, "q": q, "r": r },
                "summary": {
                    "total_rank": summary.total_rank,
                    "z2_grading": summary.z2_grading,
                    "anti_invariant_euler": summary.anti_invariant_euler,
                },
            });
            if dump {
                let vertices: Vec<serde_json::Value> = root
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(id, v)| {
                        json!({
                            "id": id,
                            "grading": v.level,
                            "parent": v.parent,
                            "involution_image": v.involution_image,
                        })
                    })
                    .collect();
                value
                    .as_object_mut()
                    .expect("built as an object")
                    .insert("vertices".to_string(), json!(vertices));
            }
            print_json(&value);
        }
    }
    Ok(())
}

struct SweepRow {
    r: i64,
    rank: i64,
    chi: i64,
    deg_montesinos: i64,
    deg_closed_form: i64,
    agree: bool,
}

fn sweep_rows(r_max: i64, include_trivial: bool) -> Result<Vec<SweepRow>, Error> {
    let family: Vec<i64> = (1..=r_max)
        .filter(|r| r.gcd(&6) == 1)
        .filter(|&r| include_trivial || r != 1)
        .collect();
    family
        .par_iter()
        .map(|&r| {
            let (_, summary) = brieskorn_summary(2, 3, r)?;
            let montesinos = deg_montesinos_mapping_torus(&summary).value;
            let closed = deg_brieskorn_closed_form(r)?.value;
            Ok(SweepRow {
                r,
                rank: summary.total_rank,
                chi: summary.anti_invariant_euler,
                deg_montesinos: montesinos,
                deg_closed_form: closed,
                agree: montesinos == closed,
            })
        })
        .collect()
}

fn run_sweep(r_max: i64, include_trivial: bool, format: Format) -> Result<(), Error> {
    let rows = sweep_rows(r_max, include_trivial)?;
    match format {
        Format::Text => {
            println!(
                "{:>5}  {:>5}  {:>5}  {:>9}  {:>12}  agree",
                "r", "rank", "chi", "deg(chi)", "deg(closed)"
            );
            for row in &rows {
                println!(
                    "{:>5}  {:>5}  {:>5}  {:>9}  {:>12}  {}",
                    row.r,
                    row.rank,
                    row.chi,
                    row.deg_montesinos,
                    row.deg_closed_form,
                    if row.agree { "yes" } else { "NO" }
                );
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "r": row.r,
                        "rank": row.rank,
                        "anti_invariant_euler": row.chi,
                        "deg_montesinos": row.deg_montesinos,
                        "deg_closed_form": row.deg_closed_form,
                        "agree": row.agree,
                    })
                })
                .collect();
            print_json(&json!({
                "invariant": "deg_sweep",
                "family": "brieskorn_23",
                "r_max": r_max,
                "include_trivial": include_trivial,
                "rows": rows,
            }));
        }
    }
    Ok(())
}

fn family_range(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|r| r.gcd(&6) == 1)
}

fn expected_rank(r: i64) -> i64 {
    match r % 12 {
        1 => 2 * (r / 12),
        5 => 2 * ((r - 5) / 12),
        7 => 2 * ((r + 5) / 12) - 1,
        11 => 2 * ((r + 1) / 12) - 1,
        _ => unreachable!("family members are coprime to 6"),
    }
}

fn expected_chi(r: i64) -> i64 {
    match r % 12 {
        1 => r / 12,
        5 => (r - 5) / 12,
        7 => -((r + 5) / 12),
        11 => -((r + 1) / 12),
        _ => unreachable!("family members are coprime to 6"),
    }
}

fn check_seifert_examples() -> Result<(), String> {
    let table: &[(i64, i64, Vec<i64>)] = &[
        (5, -2, vec![1, 2, 4]),
        (7, -1, vec![1, 1, 1]),
        (11, -2, vec![1, 2, 9]),
        (13, -1, vec![1, 1, 2]),
        (17, -2, vec![1, 2, 14]),
    ];
    for (r, b0, weights) in table {
        let data = seifert_data(2, 3, *r).map_err(|e| e.to_string())?;
        let got: Vec<i64> = data.fibers.iter().map(|&(_, w)| w).collect();
        if data.b0 != *b0 || got != *weights {
            return Err(format!(
                "Sigma(2,3,{r}): got b0 = {}, weights {:?}, want b0 = {b0}, weights {weights:?}",
                data.b0, got
            ));
        }
    }
    Ok(())
}

fn check_rank_calibration() -> Result<(), String> {
    for r in family_range(5, 97) {
        let (_, summary) = brieskorn_summary(2, 3, r).map_err(|e| e.to_string())?;
        if summary.total_rank != expected_rank(r) {
            return Err(format!(
                "Sigma(2,3,{r}): rank {} != {}",
                summary.total_rank,
                expected_rank(r)
            ));
        }
    }
    Ok(())
}

fn check_chi_table() -> Result<(), String> {
    for r in family_range(5, 97) {
        let (_, summary) = brieskorn_summary(2, 3, r).map_err(|e| e.to_string())?;
        if summary.anti_invariant_euler != expected_chi(r) {
            return Err(format!(
                "Sigma(2,3,{r}): chi {} != {}",
                summary.anti_invariant_euler,
                expected_chi(r)
            ));
        }
    }
    Ok(())
}

fn check_degree_agreement() -> Result<(), String> {
    for r in family_range(5, 97) {
        let pipeline = deg_brieskorn_via_floer(2, 3, r).map_err(|e| e.to_string())?;
        let closed = deg_brieskorn_closed_form(r).map_err(|e| e.to_string())?;
        if pipeline.value != closed.value {
            return Err(format!(
                "Sigma(2,3,{r}): pipeline {} != closed form {}",
                pipeline.value, closed.value
            ));
        }
    }
    Ok(())
}

fn check_torus_degrees() -> Result<(), String> {
    for p in (3..=11).step_by(2) {
        for q in ((p + 2)..=11).step_by(2) {
            if p.gcd(&q) != 1 {
                continue;
            }
            let d = deg_torus_knot(p, q).map_err(|e| e.to_string())?;
            if d.value != 1 {
                return Err(format!("T({p},{q}): got {}", d.value));
            }
        }
    }
    Ok(())
}

fn check_trefoil_qhb() -> Result<(), String> {
    let braid = BraidWord::parse("B2: s1 s1 s1").map_err(|e| e.to_string())?;
    let presentation = braid_to_presentation(&braid).map_err(|e| e.to_string())?;
    let delta = alexander_ideal(&presentation).map_err(|e| e.to_string())?;
    for m in 1..=12 {
        let got = bounds_rational_homology_ball(&delta, m).map_err(|e| e.to_string())?;
        let want = m != 6 && m != 12;
        if got != want {
            return Err(format!("m = {m}: got {got}, want {want}"));
        }
    }
    Ok(())
}

fn check_torus_alexander() -> Result<(), String> {
    for p in 2..=7i64 {
        for q in (p + 1)..=7 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let (presentation, closed) = torus_knot(p, q).map_err(|e| e.to_string())?;
            let pipeline = alexander_ideal(&presentation).map_err(|e| e.to_string())?;
            if pipeline != closed {
                return Err(format!("T({p},{q}): pipeline ({pipeline}) != closed ({closed})"));
            }
        }
    }
    Ok(())
}

fn check_obstruction_family() -> Result<(), String> {
    for r in family_range(7, 97) {
        let base = deg_brieskorn_via_floer(2, 3, r).map_err(|e| e.to_string())?;
        let spun = deg_twist_roll_spin(&base, 2, 0).map_err(|e| e.to_string())?;
        if lspace_obstruction(&spun).as_str() != "OBSTRUCTED" {
            return Err(format!("Sigma(2,3,{r}): expected OBSTRUCTED, got |deg| = {}", spun.value));
        }
    }
    Ok(())
}

type Check = fn() -> Result<(), String>;

fn run_selftest() -> Result<(), Error> {
    let checks: &[(&str, Check)] = &[
        ("seifert data worked examples", check_seifert_examples),
        ("rank calibration against the closed form (r <= 97)", check_rank_calibration),
        ("anti-invariant euler characteristic table (r <= 97)", check_chi_table),
        ("degree: graded-root pipeline vs closed form (r <= 97)", check_degree_agreement),
        ("degree: odd torus knots give 1 (p < q <= 11)", check_torus_degrees),
        ("trefoil ball criterion truth table (m <= 12)", check_trefoil_qhb),
        ("torus-knot Alexander oracle (p < q <= 7)", check_torus_alexander),
        ("obstruction corollary via transfer (7 <= r <= 97)", check_obstruction_family),
    ];
    let mut failures = 0;
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failures > 0 {
        return Err(Error::domain(format!("{failures} selftest check(s) failed")));
    }
    println!("all checks passed");
    Ok(())
}
