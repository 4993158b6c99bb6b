//! The `vknot` command-line interface.
//!
//! One subcommand per operation; `--json` switches every command to a single
//! JSON object per processed input.  Commands taking one Gauss code read a
//! batch from standard input (one code per line) when the argument is
//! omitted.  Exit status: `0` on success, `1` on domain errors or when a
//! check/fuzz run finds a violation, `2` on usage errors.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::construct::{
    classify_filtration, family, genus_bounds, realize, realize_writhe, FamilyName,
};
use crate::diagram::moves::random_rmove;
use crate::diagram::{random_diagram, Diagram};
use crate::invariants::{check_identities, invariant_bundle, InvariantBundle, Kind};
use crate::surface::{homology_data, two_boundary_genus};
use crate::tangle::{tangle_invariants, TangleDiagram};
use crate::{Error, Poly, Result};

#[derive(Parser)]
#[command(
    name = "vknot",
    version,
    about = "Writhe and intersection polynomials of long virtual knots"
)]
struct Cli {
    /// Emit one JSON object per processed input instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the writhe and intersection polynomials of a Gauss code.
    Invariants {
        /// Gauss code; omit to read one code per line from stdin.
        code: Option<String>,
    },
    /// Surface data: genus, two-boundary genus, indices, intersection matrix.
    Surface {
        /// Gauss code; omit to read from stdin.
        code: Option<String>,
    },
    /// Two-sided supporting-genus bounds and the filtration stratum.
    Genus {
        /// Gauss code; omit to read from stdin.
        code: Option<String>,
    },
    /// Run the identity suite on one diagram (or a pair).
    Check {
        /// Gauss code.
        code: String,
        /// Optional second code for the concatenation identities.
        code2: Option<String>,
    },
    /// Randomized identity and move-invariance testing.
    Fuzz {
        /// Random seed; the same seed reproduces the same run.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of iterations.
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        /// Largest diagram size to generate.
        #[arg(long, default_value_t = 12)]
        max_crossings: usize,
    },
    /// Tangle operations on a two-strand diagram.
    Tangle {
        #[command(subcommand)]
        op: TangleCmd,
    },
    /// Build a member of one of the families K, Kp, Kpp, J.
    Family {
        /// Family name: K, Kp, Kpp, or J.
        name: String,
        /// Member index, at least 1.
        n: usize,
    },
    /// Build a diagram realizing a target polynomial.
    Realize {
        /// Target: W for the writhe polynomials, or one of F00..H11.
        target: String,
        /// The target Laurent polynomial, e.g. "t^2-2+t^-2".
        poly: String,
    },
    /// Report the filtration stratum certified by the genus bounds.
    Classify {
        /// Gauss code; omit to read from stdin.
        code: Option<String>,
    },
}

#[derive(Subcommand)]
enum TangleCmd {
    /// Close right: strand A then strand B as one long diagram.
    CloseR { a: String, b: String },
    /// Close left: strand B then strand A.
    CloseL { a: String, b: String },
    /// Insert a long diagram between the strands.
    Sum { a: String, b: String, code: String },
    /// Strand-refined writhe data of the tangle.
    Invariants { a: String, b: String },
}

/// Parses arguments from the environment, runs, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Invariants { code } => for_each_code(code, |d| {
            print_invariants(d, json);
            Ok(0)
        }),
        Cmd::Surface { code } => for_each_code(code, |d| {
            print_surface(d, json)?;
            Ok(0)
        }),
        Cmd::Genus { code } => for_each_code(code, |d| {
            print_genus(d, json)?;
            Ok(0)
        }),
        Cmd::Classify { code } => for_each_code(code, |d| {
            print_classify(d, json)?;
            Ok(0)
        }),
        Cmd::Check { code, code2 } => {
            let d: Diagram = code.parse()?;
            let other = code2.map(|c| c.parse::<Diagram>()).transpose()?;
            run_check(&d, other.as_ref(), json)
        }
        Cmd::Fuzz { seed, iters, max_crossings } => run_fuzz(seed, iters, max_crossings, json),
        Cmd::Tangle { op } => run_tangle(op, json),
        Cmd::Family { name, n } => run_family(&name, n, json),
        Cmd::Realize { target, poly } => run_realize(&target, &poly, json),
    }
}

/// Runs `f` on the parsed positional code, or on every nonempty stdin line.
fn for_each_code(code: Option<String>, mut f: impl FnMut(&Diagram) -> Result<i32>) -> Result<i32> {
    match code {
        Some(c) => f(&c.parse()?),
        None => {
            use std::io::BufRead;
            let mut status = 0;
            for line in std::io::stdin().lock().lines() {
                let line = line.map_err(|e| Error::BadParameter(format!("stdin: {e}")))?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                status = status.max(f(&line.parse()?)?);
            }
            Ok(status)
        }
    }
}

fn poly_strings(ps: &[Poly; 2]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

fn matrix_strings(m: &[[Poly; 2]; 2]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(Poly::to_string).collect()).collect()
}

fn emit(value: Value) {
    println!("{value}");
}

fn bundle_json(d: &Diagram, b: &InvariantBundle) -> Value {
    json!({
        "code": d.to_string(),
        "omega": b.omega,
        "W": poly_strings(&b.w),
        "F": matrix_strings(&b.f),
        "G": matrix_strings(&b.g),
        "H": matrix_strings(&b.h),
    })
}

fn print_invariants(d: &Diagram, json_mode: bool) {
    let b = invariant_bundle(d).expect("connected by construction");
    if json_mode {
        emit(bundle_json(d, &b));
        return;
    }
    println!("code: {d}");
    println!("omega: ({}, {})", b.omega[0], b.omega[1]);
    for a in 0..2 {
        println!("W{a} = {}", b.w[a]);
    }
    for (name, m) in [("F", &b.f), ("G", &b.g), ("H", &b.h)] {
        for a in 0..2 {
            for bb in 0..2 {
                println!("{name}{a}{bb} = {}", m[a][bb]);
            }
        }
    }
    println!();
}

fn print_surface(d: &Diagram, json_mode: bool) -> Result<()> {
    let hom = homology_data(d)?;
    let tbg = two_boundary_genus(d)?;
    if json_mode {
        emit(json!({
            "code": d.to_string(),
            "genus": hom.genus(),
            "g2_upper": tbg,
            "v": hom.v(),
            "M": hom.m(),
        }));
        return Ok(());
    }
    println!("code: {d}");
    println!("genus = {}", hom.genus());
    println!("two-boundary genus = {tbg}");
    println!("v = {:?}", hom.v());
    println!("M = {:?}", hom.m());
    println!();
    Ok(())
}

fn print_genus(d: &Diagram, json_mode: bool) -> Result<()> {
    let b = genus_bounds(d)?;
    if json_mode {
        emit(json!({
            "code": d.to_string(),
            "sg1": [b.sg1_lower, b.sg1_upper],
            "sg2": [b.sg2_lower, b.sg2_upper],
            "stratum": b.stratum_label(),
        }));
        return Ok(());
    }
    println!("code: {d}");
    println!("sg1 in [{}, {}]", b.sg1_lower, b.sg1_upper);
    println!("sg2 in [{}, {}]", b.sg2_lower, b.sg2_upper);
    println!("stratum: {}", b.stratum_label());
    println!();
    Ok(())
}

fn print_classify(d: &Diagram, json_mode: bool) -> Result<()> {
    let label = classify_filtration(d)?;
    if json_mode {
        emit(json!({ "code": d.to_string(), "stratum": label }));
    } else {
        println!("{label}");
    }
    Ok(())
}

fn run_check(d: &Diagram, other: Option<&Diagram>, json_mode: bool) -> Result<i32> {
    let checks = check_identities(d, other)?;
    let all_pass = checks.iter().all(|c| c.pass);
    if json_mode {
        let list: Vec<Value> = checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect();
        emit(json!({ "code": d.to_string(), "checks": list, "all_pass": all_pass }));
    } else {
        for c in &checks {
            if c.pass {
                println!("PASS {}", c.name);
            } else {
                println!("FAIL {}: {}", c.name, c.detail);
            }
        }
        println!("{}", if all_pass { "all passed" } else { "violations found" });
    }
    Ok(if all_pass { 0 } else { 1 })
}

struct Counterexample {
    iteration: u64,
    code: String,
    other: Option<String>,
    name: String,
    detail: String,
}

fn run_fuzz(seed: u64, iters: u64, max_crossings: usize, json_mode: bool) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness: Option<Counterexample> = None;
    'all: for i in 0..iters {
        let d = random_diagram(&mut rng, max_crossings);
        let other =
            if i % 2 == 1 { Some(random_diagram(&mut rng, max_crossings)) } else { None };
        for c in check_identities(&d, other.as_ref())? {
            if !c.pass {
                witness = Some(Counterexample {
                    iteration: i,
                    code: d.to_string(),
                    other: other.as_ref().map(|o| o.to_string()),
                    name: c.name,
                    detail: c.detail,
                });
                break 'all;
            }
        }
        // Invariance along a random move sequence.
        let base = invariant_bundle(&d)?;
        let mut current = d.clone();
        for _ in 0..rng.gen_range(0..=20) {
            if let Some((_, next)) = random_rmove(&current, &mut rng, max_crossings + 8) {
                current = next;
            }
        }
        let after = invariant_bundle(&current)?;
        if !after.same_polynomials(&base) {
            witness = Some(Counterexample {
                iteration: i,
                code: d.to_string(),
                other: Some(current.to_string()),
                name: "move_sequence_invariance".into(),
                detail: format!("W0 before = {}, after = {}", base.w[0], after.w[0]),
            });
            break 'all;
        }
    }
    match witness {
        None => {
            if json_mode {
                emit(json!({ "iterations": iters, "seed": seed, "result": "all passed" }));
            } else {
                println!("all passed ({iters} iterations, seed {seed})");
            }
            Ok(0)
        }
        Some(w) => {
            if json_mode {
                emit(json!({
                    "seed": seed,
                    "iteration": w.iteration,
                    "counterexample": {
                        "code": w.code,
                        "other": w.other,
                        "check": w.name,
                        "detail": w.detail,
                    }
                }));
            } else {
                println!("counterexample at iteration {} (seed {seed})", w.iteration);
                println!("code: {}", w.code);
                if let Some(o) = &w.other {
                    println!("other: {o}");
                }
                println!("check: {}", w.name);
                println!("detail: {}", w.detail);
            }
            Ok(1)
        }
    }
}

fn run_tangle(op: TangleCmd, json_mode: bool) -> Result<i32> {
    let emit_code = |d: Diagram| {
        if json_mode {
            emit(json!({ "code": d.to_string() }));
        } else {
            println!("{d}");
        }
    };
    match op {
        TangleCmd::CloseR { a, b } => {
            emit_code(TangleDiagram::from_strand_texts(&a, &b)?.right_close());
        }
        TangleCmd::CloseL { a, b } => {
            emit_code(TangleDiagram::from_strand_texts(&a, &b)?.left_close());
        }
        TangleCmd::Sum { a, b, code } => {
            let t = TangleDiagram::from_strand_texts(&a, &b)?;
            emit_code(t.tangle_sum(&code.parse()?));
        }
        TangleCmd::Invariants { a, b } => {
            let t = TangleDiagram::from_strand_texts(&a, &b)?;
            let ti = tangle_invariants(&t)?;
            if json_mode {
                emit(json!({
                    "tangle": t.to_json(),
                    "U_A": poly_strings(&ti.u_strand[0]),
                    "U_B": poly_strings(&ti.u_strand[1]),
                    "U": poly_strings(&ti.u),
                    "V": poly_strings(&ti.v),
                    "lambda": ti.lambda,
                }));
            } else {
                println!("{t}");
                for a in 0..2 {
                    println!("U{a}^A = {}", ti.u_strand[0][a]);
                    println!("U{a}^B = {}", ti.u_strand[1][a]);
                    println!("U{a} = {}", ti.u[a]);
                    println!("V{a} = {}", ti.v[a]);
                    println!("lambda{a} = {}", ti.lambda[a]);
                }
            }
        }
    }
    Ok(0)
}

/// Expected values for a family member, recomputed and compared.
fn family_report(name: FamilyName, n: usize, b: &InvariantBundle) -> (bool, Vec<(String, String, String)>) {
    let ni = BigInt::from(n as i64);
    let t_minus_one = Poly::t_pow_minus_one(1);
    let mut rows: Vec<(String, String, String)> = Vec::new();
    let mut push = |label: &str, got: &Poly, want: Poly| {
        rows.push((label.to_string(), got.to_string(), want.to_string()));
    };
    match name {
        FamilyName::K => {
            push("W0", &b.w[0], t_minus_one.scale(&ni));
            push("W1", &b.w[1], t_minus_one.scale(&ni));
        }
        FamilyName::Kp => {
            let shape: Poly = "t-2+t^-1".parse().expect("constant");
            push("F00", &b.f[0][0], shape.scale(&ni));
            push("W0", &b.w[0], t_minus_one.scale(&ni));
        }
        FamilyName::Kpp => {
            let sq = Poly::t_pow_minus_one(2);
            push("W1", &b.w[1], sq.scale(&ni));
            push("W0-W1", &(b.w[0].clone() - &b.w[1]), "-t^2+2t-1".parse().expect("constant"));
        }
        FamilyName::J => {
            let tn = Poly::t_pow_minus_one(n as i64);
            push("W0", &b.w[0], tn.clone());
            push("W1", &b.w[1], tn);
            for a in 0..2 {
                for bb in 0..2 {
                    push(&format!("F{a}{bb}"), &b.f[a][bb], Poly::zero());
                    push(&format!("G{a}{bb}"), &b.g[a][bb], Poly::zero());
                    let h = -(Poly::t_pow_minus_one(n as i64))
                        - &Poly::t_pow_minus_one(-(n as i64));
                    push(&format!("H{a}{bb}"), &b.h[a][bb], h);
                }
            }
        }
    }
    let pass = rows.iter().all(|(_, got, want)| got == want);
    (pass, rows)
}

fn run_family(name: &str, n: usize, json_mode: bool) -> Result<i32> {
    let fam: FamilyName = name.parse()?;
    let d = family(fam, n)?;
    let b = invariant_bundle(&d)?;
    let (pass, rows) = family_report(fam, n, &b);
    if json_mode {
        let verification: Vec<Value> = rows
            .iter()
            .map(|(label, got, want)| json!({ "label": label, "got": got, "expected": want }))
            .collect();
        emit(json!({
            "family": name,
            "n": n,
            "code": d.to_string(),
            "verification": verification,
            "pass": pass,
        }));
    } else {
        println!("{d}");
        for (label, got, want) in &rows {
            let status = if got == want { "ok" } else { "MISMATCH" };
            println!("{label}: {got} (expected {want}) {status}");
        }
    }
    Ok(if pass { 0 } else { 1 })
}

/// Parses a realization target: `W`, or a kind letter with two type indices.
fn parse_target(s: &str) -> Result<Option<(Kind, usize, usize)>> {
    if s.eq_ignore_ascii_case("W") {
        return Ok(None);
    }
    let err = || Error::BadParameter(format!("unknown target '{s}' (expected W or F00..H11)"));
    let chars: Vec<char> = s.chars().collect();
    if chars.len() != 3 {
        return Err(err());
    }
    let kind = match chars[0].to_ascii_uppercase() {
        'F' => Kind::F,
        'G' => Kind::G,
        'H' => Kind::H,
        _ => return Err(err()),
    };
    let digit = |c: char| match c {
        '0' => Ok(0usize),
        '1' => Ok(1usize),
        _ => Err(err()),
    };
    Ok(Some((kind, digit(chars[1])?, digit(chars[2])?)))
}

fn run_realize(target: &str, poly: &str, json_mode: bool) -> Result<i32> {
    let f: Poly = poly.parse()?;
    let (d, achieved, label) = match parse_target(target)? {
        None => {
            let d = realize_writhe(&f)?;
            let b = invariant_bundle(&d)?;
            (d, [b.w[0].clone(), b.w[1].clone()], "W".to_string())
        }
        Some((kind, a, b)) => {
            let d = realize(kind, a, b, &f)?;
            let bundle = invariant_bundle(&d)?;
            let got = bundle.get(kind, a, b).clone();
            (d, [got.clone(), got], format!("{}{a}{b}", kind.letter()))
        }
    };
    let pass = achieved[0] == f && achieved[1] == f;
    let genus = homology_data(&d)?.genus();
    if json_mode {
        emit(json!({
            "target": label,
            "poly": f.to_string(),
            "code": d.to_string(),
            "achieved": achieved[0].to_string(),
            "genus": genus,
            "pass": pass,
        }));
    } else {
        println!("{d}");
        println!("{label} = {} (target {f}) {}", achieved[0], if pass { "ok" } else { "MISMATCH" });
        println!("genus = {genus}");
    }
    Ok(if pass { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_parsing() {
        assert_eq!(parse_target("W").unwrap(), None);
        assert_eq!(parse_target("F00").unwrap(), Some((Kind::F, 0, 0)));
        assert_eq!(parse_target("h11").unwrap(), Some((Kind::H, 1, 1)));
        assert!(parse_target("F02").is_err());
        assert!(parse_target("X00").is_err());
    }

    #[test]
    fn cli_parses_subcommands() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
