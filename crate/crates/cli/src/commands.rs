//! One function per subcommand; each returns a [`Report`].

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use tricomb::combing::CombingLedger;
use tricomb::exactalg::{cokernel, smith_normal_form, F2Matrix};
use tricomb::heegaard::{
    apply_twists, solve_twists, to_framed_link, HeegaardTwistProblem, TwistOutcome,
};
use tricomb::linkgeom::{
    gauss_linking, linking_number, parse_curve_file, pushoff, self_linking, so3_loop_class,
    NormalField, PolyCurve3,
};
use tricomb::surfaces::ClosedSurface;
use tricomb::surgery::{
    apply_script, characteristic_solutions, evenize, first_homology, handle_parity,
    spin_structure_count, EvenizeError, FramedLinkMatrix, MoveScript,
};

use crate::report::Report;

pub enum CliError {
    /// Unreadable or malformed input; exits 2.
    Input { path: String, message: String },
    /// Mathematical failure with a structured report; exits 1.
    Math(Box<Report>),
}

type CmdResult = Result<Report, CliError>;

fn read_input(report: &mut Report, path: &Path) -> Result<String, CliError> {
    let display = path.display().to_string();
    let contents = fs::read_to_string(path).map_err(|e| CliError::Input {
        path: display.clone(),
        message: e.to_string(),
    })?;
    report.add_input(&display, contents.as_bytes());
    Ok(contents)
}

fn parse_with<T>(
    path: &Path,
    parse: impl FnOnce(&str) -> Result<T, tricomb::ParseError>,
    contents: &str,
) -> Result<T, CliError> {
    parse(contents).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_link(report: &mut Report, path: &Path) -> Result<FramedLinkMatrix, CliError> {
    let contents = read_input(report, path)?;
    parse_with(path, FramedLinkMatrix::from_text, &contents)
}

fn math_failure(mut report: Report, reason: String) -> CliError {
    report.fail(reason);
    CliError::Math(Box::new(report))
}

fn diag_parities(f: &FramedLinkMatrix) -> Vec<u8> {
    handle_parity(f)
        .parities
        .iter()
        .map(|&p| u8::from(p))
        .collect()
}

fn indicator_bits(x: &[bool]) -> Vec<u8> {
    x.iter().map(|&b| u8::from(b)).collect()
}

pub fn spin_count(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let link = load_link(&mut report, path)?;
    let count = spin_structure_count(&link);
    report.set_result("spin_structures", Value::String(count.to_string()));
    let homs = first_homology(&link).hom_count_to_z2();
    report.check(
        "count equals |Hom(H1, Z/2)|",
        count == homs,
        format!("affine count {count}, morphism count {homs}"),
    );
    Ok(report)
}

pub fn homology(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let link = load_link(&mut report, path)?;
    let group = first_homology(&link);
    report.set_result("group", Value::String(group.to_string()));
    report.set_result("free_rank", json!(group.free_rank()));
    report.set_result(
        "torsion",
        json!(group
            .torsion()
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()),
    );
    let snf = smith_normal_form(link.matrix());
    report.check(
        "smith normal form verifies",
        snf.verify(link.matrix()),
        "U*Q*V = D, U and V unimodular, divisor chain",
    );
    Ok(report)
}

pub fn char_sublink(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let link = load_link(&mut report, path)?;
    let sols = characteristic_solutions(&link);
    report.set_result(
        "indicator",
        json!(indicator_bits(&sols.canonical.indicator)),
    );
    report.set_result("solution_dim", json!(sols.canonical.solution_dim));
    report.set_result("solution_count", Value::String(sols.count().to_string()));
    let q2 = F2Matrix::from_int_matrix(link.matrix());
    let diag: Vec<bool> = handle_parity(&link).parities;
    report.check(
        "indicator solves Q*x = diag(Q) mod 2",
        q2.mul_vec(&sols.canonical.indicator).unwrap() == diag,
        "verified by substitution",
    );
    let kernel_ok = sols
        .kernel
        .iter()
        .all(|k| q2.mul_vec(k).unwrap().iter().all(|&v| !v));
    report.check(
        "kernel basis annihilates Q mod 2",
        kernel_ok,
        format!("{} kernel vectors", sols.kernel.len()),
    );
    report.check(
        "solution count is 2^dim",
        sols.count() == (BigInt::from(1) << sols.canonical.solution_dim),
        format!("dim {}", sols.canonical.solution_dim),
    );
    Ok(report)
}

pub fn parity(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let link = load_link(&mut report, path)?;
    let p = handle_parity(&link);
    report.set_result("parities", json!(diag_parities(&link)));
    report.set_result("all_even", json!(p.all_even));
    let recomputed = (0..link.components()).all(|i| {
        use num_integer::Integer;
        p.parities[i] == link.framing(i).is_odd()
    });
    report.check(
        "parities match framings mod 2",
        recomputed,
        "recomputed from the diagonal",
    );
    Ok(report)
}

pub fn replay(report: Report, link_path: &Path, script_path: &Path) -> CmdResult {
    let mut report = report;
    let link = load_link(&mut report, link_path)?;
    let script_text = read_input(&mut report, script_path)?;
    let script = parse_with(script_path, MoveScript::from_text, &script_text)?;
    let out = match apply_script(&link, &script) {
        Ok(out) => out,
        Err(e) => return Err(math_failure(report, e.to_string())),
    };
    report.set_result("components", json!(out.components()));
    report.set_result("link", Value::String(out.to_text()));
    report.check(
        "result is symmetric",
        out.matrix().is_symmetric(),
        "exact entrywise check",
    );
    report.check(
        "cokernel class preserved",
        cokernel(out.matrix()) == cokernel(link.matrix()),
        format!("H1 = {}", cokernel(out.matrix())),
    );
    report.check(
        "emitted link re-parses",
        FramedLinkMatrix::from_text(&out.to_text()).map(|l| l.to_text()) == Ok(out.to_text()),
        "round trip",
    );
    Ok(report)
}

pub fn evenize_cmd(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let link = load_link(&mut report, path)?;
    let out = match evenize(&link) {
        Ok(out) => out,
        Err(EvenizeError::BudgetExhausted {
            depth,
            nodes,
            odd_remaining,
            partial,
        }) => {
            report.set_result("partial_script", Value::String(partial.to_text()));
            report.set_result("odd_remaining", json!(odd_remaining));
            return Err(math_failure(
                report,
                format!("search budget exhausted at depth {depth} after {nodes} states"),
            ));
        }
        Err(e) => return Err(math_failure(report, e.to_string())),
    };
    report.set_result("phase", Value::String(out.phase.to_string()));
    report.set_result("moves", json!(out.script.len()));
    report.set_result("script", Value::String(out.script.to_text()));
    report.set_result("link", Value::String(out.result.to_text()));
    report.check(
        "result diagonal is even",
        handle_parity(&out.result).all_even,
        format!("parities {:?}", diag_parities(&out.result)),
    );
    report.check(
        "cokernel invariant factors preserved",
        cokernel(out.result.matrix()) == cokernel(link.matrix()),
        format!("H1 = {}", cokernel(link.matrix())),
    );
    let replayed = apply_script(&link, &out.script);
    report.check(
        "script replays input to result",
        replayed.as_ref() == Ok(&out.result),
        format!("{} moves", out.script.len()),
    );
    report.check(
        "emitted script re-parses",
        MoveScript::from_text(&out.script.to_text()).as_ref() == Ok(&out.script),
        "round trip",
    );
    Ok(report)
}

pub fn heegaard_solve(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let contents = read_input(&mut report, path)?;
    let problem = parse_with(path, HeegaardTwistProblem::from_text, &contents)?;
    let outcome = solve_twists(&problem);
    match outcome {
        TwistOutcome::Unsolvable { certificate } => {
            report.set_result("certificate", json!(indicator_bits(&certificate)));
            Err(math_failure(
                report,
                "parity system unsolvable; certificate is a left-kernel vector with odd pairing against f".into(),
            ))
        }
        TwistOutcome::Solvable { indicator, kernel } => {
            report.set_result("twists", json!(indicator_bits(&indicator)));
            report.set_result("kernel_dim", json!(kernel.len()));
            let twists: Vec<BigInt> = indicator
                .iter()
                .map(|&b| BigInt::from(u8::from(b)))
                .collect();
            let updated = apply_twists(&problem, &twists).expect("dimensions match");
            report.set_result(
                "framings",
                json!(updated.iter().map(BigInt::to_string).collect::<Vec<_>>()),
            );
            let link = match to_framed_link(&problem, &twists) {
                Ok(link) => link,
                Err(e) => return Err(math_failure(report, e.to_string())),
            };
            report.set_result("link", Value::String(link.to_text()));
            let a2 = F2Matrix::from_int_matrix(problem.intersections());
            let f2: Vec<bool> = problem
                .framings()
                .iter()
                .map(|f| {
                    use num_integer::Integer;
                    f.is_odd()
                })
                .collect();
            report.check(
                "indicator solves (A mod 2)*x = f mod 2",
                a2.mul_vec(&indicator).unwrap() == f2,
                "verified by substitution",
            );
            report.check(
                "updated framings are all even",
                updated.iter().all(|f| {
                    use num_integer::Integer;
                    f.is_even()
                }),
                format!("framings {updated:?}"),
            );
            report.check(
                "exported link passes the parity test",
                handle_parity(&link).all_even,
                "surgery handle parity",
            );
            report.check(
                "emitted link re-parses",
                FramedLinkMatrix::from_text(&link.to_text()).map(|l| l.to_text())
                    == Ok(link.to_text()),
                "round trip",
            );
            Ok(report)
        }
    }
}

fn load_curve(
    report: &mut Report,
    path: &Path,
) -> Result<(PolyCurve3, Option<NormalField>), CliError> {
    let contents = read_input(report, path)?;
    parse_with(path, parse_curve_file, &contents)
}

pub fn link_cmd(report: Report, path_a: &Path, path_b: &Path) -> CmdResult {
    let mut report = report;
    let (a, _) = load_curve(&mut report, path_a)?;
    let (b, _) = load_curve(&mut report, path_b)?;
    let lk = match linking_number(&a, &b) {
        Ok(lk) => lk,
        Err(e) => return Err(math_failure(report, e.to_string())),
    };
    report.set_result("linking_number", json!(lk));
    let g = match gauss_linking(&a, &b) {
        Ok(g) => g,
        Err(e) => return Err(math_failure(report, e.to_string())),
    };
    report.set_result("gauss", json!(g));
    report.check(
        "gauss oracle within 0.1",
        (g - lk as f64).abs() < 0.1,
        format!("|{g} - {lk}| < 0.1"),
    );
    let symmetric = linking_number(&b, &a);
    report.check(
        "symmetric in the two curves",
        symmetric.as_ref() == Ok(&lk),
        "lk(K1,K2) = lk(K2,K1)",
    );
    Ok(report)
}

fn require_field(
    report: Report,
    path: &Path,
    field: Option<NormalField>,
) -> Result<(Report, NormalField), CliError> {
    match field {
        Some(f) => Ok((report, f)),
        None => Err(CliError::Input {
            path: path.display().to_string(),
            message: "file must contain a `normal` block after the curve".into(),
        }),
    }
}

pub fn selflink(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let (curve, field) = load_curve(&mut report, path)?;
    let (mut report, field) = require_field(report, path, field)?;
    let s = match self_linking(&curve, &field) {
        Ok(s) => s,
        Err(e) => return Err(math_failure(report, e.to_string())),
    };
    report.set_result("self_linking", json!(s));
    let finer = num_rational::BigRational::new(1.into(), 32.into());
    let refined = pushoff(&curve, &field, &finer).and_then(|p| linking_number(&curve, &p.curve));
    report.check(
        "stable at a finer pushoff scale",
        refined.as_ref() == Ok(&s),
        format!("eps 1/32 gives {refined:?}"),
    );
    let so3 = so3_loop_class(1, s).expect("chi = 1 is odd");
    report.check(
        "parity consistent with the SO(3) route",
        (s.rem_euclid(2) == 1) == (so3 == 0),
        format!("class {so3} for a disk Seifert surface"),
    );
    Ok(report)
}

pub fn extends(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let (curve, field) = load_curve(&mut report, path)?;
    let (mut report, field) = require_field(report, path, field)?;
    let s = match self_linking(&curve, &field) {
        Ok(s) => s,
        Err(e) => return Err(math_failure(report, e.to_string())),
    };
    let extends = s.rem_euclid(2) == 1;
    report.set_result("extends", json!(extends));
    report.set_result("self_linking", json!(s));
    let so3 = so3_loop_class(1, s).expect("chi = 1 is odd");
    report.check(
        "agrees with the SO(3) loop class",
        extends == (so3 == 0),
        format!("class {so3}"),
    );
    Ok(report)
}

pub fn surface(report: Report, token: &str) -> CmdResult {
    let mut report = report;
    let s: ClosedSurface = token
        .parse()
        .map_err(|e: tricomb::surfaces::SurfaceError| CliError::Input {
            path: token.to_string(),
            message: e.to_string(),
        })?;
    let terms = s.pairing_terms();
    report.set_result("surface", Value::String(s.to_token()));
    report.set_result("orientable", json!(s.is_orientable()));
    report.set_result("euler_characteristic", json!(s.euler_characteristic()));
    report.set_result("tangent_term", json!(terms.tangent));
    report.set_result("twisted_term", json!(terms.twisted));
    report.set_result("pairing", json!(s.pairing_w_fv()));
    report.check(
        "pairing is the sum of the two terms",
        s.pairing_w_fv() == (terms.tangent + terms.twisted) % 2,
        format!("{} + {} mod 2", terms.tangent, terms.twisted),
    );
    report.check(
        "pairing vanishes",
        s.pairing_w_fv() == 0,
        "the w-pairing of a plane field over a combing is zero on every closed surface",
    );
    Ok(report)
}

pub fn ledger(report: Report, path: &Path) -> CmdResult {
    let mut report = report;
    let contents = read_input(&mut report, path)?;
    let mut ledger = parse_with(path, CombingLedger::from_text, &contents)?;
    report.set_result("group", Value::String(ledger.group().to_string()));
    report.set_result("combings", json!(ledger.symbol_count()));
    report.set_result("pairs", json!(ledger.pairs().len()));
    report.set_result("surgeries", json!(ledger.surgeries().len()));
    let eulers: Vec<Value> = ledger
        .symbols()
        .map(|s| {
            let e = ledger.euler(s).expect("registered symbol");
            json!({ "symbol": s.to_string(), "euler": e.to_string() })
        })
        .collect();
    report.set_result("eulers", Value::Array(eulers));
    let violations = ledger.validate();
    report.check(
        "ledger invariants hold",
        violations.is_empty(),
        if violations.is_empty() {
            "pair laws, surgery law, evenness constancy".to_string()
        } else {
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        },
    );
    if violations.is_empty() {
        let witness = ledger.is_parallelizable();
        report.set_result("parallelizable", json!(witness.is_some()));
        if let Some(w) = witness {
            report.set_result("witness", Value::String(w.to_string()));
            report.check(
                "witness combing has zero euler class",
                ledger.euler(w).expect("witness registered").is_zero(),
                format!("euler({w}) = 0"),
            );
        }
    }
    Ok(report)
}
