use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use num_traits::Zero;
use tuvals::axioms::{
    axiom_battery, battery_json, characterizations, csic_detect, ksed_axioms,
    recover_esl_coefficients, run_independence, Axiom, AxiomReport, BatteryConfig,
};
use tuvals::io::read_game_file;
use tuvals::mechanism::{
    candidate_equilibrium_bids, deviation_check, run_mechanism, verify_implementation,
    BidCoordinate, DeviationReport, MechanismConfig, DEVIATION_LIMIT,
};
use tuvals::values::{
    alpha_sed, coefficients_to_beta, equal_division, ksed, ksed_by_basis, ksed_by_permutations,
    ksed_by_split, ksed_by_truncation, shapley, sol_beta, sol_p, Counterexample,
    KSED_PERMUTATION_LIMIT,
};
use tuvals::{
    Allocation, EslCoefficients, Functional, Game, ProbabilityVector, Rational, ValueFunctional,
};

use crate::output::{document, exact, exact_list, parse_list, row};
use crate::{AxiomsArgs, BasesArgs, ConvertArgs, InvariantViolation, MechanismArgs, ValuesArgs};

fn named_functional(
    name: &str,
    k: Option<usize>,
    p: Option<usize>,
) -> Result<Functional<Rational>> {
    let need_k = || k.ok_or_else(|| anyhow!("functional `{name}` needs --k"));
    Ok(match name.to_ascii_lowercase().as_str() {
        "shapley" => Functional::Shapley,
        "ed" | "equal-division" => Functional::EqualDivision,
        "ksed" => Functional::KSed(need_k()?),
        "sol" => Functional::SolP(p.ok_or_else(|| anyhow!("functional `sol` needs --p"))?),
        other => Functional::Counterexample(other.parse::<Counterexample>()?, need_k()?),
    })
}

fn json_payoffs(x: &Allocation<Rational>) -> Value {
    json!(exact_list(x.as_slice()))
}

fn emit(out: &mut dyn Write, doc: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(doc)?)?;
    Ok(())
}

struct Entry {
    label: String,
    json: Value,
    payoffs: Allocation<Rational>,
}

impl Entry {
    fn new(label: impl Into<String>, json: Value, payoffs: Allocation<Rational>) -> Self {
        Entry {
            label: label.into(),
            json,
            payoffs,
        }
    }
}

type Route = (
    &'static str,
    fn(&Game, usize) -> tuvals::Result<Allocation<Rational>>,
);

const ROUTES: [Route; 5] = [
    ("closed-form", ksed),
    ("permutations", ksed_by_permutations),
    ("truncation", ksed_by_truncation),
    ("split", ksed_by_split),
    ("basis", ksed_by_basis),
];

pub fn values(args: &ValuesArgs, as_json: bool, out: &mut dyn Write) -> Result<()> {
    let v = read_game_file(&args.game)?;
    let n = v.n();
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };

    let mut entries = vec![
        Entry::new("Shapley", json!({"name": "shapley"}), shapley(&v)),
        Entry::new("ED", json!({"name": "equal-division"}), equal_division(&v)),
    ];
    let mut disagreements = Vec::new();
    let mut routes_used = Vec::new();
    for &k in &ks {
        let main = ksed(&v, k)?;
        let mut used = Vec::new();
        for (name, route) in ROUTES {
            if name == "permutations" && n > KSED_PERMUTATION_LIMIT {
                continue;
            }
            used.push(name);
            if route(&v, k)? != main {
                disagreements.push(format!(
                    "k-SED({k}) route `{name}` disagrees with the closed form"
                ));
            }
        }
        routes_used = used.clone();
        entries.push(Entry::new(
            format!("k-SED({k})"),
            json!({"name": "ksed", "k": k, "routes": used}),
            main,
        ));
    }
    if let Some(text) = &args.alpha {
        let alpha = ProbabilityVector::over_thresholds(parse_list(text, "--alpha")?)?;
        entries.push(Entry::new(
            "alpha-SED",
            json!({"name": "alpha-sed", "alpha": exact_list(alpha.weights())}),
            alpha_sed(&v, &alpha)?,
        ));
    }
    if let Some(p) = args.p {
        entries.push(Entry::new(
            format!("Sol^{p}"),
            json!({"name": "sol", "p": p}),
            sol_p(&v, p)?,
        ));
    }
    if let Some(text) = &args.beta {
        let beta = ProbabilityVector::over_positions(parse_list(text, "--beta")?)?;
        entries.push(Entry::new(
            "Sol^beta",
            json!({"name": "sol-beta", "beta": exact_list(beta.weights())}),
            sol_beta(&v, &beta)?,
        ));
    }
    for name in &args.functionals {
        let phi = named_functional(name, args.k, args.p)?;
        let label = phi.name();
        entries.push(Entry::new(
            label.clone(),
            json!({"name": label}),
            phi.evaluate(&v)?,
        ));
    }

    if as_json {
        let rows: Vec<Value> = entries
            .into_iter()
            .map(|e| {
                let mut obj = e.json;
                obj["payoffs"] = json_payoffs(&e.payoffs);
                obj
            })
            .collect();
        emit(
            out,
            &document(
                "values",
                json!({"n": n, "values": rows, "route_disagreements": disagreements}),
            ),
        )?;
    } else {
        writeln!(out, "n = {n}")?;
        for e in &entries {
            writeln!(out, "{}", row(&e.label, &e.payoffs))?;
        }
        if disagreements.is_empty() {
            writeln!(out, "k-SED routes agree: {}", routes_used.join(", "))?;
        }
        for d in &disagreements {
            writeln!(out, "error: {d}")?;
        }
    }
    if !disagreements.is_empty() {
        return Err(InvariantViolation(disagreements.join("; ")).into());
    }
    Ok(())
}

fn parse_axiom(text: &str, k: usize) -> Result<Axiom> {
    Ok(if text.contains('(') {
        text.parse()?
    } else {
        Axiom::parse(text, k)?
    })
}

fn axiom_set(axioms: &[Axiom]) -> String {
    axioms
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

fn write_reports(out: &mut dyn Write, reports: &[AxiomReport<Rational>]) -> Result<()> {
    for r in reports {
        writeln!(
            out,
            "  {:<10} {:<16} exercised {:>5}  undefined {:>5}",
            r.axiom.to_string(),
            r.verdict.as_str(),
            r.exercised,
            r.undefined
        )?;
        if let Some(w) = &r.witness {
            writeln!(out, "    witness: {w}")?;
        }
    }
    Ok(())
}

pub fn axioms(args: &AxiomsArgs, as_json: bool, out: &mut dyn Write) -> Result<()> {
    if args.n == 0 || args.k == 0 || args.k > args.n {
        bail!("need 1 <= k <= n (got k = {}, n = {})", args.k, args.n);
    }
    let config = BatteryConfig::new(args.n, args.games).with_seed(args.seed);
    if args.games == 0 {
        bail!("--games must be positive");
    }
    let header = format!(
        "n = {}, k = {}, games = {}, seeds {}..={}",
        args.n,
        args.k,
        args.games,
        args.seed,
        args.seed + args.games as u64 - 1
    );

    if args.independence {
        let outcomes = run_independence::<Rational>(args.k, &config)?;
        let unexpected: Vec<String> = outcomes
            .iter()
            .filter(|o| !o.as_expected())
            .map(|o| format!("{} should fail only {}", o.case.value, o.case.fails))
            .collect();
        if as_json {
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "value": o.case.value.name(),
                        "axioms": axiom_set(&o.case.axioms),
                        "fails": o.case.fails.to_string(),
                        "as_expected": o.as_expected(),
                        "reports": battery_json(o.case.value.name(), o.k, &o.reports),
                    })
                })
                .collect();
            emit(
                out,
                &document(
                    "independence",
                    json!({"n": args.n, "k": args.k, "games": args.games, "seed": args.seed, "cases": rows}),
                ),
            )?;
        } else {
            writeln!(out, "independence catalogue, {header}")?;
            for o in &outcomes {
                let status = if o.as_expected() {
                    "as expected"
                } else {
                    "UNEXPECTED"
                };
                writeln!(
                    out,
                    "{} on {} (should fail {}): {status}",
                    o.case.value,
                    axiom_set(&o.case.axioms),
                    o.case.fails
                )?;
                write_reports(out, &o.reports)?;
            }
        }
        if !unexpected.is_empty() {
            return Err(InvariantViolation(unexpected.join("; ")).into());
        }
        return Ok(());
    }

    let phi = named_functional(&args.functional, Some(args.k), args.p)?;
    let axioms: Vec<Axiom> = if args.axioms.is_empty() {
        ksed_axioms(args.k)
    } else {
        args.axioms
            .iter()
            .map(|a| parse_axiom(a, args.k))
            .collect::<Result<_>>()?
    };
    let reports = axiom_battery(&phi, &axioms, &config)?;
    let matrix: Vec<(&str, Option<bool>)> = characterizations(args.k)
        .into_iter()
        .map(|(label, set)| {
            let verdicts: Option<Vec<bool>> = set
                .iter()
                .map(|a| reports.iter().find(|r| r.axiom == *a).map(|r| r.holds()))
                .collect();
            (label, verdicts.map(|v| v.iter().all(|&x| x)))
        })
        .collect();

    if as_json {
        let sets: Map<String, Value> = matrix
            .iter()
            .filter_map(|(label, pass)| pass.map(|p| (label.to_string(), json!(p))))
            .collect();
        emit(
            out,
            &document(
                "axioms",
                json!({
                    "functional": phi.name(),
                    "n": args.n,
                    "k": args.k,
                    "games": args.games,
                    "seed": args.seed,
                    "reports": battery_json(&phi.name(), args.k, &reports),
                    "characterizations": sets,
                }),
            ),
        )?;
    } else {
        writeln!(out, "{}, {header}", phi.name())?;
        write_reports(out, &reports)?;
        for (label, pass) in &matrix {
            if let Some(pass) = pass {
                writeln!(out, "{label}: {}", if *pass { "pass" } else { "fail" })?;
            }
        }
    }
    let is_ksed = matches!(phi, Functional::KSed(_));
    if is_ksed && reports.iter().any(|r| r.violated()) {
        return Err(
            InvariantViolation(format!("{} violates one of its own axioms", phi.name())).into(),
        );
    }
    Ok(())
}

fn describe(coordinate: &BidCoordinate) -> String {
    match coordinate {
        BidCoordinate::Threshold(k) => format!("threshold bid k={k}"),
        BidCoordinate::Order(pi) => format!("order bid {pi}"),
    }
}

fn deviation_json(report: &DeviationReport<Rational>) -> Value {
    let best: Vec<Value> = report
        .best
        .iter()
        .enumerate()
        .map(|(i, d)| match d {
            Some(d) => json!({
                "player": i + 1,
                "coordinate": describe(&d.coordinate),
                "delta": exact(&d.delta),
                "payoff": exact(&d.payoff),
                "baseline": exact(&report.baseline[i]),
                "profitable": d.payoff > report.baseline[i],
            }),
            None => json!({"player": i + 1}),
        })
        .collect();
    json!({"baseline": json_payoffs(&report.baseline), "best": best, "profitable": !report.profitable().is_empty()})
}

pub fn mechanism(args: &MechanismArgs, as_json: bool, out: &mut dyn Write) -> Result<()> {
    let v = read_game_file(&args.game)?;
    let n = v.n();
    let alpha = match (&args.alpha, args.k) {
        (Some(text), _) => ProbabilityVector::over_thresholds(parse_list(text, "--alpha")?)?,
        (None, Some(k)) => ProbabilityVector::point_mass(n, 1, k)?,
        (None, None) => bail!("give --alpha or --k"),
    };
    let report = verify_implementation(&v, &alpha, args.interpretation)?;
    let config = MechanismConfig::new(alpha, args.interpretation);
    let bids = candidate_equilibrium_bids(&v, &config)?;
    let outcome = run_mechanism(&v, &config, &bids)?;

    let mut violations = Vec::new();
    for play in &outcome.plays {
        if play.net.total() != play.stage3.total() {
            violations.push(format!(
                "stage-4 transfers do not balance at k={}, {}",
                play.k, play.order
            ));
        }
    }
    let grid = parse_list(&args.grid, "--grid")?;
    let deviations = if !args.no_deviations && n <= DEVIATION_LIMIT {
        Some(deviation_check(&v, &config, &bids, &grid)?)
    } else {
        None
    };

    if as_json {
        let mut body = report.to_json();
        body["candidate_payoff"] = json_payoffs(&outcome.payoffs);
        body["winning_thresholds"] = json!(outcome.winning_thresholds);
        body["winning_orders"] = json!(outcome.winning_orders.len());
        body["deviations"] = deviations.as_ref().map_or(Value::Null, deviation_json);
        emit(out, &document("mechanism", body))?;
    } else {
        writeln!(out, "{report}")?;
        writeln!(
            out,
            "{}",
            row("payoff with candidate bids", &outcome.payoffs)
        )?;
        match &deviations {
            Some(d) => {
                let grid_text: Vec<String> = grid.iter().map(exact).collect();
                writeln!(out, "deviation search over [{}]:", grid_text.join(", "))?;
                for (i, best) in d.best.iter().enumerate() {
                    match best {
                        Some(b) => writeln!(
                            out,
                            "  player {}: best {} by {} gives {} (baseline {}){}",
                            i + 1,
                            describe(&b.coordinate),
                            exact(&b.delta),
                            exact(&b.payoff),
                            exact(&d.baseline[i]),
                            if b.payoff > d.baseline[i] {
                                ", profitable"
                            } else {
                                ""
                            }
                        )?,
                        None => writeln!(out, "  player {}: no deviation tried", i + 1)?,
                    }
                }
            }
            None if !args.no_deviations => {
                writeln!(out, "deviation search skipped (n > {DEVIATION_LIMIT})")?
            }
            None => {}
        }
    }
    if !violations.is_empty() {
        return Err(InvariantViolation(violations.join("; ")).into());
    }
    Ok(())
}

fn coordinate_map(v: &Game, coords: &[Rational]) -> Map<String, Value> {
    v.coalitions()
        .skip(1)
        .filter(|c| !coords[c.index()].is_zero())
        .map(|c| (c.key(), json!(exact(&coords[c.index()]))))
        .collect()
}

pub fn bases(args: &BasesArgs, as_json: bool, out: &mut dyn Write) -> Result<()> {
    let v = read_game_file(&args.game)?;
    let dividends = v.dividends();
    let lambda = args
        .k
        .map(|k| v.lambda_coefficients(k).map(|c| (k, c)))
        .transpose()?;

    if as_json {
        let mut body = json!({"n": v.n(), "dividends": coordinate_map(&v, &dividends)});
        if let Some((k, coords)) = &lambda {
            body["hybrid"] = json!({"k": k, "coordinates": coordinate_map(&v, coords)});
        }
        return emit(out, &document("bases", body));
    }
    let print = |out: &mut dyn Write, title: String, coords: &[Rational]| -> Result<()> {
        writeln!(out, "{title}")?;
        for c in v
            .coalitions()
            .skip(1)
            .filter(|c| !coords[c.index()].is_zero())
        {
            writeln!(out, "  {c}: {}", exact(&coords[c.index()]))?;
        }
        Ok(())
    };
    print(out, "Harsanyi dividends:".into(), &dividends)?;
    if let Some((k, coords)) = &lambda {
        print(out, format!("hybrid basis coordinates (k = {k}):"), coords)?;
    }
    Ok(())
}

pub fn convert(args: &ConvertArgs, as_json: bool, out: &mut dyn Write) -> Result<()> {
    let coefficients: EslCoefficients<Rational> = match (&args.coefficients, &args.functional) {
        (Some(text), _) => EslCoefficients::new(parse_list(text, "--coefficients")?)?,
        (None, Some(name)) => {
            let n = args.n.context("--functional needs --n")?;
            let phi = named_functional(name, args.k, args.p)?;
            recover_esl_coefficients(&phi, n)?
        }
        (None, None) => bail!("give --coefficients or --functional"),
    };
    let beta = coefficients_to_beta(&coefficients);
    let threshold = csic_detect(&coefficients);

    if as_json {
        let beta_json = match &beta {
            Ok(b) => json!({"weights": exact_list(b.weights())}),
            Err(e) => json!({"error": e.to_string()}),
        };
        return emit(
            out,
            &document(
                "convert",
                json!({
                    "coefficients": exact_list(coefficients.as_slice()),
                    "beta": beta_json,
                    "ksed_threshold": threshold,
                }),
            ),
        );
    }
    writeln!(
        out,
        "coefficients: {}",
        exact_list(coefficients.as_slice()).join(", ")
    )?;
    match &beta {
        Ok(b) => writeln!(
            out,
            "solidarity weights (p = 0..n-1): {}",
            exact_list(b.weights()).join(", ")
        )?,
        Err(e) => writeln!(out, "solidarity weights: none ({e})")?,
    }
    match threshold {
        Some(k) => writeln!(out, "k-SED threshold: {k}")?,
        None => writeln!(out, "k-SED threshold: none")?,
    }
    Ok(())
}
