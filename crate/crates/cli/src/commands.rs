use std::path::Path;

use serde::Serialize;
use simulmeas_core::channel::ChannelReport;
use simulmeas_core::io::{parse_observables, parse_povm, ObservablesDoc, PovmDoc};
use simulmeas_core::sim::{asymptotic_experiment, estimate_report, simulate as draw, split_strategy};
use simulmeas_core::tradeoff::{marginal_triangle_sum, Domain};
use simulmeas_core::{
    build_channel, check_nonideal, disturbance_check, error_product_check, optimal_povm, region_sweep,
    tradeoff_check, AccuracyPair, BlochVector, DisturbanceVerdict, ErrorProductVerdict, JointPovm, NonidealReport,
    Observable, ObservablePair, Outcome, QubitState, Sign, SqrtInstrument, SweepConfig, TradeoffVerdict,
};

use crate::output::{self, float, opt_float, CliError};
use crate::{Format, PovmInput};

fn load(input: &PovmInput) -> Result<(JointPovm, ObservablePair), CliError> {
    let text = output::read(&input.povm)?;
    let povm = parse_povm(&text)?;
    let obs = match &input.obs {
        Some(path) => parse_observables(&output::read(path)?)?,
        None => parse_observables(&text)?,
    };
    Ok((povm, obs))
}

fn json_only(format: Format, command: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("`{command}` has no CSV output"))),
    }
}

fn state_from(v: [f64; 3]) -> Result<QubitState, CliError> {
    Ok(QubitState::new(BlochVector::from(v))?)
}

#[derive(Serialize)]
struct ValidateDoc {
    valid: bool,
    conforming: bool,
    nonideal: NonidealReport,
}

pub fn validate(input: &PovmInput, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    json_only(format, "validate")?;
    let (povm, obs) = load(input)?;
    let nonideal = check_nonideal(&povm, &obs);
    let conforming = nonideal.both_conforming();
    output::write(out, &output::json(&ValidateDoc { valid: true, conforming, nonideal }))?;
    if conforming {
        return Ok(());
    }
    let failing = Observable::BOTH
        .into_iter()
        .filter(|w| !nonideal.get(*w).is_conforming())
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Err(CliError::Verdict(format!(
        "marginal(s) {failing} are not nonideal measurements of their observables"
    )))
}

#[derive(Serialize)]
struct AccuracyDoc {
    theta: f64,
    a: ChannelReport,
    b: ChannelReport,
}

pub fn accuracy(input: &PovmInput, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    json_only(format, "accuracy")?;
    let (povm, obs) = load(input)?;
    let a = build_channel(&povm, &obs, Observable::A)?.report();
    let b = build_channel(&povm, &obs, Observable::B)?.report();
    output::write(out, &output::json(&AccuracyDoc { theta: obs.theta(), a, b }))
}

#[derive(Serialize)]
struct TradeoffDoc {
    accuracies: AccuracyPair,
    domain: Domain,
    tradeoff: TradeoffVerdict,
    error_product: ErrorProductVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    triangle_sum: Option<f64>,
}

pub fn tradeoff(
    povm: Option<&Path>,
    obs: Option<&Path>,
    x_a: Option<f64>,
    x_b: Option<f64>,
    theta: Option<f64>,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    json_only(format, "tradeoff")?;
    let (accuracies, triangle_sum) = match (povm, x_a, x_b, theta) {
        (Some(povm), None, None, None) => {
            let (povm, obs) = load(&PovmInput { povm: povm.to_owned(), obs: obs.map(Path::to_owned) })?;
            (AccuracyPair::from_povm(&povm, &obs)?, Some(marginal_triangle_sum(&povm)))
        }
        (None, Some(a), Some(b), Some(t)) if obs.is_none() => (AccuracyPair::new(a, b, t)?, None),
        _ => {
            return Err(CliError::Usage(
                "give either --povm [--obs] or all of --x-a, --x-b, --theta".into(),
            ))
        }
    };
    let doc = TradeoffDoc {
        accuracies,
        domain: accuracies.domain(),
        tradeoff: tradeoff_check(&accuracies),
        error_product: error_product_check(&accuracies),
        triangle_sum,
    };
    output::write(out, &output::json(&doc))?;
    match doc.tradeoff {
        TradeoffVerdict::Satisfied { .. } => Ok(()),
        TradeoffVerdict::Violated { excess, .. } => Err(CliError::Verdict(format!(
            "accuracy trade-off violated by {}",
            float(excess)
        ))),
    }
}

#[derive(Serialize)]
struct OptimalDoc {
    #[serde(flatten)]
    povm: PovmDoc,
    #[serde(flatten)]
    observables: ObservablesDoc,
    accuracies: AccuracyPair,
}

pub fn optimal(theta: f64, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    json_only(format, "optimal")?;
    let obs = ObservablePair::with_angle(theta)?;
    let povm = optimal_povm(&obs);
    let doc = OptimalDoc {
        povm: PovmDoc::from_povm(&povm),
        observables: ObservablesDoc::from_pair(&obs),
        accuracies: AccuracyPair::from_povm(&povm, &obs)?,
    };
    output::write(out, &output::json(&doc))
}

#[derive(Serialize)]
struct SweepDoc {
    theta: f64,
    seed: u64,
    max_gap: f64,
    rows: Vec<simulmeas_core::SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<PovmDoc>>,
}

pub fn sweep(
    theta: f64,
    grid: usize,
    restarts: usize,
    seed: u64,
    witnesses: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let obs = ObservablePair::with_angle(theta)?;
    let result = region_sweep(&obs, &SweepConfig { grid_size: grid, restarts, seed })?;
    let text = match format {
        Format::Csv => output::csv(
            &["theta", "x_a_target", "x_b_achieved", "x_b_boundary", "gap"],
            result.rows.iter().map(|r| {
                vec![float(r.theta), float(r.x_a_target), float(r.x_b_achieved), float(r.x_b_boundary), float(r.gap)]
            }),
        )?,
        Format::Json => {
            let witnesses = witnesses.then(|| {
                result
                    .points
                    .iter()
                    .filter_map(|p| p.achieved_by.as_ref().map(PovmDoc::from_povm))
                    .collect()
            });
            output::json(&SweepDoc { theta, seed, max_gap: result.max_gap(), rows: result.rows.clone(), witnesses })
        }
    };
    output::write(out, &text)
}

#[derive(Serialize)]
struct CountRecord {
    i: Sign,
    j: Sign,
    count: u64,
}

#[derive(Serialize)]
struct SimulateDoc {
    seed: u64,
    n: u64,
    outcomes: Vec<CountRecord>,
}

pub fn simulate(
    input: &PovmInput,
    state: [f64; 3],
    n: u64,
    seed: u64,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (povm, _) = load_povm_only(input)?;
    let counts = draw(&povm, &state_from(state)?, n, seed)?;
    let records: Vec<CountRecord> =
        Outcome::ALL.iter().map(|o| CountRecord { i: o.i, j: o.j, count: counts.get(*o) }).collect();
    let text = match format {
        Format::Json => output::json(&SimulateDoc { seed, n, outcomes: records }),
        Format::Csv => output::csv(
            &["i", "j", "count"],
            records.iter().map(|r| vec![r.i.to_string(), r.j.to_string(), r.count.to_string()]),
        )?,
    };
    output::write(out, &text)
}

/// Simulation needs only the POVM; observables are loaded if present so a
/// bad `--obs` file is still reported.
fn load_povm_only(input: &PovmInput) -> Result<(JointPovm, Option<ObservablePair>), CliError> {
    let text = output::read(&input.povm)?;
    let povm = parse_povm(&text)?;
    let obs = match &input.obs {
        Some(path) => Some(parse_observables(&output::read(path)?)?),
        None => None,
    };
    Ok((povm, obs))
}

#[derive(Serialize)]
struct EstimateDoc<T> {
    seed: u64,
    state: BlochVector,
    #[serde(flatten)]
    report: T,
}

#[allow(clippy::too_many_arguments)]
pub fn estimate(
    input: &PovmInput,
    state: [f64; 3],
    n: u64,
    seed: u64,
    trials: u64,
    trials_csv: Option<&Path>,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (povm, obs) = load(input)?;
    let rho = state_from(state)?;
    if trials <= 1 {
        json_only(format, "estimate with --trials 1")?;
        if trials_csv.is_some() {
            return Err(CliError::Usage("--trials-csv needs --trials > 1".into()));
        }
        let counts = draw(&povm, &rho, n, seed)?;
        let report = estimate_report(&povm, &obs, &counts)?;
        return output::write(out, &output::json(&EstimateDoc { seed, state: rho.polarization(), report }));
    }

    let report = asymptotic_experiment(&povm, &obs, &rho, n, trials, seed)?;
    let per_trial = || {
        output::csv(
            &["trial", "p_star_a", "p_star_b"],
            report
                .per_trial
                .iter()
                .map(|t| vec![t.trial.to_string(), opt_float(t.p_star_a), opt_float(t.p_star_b)]),
        )
    };
    if let Some(path) = trials_csv {
        output::write(Some(path), &per_trial()?)?;
    }
    let text = match format {
        Format::Json => output::json(&EstimateDoc { seed, state: rho.polarization(), report: &report }),
        Format::Csv => per_trial()?,
    };
    output::write(out, &text)
}

#[derive(Serialize)]
struct SequentialDoc {
    eta: f64,
    theta: f64,
    #[serde(flatten)]
    verdict: DisturbanceVerdict,
}

pub fn sequential(eta: f64, theta: f64, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    json_only(format, "sequential")?;
    let obs = ObservablePair::with_angle(theta)?;
    let inst = SqrtInstrument::for_observables(eta, &obs)?;
    let verdict = disturbance_check(&inst, &obs)?;
    output::write(out, &output::json(&SequentialDoc { eta, theta, verdict }))
}

#[derive(Serialize)]
struct SplitDoc {
    xi: f64,
    theta: f64,
    effective: AccuracyPair,
    effective_domain: Domain,
    relabeled: AccuracyPair,
}

pub fn split(xi: f64, theta: f64, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    json_only(format, "split")?;
    let obs = ObservablePair::with_angle(theta)?;
    let s = split_strategy(&obs, xi)?;
    let doc = SplitDoc { xi, theta, effective: s.effective, effective_domain: s.effective.domain(), relabeled: s.relabeled };
    output::write(out, &output::json(&doc))
}
