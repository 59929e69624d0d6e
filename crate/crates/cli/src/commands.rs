use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use mextremal_core::certify::{
    ball3_left_inverse, bl1_left_inverse, monomial_left_inverse, prop24_certificate, properness_profile,
    verify_left_inverse, Certificate, MultiPolynomial, Verdict,
};
use mextremal_core::cplane::{blaschke_degree_of_data, BlaschkeDegree};
use mextremal_core::domains::sn_membership;
use mextremal_core::maps::{
    ball3_normal_form, edigarian_check, edigarian_complete, family_nc, family_prop1, family_prop40, family_propab,
    family_propmm, normalize_amplitudes, prop1_companion, thm32_forward, thm32_inverse, Ball3Params, MapFamily,
};
use mextremal_core::pick::{classify_pick, falsify_weak_extremality, FalsifierBudget, FalsifyOutcome, PickClass};
use mextremal_core::{
    certify, BlaschkeProduct, Complex64, DomainModel, EllipsoidSpec, Error, MapSpec, NumericPolicy, PickData,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{self, Report, Status, SCHEMA_VERSION};
use crate::{Cli, Verb};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {0}: {1}")]
    Io(String, std::io::Error),
    #[error("invalid input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] Error),
}

type Outcome = Result<(Status, Value), CliError>;

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    let text = fs::read_to_string(&cli.input).map_err(|e| CliError::Io(cli.input.display().to_string(), e))?;
    let input: Value = serde_json::from_str(&text)?;
    let mut policy = NumericPolicy::default();
    if let Some(n) = cli.samples {
        policy.boundary_samples = n;
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidParameter(format!("--tol {t} outside (0, 1)")).into());
        }
        policy.unimodular_tol = t;
        policy.singular_tol = t;
        policy.boundary_band = t;
    }
    let (status, result) = match cli.verb {
        Verb::Pick => pick(&input, &policy),
        Verb::Schur => schur(&input, &policy),
        Verb::Certify => certify_verb(&input, &policy, cli.seed),
        Verb::Edigarian => edigarian(&input),
        Verb::Ball3 => ball3(&input, &policy, cli.seed),
        Verb::Sn => sn(&input),
        Verb::Falsify => falsify(&input, cli.seed),
        Verb::Profile => profile(&input, cli.output.as_ref()),
        Verb::Family => family(&input),
    }?;
    let verb = cli.verb.to_possible_value().expect("no skipped verbs");
    let report = Report {
        tool: "mextremal",
        version: env!("CARGO_PKG_VERSION"),
        schema_version: SCHEMA_VERSION,
        verb: verb.get_name(),
        seed: cli.seed,
        policy,
        input,
        status,
        result,
    };
    report::write(&report, cli.output.as_deref())?;
    Ok(status)
}

fn parse<T: DeserializeOwned>(input: &Value) -> Result<T, CliError> {
    Ok(T::deserialize(input)?)
}

fn pick(input: &Value, policy: &NumericPolicy) -> Outcome {
    let data: PickData = parse(input)?;
    let v = classify_pick(&data, policy)?;
    let status = match v.class {
        PickClass::SingularPsd { .. } => Status::Success,
        PickClass::PositiveDefinite | PickClass::Indefinite => Status::Negative,
    };
    let meaning = match v.class {
        PickClass::SingularPsd { .. } => "weak extremal: only a Blaschke product interpolates",
        PickClass::PositiveDefinite => "not weak extremal: interpolable inside the disc",
        PickClass::Indefinite => "infeasible: no interpolant into the closed disc",
    };
    Ok((
        status,
        json!({ "verdict": v, "blaschke_degree": v.blaschke_degree(), "meaning": meaning }),
    ))
}

fn schur(input: &Value, policy: &NumericPolicy) -> Outcome {
    let data: PickData = parse(input)?;
    match blaschke_degree_of_data(data.nodes(), data.values(), policy) {
        Ok(d) => {
            let status = Status::from_bool(matches!(d, BlaschkeDegree::Extremal { .. }));
            Ok((status, json!({ "degree": serde_json::to_value(d)? })))
        }
        Err(Error::Infeasible(msg)) => Ok((Status::Negative, json!({ "infeasible": msg }))),
        Err(e) => Err(e.into()),
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Certified => Status::Success,
        Verdict::Refuted => Status::Negative,
        Verdict::Inconclusive => Status::Inconclusive,
    }
}

fn certificate_outcome(cert: Certificate) -> Outcome {
    Ok((verdict_status(cert.verdict), serde_json::to_value(cert)?))
}

/// Named left-inverse instances or an explicit `(f, F, B, D, m)`.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum CertifyInput {
    Explicit {
        map: MapSpec,
        domain: DomainModel,
        left_inverse: MultiPolynomial,
        blaschke: BlaschkeProduct,
        m: usize,
    },
    /// `(aλ^{m−1}, (1−a)λ^{m−1})` with `z₁ + z₂`.
    HalfEllipsoid { m: usize, a: f64 },
    /// `(aλ, aλ^{m−2}, bλ^{m−1})`, `4a² + b = 1`, with `4z₁z₂ + z₃`.
    L1Squared { m: usize, a: f64 },
    /// `(aλ, aλ^{m−2}, bλ^{m−1})`, `2a² + b = 1`, with `2z₁z₂ + z₃`.
    L2Squared { m: usize, a: f64 },
    /// Ball 3-extremal `(aλ, √(1−a²)λ²)`.
    Ball3 { a: f64 },
    /// `(aλ, bλ^m)` in the ball with `c·z₁^m + d·z₂`.
    Multiplier { m: usize, b: f64 },
    /// `λ ↦ λa` in `E(p)` with `∏ (z_j/a_j)^{m_j}`.
    Monomial { p: Vec<f64>, a: Vec<Complex64> },
    /// `(a_jλ^{m_j})` in `E(p)` with the weighted power-sum inverse.
    PowerMap { p: Vec<f64>, a: Vec<f64>, m_js: Vec<u32> },
}

fn certify_verb(input: &Value, policy: &NumericPolicy, seed: u64) -> Outcome {
    let verify = |fam: MapFamily, inv: MultiPolynomial, deg: usize, m: usize| {
        verify_left_inverse(&fam.map, &inv, &BlaschkeProduct::monomial(deg), &fam.domain, m, policy, seed)
    };
    let cert = match parse::<CertifyInput>(input)? {
        CertifyInput::Explicit {
            map,
            domain,
            left_inverse,
            blaschke,
            m,
        } => verify_left_inverse(&map, &left_inverse, &blaschke, &domain, m, policy, seed)?,
        CertifyInput::HalfEllipsoid { m, a } => {
            let inv = MultiPolynomial::from_real(2, &[(1.0, &[1, 0]), (1.0, &[0, 1])])?;
            verify(prop1_companion(m, a)?, inv, m - 1, m)?
        }
        CertifyInput::L1Squared { m, a } => {
            let inv = MultiPolynomial::from_real(3, &[(4.0, &[1, 1, 0]), (1.0, &[0, 0, 1])])?;
            verify(family_propab(m, a)?, inv, m - 1, m)?
        }
        CertifyInput::L2Squared { m, a } => {
            let inv = MultiPolynomial::from_real(3, &[(2.0, &[1, 1, 0]), (1.0, &[0, 0, 1])])?;
            verify(family_prop40(m, a)?, inv, m - 1, m)?
        }
        CertifyInput::Ball3 { a } => {
            let g = ball3_normal_form(Ball3Params::new(a, Complex64::new(0.0, 0.0))?, 2)?;
            let inv = ball3_left_inverse(a)?;
            verify_left_inverse(&g, &inv, &BlaschkeProduct::monomial(2), &DomainModel::ball(2)?, 3, policy, seed)?
        }
        CertifyInput::Multiplier { m, b } => prop24_certificate(m, b, policy, seed)?,
        CertifyInput::Monomial { p, a } => {
            let (inv, ms) = monomial_left_inverse(&EllipsoidSpec::new(p.clone())?, &a)?;
            let deg = ms.iter().map(|&k| k as usize).sum::<usize>();
            let map = certify::monomial_map(&a, &vec![1; a.len()])?;
            let blaschke = BlaschkeProduct::monomial(deg);
            verify_left_inverse(&map, &inv, &blaschke, &DomainModel::ellipsoid(p)?, deg + 1, policy, seed)?
        }
        CertifyInput::PowerMap { p, a, m_js } => {
            let inv = bl1_left_inverse(&EllipsoidSpec::new(p.clone())?, &a, &m_js)?;
            let ac: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let map = certify::monomial_map(&ac, &m_js)?;
            let m = m_js.iter().fold(1, |acc, &k| lcm(acc, k as usize));
            verify_left_inverse(&map, &inv, &BlaschkeProduct::monomial(m), &DomainModel::ellipsoid(p)?, m + 1, policy, seed)?
        }
    };
    certificate_outcome(cert)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdigarianInput {
    a: Vec<Complex64>,
    p: Vec<f64>,
    alpha: Vec<Vec<Complex64>>,
    r: Vec<Vec<u8>>,
    /// Rescale the amplitudes onto the identity before completing.
    #[serde(default)]
    normalize: bool,
}

fn edigarian(input: &Value) -> Outcome {
    let inp: EdigarianInput = parse(input)?;
    let a = if inp.normalize {
        normalize_amplitudes(&inp.p, &inp.a, &inp.alpha)?
    } else {
        inp.a
    };
    match edigarian_complete(a, inp.p, inp.alpha, inp.r) {
        Ok(params) => {
            let residual = edigarian_check(&params);
            Ok((
                Status::Success,
                json!({ "params": params, "identity_residual": residual, "m": params.m() }),
            ))
        }
        Err(Error::Infeasible(msg)) => Ok((Status::Negative, json!({ "infeasible": msg }))),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
enum Ball3Input {
    /// `(b, c)` of `(a·m_c, b·m_c²)` to normal-form `(α, β, γ)`.
    Forward { b: f64, c: Complex64 },
    /// `(β², γ) = (p, q)` back to real `(b, c)`.
    Inverse { p: f64, q: f64 },
    /// Certificate for the left inverse of `(aλ, √(1−a²)λ²)`.
    LeftInverse { a: f64 },
}

fn ball3(input: &Value, policy: &NumericPolicy, seed: u64) -> Outcome {
    match parse::<Ball3Input>(input)? {
        Ball3Input::Forward { b, c } => Ok((Status::Success, json!({ "normal_form": thm32_forward(b, c)? }))),
        Ball3Input::Inverse { p, q } => {
            let (b, c) = thm32_inverse(p, q)?;
            let back = thm32_forward(b, Complex64::new(c, 0.0))?;
            Ok((Status::Success, json!({ "b": b, "c": c, "normal_form": back })))
        }
        Ball3Input::LeftInverse { a } => {
            let g = ball3_normal_form(Ball3Params::new(a, Complex64::new(0.0, 0.0))?, 2)?;
            let inv = ball3_left_inverse(a)?;
            certificate_outcome(verify_left_inverse(
                &g,
                &inv,
                &BlaschkeProduct::monomial(2),
                &DomainModel::ball(2)?,
                3,
                policy,
                seed,
            )?)
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SnInput {
    p: Vec<f64>,
}

fn sn(input: &Value) -> Outcome {
    let d = sn_membership(&parse::<SnInput>(input)?.p)?;
    let values = d.value_set();
    Ok((Status::from_bool(d.member), json!({ "decision": d, "value_set": values })))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FalsifyInput {
    map: MapSpec,
    domain: DomainModel,
    nodes: Vec<Complex64>,
    #[serde(default)]
    budget: FalsifierBudget,
}

fn falsify(input: &Value, seed: u64) -> Outcome {
    let mut inp: FalsifyInput = parse(input)?;
    inp.budget.seed = seed;
    let out = falsify_weak_extremality(&inp.map, &inp.domain, &inp.nodes, &inp.budget)?;
    let status = match out {
        FalsifyOutcome::Falsified { .. } => Status::Negative,
        FalsifyOutcome::Unknown { .. } => Status::Inconclusive,
    };
    Ok((status, json!({ "outcome": out, "budget": inp.budget })))
}

fn default_rays() -> usize {
    64
}

fn default_radii() -> usize {
    5
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileInput {
    map: MapSpec,
    domain: DomainModel,
    #[serde(default = "default_rays")]
    rays: usize,
    #[serde(default = "default_radii")]
    radii: usize,
}

fn profile(input: &Value, output: Option<&PathBuf>) -> Outcome {
    let inp: ProfileInput = parse(input)?;
    let prof = properness_profile(&inp.map, &inp.domain, inp.rays, inp.radii)?;
    let csv_path = output.map(|p| p.with_extension("csv"));
    if let Some(path) = &csv_path {
        fs::write(path, prof.to_csv()).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    Ok((
        Status::from_bool(prof.almost_proper),
        json!({
            "hopf_constant": prof.hopf_constant,
            "final_radius": prof.final_radius,
            "max_final_defect": prof.max_final_defect,
            "approaching_fraction": prof.approaching_fraction,
            "almost_proper": prof.almost_proper,
            "rows": prof.rows.len(),
            "csv": csv_path.and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned())),
        }),
    ))
}

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
enum FamilyKind {
    Prop1 { m: usize, a: f64 },
    Prop1Companion { m: usize, a: f64 },
    Propab { m: usize, a: f64 },
    Prop40 { m: usize, a: f64 },
    Propmm { m: usize, a: f64 },
    Nc { p: Vec<f64>, a: Vec<Complex64>, zeros: Vec<Complex64> },
}

#[derive(Debug, Deserialize)]
struct FamilyInput {
    #[serde(flatten)]
    kind: FamilyKind,
    /// Optional Blaschke product to compose with.
    #[serde(default)]
    compose: Option<BlaschkeProduct>,
}

fn family(input: &Value) -> Outcome {
    let inp: FamilyInput = parse(input)?;
    let fam = match inp.kind {
        FamilyKind::Prop1 { m, a } => family_prop1(m, a)?,
        FamilyKind::Prop1Companion { m, a } => prop1_companion(m, a)?,
        FamilyKind::Propab { m, a } => family_propab(m, a)?,
        FamilyKind::Prop40 { m, a } => family_prop40(m, a)?,
        FamilyKind::Propmm { m, a } => family_propmm(m, a)?,
        FamilyKind::Nc { p, a, zeros } => family_nc(p, &a, &zeros)?,
    };
    let fam = match inp.compose {
        Some(b) => certify::compose_family_with_blaschke(&fam, &b)?,
        None => fam,
    };
    Ok((Status::Success, serde_json::to_value(fam)?))
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
