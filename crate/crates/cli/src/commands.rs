use serde::Serialize;
use serde_json::{json, Value};
use spinhl_core::puzzles::{
    coeff_6v, expand_6v, expand_hs, puzzles_6v, puzzles_hs, structure_constant_hs, StructureConstant,
};
use spinhl_core::sampling::seeded;
use spinhl_core::symmetric::{borodin_f, spin_hl_f, wavefunction_h_at};
use spinhl_core::verify::{
    check_oracle, check_product_rule, check_ybe, six_vertex_cases, spin_hl_pairs, ProductCase, Report,
};
use spinhl_core::{Composition, Error, EvalPoint, ExactScalar, LatticeConfig};

use crate::args::{Check, Command, ComputeArgs, ExpandArgs, FunctionFamily, PuzzleFamily, PuzzlesArgs, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::Parse(_) | Error::Domain(_) | Error::Unsupported(_) => {
                CliError::Input(e.to_string())
            }
            Error::Pole(_) | Error::Singular(_) | Error::Inconsistent(_) => CliError::Compute(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub json: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Self { json, passed: true }
    }
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Compute(a) => compute(a),
        Command::Expand(a) => expand(a),
        Command::Puzzles(a) => puzzles(a),
        Command::Verify(a) => verify(a),
    }
}

fn compute(a: ComputeArgs) -> Result<Outcome, CliError> {
    let xs = a.x.0;
    let value = match a.family {
        FunctionFamily::H => {
            let w = a.w.unwrap_or_else(|| Composition::zeros(a.m.len()));
            wavefunction_h_at(&a.m, &w, &xs, &a.q)?
        }
        FunctionFamily::F | FunctionFamily::Fcal => {
            if a.w.is_some() {
                return Err(CliError::Input("--w only applies to --family H".into()));
            }
            let s = a.s.ok_or_else(|| CliError::Input("--s is required for F and Fcal".into()))?;
            let point = EvalPoint::new(xs, a.q, s);
            point.validate()?;
            match a.family {
                FunctionFamily::F => spin_hl_f(&a.m, &point)?,
                _ => borodin_f(&a.m, &point)?,
            }
        }
    };
    Ok(Outcome::ok(json!({ "value": value })))
}

fn default_w(w: Option<Composition>, l: &Composition) -> Composition {
    w.unwrap_or_else(|| Composition::zeros(l.len()))
}

fn reject_w(w: &Option<Composition>) -> Result<(), CliError> {
    if w.is_some() {
        return Err(CliError::Input("--w only applies to --family six-vertex".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct HsTerm {
    k: Composition,
    value: String,
    sign: i8,
    s_power: i64,
    puzzles: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_point: Option<ExactScalar>,
}

fn hs_term(c: &StructureConstant, at: Option<(&ExactScalar, &ExactScalar)>) -> Result<HsTerm, CliError> {
    Ok(HsTerm {
        k: c.k.clone(),
        value: c.value().to_string(),
        sign: c.sign,
        s_power: c.s_power,
        puzzles: c.puzzle_count,
        at_point: at.map(|(q, s)| c.evaluate(q, s)).transpose()?,
    })
}

fn expand(a: ExpandArgs) -> Result<Outcome, CliError> {
    match a.family {
        PuzzleFamily::SixVertex => {
            if a.rows.is_some() || a.s.is_some() {
                return Err(CliError::Input("--rows and --s only apply to --family spin-hl".into()));
            }
            let w = default_w(a.w, &a.l);
            let terms: Vec<Value> = expand_6v(&a.l, &w, &a.m)?
                .into_iter()
                .map(|t| {
                    let mut v = json!({
                        "k": t.k,
                        "coeff": t.coeff.to_string(),
                        "puzzles": t.puzzles,
                    });
                    if let Some(q) = &a.q {
                        v["at_point"] = json!(t.coeff.evaluate(q, &ExactScalar::from(0)));
                    }
                    v
                })
                .collect();
            Ok(Outcome::ok(json!({ "family": "six-vertex", "m": a.m, "l": a.l, "w": w, "terms": terms })))
        }
        PuzzleFamily::SpinHl => {
            reject_w(&a.w)?;
            let at = match (&a.q, &a.s) {
                (Some(q), Some(s)) => Some((q, s)),
                (None, None) => None,
                _ => return Err(CliError::Input("--q and --s must be given together".into())),
            };
            let terms = expand_hs(&a.l, &a.m, a.rows)?
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| hs_term(c, at))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::ok(json!({ "family": "spin-hl", "m": a.m, "l": a.l, "terms": terms })))
        }
    }
}

fn render(config: &LatticeConfig) -> Vec<Vec<String>> {
    config
        .cells
        .iter()
        .map(|row| row.iter().map(|t| format!("{:?}/{:?}/{:?}/{:?}", t.a.counts(), t.b.counts(), t.c.counts(), t.d.counts())).collect())
        .collect()
}

fn puzzles(a: PuzzlesArgs) -> Result<Outcome, CliError> {
    match a.family {
        PuzzleFamily::SixVertex => {
            let w = default_w(a.w, &a.l);
            let coeff = coeff_6v(&a.l, &w, &a.m, &a.k)?;
            let configs = puzzles_6v(&a.l, &w, &a.m, &a.k)?;
            let mut out = json!({
                "family": "six-vertex",
                "k": a.k,
                "coeff": coeff.to_string(),
                "count": configs.len(),
            });
            if a.list {
                out["puzzles"] = configs
                    .iter()
                    .map(|(c, wt)| json!({ "tiles": render(c), "weight": wt.to_string() }))
                    .collect();
            }
            Ok(Outcome::ok(out))
        }
        PuzzleFamily::SpinHl => {
            reject_w(&a.w)?;
            let sc = structure_constant_hs(&a.l, &a.m, &a.k)?;
            let mut out = json!({
                "family": "spin-hl",
                "k": a.k,
                "value": sc.value().to_string(),
                "count": sc.puzzle_count,
            });
            if a.list {
                out["puzzles"] = puzzles_hs(&a.l, &a.m, &a.k)?
                    .iter()
                    .map(|p| {
                        json!({
                            "tiles": render(&p.config),
                            "weight": p.weight.to_string(),
                            "contribution": p.contribution.to_string(),
                        })
                    })
                    .collect();
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn c(s: &str) -> Composition {
    s.parse().expect("built-in composition")
}

/// Worked boundaries checked by every product and oracle run.
fn worked_cases() -> Vec<ProductCase> {
    vec![
        ProductCase::SixVertex { l: c("101"), w: c("010"), m: c("01000") },
        ProductCase::SixVertex { l: c("1100"), w: c("0000"), m: c("1100") },
        ProductCase::SpinHl { l: c("1,2,0"), m: c("2,1,0,0") },
    ]
}

fn ybe_suite(trials: usize, rng: &mut spinhl_core::sampling::SampleRng) -> Report {
    let mut report = Report::new("ybe");
    for r in 1..=2 {
        for l in 1..=3 {
            for m in 1..=3 {
                for n in 1..=3 {
                    report.absorb(check_ybe(r, [l, m, n], trials, rng));
                }
            }
        }
    }
    report
}

fn product_suite(trials: usize, rng: &mut spinhl_core::sampling::SampleRng) -> Report {
    let mut report = Report::new("product");
    let cases = worked_cases().into_iter().chain(spin_hl_pairs(2, 3)).chain(six_vertex_cases(4, 3, 2));
    for case in cases {
        report.absorb(check_product_rule(&case, trials, rng));
    }
    report
}

fn oracle_suite(trials: usize, rng: &mut spinhl_core::sampling::SampleRng) -> Report {
    let cases: Vec<ProductCase> = worked_cases().into_iter().chain(spin_hl_pairs(2, 2)).collect();
    check_oracle(&cases, trials, rng)
}

fn verify(a: VerifyArgs) -> Result<Outcome, CliError> {
    if a.trials == 0 {
        return Err(CliError::Input("--trials must be positive".into()));
    }
    let mut rng = seeded(a.seed);
    let report = match a.check {
        Check::Ybe => ybe_suite(a.trials, &mut rng),
        Check::Product => product_suite(a.trials, &mut rng),
        Check::Oracle => oracle_suite(a.trials, &mut rng),
        Check::All => {
            let mut all = Report::new("all");
            all.absorb(ybe_suite(a.trials, &mut rng));
            all.absorb(product_suite(a.trials, &mut rng));
            all.absorb(oracle_suite(a.trials, &mut rng));
            all
        }
    };
    Ok(Outcome { passed: report.passed(), json: serde_json::to_value(&report).expect("report serializes") })
}
