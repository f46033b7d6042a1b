//! Independent checks: Yang-Baxter residuals, product-rule identities at
//! random points, and basis expansion by exact linear solve.
//!
//! Every check draws its randomness from a caller-supplied generator. Trials
//! receive their own seeds up front and then run in parallel, so reports are
//! deterministic for a fixed seed regardless of thread count.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{solve_exact, ExactScalar, Field};
use crate::error::{Error, Result};
use crate::puzzles::{expand_6v, expand_hs_at, default_rows_hs};
use crate::sampling::{random_generic_q, random_rational, seeded};
use crate::symmetric::{random_qs, spin_hl_f, wavefunction_h_at, Composition, EvalPoint};
use crate::weights::{general_weight, EdgeLabel, SpinParams, TileState};

/// Fresh point sets tried by the oracle before a singular system is fatal.
pub const ORACLE_RETRIES: usize = 5;

/// Redraws allowed inside a single trial when a sample point hits a pole.
const POLE_REDRAWS: usize = 20;

/// One fixed-boundary instance of the Yang-Baxter equation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct YbeInstance {
    pub r: usize,
    /// Capacities `(L, M, N)` of the lines carrying `x`, `y`, `z`.
    pub spins: [u32; 3],
    pub x: ExactScalar,
    pub y: ExactScalar,
    pub z: ExactScalar,
    pub a: [EdgeLabel; 3],
    pub b: [EdgeLabel; 3],
}

impl YbeInstance {
    pub fn new(
        r: usize,
        spins: [u32; 3],
        rapidities: [ExactScalar; 3],
        a: [EdgeLabel; 3],
        b: [EdgeLabel; 3],
    ) -> Result<Self> {
        if !(1..=2).contains(&r) {
            return Err(Error::Invariant(format!("rank must be 1 or 2, got {r}")));
        }
        if spins.contains(&0) {
            return Err(Error::Invariant("spins must be positive".into()));
        }
        for (i, (ai, bi)) in a.iter().zip(&b).enumerate() {
            if ai.rank() != r || bi.rank() != r {
                return Err(Error::Invariant(format!("boundary labels must have rank {r}")));
            }
            if ai.total() > spins[i] || bi.total() > spins[i] {
                return Err(Error::Invariant(format!("label on line {} exceeds spin {}", i + 1, spins[i])));
            }
        }
        let [x, y, z] = rapidities;
        Ok(Self { r, spins, x, y, z, a, b })
    }

    /// Random conserving boundary and rapidities.
    pub fn random<R: Rng>(rng: &mut R, r: usize, spins: [u32; 3]) -> Result<Self> {
        let pick = |rng: &mut R, cap: u32| {
            let all = EdgeLabel::all_within(r, cap);
            all[rng.gen_range(0..all.len())].clone()
        };
        let a = [pick(rng, spins[0]), pick(rng, spins[1]), pick(rng, spins[2])];
        let total = a[0].checked_add(&a[1]).and_then(|t| t.checked_add(&a[2])).expect("same rank");
        let mut b = a.clone();
        for _ in 0..100 {
            let b1 = pick(rng, spins[0]);
            let b2 = pick(rng, spins[1]);
            let Some(b3) = total.checked_sub(&b1).and_then(|t| t.checked_sub(&b2)) else { continue };
            if b3.total() <= spins[2] {
                b = [b1, b2, b3];
                break;
            }
        }
        let rapidities = loop {
            let v = [random_rational(rng), random_rational(rng), random_rational(rng)];
            if v[0] != v[1] && v[0] != v[2] && v[1] != v[2] {
                break v;
            }
        };
        Self::new(r, spins, rapidities, a, b)
    }
}

/// Signature of a vertex weight `W_{L,M}(x; q; tile)` used by [`ybe_residual_with`].
pub trait YbeWeight: Fn(&SpinParams, &ExactScalar, &ExactScalar, &TileState) -> Result<ExactScalar> {}
impl<T: Fn(&SpinParams, &ExactScalar, &ExactScalar, &TileState) -> Result<ExactScalar>> YbeWeight for T {}

/// LHS minus RHS of the Yang-Baxter equation for the general weights.
pub fn ybe_residual(inst: &YbeInstance, q: &ExactScalar) -> Result<ExactScalar> {
    ybe_residual_with(inst, q, |p: &SpinParams, x: &ExactScalar, q: &ExactScalar, t: &TileState| {
        general_weight(p, x, q, &ExactScalar::zero(), t)
    })
}

/// [`ybe_residual`] with an arbitrary weight in place of the general one.
pub fn ybe_residual_with(inst: &YbeInstance, q: &ExactScalar, weight: impl YbeWeight) -> Result<ExactScalar> {
    let [l, m, n] = inst.spins;
    let lm = SpinParams::integer(l, m, inst.r)?;
    let ln = SpinParams::integer(l, n, inst.r)?;
    let mn = SpinParams::integer(m, n, inst.r)?;
    let xy = inst.x.try_div(&inst.y)?;
    let xz = inst.x.try_div(&inst.z)?;
    let yz = inst.y.try_div(&inst.z)?;
    let [a1, a2, a3] = &inst.a;
    let [b1, b2, b3] = &inst.b;
    let w = |p: &SpinParams, x: &ExactScalar, a: &EdgeLabel, b: &EdgeLabel, c: &EdgeLabel, d: &EdgeLabel| {
        weight(p, x, q, &TileState::new(a.clone(), b.clone(), c.clone(), d.clone()))
    };

    let mut lhs = ExactScalar::zero();
    for c1 in EdgeLabel::all_within(inst.r, l) {
        let Some(c2) = a1.checked_add(a2).and_then(|t| t.checked_sub(&c1)) else { continue };
        let Some(c3) = a3.checked_add(&c1).and_then(|t| t.checked_sub(b1)) else { continue };
        if c2.total() > m || c3.total() > n {
            continue;
        }
        let t = w(&lm, &xy, a2, a1, &c2, &c1)?;
        if t.is_zero() {
            continue;
        }
        lhs = lhs + t * w(&ln, &xz, a3, &c1, &c3, b1)? * w(&mn, &yz, &c3, &c2, b3, b2)?;
    }

    let mut rhs = ExactScalar::zero();
    for c3 in EdgeLabel::all_within(inst.r, n) {
        let Some(c2) = a3.checked_add(a2).and_then(|t| t.checked_sub(&c3)) else { continue };
        let Some(c1) = c3.checked_add(a1).and_then(|t| t.checked_sub(b3)) else { continue };
        if c2.total() > m || c1.total() > l {
            continue;
        }
        let t = w(&mn, &yz, a3, a2, &c3, &c2)?;
        if t.is_zero() {
            continue;
        }
        rhs = rhs + t * w(&ln, &xz, &c3, a1, b3, &c1)? * w(&lm, &xy, &c2, &c1, b2, b1)?;
    }
    Ok(lhs - rhs)
}

/// A recorded failure: the offending case and point, and either the nonzero
/// residual or the error raised.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub point: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<ExactScalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Self { check: check.into(), trials: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: Report) {
        self.trials += other.trials;
        self.failures.extend(other.failures);
    }
}

enum Outcome {
    Pass,
    Fail(Failure),
}

fn run_trials<R, F>(check: &str, trials: usize, rng: &mut R, trial: F) -> Report
where
    R: Rng,
    F: Fn(&mut crate::sampling::SampleRng) -> Outcome + Sync,
{
    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    let outcomes: Vec<Outcome> = seeds.par_iter().map(|&seed| trial(&mut seeded(seed))).collect();
    let failures = outcomes
        .into_iter()
        .filter_map(|o| match o {
            Outcome::Pass => None,
            Outcome::Fail(f) => Some(f),
        })
        .collect();
    Report { check: check.into(), trials, failures }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

/// Draws `trials` random instances of rank `r` and spins `spins` and
/// checks each residual is zero.
pub fn check_ybe<R: Rng>(r: usize, spins: [u32; 3], trials: usize, rng: &mut R) -> Report {
    let case = format!("r={r} spins={spins:?}");
    run_trials("ybe", trials, rng, |rng| {
        let mut last = None;
        for _ in 0..POLE_REDRAWS {
            let inst = match YbeInstance::random(rng, r, spins) {
                Ok(i) => i,
                Err(e) => return fail_error(&case, serde_json::Value::Null, e),
            };
            let q = random_generic_q(rng);
            let point = serde_json::json!({ "instance": to_json(&inst), "q": q.to_string() });
            match ybe_residual(&inst, &q) {
                Ok(v) if v.is_zero() => return Outcome::Pass,
                Ok(v) => return Outcome::Fail(Failure { case: case.clone(), point, residual: Some(v), error: None }),
                Err(e @ Error::Pole(_)) => last = Some((point, e)),
                Err(e) => return fail_error(&case, point, e),
            }
        }
        let (point, e) = last.expect("at least one draw");
        fail_error(&case, point, e)
    })
}

fn fail_error(case: &str, point: serde_json::Value, e: Error) -> Outcome {
    Outcome::Fail(Failure { case: case.into(), point, residual: None, error: Some(e.to_string()) })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductFamily {
    SixVertex,
    SpinHl,
}

impl fmt::Display for ProductFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductFamily::SixVertex => "six-vertex",
            ProductFamily::SpinHl => "spin-hl",
        })
    }
}

/// Inputs of a product rule: `H_m H_{l/w}` or `F_m F_l`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ProductCase {
    SixVertex { l: Composition, w: Composition, m: Composition },
    SpinHl { l: Composition, m: Composition },
}

impl fmt::Display for ProductCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductCase::SixVertex { l, w, m } => write!(f, "six-vertex l={l} w={w} m={m}"),
            ProductCase::SpinHl { l, m } => write!(f, "spin-hl l={l} m={m}"),
        }
    }
}

impl ProductCase {
    pub fn family(&self) -> ProductFamily {
        match self {
            ProductCase::SixVertex { .. } => ProductFamily::SixVertex,
            ProductCase::SpinHl { .. } => ProductFamily::SpinHl,
        }
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        match self {
            ProductCase::SixVertex { m, .. } | ProductCase::SpinHl { m, .. } => m.size() as usize,
        }
    }

    /// Length of the compositions `k` in the expansion.
    pub fn rows(&self) -> usize {
        match self {
            ProductCase::SixVertex { l, m, .. } => m.len().max(m.trimmed().len() + l.len()),
            ProductCase::SpinHl { l, m } => default_rows_hs(l, m),
        }
    }

    /// `m` padded with zeros to [`ProductCase::rows`].
    pub fn padded_m(&self) -> Result<Composition> {
        match self {
            ProductCase::SixVertex { m, .. } | ProductCase::SpinHl { m, .. } => m.padded(self.rows()),
        }
    }

    /// Every `k` that may appear in the expansion.
    pub fn basis(&self) -> Vec<Composition> {
        let all = Composition::all_of_size(self.n() as u32, self.rows());
        match self.family() {
            ProductFamily::SixVertex => all.into_iter().filter(Composition::is_binary).collect(),
            ProductFamily::SpinHl => all,
        }
    }

    /// Left-hand side of the product rule at `point`.
    pub fn product_at(&self, point: &EvalPoint) -> Result<ExactScalar> {
        match self {
            ProductCase::SixVertex { l, w, .. } => {
                let m = self.padded_m()?;
                let zeros = Composition::zeros(m.len());
                Ok(wavefunction_h_at(&m, &zeros, &point.xs, &point.q)? * wavefunction_h_at(l, w, &point.xs, &point.q)?)
            }
            ProductCase::SpinHl { l, m } => Ok(spin_hl_f(m, point)? * spin_hl_f(l, point)?),
        }
    }

    /// Puzzle coefficients evaluated at `(q, s)`, zero terms dropped.
    pub fn expansion_at(&self, q: &ExactScalar, s: &ExactScalar) -> Result<BTreeMap<Composition, ExactScalar>> {
        let terms: Vec<(Composition, ExactScalar)> = match self {
            ProductCase::SixVertex { l, w, .. } => expand_6v(l, w, &self.padded_m()?)?
                .into_iter()
                .map(|t| (t.k, t.coeff.evaluate(q, s)))
                .collect(),
            ProductCase::SpinHl { l, m } => expand_hs_at(l, m, Some(self.rows()), q, s)?,
        };
        Ok(terms.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }
}

/// Basis function `H_k` or `F_k` at `point`.
pub fn basis_value(family: ProductFamily, k: &Composition, point: &EvalPoint) -> Result<ExactScalar> {
    match family {
        ProductFamily::SixVertex => wavefunction_h_at(k, &Composition::zeros(k.len()), &point.xs, &point.q),
        ProductFamily::SpinHl => spin_hl_f(k, point),
    }
}

fn draw_point<R: Rng>(rng: &mut R, family: ProductFamily, n: usize, q: &ExactScalar, s: &ExactScalar) -> EvalPoint {
    loop {
        let p = EvalPoint::random_with(rng, n, q.clone(), s.clone());
        // six-vertex weights have a pole at x = 1/q
        if family == ProductFamily::SpinHl || p.xs.iter().all(|x| !(x.clone() * q).is_one()) {
            return p;
        }
    }
}

/// Checks the product rule for `case` at `trials` random points.
pub fn check_product_rule<R: Rng>(case: &ProductCase, trials: usize, rng: &mut R) -> Report {
    let name = case.to_string();
    let family = case.family();
    run_trials("product", trials, rng, |rng| {
        let mut last = None;
        for _ in 0..POLE_REDRAWS {
            let (q, s) = match family {
                ProductFamily::SixVertex => (random_generic_q(rng), ExactScalar::zero()),
                ProductFamily::SpinHl => random_qs(rng),
            };
            let point = draw_point(rng, family, case.n(), &q, &s);
            let residual = (|| {
                let lhs = case.product_at(&point)?;
                let mut rhs = ExactScalar::zero();
                for (k, c) in case.expansion_at(&q, &s)? {
                    rhs = rhs + c * basis_value(family, &k, &point)?;
                }
                Ok::<_, Error>(lhs - rhs)
            })();
            match residual {
                Ok(v) if v.is_zero() => return Outcome::Pass,
                Ok(v) => return Outcome::Fail(Failure { case: name.clone(), point: to_json(&point), residual: Some(v), error: None }),
                Err(e @ Error::Pole(_)) => last = Some((point, e)),
                Err(e) => return fail_error(&name, to_json(&point), e),
            }
        }
        let (point, e) = last.expect("at least one draw");
        fail_error(&name, to_json(&point), e)
    })
}

/// Coefficients `c_k` with `Σ c_k B_k = product` at every point, by exact
/// least-squares-free solve (the system must be consistent).
pub fn expansion_oracle(
    case: &ProductCase,
    basis: &[Composition],
    points: &[EvalPoint],
) -> Result<BTreeMap<Composition, ExactScalar>> {
    Ok(expansion_oracle_batch(std::slice::from_ref(case), basis, points)?.remove(0))
}

/// [`expansion_oracle`] for several cases sharing one family, one basis and
/// one point set; the evaluation matrix is built once.
pub fn expansion_oracle_batch(
    cases: &[ProductCase],
    basis: &[Composition],
    points: &[EvalPoint],
) -> Result<Vec<BTreeMap<Composition, ExactScalar>>> {
    let Some(first) = cases.first() else { return Ok(Vec::new()) };
    let family = first.family();
    if cases.iter().any(|c| c.family() != family || c.n() != first.n()) {
        return Err(Error::Invariant("batched cases must share family and variable count".into()));
    }
    if points.len() < basis.len() {
        return Err(Error::Singular(format!("{} points for {} basis functions", points.len(), basis.len())));
    }
    if let Some(p) = points.iter().find(|p| p.q != points[0].q || p.s != points[0].s) {
        return Err(Error::Invariant(format!("point {p:?} has a different (q, s)")));
    }
    let matrix: Vec<Vec<ExactScalar>> = points
        .par_iter()
        .map(|p| basis.iter().map(|k| basis_value(family, k, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let rhs: Vec<Vec<ExactScalar>> = points
        .par_iter()
        .map(|p| cases.iter().map(|c| c.product_at(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let solution = solve_exact(&matrix, &rhs)?;
    Ok((0..cases.len())
        .map(|j| {
            basis
                .iter()
                .zip(&solution)
                .filter(|(_, row)| !row[j].is_zero())
                .map(|(k, row)| (k.clone(), row[j].clone()))
                .collect()
        })
        .collect())
}

/// [`expansion_oracle_batch`] at fixed `(q, s)` with `basis.len() + 2` fresh
/// random points, redrawn up to [`ORACLE_RETRIES`] times on singular systems.
pub fn expansion_oracle_sampled<R: Rng>(
    cases: &[ProductCase],
    basis: &[Composition],
    q: &ExactScalar,
    s: &ExactScalar,
    rng: &mut R,
) -> Result<Vec<BTreeMap<Composition, ExactScalar>>> {
    let Some(first) = cases.first() else { return Ok(Vec::new()) };
    let mut last = None;
    for _ in 0..ORACLE_RETRIES {
        let points: Vec<EvalPoint> =
            (0..basis.len() + 2).map(|_| draw_point(rng, first.family(), first.n(), q, s)).collect();
        match expansion_oracle_batch(cases, basis, &points) {
            Err(e @ (Error::Singular(_) | Error::Pole(_))) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("retry budget is positive"))
}

/// Compares puzzle coefficients with the linear-solve oracle at `trials`
/// random `(q, s)`. Cases are grouped by family, size and row count so each
/// group shares one evaluation matrix per trial.
pub fn check_oracle<R: Rng>(cases: &[ProductCase], trials: usize, rng: &mut R) -> Report {
    let mut groups: BTreeMap<(u8, usize, usize), Vec<ProductCase>> = BTreeMap::new();
    for c in cases {
        let tag = match c.family() {
            ProductFamily::SixVertex => 0,
            ProductFamily::SpinHl => 1,
        };
        groups.entry((tag, c.n(), c.rows())).or_default().push(c.clone());
    }
    let mut report = Report::new("oracle");
    for group in groups.values() {
        let family = group[0].family();
        let basis = group[0].basis();
        for _ in 0..trials {
            let (q, s) = match family {
                ProductFamily::SixVertex => (random_generic_q(rng), ExactScalar::zero()),
                ProductFamily::SpinHl => random_qs(rng),
            };
            let point = serde_json::json!({ "q": q.to_string(), "s": s.to_string() });
            report.trials += group.len();
            let oracle = match expansion_oracle_sampled(group, &basis, &q, &s, rng) {
                Ok(o) => o,
                Err(e) => {
                    for c in group {
                        report.failures.push(Failure {
                            case: c.to_string(),
                            point: point.clone(),
                            residual: None,
                            error: Some(e.to_string()),
                        });
                    }
                    continue;
                }
            };
            let puzzle: Vec<Result<BTreeMap<Composition, ExactScalar>>> =
                group.par_iter().map(|c| c.expansion_at(&q, &s)).collect();
            for ((c, o), p) in group.iter().zip(oracle).zip(puzzle) {
                match p {
                    Ok(p) if p == o => {}
                    Ok(p) => {
                        let residual = o
                            .keys()
                            .chain(p.keys())
                            .map(|k| {
                                let a = o.get(k).cloned().unwrap_or_else(ExactScalar::zero);
                                let b = p.get(k).cloned().unwrap_or_else(ExactScalar::zero);
                                (a - b).abs()
                            })
                            .max();
                        report.failures.push(Failure { case: c.to_string(), point: point.clone(), residual, error: None });
                    }
                    Err(e) => report.failures.push(Failure {
                        case: c.to_string(),
                        point: point.clone(),
                        residual: None,
                        error: Some(e.to_string()),
                    }),
                }
            }
        }
    }
    report
}

/// Every spin Hall-Littlewood pair `(m, l)` with `size <= max_n` and
/// lengths in `1..=max_len`.
pub fn spin_hl_pairs(max_n: u32, max_len: usize) -> Vec<ProductCase> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let comps: Vec<Composition> = (1..=max_len).flat_map(|len| Composition::all_of_size(n, len)).collect();
        for m in &comps {
            for l in &comps {
                out.push(ProductCase::SpinHl { l: l.clone(), m: m.clone() });
            }
        }
    }
    out
}

/// Every six-vertex boundary `(l, w, m)` with `len(m) <= max_p`,
/// `len(l) <= max_len` and `count(m) <= max_n`.
pub fn six_vertex_cases(max_p: usize, max_len: usize, max_n: u32) -> Vec<ProductCase> {
    let binaries = |len: usize| -> Vec<Composition> {
        (0..1u32 << len)
            .map(|bits| Composition::new((0..len).map(|i| (bits >> (len - 1 - i)) & 1).collect()))
            .collect()
    };
    let mut out = Vec::new();
    for p in 1..=max_p {
        for m in binaries(p).into_iter().filter(|m| m.size() <= max_n) {
            for len in 1..=max_len {
                let strings = binaries(len);
                for l in &strings {
                    for w in &strings {
                        if l.size() == w.size() + m.size() {
                            out.push(ProductCase::SixVertex { l: l.clone(), w: w.clone(), m: m.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}
