//! Resolvent polynomials: subset sums and products, the quartic cubic
//! resolvent, orbit-sum invariants, seeded Tschirnhausen retries and
//! sampled splitting-field containment.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::series::binomial_rows;
use crate::arith::{
    discriminant, even_split, integral_model, is_square, poly_from_power_sums_int, power_sums_int, trace_zero,
    tschirnhausen_transform, EgfSeries, IntPoly, RatPoly,
};
use crate::error::{Error, Result};
use crate::galois::GroupName;
use crate::modp::primes::primes_from;
use crate::modp::{roots_mod_pk, squarefree_degrees};
use crate::perm::{build_group, coset_action_table, CycleType, GroupHandle, SubgroupSpec};
use crate::ratfactor::target_degree_factor;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("subset size {k} out of range 1..={n}")));
    }
    Ok(())
}

fn require_monic(f: &IntPoly) -> Result<()> {
    if !f.is_monic() || f.deg() == 0 {
        return Err(Error::Domain("expected a monic nonconstant polynomial".into()));
    }
    Ok(())
}

/// Roots `{ sum of r_i over |T| = k }`.
pub fn subset_sum_resolvent(f: &IntPoly, k: usize) -> Result<IntPoly> {
    require_monic(f)?;
    let n = f.deg();
    check_k(n, k)?;
    let big_n = binom(n, k);
    let order = big_n + 1;
    let p = EgfSeries::new(power_sums_int(f, big_n)?, order);
    let rows = binomial_rows(order);
    let scaled: Vec<EgfSeries> = (1..=k).map(|j| p.scale_arg(j as i64)).collect();
    let mut e = vec![EgfSeries::one(order)];
    for i in 1..=k {
        let mut acc = EgfSeries::new(Vec::new(), order);
        for j in 1..=i {
            let term = e[i - j].mul_with(&scaled[j - 1], &rows);
            acc.add_assign_signed(&term, j % 2 == 0);
        }
        e.push(acc.div_exact(i)?);
    }
    let q = e.pop().expect("k >= 1").into_coeffs();
    poly_from_power_sums_int(&q, big_n)
}

/// `e_k` of values with power sums `p[1..=k]`.
fn elementary_from_power_sums(p: &[BigInt], k: usize) -> Result<BigInt> {
    let mut e = vec![BigInt::one()];
    for i in 1..=k {
        let mut s = BigInt::zero();
        for j in 1..=i {
            let t = &e[i - j] * &p[j];
            if j % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(i));
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        e.push(q);
    }
    Ok(e.swap_remove(k))
}

/// Roots `{ product of r_i over |T| = k }`.
pub fn subset_product_resolvent(f: &IntPoly, k: usize) -> Result<IntPoly> {
    require_monic(f)?;
    let n = f.deg();
    check_k(n, k)?;
    let big_n = binom(n, k);
    let ps = power_sums_int(f, big_n * k)?;
    let mut q = vec![BigInt::from(big_n)];
    for m in 1..=big_n {
        let inner: Vec<BigInt> = (0..=k).map(|j| ps[m * j].clone()).collect();
        q.push(elementary_from_power_sums(&inner, k)?);
    }
    poly_from_power_sums_int(&q, big_n)
}

/// Rational version through the integral model: roots of the model are
/// `s` times the roots of `g`, subset sums scale by `s`.
pub fn subset_sum_resolvent_rat(g: &RatPoly, k: usize) -> Result<RatPoly> {
    let (model, s) = integral_model(g)?;
    let r = subset_sum_resolvent(&model, k)?;
    Ok(unscale(&r, &s))
}

pub fn subset_product_resolvent_rat(g: &RatPoly, k: usize) -> Result<RatPoly> {
    let (model, s) = integral_model(g)?;
    let r = subset_product_resolvent(&model, k)?;
    Ok(unscale(&r, &s.pow(k as u32)))
}

/// Monic polynomial whose roots are those of `r` divided by `s`.
fn unscale(r: &IntPoly, s: &BigInt) -> RatPoly {
    if s.is_one() {
        return RatPoly::from(r.clone());
    }
    RatPoly::from(r.scale(s)).monic()
}

/// Roots `(r_i + r_j - e1/2)(r_k + r_l - e1/2)` over the three pairings.
pub fn cubic_resolvent(f: &IntPoly) -> Result<RatPoly> {
    if f.deg() != 4 || !f.is_monic() {
        return Err(Error::Domain("cubic resolvent needs a monic quartic".into()));
    }
    let shift = -BigRational::new(f.coeff(3), BigInt::from(4));
    let d = RatPoly::from(f.clone()).shift(&shift);
    let (p, q, r) = (d.coeff(2), d.coeff(1), d.coeff(0));
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    Ok(RatPoly::new(vec![&q * &q, &p * &p - &four * &r, -(two * &p), BigRational::one()]))
}

/// Squarefree over Q. Decided by a prime where the reduction stays
/// squarefree of full degree, falling back to an exact gcd.
pub fn is_squarefree(h: &IntPoly) -> bool {
    if h.deg() <= 1 {
        return true;
    }
    if primes_from(1009).take(24).any(|p| squarefree_degrees(h, p).is_some()) {
        return true;
    }
    h.gcd(&h.derivative()).deg() == 0
}

fn is_squarefree_rat(g: &RatPoly) -> bool {
    let (_, h) = g.to_primitive_int();
    is_squarefree(&h)
}

/// Upper bound on the absolute value of every complex root of a monic `f`.
fn root_bound(f: &IntPoly) -> BigInt {
    let n = f.deg();
    let mut m = BigInt::one();
    for i in 1..=n {
        let a = f.coeff(n - i).abs();
        if a.is_zero() {
            continue;
        }
        let r = a.nth_root(i as u32);
        let r = if r.pow(i as u32) == a { r } else { r + 1u32 };
        m = m.max(r);
    }
    m * 2u32
}

/// Exponent vectors `x_i -> x_{g(i)}` applied to `a`.
fn act(a: &[u32], g: &crate::perm::Perm) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (i, &e) in a.iter().enumerate() {
        out[g.apply(i)] = e;
    }
    out
}

/// Resolvent of `F = sum over U-images of x^a`, of degree `[G:U]`. The
/// invariant is evaluated at `p`-adic roots for a prime where `f` splits,
/// to a precision covering the coefficient bound. Needs `Gal(f) <= G`.
pub fn orbit_invariant_resolvent(f: &IntPoly, g: &GroupHandle, u: &GroupHandle, exponents: &[u32]) -> Result<IntPoly> {
    require_monic(f)?;
    let n = f.deg();
    if g.degree() != n || exponents.len() != n {
        return Err(Error::Domain(format!("degree {n} does not match the group or exponent vector")));
    }
    if !u.is_subgroup_of(g) {
        return Err(Error::InvalidSpec("U is not a subgroup of G".into()));
    }
    if !g.is_full_symmetric()
        && (!g.is_full_alternating() || !is_square(&discriminant(f)?)) {
            return Err(Error::Domain("orbit resolvents need S_n, or A_n with square discriminant".into()));
        }
    let base: BTreeSet<Vec<u32>> = u.elements().iter().map(|x| act(exponents, x)).collect();
    let mut families: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    for x in g.elements() {
        let img: BTreeSet<Vec<u32>> = base.iter().map(|v| act(v, &x)).collect();
        families.insert(img.into_iter().collect());
    }
    let index = (g.order() / u.order()) as usize;
    if families.len() != index {
        return Err(Error::InvalidSpec(format!(
            "invariant has {} images, not the index {index}",
            families.len()
        )));
    }
    let weight: u32 = exponents.iter().sum();
    let b = BigInt::from(base.len()) * root_bound(f).pow(weight);
    let coeff_bound = (b + 1u32).pow(index as u32) * 2u32;
    let p = primes_from(n as u64 + 1)
        .take_while(|&p| p < 50_000_000)
        .find(|&p| squarefree_degrees(f, p).is_some_and(|d| d.iter().all(|&x| x == 1)))
        .ok_or_else(|| Error::Domain("no completely split prime found".into()))?;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut m = bp.clone();
    while m <= coeff_bound {
        m *= &bp;
        k += 1;
    }
    let roots = roots_mod_pk(f, p, k);
    if roots.len() != n {
        return Err(Error::Lifting(format!("expected {n} simple roots at {p}")));
    }
    let mut poly = IntPoly::one();
    for fam in &families {
        let mut val = BigInt::zero();
        for v in fam {
            let mut t = BigInt::one();
            for (r, &e) in roots.iter().zip(v) {
                if e > 0 {
                    t = (t * r.modpow(&BigInt::from(e), &m)) % &m;
                }
            }
            val += t;
        }
        poly = (&poly * &IntPoly::linear_root(&(val % &m))).rem_coeffs(&m);
    }
    let out = poly.symmetric_rem(&m);
    if !out.is_monic() || out.deg() != index {
        return Err(Error::Lifting("resolvent precision too low".into()));
    }
    Ok(out)
}

/// One step of a resolvent construction; steps act on a monic rational
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ResolventStep {
    SubsetSum { k: usize },
    SubsetProduct { k: usize },
    Cubic,
    /// Seeded `T` of degree at most 2, coefficients in `[-3, 3]`.
    Tschirnhausen,
    TraceZero,
    EvenSplit,
    TargetDegree { degree: usize },
    OrbitInvariant { group: GroupName, subgroup: SubgroupSpec, exponents: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolventRecipe {
    pub steps: Vec<ResolventStep>,
    /// Tschirnhausen draws allowed per transform step.
    #[serde(default = "default_budget")]
    pub budget: usize,
}

fn default_budget() -> usize {
    40
}

impl ResolventRecipe {
    pub fn new(steps: Vec<ResolventStep>) -> Self {
        ResolventRecipe { steps, budget: default_budget() }
    }

    /// Degree after every step, starting from degree `n`.
    pub fn degrees(&self, n: usize) -> Result<Vec<usize>> {
        let mut d = n;
        let mut out = Vec::new();
        for s in &self.steps {
            d = match s {
                ResolventStep::SubsetSum { k } | ResolventStep::SubsetProduct { k } => {
                    check_k(d, *k)?;
                    binom(d, *k)
                }
                ResolventStep::Cubic if d == 4 => 3,
                ResolventStep::Cubic => return Err(Error::Domain("cubic resolvent needs degree 4".into())),
                ResolventStep::Tschirnhausen | ResolventStep::TraceZero => d,
                ResolventStep::EvenSplit if d.is_multiple_of(2) => d / 2,
                ResolventStep::EvenSplit => return Err(Error::NotEven(d)),
                ResolventStep::TargetDegree { degree } if *degree >= 1 && *degree <= d => *degree,
                ResolventStep::TargetDegree { degree } => {
                    return Err(Error::Domain(format!("target degree {degree} exceeds {d}")))
                }
                ResolventStep::OrbitInvariant { group, subgroup, exponents } => {
                    let u = build_group(subgroup)?;
                    if group.n != d || exponents.len() != d {
                        return Err(Error::Domain(format!("orbit invariant on {group} applied at degree {d}")));
                    }
                    (group.handle().order() / u.order()) as usize
                }
            };
            out.push(d);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub step: String,
    pub degree: usize,
    /// Coefficients of `T`, constant term first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<i64>>,
    /// Draws consumed by a Tschirnhausen step, counting the accepted one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolventTranscript {
    pub seed: u64,
    pub input_degree: usize,
    pub stages: Vec<StageRecord>,
}

fn step_label(s: &ResolventStep) -> String {
    match s {
        ResolventStep::SubsetSum { k } => format!("subset_sum k={k}"),
        ResolventStep::SubsetProduct { k } => format!("subset_product k={k}"),
        ResolventStep::Cubic => "cubic".into(),
        ResolventStep::Tschirnhausen => "tschirnhausen".into(),
        ResolventStep::TraceZero => "trace_zero".into(),
        ResolventStep::EvenSplit => "even_split".into(),
        ResolventStep::TargetDegree { degree } => format!("target_degree {degree}"),
        ResolventStep::OrbitInvariant { subgroup, .. } => format!("orbit_invariant {}", subgroup_label(subgroup)),
    }
}

fn subgroup_label(s: &SubgroupSpec) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(str::to_string))
        .unwrap_or_default()
}

/// Draw `attempt` of the transform sequence for `seed`.
pub fn tschirnhausen_draw(seed: u64, attempt: u64, n: usize) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    let top = 2.min(n.saturating_sub(1)).max(1);
    let mut c: Vec<i64> = (0..top).map(|_| rng.gen_range(-3..=3)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-3..=3);
    }
    c.push(lead);
    c
}

enum Flow {
    /// Degenerate outcome that a different transform may avoid.
    Retry(String),
    Fail(Error),
}

impl From<Error> for Flow {
    fn from(e: Error) -> Self {
        Flow::Fail(e)
    }
}

struct Runner<'a> {
    steps: &'a [ResolventStep],
    seed: u64,
    budget: usize,
    draws: u64,
}

impl Runner<'_> {
    fn run(&mut self, i: usize, g: RatPoly, log: &mut Vec<StageRecord>) -> std::result::Result<RatPoly, Flow> {
        let Some(step) = self.steps.get(i) else {
            return Ok(g);
        };
        let record = |log: &mut Vec<StageRecord>, h: &RatPoly| {
            log.push(StageRecord { step: step_label(step), degree: h.deg(), transform: None, draws: None })
        };
        let separable = |h: RatPoly| {
            if is_squarefree_rat(&h) {
                Ok(h)
            } else {
                Err(Flow::Retry(format!("{} is not separable", step_label(step))))
            }
        };
        let next = match step {
            ResolventStep::Tschirnhausen => {
                let mark = log.len();
                for used in 1..=self.budget {
                    let c = tschirnhausen_draw(self.seed, self.draws, g.deg());
                    self.draws += 1;
                    let t = RatPoly::from(IntPoly::from_i64(&c));
                    let h = tschirnhausen_transform(&g, &t)?;
                    if !is_squarefree_rat(&h) {
                        continue;
                    }
                    log.truncate(mark);
                    log.push(StageRecord {
                        step: step_label(step),
                        degree: h.deg(),
                        transform: Some(c),
                        draws: Some(used),
                    });
                    match self.run(i + 1, h, log) {
                        Ok(out) => return Ok(out),
                        Err(Flow::Retry(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
                log.truncate(mark);
                return Err(Flow::Fail(Error::RetryExhausted { attempts: self.budget }));
            }
            ResolventStep::SubsetSum { k } => separable(subset_sum_resolvent_rat(&g, *k)?)?,
            ResolventStep::SubsetProduct { k } => separable(subset_product_resolvent_rat(&g, *k)?)?,
            ResolventStep::Cubic => {
                let (model, s) = integral_model(&g)?;
                let c = cubic_resolvent(&model)?;
                // model roots are s r, pair products scale by s^2
                separable(c.scale(&BigRational::from_integer(s.pow(2))).monic())?
            }
            ResolventStep::TraceZero => trace_zero(&g)?,
            ResolventStep::EvenSplit => even_split(&g)?,
            ResolventStep::TargetDegree { degree } => {
                let (model, s) = integral_model(&g)?;
                match target_degree_factor(&model, *degree)? {
                    Some(h) => unscale(&h, &s),
                    None => return Err(Flow::Retry(format!("no irreducible factor of degree {degree}"))),
                }
            }
            ResolventStep::OrbitInvariant { group, subgroup, exponents } => {
                let (model, s) = integral_model(&g)?;
                if !s.is_one() {
                    return Err(Flow::Fail(Error::Domain("orbit invariants need an integral input".into())));
                }
                let u = build_group(subgroup)?;
                separable(RatPoly::from(orbit_invariant_resolvent(&model, &group.handle(), &u, exponents)?))?
            }
        };
        record(log, &next);
        self.run(i + 1, next, log)
    }
}

/// Runs `recipe` on `f`. Degenerate intermediate resolvents send control
/// back to the latest Tschirnhausen step for a fresh draw.
pub fn separable_resolvent_search(
    f: &RatPoly,
    recipe: &ResolventRecipe,
    seed: u64,
) -> Result<(RatPoly, ResolventTranscript)> {
    if !f.is_monic() {
        return Err(Error::Domain("expected a monic polynomial".into()));
    }
    recipe.degrees(f.deg())?;
    let mut runner = Runner { steps: &recipe.steps, seed, budget: recipe.budget, draws: 0 };
    let mut stages = Vec::new();
    match runner.run(0, f.clone(), &mut stages) {
        Ok(g) => Ok((g, ResolventTranscript { seed, input_degree: f.deg(), stages })),
        Err(Flow::Fail(e)) => Err(e),
        Err(Flow::Retry(why)) => Err(Error::Domain(format!("{why}, and no Tschirnhausen step precedes it"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainmentVerdict {
    Consistent,
    Inconsistent,
    LowEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentSample {
    pub p: u64,
    pub frobenius: CycleType,
    /// Degrees of the factors of `g` mod `p`, descending.
    pub observed: Vec<usize>,
    pub allowed: bool,
}

/// Statistical evidence, not a proof, that the splitting field of `g`
/// lies in that of `f` as the fixed field of `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub degree: usize,
    pub index: u64,
    pub samples: Vec<ContainmentSample>,
    pub violations: usize,
    pub verdict: ContainmentVerdict,
}

pub const CONTAINMENT_PRIMES: usize = 50;

/// Compares the factorization pattern of `g` at the first `count` primes
/// unramified for `f` and `g` with the orbit lengths of `f`'s Frobenius
/// on the cosets of `U`.
pub fn splitting_containment_check(
    g: &RatPoly,
    f: &IntPoly,
    group: &GroupHandle,
    u: &GroupHandle,
    count: usize,
) -> Result<ContainmentReport> {
    let (model, _) = integral_model(&g.monic())?;
    let index = group.order() / u.order();
    let table = coset_action_table(group, u)?;
    let mut samples = Vec::with_capacity(count);
    let mut start = 2u64;
    while samples.len() < count {
        let batch: Vec<u64> = primes_from(start).take(4 * count).collect();
        start = batch.last().expect("primes are infinite") + 1;
        let found: Vec<Option<ContainmentSample>> = batch
            .par_iter()
            .map(|&p| {
                let fd = squarefree_degrees(f, p)?;
                let mut gd = squarefree_degrees(&model, p)?;
                gd.sort_unstable_by(|a, b| b.cmp(a));
                let frobenius = CycleType::new(fd);
                let allowed =
                    model.deg() as u64 == index && table.get(&frobenius).is_some_and(|s| s.contains(&gd));
                Some(ContainmentSample { p, frobenius, observed: gd, allowed })
            })
            .collect();
        samples.extend(found.into_iter().flatten());
    }
    samples.truncate(count);
    let violations = samples.iter().filter(|s| !s.allowed).count();
    let verdict = if violations > 0 || model.deg() as u64 != index {
        ContainmentVerdict::Inconsistent
    } else if samples.len() < CONTAINMENT_PRIMES {
        ContainmentVerdict::LowEvidence
    } else {
        ContainmentVerdict::Consistent
    };
    Ok(ContainmentReport { degree: model.deg(), index, samples, violations, verdict })
}
