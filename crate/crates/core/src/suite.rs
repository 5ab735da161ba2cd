//! Seeded orchestration: every check group draws its parameters from a
//! stream derived from `(seed, label, m, n, sample, attempt)`, so a group's
//! output depends only on the seed and never on which other groups ran.

use crate::algebra::{fmt_scalar, pow, powi, to_f64, Scalar};
use crate::error::{Error, Result};
use crate::lax::{extract_d5, extract_e6, lax_residual_check, Direction};
use crate::pade::d5_pade;
use crate::qkernel::{f_prime_node, qpoch, random_scalar, sample_params, y_d5_truncated, ParamSet};
use crate::qrt::{sample_config, verify_qrt, Variant};
use crate::report::{sort_reports, CheckReport, Params, Status};
use crate::verify::{
    special_values, verify_det_solution, verify_directions, verify_e6, verify_pade, verify_qp6,
};
use crate::weyl::{self, random_state};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Redraws allowed per sample before giving up.
pub const MAX_ATTEMPTS: usize = 50;

pub const QRT_STEPS: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    D5,
    E6,
    Solutions,
    Directions,
}

impl Target {
    /// Admissible `(m, n)` grid with `m, n ≤ 2`.
    pub fn default_grid(self) -> Vec<(usize, usize)> {
        let lo = |t: Target| match t {
            Target::D5 | Target::Solutions => (0, 0),
            Target::E6 => (1, 0),
            Target::Directions => (1, 1),
        };
        let (m0, n0) = lo(self);
        (m0..=2).flat_map(|m| (n0..=2).map(move |n| (m, n))).collect()
    }

    pub fn default_samples(self) -> usize {
        match self {
            Target::Directions => 3,
            _ => 5,
        }
    }

    fn check_degrees(self, m: usize, n: usize) -> Result<()> {
        match self {
            Target::E6 if m == 0 => Err(Error::Precondition("e6 needs m >= 1".into())),
            Target::Directions if m == 0 || n == 0 => {
                Err(Error::Precondition("directions need m >= 1 and n >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    fn run(self, p: &ParamSet) -> Result<Vec<CheckReport>> {
        match self {
            Target::D5 => d5_group(p),
            Target::E6 => e6_group(p),
            Target::Solutions => {
                let mut out = special_values(p)?;
                out.extend(verify_det_solution(p)?);
                Ok(out)
            }
            Target::Directions => verify_directions(p),
        }
    }
}

/// Sampled or explicit parameters for `run_verify`.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    /// `None` means the target's default grid.
    pub degrees: Option<(usize, usize)>,
    /// Fixed `(q, a)`; disables sampling.
    pub point: Option<(Scalar, [Scalar; 4])>,
}

fn mix(seed: u64, label: &str, parts: &[u64]) -> u64 {
    // FNV-1a over the label and parts, then a splitmix64 finalizer
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    let bytes = label.bytes().chain(parts.iter().flat_map(|p| p.to_le_bytes()));
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

/// Deterministic generator for one attempt of one sample.
pub fn stream(seed: u64, label: &str, m: usize, n: usize, sample: usize, attempt: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(
        seed,
        label,
        &[m as u64, n as u64, sample as u64, attempt as u64],
    ))
}

/// Draw-and-run with redraws on resample errors; the returned reports are
/// tagged with `sample`.
pub fn sampled<T>(
    seed: u64,
    label: &str,
    (m, n): (usize, usize),
    sample: usize,
    mut run: impl FnMut(&mut ChaCha8Rng) -> Result<T>,
) -> Result<T> {
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        match run(&mut stream(seed, label, m, n, sample, attempt)) {
            Ok(v) => return Ok(v),
            Err(e) if e.is_resample() => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted {
        label: format!("{label} m={m} n={n} sample={sample}"),
        attempts: MAX_ATTEMPTS,
        last,
    })
}

fn tag(mut reports: Vec<CheckReport>, sample: usize) -> Vec<CheckReport> {
    for r in &mut reports {
        r.sample = sample;
    }
    reports
}

/// One group over the grid: the same `(seed, m, n, sample)` gives the same
/// `ParamSet` in every group, redraws aside.
fn param_group(
    seed: u64,
    samples: usize,
    grid: &[(usize, usize)],
    run: impl Fn(&ParamSet) -> Result<Vec<CheckReport>>,
) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &(m, n) in grid {
        for s in 0..samples {
            let reports = sampled(seed, "params", (m, n), s, |rng| run(&sample_params(rng, m, n)?))?;
            out.extend(tag(reports, s));
        }
    }
    Ok(out)
}

fn d5_group(p: &ParamSet) -> Result<Vec<CheckReport>> {
    let mut out = verify_pade(p)?;
    out.extend(lax_residual_check(&extract_d5(p)?)?);
    out.extend(verify_qp6(p)?);
    Ok(out)
}

fn e6_group(p: &ParamSet) -> Result<Vec<CheckReport>> {
    let mut out = verify_pade(p)?;
    out.extend(e6_lax(p)?);
    out.extend(verify_e6(p)?);
    Ok(out)
}

fn e6_lax(p: &ParamSet) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for d in Direction::E6 {
        match extract_e6(p, d) {
            Ok(l) => out.extend(lax_residual_check(&l)?),
            Err(Error::Precondition(why)) => {
                out.push(CheckReport::skip(format!("lax[{}]", d.tag()), &p.snapshot(), why))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `verify <target>` over explicit or sampled parameters.
pub fn run_verify(target: Target, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let grid = match opts.degrees {
        Some(mn) => vec![mn],
        None => target.default_grid(),
    };
    for &(m, n) in &grid {
        target.check_degrees(m, n)?;
    }
    let mut out = match &opts.point {
        Some((q, a)) => {
            let mut out = Vec::new();
            for &(m, n) in &grid {
                out.extend(target.run(&ParamSet::new(q.clone(), a.clone(), m, n)?)?);
            }
            out
        }
        None => {
            if opts.samples == 0 {
                return Err(Error::Precondition("samples must be positive".into()));
            }
            param_group(opts.seed, opts.samples, &grid, |p| target.run(p))?
        }
    };
    sort_reports(&mut out);
    Ok(out)
}

/// Pochhammer identities at three random `q` for `0 ≤ s ≤ N ≤ 6`.
pub fn qkernel_checks(seed: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for sample in 0..3 {
        let reports = sampled(seed, "qkernel", (0, 0), sample, |rng| {
            let q = random_scalar(rng);
            if q.is_zero() || q.is_one() || q == -Scalar::one() {
                return Err(Error::Inadmissible("q".into()));
            }
            qkernel_at(&q)
        })?;
        out.extend(tag(reports, sample));
    }
    Ok(out)
}

fn qkernel_at(q: &Scalar) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for big_n in 0..=6usize {
        let q_neg_n = powi(q, -(big_n as i64))?;
        for s in 0..=big_n {
            let mut params = Params::new();
            params.insert("q".into(), fmt_scalar(q));
            params.insert("N".into(), big_n.to_string());
            params.insert("s".into(), s.to_string());
            let sign = if s % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let expo = (s * s.saturating_sub(1) / 2) as i64 - (big_n * s) as i64;
            let factor = sign * powi(q, expo)?;
            let lhs = qpoch(&q_neg_n, s, q);
            let rhs = &factor * qpoch(&pow(q, big_n - s + 1), s, q);
            out.push(CheckReport::equality(
                "qkernel-q-neg-n-relation",
                &params,
                &lhs,
                &rhs,
            ));
            let lhs = qpoch(q, big_n - s, q) * qpoch(&q_neg_n, s, q);
            let rhs = &factor * qpoch(q, big_n, q);
            out.push(CheckReport::equality(
                "qkernel-finite-q-relation",
                &params,
                &lhs,
                &rhs,
            ));
            let qs = pow(q, s);
            let direct: Scalar = (0..=big_n).filter(|&i| i != s).map(|i| &qs - pow(q, i)).product();
            out.push(CheckReport::equality(
                "qkernel-f-prime-product",
                &params,
                &f_prime_node(s, big_n, q)?,
                &direct,
            ));
        }
    }
    Ok(out)
}

pub fn pade_checks(seed: u64, samples: usize) -> Result<Vec<CheckReport>> {
    param_group(seed, samples, &Target::D5.default_grid(), verify_pade)
}

/// Lax residuals for D5 and, where `m ≥ 1`, all five E6 directions.
pub fn lax_checks(seed: u64, samples: usize) -> Result<Vec<CheckReport>> {
    param_group(seed, samples, &Target::D5.default_grid(), |p| {
        let mut out = lax_residual_check(&extract_d5(p)?)?;
        if p.m >= 1 {
            out.extend(e6_lax(p)?);
        }
        Ok(out)
    })
}

pub fn compat_checks(seed: u64, samples: usize) -> Result<Vec<CheckReport>> {
    let mut out = param_group(seed, samples, &Target::D5.default_grid(), verify_qp6)?;
    out.extend(param_group(seed, samples, &Target::E6.default_grid(), verify_e6)?);
    Ok(out)
}

pub fn solution_checks(seed: u64, samples: usize) -> Result<Vec<CheckReport>> {
    param_group(seed, samples, &Target::Solutions.default_grid(), |p| {
        Target::Solutions.run(p)
    })
}

pub fn direction_checks(seed: u64, samples: usize) -> Result<Vec<CheckReport>> {
    param_group(
        seed,
        samples,
        &Target::Directions.default_grid(),
        verify_directions,
    )
}

pub fn qrt_checks(seed: u64, samples: usize, steps: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for variant in [Variant::Qp6, Variant::E6] {
        for s in 0..samples {
            let reports = sampled(seed, variant.tag(), (0, 0), s, |rng| {
                let (cfg, x0, y0) = sample_config(rng, variant)?;
                verify_qrt(&cfg, &x0, &y0, steps)
            })?;
            out.extend(tag(reports, s));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGroup {
    /// Fundamental relations and scaling covariance.
    Relations,
    /// The translation `T` and the equations it induces.
    Translation,
    /// Word-derived contiguity relations.
    Directions,
}

pub fn weyl_checks(seed: u64, samples: usize, group: WeylGroup) -> Result<Vec<CheckReport>> {
    if samples == 0 {
        return Err(Error::Precondition("samples must be positive".into()));
    }
    let label = match group {
        WeylGroup::Relations => "weyl-relations",
        WeylGroup::Translation => "weyl-translation",
        WeylGroup::Directions => "weyl-directions",
    };
    let mut out = Vec::new();
    for s in 0..samples {
        let reports = sampled(seed, label, (0, 0), s, |rng| {
            let st = random_state(rng);
            let lam = random_scalar(rng);
            match group {
                WeylGroup::Relations => {
                    let mut out = weyl::relations_at(&st)?;
                    out.extend(weyl::scaling_at(&st, &lam)?);
                    Ok(out)
                }
                WeylGroup::Translation => {
                    let mut out = weyl::translation_at(&st)?;
                    out.extend(weyl::painleve_at(&st, &lam)?);
                    Ok(out)
                }
                WeylGroup::Directions => weyl::directions_at(&st),
            }
        })?;
        out.extend(tag(reports, s));
    }
    sort_reports(&mut out);
    Ok(out)
}

pub const FLOAT_TOLERANCE: f64 = 1e-8;

/// Non-exact sanity record: the D5 Padé approximant against the truncated
/// infinite product at one point.
pub fn float_sanity() -> Result<CheckReport> {
    use crate::algebra::ratio;
    let a = [ratio(1, 3), ratio(1, 5), ratio(1, 7), ratio(1, 11)];
    let p = ParamSet::new(ratio(1, 2), a, 2, 2)?;
    let x = ratio(1, 10);
    let pair = d5_pade(&p)?;
    let approx = to_f64(&pair.p.eval(&x)) / to_f64(&pair.q.eval(&x));
    let y = y_d5_truncated(&p, to_f64(&x), 100);
    let err = (approx - y).abs();
    let status = if err <= FLOAT_TOLERANCE {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut r = CheckReport::new("float-sanity-d5-truncated-product", &p.snapshot(), status)
        .with("exact", false)
        .with("x", fmt_scalar(&x))
        .with("factors", 100)
        .with("tolerance", format!("{FLOAT_TOLERANCE:e}"))
        .with("abs_error", format!("{err:e}"));
    r.lhs = format!("{approx:.17e}");
    r.rhs = format!("{y:.17e}");
    Ok(r)
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub float_sanity: bool,
}

/// Every group at its default size, order-normalized.
pub fn run_suite(opts: SuiteOptions) -> Result<Vec<CheckReport>> {
    let seed = opts.seed;
    let mut out = qkernel_checks(seed)?;
    out.extend(pade_checks(seed, 5)?);
    out.extend(lax_checks(seed, 5)?);
    out.extend(compat_checks(seed, 5)?);
    out.extend(solution_checks(seed, 5)?);
    out.extend(direction_checks(seed, 3)?);
    out.extend(qrt_checks(seed, 5, QRT_STEPS)?);
    for g in [
        WeylGroup::Relations,
        WeylGroup::Translation,
        WeylGroup::Directions,
    ] {
        out.extend(weyl_checks(seed, 5, g)?);
    }
    if opts.float_sanity {
        out.push(float_sanity()?);
    }
    sort_reports(&mut out);
    Ok(out)
}

/// Per-check-name status counts, for text summaries.
pub fn summarize(reports: &[CheckReport]) -> BTreeMap<&str, [usize; 3]> {
    let mut m: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in reports {
        let slot = match r.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skip => 2,
        };
        m.entry(r.check.as_str()).or_default()[slot] += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        use rand::Rng;
        let a: u64 = stream(1, "x", 1, 2, 3, 0).gen();
        assert_eq!(a, stream(1, "x", 1, 2, 3, 0).gen::<u64>());
        assert_ne!(a, stream(1, "x", 1, 2, 3, 1).gen::<u64>());
        assert_ne!(a, stream(1, "y", 1, 2, 3, 0).gen::<u64>());
    }

    #[test]
    fn exhaustion_is_reported() {
        let r: Result<()> = sampled(0, "never", (0, 0), 0, |_| Err(Error::Singular));
        assert!(matches!(
            r,
            Err(Error::SamplingExhausted {
                attempts: MAX_ATTEMPTS,
                ..
            })
        ));
    }

    #[test]
    fn qkernel_group_passes() {
        let reports = qkernel_checks(5).unwrap();
        assert_eq!(reports.len(), 3 * 3 * 28);
        assert!(reports.iter().all(CheckReport::passed));
    }

    #[test]
    fn e6_precondition() {
        let opts = VerifyOptions {
            seed: 0,
            samples: 1,
            degrees: Some((0, 1)),
            point: None,
        };
        assert!(matches!(
            run_verify(Target::E6, &opts),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn float_sanity_within_tolerance() {
        let r = float_sanity().unwrap();
        assert!(r.passed(), "{:?}", r.witness);
    }
}
