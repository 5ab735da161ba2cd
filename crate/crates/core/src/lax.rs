//! Lax-pair data `(f, g, c0, c, c')` read off from cleared Padé combinations.
//!
//! Every `Y`-dependence is removed with the finite ratios `Y(qx)/Y(x)` and
//! `Ȳ(x)/Y(x)`. Multiplying by `D = (1 - a1 x)(1 - a2 x)` turns the three
//! coefficients of the L2 relation `K_y·y(x) + K_yq·y(qx) + K_yb·ȳ(x) = 0`
//! into polynomials whose forced factors are stripped by exact division.

use crate::algebra::{checked_div, pow, powi, Poly, Scalar};
use crate::error::{Error, Result};
use crate::pade::{d5_pade, e6_pade, PadePair};
use crate::qkernel::{taylor_y_d5, y_values, ParamSet};
use crate::report::{CheckReport, Params};
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    D5T,
    E6T,
    E6T1,
    E6T2,
    E6T3,
    E6T4,
}

impl Direction {
    pub const E6: [Direction; 5] = [
        Direction::E6T,
        Direction::E6T1,
        Direction::E6T2,
        Direction::E6T3,
        Direction::E6T4,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Direction::D5T => "D5_T",
            Direction::E6T => "E6_T",
            Direction::E6T1 => "E6_T1",
            Direction::E6T2 => "E6_T2",
            Direction::E6T3 => "E6_T3",
            Direction::E6T4 => "E6_T4",
        }
    }

    pub fn is_d5(self) -> bool {
        self == Direction::D5T
    }

    /// Which `a_i` are multiplied by `q`, and whether `m` or `n` drops.
    fn action(self) -> ([bool; 4], i32, i32) {
        match self {
            Direction::D5T => ([false, true, false, true], 0, 0),
            Direction::E6T => ([false, true, false, false], -1, 0),
            Direction::E6T1 => ([true, true, true, true], 0, 0),
            Direction::E6T2 => ([false, false, false, true], 0, -1),
            Direction::E6T3 => ([true, true, true, false], -1, 0),
            Direction::E6T4 => ([true, false, false, true], 0, 0),
        }
    }

    fn shift(self, p: &ParamSet, forward: bool) -> Result<ParamSet> {
        let (mask, dm, dn) = self.action();
        let s = if forward {
            p.q.clone()
        } else {
            checked_div(&Scalar::one(), &p.q)?
        };
        let sign = if forward { 1 } else { -1 };
        let m = p.m as i64 + (dm * sign) as i64;
        let n = p.n as i64 + (dn * sign) as i64;
        if m < 0 || n < 0 {
            return Err(Error::Precondition(format!(
                "{} needs {} >= 1",
                self.tag(),
                if m < 0 { "m" } else { "n" }
            )));
        }
        let mut a = p.a.clone();
        for (ai, &hit) in a.iter_mut().zip(&mask) {
            if hit {
                *ai = &*ai * &s;
            }
        }
        p.with(a, m as usize, n as usize)
    }

    pub fn apply(self, p: &ParamSet) -> Result<ParamSet> {
        self.shift(p, true)
    }

    pub fn apply_inverse(self, p: &ParamSet) -> Result<ParamSet> {
        self.shift(p, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxData {
    pub direction: Direction,
    pub f: Scalar,
    pub g: Scalar,
    pub c0: Scalar,
    pub c: Scalar,
    pub cprime: Scalar,
    pub params: ParamSet,
    pub shifted: ParamSet,
    pub pair: PadePair,
    pub pair_bar: PadePair,
}

impl LaxData {
    pub fn c1(&self) -> Scalar {
        &self.c0 / &self.c
    }
}

fn pade_for(d: Direction, p: &ParamSet) -> Result<PadePair> {
    if d.is_d5() {
        d5_pade(p)
    } else {
        e6_pade(p)
    }
}

/// `∏_{i=0}^{N-1} (1 - x q^{-i})`.
fn node_factor(p: &ParamSet) -> Result<Poly> {
    let alphas = (0..p.big_n())
        .map(|i| powi(&p.q, -(i as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::linear_factors(&alphas))
}

/// Forced part of `K_yb`: `x^{N+1}` (D5) or `x·∏(1 - x q^{-i})` (E6).
fn forced_yb(d: Direction, p: &ParamSet) -> Result<Poly> {
    if d.is_d5() {
        Ok(Poly::monomial(Scalar::one(), p.big_n() + 1))
    } else {
        Ok(&Poly::x() * &node_factor(p)?)
    }
}

fn forced_y(d: Direction, p: &ParamSet) -> Result<Poly> {
    if d.is_d5() {
        Ok(Poly::monomial(Scalar::one(), p.big_n() + 1))
    } else {
        node_factor(p)
    }
}

fn one_minus(a: &Scalar) -> Scalar {
    Scalar::one() - a
}

/// `D·Ȳ(x)/Y(x)` as a polynomial.
fn d_times_bar_ratio(d: Direction, p: &ParamSet) -> Result<Poly> {
    let [a1, a2, a3, a4] = &p.a;
    let lf = Poly::linear_factor;
    let div = |num: Scalar, den: Scalar| {
        checked_div(&num, &den)
            .map_err(|_| Error::Inadmissible("normalization of the shifted Y vanishes".into()))
    };
    Ok(match d {
        Direction::D5T => &lf(a1) * &lf(a4),
        Direction::E6T => lf(a1).scale(&one_minus(a2)),
        Direction::E6T1 => (&lf(a3) * &lf(a4)).scale(&div(
            one_minus(a1) * one_minus(a2),
            one_minus(a3) * one_minus(a4),
        )?),
        Direction::E6T2 => Poly::linear_factors(&[a1.clone(), a2.clone(), a4.clone()])
            .scale(&div(Scalar::one(), one_minus(a4))?),
        Direction::E6T3 => lf(a3).scale(&div(one_minus(a1) * one_minus(a2), one_minus(a3))?),
        Direction::E6T4 => (&lf(a2) * &lf(a4)).scale(&div(one_minus(a1), one_minus(a4))?),
    })
}

/// Which L2 coefficient carries the `(1 - x/g)` factor in E6.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Y,
    Yq,
}

/// Known linear factors (as `alpha` of `1 - alpha·x`) for the y and y(qx)
/// coefficients of L2, and the slot carrying `g` (`None` for D5).
fn l2_template(d: Direction, p: &ParamSet) -> Result<(Option<Slot>, Vec<Scalar>, Vec<Scalar>)> {
    let [a1, a2, a3, a4] = p.a.clone();
    let qn = powi(&p.q, -(p.big_n() as i64))?;
    Ok(match d {
        Direction::D5T => (None, vec![a4], vec![a1]),
        Direction::E6T => (Some(Slot::Y), vec![], vec![a1]),
        Direction::E6T1 => (Some(Slot::Yq), vec![a3, a4], vec![qn]),
        Direction::E6T2 => (Some(Slot::Y), vec![a4], vec![a1, a2]),
        Direction::E6T3 => (Some(Slot::Yq), vec![a3], vec![]),
        Direction::E6T4 => (Some(Slot::Y), vec![a4], vec![a2, qn]),
    })
}

/// The three cleared L2 coefficient polynomials `(K_y, K_yq, K_yb)`.
fn cleared_l2(d: Direction, p: &ParamSet, pq: &PadePair, pqb: &PadePair) -> Result<[Poly; 3]> {
    let [a1, a2, a3, a4] = &p.a;
    let q = &p.q;
    let dd = &Poly::linear_factor(a1) * &Poly::linear_factor(a2);
    let dq = &Poly::linear_factor(a3) * &Poly::linear_factor(a4);
    let drb = d_times_bar_ratio(d, p)?;
    let (pp, qq) = (&pq.p, &pq.q);
    let (pb, qb) = (&pqb.p, &pqb.q);
    let p_q = pp.scale_arg(q);
    let q_q = qq.scale_arg(q);
    let k_y = &(&(&p_q * &drb) * qb) - &(&(pb * &dq) * &q_q);
    let k_yq = -&(&(&(pp * &drb) * qb) - &(&(pb * &dd) * qq));
    let k_yb = k_yb(p, pq)?;
    Ok([k_y, k_yq, k_yb])
}

/// `(a3x, a4x)_1 P(x) Q(qx) - (a1x, a2x)_1 P(qx) Q(x)`; needs only the pair at `p`.
fn k_yb(p: &ParamSet, pq: &PadePair) -> Result<Poly> {
    let [a1, a2, a3, a4] = &p.a;
    let dd = &Poly::linear_factor(a1) * &Poly::linear_factor(a2);
    let dq = &Poly::linear_factor(a3) * &Poly::linear_factor(a4);
    let p_q = pq.p.scale_arg(&p.q);
    let q_q = pq.q.scale_arg(&p.q);
    Ok(&(&(&pq.p * &dq) * &q_q) - &(&(&p_q * &dd) * &pq.q))
}

fn strip(k: &Poly, forced: &Poly, what: &str) -> Result<Poly> {
    k.exact_div(forced)?
        .ok_or_else(|| Error::DivisibilityFailure(what.to_string()))
}

/// `(c0, f)` from `K_yb = c0·forced·(1 - f x)`.
fn read_f(d: Direction, p: &ParamSet, pq: &PadePair) -> Result<(Scalar, Scalar)> {
    let lin = strip(
        &k_yb(p, pq)?,
        &forced_yb(d, p)?,
        "forced factor of the A-type polynomial",
    )?;
    if lin.degree().is_some_and(|k| k > 1) {
        return Err(Error::DivisibilityFailure(
            "A-type residual factor above degree 1".into(),
        ));
    }
    let c0 = lin.coeff(0);
    if c0.is_zero() {
        return Err(Error::DegenerateF);
    }
    let f = -lin.coeff(1) / &c0;
    if f.is_zero() {
        return Err(Error::DegenerateF);
    }
    Ok((c0, f))
}

/// `(c0, f)` for the D5 problem at `p`.
pub fn f_d5(p: &ParamSet) -> Result<(Scalar, Scalar)> {
    read_f(Direction::D5T, p, &d5_pade(p)?)
}

/// `(c0, f)` for the E6 problem at `p`; independent of the direction.
pub fn f_e6(p: &ParamSet) -> Result<(Scalar, Scalar)> {
    read_f(Direction::E6T, p, &e6_pade(p)?)
}

fn extract(p: &ParamSet, d: Direction) -> Result<LaxData> {
    let shifted = d.apply(p)?;
    let pair = pade_for(d, p)?;
    let pair_bar = pade_for(d, &shifted)?;
    let [k_y, k_yq, _] = cleared_l2(d, p, &pair, &pair_bar)?;
    let (c0, f) = read_f(d, p, &pair)?;
    let (slot, known_y, known_yq) = l2_template(d, p)?;
    let base = forced_y(d, p)?;
    let ly = strip(
        &k_y,
        &(&base * &Poly::linear_factors(&known_y)),
        "forced factors of K_y",
    )?;
    let lyq = -&strip(
        &k_yq,
        &(&base * &Poly::linear_factors(&known_yq)),
        "forced factors of K_yq",
    )?;
    let constant = |l: &Poly, what: &str| -> Result<Scalar> {
        if l.degree().is_some_and(|k| k > 0) {
            return Err(Error::DivisibilityFailure(format!("{what} is not constant")));
        }
        Ok(l.coeff(0))
    };
    let (c, cprime, g) = match slot {
        None => {
            let c = constant(&lyq, "K_yq cofactor")?;
            let cprime = constant(&ly, "K_y cofactor")?;
            if c.is_zero() || cprime.is_zero() {
                return Err(Error::DegenerateG);
            }
            let g = &cprime / &c;
            (c, cprime, g)
        }
        Some(s) => {
            let (plain, with_g) = match s {
                Slot::Y => (&lyq, &ly),
                Slot::Yq => (&ly, &lyq),
            };
            let c = constant(plain, "plain L2 cofactor")?;
            if with_g.degree().is_some_and(|k| k > 1) {
                return Err(Error::DivisibilityFailure("g-factor above degree 1".into()));
            }
            let cprime = with_g.coeff(0);
            let slope = with_g.coeff(1);
            if c.is_zero() || cprime.is_zero() || slope.is_zero() {
                return Err(Error::DegenerateG);
            }
            let g = -&cprime / slope;
            (c, cprime, g)
        }
    };
    Ok(LaxData {
        direction: d,
        f,
        g,
        c0,
        c,
        cprime,
        params: p.clone(),
        shifted,
        pair,
        pair_bar,
    })
}

/// D5 data: `K_A = c0 x^{N+1}(1 - f x)`, `K_B = c x^{N+1}`, `K_C = c'(a4x)_1 x^{N+1}`, `g = c'/c`.
pub fn extract_d5(p: &ParamSet) -> Result<LaxData> {
    extract(p, Direction::D5T)
}

/// E6 data for one deformation direction.
pub fn extract_e6(p: &ParamSet, d: Direction) -> Result<LaxData> {
    if d.is_d5() {
        return Err(Error::Precondition(
            "extract_e6 called with the D5 direction".into(),
        ));
    }
    extract(p, d)
}

/// L2 display coefficients `(C_y, C_yq, C_yb)` rebuilt from the extracted constants.
fn l2_display(l: &LaxData) -> Result<[Poly; 3]> {
    let p = &l.params;
    let (slot, known_y, known_yq) = l2_template(l.direction, p)?;
    let ky = Poly::linear_factors(&known_y);
    let kyq = Poly::linear_factors(&known_yq);
    let g_factor = Poly::linear_factor(&checked_div(&Scalar::one(), &l.g)?).scale(&l.cprime);
    let plain = Poly::constant(l.c.clone());
    let f_lin = Poly::linear_factor(&l.f).scale(&l.c0);
    Ok(match slot {
        None => [ky.scale(&l.cprime), -&kyq.scale(&l.c), f_lin],
        Some(Slot::Y) => [&ky * &g_factor, -&(&kyq * &plain), &Poly::x() * &f_lin],
        Some(Slot::Yq) => [&ky * &plain, -&(&kyq * &g_factor), &Poly::x() * &f_lin],
    })
}

/// L3 display coefficients `(C_y without c2, C_yb, C_ybq)` for
/// `c2·C_y·y(x) + C_yb·ȳ(x) - C_ybq·ȳ(x/q) = 0`.
fn l3_display(l: &LaxData, fbar: &Scalar) -> Result<[Poly; 3]> {
    let p = &l.params;
    let q = &p.q;
    let [a1, a2, a3, a4] = p.a.clone();
    let qn = powi(q, -(p.big_n() as i64))?;
    let inv_g = checked_div(&Scalar::one(), &l.g)?;
    let inv_qg = &inv_g / q;
    let a3q = &a3 / q;
    let a4q = &a4 / q;
    let one = Scalar::one();
    let y_coef = Poly::linear_factor(&(fbar / q));
    if l.direction.is_d5() {
        let yb = Poly::linear_factor(&a2).scale(&l.g);
        let ybq = Poly::linear_factor(&a3q).scale(&pow(q, p.big_n() + 1));
        return Ok([y_coef, yb, ybq]);
    }
    let (yb, ybq) = match l.direction {
        Direction::E6T => (vec![a2, qn, inv_qg], vec![a3q, a4q, one]),
        Direction::E6T1 => (vec![a1, a2], vec![one, inv_g]),
        Direction::E6T2 => (vec![qn, inv_qg], vec![a3q, one]),
        Direction::E6T3 => (vec![a1, a2, qn], vec![a4q, one, inv_g]),
        Direction::E6T4 => (vec![a1, inv_qg], vec![a3q, one]),
        Direction::D5T => unreachable!(),
    };
    Ok([
        &Poly::x() * &y_coef,
        Poly::linear_factors(&yb),
        Poly::linear_factors(&ybq),
    ])
}

/// `f̄`: the f-value at the shifted parameters.
pub fn f_bar(l: &LaxData) -> Result<Scalar> {
    Ok(read_f(l.direction, &l.shifted, &l.pair_bar)?.1)
}

/// Solve `c2` from the L3 relation with `y = P` by exact division.
pub fn solve_c2(l: &LaxData, fbar: &Scalar) -> Result<Scalar> {
    let [y_coef, yb, ybq] = l3_display(l, fbar)?;
    let q = &l.params.q;
    let pb = &l.pair_bar.p;
    let res = &(&yb * pb) - &(&ybq * &pb.scale_arg(&checked_div(&Scalar::one(), q)?));
    let quot = strip(&res, &(&y_coef * &l.pair.p), "L3 relation for the P-solution")?;
    if quot.degree().is_some_and(|k| k > 0) {
        return Err(Error::DivisibilityFailure("L3 cofactor is not constant".into()));
    }
    Ok(-quot.coeff(0))
}

/// Series `Y(x)·Q(x) mod x^order` for the D5 problem.
fn yq_series(p: &ParamSet, q_poly: &Poly, order: usize) -> Result<Poly> {
    let c = taylor_y_d5(p, order)?;
    Ok((&Poly::new(c) * q_poly).truncate(order))
}

/// L2/L3 residuals for both basis solutions (`y = P` and `y = Y·Q`).
pub fn lax_residual_check(l: &LaxData) -> Result<Vec<CheckReport>> {
    let p = &l.params;
    let params: Params = p.snapshot();
    let tag = l.direction.tag();
    let q = &p.q;
    let big_n = p.big_n();
    let name = |s: &str| format!("lax-{s}[{tag}]");
    let mut out = Vec::new();

    let [cy, cyq, cyb] = l2_display(l)?;
    let (pp, qq) = (&l.pair.p, &l.pair.q);
    let (pb, qb) = (&l.pair_bar.p, &l.pair_bar.q);
    let r2 = &(&(&cy * pp) + &(&cyq * &pp.scale_arg(q))) + &(&cyb * pb);
    out.push(CheckReport::zero_poly(name("l2-p"), &params, &r2));

    let fbar = f_bar(l)?;
    let c2 = match solve_c2(l, &fbar) {
        Ok(c2) => c2,
        Err(Error::DivisibilityFailure(why)) => {
            let mut r = CheckReport::truth(name("l3-p"), &params, false);
            r.witness.insert("error".into(), why.into());
            out.push(r);
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let [y3, yb3, ybq3] = l3_display(l, &fbar)?;
    let qinv = checked_div(&Scalar::one(), q)?;
    let r3 = &(&(&y3.scale(&c2) * pp) + &(&yb3 * pb)) - &(&ybq3 * &pb.scale_arg(&qinv));
    out.push(CheckReport::zero_poly(name("l3-p"), &params, &r3).with_scalar("c2", &c2));

    if l.direction.is_d5() {
        let order = big_n + 4;
        let s = yq_series(p, qq, order)?;
        let sb = yq_series(&l.shifted, qb, order)?;
        let r2s = (&(&(&cy * &s) + &(&cyq * &s.scale_arg(q))) + &(&cyb * &sb)).truncate(order);
        out.push(CheckReport::zero_poly(name("l2-yq-series"), &params, &r2s).with("order", big_n + 3));
        let r3s =
            (&(&(&y3.scale(&c2) * &s) + &(&yb3 * &sb)) - &(&ybq3 * &sb.scale_arg(&qinv))).truncate(order);
        out.push(CheckReport::zero_poly(name("l3-yq-series"), &params, &r3s).with("order", big_n + 3));
        let (c0_bar, _) = read_f(l.direction, &l.shifted, &l.pair_bar)?;
        out.push(CheckReport::equality(
            name("c2-cbar0-over-c"),
            &params,
            &c2,
            &(&c0_bar / &l.c),
        ));
    } else {
        // nodes x_i = q^i up to two steps past the interpolation range
        let count = big_n + 3;
        let y = y_values(p, count + 1)?;
        let yb = y_values(&l.shifted, count)?;
        let xs: Vec<Scalar> = (0..=count).map(|i| pow(q, i)).collect();
        let yq = |i: usize| &y[i] * qq.eval(&xs[i]);
        let ybqb = |i: usize| &yb[i] * qb.eval(&xs[i]);
        let mut bad2 = Vec::new();
        let mut bad3 = Vec::new();
        for i in 0..count {
            let x = &xs[i];
            let v = cy.eval(x) * yq(i) + cyq.eval(x) * yq(i + 1) + cyb.eval(x) * ybqb(i);
            if !v.is_zero() {
                bad2.push(i);
            }
            if i >= 1 {
                let w = &c2 * y3.eval(x) * yq(i) + yb3.eval(x) * ybqb(i) - ybq3.eval(x) * ybqb(i - 1);
                if !w.is_zero() {
                    bad3.push(i);
                }
            }
        }
        out.push(
            CheckReport::truth(name("l2-yq-nodes"), &params, bad2.is_empty())
                .with("nodes", count)
                .with("failing", bad2),
        );
        out.push(
            CheckReport::truth(name("l3-yq-nodes"), &params, bad3.is_empty())
                .with("nodes", count - 1)
                .with("failing", bad3),
        );
        out.push(CheckReport::equality(
            name("c-equals-cprime"),
            &params,
            &l.c,
            &l.cprime,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn e6_sample(m: usize, n: usize) -> ParamSet {
        ParamSet::new(
            ratio(2, 7),
            [ratio(3, 5), ratio(-2, 3), ratio(5, 4), ratio(7, 3)],
            m,
            n,
        )
        .unwrap()
    }

    #[test]
    fn d5_closed_form_at_zero_degree() {
        let p = ParamSet::new(ratio(2, 5), [int(2), int(3), int(5), int(7)], 0, 0).unwrap();
        let l = extract_d5(&p).unwrap();
        let [a1, a2, a3, a4] = &p.a;
        assert_eq!(l.c0, a1 + a2 - a3 - a4);
        assert_eq!(l.f, (a1 * a2 - a3 * a4) / (a1 + a2 - a3 - a4));
    }

    #[test]
    fn direction_roundtrip() {
        let p = e6_sample(2, 1);
        for d in Direction::E6.into_iter().chain([Direction::D5T]) {
            assert_eq!(d.apply_inverse(&d.apply(&p).unwrap()).unwrap(), p);
        }
        assert!(Direction::E6T.apply(&e6_sample(0, 1)).is_err());
    }

    #[test]
    fn f_is_direction_independent() {
        let p = e6_sample(2, 1);
        let fs: Vec<Scalar> = Direction::E6
            .iter()
            .map(|&d| extract_e6(&p, d).unwrap().f)
            .collect();
        assert!(fs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn residuals_pass_all_directions() {
        let p = e6_sample(2, 1);
        for d in Direction::E6 {
            let l = extract_e6(&p, d).unwrap();
            for r in lax_residual_check(&l).unwrap() {
                assert!(r.passed(), "{} {:?}", r.check, r);
            }
        }
        let p = ParamSet::new(ratio(2, 5), [int(2), int(3), int(5), int(7)], 1, 2).unwrap();
        for r in lax_residual_check(&extract_d5(&p).unwrap()).unwrap() {
            assert!(r.passed(), "{} {:?}", r.check, r);
        }
    }
}
