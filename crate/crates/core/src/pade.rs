//! Padé approximation (series) and Padé interpolation (nodes), by linear
//! solve and by the determinant formulas.

use crate::algebra::{det_poly, nullspace, pow, powi, solve_linear, solve_particular, Matrix, Poly, Scalar};
use crate::error::{Error, Result};
use crate::qkernel::{nodes, qpoch, qpoch_list, taylor_y_d5, y_nodes, ParamSet};
use num_traits::{One, Zero};

/// `(P, Q)` with `deg P ≤ m`, `deg Q ≤ n`. Solver outputs have `Q(0) = 1`;
/// determinant outputs are only defined up to a common scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadePair {
    pub p: Poly,
    pub q: Poly,
}

impl PadePair {
    /// `P·Q' - P'·Q`; zero iff the two pairs define the same rational function.
    pub fn cross(&self, other: &PadePair) -> Poly {
        &(&self.p * &other.q) - &(&other.p * &self.q)
    }

    /// Proportional as pairs: one scalar `λ` with `(P', Q') = λ(P, Q)`.
    pub fn proportional(&self, other: &PadePair) -> bool {
        let pivot = |a: &PadePair| {
            a.q.coeffs()
                .iter()
                .chain(a.p.coeffs())
                .find(|c| !c.is_zero())
                .cloned()
        };
        match (pivot(self), pivot(other)) {
            (Some(s), Some(o)) => {
                let lam = &o / &s;
                self.p.scale(&lam) == other.p && self.q.scale(&lam) == other.q
            }
            (None, None) => true,
            _ => false,
        }
    }

    /// Rescale so that `Q(0) = 1`.
    pub fn normalized(&self) -> Result<PadePair> {
        let q0 = self.q.coeff(0);
        if q0.is_zero() {
            return Err(Error::NormalizationFailure);
        }
        let s = q0.recip();
        Ok(PadePair {
            p: self.p.scale(&s),
            q: self.q.scale(&s),
        })
    }
}

/// `Y ≡ P/Q (mod x^{N+1})` from the coefficients of `Y`.
pub fn pade_approx_series(series: &[Scalar], m: usize, n: usize) -> Result<PadePair> {
    let big_n = m + n;
    if series.len() < big_n + 1 {
        return Err(Error::Precondition(format!(
            "need {} series coefficients, got {}",
            big_n + 1,
            series.len()
        )));
    }
    let c = |k: isize| -> Scalar {
        if k < 0 {
            Scalar::zero()
        } else {
            series[k as usize].clone()
        }
    };
    let mut qs = vec![Scalar::one()];
    if n > 0 {
        let sys = Matrix::from_fn(n, n, |r, j| c((m + 1 + r) as isize - (j + 1) as isize));
        let rhs: Vec<Scalar> = (0..n).map(|r| -c((m + 1 + r) as isize)).collect();
        // a consistent rank-deficient system (e.g. Y ≡ 1) keeps the lowest-degree Q
        let sol = match solve_linear(&sys, &rhs) {
            Err(Error::Singular) => solve_particular(&sys, &rhs)?,
            other => other?,
        };
        qs.extend(sol);
    }
    let ps = (0..=m)
        .map(|k| (0..=n.min(k)).map(|j| &qs[j] * c((k - j) as isize)).sum())
        .collect();
    Ok(PadePair {
        p: Poly::new(ps),
        q: Poly::new(qs),
    })
}

/// Homogeneous interpolation system in `(p_0..p_m, q_0..q_n)`.
pub fn interpolation_system(nodes: &[Scalar], values: &[Scalar], m: usize, n: usize) -> Matrix {
    Matrix::from_fn(nodes.len(), m + n + 2, |i, k| {
        if k <= m {
            pow(&nodes[i], k)
        } else {
            -&values[i] * pow(&nodes[i], k - m - 1)
        }
    })
}

/// `P(x_i) = y_i Q(x_i)` at every node, `Q(0) = 1`.
pub fn pade_interpolate(nodes: &[Scalar], values: &[Scalar], m: usize, n: usize) -> Result<PadePair> {
    let big_n = m + n;
    if nodes.len() != big_n + 1 || values.len() != big_n + 1 {
        return Err(Error::Precondition(format!(
            "need {} nodes and values",
            big_n + 1
        )));
    }
    let sys = Matrix::from_fn(big_n + 1, big_n + 1, |i, k| {
        if k <= m {
            pow(&nodes[i], k)
        } else {
            -&values[i] * pow(&nodes[i], k - m)
        }
    });
    match solve_linear(&sys, values) {
        Ok(sol) => {
            let p = Poly::new(sol[..=m].to_vec());
            let mut qs = vec![Scalar::one()];
            qs.extend_from_slice(&sol[m + 1..]);
            Ok(PadePair { p, q: Poly::new(qs) })
        }
        Err(Error::Singular) => {
            let ns = nullspace(&interpolation_system(nodes, values, m, n));
            if !ns.is_empty() && ns.iter().all(|v| v[m + 1].is_zero()) {
                Err(Error::NormalizationFailure)
            } else {
                Err(Error::Singular)
            }
        }
        Err(e) => Err(e),
    }
}

/// Determinant pair from nodal weights `w_s`:
/// `P = F·det(Σ_s x_s^{i+j} w_s/(x - x_s))_{0..n}`, `Q = det(Σ_s x_s^{i+j} w_s (x - x_s))_{0..n-1}`.
fn det_pair(nodes: &[Scalar], weights: &[Scalar], n: usize) -> Result<PadePair> {
    let f = Poly::from_roots(nodes);
    // F(x)/(x - x_s)
    let cofactors: Vec<Poly> = (0..nodes.len())
        .map(|s| {
            let others: Vec<Scalar> = nodes
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != s)
                .map(|(_, v)| v.clone())
                .collect();
            Poly::from_roots(&others)
        })
        .collect();
    let powers = |s: usize, k: usize| pow(&nodes[s], k);
    let g: Vec<Vec<Poly>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    (0..nodes.len()).fold(Poly::zero(), |acc, s| {
                        &acc + &cofactors[s].scale(&(powers(s, i + j) * &weights[s]))
                    })
                })
                .collect()
        })
        .collect();
    // det(G/F) · F = det(G) / F^n
    let p = det_poly(&g)?
        .exact_div(&f.pow(n))?
        .ok_or_else(|| Error::DivisibilityFailure("F^n in the P determinant".into()))?;
    let h: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..nodes.len()).fold(Poly::zero(), |acc, s| {
                        let lin = Poly::new(vec![-nodes[s].clone(), Scalar::one()]);
                        &acc + &lin.scale(&(powers(s, i + j) * &weights[s]))
                    })
                })
                .collect()
        })
        .collect();
    let q = det_poly(&h)?;
    if q.is_zero() || p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    Ok(PadePair { p, q })
}

/// General determinant solution with `u_s = y_s/F'(x_s)`; defined up to scale.
pub fn pade_det_interpolation(nodes: &[Scalar], values: &[Scalar], m: usize, n: usize) -> Result<PadePair> {
    let big_n = m + n;
    if nodes.len() != big_n + 1 || values.len() != big_n + 1 {
        return Err(Error::Precondition(format!(
            "need {} nodes and values",
            big_n + 1
        )));
    }
    let mut u = Vec::with_capacity(nodes.len());
    for (s, (xs, ys)) in nodes.iter().zip(values).enumerate() {
        let fp: Scalar = nodes
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != s)
            .map(|(_, xt)| xs - xt)
            .product();
        if fp.is_zero() {
            return Err(Error::Precondition("nodes must be distinct".into()));
        }
        u.push(ys / fp);
    }
    det_pair(nodes, &u, n)
}

/// Weight `(a3, a4, q^{-N})_s/(a1, a2, q)_s`.
pub fn hypergeometric_weight(p: &ParamSet, s: usize) -> Result<Scalar> {
    let [a1, a2, a3, a4] = &p.a;
    let q = &p.q;
    let qn = powi(q, -(p.big_n() as i64))?;
    let den = qpoch_list(&[a1.clone(), a2.clone(), q.clone()], s, q);
    if den.is_zero() {
        return Err(Error::Inadmissible(format!("(a1, a2, q)_{s} = 0")));
    }
    Ok(qpoch_list(&[a3.clone(), a4.clone(), qn], s, q) / den)
}

/// Specialized determinants on nodes `q^s`; every entry carries the exact
/// finite prefactor `(q^{N+1})_∞/(q)_∞ = 1/(q)_N`.
pub fn pade_det_specialized(p: &ParamSet) -> Result<PadePair> {
    let q = &p.q;
    let pref = qpoch(q, p.big_n(), q).recip();
    let xs = nodes(p);
    let w = (0..=p.big_n())
        .map(|s| Ok(&pref * hypergeometric_weight(p, s)? * pow(q, s)))
        .collect::<Result<Vec<_>>>()?;
    det_pair(&xs, &w, p.n)
}

/// D5 problem: Padé approximant of the Taylor series of `Y`.
pub fn d5_pade(p: &ParamSet) -> Result<PadePair> {
    let c = taylor_y_d5(p, p.big_n())?;
    pade_approx_series(&c, p.m, p.n)
}

/// E6 problem: interpolation at `q^i` of `(a3, a4)_i/(a1, a2)_i`.
pub fn e6_pade(p: &ParamSet) -> Result<PadePair> {
    pade_interpolate(&nodes(p), &y_nodes(p)?, p.m, p.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    #[test]
    fn series_of_one() {
        let mut s = vec![int(1)];
        s.extend(vec![int(0); 6]);
        for (m, n) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            let pq = pade_approx_series(&s, m, n).unwrap();
            assert_eq!(pq.p, Poly::one());
            assert_eq!(pq.q, Poly::one());
        }
    }

    #[test]
    fn series_truncation_and_hand_case() {
        let s = vec![int(2), ratio(3, 5), ratio(-7, 4)];
        let pq = pade_approx_series(&s, 1, 0).unwrap();
        assert_eq!(pq.p, Poly::new(vec![int(2), ratio(3, 5)]));
        assert_eq!(pq.q, Poly::one());
        let s = vec![int(1), ratio(3, 5), ratio(-7, 4)];
        let pq = pade_approx_series(&s, 1, 1).unwrap();
        let r = &s[2] / &s[1];
        assert_eq!(pq.q, Poly::new(vec![int(1), -r.clone()]));
        assert_eq!(pq.p, Poly::new(vec![int(1), &s[1] - &r]));
    }

    #[test]
    fn constant_values() {
        let xs = vec![int(1), ratio(1, 2), ratio(1, 4)];
        let ys = vec![ratio(5, 3); 3];
        let pq = pade_interpolate(&xs, &ys, 0, 2).unwrap();
        assert_eq!(pq.p, Poly::constant(ratio(5, 3)));
        assert_eq!(pq.q, Poly::one());
    }

    #[test]
    fn polynomial_case_is_lagrange() {
        let xs = vec![int(1), ratio(1, 3), ratio(1, 9), ratio(1, 27)];
        let ys = vec![int(2), ratio(-1, 4), int(7), ratio(3, 8)];
        let lag = Poly::lagrange(&xs, &ys).unwrap();
        assert_eq!(pade_interpolate(&xs, &ys, 3, 0).unwrap().p, lag);
        let det = pade_det_interpolation(&xs, &ys, 3, 0).unwrap();
        assert_eq!(det.q, Poly::one());
        assert_eq!(det.p, lag);
    }

    #[test]
    fn specialized_matches_general() {
        let p = ParamSet::new(
            ratio(2, 7),
            [ratio(3, 5), ratio(-2, 3), ratio(5, 4), ratio(7, 3)],
            2,
            1,
        )
        .unwrap();
        let special = pade_det_specialized(&p).unwrap();
        let gen = pade_det_interpolation(&nodes(&p), &y_nodes(&p).unwrap(), p.m, p.n).unwrap();
        assert_eq!(special, gen);
        assert!(special.proportional(&e6_pade(&p).unwrap()));
    }

    #[test]
    fn n_zero_specialized_is_constant() {
        let p = ParamSet::new(
            ratio(2, 7),
            [ratio(3, 5), ratio(-2, 3), ratio(5, 4), ratio(7, 3)],
            0,
            0,
        )
        .unwrap();
        let special = pade_det_specialized(&p).unwrap();
        assert_eq!(special.q, Poly::one());
        assert_eq!(special.p.degree(), Some(0));
    }
}
