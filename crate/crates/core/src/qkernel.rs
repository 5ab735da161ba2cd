//! q-Pochhammer products, terminating ₃φ₂ sums, node values and Taylor data.

use crate::algebra::{checked_div, int, pow, powi, ratio, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Padé problem configuration `(q, a1..a4, m, n)`; `N = m + n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    pub q: Scalar,
    pub a: [Scalar; 4],
    pub m: usize,
    pub n: usize,
}

impl ParamSet {
    /// Construct with the default admissibility bound `B = N + 3`.
    pub fn new(q: Scalar, a: [Scalar; 4], m: usize, n: usize) -> Result<Self> {
        Self::with_bound(q, a, m, n, m + n + 3)
    }

    pub fn with_bound(q: Scalar, a: [Scalar; 4], m: usize, n: usize, bound: usize) -> Result<Self> {
        if q.is_zero() || q == int(1) || q == int(-1) {
            return Err(Error::Inadmissible(format!("q = {q}")));
        }
        if let Some(i) = a.iter().position(Zero::is_zero) {
            return Err(Error::Inadmissible(format!("a{} = 0", i + 1)));
        }
        if bound < m + n + 3 {
            return Err(Error::Precondition(format!("bound {bound} below N+3")));
        }
        let mut pw = Scalar::one();
        for k in 1..=bound {
            pw *= &q;
            if pw.is_one() {
                return Err(Error::Inadmissible(format!("q^{k} = 1")));
            }
        }
        Ok(ParamSet { q, a, m, n })
    }

    pub fn big_n(&self) -> usize {
        self.m + self.n
    }

    /// Same `q`, new `a` and degrees; admissibility rechecked.
    pub fn with(&self, a: [Scalar; 4], m: usize, n: usize) -> Result<Self> {
        ParamSet::new(self.q.clone(), a, m, n)
    }

    pub fn snapshot(&self) -> BTreeMap<String, String> {
        let mut s = BTreeMap::new();
        s.insert("q".into(), crate::algebra::fmt_scalar(&self.q));
        for (i, a) in self.a.iter().enumerate() {
            s.insert(format!("a{}", i + 1), crate::algebra::fmt_scalar(a));
        }
        s.insert("m".into(), self.m.to_string());
        s.insert("n".into(), self.n.to_string());
        s
    }
}

/// `(z)_j = ∏_{k=0}^{j-1} (1 - q^k z)`.
pub fn qpoch(z: &Scalar, j: usize, q: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut t = z.clone();
    for _ in 0..j {
        acc *= Scalar::one() - &t;
        t *= q;
    }
    acc
}

/// `(z_1, …, z_i)_j = ∏_t (z_t)_j`.
pub fn qpoch_list(zs: &[Scalar], j: usize, q: &Scalar) -> Scalar {
    zs.iter().map(|z| qpoch(z, j, q)).product()
}

/// Interpolation nodes `x_i = q^i`, `i = 0..N`.
pub fn nodes(p: &ParamSet) -> Vec<Scalar> {
    (0..=p.big_n()).map(|i| pow(&p.q, i)).collect()
}

/// Node values `y_i = (a3, a4)_i / (a1, a2)_i`, `i = 0..N`.
pub fn y_nodes(p: &ParamSet) -> Result<Vec<Scalar>> {
    y_values(p, p.big_n() + 1)
}

/// First `count` node values (the check routines need one or two beyond `N`).
pub fn y_values(p: &ParamSet, count: usize) -> Result<Vec<Scalar>> {
    let [a1, a2, a3, a4] = &p.a;
    let mut out = Vec::with_capacity(count);
    let mut y = Scalar::one();
    for i in 0..count {
        if i > 0 {
            let qi = pow(&p.q, i - 1);
            let den = (Scalar::one() - a1 * &qi) * (Scalar::one() - a2 * &qi);
            if den.is_zero() {
                return Err(Error::Inadmissible(format!("(a1, a2)_{i} = 0")));
            }
            y = y * (Scalar::one() - a3 * &qi) * (Scalar::one() - a4 * &qi) / den;
        }
        out.push(y.clone());
    }
    Ok(out)
}

/// Taylor coefficients `c_0..c_order` of the D5 function from its q-difference equation.
pub fn taylor_y_d5(p: &ParamSet, order: usize) -> Result<Vec<Scalar>> {
    let [a1, a2, a3, a4] = &p.a;
    let q = &p.q;
    let s12 = a1 + a2;
    let p12 = a1 * a2;
    let s34 = a3 + a4;
    let p34 = a3 * a4;
    let mut c: Vec<Scalar> = vec![Scalar::one()];
    for k in 1..=order {
        let den = pow(q, k) - Scalar::one();
        if den.is_zero() {
            return Err(Error::Inadmissible(format!("q^{k} = 1")));
        }
        let c1 = &c[k - 1];
        let mut v = &s12 * pow(q, k - 1) * c1 - &s34 * c1;
        if k >= 2 {
            let c2 = &c[k - 2];
            v += -&p12 * powi(q, k as i64 - 2)? * c2 + &p34 * c2;
        }
        c.push(v / den);
    }
    Ok(c)
}

/// Partial sum `Σ_{s=0}^{terms} (a1,a2,a3)_s/(b1,b2,q)_s · x^s`.
pub fn phi32(num: [&Scalar; 3], den: [&Scalar; 2], x: &Scalar, q: &Scalar, terms: usize) -> Result<Scalar> {
    let mut sum = Scalar::zero();
    let mut term = Scalar::one();
    for s in 0..=terms {
        if s > 0 {
            let qs = pow(q, s - 1);
            let top: Scalar = num.iter().map(|a| Scalar::one() - *a * &qs).product();
            let bot: Scalar = [den[0], den[1], q]
                .iter()
                .map(|b| Scalar::one() - *b * &qs)
                .product();
            if bot.is_zero() {
                return Err(Error::Inadmissible(format!(
                    "3phi2 denominator vanishes at s = {s}"
                )));
            }
            term = term * top * x / bot;
        }
        sum += &term;
    }
    Ok(sum)
}

/// `F'(x_s) = ∏_{i≠s}(q^s - q^i)` via `q^{-s}(q)_s(q)_N/(q^{-N})_s`.
pub fn f_prime_node(s: usize, big_n: usize, q: &Scalar) -> Result<Scalar> {
    if s > big_n {
        return Err(Error::Precondition(format!("s = {s} > N = {big_n}")));
    }
    let q_neg_n = powi(q, -(big_n as i64))?;
    let num = powi(q, -(s as i64))? * qpoch(q, s, q) * qpoch(q, big_n, q);
    checked_div(&num, &qpoch(&q_neg_n, s, q))
}

/// Small random nonzero rational: |numerator| ≤ 20, denominator ≤ 20.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=20);
        if num != 0 {
            return ratio(num, den);
        }
    }
}

/// One admissible draw of `(q, a)` for fixed `(m, n)`; callers retry on error.
pub fn sample_params<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Result<ParamSet> {
    let q = random_scalar(rng);
    let a = [
        random_scalar(rng),
        random_scalar(rng),
        random_scalar(rng),
        random_scalar(rng),
    ];
    let p = ParamSet::new(q, a, m, n)?;
    y_nodes(&p)?;
    Ok(p)
}

/// Floating-point `(a1x, a2x)_∞/(a3x, a4x)_∞`, truncated after `factors` factors.
pub fn y_d5_truncated(p: &ParamSet, x: f64, factors: usize) -> f64 {
    use crate::algebra::to_f64;
    let q = to_f64(&p.q);
    let a: Vec<f64> = p.a.iter().map(to_f64).collect();
    let mut acc = 1.0;
    let mut qk = 1.0;
    for _ in 0..factors {
        acc *= (1.0 - a[0] * x * qk) * (1.0 - a[1] * x * qk);
        acc /= (1.0 - a[2] * x * qk) * (1.0 - a[3] * x * qk);
        qk *= q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ParamSet {
        ParamSet::new(ratio(2, 5), [int(2), int(3), int(5), int(7)], 1, 1).unwrap()
    }

    #[test]
    fn qpoch_examples() {
        let q = ratio(2, 5);
        let z = ratio(3, 7);
        assert_eq!(qpoch(&z, 0, &q), int(1));
        assert_eq!(qpoch(&z, 2, &q), (int(1) - &z) * (int(1) - &q * &z));
        let qm2 = powi(&q, -2).unwrap();
        assert_eq!(qpoch(&qm2, 3, &q), int(0));
    }

    #[test]
    fn y_nodes_examples() {
        let p = sample();
        let y = y_nodes(&p).unwrap();
        assert_eq!(y[0], int(1));
        assert_eq!(y[1], int(12));
        let [a1, a2, a3, a4] = &p.a;
        let q = &p.q;
        let ratio21 = (int(1) - q * a3) * (int(1) - q * a4) / ((int(1) - q * a1) * (int(1) - q * a2));
        assert_eq!(&y[2] / &y[1], ratio21);
    }

    #[test]
    fn taylor_examples() {
        let p = sample();
        let c = taylor_y_d5(&p, 4).unwrap();
        assert_eq!(c[0], int(1));
        let [a1, a2, a3, a4] = &p.a;
        assert_eq!(c[1], (a1 + a2 - a3 - a4) / (&p.q - int(1)));
        let flat = ParamSet::new(ratio(1, 3), [int(2), int(5), int(2), int(5)], 0, 0).unwrap();
        assert!(taylor_y_d5(&flat, 6).unwrap()[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn phi32_examples() {
        let q = ratio(1, 3);
        let (a, b, c, d, e) = (ratio(2, 3), int(5), ratio(-1, 2), int(7), ratio(3, 4));
        let x = ratio(5, 11);
        assert_eq!(phi32([&a, &b, &c], [&d, &e], &x, &q, 0).unwrap(), int(1));
        assert_eq!(phi32([&a, &b, &c], [&d, &e], &int(0), &q, 4).unwrap(), int(1));
        let one = int(1);
        let expect =
            &one + (&one - &a) * (&one - &b) * (&one - &c) * &x / ((&one - &d) * (&one - &e) * (&one - &q));
        assert_eq!(phi32([&a, &b, &c], [&d, &e], &x, &q, 1).unwrap(), expect);
    }

    #[test]
    fn f_prime_examples() {
        let q = ratio(3, 7);
        assert_eq!(f_prime_node(0, 0, &q).unwrap(), int(1));
        let one = int(1);
        assert_eq!(f_prime_node(1, 2, &q).unwrap(), -&q * (&one - &q) * (&one - &q));
    }

    #[test]
    fn admissibility() {
        assert!(ParamSet::new(int(1), [int(2), int(3), int(5), int(7)], 1, 1).is_err());
        assert!(ParamSet::new(int(-1), [int(2), int(3), int(5), int(7)], 1, 1).is_err());
        assert!(ParamSet::new(ratio(1, 2), [int(0), int(3), int(5), int(7)], 1, 1).is_err());
        let p = ParamSet::new(ratio(1, 2), [int(1), int(3), int(5), int(7)], 1, 1).unwrap();
        assert!(matches!(y_nodes(&p), Err(Error::Inadmissible(_))));
    }
}
