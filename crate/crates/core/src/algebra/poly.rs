use super::Scalar;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial; `coeffs[k]` multiplies `x^k`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `1 - alpha·x`.
    pub fn linear_factor(alpha: &Scalar) -> Self {
        Poly::new(vec![Scalar::one(), -alpha.clone()])
    }

    /// `∏ (1 - alpha_t·x)`.
    pub fn linear_factors(alphas: &[Scalar]) -> Self {
        alphas
            .iter()
            .fold(Poly::one(), |acc, a| &acc * &Poly::linear_factor(a))
    }

    /// `∏ (x - r_t)`.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![-r.clone(), Scalar::one()])
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x ↦ p(s·x)`.
    pub fn scale_arg(&self, s: &Scalar) -> Poly {
        let mut pw = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= s;
        }
        Poly::new(out)
    }

    /// Reduction modulo `x^order`.
    pub fn truncate(&self, order: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// Lowest index with a nonzero coefficient (`None` for the zero polynomial).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Euclidean division: `self = den·quot + rem`, `deg rem < deg den`.
    pub fn divide(&self, den: &Poly) -> Result<(Poly, Poly)> {
        let dd = den.degree().ok_or(Error::ZeroDivisor)?;
        let lead = den.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in den.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient, or `None` if `den` does not divide `self`.
    pub fn exact_div(&self, den: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divide(den)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Lagrange interpolant through `(nodes[i], values[i])`.
    pub fn lagrange(nodes: &[Scalar], values: &[Scalar]) -> Result<Poly> {
        let mut out = Poly::zero();
        for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
            let mut basis = Poly::constant(yi.clone());
            for (j, xj) in nodes.iter().enumerate() {
                if i != j {
                    let d = super::checked_div(&Scalar::one(), &(xi - xj))?;
                    basis = &basis * &Poly::new(vec![-xj * &d, d]);
                }
            }
            out = &out + &basis;
        }
        Ok(out)
    }

    /// Coefficient list in exact `num/den` form, lowest degree first.
    pub fn digest(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(super::fmt_scalar).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn divide_examples() {
        assert_eq!(
            p(&[-1, 0, 1]).divide(&p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), Poly::zero())
        );
        assert_eq!(
            p(&[0, 1]).divide(&p(&[0, 0, 1])).unwrap(),
            (Poly::zero(), p(&[0, 1]))
        );
        assert_eq!(p(&[1, 0, 1]).divide(&p(&[-1, 1])).unwrap(), (p(&[1, 1]), p(&[2])));
        assert_eq!(p(&[1]).divide(&Poly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn scale_arg_examples() {
        assert_eq!(p(&[0, 0, 1]).scale_arg(&int(2)), p(&[0, 0, 4]));
        let a = p(&[1, 2, 3]);
        assert_eq!(a.scale_arg(&int(1)), a);
        let q = ratio(2, 5);
        assert_eq!(p(&[1, 1]).scale_arg(&q), Poly::new(vec![int(1), q]));
    }

    #[test]
    fn linear_factors_and_eval() {
        let f = Poly::linear_factors(&[int(2), int(3)]);
        assert_eq!(f, p(&[1, -5, 6]));
        assert_eq!(f.eval(&ratio(1, 2)), int(0));
    }

    #[test]
    fn lagrange_reproduces_cubic() {
        let c = p(&[1, -2, 0, 5]);
        let xs: Vec<Scalar> = (0..4).map(int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| c.eval(x)).collect();
        assert_eq!(Poly::lagrange(&xs, &ys).unwrap(), c);
    }
}
