//! Birational action of the affine Weyl group `W(E6^(1))` on
//! `(b1..b8, f, g)`, words, the translation `T = r'r` and its identities.
//!
//! Words act on points left to right: `[a, b]` applies `a` first.

use crate::algebra::{checked_div, inv, lin_prod as lp, Scalar};
use crate::error::{Error, Result};
use crate::qkernel::random_scalar;
use crate::report::{CheckReport, Params};
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylState {
    pub b: [Scalar; 8],
    pub f: Scalar,
    pub g: Scalar,
}

impl WeylState {
    pub fn new(b: [Scalar; 8], f: Scalar, g: Scalar) -> Result<Self> {
        if b.iter().any(Zero::is_zero) || f.is_zero() || g.is_zero() {
            return Err(Error::IndeterminatePoint("zero slot".into()));
        }
        Ok(WeylState { b, f, g })
    }

    /// `q = b1 b2 ⋯ b8`.
    pub fn q(&self) -> Scalar {
        self.b.iter().product()
    }

    /// `(b1..b4)/λ, λ(b5..b8), λf, g/λ`.
    pub fn scaled(&self, lam: &Scalar) -> Result<WeylState> {
        let il = inv(lam)?;
        let mut b = self.b.clone();
        for (i, v) in b.iter_mut().enumerate() {
            *v = if i < 4 { &*v * &il } else { &*v * lam };
        }
        Ok(WeylState {
            b,
            f: &self.f * lam,
            g: &self.g * &il,
        })
    }

    fn params(&self) -> Params {
        let mut p = Params::new();
        for (i, v) in self.b.iter().enumerate() {
            p.insert(format!("b{}", i + 1), crate::algebra::fmt_scalar(v));
        }
        p.insert("f".into(), crate::algebra::fmt_scalar(&self.f));
        p.insert("g".into(), crate::algebra::fmt_scalar(&self.g));
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S(u8),
    Pi1,
    Pi2,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S(i) => write!(f, "s{i}"),
            Generator::Pi1 => write!(f, "pi1"),
            Generator::Pi2 => write!(f, "pi2"),
        }
    }
}

pub type Word = Vec<Generator>;

fn nz(d: Scalar, gen: Generator) -> Result<Scalar> {
    if d.is_zero() {
        Err(Error::IndeterminatePoint(gen.to_string()))
    } else {
        Ok(d)
    }
}

pub fn apply(gen: Generator, st: &WeylState) -> Result<WeylState> {
    let [b1, b2, b3, b4, b5, b6, b7, b8] = &st.b;
    let (f, g) = (&st.f, &st.g);
    let one = Scalar::one();
    let iv = |x: &Scalar| inv(x).map_err(|_| Error::IndeterminatePoint(gen.to_string()));
    let mut b = st.b.clone();
    let (mut nf, mut ng) = (f.clone(), g.clone());
    match gen {
        Generator::S(0) => b.swap(2, 3),
        Generator::S(1) => b.swap(0, 1),
        Generator::S(2) => {
            b[1] = iv(b8)?;
            b[2] = b2 * b3 * b8;
            b[3] = b2 * b4 * b8;
            b[7] = iv(b2)?;
            let den = nz(&one - b2 * f - f * g + b2 * b8 * f * g, gen)?;
            ng = b2 * (b8 - f) * g / den;
        }
        Generator::S(3) => b.swap(4, 7),
        Generator::S(4) => b.swap(4, 5),
        Generator::S(5) => b.swap(5, 6),
        Generator::S(6) => {
            b[0] = b1 * b3 * b8;
            b[1] = b2 * b3 * b8;
            b[2] = iv(b8)?;
            b[7] = iv(b3)?;
            let den = nz(-(b3 * b8) + b8 * g - f * g + b3 * b8 * f * g, gen)?;
            nf = f * (b8 * g - &one) / den;
        }
        Generator::S(i) => return Err(Error::Precondition(format!("no generator s{i}"))),
        Generator::Pi1 => {
            b = [
                iv(b4)?,
                iv(b3)?,
                iv(b2)?,
                iv(b1)?,
                iv(b5)?,
                iv(b6)?,
                iv(b7)?,
                iv(b8)?,
            ];
            nf = g.clone();
            ng = f.clone();
        }
        Generator::Pi2 => {
            b = [
                iv(b7)?,
                iv(b6)?,
                iv(&(b3 * b5 * b8))?,
                iv(&(b4 * b5 * b8))?,
                b8.clone(),
                iv(b2)?,
                iv(b1)?,
                b5.clone(),
            ];
            let den = nz(f + b5 * b8 * g - b5 * f * g - b8 * f * g, gen)?;
            ng = (&one - f * g) / den;
        }
    }
    if nf.is_zero() || ng.is_zero() {
        return Err(Error::IndeterminatePoint(gen.to_string()));
    }
    Ok(WeylState { b, f: nf, g: ng })
}

pub fn apply_word(word: &[Generator], st: &WeylState) -> Result<WeylState> {
    word.iter().try_fold(st.clone(), |s, &g| apply(g, &s))
}

/// Every generator is an involution, so the inverse is the reversal.
pub fn invert_word(word: &[Generator]) -> Word {
    word.iter().rev().copied().collect()
}

pub fn cartan() -> [[i8; 7]; 7] {
    [
        [2, 0, 0, 0, 0, 0, -1],
        [0, 2, -1, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, -1],
        [0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, -1, 2, 0],
        [-1, 0, 0, -1, 0, 0, 2],
    ]
}

use Generator::{Pi1, Pi2, S};

pub fn word_r() -> Word {
    let mut w = vec![Pi2];
    w.extend([0, 5, 4, 5, 3, 4, 5, 2, 3, 4, 5, 1, 2, 3, 4, 5].map(S));
    w
}

/// `r' = π1 r π1`.
pub fn word_r_prime() -> Word {
    let mut w = vec![Pi1];
    w.extend(word_r());
    w.push(Pi1);
    w
}

/// `T = r' r`.
pub fn word_t() -> Word {
    let mut w = word_r_prime();
    w.extend(word_r());
    w
}

pub fn translation_t(st: &WeylState) -> Result<WeylState> {
    apply_word(&word_t(), st)
}

/// `λ` with `a = scaled(b, λ)`, if one exists.
pub fn gauge_ratio(a: &WeylState, b: &WeylState) -> Option<Scalar> {
    let lam = checked_div(&a.f, &b.f).ok()?;
    (b.scaled(&lam).ok()? == *a).then_some(lam)
}

/// `w(s)` compared with `s`, exactly or modulo the scaling gauge.
fn fixes(name: &str, word: &[Generator], st: &WeylState, modulo_gauge: bool) -> Result<CheckReport> {
    let image = apply_word(word, st)?;
    let params = st.params();
    if image == *st {
        return Ok(CheckReport::truth(name, &params, true));
    }
    if modulo_gauge {
        if let Some(lam) = gauge_ratio(&image, st) {
            return Ok(CheckReport::truth(name, &params, true).with_scalar("gauge_lambda", &lam));
        }
    }
    Ok(CheckReport::truth(name, &params, false).with("image", format!("{image:?}")))
}

fn word_string(w: &[Generator]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// All relations of the group at one state; the relations that only hold
/// up to the scaling gauge are reported with their `λ`.
pub fn relations_at(st: &WeylState) -> Result<Vec<CheckReport>> {
    let a = cartan();
    let mut out = Vec::new();
    for i in 0..7u8 {
        out.push(fixes(&format!("weyl-involution-s{i}"), &[S(i), S(i)], st, false)?);
        for j in i + 1..7u8 {
            let k = if a[i as usize][j as usize] == -1 { 3 } else { 2 };
            let w: Word = (0..k).flat_map(|_| [S(i), S(j)]).collect();
            out.push(fixes(&format!("weyl-braid-s{i}-s{j}"), &w, st, false)?);
        }
    }
    out.push(fixes("weyl-involution-pi1", &[Pi1, Pi1], st, false)?);
    out.push(fixes("weyl-involution-pi2", &[Pi2, Pi2], st, false)?);
    let w: Word = (0..3).flat_map(|_| [Pi1, Pi2]).collect();
    out.push(fixes("weyl-pi1-pi2-cubed", &w, st, true)?);
    let conj = [
        (Pi1, [(1, 0), (2, 6), (3, 3), (4, 4), (5, 5)]),
        (Pi2, [(0, 0), (1, 5), (2, 4), (3, 3), (6, 6)]),
    ];
    for (pi, pairs) in conj {
        for (i, j) in pairs {
            // s_i π = π s_j as maps, i.e. π, s_i, s_j, π fixes the point
            let name = format!("weyl-conjugate-s{i}-{pi}-s{j}");
            let gauge = pi == Pi2 && i == 6;
            out.push(fixes(&name, &[pi, S(i), pi, S(j)], st, gauge)?);
        }
    }
    Ok(out)
}

/// `(parametershift)`, preservation of `q`, and `T⁻¹T = id` at one state.
pub fn translation_at(st: &WeylState) -> Result<Vec<CheckReport>> {
    let params = st.params();
    let t = translation_t(st)?;
    let q = st.q();
    let b = &st.b;
    let expect = [
        &b[0] / &q,
        &b[1] / &q,
        &b[2] * &q,
        &b[3] * &q,
        b[4].clone(),
        b[5].clone(),
        b[6].clone(),
        b[7].clone(),
    ];
    let back = apply_word(&invert_word(&word_t()), &t)?;
    Ok(vec![
        CheckReport::truth("weyl-translation-parameter-shift", &params, t.b == expect)
            .with("word", word_string(&word_t()))
            .with(
                "image_b",
                t.b.iter().map(crate::algebra::fmt_scalar).collect::<Vec<_>>(),
            ),
        CheckReport::equality("weyl-translation-preserves-q", &params, &t.q(), &q),
        CheckReport::truth("weyl-translation-inverse", &params, back == *st),
    ])
}

/// Both sides of the g-equation:
/// `(1/(f g̲), 1/(f g))_1 = (b5/f, .., b8/f)_1 / (1/(b1 f), 1/(b2 f))_1`.
pub fn g_equation_sides(
    b: &[Scalar; 8],
    f: &Scalar,
    g: &Scalar,
    g_under: &Scalar,
) -> Result<(Scalar, Scalar)> {
    let fi = inv(f)?;
    let lhs = lp(&[inv(&(f * g_under))?, inv(&(f * g))?]);
    let den = lp(&[inv(&(&b[0] * f))?, inv(&(&b[1] * f))?]);
    let rhs = checked_div(&lp(&[&b[4] * &fi, &b[5] * &fi, &b[6] * &fi, &b[7] * &fi]), &den)?;
    Ok((lhs, rhs))
}

/// Both sides of the f-equation:
/// `(f̄ g, f g)_1/(f f̄) = b1 b2 (b5 g, .., b8 g)_1 / (q (g/b3, g/b4)_1)`.
pub fn f_equation_sides(b: &[Scalar; 8], f: &Scalar, g: &Scalar, f_bar: &Scalar) -> Result<(Scalar, Scalar)> {
    let q: Scalar = b.iter().product();
    let lhs = checked_div(&lp(&[f_bar * g, f * g]), &(f * f_bar))?;
    let num = &b[0] * &b[1] * lp(&[&b[4] * g, &b[5] * g, &b[6] * g, &b[7] * g]);
    let den = q * lp(&[checked_div(g, &b[2])?, checked_div(g, &b[3])?]);
    Ok((lhs, checked_div(&num, &den)?))
}

/// Painlevé identities of `T` at one state, and at the rescaled state.
pub fn painleve_at(st: &WeylState, lam: &Scalar) -> Result<Vec<CheckReport>> {
    let params = st.params();
    let mut out = Vec::new();
    for (suffix, s) in [("", st.clone()), ("-scaled", st.scaled(lam)?)] {
        let g_under = apply_word(&invert_word(&word_r()), &s)?.g;
        let f_bar = apply_word(&word_r_prime(), &s)?.f;
        let t = translation_t(&s)?;
        let (l, r) = g_equation_sides(&s.b, &s.f, &s.g, &g_under)?;
        out.push(CheckReport::equality(
            format!("weyl-g-equation{suffix}"),
            &params,
            &l,
            &r,
        ));
        let (l, r) = f_equation_sides(&s.b, &s.f, &s.g, &f_bar)?;
        out.push(CheckReport::equality(
            format!("weyl-f-equation{suffix}"),
            &params,
            &l,
            &r,
        ));
        out.push(CheckReport::equality(
            format!("weyl-translation-f-slot{suffix}"),
            &params,
            &t.f,
            &f_bar,
        ));
    }
    Ok(out)
}

/// `scaling⁻¹ ∘ gen ∘ scaling` acts as `gen` up to the gauge, for every generator.
pub fn scaling_at(st: &WeylState, lam: &Scalar) -> Result<Vec<CheckReport>> {
    let params = st.params();
    let gens: Vec<Generator> = (0..7).map(S).chain([Pi1, Pi2]).collect();
    let mut out = Vec::new();
    out.push(CheckReport::equality(
        "weyl-scaling-preserves-q",
        &params,
        &st.scaled(lam)?.q(),
        &st.q(),
    ));
    out.push(CheckReport::truth(
        "weyl-scaling-identity",
        &params,
        st.scaled(&Scalar::one())? == *st,
    ));
    for gen in gens {
        let direct = apply(gen, st)?;
        let conj = apply(gen, &st.scaled(lam)?)?;
        let lam2 = gauge_ratio(&conj, &direct);
        let mut r = CheckReport::truth(format!("weyl-scaling-commutes-{gen}"), &params, lam2.is_some());
        if let Some(l) = lam2 {
            r = r.with_scalar("image_lambda", &l);
        }
        out.push(r);
    }
    Ok(out)
}

/// `g2`, `g3`, `g4` as g-slots of word images of the state.
pub fn direction_gs(st: &WeylState) -> Result<[Scalar; 3]> {
    let t_inv = invert_word(&word_t());
    let mut w2 = vec![S(2)];
    w2.extend(t_inv.iter().copied());
    let mut w4 = vec![S(2), S(1), S(3), S(2)];
    w4.extend(t_inv);
    Ok([
        apply_word(&w2, st)?.g,
        apply_word(&[S(1), S(2)], st)?.g,
        apply_word(&w4, st)?.g,
    ])
}

/// The contiguity identities among `g = g1`, `g2`, `g3`, `g4`.
pub fn contiguity_sides(
    b: &[Scalar; 8],
    f: &Scalar,
    g1: &Scalar,
    gs: &[Scalar; 3],
) -> Result<[(&'static str, Scalar, Scalar); 3]> {
    let fi = inv(f)?;
    let [g2, g3, g4] = gs;
    let e = |g: &Scalar| inv(&(f * g));
    let b1f = inv(&(&b[0] * f))?;
    Ok([
        (
            "g1-g2",
            lp(&[e(g1)?, e(g2)?]),
            checked_div(
                &lp(&[&b[4] * &fi, &b[5] * &fi, &b[6] * &fi]),
                &(Scalar::one() - &b1f),
            )?,
        ),
        (
            "g1-g3",
            lp(&[e(g3)?]),
            checked_div(&lp(&[b1f]), &lp(&[&b[7] * &fi]))? * lp(&[e(g1)?]),
        ),
        ("g1-g4", lp(&[e(g4)?, e(g1)?]), lp(&[&b[5] * &fi, &b[6] * &fi])),
    ])
}

pub fn directions_at(st: &WeylState) -> Result<Vec<CheckReport>> {
    let params = st.params();
    let gs = direction_gs(st)?;
    let f_kept = apply_word(&[S(1), S(2)], st)?.f == st.f;
    let mut out: Vec<CheckReport> = contiguity_sides(&st.b, &st.f, &st.g, &gs)?
        .into_iter()
        .map(|(name, l, r)| CheckReport::equality(format!("weyl-contiguity-{name}"), &params, &l, &r))
        .collect();
    out.push(CheckReport::truth("weyl-contiguity-f-fixed", &params, f_kept));
    Ok(out)
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> WeylState {
    let b = std::array::from_fn(|_| random_scalar(rng));
    WeylState {
        b,
        f: random_scalar(rng),
        g: random_scalar(rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn st() -> WeylState {
        let b = [2, 3, 5, 7, 11, 13, 17, 19].map(|v| ratio(v, v + 1));
        WeylState::new(b, ratio(3, 7), ratio(-5, 2)).unwrap()
    }

    #[test]
    fn generator_examples() {
        let s = st();
        let t = apply(S(1), &s).unwrap();
        assert_eq!((t.b[0].clone(), t.b[1].clone()), (s.b[1].clone(), s.b[0].clone()));
        assert_eq!(t.b[2..], s.b[2..]);
        let p = apply(Pi1, &s).unwrap();
        assert_eq!(p.b[0], inv(&s.b[3]).unwrap());
        assert_eq!((p.f.clone(), p.g.clone()), (s.g.clone(), s.f.clone()));
        assert_eq!(apply_word(&[S(2), S(2)], &s).unwrap(), s);
        assert_eq!(apply_word(&[], &s).unwrap(), s);
        assert_eq!(invert_word(&[Pi2, S(0), S(5)]), vec![S(5), S(0), Pi2]);
    }

    #[test]
    fn cartan_shape() {
        let a = cartan();
        assert!((0..7).all(|i| a[i][i] == 2));
        assert_eq!((a[0][6], a[6][0]), (-1, -1));
        assert!((0..7).all(|i| (0..7).all(|j| a[i][j] == a[j][i])));
    }

    #[test]
    fn identities_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let lam = ratio(3, 2);
        let mut done = 0;
        while done < 3 {
            let s = random_state(&mut rng);
            let Ok(reports) = (|| -> Result<Vec<CheckReport>> {
                let mut v = relations_at(&s)?;
                v.extend(translation_at(&s)?);
                v.extend(painleve_at(&s, &lam)?);
                v.extend(scaling_at(&s, &lam)?);
                v.extend(directions_at(&s)?);
                Ok(v)
            })() else {
                continue;
            };
            for r in reports {
                assert!(r.passed(), "{}: {:?}", r.check, r.witness);
            }
            done += 1;
        }
        assert_eq!(st().scaled(&int(1)).unwrap(), st());
    }
}
