//! The Iwahori-Matsumoto involution `IM`, the bar-type involution `iota`
//! (fixes `t_i = v T_i` and `theta_x`, sends `v` to `-v`), and their
//! composite `kappa_IM = iota . IM`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::Error;
use crate::hecke::{inv_tw, HeckeElt};
use crate::poly::LaurentInt;
use crate::report::{Report, Tally};
use crate::root_data::{RootDatum, Weight};
use crate::weyl::{enumerate, WeylElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    Im,
    Iota,
    KappaIm,
}

impl InvolutionKind {
    pub const ALL: [InvolutionKind; 3] = [InvolutionKind::Im, InvolutionKind::Iota, InvolutionKind::KappaIm];

    pub fn name(self) -> &'static str {
        match self {
            InvolutionKind::Im => "im",
            InvolutionKind::Iota => "iota",
            InvolutionKind::KappaIm => "kim",
        }
    }

    /// Whether scalars are twisted by `v -> -v`.
    pub fn is_semilinear(self) -> bool {
        !matches!(self, InvolutionKind::Im)
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "im" => Ok(InvolutionKind::Im),
            "iota" => Ok(InvolutionKind::Iota),
            "kim" | "kappa_im" | "kappa-im" => Ok(InvolutionKind::KappaIm),
            other => Err(Error::InvalidOption(format!("unknown involution `{other}`"))),
        }
    }
}

fn sign(len: usize) -> LaurentInt {
    LaurentInt::constant(if len.is_multiple_of(2) { 1 } else { -1 })
}

/// `IM(T_w) = (-1)^l(w) T_{w^-1}^{-1}`.
pub fn im_tw(d: &Arc<RootDatum>, w: &WeylElt) -> HeckeElt {
    inv_tw(d, &w.inverse(d)).scale(&sign(w.length()))
}

/// `IM(T_{s_1}) ... IM(T_{s_k})` along an arbitrary word, each factor
/// being `-T_s^{-1} = -T_s + (v - v^-1)`.
pub fn im_tw_from_word(d: &Arc<RootDatum>, word: &[usize]) -> HeckeElt {
    let shift = HeckeElt::scalar(d, LaurentInt::v_minus_vinv());
    let mut out = HeckeElt::unit(d);
    for &s in word {
        let t = HeckeElt::gen_t(d, s).expect("valid index");
        out = &out * &(&shift - &t);
    }
    out
}

fn apply_im(a: &HeckeElt) -> HeckeElt {
    let d = a.datum();
    let mut out = HeckeElt::zero(d);
    for (x, w, c) in a.terms() {
        let theta = HeckeElt::basis(d, -x, WeylElt::identity(d), c.clone());
        out = &out + &(&theta * &im_tw(d, w));
    }
    out
}

fn apply_iota(a: &HeckeElt) -> HeckeElt {
    let d = a.datum();
    let mut out = HeckeElt::zero(d);
    for (x, w, c) in a.terms() {
        let c = &c.eval_negate_v() * &sign(w.length());
        out = &out + &HeckeElt::basis(d, x.clone(), w.clone(), c);
    }
    out
}

pub fn apply(kind: InvolutionKind, a: &HeckeElt) -> HeckeElt {
    match kind {
        InvolutionKind::Im => apply_im(a),
        InvolutionKind::Iota => apply_iota(a),
        InvolutionKind::KappaIm => apply_iota(&apply_im(a)),
    }
}

fn random_coeff<R: Rng>(rng: &mut R) -> LaurentInt {
    loop {
        let n = rng.gen_range(1..=2);
        let p = LaurentInt::from_terms((0..n).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-3..=3))));
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random element with at most three basis terms, weight coordinates and
/// coefficient exponents in `[-2, 2]`.
pub fn random_element<R: Rng>(d: &Arc<RootDatum>, rng: &mut R) -> HeckeElt {
    let n_terms = rng.gen_range(1..=3);
    let mut out = HeckeElt::zero(d);
    while out.is_zero() {
        out = random_terms(d, n_terms, rng);
    }
    out
}

fn random_terms<R: Rng>(d: &Arc<RootDatum>, n_terms: usize, rng: &mut R) -> HeckeElt {
    let mut out = HeckeElt::zero(d);
    for _ in 0..n_terms {
        let x = Weight((0..d.rank()).map(|_| rng.gen_range(-2..=2)).collect());
        let len = rng.gen_range(0..=d.n_pos_roots());
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..d.rank())).collect();
        let w = WeylElt::from_word(d, &word).expect("valid indices");
        out = &out + &HeckeElt::basis(d, x, w, random_coeff(rng));
    }
    out
}

/// A random nonzero Laurent polynomial with exponents in `[-2, 2]`.
pub fn random_scalar<R: Rng>(rng: &mut R) -> LaurentInt {
    random_coeff(rng)
}

fn twist_scalar(kind: InvolutionKind, f: &LaurentInt) -> LaurentInt {
    if kind.is_semilinear() {
        f.eval_negate_v()
    } else {
        f.clone()
    }
}

/// Multiplicativity on `pairs` and (semi)linearity on `scalars x first
/// components`.
pub fn check_homomorphism(kind: InvolutionKind, pairs: &[(HeckeElt, HeckeElt)], scalars: &[LaurentInt]) -> Report {
    let mut report = Report::new("involution");
    let mut mult = Tally::new(format!("{kind}: f(ab) = f(a) f(b)"));
    for (a, b) in pairs {
        let lhs = apply(kind, &(a * b));
        let rhs = &apply(kind, a) * &apply(kind, b);
        mult.record(lhs == rhs, || format!("a = {a}, b = {b}"));
    }
    report.push(mult.finish());
    let mut lin = Tally::new(format!("{kind}: f(p a) = p' f(a)"));
    for (k, (a, _)) in pairs.iter().enumerate() {
        if scalars.is_empty() {
            break;
        }
        let p = &scalars[k % scalars.len()];
        let lhs = apply(kind, &a.scale(p));
        let rhs = apply(kind, a).scale(&twist_scalar(kind, p));
        lin.record(lhs == rhs, || format!("p = {p}, a = {a}"));
    }
    report.push(lin.finish());
    report
}

/// `f(f(a)) = a` for each kind, and `IM . iota = iota . IM`.
pub fn check_involutive(elements: &[HeckeElt]) -> Report {
    let mut report = Report::new("involution");
    for kind in InvolutionKind::ALL {
        let mut t = Tally::new(format!("{kind}: f(f(a)) = a"));
        for a in elements {
            t.record(apply(kind, &apply(kind, a)) == *a, || format!("a = {a}"));
        }
        report.push(t.finish());
    }
    let mut t = Tally::new("im . iota = iota . im");
    for a in elements {
        let lhs = apply(InvolutionKind::Im, &apply(InvolutionKind::Iota, a));
        let rhs = apply(InvolutionKind::Iota, &apply(InvolutionKind::Im, a));
        t.record(lhs == rhs, || format!("a = {a}"));
    }
    report.push(t.finish());
    report
}

/// The generator identities for `kappa_IM`:
/// (a) `T_i -> T_i - v + v^-1`, (b) `theta_x -> theta_{-x}`,
/// (c) `t_i -> -t_i + v^2 - 1`, (d) `-q t_i^{-1} = -t_i + v^2 - 1`.
pub fn check_theorem(d: &Arc<RootDatum>, weights: &[Weight]) -> Report {
    let kim = InvolutionKind::KappaIm;
    let mut report = Report::new("theorem");
    let one = HeckeElt::unit(d);
    let target_t = |i: usize| -> HeckeElt {
        let t = HeckeElt::gen_small_t(d, i).expect("valid index");
        &(&-&t + &HeckeElt::scalar(d, LaurentInt::q())) - &one
    };

    let mut a = Tally::new("(a) kim(T_i) = T_i - v + v^-1");
    let mut c = Tally::new("(c) kim(t_i) = -t_i + v^2 - 1");
    let mut dd = Tally::new("(d) -q t_i^-1 = -t_i + v^2 - 1");
    for i in 0..d.rank() {
        let t = HeckeElt::gen_t(d, i).expect("valid index");
        let lhs = apply(kim, &t);
        let rhs = &t - &HeckeElt::scalar(d, LaurentInt::v_minus_vinv());
        a.record(lhs == rhs, || format!("i = {i}: kim(T_i) = {lhs}"));

        let small = HeckeElt::gen_small_t(d, i).expect("valid index");
        let lhs = apply(kim, &small);
        let want = target_t(i);
        c.record(lhs == want, || format!("i = {i}: kim(t_i) = {lhs}"));

        // t_i^{-1} = v^-1 T_i^{-1}
        let s = WeylElt::simple(d, i).expect("valid index");
        let t_inv = inv_tw(d, &s).scale(&LaurentInt::v_pow(-1));
        let lhs = t_inv.scale(&-&LaurentInt::q());
        dd.record(lhs == want, || format!("i = {i}: -q t_i^-1 = {lhs}"));
    }

    let mut b = Tally::new("(b) kim(theta_x) = theta_{-x}");
    for x in weights {
        let th = HeckeElt::gen_theta(d, x.clone()).expect("rank checked");
        let lhs = apply(kim, &th);
        let rhs = HeckeElt::gen_theta(d, -x).expect("rank checked");
        b.record(lhs == rhs, || format!("x = {x}: kim(theta_x) = {lhs}"));
    }

    let mut unit = Tally::new("kim(1) = 1");
    unit.record(apply(kim, &one) == one, || format!("kim(1) = {}", apply(kim, &one)));

    report.push(a.finish());
    report.push(b.finish());
    report.push(c.finish());
    report.push(dd.finish());
    report.push(unit.finish());
    report
}

/// For every `w` in `W`, compares the closed form `IM(T_w)` with the product
/// of `IM(T_s)` along the canonical reduced word and along a second reduced
/// word (a different one whenever `w` has more than one).
pub fn check_reduced_words<R: Rng>(d: &Arc<RootDatum>, rng: &mut R) -> Report {
    let mut report = Report::new("reduced-words");
    let mut t = Tally::new("IM(T_w) independent of reduced word");
    let mut distinct = 0usize;
    for w in enumerate(d) {
        let canonical = w.word().to_vec();
        let mut other = canonical.clone();
        for _ in 0..32 {
            other = w.random_reduced_word(d, rng);
            if other != canonical {
                break;
            }
        }
        if other != canonical {
            distinct += 1;
        }
        let closed = im_tw(d, &w);
        let a = im_tw_from_word(d, &canonical);
        let b = im_tw_from_word(d, &other);
        t.record(closed == a && a == b, || format!("w = {w}, second word {other:?}"));
    }
    report.push(t.finish());
    let mut t = Tally::new("elements with a second reduced word");
    t.record(distinct > 0 || d.rank() == 1, || "no element had two reduced words".into());
    let mut check = t.finish();
    check.count = distinct;
    report.push(check);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn datum(t: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::from_type(t).unwrap())
    }

    #[test]
    fn spec_examples() {
        let d = datum("A1");
        let th = HeckeElt::gen_theta(&d, Weight(vec![1])).unwrap();
        assert_eq!(apply(InvolutionKind::Im, &th), HeckeElt::gen_theta(&d, Weight(vec![-1])).unwrap());
        let t = HeckeElt::gen_t(&d, 0).unwrap();
        let expect = &-&t + &HeckeElt::scalar(&d, LaurentInt::v_minus_vinv());
        assert_eq!(apply(InvolutionKind::Im, &t), expect);
        let v1 = HeckeElt::scalar(&d, LaurentInt::v());
        assert_eq!(apply(InvolutionKind::Iota, &v1), HeckeElt::scalar(&d, -&LaurentInt::v()));
        let small = HeckeElt::gen_small_t(&d, 0).unwrap();
        assert_eq!(apply(InvolutionKind::Iota, &small), small);
        let expect = &t - &HeckeElt::scalar(&d, LaurentInt::v_minus_vinv());
        assert_eq!(apply(InvolutionKind::KappaIm, &t), expect);
        let one = HeckeElt::unit(&d);
        assert_eq!(apply(InvolutionKind::KappaIm, &one), one);
    }

    #[test]
    fn parse_kind() {
        assert_eq!("kim".parse::<InvolutionKind>().unwrap(), InvolutionKind::KappaIm);
        assert_eq!("IM".parse::<InvolutionKind>().unwrap(), InvolutionKind::Im);
        assert!("bar".parse::<InvolutionKind>().is_err());
    }

    #[test]
    fn theorem_small_types() {
        for ty in ["A1", "A2", "G2"] {
            let d = datum(ty);
            let ws: Vec<Weight> = vec![Weight::zero(d.rank()), d.rho().clone(), d.simple_roots()[0].clone()];
            let r = check_theorem(&d, &ws);
            assert!(r.all_pass(), "{ty}: {r:?}");
        }
    }

    #[test]
    fn homomorphism_a1_pair() {
        let d = datum("A1");
        let t = HeckeElt::gen_t(&d, 0).unwrap();
        let th = HeckeElt::gen_theta(&d, Weight(vec![1])).unwrap();
        let one = HeckeElt::unit(&d);
        for kind in InvolutionKind::ALL {
            let r = check_homomorphism(kind, &[(t.clone(), th.clone()), (one.clone(), t.clone())], &[LaurentInt::v()]);
            assert!(r.all_pass(), "{kind}: {r:?}");
        }
    }

    #[test]
    fn random_samples_a2() {
        let d = datum("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pairs: Vec<_> = (0..30).map(|_| (random_element(&d, &mut rng), random_element(&d, &mut rng))).collect();
        let scalars: Vec<_> = (0..10).map(|_| random_scalar(&mut rng)).collect();
        for kind in InvolutionKind::ALL {
            assert!(check_homomorphism(kind, &pairs, &scalars).all_pass());
        }
        let elts: Vec<_> = pairs.iter().map(|p| p.0.clone()).collect();
        assert!(check_involutive(&elts).all_pass());
    }

    #[test]
    fn reduced_words_rank_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ty in ["A2", "B2"] {
            let r = check_reduced_words(&datum(ty), &mut rng);
            assert!(r.all_pass(), "{r:?}");
            assert!(r.checks[1].count > 0);
        }
    }

    #[test]
    fn random_elements_are_small() {
        let d = datum("B2");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_element(&d, &mut rng);
            assert!(!a.is_empty() && a.len() <= 3);
            for (x, _, c) in a.terms() {
                assert!(x.0.iter().all(|k| (-2..=2).contains(k)));
                assert!(c.min_exp().unwrap() >= -2 && c.max_exp().unwrap() <= 2);
            }
        }
    }
}
