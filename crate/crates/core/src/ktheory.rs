//! Formal K-theory classes on the two Steinberg-type varieties and their
//! dictionaries into the affine Hecke algebra.
//!
//! The `Z` side is spanned by diagonal classes `DiagN(x)` and the classes
//! `Y(i)` / `YB(i)` of the two line-bundle twists of `O_{Y_alpha}`; the `CZ`
//! side by `DiagG(x)` and `W(i)`. Both twists of `O_{Y_alpha}` expand to the
//! same element of the Hecke algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::involutions::{apply, InvolutionKind};
use crate::poly::LaurentInt;
use crate::report::{Report, Tally};
use crate::root_data::{RootDatum, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Z,
    CZ,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Z => "Z",
            Side::CZ => "CZ",
        }
    }
}

/// Which line-bundle twist of `O_{Y_alpha}`: `A` is `(-rho, rho - alpha)`,
/// `B` is `(rho - alpha, -rho)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YTwist {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    DiagN(Weight),
    Y(usize, YTwist),
    DiagG(Weight),
    W(usize),
}

impl Atom {
    pub fn side(&self) -> Side {
        match self {
            Atom::DiagN(_) | Atom::Y(..) => Side::Z,
            Atom::DiagG(_) | Atom::W(_) => Side::CZ,
        }
    }

    fn check(&self, d: &RootDatum) -> Result<()> {
        match self {
            Atom::DiagN(x) | Atom::DiagG(x) => d.check_weight(x),
            Atom::Y(i, _) | Atom::W(i) => d.check_index(*i),
        }
    }
}

fn fmt_coords(x: &Weight) -> String {
    x.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// `DiagN(1,0)`, `Y(1)`, `YB(1)`, `DiagG(-1,0)`, `W(1)`; root indices are 1-based.
impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::DiagN(x) => write!(f, "DiagN({})", fmt_coords(x)),
            Atom::Y(i, YTwist::A) => write!(f, "Y({})", i + 1),
            Atom::Y(i, YTwist::B) => write!(f, "YB({})", i + 1),
            Atom::DiagG(x) => write!(f, "DiagG({})", fmt_coords(x)),
            Atom::W(i) => write!(f, "W({})", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    side: Side,
    atoms: BTreeMap<Atom, LaurentInt>,
}

impl KClass {
    pub fn zero(side: Side) -> Self {
        KClass { side, atoms: BTreeMap::new() }
    }

    pub fn atom(a: Atom) -> Self {
        let mut c = KClass::zero(a.side());
        c.atoms.insert(a, LaurentInt::one());
        c
    }

    /// Fails with [`Error::MixedSide`] if the atoms do not all live on `side`.
    pub fn from_atoms(side: Side, atoms: impl IntoIterator<Item = (Atom, LaurentInt)>) -> Result<Self> {
        let mut c = KClass::zero(side);
        for (a, p) in atoms {
            c.add_atom(a, p)?;
        }
        Ok(c)
    }

    pub fn add_atom(&mut self, a: Atom, p: LaurentInt) -> Result<()> {
        if a.side() != self.side {
            return Err(Error::MixedSide);
        }
        let slot = self.atoms.entry(a).or_default();
        slot.add_assign_ref(&p);
        if slot.is_zero() {
            self.atoms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &KClass) -> Result<KClass> {
        let mut out = self.clone();
        if other.side != self.side && !other.is_zero() {
            return Err(Error::MixedSide);
        }
        for (a, p) in &other.atoms {
            out.add_atom(a.clone(), p.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, p: &LaurentInt) -> KClass {
        let atoms = self.atoms.iter().map(|(a, c)| (a.clone(), c * p)).filter(|(_, c)| !c.is_zero()).collect();
        KClass { side: self.side, atoms }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, &LaurentInt)> {
        self.atoms.iter()
    }

    /// `{"side": "Z", "atoms": {"Y(1)": {"-1": -1}, ...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let atoms: serde_json::Map<String, serde_json::Value> =
            self.atoms.iter().map(|(a, c)| (a.to_string(), c.to_json())).collect();
        serde_json::json!({"side": self.side.name(), "atoms": atoms})
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.atoms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{a}")?;
            } else {
                write!(f, "({c})*{a}")?;
            }
        }
        Ok(())
    }
}

fn atom_image(d: &Arc<RootDatum>, a: &Atom) -> Result<HeckeElt> {
    a.check(d)?;
    let v = LaurentInt::v();
    Ok(match a {
        Atom::DiagN(x) | Atom::DiagG(x) => HeckeElt::gen_theta(d, x.clone())?,
        Atom::Y(i, _) => &HeckeElt::gen_t(d, *i)?.scale(&-&v) - &HeckeElt::unit(d),
        Atom::W(i) => &HeckeElt::gen_t(d, *i)?.scale(&-&v) + &HeckeElt::scalar(d, LaurentInt::q()),
    })
}

/// The dictionary into the Hecke algebra:
/// `DiagN(x), DiagG(x) -> theta_x`, `Y(i) -> -v T_i - 1`, `W(i) -> -v T_i + v^2`.
pub fn expand(d: &Arc<RootDatum>, c: &KClass) -> Result<HeckeElt> {
    let mut out = HeckeElt::zero(d);
    for (a, p) in &c.atoms {
        out = &out + &atom_image(d, a)?.scale(p);
    }
    Ok(out)
}

/// Cohomological shift `[m]` and internal twist `<n>`: multiplies by
/// `(-1)^m v^n`.
pub fn twist(c: &KClass, m: i32, n: i32) -> KClass {
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    c.scale(&LaurentInt::monomial(sign, n))
}

/// The class-level duality `Z -> CZ`: `DiagN(x) -> DiagG(-x)`,
/// `Y(i) -> -W(i)` (both twists), coefficients under `v -> -v`.
pub fn kappa_im_on_classes(c: &KClass) -> Result<KClass> {
    if c.side != Side::Z {
        return Err(Error::WrongSide { expected: "Z" });
    }
    let mut out = KClass::zero(Side::CZ);
    for (a, p) in &c.atoms {
        let p = p.eval_negate_v();
        match a {
            Atom::DiagN(x) => out.add_atom(Atom::DiagG(-x), p)?,
            Atom::Y(i, _) => out.add_atom(Atom::W(*i), -&p)?,
            _ => unreachable!("side checked"),
        }
    }
    Ok(out)
}

/// The inverse correspondence `CZ -> Z`: `DiagG(x) -> DiagN(-x)`,
/// `W(i) -> -YB(i)`, coefficients under `v -> -v`.
pub fn kappa_im_inverse(c: &KClass) -> Result<KClass> {
    if c.side != Side::CZ {
        return Err(Error::WrongSide { expected: "CZ" });
    }
    let mut out = KClass::zero(Side::Z);
    for (a, p) in &c.atoms {
        let p = p.eval_negate_v();
        match a {
            Atom::DiagG(x) => out.add_atom(Atom::DiagN(-x), p)?,
            Atom::W(i) => out.add_atom(Atom::Y(*i, YTwist::B), -&p)?,
            _ => unreachable!("side checked"),
        }
    }
    Ok(out)
}

/// Dictionary image of `T_i`: `-v^-1 Y(i) - v^-1 DiagN(0)` on `Z`,
/// `-v^-1 W(i) + v DiagG(0)` on `CZ`.
pub fn class_of_t(d: &RootDatum, i: usize, side: Side) -> Result<KClass> {
    d.check_index(i)?;
    let vinv = LaurentInt::v_pow(-1);
    let zero = Weight::zero(d.rank());
    match side {
        Side::Z => KClass::from_atoms(side, [(Atom::Y(i, YTwist::A), -&vinv), (Atom::DiagN(zero), -&vinv)]),
        Side::CZ => KClass::from_atoms(side, [(Atom::W(i), -&vinv), (Atom::DiagG(zero), LaurentInt::v())]),
    }
}

/// Dictionary image of `theta_x`.
pub fn class_of_theta(d: &RootDatum, x: &Weight, side: Side) -> Result<KClass> {
    d.check_weight(x)?;
    Ok(KClass::atom(match side {
        Side::Z => Atom::DiagN(x.clone()),
        Side::CZ => Atom::DiagG(x.clone()),
    }))
}

/// Replays the class computation of `kappa_IM` on generators: each
/// generator's `Z`-class is pushed through [`kappa_im_on_classes`], expanded
/// on the `CZ` side, and compared with the closed form and with `iota . IM`.
pub fn replay(d: &Arc<RootDatum>, weights: &[Weight]) -> Report {
    let mut report = Report::new("kclass");
    let kim = InvolutionKind::KappaIm;
    let expanded = |c: &KClass| expand(d, c).expect("dictionary classes are valid");

    let mut dict = Tally::new("dictionary round-trip");
    for i in 0..d.rank() {
        let t = HeckeElt::gen_t(d, i).expect("valid index");
        for side in [Side::Z, Side::CZ] {
            let e = expanded(&class_of_t(d, i, side).expect("valid index"));
            dict.record(e == t, || format!("T_{} on {}: {e}", i + 1, side.name()));
        }
    }
    for x in weights {
        let th = HeckeElt::gen_theta(d, x.clone()).expect("rank checked");
        for side in [Side::Z, Side::CZ] {
            let e = expanded(&class_of_theta(d, x, side).expect("rank checked"));
            dict.record(e == th, || format!("theta_{x} on {}: {e}", side.name()));
        }
    }
    report.push(dict.finish());

    let mut tt = Tally::new("T_i: class path = T_i - v + v^-1 = kim(T_i)");
    let mut small = Tally::new("t_i: class path = -t_i + v^2 - 1 = kim(t_i)");
    for i in 0..d.rank() {
        let t = HeckeElt::gen_t(d, i).expect("valid index");
        let cls = class_of_t(d, i, Side::Z).expect("valid index");
        let path = expanded(&kappa_im_on_classes(&cls).expect("Z side"));
        let closed = &t - &HeckeElt::scalar(d, LaurentInt::v_minus_vinv());
        let alg = apply(kim, &t);
        tt.record(path == closed && path == alg, || format!("i = {}: class path {path}, algebra path {alg}", i + 1));

        let st = t.scale(&LaurentInt::v());
        let path = expanded(&kappa_im_on_classes(&cls.scale(&LaurentInt::v())).expect("Z side"));
        let closed = &(&st.scale(&LaurentInt::constant(-1)) + &HeckeElt::scalar(d, LaurentInt::q())) - &HeckeElt::unit(d);
        let alg = apply(kim, &st);
        small.record(path == closed && path == alg, || format!("i = {}: class path {path}, algebra path {alg}", i + 1));
    }
    report.push(tt.finish());
    report.push(small.finish());

    let mut th = Tally::new("theta_x: class path = theta_{-x} = kim(theta_x)");
    for x in weights {
        let cls = class_of_theta(d, x, Side::Z).expect("rank checked");
        let path = expanded(&kappa_im_on_classes(&cls).expect("Z side"));
        let alg = apply(kim, &HeckeElt::gen_theta(d, x.clone()).expect("rank checked"));
        let closed = HeckeElt::gen_theta(d, -x).expect("rank checked");
        th.record(path == closed && path == alg, || format!("x = {x}: class path {path}, algebra path {alg}"));
    }
    report.push(th.finish());

    let mut inv = Tally::new("inverse(kappa(c)) = c on atoms");
    let mut atoms: Vec<Atom> = (0..d.rank()).map(|i| Atom::Y(i, YTwist::B)).collect();
    atoms.extend(weights.iter().map(|x| Atom::DiagN(x.clone())));
    for a in atoms {
        let c = KClass::atom(a.clone()).scale(&LaurentInt::from_terms([(1, 2), (-1, 1)]));
        let back = kappa_im_inverse(&kappa_im_on_classes(&c).expect("Z side")).expect("CZ side");
        inv.record(back == c, || format!("{a}: {back}"));
    }
    report.push(inv.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(t: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::from_type(t).unwrap())
    }

    #[test]
    fn atom_expansions() {
        let d = datum("A1");
        let z = Weight::zero(1);
        assert_eq!(expand(&d, &KClass::atom(Atom::DiagN(z))).unwrap(), HeckeElt::unit(&d));
        let t = HeckeElt::gen_t(&d, 0).unwrap();
        let y = expand(&d, &KClass::atom(Atom::Y(0, YTwist::A))).unwrap();
        assert_eq!(y, &t.scale(&-&LaurentInt::v()) - &HeckeElt::unit(&d));
        assert_eq!(expand(&d, &KClass::atom(Atom::Y(0, YTwist::B))).unwrap(), y);
        let w = expand(&d, &KClass::atom(Atom::W(0))).unwrap();
        assert_eq!(w, &t.scale(&-&LaurentInt::v()) + &HeckeElt::scalar(&d, LaurentInt::q()));
    }

    #[test]
    fn sides_do_not_mix() {
        let mut c = KClass::atom(Atom::W(0));
        assert_eq!(c.add_atom(Atom::Y(0, YTwist::A), LaurentInt::one()), Err(Error::MixedSide));
        assert!(kappa_im_on_classes(&c).is_err());
        assert!(kappa_im_inverse(&KClass::atom(Atom::W(0))).is_ok());
    }

    #[test]
    fn twists() {
        let c = KClass::atom(Atom::Y(0, YTwist::A)).scale(&LaurentInt::from_terms([(0, 2), (1, -1)]));
        assert_eq!(twist(&c, 1, 0), c.scale(&LaurentInt::constant(-1)));
        assert_eq!(twist(&c, 0, 1), c.scale(&LaurentInt::v()));
        assert_eq!(twist(&twist(&c, 1, 1), 1, -1), c);
        assert_eq!(twist(&c, -3, 0), twist(&c, 1, 0));
    }

    #[test]
    fn kappa_on_atoms() {
        let x = Weight(vec![1, 0]);
        let k = kappa_im_on_classes(&KClass::atom(Atom::DiagN(x.clone()))).unwrap();
        assert_eq!(k, KClass::atom(Atom::DiagG(-&x)));
        let k = kappa_im_on_classes(&KClass::atom(Atom::Y(1, YTwist::B))).unwrap();
        assert_eq!(k, KClass::atom(Atom::W(1)).scale(&LaurentInt::constant(-1)));
        let unit = KClass::atom(Atom::DiagN(Weight::zero(2)));
        assert_eq!(kappa_im_on_classes(&unit).unwrap(), KClass::atom(Atom::DiagG(Weight::zero(2))));
        let c = KClass::atom(Atom::Y(0, YTwist::A)).scale(&LaurentInt::v());
        let k = kappa_im_on_classes(&c).unwrap();
        assert_eq!(k, KClass::atom(Atom::W(0)).scale(&LaurentInt::v()));
    }

    #[test]
    fn class_computation_for_t() {
        let d = datum("A1");
        let c = class_of_t(&d, 0, Side::Z).unwrap();
        let k = kappa_im_on_classes(&c).unwrap();
        let vinv = LaurentInt::v_pow(-1);
        let want = KClass::from_atoms(Side::CZ, [(Atom::W(0), -&vinv), (Atom::DiagG(Weight::zero(1)), vinv)]).unwrap();
        assert_eq!(k, want);
    }

    #[test]
    fn replay_small_types() {
        for ty in ["A1", "A2", "B2", "G2"] {
            let d = datum(ty);
            let ws = vec![Weight::zero(d.rank()), d.rho().clone(), -d.rho()];
            let r = replay(&d, &ws);
            assert!(r.all_pass(), "{ty}: {r:?}");
        }
    }

    #[test]
    fn text_and_json() {
        let c = class_of_t(&RootDatum::from_type("A2").unwrap(), 0, Side::Z).unwrap();
        assert_eq!(c.to_string(), "(-v^-1)*DiagN(0,0) + (-v^-1)*Y(1)");
        assert_eq!(c.to_json()["atoms"]["Y(1)"], serde_json::json!({"-1": -1}));
        assert_eq!(Atom::Y(2, YTwist::B).to_string(), "YB(3)");
    }
}
