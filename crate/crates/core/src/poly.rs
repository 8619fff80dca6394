//! Exact coefficient rings: `Z[v, v^-1]` and the group algebra of the weight
//! lattice over it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::root_data::{RootDatum, Weight};

/// A Laurent polynomial in `v` with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentInt {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// `v - v^-1`, the coefficient in the quadratic relation.
    pub fn v_minus_vinv() -> Self {
        let mut p = Self::v();
        p.add_term(-1, BigInt::from(-1));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub(crate) fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub(crate) fn add_assign_ref(&mut self, rhs: &LaurentInt) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub(crate) fn add_scaled(&mut self, rhs: &LaurentInt, scale: &LaurentInt) {
        for (e1, c1) in &scale.terms {
            for (e2, c2) in &rhs.terms {
                self.add_term(e1 + e2, c1 * c2);
            }
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentInt { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `p(v) -> p(-v)`: the coefficient of `v^k` picks up `(-1)^k`.
    pub fn eval_negate_v(&self) -> Self {
        LaurentInt {
            terms: self.terms.iter().map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { -c })).collect(),
        }
    }

    /// `p(v) -> p(v^-1)`.
    pub fn invert_v(&self) -> Self {
        LaurentInt { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Keeps only exponents in `lo..=hi`.
    pub fn truncate(&self, lo: i32, hi: i32) -> Self {
        LaurentInt { terms: self.terms.range(lo..=hi).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Coefficient map with stringified exponents, e.g. `{"1": 1, "-1": -1}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (e, c) in &self.terms {
            let val = match c.to_i64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(c.to_string()),
            };
            m.insert(e.to_string(), val);
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(j: &serde_json::Value) -> Option<Self> {
        let mut p = Self::zero();
        for (k, val) in j.as_object()? {
            let e: i32 = k.parse().ok()?;
            let c: BigInt = match val {
                serde_json::Value::Number(n) => BigInt::from(n.as_i64()?),
                serde_json::Value::String(s) => s.parse().ok()?,
                _ => return None,
            };
            p.add_term(e, c);
        }
        Some(p)
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        LaurentInt::constant(c)
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = LaurentInt::zero();
        out.add_scaled(rhs, self);
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, abs: &BigInt, e: i32) -> fmt::Result {
    let vpart = match e {
        0 => String::new(),
        1 => "v".to_string(),
        _ => format!("v^{e}"),
    };
    if vpart.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{vpart}")
    } else {
        write!(f, "{abs}*{vpart}")
    }
}

/// Descending exponents: `v - v^-1`, `-3*v^2 + 1`.
impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &c.abs(), *e)?;
        }
        Ok(())
    }
}

/// Sparse element of `Z[v, v^-1][X]`, written `sum_x c_x(v) theta_x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeAlg {
    terms: BTreeMap<Weight, LaurentInt>,
}

impl LatticeAlg {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn theta(x: Weight) -> Self {
        let mut a = Self::zero();
        a.add_term(x, LaurentInt::one());
        a
    }

    pub fn one(rank: usize) -> Self {
        Self::theta(Weight::zero(rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &LaurentInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &Weight) -> LaurentInt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: Weight, c: LaurentInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(x.clone()).or_default();
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero();
        for (x, p) in &self.terms {
            out.add_term(x.clone(), p * c);
        }
        out
    }
}

impl Add for &LatticeAlg {
    type Output = LatticeAlg;
    fn add(self, rhs: &LatticeAlg) -> LatticeAlg {
        let mut out = self.clone();
        for (x, c) in &rhs.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LatticeAlg {
    type Output = LatticeAlg;
    fn sub(self, rhs: &LatticeAlg) -> LatticeAlg {
        let mut out = self.clone();
        for (x, c) in &rhs.terms {
            out.add_term(x.clone(), -c);
        }
        out
    }
}

/// Multiplication rule `theta_x theta_y = theta_{x+y}`.
impl Mul for &LatticeAlg {
    type Output = LatticeAlg;
    fn mul(self, rhs: &LatticeAlg) -> LatticeAlg {
        let mut out = LatticeAlg::zero();
        for (x, a) in &self.terms {
            for (y, b) in &rhs.terms {
                out.add_term(x + y, a * b);
            }
        }
        out
    }
}

impl fmt::Display for LatticeAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (x, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "th{x}*({c})")?;
        }
        Ok(())
    }
}

/// The quotient `(theta_x - theta_{s_i x}) / (1 - theta_{-alpha_i})` as an
/// explicit geometric sum.
///
/// With `n = <x, alpha_i^vee>` this is `sum_{k=0}^{n-1} theta_{x - k alpha_i}`
/// for `n > 0`, zero for `n = 0` and `-sum_{k=1}^{-n} theta_{x + k alpha_i}`
/// for `n < 0`.
pub fn bl_sum(d: &RootDatum, x: &Weight, i: usize) -> Result<LatticeAlg> {
    let n = d.pairing(x, i)?;
    let alpha = d.simple_root(i)?;
    let mut out = LatticeAlg::zero();
    for (x, c) in bl_terms(x, alpha, n) {
        out.add_term(x, LaurentInt::constant(c));
    }
    Ok(out)
}

/// Terms of [`bl_sum`] with `n` and `alpha` already resolved.
pub(crate) fn bl_terms(x: &Weight, alpha: &Weight, n: i64) -> Vec<(Weight, i64)> {
    if n > 0 {
        (0..n).map(|k| (x - &alpha.scaled(k), 1)).collect()
    } else {
        (1..=-n).map(|k| (x + &alpha.scaled(k), -1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(t: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(t.iter().copied())
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn negate_v_examples() {
        assert_eq!(LaurentInt::v_minus_vinv().eval_negate_v(), lp(&[(1, -1), (-1, 1)]));
        assert_eq!(LaurentInt::q().eval_negate_v(), LaurentInt::q());
        assert_eq!(lp(&[(0, 3), (3, 1)]).eval_negate_v(), lp(&[(0, 3), (3, -1)]));
    }

    #[test]
    fn zeros_are_pruned() {
        let a = lp(&[(1, 2), (0, 1)]);
        let b = lp(&[(1, -2)]);
        let s = &a + &b;
        assert_eq!(s, LaurentInt::one());
        assert_eq!(s.len(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(LaurentInt::v_minus_vinv().to_string(), "v - v^-1");
        assert_eq!(lp(&[(2, -3), (0, 1)]).to_string(), "-3*v^2 + 1");
        assert_eq!(LaurentInt::zero().to_string(), "0");
        assert_eq!(LaurentInt::v_pow(-1).to_string(), "v^-1");
    }

    #[test]
    fn json_roundtrip_with_bigint() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = &LaurentInt::monomial(big, 4) + &LaurentInt::v_minus_vinv();
        let j = p.to_json();
        assert_eq!(j["1"], 1);
        assert_eq!(LaurentInt::from_json(&j).unwrap(), p);
    }

    #[test]
    fn bl_examples() {
        let a1 = RootDatum::from_type("A1").unwrap();
        assert_eq!(bl_sum(&a1, &w(&[1]), 0).unwrap(), LatticeAlg::theta(w(&[1])));
        let expect = &LatticeAlg::theta(w(&[2])) + &LatticeAlg::one(1);
        assert_eq!(bl_sum(&a1, &w(&[2]), 0).unwrap(), expect);
        assert!(bl_sum(&a1, &w(&[0]), 0).unwrap().is_zero());
        let a2 = RootDatum::from_type("A2").unwrap();
        // omega_2 is fixed by s_1
        assert!(bl_sum(&a2, &w(&[0, 1]), 0).unwrap().is_zero());
        assert!(bl_sum(&a2, &w(&[0, 1]), 2).is_err());
    }

    fn one_minus_theta_neg_alpha(d: &RootDatum, i: usize) -> LatticeAlg {
        &LatticeAlg::one(d.rank()) - &LatticeAlg::theta(-d.simple_root(i).unwrap())
    }

    #[test]
    fn bl_times_denominator_is_numerator() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(200);
        for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1"] {
            let d = RootDatum::from_type(t).unwrap();
            for _ in 0..200 {
                let x = Weight((0..d.rank()).map(|_| rng.gen_range(-4..=4)).collect());
                for i in 0..d.rank() {
                    let b = bl_sum(&d, &x, i).unwrap();
                    let lhs = &b * &one_minus_theta_neg_alpha(&d, i);
                    let rhs = &LatticeAlg::theta(x.clone()) - &LatticeAlg::theta(d.reflect(&x, i).unwrap());
                    assert_eq!(lhs, rhs, "{t} {x} {i}");
                    // antisymmetry under the reflection
                    let bs = bl_sum(&d, &d.reflect(&x, i).unwrap(), i).unwrap();
                    assert_eq!(&b + &bs, LatticeAlg::zero(), "{t} {x} {i}");
                }
            }
        }
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentInt> {
        prop::collection::vec((-3i32..=3, -5i64..=5), 0..4).prop_map(LaurentInt::from_terms)
    }

    fn arb_lattice() -> impl Strategy<Value = LatticeAlg> {
        prop::collection::vec(((-2i64..=2, -2i64..=2), arb_laurent()), 0..3).prop_map(|t| {
            let mut a = LatticeAlg::zero();
            for ((x, y), c) in t {
                a.add_term(Weight(vec![x, y]), c);
            }
            a
        })
    }

    proptest! {
        #[test]
        fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &LaurentInt::one(), a.clone());
            prop_assert_eq!((&a * &b).eval_negate_v(), &a.eval_negate_v() * &b.eval_negate_v());
            prop_assert_eq!(a.eval_negate_v().eval_negate_v(), a.clone());
        }

        #[test]
        fn lattice_ring_axioms(a in arb_lattice(), b in arb_lattice(), c in arb_lattice()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LatticeAlg::one(2), a.clone());
        }
    }
}
