//! Text expressions for Hecke algebra elements and K-classes.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := 'v' | int | 'T[s' idx ']' | 'th[' weight ']' | '(' expr ')'
//!         | 'DiagN(' weight ')' | 'DiagG(' weight ')'
//!         | 'Y(' idx ')' | 'YB(' idx ')' | 'W(' idx ')'
//! weight := int (',' int)* | 'rho'
//! ```
//!
//! Indices are 1-based. Negative powers are allowed on `v`, `T[s i]` and
//! `th[..]`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hecke::{inv_tw, HeckeElt};
use crate::ktheory::{Atom, KClass, YTwist};
use crate::poly::LaurentInt;
use crate::root_data::{RootDatum, Weight};
use crate::weyl::WeylElt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    Coords(Vec<i64>),
    Rho,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KAtomKind {
    DiagN,
    DiagG,
    Y,
    YB,
    W,
}

/// Equality ignores source positions.
#[derive(Clone, Debug, Eq)]
pub enum Expr {
    V,
    Int(BigInt),
    /// 0-based simple reflection index.
    T(usize),
    Theta(WeightSpec),
    KWeight(KAtomKind, WeightSpec),
    KIndex(KAtomKind, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Base, exponent, position of `^`.
    Pow(Box<Expr>, i64, usize),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        use Expr::*;
        match (self, other) {
            (V, V) => true,
            (Int(a), Int(b)) => a == b,
            (T(a), T(b)) => a == b,
            (Theta(a), Theta(b)) => a == b,
            (KWeight(k, a), KWeight(l, b)) => k == l && a == b,
            (KIndex(k, a), KIndex(l, b)) => k == l && a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) => a == c && b == d,
            (Pow(a, e, _), Pow(b, f, _)) => a == b && e == f,
            _ => false,
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let n: i64 = self.unsigned()?.try_into().map_err(|_| syntax(start, "integer too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.small_int()?;
        if n < 1 {
            return Err(syntax(start, "indices are 1-based"));
        }
        Ok(n as usize - 1)
    }

    fn weight(&mut self) -> Result<WeightSpec> {
        if self.keyword("rho") {
            return Ok(WeightSpec::Rho);
        }
        let mut coords = vec![self.small_int()?];
        while self.eat(b',') {
            coords.push(self.small_int()?);
        }
        Ok(WeightSpec::Coords(coords))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat(b'-') { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        self.skip_ws();
        let at = self.pos;
        if self.eat(b'^') {
            let e = self.small_int()?;
            return Ok(Expr::Pow(Box::new(base), e, at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if self.keyword("T[s") {
            let i = self.index()?;
            self.expect(b']')?;
            return Ok(Expr::T(i));
        }
        if self.keyword("th[") {
            let w = self.weight()?;
            self.expect(b']')?;
            return Ok(Expr::Theta(w));
        }
        for (kw, kind) in [("DiagN(", KAtomKind::DiagN), ("DiagG(", KAtomKind::DiagG)] {
            if self.keyword(kw) {
                let w = self.weight()?;
                self.expect(b')')?;
                return Ok(Expr::KWeight(kind, w));
            }
        }
        for (kw, kind) in [("YB(", KAtomKind::YB), ("Y(", KAtomKind::Y), ("W(", KAtomKind::W)] {
            if self.keyword(kw) {
                let i = self.index()?;
                self.expect(b')')?;
                return Ok(Expr::KIndex(kind, i));
            }
        }
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                Ok(Expr::V)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.unsigned()?)),
            Some(c) => Err(syntax(start, format!("unexpected `{}`", c as char))),
            None => Err(syntax(start, "unexpected end of input")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(syntax(p.pos, "trailing input"));
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 0,
        Expr::Mul(..) => 1,
        Expr::Pow(..) => 2,
        _ => 3,
    }
}

fn fmt_weight(w: &WeightSpec) -> String {
    match w {
        WeightSpec::Rho => "rho".into(),
        WeightSpec::Coords(c) => c.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
    }
}

fn paren(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::V => write!(f, "v"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::T(i) => write!(f, "T[s{}]", i + 1),
            Expr::Theta(w) => write!(f, "th[{}]", fmt_weight(w)),
            Expr::KWeight(k, w) => write!(f, "{k:?}({})", fmt_weight(w)),
            Expr::KIndex(k, i) => write!(f, "{k:?}({})", i + 1),
            Expr::Neg(a) => write!(f, "-{}", paren(a, 1)),
            Expr::Add(a, b) => write!(f, "{a} + {}", paren(b, 1)),
            Expr::Sub(a, b) => write!(f, "{a} - {}", paren(b, 1)),
            Expr::Mul(a, b) => write!(f, "{}*{}", paren(a, 1), paren(b, 2)),
            Expr::Pow(a, e, _) => write!(f, "{}^{e}", paren(a, 3)),
        }
    }
}

fn resolve_weight(d: &RootDatum, w: &WeightSpec) -> Result<Weight> {
    let x = match w {
        WeightSpec::Rho => d.rho().clone(),
        WeightSpec::Coords(c) => Weight(c.clone()),
    };
    d.check_weight(&x)?;
    Ok(x)
}

fn hecke_pow(base: &HeckeElt, e: u64) -> HeckeElt {
    let mut out = HeckeElt::unit(base.datum());
    for _ in 0..e {
        out = &out * base;
    }
    out
}

/// Evaluates to normal form in the affine Hecke algebra of `d`.
pub fn eval(d: &Arc<RootDatum>, e: &Expr) -> Result<HeckeElt> {
    Ok(match e {
        Expr::V => HeckeElt::scalar(d, LaurentInt::v()),
        Expr::Int(n) => HeckeElt::scalar(d, LaurentInt::monomial(n.clone(), 0)),
        Expr::T(i) => HeckeElt::gen_t(d, *i)?,
        Expr::Theta(w) => HeckeElt::gen_theta(d, resolve_weight(d, w)?)?,
        Expr::KWeight(..) | Expr::KIndex(..) => {
            return Err(Error::InvalidOption(format!("K-class atom `{e}` in a Hecke expression")))
        }
        Expr::Neg(a) => -&eval(d, a)?,
        Expr::Add(a, b) => eval(d, a)?.checked_add(&eval(d, b)?)?,
        Expr::Sub(a, b) => eval(d, a)?.checked_sub(&eval(d, b)?)?,
        Expr::Mul(a, b) => eval(d, a)?.checked_mul(&eval(d, b)?)?,
        Expr::Pow(a, k, at) => {
            let n = k.unsigned_abs();
            if *k >= 0 {
                return Ok(hecke_pow(&eval(d, a)?, n));
            }
            match &**a {
                Expr::V => HeckeElt::scalar(d, LaurentInt::v_pow(*k as i32)),
                Expr::T(i) => hecke_pow(&inv_tw(d, &WeylElt::simple(d, *i)?), n),
                Expr::Theta(w) => HeckeElt::gen_theta(d, resolve_weight(d, w)?.scaled(*k))?,
                _ => return Err(Error::NotInvertible { pos: *at }),
            }
        }
    })
}

pub fn eval_str(d: &Arc<RootDatum>, text: &str) -> Result<HeckeElt> {
    eval(d, &parse(text)?)
}

enum KVal {
    Scalar(LaurentInt),
    Class(KClass),
}

fn kval(d: &RootDatum, e: &Expr) -> Result<KVal> {
    let scalar_only = |v: KVal, what: &str| match v {
        KVal::Scalar(p) => Ok(p),
        KVal::Class(_) => Err(Error::InvalidOption(format!("K-class in a {what}"))),
    };
    Ok(match e {
        Expr::V => KVal::Scalar(LaurentInt::v()),
        Expr::Int(n) => KVal::Scalar(LaurentInt::monomial(n.clone(), 0)),
        Expr::T(_) | Expr::Theta(_) => {
            return Err(Error::InvalidOption(format!("Hecke generator `{e}` in a K-class expression")))
        }
        Expr::KWeight(k, w) => {
            let x = resolve_weight(d, w)?;
            KVal::Class(KClass::atom(if *k == KAtomKind::DiagN { Atom::DiagN(x) } else { Atom::DiagG(x) }))
        }
        Expr::KIndex(k, i) => {
            d.check_index(*i)?;
            KVal::Class(KClass::atom(match k {
                KAtomKind::Y => Atom::Y(*i, YTwist::A),
                KAtomKind::YB => Atom::Y(*i, YTwist::B),
                _ => Atom::W(*i),
            }))
        }
        Expr::Neg(a) => match kval(d, a)? {
            KVal::Scalar(p) => KVal::Scalar(-&p),
            KVal::Class(c) => KVal::Class(c.scale(&LaurentInt::constant(-1))),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sign = if matches!(e, Expr::Sub(..)) { -1 } else { 1 };
            match (kval(d, a)?, kval(d, b)?) {
                (KVal::Scalar(p), KVal::Scalar(r)) => KVal::Scalar(&p + &(&r * &LaurentInt::constant(sign))),
                (KVal::Class(c), KVal::Class(k)) => KVal::Class(c.checked_add(&k.scale(&LaurentInt::constant(sign)))?),
                _ => return Err(Error::InvalidOption("sum of a scalar and a K-class".into())),
            }
        }
        Expr::Mul(a, b) => match (kval(d, a)?, kval(d, b)?) {
            (KVal::Scalar(p), KVal::Scalar(r)) => KVal::Scalar(&p * &r),
            (KVal::Scalar(p), KVal::Class(c)) | (KVal::Class(c), KVal::Scalar(p)) => KVal::Class(c.scale(&p)),
            _ => return Err(Error::InvalidOption("product of two K-classes".into())),
        },
        Expr::Pow(a, k, at) => {
            let p = scalar_only(kval(d, a)?, "power")?;
            if *k < 0 {
                if **a != Expr::V {
                    return Err(Error::NotInvertible { pos: *at });
                }
                KVal::Scalar(LaurentInt::v_pow(*k as i32))
            } else {
                let mut out = LaurentInt::one();
                for _ in 0..*k {
                    out = &out * &p;
                }
                KVal::Scalar(out)
            }
        }
    })
}

/// Evaluates a linear combination of K-theory atoms with Laurent coefficients.
pub fn eval_kclass(d: &RootDatum, text: &str) -> Result<KClass> {
    match kval(d, &parse(text)?)? {
        KVal::Class(c) => Ok(c),
        KVal::Scalar(_) => Err(Error::InvalidOption("expression has no K-theory atom".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Arc<RootDatum> {
        Arc::new(RootDatum::from_type("A1").unwrap())
    }

    #[test]
    fn parses_examples() {
        assert!(matches!(parse("T[s1]*T[s1]").unwrap(), Expr::Mul(..)));
        assert!(parse("th[1]*(v - v^-1)").is_ok());
        assert!(matches!(parse("T[s1]^-1").unwrap(), Expr::Pow(_, -1, _)));
        assert_eq!(parse("th[rho]").unwrap(), Expr::Theta(WeightSpec::Rho));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse("T[s1] +").unwrap_err(), Error::Syntax { pos: 7, msg: "unexpected end of input".into() });
        assert!(matches!(parse("T[s0]"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("v v"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(v"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn evaluates_examples() {
        let d = a1();
        assert_eq!(eval_str(&d, "T[s1]*T[s1]").unwrap().to_text(), "1 + T[s1]*(v - v^-1)");
        let e = eval_str(&d, "T[s1]*th[1]").unwrap();
        assert_eq!(e, eval_str(&d, "th[-1]*T[s1] + th[1]*(v - v^-1)").unwrap());
        assert_eq!(eval_str(&d, "th[0]").unwrap(), HeckeElt::unit(&d));
        assert_eq!(eval_str(&d, "T[s1]*T[s1]^-1").unwrap(), HeckeElt::unit(&d));
        assert_eq!(eval_str(&d, "th[rho]^-2").unwrap(), eval_str(&d, "th[-2]").unwrap());
    }

    #[test]
    fn evaluation_errors() {
        let d = a1();
        assert!(matches!(eval_str(&d, "(T[s1] + 1)^-1"), Err(Error::NotInvertible { pos: 11 })));
        assert!(matches!(eval_str(&d, "2^-1"), Err(Error::NotInvertible { .. })));
        assert!(matches!(eval_str(&d, "th[1,0]"), Err(Error::WeightArity { .. })));
        assert!(matches!(eval_str(&d, "T[s2]"), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn render_reparses() {
        for s in ["-v*(T[s1] - 2)^2", "th[1]*T[s1]^-1 - (v + 1)*th[-1]", "-(v - v^-1)^3*th[rho]"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }

    #[test]
    fn kclass_expressions() {
        let d = a1();
        let c = eval_kclass(&d, "-v^-1*Y(1) - v^-1*DiagN(0)").unwrap();
        assert_eq!(c.to_string(), "(-v^-1)*DiagN(0) + (-v^-1)*Y(1)");
        assert!(eval_kclass(&d, "Y(1)*W(1)").is_err());
        assert!(eval_kclass(&d, "Y(1) + W(1)").is_err());
        assert!(eval_kclass(&d, "v").is_err());
    }
}
