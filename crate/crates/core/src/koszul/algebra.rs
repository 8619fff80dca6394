//! Free graded-commutative algebras on one block of odd and one block of
//! even generators, with a linear differential from odd to even.

use std::collections::BTreeMap;

use super::linalg::{Mat, Q};
use num_traits::Zero;

/// (cohomological degree, internal degree).
pub type Bideg = (i32, i32);

pub fn add_bideg(a: Bideg, b: Bideg) -> Bideg {
    (a.0 + b.0, a.1 + b.1)
}

/// `Lambda(odd) (x) Sym(even)` with `d(odd_j) = sum_k diff[k][j] even_k`.
///
/// Generators are indexed odd first, then even. All odd generators share one
/// bidegree and all even generators another, one step higher in
/// cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcAlgebra {
    n_odd: usize,
    n_even: usize,
    odd_deg: Bideg,
    even_deg: Bideg,
    diff: Mat,
}

/// A basis monomial: an increasing list of odd generators followed by an
/// exponent vector of even generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub odd: Vec<usize>,
    pub even: Vec<u32>,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial { odd: Vec::new(), even: vec![0; n_even] }
    }

    /// Number of generator factors.
    pub fn weight(&self) -> usize {
        self.odd.len() + self.even.iter().map(|&e| e as usize).sum::<usize>()
    }

    pub fn is_odd(&self) -> bool {
        self.odd.len() % 2 == 1
    }
}

impl GcAlgebra {
    /// `diff` is `n_even x n_odd`.
    pub fn new(odd_deg: Bideg, even_deg: Bideg, diff: Mat) -> Self {
        assert_eq!(add_bideg(odd_deg, (1, 0)), even_deg, "differential must have bidegree (1,0)");
        GcAlgebra { n_odd: diff.cols(), n_even: diff.rows(), odd_deg, even_deg, diff }
    }

    /// The ground field, with no generators.
    pub fn trivial() -> Self {
        GcAlgebra::new((0, 0), (1, 0), Mat::zeros(0, 0))
    }

    pub fn n_odd(&self) -> usize {
        self.n_odd
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_gens(&self) -> usize {
        self.n_odd + self.n_even
    }

    pub fn odd_deg(&self) -> Bideg {
        self.odd_deg
    }

    pub fn even_deg(&self) -> Bideg {
        self.even_deg
    }

    pub fn diff(&self) -> &Mat {
        &self.diff
    }

    pub fn is_odd_gen(&self, g: usize) -> bool {
        g < self.n_odd
    }

    pub fn gen_deg(&self, g: usize) -> Bideg {
        if self.is_odd_gen(g) {
            self.odd_deg
        } else {
            self.even_deg
        }
    }

    /// `d(g)` as a combination of generator indices.
    pub fn gen_diff(&self, g: usize) -> Vec<(usize, Q)> {
        if !self.is_odd_gen(g) {
            return Vec::new();
        }
        (0..self.n_even)
            .filter_map(|k| {
                let c = self.diff.get(k, g);
                (!c.is_zero()).then(|| (self.n_odd + k, c.clone()))
            })
            .collect()
    }

    /// The same algebra with generators placed at other bidegrees.
    pub fn regraded(&self, odd_deg: Bideg, even_deg: Bideg) -> Self {
        GcAlgebra::new(odd_deg, even_deg, self.diff.clone())
    }

    pub fn monomial_deg(&self, m: &Monomial) -> Bideg {
        let a = m.odd.len() as i32;
        let b: i32 = m.even.iter().map(|&e| e as i32).sum();
        (a * self.odd_deg.0 + b * self.even_deg.0, a * self.odd_deg.1 + b * self.even_deg.1)
    }

    /// All monomials with exactly `weight` factors, in a fixed order.
    pub fn monomials(&self, weight: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=weight.min(self.n_odd) {
            let b = weight - a;
            if self.n_even == 0 && b > 0 {
                continue;
            }
            for odd in subsets(self.n_odd, a) {
                for even in compositions(self.n_even, b) {
                    out.push(Monomial { odd: odd.clone(), even });
                }
            }
        }
        out
    }

    /// Monomials with at most `max_weight` factors grouped by bidegree.
    pub fn basis_by_deg(&self, max_weight: usize) -> BTreeMap<Bideg, Vec<Monomial>> {
        let mut out: BTreeMap<Bideg, Vec<Monomial>> = BTreeMap::new();
        for w in 0..=max_weight {
            for m in self.monomials(w) {
                out.entry(self.monomial_deg(&m)).or_default().push(m);
            }
        }
        out
    }

    /// Left multiplication `g * m`, with its Koszul sign; `None` if zero.
    pub fn mul_gen(&self, g: usize, m: &Monomial) -> Option<(i64, Monomial)> {
        let mut out = m.clone();
        if self.is_odd_gen(g) {
            let pos = m.odd.partition_point(|&i| i < g);
            if m.odd.get(pos) == Some(&g) {
                return None;
            }
            out.odd.insert(pos, g);
            Some((if pos % 2 == 0 { 1 } else { -1 }, out))
        } else {
            out.even[g - self.n_odd] += 1;
            Some((1, out))
        }
    }

    /// The derivation `d` on a monomial.
    pub fn diff_monomial(&self, m: &Monomial) -> Vec<(Q, Monomial)> {
        let mut out = Vec::new();
        for (l, &j) in m.odd.iter().enumerate() {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            for (k, c) in self.gen_diff(j) {
                let mut t = m.clone();
                t.odd.remove(l);
                t.even[k - self.n_odd] += 1;
                out.push((c * super::linalg::q(sign), t));
            }
        }
        out
    }
}

/// Increasing `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors of length `n` summing to `total`.
fn compositions(n: usize, total: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> GcAlgebra {
        // two odd at (-1,2), one even at (0,2), d(x_0) = y, d(x_1) = -y
        GcAlgebra::new((-1, 2), (0, 2), Mat::from_rows(&[vec![1, -1]]))
    }

    #[test]
    fn monomial_counts() {
        let a = alg();
        assert_eq!(a.monomials(0).len(), 1);
        assert_eq!(a.monomials(1).len(), 3);
        // weight 2: {x0 x1}, x0 y, x1 y, y^2
        assert_eq!(a.monomials(2).len(), 4);
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(subsets(4, 2).len(), 6);
    }

    #[test]
    fn odd_signs() {
        let a = alg();
        let x1 = a.mul_gen(1, &Monomial::one(1)).unwrap().1;
        let (s, m) = a.mul_gen(0, &x1).unwrap();
        assert_eq!((s, m.odd.clone()), (1, vec![0, 1]));
        let x0 = a.mul_gen(0, &Monomial::one(1)).unwrap().1;
        let (s, _) = a.mul_gen(1, &x0).unwrap();
        assert_eq!(s, -1);
        assert!(a.mul_gen(0, &x0).is_none());
        assert_eq!(a.monomial_deg(&m), (-2, 4));
    }

    #[test]
    fn d_squared_on_monomials() {
        let a = alg();
        for w in 0..4 {
            for m in a.monomials(w) {
                let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
                for (c, t) in a.diff_monomial(&m) {
                    for (c2, u) in a.diff_monomial(&t) {
                        *acc.entry(u).or_insert_with(Q::zero) += &c * &c2;
                    }
                }
                assert!(acc.values().all(Zero::is_zero));
            }
        }
        // d(x0 x1) = y x1 - x0 y
        let m = Monomial { odd: vec![0, 1], even: vec![0] };
        let d = a.diff_monomial(&m);
        assert_eq!(d.len(), 2);
    }
}
