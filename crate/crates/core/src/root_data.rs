//! Root systems and weight lattices of simply-connected semisimple groups.
//!
//! Weights are stored in fundamental-weight coordinates, so the pairing of a
//! weight with a simple coroot is a coordinate read and the simple roots are
//! the columns of the Cartan matrix.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Cartan data of a (possibly reducible) simply-connected semisimple type.
///
/// `cartan[i][j] = <alpha_j, alpha_i^vee>`, so column `j` is the simple root
/// `alpha_j` written in fundamental weights.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    rho: Weight,
    coxeter: Vec<Vec<u32>>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    positive_set: HashSet<Weight>,
    // inverse Cartan matrix is adjugate / det, det > 0 in finite type
    adjugate: Vec<Vec<i64>>,
    det: i64,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootDatum {}

fn simple_cartan(letter: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let valid = match letter {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 3,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !valid {
        return None;
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match letter {
        'A' => (1..n).for_each(|i| link(i - 1, i, -1, -1)),
        'B' => {
            (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
            // alpha_n short
            link(n - 2, n - 1, -1, -2);
        }
        'C' => {
            (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
            // alpha_n long
            link(n - 2, n - 1, -2, -1);
        }
        'D' => {
            (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        'E' => {
            // Bourbaki labelling: 1-3-4-5-..., 2 attached to 4
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (3..n).for_each(|i| link(i - 1, i, -1, -1));
        }
        'F' => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        'G' => link(0, 1, -3, -1),
        _ => unreachable!(),
    }
    Some(a)
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    out
}

/// Determinant and adjugate of a small integer matrix, computed over the
/// rationals.
fn det_and_adjugate(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| (0..n).map(|j| Ratio::from_integer((i == j) as i64)).collect())
        .collect();
    let mut det = Ratio::from_integer(1);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrix of finite type is nonsingular");
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Ratio::from_integer(0) {
                    for j in 0..n {
                        let (ac, ic) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * ac;
                        inv[r][j] -= f * ic;
                    }
                }
            }
        }
    }
    assert!(det.is_integer());
    let d = det.to_integer();
    let adj = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let y = *x * Ratio::from_integer(d);
                    assert!(y.is_integer());
                    y.to_integer()
                })
                .collect()
        })
        .collect();
    (d, adj)
}

impl RootDatum {
    /// Builds the datum for a type string such as `"A2"`, `"G2"` or `"A1xA1"`.
    pub fn from_type(type_string: &str) -> Result<Self> {
        let s = type_string.trim();
        if s.is_empty() {
            return Err(Error::ZeroRank);
        }
        let mut blocks = Vec::new();
        for tok in s.split(['x', 'X', '*']) {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let letter = chars
                .next()
                .ok_or_else(|| Error::UnknownType(type_string.to_string()))?
                .to_ascii_uppercase();
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::UnknownType(tok.to_string()))?;
            if n == 0 {
                return Err(Error::ZeroRank);
            }
            blocks.push(simple_cartan(letter, n).ok_or_else(|| Error::UnknownType(tok.to_string()))?);
        }
        Ok(Self::from_cartan(s.to_string(), block_diagonal(&blocks)))
    }

    fn from_cartan(name: String, cartan: Vec<Vec<i64>>) -> Self {
        let rank = cartan.len();
        let simple_roots: Vec<Weight> = (0..rank)
            .map(|j| Weight((0..rank).map(|i| cartan[i][j]).collect()))
            .collect();
        let mut coxeter = vec![vec![1u32; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                if i != j {
                    coxeter[i][j] = match cartan[i][j] * cartan[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        p => panic!("not a finite-type Cartan matrix (product {p})"),
                    };
                }
            }
        }

        // Closure of the simple roots under simple reflections, in root
        // coordinates: s_i(beta) = beta - <beta, alpha_i^vee> alpha_i.
        let mut coords: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let pair: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                if pair == 0 {
                    continue;
                }
                let mut gamma = beta.clone();
                gamma[i] -= pair;
                if gamma.iter().all(|&c| c >= 0) && gamma.iter().any(|&c| c > 0) && seen.insert(gamma.clone()) {
                    queue.push_back(gamma);
                }
            }
            coords.push(beta);
        }
        coords.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
        let positive_roots: Vec<Weight> = coords
            .iter()
            .map(|c| Weight((0..rank).map(|i| (0..rank).map(|j| cartan[i][j] * c[j]).sum()).collect()))
            .collect();
        let positive_set = positive_roots.iter().cloned().collect();
        let (det, adjugate) = det_and_adjugate(&cartan);
        RootDatum {
            name,
            rho: Weight(vec![1; rank]),
            cartan,
            simple_roots,
            coxeter,
            positive_roots,
            positive_root_coords: coords,
            positive_set,
            adjugate,
            det,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Result<&Weight> {
        self.check_index(i)?;
        Ok(&self.simple_roots[i])
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `N = #R+`.
    pub fn n_pos_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, in the same order as
    /// [`RootDatum::positive_roots`].
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    /// Order of `s_i s_j`.
    pub fn coxeter_order(&self, i: usize, j: usize) -> Result<u32> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.coxeter[i][j])
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    pub fn check_weight(&self, x: &Weight) -> Result<()> {
        if x.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::WeightArity { expected: self.rank(), got: x.rank() })
        }
    }

    /// `<x, alpha_i^vee>`.
    pub fn pairing(&self, x: &Weight, i: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_weight(x)?;
        Ok(x.0[i])
    }

    /// `s_i(x) = x - <x, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, x: &Weight, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(x)?;
        Ok(self.reflect_unchecked(x, i))
    }

    pub(crate) fn reflect_unchecked(&self, x: &Weight, i: usize) -> Weight {
        let n = x.0[i];
        if n == 0 {
            return x.clone();
        }
        let a = &self.simple_roots[i];
        Weight(x.0.iter().zip(&a.0).map(|(c, r)| c - n * r).collect())
    }

    /// Simple-root coordinates of a weight, as exact rationals.
    pub fn to_root_coords(&self, x: &Weight) -> Vec<Ratio<i64>> {
        self.adjugate
            .iter()
            .map(|row| Ratio::new(row.iter().zip(&x.0).map(|(a, c)| a * c).sum(), self.det))
            .collect()
    }

    /// Sign test for a root `beta` given in weight coordinates: true when all
    /// simple-root coordinates are nonnegative.
    pub(crate) fn root_is_positive(&self, beta: &Weight) -> bool {
        // det > 0, so the sign of adj * beta decides
        self.adjugate
            .iter()
            .all(|row| row.iter().zip(&beta.0).map(|(a, c)| a * c).sum::<i64>() >= 0)
    }

    pub fn is_positive_root(&self, beta: &Weight) -> bool {
        self.positive_set.contains(beta)
    }

    /// JSON dump: `{"type", "cartan", "rho", "n_pos_roots"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.name,
            "cartan": self.cartan,
            "rho": self.rho.0,
            "n_pos_roots": self.n_pos_roots(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn a1_data() {
        let d = RootDatum::from_type("A1").unwrap();
        assert_eq!(d.cartan(), &[vec![2]]);
        assert_eq!(d.simple_root(0).unwrap(), &w(&[2]));
        assert_eq!(d.rho(), &w(&[1]));
        assert_eq!(d.n_pos_roots(), 1);
    }

    #[test]
    fn a2_data() {
        let d = RootDatum::from_type("A2").unwrap();
        assert_eq!(d.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(d.coxeter_order(0, 1).unwrap(), 3);
        assert_eq!(d.n_pos_roots(), 3);
    }

    #[test]
    fn a1xa1_is_block_diagonal() {
        let d = RootDatum::from_type("A1xA1").unwrap();
        assert_eq!(d.cartan(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(d.coxeter_order(0, 1).unwrap(), 2);
        assert_eq!(d.n_pos_roots(), 2);
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("B2", 4),
            ("G2", 6),
            ("A3", 6),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(RootDatum::from_type(t).unwrap().n_pos_roots(), n, "{t}");
        }
    }

    #[test]
    fn bad_types() {
        assert!(matches!(RootDatum::from_type("Q3"), Err(Error::UnknownType(_))));
        assert!(matches!(RootDatum::from_type("A0"), Err(Error::ZeroRank)));
        assert!(matches!(RootDatum::from_type(""), Err(Error::ZeroRank)));
        assert!(matches!(RootDatum::from_type("G3"), Err(Error::UnknownType(_))));
        assert!(matches!(RootDatum::from_type("A"), Err(Error::UnknownType(_))));
    }

    #[test]
    fn pairing_examples() {
        let a1 = RootDatum::from_type("A1").unwrap();
        assert_eq!(a1.pairing(&w(&[1]), 0).unwrap(), 1);
        let a2 = RootDatum::from_type("A2").unwrap();
        assert_eq!(a2.pairing(&w(&[2, -1]), 1).unwrap(), -1);
        for t in ["A3", "B3", "G2"] {
            let d = RootDatum::from_type(t).unwrap();
            for i in 0..d.rank() {
                assert_eq!(d.pairing(d.rho(), i).unwrap(), 1);
            }
        }
        assert_eq!(a2.pairing(&w(&[0, 0]), 2), Err(Error::IndexOutOfRange { index: 2, rank: 2 }));
    }

    #[test]
    fn reflect_examples() {
        let a1 = RootDatum::from_type("A1").unwrap();
        assert_eq!(a1.reflect(&w(&[1]), 0).unwrap(), w(&[-1]));
        assert_eq!(a1.reflect(&w(&[0]), 0).unwrap(), w(&[0]));
        let a2 = RootDatum::from_type("A2").unwrap();
        assert_eq!(a2.reflect(&w(&[-1, 2]), 0).unwrap(), w(&[1, 1]));
        assert!(a2.reflect(&w(&[0]), 0).is_err());
    }

    #[test]
    fn cartan_invariants() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "A1xA1", "A2xB2"] {
            let d = RootDatum::from_type(t).unwrap();
            let c = d.cartan();
            for i in 0..d.rank() {
                assert_eq!(c[i][i], 2);
                for j in 0..d.rank() {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
                assert_eq!(d.reflect(d.rho(), i).unwrap(), d.rho() - &d.simple_roots()[i]);
            }
            for (beta, coords) in d.positive_roots().iter().zip(d.positive_root_coords()) {
                assert!(coords.iter().all(|&c| c >= 0));
                assert!(d.root_is_positive(beta));
                assert!(!d.root_is_positive(&(-beta)));
                let rc = d.to_root_coords(beta);
                assert!(rc.iter().zip(coords).all(|(r, c)| *r == Ratio::from_integer(*c)));
            }
        }
    }

    #[test]
    fn json_dump() {
        let d = RootDatum::from_type("A2").unwrap();
        let j = d.to_json();
        assert_eq!(j["cartan"], serde_json::json!([[2, -1], [-1, 2]]));
        assert_eq!(j["rho"], serde_json::json!([1, 1]));
        assert_eq!(j["n_pos_roots"], 3);
    }
}
