//! Finite Weyl groups acting on the weight lattice.
//!
//! An element is keyed by its integer matrix in fundamental-weight
//! coordinates; the canonical reduced word strips the smallest right descent
//! first.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{Error, Result};
use crate::root_data::{RootDatum, Weight};

#[derive(Clone, Debug)]
pub struct WeylElt {
    rank: usize,
    // row-major; column j is the image of the j-th fundamental weight
    matrix: Vec<i64>,
    inverse: Vec<i64>,
    word: Vec<usize>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter elements first, then lexicographic on the canonical word.
impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.word, &self.matrix).cmp(&(other.word.len(), &other.word, &other.matrix))
    }
}

fn identity_matrix(rank: usize) -> Vec<i64> {
    let mut m = vec![0; rank * rank];
    for i in 0..rank {
        m[i * rank + i] = 1;
    }
    m
}

fn matmul(rank: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik != 0 {
                for j in 0..rank {
                    out[i * rank + j] += aik * b[k * rank + j];
                }
            }
        }
    }
    out
}

fn mat_vec(rank: usize, m: &[i64], x: &[i64]) -> Vec<i64> {
    (0..rank).map(|i| (0..rank).map(|j| m[i * rank + j] * x[j]).sum()).collect()
}

/// `m * s_i`: column i becomes `m e_i - m alpha_i`.
fn times_simple_right(d: &RootDatum, m: &[i64], i: usize) -> Vec<i64> {
    let r = d.rank();
    let ma = mat_vec(r, m, &d.simple_roots()[i].0);
    let mut out = m.to_vec();
    for row in 0..r {
        out[row * r + i] -= ma[row];
    }
    out
}

/// `s_i * m`: every column c becomes `c - c_i alpha_i`.
fn times_simple_left(d: &RootDatum, m: &[i64], i: usize) -> Vec<i64> {
    let r = d.rank();
    let a = &d.simple_roots()[i].0;
    let mut out = m.to_vec();
    for col in 0..r {
        let ci = m[i * r + col];
        if ci != 0 {
            for row in 0..r {
                out[row * r + col] -= ci * a[row];
            }
        }
    }
    out
}

impl WeylElt {
    pub fn identity(d: &RootDatum) -> Self {
        let r = d.rank();
        WeylElt { rank: r, matrix: identity_matrix(r), inverse: identity_matrix(r), word: Vec::new() }
    }

    /// The simple reflection `s_i`.
    pub fn simple(d: &RootDatum, i: usize) -> Result<Self> {
        d.check_index(i)?;
        let id = identity_matrix(d.rank());
        let m = times_simple_right(d, &id, i);
        Ok(WeylElt { rank: d.rank(), inverse: m.clone(), matrix: m, word: vec![i] })
    }

    /// Product of simple reflections along `word` (need not be reduced).
    pub fn from_word(d: &RootDatum, word: &[usize]) -> Result<Self> {
        let mut w = WeylElt::identity(d);
        for &i in word {
            d.check_index(i)?;
            w = w.mul_simple_right(d, i);
        }
        Ok(w)
    }

    fn from_matrices(d: &RootDatum, matrix: Vec<i64>, inverse: Vec<i64>) -> Self {
        let word = canonical_word(d, &matrix);
        WeylElt { rank: d.rank(), matrix, inverse, word }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    /// Matrix as rows.
    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    /// The cached canonical reduced word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn act(&self, x: &Weight) -> Weight {
        Weight(mat_vec(self.rank, &self.matrix, &x.0))
    }

    pub fn inverse(&self, d: &RootDatum) -> WeylElt {
        WeylElt::from_matrices(d, self.inverse.clone(), self.matrix.clone())
    }

    fn check_datum(&self, d: &RootDatum) -> Result<()> {
        if self.rank == d.rank() {
            Ok(())
        } else {
            Err(Error::DatumMismatch(format!("rank {}", self.rank), d.name().to_string()))
        }
    }

    /// Group law `a * b` (apply `b` first). The cached word is recomputed.
    pub fn compose(d: &RootDatum, a: &WeylElt, b: &WeylElt) -> Result<WeylElt> {
        a.check_datum(d)?;
        b.check_datum(d)?;
        let r = d.rank();
        Ok(WeylElt::from_matrices(d, matmul(r, &a.matrix, &b.matrix), matmul(r, &b.inverse, &a.inverse)))
    }

    pub fn mul_simple_right(&self, d: &RootDatum, i: usize) -> WeylElt {
        let m = times_simple_right(d, &self.matrix, i);
        let inv = times_simple_left(d, &self.inverse, i);
        WeylElt::from_matrices(d, m, inv)
    }

    pub fn mul_simple_left(&self, d: &RootDatum, i: usize) -> WeylElt {
        let m = times_simple_left(d, &self.matrix, i);
        let inv = times_simple_right(d, &self.inverse, i);
        WeylElt::from_matrices(d, m, inv)
    }

    /// True iff `l(w s_i) < l(w)`, i.e. `w(alpha_i)` is a negative root.
    pub fn descent(&self, d: &RootDatum, i: usize) -> Result<bool> {
        d.check_index(i)?;
        self.check_datum(d)?;
        Ok(right_descent(d, &self.matrix, i))
    }

    /// True iff `l(s_i w) < l(w)`, i.e. `w^{-1}(alpha_i)` is negative.
    pub fn left_descent(&self, d: &RootDatum, i: usize) -> Result<bool> {
        d.check_index(i)?;
        self.check_datum(d)?;
        Ok(right_descent(d, &self.inverse, i))
    }

    /// A uniformly random choice among right descents at each stripping
    /// step; returns a reduced word for `self`, generally not the canonical one.
    pub fn random_reduced_word<R: Rng>(&self, d: &RootDatum, rng: &mut R) -> Vec<usize> {
        let mut m = self.matrix.clone();
        let mut out = Vec::with_capacity(self.length());
        for _ in 0..self.length() {
            let ds: Vec<usize> = (0..d.rank()).filter(|&i| right_descent(d, &m, i)).collect();
            let i = ds[rng.gen_range(0..ds.len())];
            m = times_simple_right(d, &m, i);
            out.push(i);
        }
        out.reverse();
        out
    }

    /// Text form `s1*s2*s1` (1-based indices); the identity renders as `e`.
    pub fn to_text(&self) -> String {
        if self.word.is_empty() {
            return "e".into();
        }
        self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("*")
    }

    pub fn parse_text(d: &RootDatum, s: &str) -> Result<WeylElt> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(WeylElt::identity(d));
        }
        let mut word = Vec::new();
        for (k, tok) in s.split('*').enumerate() {
            let tok = tok.trim();
            let idx = tok
                .strip_prefix('s')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Syntax { pos: k, msg: format!("bad reflection `{tok}`") })?;
            word.push(idx - 1);
        }
        WeylElt::from_word(d, &word)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "word": self.word })
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn right_descent(d: &RootDatum, m: &[i64], i: usize) -> bool {
    let image = Weight(mat_vec(d.rank(), m, &d.simple_roots()[i].0));
    !d.root_is_positive(&image)
}

fn canonical_word(d: &RootDatum, m: &[i64]) -> Vec<usize> {
    let r = d.rank();
    let id = identity_matrix(r);
    let mut cur = m.to_vec();
    let mut out = Vec::new();
    while cur != id {
        let i = (0..r).find(|&i| right_descent(d, &cur, i)).expect("non-identity element has a descent");
        cur = times_simple_right(d, &cur, i);
        out.push(i);
    }
    out.reverse();
    out
}

/// Reduced word of `w`, stripping the smallest right descent first.
pub fn reduced_word(d: &RootDatum, w: &WeylElt) -> Vec<usize> {
    canonical_word(d, &w.matrix)
}

/// All elements of `W`, by breadth-first search from the identity.
///
/// Only sensible for small groups; the caller is responsible for not asking
/// for `W(E8)`.
pub fn enumerate(d: &RootDatum) -> Vec<WeylElt> {
    let id = WeylElt::identity(d);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(id.matrix.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for i in 0..d.rank() {
            let m = times_simple_right(d, &w.matrix, i);
            if seen.insert(m.clone()) {
                let inv = times_simple_left(d, &w.inverse, i);
                let e = WeylElt::from_matrices(d, m, inv);
                out.push(e.clone());
                queue.push_back(e);
            }
        }
    }
    out.sort();
    out
}

/// The longest element: keep multiplying by ascents until none remain.
pub fn longest_element(d: &RootDatum) -> WeylElt {
    let mut w = WeylElt::identity(d);
    while let Some(i) = (0..d.rank()).find(|&i| !right_descent(d, &w.matrix, i)) {
        w = w.mul_simple_right(d, i);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn datum(t: &str) -> RootDatum {
        RootDatum::from_type(t).unwrap()
    }

    #[test]
    fn simple_examples() {
        let a1 = datum("A1");
        assert_eq!(WeylElt::simple(&a1, 0).unwrap().matrix_rows(), vec![vec![-1]]);
        let a2 = datum("A2");
        let s1 = WeylElt::simple(&a2, 0).unwrap();
        assert_eq!(s1.matrix_rows(), vec![vec![-1, 0], vec![1, 1]]);
        let sq = WeylElt::compose(&a2, &s1, &s1).unwrap();
        assert!(sq.is_identity());
        assert!(WeylElt::simple(&a2, 2).is_err());
    }

    #[test]
    fn braid_in_a2_and_longest() {
        let d = datum("A2");
        let a = WeylElt::from_word(&d, &[0, 1, 0]).unwrap();
        let b = WeylElt::from_word(&d, &[1, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.length(), 3);
        assert_eq!(a.word(), &[0, 1, 0]);
        assert_eq!(longest_element(&d), a);
        let e = WeylElt::identity(&d);
        assert_eq!(WeylElt::compose(&d, &a, &e).unwrap(), a);
    }

    #[test]
    fn compose_recomputes_word() {
        let d = datum("A2");
        let s1 = WeylElt::simple(&d, 0).unwrap();
        let s2 = WeylElt::simple(&d, 1).unwrap();
        let x = WeylElt::compose(&d, &s1, &s2).unwrap();
        let y = WeylElt::compose(&d, &x, &s1).unwrap();
        assert_eq!(y.word(), &[0, 1, 0]);
        let z = WeylElt::compose(&d, &y, &s1).unwrap();
        assert_eq!(z.word(), &[0, 1]);
    }

    #[test]
    fn compose_rejects_other_rank() {
        let a1 = datum("A1");
        let a2 = datum("A2");
        let s = WeylElt::simple(&a1, 0).unwrap();
        let t = WeylElt::simple(&a2, 0).unwrap();
        assert!(WeylElt::compose(&a2, &s, &t).is_err());
    }

    #[test]
    fn descent_examples() {
        let a1 = datum("A1");
        assert!(!WeylElt::identity(&a1).descent(&a1, 0).unwrap());
        assert!(WeylElt::simple(&a1, 0).unwrap().descent(&a1, 0).unwrap());
        let a2 = datum("A2");
        assert!(!WeylElt::simple(&a2, 0).unwrap().descent(&a2, 1).unwrap());
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = datum("A2");
        assert!(reduced_word(&a2, &WeylElt::identity(&a2)).is_empty());
        assert_eq!(reduced_word(&a2, &longest_element(&a2)), vec![0, 1, 0]);
        let a1 = datum("A1");
        assert_eq!(reduced_word(&a1, &WeylElt::simple(&a1, 0).unwrap()), vec![0]);
    }

    #[test]
    fn group_orders() {
        for (t, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("C3", 48), ("A1xA1", 4)] {
            assert_eq!(enumerate(&datum(t)).len(), n, "{t}");
        }
    }

    #[test]
    fn longest_length_is_n_pos_roots() {
        for t in ["A2", "B2", "G2", "A3", "B3", "C3", "D4"] {
            let d = datum(t);
            assert_eq!(longest_element(&d).length(), d.n_pos_roots(), "{t}");
        }
    }

    #[test]
    fn length_counts_inversions_and_descents_flip() {
        for t in ["A2", "B2", "G2", "A3"] {
            let d = datum(t);
            for w in enumerate(&d) {
                let inversions = d.positive_roots().iter().filter(|b| !d.is_positive_root(&w.act(b))).count();
                assert_eq!(inversions, w.length());
                let rebuilt = WeylElt::from_word(&d, w.word()).unwrap();
                assert_eq!(rebuilt, w);
                for i in 0..d.rank() {
                    let ws = w.mul_simple_right(&d, i);
                    if w.descent(&d, i).unwrap() {
                        assert_eq!(ws.length() + 1, w.length());
                    } else {
                        assert_eq!(ws.length(), w.length() + 1);
                    }
                    let sw = w.mul_simple_left(&d, i);
                    assert_eq!(sw.length() < w.length(), w.left_descent(&d, i).unwrap());
                }
                assert_eq!(WeylElt::compose(&d, &w, &w.inverse(&d)).unwrap(), WeylElt::identity(&d));
            }
        }
    }

    #[test]
    fn rank3_sampled_descents() {
        let d = datum("B3");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let word: Vec<usize> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..3)).collect();
            let w = WeylElt::from_word(&d, &word).unwrap();
            for i in 0..3 {
                let ws = w.mul_simple_right(&d, i);
                let expect = if w.descent(&d, i).unwrap() { w.length() - 1 } else { w.length() + 1 };
                assert_eq!(ws.length(), expect);
            }
        }
    }

    #[test]
    fn random_reduced_words_are_reduced() {
        let d = datum("B2");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for w in enumerate(&d) {
            let word = w.random_reduced_word(&d, &mut rng);
            assert_eq!(word.len(), w.length());
            assert_eq!(WeylElt::from_word(&d, &word).unwrap(), w);
        }
    }

    #[test]
    fn text_and_json() {
        let d = datum("A2");
        let w = longest_element(&d);
        assert_eq!(w.to_text(), "s1*s2*s1");
        assert_eq!(WeylElt::parse_text(&d, "s2*s1*s2").unwrap(), w);
        assert_eq!(w.to_json(), serde_json::json!({"word": [0, 1, 0]}));
        assert!(WeylElt::parse_text(&d, "s0").is_err());
        assert!(WeylElt::parse_text(&d, "s3").is_err());
    }
}
