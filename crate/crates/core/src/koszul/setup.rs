//! Linear Koszul duality over a point for a pair of subspaces
//! `F1, F2` of a vector space `E`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::algebra::{Bideg, GcAlgebra, Monomial};
use super::linalg::{q, Mat, Q};
use super::module::{DgModule, Window};
use crate::error::{Error, Result};

/// The dg-algebras attached to `(E, F1, F2)`:
///
/// * `T = Sym(F1^perp -> F2^vee)` with generators at `(-1, 2)` and `(0, 2)`,
///   differential the restriction of functionals;
/// * `S = Sym(Y[-2])` for `Y = (F2 -> E/F1)`, generators at `(1, -2)` and
///   `(2, -2)`, differential the opposite of the natural map;
/// * `R = Sym(Y)`, the same algebra with generators at `(-1, -2)`, `(0, -2)`.
///
/// The basis of `E/F1` is dual to the chosen basis `xi_k` of `F1^perp`.
#[derive(Clone, Debug)]
pub struct KoszulSetup {
    dim: usize,
    f1: Vec<Vec<Q>>,
    f2: Vec<Vec<Q>>,
    f1_perp: Vec<Vec<Q>>,
    t_alg: Arc<GcAlgebra>,
    s_alg: Arc<GcAlgebra>,
    r_alg: Arc<GcAlgebra>,
}

fn independent(dim: usize, vs: &[Vec<Q>]) -> bool {
    vs.iter().all(|v| v.len() == dim) && Mat::from_columns(dim, vs).rank() == vs.len()
}

fn pair(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

impl KoszulSetup {
    /// `f1`, `f2` are bases of the two subspaces; `F1^perp` gets the kernel
    /// basis of the pairing with `f1`.
    pub fn new(dim: usize, f1: Vec<Vec<Q>>, f2: Vec<Vec<Q>>) -> Result<Self> {
        if !independent(dim, &f1) {
            return Err(Error::InvalidSubspace("F1 basis is not independent".into()));
        }
        let perp = Mat::from_columns(dim, &f1).transpose().kernel();
        let perp = if f1.is_empty() { (0..dim).map(|i| unit(dim, i)).collect() } else { perp };
        Self::with_perp(dim, f1, f2, perp)
    }

    /// As [`KoszulSetup::new`] with an explicit basis of `F1^perp`.
    pub fn with_perp(dim: usize, f1: Vec<Vec<Q>>, f2: Vec<Vec<Q>>, f1_perp: Vec<Vec<Q>>) -> Result<Self> {
        if !independent(dim, &f1) {
            return Err(Error::InvalidSubspace("F1 basis is not independent".into()));
        }
        if !independent(dim, &f2) {
            return Err(Error::InvalidSubspace("F2 basis is not independent".into()));
        }
        if !independent(dim, &f1_perp) || f1_perp.len() + f1.len() != dim {
            return Err(Error::InvalidSubspace("F1^perp basis has the wrong dimension".into()));
        }
        if f1_perp.iter().any(|xi| f1.iter().any(|f| !pair(xi, f).is_zero())) {
            return Err(Error::InvalidSubspace("F1^perp does not annihilate F1".into()));
        }
        // restriction F1^perp -> F2^vee: entry (j, k) = xi_k(f_j)
        let mut res = Mat::zeros(f2.len(), f1_perp.len());
        for (j, f) in f2.iter().enumerate() {
            for (k, xi) in f1_perp.iter().enumerate() {
                res.set(j, k, pair(xi, f));
            }
        }
        let t_alg = Arc::new(GcAlgebra::new((-1, 2), (0, 2), res.clone()));
        let nat = res.transpose().scaled(&q(-1));
        let s_alg = Arc::new(GcAlgebra::new((1, -2), (2, -2), nat.clone()));
        let r_alg = Arc::new(GcAlgebra::new((-1, -2), (0, -2), nat));
        Ok(KoszulSetup { dim, f1, f2, f1_perp, t_alg, s_alg, r_alg })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f1(&self) -> &[Vec<Q>] {
        &self.f1
    }

    pub fn f2(&self) -> &[Vec<Q>] {
        &self.f2
    }

    pub fn f1_perp(&self) -> &[Vec<Q>] {
        &self.f1_perp
    }

    pub fn t_alg(&self) -> &Arc<GcAlgebra> {
        &self.t_alg
    }

    pub fn s_alg(&self) -> &Arc<GcAlgebra> {
        &self.s_alg
    }

    pub fn r_alg(&self) -> &Arc<GcAlgebra> {
        &self.r_alg
    }

    /// `S` as a module over itself, truncated to `q >= -2 * max_weight`.
    pub fn s_euler_class(&self, max_weight: usize) -> crate::poly::LaurentInt {
        super::free_module(&self.s_alg, max_weight).euler_class()
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = q(1);
    v
}

/// `kappa(M) = xi(S (x) M^vee)` in internal degrees `-cutoff..=cutoff`.
///
/// The differential on `S (x) N` is `d_S (x) 1 + 1 (x) d_N` plus the two
/// Koszul terms `sum_j f_j (x) f_j^*` and `sum_k e_k (x) xi_k`, where
/// `f_j` runs over the basis of `F2` and `e_k` over the basis of `E/F1`
/// dual to `xi_k`. The regrading `xi` sends `(p, q)` to `(p + q, q)`.
///
/// `M` must be complete in internal degrees `<= cutoff`, since the output in
/// degree `q` involves `M` in degrees `0..=-q` shifted by the `S`-part.
pub fn kappa_point(setup: &KoszulSetup, m: &DgModule, cutoff: i32) -> Result<DgModule> {
    if **m.algebra() != *setup.t_alg {
        return Err(Error::InvalidOption("module is not over the algebra T of this setup".into()));
    }
    if cutoff < 0 {
        return Err(Error::InvalidOption("cutoff must be nonnegative".into()));
    }
    if m.window().lo.is_some() {
        return Err(Error::InvalidOption("module must be complete in low internal degrees".into()));
    }
    if let Some(hi) = m.window().hi {
        if hi < cutoff {
            return Err(Error::WindowTooSmall { have: hi, need: cutoff });
        }
    }
    let s = &*setup.s_alg;
    let t = &*setup.t_alg;
    let n = m.dual();

    // basis of the output, slice by slice
    type Key = (Monomial, Bideg, usize);
    let mut index: HashMap<Key, (Bideg, usize)> = HashMap::new();
    let mut out = DgModule::new(setup.r_alg.clone());
    let mut dims: std::collections::BTreeMap<Bideg, usize> = Default::default();
    let mut order: Vec<(Key, Bideg)> = Vec::new();
    let max_n = n.dims().keys().map(|b| b.1).max();
    for qq in -cutoff..=cutoff {
        let Some(max_n) = max_n else { break };
        for (&nb, &nd) in n.dims() {
            if nb.1 < qq || (nb.1 - qq) % 2 != 0 || nb.1 > max_n {
                continue;
            }
            let weight = ((nb.1 - qq) / 2) as usize;
            for mono in s.monomials(weight) {
                let sb = s.monomial_deg(&mono);
                let ob = (sb.0 + nb.0 + qq, qq);
                for i in 0..nd {
                    let slot = dims.entry(ob).or_insert(0);
                    index.insert((mono.clone(), nb, i), (ob, *slot));
                    order.push(((mono.clone(), nb, i), ob));
                    *slot += 1;
                }
            }
        }
    }
    for (&b, &d) in &dims {
        out.add_component(b, d);
    }

    let mut diff: HashMap<Bideg, Mat> = dims.keys().map(|&b| (b, out.diff_at(b))).collect();
    let mut acts: Vec<HashMap<Bideg, Mat>> =
        (0..s.n_gens()).map(|g| dims.keys().map(|&b| (b, out.action_at(g, b))).collect()).collect();

    // cache of the module maps on N
    let n_diff: HashMap<Bideg, Mat> = n.dims().keys().map(|&b| (b, n.diff_at(b))).collect();
    let n_act: Vec<HashMap<Bideg, Mat>> =
        (0..t.n_gens()).map(|g| n.dims().keys().map(|&b| (b, n.action_at(g, b))).collect()).collect();

    let add = |src: (Bideg, usize), key: &Key, c: Q, diff: &mut HashMap<Bideg, Mat>| {
        if c.is_zero() {
            return;
        }
        let (tb, ti) = index[key];
        debug_assert_eq!(tb, (src.0 .0 + 1, src.0 .1));
        diff.get_mut(&src.0).expect("component").add_at(ti, src.1, &c);
    };

    for (key, _) in &order {
        let (mono, nb, i) = key;
        let src = index[key];
        let s_odd = mono.is_odd();
        let s_sign = q(if s_odd { -1 } else { 1 });
        // d_S (x) 1
        for (c, t2) in s.diff_monomial(mono) {
            add(src, &(t2, *nb, *i), c, &mut diff);
        }
        // (-1)^|s| s (x) d_N
        let dn = &n_diff[nb];
        let tnb = (nb.0 + 1, nb.1);
        for r in 0..dn.rows() {
            let c = dn.get(r, *i);
            if !c.is_zero() {
                add(src, &(mono.clone(), tnb, r), c * &s_sign, &mut diff);
            }
        }
        // sum_j f_j s (x) f_j^* n   (f_j odd in S, f_j^* even in T)
        for j in 0..s.n_odd() {
            let Some((sg, t2)) = s.mul_gen(j, mono) else { continue };
            let g = t.n_odd() + j;
            let a = &n_act[g][nb];
            let tnb = (nb.0 + t.gen_deg(g).0, nb.1 + t.gen_deg(g).1);
            for r in 0..a.rows() {
                let c = a.get(r, *i);
                if !c.is_zero() {
                    add(src, &(t2.clone(), tnb, r), c * q(sg), &mut diff);
                }
            }
        }
        // sum_k (-1)^|s| e_k s (x) xi_k n   (e_k even in S, xi_k odd in T)
        for k in 0..s.n_even() {
            let Some((sg, t2)) = s.mul_gen(s.n_odd() + k, mono) else { continue };
            let a = &n_act[k][nb];
            let tnb = (nb.0 + t.gen_deg(k).0, nb.1 + t.gen_deg(k).1);
            for r in 0..a.rows() {
                let c = a.get(r, *i);
                if !c.is_zero() {
                    add(src, &(t2.clone(), tnb, r), c * q(sg) * &s_sign, &mut diff);
                }
            }
        }
        // S acts on the left factor
        for (g, act) in acts.iter_mut().enumerate() {
            let Some((sg, t2)) = s.mul_gen(g, mono) else { continue };
            if let Some(&(tb, ti)) = index.get(&(t2, *nb, *i)) {
                act.get_mut(&src.0).expect("component").add_at(ti, src.1, &q(sg));
                debug_assert_eq!(tb.1, src.0 .1 - 2);
            }
        }
    }
    for (b, m) in diff {
        out.set_diff(b, m);
    }
    for (g, act) in acts.into_iter().enumerate() {
        for (b, m) in act {
            out.set_action(g, b, m);
        }
    }
    out.set_window(Window::new(Some(-cutoff), Some(cutoff)));
    Ok(out)
}
