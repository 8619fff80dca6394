//! Finite bigraded dg-modules over a [`GcAlgebra`].

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use super::algebra::{add_bideg, Bideg, GcAlgebra};
use super::linalg::{q, Coordinates, Echelon, Mat, Q};
use crate::poly::LaurentInt;

/// Range of internal degrees on which a (possibly truncated) module is
/// complete. `None` bounds are unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Window {
    pub lo: Option<i32>,
    pub hi: Option<i32>,
}

impl Window {
    pub const ALL: Window = Window { lo: None, hi: None };

    pub fn new(lo: Option<i32>, hi: Option<i32>) -> Self {
        Window { lo, hi }
    }

    pub fn contains(&self, q: i32) -> bool {
        self.lo.is_none_or(|l| q >= l) && self.hi.is_none_or(|h| q <= h)
    }

    fn shifted(self, m: i32) -> Window {
        Window { lo: self.lo.map(|l| l + m), hi: self.hi.map(|h| h + m) }
    }

    fn negated(self) -> Window {
        Window { lo: self.hi.map(|h| -h), hi: self.lo.map(|l| -l) }
    }
}

/// A bigraded dg-module: finite-dimensional components at bidegrees
/// `(p, q)`, a differential of bidegree `(1, 0)`, and one action matrix per
/// algebra generator.
#[derive(Clone, Debug)]
pub struct DgModule {
    alg: Arc<GcAlgebra>,
    dims: BTreeMap<Bideg, usize>,
    diff: BTreeMap<Bideg, Mat>,
    actions: Vec<BTreeMap<Bideg, Mat>>,
    window: Window,
}

fn parity(p: i32) -> i32 {
    p.rem_euclid(2)
}

fn sign(odd: bool) -> Q {
    q(if odd { -1 } else { 1 })
}

impl DgModule {
    pub fn new(alg: Arc<GcAlgebra>) -> Self {
        let n = alg.n_gens();
        DgModule { alg, dims: BTreeMap::new(), diff: BTreeMap::new(), actions: vec![BTreeMap::new(); n], window: Window::ALL }
    }

    pub fn zero(alg: Arc<GcAlgebra>) -> Self {
        Self::new(alg)
    }

    pub fn algebra(&self) -> &Arc<GcAlgebra> {
        &self.alg
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn set_window(&mut self, w: Window) {
        self.window = w;
    }

    pub fn add_component(&mut self, b: Bideg, dim: usize) {
        if dim > 0 {
            self.dims.insert(b, dim);
        }
    }

    pub fn dim(&self, b: Bideg) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Bideg, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Sets the differential out of `b`; `m` is `dim(b + (1,0)) x dim(b)`.
    pub fn set_diff(&mut self, b: Bideg, m: Mat) {
        assert_eq!((m.rows(), m.cols()), (self.dim((b.0 + 1, b.1)), self.dim(b)), "differential shape at {b:?}");
        if m.is_zero() {
            self.diff.remove(&b);
        } else {
            self.diff.insert(b, m);
        }
    }

    /// Sets the action of generator `g` out of `b`.
    pub fn set_action(&mut self, g: usize, b: Bideg, m: Mat) {
        let t = add_bideg(b, self.alg.gen_deg(g));
        assert_eq!((m.rows(), m.cols()), (self.dim(t), self.dim(b)), "action shape at {b:?}");
        if m.is_zero() {
            self.actions[g].remove(&b);
        } else {
            self.actions[g].insert(b, m);
        }
    }

    pub fn diff_at(&self, b: Bideg) -> Mat {
        self.diff.get(&b).cloned().unwrap_or_else(|| Mat::zeros(self.dim((b.0 + 1, b.1)), self.dim(b)))
    }

    pub fn action_at(&self, g: usize, b: Bideg) -> Mat {
        let t = add_bideg(b, self.alg.gen_deg(g));
        self.actions[g].get(&b).cloned().unwrap_or_else(|| Mat::zeros(self.dim(t), self.dim(b)))
    }

    /// Structural equality: same algebra, components, and matrices.
    pub fn same_as(&self, other: &DgModule) -> bool {
        *self.alg == *other.alg && self.dims == other.dims && self.diff == other.diff && self.actions == other.actions
    }

    /// `d^2 = 0` at every bidegree; returns the first failing bidegree.
    pub fn check_d_squared(&self) -> Result<usize, String> {
        let mut n = 0;
        for &b in self.dims.keys() {
            n += 1;
            if !self.diff_at((b.0 + 1, b.1)).mul(&self.diff_at(b)).is_zero() {
                return Err(format!("d^2 != 0 at {b:?}"));
            }
        }
        Ok(n)
    }

    /// `d(g m) = d(g) m + (-1)^|g| g d(m)` for every generator and bidegree.
    pub fn check_leibniz(&self) -> Result<usize, String> {
        let mut n = 0;
        for g in 0..self.alg.n_gens() {
            let gd = self.alg.gen_deg(g);
            let s = sign(self.alg.is_odd_gen(g));
            for &b in self.dims.keys() {
                n += 1;
                let t = add_bideg(b, gd);
                let lhs = self.diff_at(t).mul(&self.action_at(g, b));
                let mut rhs = self.action_at(g, (b.0 + 1, b.1)).mul(&self.diff_at(b)).scaled(&s);
                for (h, c) in self.alg.gen_diff(g) {
                    rhs = rhs.add(&self.action_at(h, b).scaled(&c));
                }
                if lhs != rhs {
                    return Err(format!("Leibniz fails for generator {g} at {b:?}"));
                }
            }
        }
        Ok(n)
    }

    /// `g h = (-1)^{|g||h|} h g`, and odd generators square to zero.
    pub fn check_commutation(&self) -> Result<usize, String> {
        let mut n = 0;
        let ng = self.alg.n_gens();
        for g in 0..ng {
            for h in g..ng {
                let both_odd = self.alg.is_odd_gen(g) && self.alg.is_odd_gen(h);
                for &b in self.dims.keys() {
                    n += 1;
                    let gh = self.action_at(g, add_bideg(b, self.alg.gen_deg(h))).mul(&self.action_at(h, b));
                    let hg = self.action_at(h, add_bideg(b, self.alg.gen_deg(g))).mul(&self.action_at(g, b));
                    let ok = if g == h {
                        !both_odd || gh.is_zero()
                    } else {
                        gh == hg.scaled(&sign(both_odd))
                    };
                    if !ok {
                        return Err(format!("generators {g}, {h} do not graded-commute at {b:?}"));
                    }
                }
            }
        }
        Ok(n)
    }

    /// All three structural checks.
    pub fn check_all(&self) -> Result<usize, String> {
        Ok(self.check_d_squared()? + self.check_leibniz()? + self.check_commutation()?)
    }

    /// `(M^vee)^{p,q} = (M^{-p,-q})^*` with `d(phi) = (-1)^{p+1} phi . d` and
    /// `(a phi)(m) = (-1)^{|a| p} phi(a m)`.
    pub fn dual(&self) -> DgModule {
        let mut out = DgModule::new(self.alg.clone());
        for (&(p, qq), &n) in &self.dims {
            out.add_component((-p, -qq), n);
        }
        for &(p, qq) in out.dims.clone().keys() {
            // d: (p, q) -> (p+1, q) is the transpose of d_M: (-p-1, -q) -> (-p, -q)
            let m = self.diff_at((-p - 1, -qq)).transpose().scaled(&sign(parity(p + 1) == 1));
            out.set_diff((p, qq), m);
            for g in 0..self.alg.n_gens() {
                let (ap, aq) = self.alg.gen_deg(g);
                let odd = self.alg.is_odd_gen(g) && parity(p) == 1;
                let m = self.action_at(g, (-p - ap, -qq - aq)).transpose().scaled(&sign(odd));
                out.set_action(g, (p, qq), m);
            }
        }
        out.window = self.window.negated();
        out
    }

    fn relabeled(&self, f: impl Fn(Bideg) -> Bideg) -> DgModule {
        let mut out = DgModule::new(self.alg.clone());
        out.dims = self.dims.iter().map(|(&b, &n)| (f(b), n)).collect();
        out.diff = self.diff.iter().map(|(&b, m)| (f(b), m.clone())).collect();
        out.actions = self.actions.iter().map(|a| a.iter().map(|(&b, m)| (f(b), m.clone())).collect()).collect();
        out.window = self.window;
        out
    }

    /// Internal twist `<m>`: the component at `(p, q)` moves to `(p, q + m)`.
    pub fn twist(&self, m: i32) -> DgModule {
        let mut out = self.relabeled(|(p, qq)| (p, qq + m));
        out.window = self.window.shifted(m);
        out
    }

    /// Cohomological shift `[m]`: the component at `(p, q)` moves to
    /// `(p - m, q)`; matrices are unchanged.
    pub fn shift(&self, m: i32) -> DgModule {
        self.relabeled(|(p, qq)| (p - m, qq))
    }

    /// Keeps internal degrees in `lo..=hi`; actions leaving the range are dropped.
    pub fn restrict_q(&self, lo: i32, hi: i32) -> DgModule {
        let keep = |b: &Bideg| (lo..=hi).contains(&b.1);
        let mut out = DgModule::new(self.alg.clone());
        out.dims = self.dims.iter().filter(|(b, _)| keep(b)).map(|(&b, &n)| (b, n)).collect();
        out.diff = self.diff.iter().filter(|(b, _)| keep(b)).map(|(&b, m)| (b, m.clone())).collect();
        out.actions = (0..self.alg.n_gens())
            .map(|g| {
                let gd = self.alg.gen_deg(g);
                self.actions[g]
                    .iter()
                    .filter(|(b, _)| keep(b) && keep(&add_bideg(**b, gd)))
                    .map(|(&b, m)| (b, m.clone()))
                    .collect()
            })
            .collect();
        out.window = Window::new(
            Some(self.window.lo.map_or(lo, |l| l.max(lo))),
            Some(self.window.hi.map_or(hi, |h| h.min(hi))),
        );
        out
    }

    pub fn direct_sum(&self, other: &DgModule) -> DgModule {
        assert_eq!(*self.alg, *other.alg, "direct sum over different algebras");
        let mut out = DgModule::new(self.alg.clone());
        let keys: BTreeSet<Bideg> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        for &b in &keys {
            out.add_component(b, self.dim(b) + other.dim(b));
        }
        let block = |a: &Mat, c: &Mat| {
            let mut m = Mat::zeros(a.rows() + c.rows(), a.cols() + c.cols());
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..c.rows() {
                for j in 0..c.cols() {
                    m.set(a.rows() + i, a.cols() + j, c.get(i, j).clone());
                }
            }
            m
        };
        for &b in &keys {
            out.set_diff(b, block(&self.diff_at(b), &other.diff_at(b)));
            for g in 0..self.alg.n_gens() {
                out.set_action(g, b, block(&self.action_at(g, b), &other.action_at(g, b)));
            }
        }
        out.window = Window::new(
            max_opt(self.window.lo, other.window.lo),
            min_opt(self.window.hi, other.window.hi),
        );
        out
    }

    /// Same components and differential, over another algebra with the same
    /// generator shape; generator `g` of `alg` acts as `sum c_h h` of `self`.
    pub fn transport(&self, alg: Arc<GcAlgebra>, images: &[Vec<(usize, Q)>]) -> DgModule {
        assert_eq!(images.len(), alg.n_gens(), "one image per generator");
        let mut out = DgModule::new(alg);
        out.dims = self.dims.clone();
        out.diff = self.diff.clone();
        out.window = self.window;
        for (g, img) in images.iter().enumerate() {
            for &b in self.dims.keys() {
                let t = add_bideg(b, out.alg.gen_deg(g));
                let mut m = Mat::zeros(self.dim(t), self.dim(b));
                for (h, c) in img {
                    assert_eq!(self.alg.gen_deg(*h), out.alg.gen_deg(g), "transport must preserve bidegrees");
                    m = m.add(&self.action_at(*h, b).scaled(c));
                }
                out.set_action(g, b, m);
            }
        }
        out
    }

    /// `sum_{p,q} (-1)^p dim M^{p,q} v^q`.
    pub fn euler_class(&self) -> LaurentInt {
        let mut out = LaurentInt::zero();
        for (&(p, qq), &n) in &self.dims {
            let c = if parity(p) == 0 { n as i64 } else { -(n as i64) };
            out = &out + &LaurentInt::monomial(c, qq);
        }
        out
    }

    /// Exact cohomology with the induced generator actions.
    pub fn cohomology(&self) -> Cohomology {
        let mut reps = BTreeMap::new();
        let mut coords = BTreeMap::new();
        let mut h = DgModule::new(self.alg.clone());
        h.window = self.window;
        for &b in self.dims.keys() {
            let n = self.dim(b);
            let cycles = self.diff_at(b).kernel();
            let boundaries = self.diff_at((b.0 - 1, b.1)).column_basis();
            let mut e = Echelon::new(n);
            for v in &boundaries {
                e.insert(v.clone());
            }
            let mut classes = Vec::new();
            for z in cycles {
                if e.insert(z.clone()) {
                    classes.push(z);
                }
            }
            if classes.is_empty() {
                continue;
            }
            let mut family = boundaries.clone();
            family.extend(classes.iter().cloned());
            coords.insert(b, (boundaries.len(), Coordinates::new(n, &family)));
            h.add_component(b, classes.len());
            reps.insert(b, classes);
        }
        let mut out = Cohomology { module: h, reps, coords };
        for g in 0..self.alg.n_gens() {
            let mut induced = Vec::new();
            for (&b, classes) in &out.reps {
                let t = add_bideg(b, self.alg.gen_deg(g));
                let a = self.action_at(g, b);
                let cols: Vec<Vec<Q>> = classes.iter().map(|z| out.class_of(t, &a.apply(z))).collect();
                induced.push((b, Mat::from_columns(out.module.dim(t), &cols)));
            }
            for (b, m) in induced {
                out.module.set_action(g, b, m);
            }
        }
        out
    }
}

fn max_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

/// Cohomology of a [`DgModule`] together with cycle representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Zero differential, induced actions.
    pub module: DgModule,
    reps: BTreeMap<Bideg, Vec<Vec<Q>>>,
    coords: BTreeMap<Bideg, (usize, Coordinates)>,
}

impl Cohomology {
    /// Representative cycles of the basis classes at `b`.
    pub fn representatives(&self, b: Bideg) -> &[Vec<Q>] {
        self.reps.get(&b).map_or(&[], Vec::as_slice)
    }

    /// Coordinates of the class of the cycle `z` at `b`.
    pub fn class_of(&self, b: Bideg, z: &[Q]) -> Vec<Q> {
        match self.coords.get(&b) {
            None => Vec::new(),
            Some((n_bound, c)) => c.of(z)[*n_bound..].to_vec(),
        }
    }

    pub fn dims(&self) -> &BTreeMap<Bideg, usize> {
        self.module.dims()
    }

    /// Whether the cohomology vanishes outside cohomological degree `p`.
    pub fn concentrated_in(&self, p: i32) -> bool {
        self.dims().keys().all(|b| b.0 == p)
    }

    /// Whether `z` at `b` is a boundary.
    pub fn is_boundary(&self, b: Bideg, z: &[Q]) -> bool {
        self.class_of(b, z).iter().all(Zero::is_zero)
    }
}
