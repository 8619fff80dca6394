//! The diagonal check: `kappa(O_{Delta F}) = O_{Delta F^perp}` for a
//! subspace `F` of `V`, over the point.

use std::sync::Arc;

use num_traits::Zero;
use serde_json::json;

use super::algebra::{Bideg, GcAlgebra};
use super::linalg::{q, Echelon, Mat, Q};
use super::module::{DgModule, Window};
use super::setup::{kappa_point, unit, KoszulSetup};
use crate::error::{Error, Result};
use crate::poly::LaurentInt;
use crate::report::{Check, Report, Tally};

/// Largest supported `dim V`.
pub const MAX_DIM_V: usize = 4;

/// Report plus per-bidegree dimension tables.
#[derive(Clone, Debug)]
pub struct DiagonalOutcome {
    pub report: Report,
    pub tables: serde_json::Value,
}

impl DiagonalOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        let mut j = self.report.to_json();
        j["tables"] = self.tables.clone();
        j
    }
}

/// Basis of the test subspace `F`: the first `dim_f` of
/// `e_0 + e_1, e_1 + e_2, ..., e_{n-2} + e_{n-1}, e_{n-1}`.
pub fn subspace_basis(dim_v: usize, dim_f: usize) -> Vec<Vec<Q>> {
    (0..dim_f)
        .map(|i| {
            let mut b = unit(dim_v, i);
            if i + 1 < dim_v {
                b[i + 1] = q(1);
            }
            b
        })
        .collect()
}

fn concat(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().chain(b).cloned().collect()
}

/// `E = V x V`, `F1 = Delta V`, `F2 = F x F`, with `F1^perp` spanned by
/// `(eps_k, -eps_k)`.
pub fn diagonal_setup(dim_v: usize, f: &[Vec<Q>]) -> Result<KoszulSetup> {
    let zero = vec![Q::zero(); dim_v];
    let f1 = (0..dim_v).map(|i| concat(&unit(dim_v, i), &unit(dim_v, i))).collect();
    let mut f2: Vec<Vec<Q>> = f.iter().map(|b| concat(b, &zero)).collect();
    f2.extend(f.iter().map(|b| concat(&zero, b)));
    let perp = (0..dim_v).map(|k| concat(&unit(dim_v, k), &unit(dim_v, k).iter().map(|x| -x).collect::<Vec<_>>())).collect();
    KoszulSetup::with_perp(2 * dim_v, f1, f2, perp)
}

/// A polynomial ring in `n_vars` variables of internal degree `step`,
/// in cohomological degree 0, truncated at `max_weight`. Returns the
/// module over `alg` (actions unset) and the monomial index.
fn polynomial_module(alg: &Arc<GcAlgebra>, n_vars: usize, step: i32, max_weight: usize) -> (DgModule, GcAlgebra) {
    let shape = GcAlgebra::new((-1, step), (0, step), Mat::zeros(n_vars, 0));
    let mut m = DgModule::new(alg.clone());
    for w in 0..=max_weight {
        m.add_component((0, step * w as i32), shape.monomials(w).len());
    }
    let bound = step * max_weight as i32;
    m.set_window(if step > 0 { Window::new(None, Some(bound)) } else { Window::new(Some(bound), None) });
    (m, shape)
}

/// Multiplication by `sum_l c_l u_l` on the truncated polynomial module.
fn set_linear_action(m: &mut DgModule, shape: &GcAlgebra, g: usize, coeffs: &[Q], step: i32, max_weight: usize) {
    for w in 0..max_weight {
        let src = shape.monomials(w);
        let tgt = shape.monomials(w + 1);
        let mut a = Mat::zeros(tgt.len(), src.len());
        for (i, mono) in src.iter().enumerate() {
            for (l, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (_, t) = shape.mul_gen(l, mono).expect("even generator");
                let j = tgt.iter().position(|x| *x == t).expect("monomial");
                a.add_at(j, i, c);
            }
        }
        m.set_action(g, (0, step * w as i32), a);
    }
}

/// `O_{Delta F} = Sym(F^vee)` as a module over `T`: both copies of `F^vee`
/// act by the same variable, `V^*` acts by zero.
pub fn structure_module(setup: &KoszulSetup, dim_f: usize, max_weight: usize) -> DgModule {
    let t = setup.t_alg();
    let (mut m, shape) = polynomial_module(t, dim_f, 2, max_weight);
    for j in 0..2 * dim_f {
        let mut c = vec![Q::zero(); dim_f];
        c[j % dim_f] = q(1);
        set_linear_action(&mut m, &shape, t.n_odd() + j, &c, 2, max_weight);
    }
    m
}

/// The algebra `R` for the product setup after applying `Xi`: the
/// differential is `-eps_k(b_i)` on both copies.
pub fn xi_algebra(f: &[Vec<Q>], dim_v: usize) -> GcAlgebra {
    let r = f.len();
    let mut d = Mat::zeros(dim_v, 2 * r);
    for k in 0..dim_v {
        for j in 0..2 * r {
            d.set(k, j, -f[j % r][k].clone());
        }
    }
    GcAlgebra::new((-1, -2), (0, -2), d)
}

/// Generator images of `Xi`: odd generators of the second copy of `F` are
/// negated, everything else is fixed.
fn xi_images(r: usize, dim_v: usize) -> Vec<Vec<(usize, Q)>> {
    (0..2 * r + dim_v).map(|g| vec![(g, q(if g >= r && g < 2 * r { -1 } else { 1 }))]).collect()
}

/// Standard basis vectors completing `f` to a basis of `V`.
fn complement(dim_v: usize, f: &[Vec<Q>]) -> Vec<usize> {
    let mut e = Echelon::new(dim_v);
    for b in f {
        e.insert(b.clone());
    }
    (0..dim_v).filter(|&i| e.insert(unit(dim_v, i))).collect()
}

/// `O_{Delta F^perp} = Sym(V/F)` in internal degrees `-2k` over the
/// algebra `alg` from [`xi_algebra`]: `e_k` acts by its image in `V/F`,
/// odd generators act by zero. `V/F` has the basis of the complement vectors.
pub fn model_module(alg: &Arc<GcAlgebra>, dim_v: usize, f: &[Vec<Q>], max_weight: usize) -> DgModule {
    let comp = complement(dim_v, f);
    let mut cols = f.to_vec();
    cols.extend(comp.iter().map(|&i| unit(dim_v, i)));
    let inv = Mat::from_columns(dim_v, &cols).inverse().expect("F plus complement is a basis");
    let (mut m, shape) = polynomial_module(alg, comp.len(), -2, max_weight);
    for k in 0..dim_v {
        let c: Vec<Q> = (0..comp.len()).map(|l| inv.get(f.len() + l, k).clone()).collect();
        set_linear_action(&mut m, &shape, alg.n_odd() + k, &c, -2, max_weight);
    }
    m
}

fn table(m: &DgModule) -> serde_json::Value {
    m.dims().iter().map(|(&(p, qq), &d)| json!({"p": p, "q": qq, "dim": d})).collect()
}

fn result_check(name: &str, r: std::result::Result<usize, String>) -> Check {
    match r {
        Ok(n) => Check { name: name.into(), pass: true, count: n, witness: None },
        Err(w) => Check { name: name.into(), pass: false, count: 1, witness: Some(w) },
    }
}

/// The trivial-action acyclic module `k -> k` at internal degree `qq`.
fn acyclic_pair(alg: &Arc<GcAlgebra>, qq: i32) -> DgModule {
    let mut m = DgModule::new(alg.clone());
    m.add_component((0, qq), 1);
    m.add_component((1, qq), 1);
    m.set_diff((0, qq), Mat::identity(1));
    m
}

/// `E_S(v) * E_M(-v^-1)` truncated to `[-cutoff, cutoff]`.
pub fn predicted_euler(setup: &KoszulSetup, m: &DgModule, cutoff: i32) -> LaurentInt {
    let top = m.dims().keys().map(|b| -b.1).max().unwrap_or(0).max(0);
    let weight = ((top + cutoff) / 2 + 1) as usize;
    let es = setup.s_euler_class(weight);
    let em = m.euler_class().eval_negate_v().invert_v();
    (&es * &em).truncate(-cutoff, cutoff)
}

/// Runs the diagonal check for `F` of dimension `dim_f` inside `V` of
/// dimension `dim_v`, with `O_{Delta F}` twisted by `<twist>`.
pub fn check_diagonal(dim_v: usize, dim_f: usize, cutoff: i32, twist: i32) -> Result<DiagonalOutcome> {
    if dim_v == 0 || dim_v > MAX_DIM_V {
        return Err(Error::InvalidOption(format!("dimV must be in 1..={MAX_DIM_V}")));
    }
    if dim_f > dim_v {
        return Err(Error::InvalidSubspace(format!("dim F = {dim_f} exceeds dim V = {dim_v}")));
    }
    if cutoff < 0 {
        return Err(Error::InvalidOption("cutoff must be nonnegative".into()));
    }
    if twist.abs() > cutoff {
        return Err(Error::InvalidOption("|twist| must not exceed the cutoff".into()));
    }
    let f = subspace_basis(dim_v, dim_f);
    let setup = diagonal_setup(dim_v, &f)?;
    let base_weight = ((cutoff + 2 + twist.abs()) / 2 + 1) as usize;
    let o = structure_module(&setup, dim_f, base_weight);
    let m = o.twist(twist);
    let mut report = Report::new("koszul");

    report.push(result_check("O_DeltaF is a T-module", m.check_all()));
    let k = kappa_point(&setup, &m, cutoff)?;
    report.push(result_check("kappa: d^2 = 0", k.check_d_squared()));
    report.push(result_check("kappa: R-module structure", k.check_leibniz().and_then(|a| Ok(a + k.check_commutation()?))));

    let r_delta = Arc::new(xi_algebra(&f, dim_v));
    let kx = k.transport(r_delta.clone(), &xi_images(dim_f, dim_v));
    report.push(result_check("Xi: R_Delta-module structure", kx.check_all()));
    let h = kx.cohomology();

    let p0 = -twist;
    let mut t = Tally::new("(a) cohomology concentrated in one degree");
    for (&b, &d) in h.dims() {
        t.record(b.0 == p0, || format!("H^{:?} has dimension {d}, expected only p = {p0}", b));
    }
    report.push(t.finish());

    let model_weight = ((cutoff + twist.abs()) / 2 + 1) as usize;
    let model = model_module(&r_delta, dim_v, &f, model_weight).shift(twist).twist(-twist).restrict_q(-cutoff, cutoff);
    report.push(result_check("model is an R_Delta-module", model.check_all()));
    let mut t = Tally::new("(b) dimensions match the model");
    let keys: std::collections::BTreeSet<Bideg> = h.dims().keys().chain(model.dims().keys()).copied().collect();
    for b in keys {
        let (x, y) = (h.module.dim(b), model.dim(b));
        t.record(x == y, || format!("at {b:?}: kappa has {x}, model has {y}"));
    }
    report.push(t.finish());
    report.push(iso_check(&h.module, &model, &f, dim_v, (p0, -twist)));

    // shift rule
    let wide = kappa_point(&setup, &m, cutoff + 2)?;
    let mut t = Tally::new("shift rule kappa(M<m>) = kappa(M)[m]<-m>");
    for s in -2..=2 {
        let lhs = kappa_point(&setup, &m.twist(s), cutoff)?;
        let rhs = wide.shift(s).twist(-s).restrict_q(-cutoff, cutoff);
        t.record(lhs.same_as(&rhs), || format!("m = {s}"));
    }
    report.push(t.finish());

    // Euler classes
    let mut t = Tally::new("Euler class of kappa(M) from the class of M");
    let e = k.euler_class();
    let pred = predicted_euler(&setup, &m, cutoff);
    t.record(e == pred, || format!("got {e}, predicted {pred}"));
    t.record(e == h.module.euler_class(), || "Euler class changes under cohomology".into());
    report.push(t.finish());
    let mut t = Tally::new("Euler class of kappa(M) depends only on the class of M");
    for qq in [0, 2] {
        let m2 = m.direct_sum(&acyclic_pair(setup.t_alg(), qq));
        let k2 = kappa_point(&setup, &m2, cutoff)?;
        let e2 = k2.euler_class();
        t.record(e2 == e, || format!("adding an acyclic pair at q = {qq} changes {e} to {e2}"));
    }
    report.push(t.finish());

    let tables = json!({
        "dimV": dim_v,
        "dimF": dim_f,
        "cutoff": cutoff,
        "twist": twist,
        "kappa": table(&k),
        "cohomology": table(&h.module),
        "model": table(&model),
    });
    Ok(DiagonalOutcome { report, tables })
}

/// `phi(u) = u . g` for the generator class `g` at `base`, with the
/// variables of `V/F` lifted to the complement generators.
fn iso_check(h: &DgModule, model: &DgModule, f: &[Vec<Q>], dim_v: usize, base: Bideg) -> Check {
    let name = "(c) isomorphism with the model";
    let fail = |w: String| Check { name: name.into(), pass: false, count: 1, witness: Some(w) };
    if h.dim(base) != 1 {
        return fail(format!("H at {base:?} has dimension {}", h.dim(base)));
    }
    let alg = h.algebra().clone();
    let comp = complement(dim_v, f);
    let shape = GcAlgebra::new((-1, -2), (0, -2), Mat::zeros(comp.len(), 0));
    // phi as one matrix per model component
    let mut phi: std::collections::BTreeMap<Bideg, Mat> = Default::default();
    for &b in model.dims().keys() {
        let w = ((base.1 - b.1) / 2) as usize;
        let monos = shape.monomials(w);
        let target = (base.0, b.1);
        let mut cols = Vec::new();
        for mono in &monos {
            let mut vec = vec![q(1)];
            let mut cur = base;
            for (l, &e) in mono.even.iter().enumerate() {
                for _ in 0..e {
                    let g = alg.n_odd() + comp[l];
                    vec = h.action_at(g, cur).apply(&vec);
                    cur = (cur.0 + alg.gen_deg(g).0, cur.1 + alg.gen_deg(g).1);
                }
            }
            debug_assert_eq!(cur, target);
            cols.push(vec);
        }
        let mat = Mat::from_columns(h.dim(target), &cols);
        if mat.rows() != mat.cols() || mat.rank() != mat.cols() {
            return fail(format!("phi is not bijective at {b:?}"));
        }
        phi.insert(b, mat);
    }
    let mut t = Tally::new(name);
    for (&b, pm) in &phi {
        for g in 0..alg.n_gens() {
            let tb = (b.0 + alg.gen_deg(g).0, b.1 + alg.gen_deg(g).1);
            let lhs = h.action_at(g, b).mul(pm);
            let rhs = match phi.get(&tb) {
                Some(pt) => pt.mul(&model.action_at(g, b)),
                None => Mat::zeros(h.dim(tb), pm.cols()),
            };
            t.record(lhs == rhs, || format!("generator {g} at {b:?}"));
        }
    }
    t.finish()
}
