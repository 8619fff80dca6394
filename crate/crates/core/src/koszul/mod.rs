//! Linear Koszul duality over a point with exact rational linear algebra.

pub mod algebra;
pub mod diagonal;
pub mod linalg;
pub mod module;
pub mod random;
pub mod setup;

use std::collections::HashMap;
use std::sync::Arc;

pub use algebra::{Bideg, GcAlgebra, Monomial};
pub use diagonal::{check_diagonal, DiagonalOutcome};
pub use linalg::{Mat, Q};
pub use module::{Cohomology, DgModule, Window};
pub use random::random_complex;
pub use setup::{kappa_point, KoszulSetup};

use linalg::q;

/// The algebra as a module over itself, keeping monomials with at most
/// `max_weight` factors. Products leaving the truncation are dropped.
pub fn free_module(alg: &Arc<GcAlgebra>, max_weight: usize) -> DgModule {
    let basis = alg.basis_by_deg(max_weight);
    let mut index: HashMap<Monomial, (Bideg, usize)> = HashMap::new();
    let mut m = DgModule::new(alg.clone());
    for (&b, monos) in &basis {
        m.add_component(b, monos.len());
        for (i, mono) in monos.iter().enumerate() {
            index.insert(mono.clone(), (b, i));
        }
    }
    for (&b, monos) in &basis {
        let mut d = m.diff_at(b);
        for (i, mono) in monos.iter().enumerate() {
            for (c, t) in alg.diff_monomial(mono) {
                let (_, j) = index[&t];
                d.add_at(j, i, &c);
            }
        }
        m.set_diff(b, d);
        for g in 0..alg.n_gens() {
            let mut a = m.action_at(g, b);
            for (i, mono) in monos.iter().enumerate() {
                if mono.weight() == max_weight {
                    continue;
                }
                if let Some((s, t)) = alg.mul_gen(g, mono) {
                    a.add_at(index[&t].1, i, &q(s));
                }
            }
            m.set_action(g, b, a);
        }
    }
    let (qo, qe) = (alg.odd_deg().1, alg.even_deg().1);
    let bound = (max_weight as i32) * qo.abs().min(qe.abs());
    let window = if alg.n_gens() == 0 || qo == 0 || qe == 0 || qo.signum() != qe.signum() {
        Window::ALL
    } else if qo > 0 {
        Window::new(None, Some(bound))
    } else {
        Window::new(Some(-bound), None)
    };
    m.set_window(window);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_module_over_exterior_algebra() {
        let alg = Arc::new(GcAlgebra::new((1, -2), (2, -2), Mat::zeros(0, 2)));
        let m = free_module(&alg, 3);
        assert_eq!(m.total_dim(), 4);
        assert!(m.check_all().is_ok());
        assert_eq!(m.window(), Window::new(Some(-6), None));
    }
}
