//! Random bounded complexes with known cohomology.

use std::sync::Arc;

use rand::Rng;

use super::algebra::GcAlgebra;
use super::linalg::{q, Mat};
use super::module::DgModule;

/// A random complex over the ground field with component dimensions at most
/// `max_dim`, spread over a few internal degrees.
///
/// Each internal degree carries a split complex with randomly chosen ranks,
/// conjugated by random unimodular integer matrices.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> DgModule {
    let mut m = DgModule::new(Arc::new(GcAlgebra::trivial()));
    let n_slices = rng.gen_range(1..=3);
    let mut qs: Vec<i32> = (-3..=3).collect();
    for _ in 0..n_slices {
        let qq = qs.swap_remove(rng.gen_range(0..qs.len()));
        let p0: i32 = rng.gen_range(-2..=2);
        let len = rng.gen_range(1..=4);
        let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
        let mut ranks = vec![0usize; len];
        for i in 0..len.saturating_sub(1) {
            let prev = if i == 0 { 0 } else { ranks[i - 1] };
            let cap = (dims[i] - prev).min(dims[i + 1]);
            ranks[i] = rng.gen_range(0..=cap);
        }
        let conj: Vec<(Mat, Mat)> = dims.iter().map(|&n| unimodular(rng, n)).collect();
        for (i, &n) in dims.iter().enumerate() {
            m.add_component((p0 + i as i32, qq), n);
        }
        for i in 0..len.saturating_sub(1) {
            let mut d = Mat::zeros(dims[i + 1], dims[i]);
            for t in 0..ranks[i] {
                d.set(t, dims[i] - ranks[i] + t, q(1));
            }
            let d = conj[i + 1].0.mul(&d).mul(&conj[i].1);
            if dims[i] > 0 && dims[i + 1] > 0 {
                m.set_diff((p0 + i as i32, qq), d);
            }
        }
    }
    m
}

/// A random product of elementary integer matrices and its inverse.
fn unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Mat, Mat) {
    let mut a = Mat::identity(n);
    let mut inv = Mat::identity(n);
    if n < 2 {
        return (a, inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = Mat::identity(n);
        e.set(i, j, q(c));
        let mut e_inv = Mat::identity(n);
        e_inv.set(i, j, q(-c));
        a = e.mul(&a);
        inv = inv.mul(&e_inv);
    }
    (a, inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..4 {
            let (a, b) = unimodular(&mut rng, n);
            assert_eq!(a.mul(&b), Mat::identity(n));
        }
    }

    #[test]
    fn random_complexes_are_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let m = random_complex(&mut rng, 3);
            assert!(m.check_d_squared().is_ok());
            assert!(m.dims().values().all(|&d| d <= 3));
        }
    }
}
