//! Deterministic sampling of valid random instances: chain complexes,
//! classification tuples, subcomplexes, and small subspace families. Test
//! support; every generator takes an explicit RNG so runs are reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bridge::CsgTuple;
use crate::doldkan::ChainComplex3;
use crate::exactla::{rat, Bilin, Mat, Rat, Subspace};

/// Uniform entry in `{-bound..=bound}`.
fn small_entry(rng: &mut impl Rng, bound: i64) -> Rat {
    rat(rng.gen_range(-bound..=bound))
}

pub fn random_mat(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Mat {
    Mat::from_fn(rows, cols, |_, _| small_entry(rng, bound))
}

/// All vectors in `{-bound..=bound}^n`, in a fixed order.
fn integer_vectors(n: usize, bound: i64) -> Vec<Vec<Rat>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for e in -bound..=bound {
                let mut w = v.clone();
                w.push(rat(e));
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// A random valid 3-term chain complex with all entries in
/// `{-bound..=bound}`: `d1` is sampled freely and the columns of `d2` are
/// drawn from the small integer vectors in its kernel, so `d1 d2 = 0` holds
/// exactly and entry bounds are respected.
pub fn random_complex(
    rng: &mut impl Rng,
    dim_w2: usize,
    dim_w1: usize,
    dim_w0: usize,
    bound: i64,
) -> ChainComplex3 {
    let d1 = random_mat(rng, dim_w0, dim_w1, bound);
    let candidates: Vec<Vec<Rat>> = integer_vectors(dim_w1, bound)
        .into_iter()
        .filter(|v| d1.apply(v).iter().all(num_traits::Zero::is_zero))
        .collect();
    let d2 = Mat::from_fn(dim_w1, dim_w2, |_, _| Rat::from_integer(0.into()));
    let mut d2 = d2;
    for j in 0..dim_w2 {
        let col = candidates.choose(rng).expect("zero vector is always a candidate");
        for i in 0..dim_w1 {
            d2[(i, j)] = col[i].clone();
        }
    }
    ChainComplex3::new(dim_w2, dim_w1, dim_w0, d2, d1).expect("columns lie in ker d1")
}

/// A random symmetric invertible pairing. Mixes plain symmetric samples with
/// hyperbolic forms conjugated by a random matrix, so that isotropic vectors
/// exist often enough for interesting boundaries.
pub fn random_pairing(rng: &mut impl Rng, n: usize, bound: i64) -> Bilin {
    loop {
        if n.is_multiple_of(2) && rng.gen_bool(0.5) {
            let half = n / 2;
            let z = Mat::zeros(half, half);
            let id = Mat::identity(half);
            let h = Mat::from_blocks(&[vec![&z, &id], vec![&id, &z]]);
            let t = random_mat(rng, n, n, bound);
            if t.rank() == n {
                return Bilin::new(&(&t.transpose() * &h) * &t);
            }
        } else {
            let a = random_mat(rng, n, n, bound);
            let sym = &a + &a.transpose();
            if sym.rank() == n {
                return Bilin::new(sym);
            }
        }
    }
}

/// A random valid tuple: the rows of the boundary are drawn greedily from
/// the small integer vectors that are null and pairwise orthogonal under
/// `g^{-1}`, which is exactly the isotropy constraint.
pub fn random_tuple(
    rng: &mut impl Rng,
    dim_w1: usize,
    dim_w0: usize,
    bound: i64,
    skew_r: bool,
) -> CsgTuple {
    let pairing = random_pairing(rng, dim_w1, bound);
    let g_inv = pairing.gram().inverse().expect("pairing is invertible");
    let mut candidates: Vec<Vec<Rat>> = integer_vectors(dim_w1, bound)
        .into_iter()
        .filter(|v| {
            let gv = g_inv.apply(v);
            v.iter().zip(&gv).map(|(a, b)| a * b).sum::<Rat>() == rat(0)
        })
        .collect();
    candidates.shuffle(rng);

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for cand in candidates {
        if rows.len() == dim_w0 {
            break;
        }
        let compatible = rows.iter().all(|r| {
            let gc = g_inv.apply(&cand);
            r.iter().zip(&gc).map(|(a, b)| a * b).sum::<Rat>() == rat(0)
        });
        if compatible {
            rows.push(cand);
        }
    }
    while rows.len() < dim_w0 {
        rows.push(vec![rat(0); dim_w1]);
    }
    let boundary = Mat::from_fn(dim_w0, dim_w1, |i, j| rows[i][j].clone());

    let r = if skew_r {
        let a = random_mat(rng, dim_w1, dim_w1, bound);
        Bilin::new(&a - &a.transpose())
    } else {
        Bilin::zero(dim_w1, dim_w1)
    };
    CsgTuple::new(pairing, boundary, r).expect("construction satisfies the invariants")
}

/// A random subcomplex of `c`: `U2` is a random span, `U1` adds the image of
/// `d2` to another random span, and `U0` likewise through `d1`, so closure
/// holds by construction.
pub fn random_subcomplex(rng: &mut impl Rng, c: &ChainComplex3, bound: i64) -> crate::dirac::Subcomplex {
    let k2 = rng.gen_range(0..=c.dim_w2());
    let u2 = Subspace::span(c.dim_w2(), &random_mat(rng, c.dim_w2(), k2, bound)).expect("ambient rows");
    let k1 = rng.gen_range(0..=c.dim_w1());
    let extra1 = random_mat(rng, c.dim_w1(), k1, bound);
    let u1 = Subspace::span(c.dim_w1(), &(c.d2() * u2.basis()).hstack(&extra1)).expect("ambient rows");
    let k0 = rng.gen_range(0..=c.dim_w0());
    let extra0 = random_mat(rng, c.dim_w0(), k0, bound);
    let u0 = Subspace::span(c.dim_w0(), &(c.d1() * u1.basis()).hstack(&extra0)).expect("ambient rows");
    crate::dirac::make_subcomplex(u2, u1, u0, c).expect("closure holds by construction")
}

/// The graph `{(v, b v)}` of a linear map `W0-part -> dual part` inside the
/// standard `Q^n + (Q^n)*`; for skew `b` these are constant Dirac structures
/// of the standard model.
pub fn graph_subspace(b: &Mat) -> Subspace {
    let n = b.rows();
    let id = Mat::identity(n);
    let basis = Mat::from_blocks(&[vec![&id], vec![b]]);
    Subspace::span(2 * n, &basis).expect("ambient rows")
}

/// All skew integer 2x2 matrices with entries in `{-bound..=bound}`.
pub fn skew_2x2_matrices(bound: i64) -> Vec<Mat> {
    // A 2x2 skew matrix is determined by one off-diagonal entry; keep the
    // full entry grid anyway so the enumeration reads like the search space.
    let mut out = Vec::new();
    for e in -bound..=bound {
        let mut m = Mat::zeros(2, 2);
        m[(0, 1)] = rat(e);
        m[(1, 0)] = rat(-e);
        out.push(m);
    }
    out
}

/// All coordinate subspaces of `Q^n` (spans of subsets of basis vectors).
pub fn coordinate_subspaces(n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let cols: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let basis = Mat::from_fn(n, cols.len(), |i, j| {
            if cols[j] == i {
                rat(1)
            } else {
                rat(0)
            }
        });
        out.push(Subspace::span(n, &basis).expect("ambient rows"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complex_is_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let c = random_complex(&mut rng, 3, 4, 2, 2);
            assert!((c.d1() * c.d2()).is_zero());
            for i in 0..c.d2().rows() {
                for j in 0..c.d2().cols() {
                    assert!(c.d2()[(i, j)].numer().magnitude() <= &2u32.into());
                }
            }
        }
    }

    #[test]
    fn random_tuple_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let t = random_tuple(&mut rng, 4, 2, 2, true);
            assert!(t.pairing().is_symmetric());
            assert!(t.r().is_skew());
        }
    }

    #[test]
    fn skew_graphs_are_isotropic_in_standard_model() {
        let e = crate::bridge::tuple_to_courant(&crate::bridge::standard_tuple(2)).unwrap();
        for b in skew_2x2_matrices(1) {
            let u = graph_subspace(&b);
            assert!(crate::dirac::is_constant_dirac(&u, &e).unwrap());
        }
    }
}
