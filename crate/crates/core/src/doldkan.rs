//! Linear 2-groupoids and 3-term chain complexes: realization, extraction,
//! simplicial identities, horn maps, and horn filling.
//!
//! A linear 2-groupoid is stored through level 3 only. The higher levels are
//! determined by the low-degree data, and nothing in this crate reads them.

use crate::error::{Error, Result};
use crate::exactla::{kernel, Mat, Rat, Subspace};
use crate::report::Report;

/// A 3-term chain complex `W2 -> W1 -> W0` with `d1 . d2 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex3 {
    dim_w2: usize,
    dim_w1: usize,
    dim_w0: usize,
    d2: Mat,
    d1: Mat,
}

impl ChainComplex3 {
    pub fn new(dim_w2: usize, dim_w1: usize, dim_w0: usize, d2: Mat, d1: Mat) -> Result<Self> {
        if d2.rows() != dim_w1 || d2.cols() != dim_w2 {
            return Err(Error::DimensionMismatch(format!(
                "d2 is {}x{}, expected {}x{}",
                d2.rows(),
                d2.cols(),
                dim_w1,
                dim_w2
            )));
        }
        if d1.rows() != dim_w0 || d1.cols() != dim_w1 {
            return Err(Error::DimensionMismatch(format!(
                "d1 is {}x{}, expected {}x{}",
                d1.rows(),
                d1.cols(),
                dim_w0,
                dim_w1
            )));
        }
        if !(&d1 * &d2).is_zero() {
            return Err(Error::NotAComplex);
        }
        Ok(ChainComplex3 {
            dim_w2,
            dim_w1,
            dim_w0,
            d2,
            d1,
        })
    }

    pub fn zero(dim_w2: usize, dim_w1: usize, dim_w0: usize) -> Self {
        ChainComplex3 {
            dim_w2,
            dim_w1,
            dim_w0,
            d2: Mat::zeros(dim_w1, dim_w2),
            d1: Mat::zeros(dim_w0, dim_w1),
        }
    }

    pub fn dim_w2(&self) -> usize {
        self.dim_w2
    }

    pub fn dim_w1(&self) -> usize {
        self.dim_w1
    }

    pub fn dim_w0(&self) -> usize {
        self.dim_w0
    }

    pub fn d2(&self) -> &Mat {
        &self.d2
    }

    pub fn d1(&self) -> &Mat {
        &self.d1
    }
}

/// A linear 2-groupoid, stored through simplicial level 3: the dimensions of
/// `V0..V3` plus all face and degeneracy matrices between those levels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearTwoGroupoid {
    dims: [usize; 4],
    faces1: Vec<Mat>,
    faces2: Vec<Mat>,
    faces3: Vec<Mat>,
    degens0: Vec<Mat>,
    degens1: Vec<Mat>,
    degens2: Vec<Mat>,
}

impl LinearTwoGroupoid {
    /// Builds from raw matrices, checking shapes only. Whether the simplicial
    /// identities and Kan conditions hold is reported by [`verify_simplicial`]
    /// and [`kan_report`]; this constructor deliberately accepts broken data
    /// so that those reports have something to say.
    pub fn from_parts(
        dims: [usize; 4],
        faces1: Vec<Mat>,
        faces2: Vec<Mat>,
        faces3: Vec<Mat>,
        degens0: Vec<Mat>,
        degens1: Vec<Mat>,
        degens2: Vec<Mat>,
    ) -> Result<Self> {
        let expect = |mats: &[Mat], count: usize, rows: usize, cols: usize, what: &str| -> Result<()> {
            if mats.len() != count {
                return Err(Error::DimensionMismatch(format!(
                    "{what}: expected {count} maps, got {}",
                    mats.len()
                )));
            }
            for (i, m) in mats.iter().enumerate() {
                if m.rows() != rows || m.cols() != cols {
                    return Err(Error::DimensionMismatch(format!(
                        "{what}[{i}] is {}x{}, expected {rows}x{cols}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            Ok(())
        };
        expect(&faces1, 2, dims[0], dims[1], "f^1")?;
        expect(&faces2, 3, dims[1], dims[2], "f^2")?;
        expect(&faces3, 4, dims[2], dims[3], "f^3")?;
        expect(&degens0, 1, dims[1], dims[0], "sigma^0")?;
        expect(&degens1, 2, dims[2], dims[1], "sigma^1")?;
        expect(&degens2, 3, dims[3], dims[2], "sigma^2")?;
        Ok(LinearTwoGroupoid {
            dims,
            faces1,
            faces2,
            faces3,
            degens0,
            degens1,
            degens2,
        })
    }

    pub fn dim_v(&self, q: usize) -> usize {
        self.dims[q]
    }

    /// Face map `f_i^q : V_q -> V_{q-1}` for `1 <= q <= 3`, `0 <= i <= q`.
    pub fn face(&self, q: usize, i: usize) -> &Mat {
        match q {
            1 => &self.faces1[i],
            2 => &self.faces2[i],
            3 => &self.faces3[i],
            _ => panic!("face level {q} not stored"),
        }
    }

    /// Degeneracy map `sigma_i^q : V_q -> V_{q+1}` for `0 <= q <= 2`, `0 <= i <= q`.
    pub fn degeneracy(&self, q: usize, i: usize) -> &Mat {
        match q {
            0 => &self.degens0[i],
            1 => &self.degens1[i],
            2 => &self.degens2[i],
            _ => panic!("degeneracy level {q} not stored"),
        }
    }

    /// Replaces one face matrix; used to study broken groupoids in tests.
    pub fn with_face(&self, q: usize, i: usize, m: Mat) -> Self {
        let mut g = self.clone();
        let slot = match q {
            1 => &mut g.faces1[i],
            2 => &mut g.faces2[i],
            3 => &mut g.faces3[i],
            _ => panic!("face level {q} not stored"),
        };
        assert_eq!((m.rows(), m.cols()), (slot.rows(), slot.cols()), "shape must match");
        *slot = m;
        g
    }

    /// True when all simplicial identities and all Kan conditions hold.
    pub fn is_valid(&self) -> bool {
        verify_simplicial(self).all_passed() && kan_report(self).all_passed()
    }
}

/// Realizes a 3-term chain complex as a linear 2-groupoid with
/// `V1 = W1 + W0`, `V2 = W2 + W1 + W1 + W0`, `V3 = W2^3 + W1^3 + W0`
/// and the explicit face and degeneracy matrices in those coordinates.
pub fn realize(c: &ChainComplex3) -> LinearTwoGroupoid {
    let (n2, n1, n0) = (c.dim_w2, c.dim_w1, c.dim_w0);
    let i2 = Mat::identity(n2);
    let i1 = Mat::identity(n1);
    let i0 = Mat::identity(n0);
    let z = |r: usize, c: usize| Mat::zeros(r, c);
    let d2 = &c.d2;
    let d1 = &c.d1;
    let nd1 = -d1;
    let ni1 = -&i1;
    let ni2 = -&i2;

    // Level 1 <-> 0.
    let f01 = Mat::from_blocks(&[vec![&z(n0, n1), &i0]]);
    let f11 = Mat::from_blocks(&[vec![&nd1, &i0]]);
    let s00 = Mat::from_blocks(&[vec![&z(n1, n0)], vec![&i0]]);

    // Level 2 <-> 1, in coordinates (w2, w1, w1', w0).
    let f02 = Mat::from_blocks(&[
        vec![&z(n1, n2), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let f12 = Mat::from_blocks(&[
        vec![&z(n1, n2), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let f22 = Mat::from_blocks(&[
        vec![d2, &ni1, &i1, &z(n1, n0)],
        vec![&z(n0, n2), &nd1, &z(n0, n1), &i0],
    ]);
    let s01 = Mat::from_blocks(&[
        vec![&z(n2, n1), &z(n2, n0)],
        vec![&i1, &z(n1, n0)],
        vec![&i1, &z(n1, n0)],
        vec![&z(n0, n1), &i0],
    ]);
    let s11 = Mat::from_blocks(&[
        vec![&z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n1), &z(n1, n0)],
        vec![&i1, &z(n1, n0)],
        vec![&z(n0, n1), &i0],
    ]);

    // Level 3 <-> 2, in coordinates (w2, w2', w2'', w1, w1', w1'', w0).
    let f03 = Mat::from_blocks(&[
        vec![&i2, &z(n2, n2), &z(n2, n2), &z(n2, n1), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n2), &z(n1, n2), &z(n1, n2), &i1, &z(n1, n1), &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n2), &z(n1, n2), &z(n1, n1), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n2), &z(n0, n2), &z(n0, n1), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let f13 = Mat::from_blocks(&[
        vec![&z(n2, n2), &i2, &z(n2, n2), &z(n2, n1), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n2), &z(n1, n2), &z(n1, n2), &i1, &z(n1, n1), &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n2), &z(n1, n2), &z(n1, n1), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n2), &z(n0, n2), &z(n0, n1), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let f23 = Mat::from_blocks(&[
        vec![&z(n2, n2), &z(n2, n2), &i2, &z(n2, n1), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n2), &z(n1, n2), &z(n1, n2), &z(n1, n1), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n2), &z(n1, n2), &z(n1, n1), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n2), &z(n0, n2), &z(n0, n1), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let f33 = Mat::from_blocks(&[
        vec![&i2, &ni2, &i2, &z(n2, n1), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![d2, &z(n1, n2), &z(n1, n2), &ni1, &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), d2, &z(n1, n2), &ni1, &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n2), &z(n0, n2), &nd1, &z(n0, n1), &z(n0, n1), &i0],
    ]);

    // sigma_i^2 are forced by the simplicial identities through the horn
    // identification of V3; see `fill_horn_3` for the generic route.
    let s02 = Mat::from_blocks(&[
        vec![&i2, &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&i2, &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n2, n2), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n2), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let s12 = Mat::from_blocks(&[
        vec![&z(n2, n2), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&i2, &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&i2, &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n2), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n1), &z(n0, n1), &i0],
    ]);
    let s22 = Mat::from_blocks(&[
        vec![&z(n2, n2), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n2, n2), &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&i2, &z(n2, n1), &z(n2, n1), &z(n2, n0)],
        vec![&z(n1, n2), &z(n1, n1), &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &i1, &z(n1, n1), &z(n1, n0)],
        vec![&z(n1, n2), &z(n1, n1), &i1, &z(n1, n0)],
        vec![&z(n0, n2), &z(n0, n1), &z(n0, n1), &i0],
    ]);

    LinearTwoGroupoid::from_parts(
        [n0, n1 + n0, n2 + 2 * n1 + n0, 3 * n2 + 3 * n1 + n0],
        vec![f01, f11],
        vec![f02, f12, f22],
        vec![f03, f13, f23, f33],
        vec![s00],
        vec![s01, s11],
        vec![s02, s12, s22],
    )
    .expect("realize produces consistent shapes")
}

/// Recovers the 3-term chain complex of a valid linear 2-groupoid, in the
/// coordinates of the canonical splittings: `W1 = ker f_0^1` split by
/// `sigma_0^0`, and `W2 = ker lambda_{2,2}` split by the level-2 horn filler.
/// Inverse to [`realize`] on the nose for realized groupoids.
pub fn extract(g: &LinearTwoGroupoid) -> Result<ChainComplex3> {
    let simplicial = verify_simplicial(g);
    if let Some(fail) = simplicial.failures().next() {
        return Err(Error::KanViolation(format!(
            "simplicial identity fails: {}",
            fail.name
        )));
    }
    let kan = kan_report(g);
    if let Some(fail) = kan.failures().next() {
        return Err(Error::KanViolation(fail.name.clone()));
    }

    let w0 = g.dim_v(0);
    let b1 = kernel(g.face(1, 0));
    let w1 = b1.dim();
    let d1 = -&(g.face(1, 1) * b1.basis());

    let lambda22 = g.face(2, 0).vstack(g.face(2, 1));
    let b2 = kernel(&lambda22);
    let w2 = b2.dim();
    // f_2^2 carries ker lambda_{2,2} into ker f_0^1; solve for coordinates.
    let f22_on_w2 = g.face(2, 2) * b2.basis();
    debug_assert!((g.face(1, 0) * &f22_on_w2).is_zero());
    let d2 = b1.basis().solve(&f22_on_w2)?;

    ChainComplex3::new(w2, w1, w0, d2, d1)
}

/// Checks every instance of the three simplicial identity families that is
/// expressible in the stored levels. Failures carry the offending entry.
pub fn verify_simplicial(g: &LinearTwoGroupoid) -> Report {
    let mut report = Report::new();

    // f_i^{q-1} f_j^q = f_{j-1}^{q-1} f_i^q for i < j.
    for q in 2..=3usize {
        for j in 1..=q {
            for i in 0..j {
                let lhs = g.face(q - 1, i) * g.face(q, j);
                let rhs = g.face(q - 1, j - 1) * g.face(q, i);
                report.record(
                    format!("face_face(q={q}, i={i}, j={j})"),
                    lhs == rhs,
                    diff_witness(&lhs, &rhs),
                );
            }
        }
    }

    // sigma_i^{q+1} sigma_j^q = sigma_{j+1}^{q+1} sigma_i^q for i < j.
    for q in 0..=1usize {
        for j in 0..=q {
            for i in 0..j {
                let lhs = g.degeneracy(q + 1, i) * g.degeneracy(q, j);
                let rhs = g.degeneracy(q + 1, j + 1) * g.degeneracy(q, i);
                report.record(
                    format!("degen_degen(q={q}, i={i}, j={j})"),
                    lhs == rhs,
                    diff_witness(&lhs, &rhs),
                );
            }
        }
    }

    // f_i^{q+1} sigma_j^q: below the diagonal a degeneracy of a face, on the
    // two diagonals the identity, above them a face of a degeneracy.
    for q in 0..=2usize {
        for j in 0..=q {
            for i in 0..=(q + 1) {
                let lhs = g.face(q + 1, i) * g.degeneracy(q, j);
                let rhs = if i == j || i == j + 1 {
                    Mat::identity(g.dim_v(q))
                } else if i < j {
                    g.degeneracy(q - 1, j - 1) * g.face(q, i)
                } else {
                    g.degeneracy(q - 1, j) * g.face(q, i - 1)
                };
                report.record(
                    format!("face_degen(q={q}, i={i}, j={j})"),
                    lhs == rhs,
                    diff_witness(&lhs, &rhs),
                );
            }
        }
    }

    report
}

fn diff_witness(lhs: &Mat, rhs: &Mat) -> String {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return format!(
                    "entry ({i}, {j}): {} != {}",
                    crate::exactla::format_rat(&lhs[(i, j)]),
                    crate::exactla::format_rat(&rhs[(i, j)])
                );
            }
        }
    }
    String::new()
}

/// A `(q, k)`-horn space, represented as a subspace of the `q`-fold product
/// of `V_{q-1}` in the order `x_0, ..., x_{k-1}, x_{k+1}, ..., x_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornSpace {
    pub q: usize,
    pub k: usize,
    pub space: Subspace,
}

/// The compatibility equations cutting out `Lambda_{q,k}` inside the q-fold
/// product of `V_{q-1}` (`None` when q = 1, where there are no equations),
/// and the matrix of `lambda_{q,k}` into product coordinates.
fn horn_equations_and_map(
    g: &LinearTwoGroupoid,
    q: usize,
    k: usize,
) -> Result<(Option<Mat>, Mat)> {
    if !(1..=3).contains(&q) || k > q {
        return Err(Error::HornIndexOutOfRange { q, k });
    }
    let indices: Vec<usize> = (0..=q).filter(|&i| i != k).collect();
    let prev = g.dim_v(q - 1);

    // Horn compatibility: f_i x_j = f_{j-1} x_i for i < j, i, j != k.
    let mut equations: Option<Mat> = None;
    if q >= 2 {
        for (pj, &j) in indices.iter().enumerate() {
            for (pi, &i) in indices.iter().enumerate().take(pj) {
                let mut row_blocks: Vec<Mat> = vec![Mat::zeros(g.dim_v(q - 2), prev); q];
                row_blocks[pj] = g.face(q - 1, i).clone();
                row_blocks[pi] = -&(g.face(q - 1, j - 1).clone());
                let refs: Vec<&Mat> = row_blocks.iter().collect();
                let row = Mat::from_blocks(&[refs]);
                equations = Some(match equations {
                    None => row,
                    Some(eqs) => eqs.vstack(&row),
                });
            }
        }
    }

    let mut lambda = Mat::zeros(0, g.dim_v(q));
    for &i in &indices {
        lambda = lambda.vstack(g.face(q, i));
    }
    Ok((equations, lambda))
}

/// The horn space and the matrix of `lambda_{q,k} : V_q ->` product
/// coordinates (the tuple of all faces except the k-th).
pub fn horn_map(g: &LinearTwoGroupoid, q: usize, k: usize) -> Result<(HornSpace, Mat)> {
    let (equations, lambda) = horn_equations_and_map(g, q, k)?;
    let ambient = q * g.dim_v(q - 1);
    let space = match equations {
        None => Subspace::full(ambient),
        Some(eqs) => kernel(&eqs),
    };
    Ok((HornSpace { q, k, space }, lambda))
}

/// Rank-based status of one horn map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KanStatus {
    /// The image lands inside the horn space (a simplicial-identity fact).
    pub image_in_horn: bool,
    pub surjective: bool,
    pub bijective: bool,
}

/// Decides surjectivity and bijectivity of `lambda_{q,k}` by rank: the image
/// lies in the horn space when the compatibility equations annihilate the
/// map, and fills it when the ranks agree.
pub fn kan_check(g: &LinearTwoGroupoid, q: usize, k: usize) -> Result<KanStatus> {
    let (equations, lambda) = horn_equations_and_map(g, q, k)?;
    let ambient = q * g.dim_v(q - 1);
    let (image_in_horn, horn_dim) = match &equations {
        None => (true, ambient),
        Some(eqs) => ((eqs * &lambda).is_zero(), ambient - eqs.rank()),
    };
    let surjective = image_in_horn && lambda.rank() == horn_dim;
    let bijective = surjective && g.dim_v(q) == horn_dim;
    Ok(KanStatus {
        image_in_horn,
        surjective,
        bijective,
    })
}

/// The Kan conditions of a linear 2-groupoid: every horn map surjective, and
/// bijective at level 3.
pub fn kan_report(g: &LinearTwoGroupoid) -> Report {
    let mut report = Report::new();
    for q in 1..=3usize {
        for k in 0..=q {
            let status = kan_check(g, q, k).expect("indices in range");
            report.record(
                format!("horn(q={q}, k={k}) image inside horn space"),
                status.image_in_horn,
                "face of the horn map violates compatibility",
            );
            report.record(
                format!("horn(q={q}, k={k}) surjective"),
                status.surjective,
                "rank below horn dimension",
            );
            if q == 3 {
                report.record(
                    format!("horn(q={q}, k={k}) bijective"),
                    status.bijective,
                    "horn map not invertible",
                );
            }
        }
    }
    report
}

/// Fills a `(2,2)`-horn: for `(v1, v1')` with `f_0^1 v1 = f_0^1 v1'`,
/// returns `sigma_0^1 v1 + sigma_1^1 (v1' - v1)`, whose missing faces are
/// exactly the given pair.
pub fn fill_horn_2(g: &LinearTwoGroupoid, v1: &[Rat], v1p: &[Rat]) -> Result<Vec<Rat>> {
    let n1 = g.dim_v(1);
    if v1.len() != n1 || v1p.len() != n1 {
        return Err(Error::DimensionMismatch("horn pair must live in V1".into()));
    }
    let f0 = g.face(1, 0);
    if f0.apply(v1) != f0.apply(v1p) {
        return Err(Error::IncompatibleHorn("f_0^1 v1 != f_0^1 v1'".into()));
    }
    let diff = vec_sub(v1p, v1);
    Ok(vec_add(
        &g.degeneracy(1, 0).apply(v1),
        &g.degeneracy(1, 1).apply(&diff),
    ))
}

/// Fills a `(3,3)`-horn by the explicit section
/// `sigma_0^2 v2 + sigma_1^2 (v2' - v2) + sigma_2^2 (v2'' - v2' + v2 - sigma_0^1 f_1^2 v2)`,
/// which inverts `lambda_{3,3}`.
pub fn fill_horn_3(
    g: &LinearTwoGroupoid,
    v2: &[Rat],
    v2p: &[Rat],
    v2pp: &[Rat],
) -> Result<Vec<Rat>> {
    let n2 = g.dim_v(2);
    if v2.len() != n2 || v2p.len() != n2 || v2pp.len() != n2 {
        return Err(Error::DimensionMismatch("horn triple must live in V2".into()));
    }
    let f0 = g.face(2, 0);
    let f1 = g.face(2, 1);
    if f0.apply(v2) != f0.apply(v2p) {
        return Err(Error::IncompatibleHorn("f_0^2 v2 != f_0^2 v2'".into()));
    }
    if f1.apply(v2) != f0.apply(v2pp) {
        return Err(Error::IncompatibleHorn("f_1^2 v2 != f_0^2 v2''".into()));
    }
    if f1.apply(v2p) != f1.apply(v2pp) {
        return Err(Error::IncompatibleHorn("f_1^2 v2' != f_1^2 v2''".into()));
    }
    let term0 = g.degeneracy(2, 0).apply(v2);
    let term1 = g.degeneracy(2, 1).apply(&vec_sub(v2p, v2));
    let correction = g.degeneracy(1, 0).apply(&f1.apply(v2));
    let arg2 = vec_sub(&vec_add(&vec_sub(v2pp, v2p), v2), &correction);
    let term2 = g.degeneracy(2, 2).apply(&arg2);
    Ok(vec_add(&vec_add(&term0, &term1), &term2))
}

fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
