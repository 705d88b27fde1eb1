//! Constant 2-forms on the 2-simplex space of a linear 2-groupoid, in block
//! form with respect to `V2 = W2 + W1 + W1 + W0`: the simplicial coboundary,
//! normalization, multiplicativity, the induced pairings, simplicial
//! nondegeneracy, and equivalence via level-1 potentials.

use crate::doldkan::{ChainComplex3, LinearTwoGroupoid};
use crate::error::{Error, Result};
use crate::exactla::{Bilin, Mat};

/// A constant 2-form on `V2 = W2 + W1 + W1 + W0`, stored as the 4x4 grid of
/// blocks `C_ij` (block 1 = W2, 2 = first W1, 3 = second W1, 4 = W0) with
/// `C_ij(w, w') = -C_ji(w', w)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstantTwoForm {
    dim_w2: usize,
    dim_w1: usize,
    dim_w0: usize,
    blocks: Vec<Mat>, // 16 blocks, row-major over the 4x4 grid
}

impl ConstantTwoForm {
    /// Builds from the full grid of blocks, checking sizes and skewness.
    pub fn from_blocks(
        dim_w2: usize,
        dim_w1: usize,
        dim_w0: usize,
        blocks: Vec<Vec<Mat>>,
    ) -> Result<Self> {
        let sizes = [dim_w2, dim_w1, dim_w1, dim_w0];
        if blocks.len() != 4 || blocks.iter().any(|row| row.len() != 4) {
            return Err(Error::DimensionMismatch("expected a 4x4 grid of blocks".into()));
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.rows() != sizes[i] || b.cols() != sizes[j] {
                    return Err(Error::DimensionMismatch(format!(
                        "block C{}{} is {}x{}, expected {}x{}",
                        i + 1,
                        j + 1,
                        b.rows(),
                        b.cols(),
                        sizes[i],
                        sizes[j]
                    )));
                }
            }
        }
        #[allow(clippy::needless_range_loop)] // cross-indexed grid comparison
        for i in 0..4 {
            for j in i..4 {
                if blocks[j][i] != -&blocks[i][j].transpose() {
                    return Err(Error::NotSkew(i + 1, j + 1));
                }
            }
        }
        Ok(ConstantTwoForm {
            dim_w2,
            dim_w1,
            dim_w0,
            blocks: blocks.into_iter().flatten().collect(),
        })
    }

    pub fn zero(dim_w2: usize, dim_w1: usize, dim_w0: usize) -> Self {
        let sizes = [dim_w2, dim_w1, dim_w1, dim_w0];
        let mut blocks = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                blocks.push(Mat::zeros(sizes[i], sizes[j]));
            }
        }
        ConstantTwoForm {
            dim_w2,
            dim_w1,
            dim_w0,
            blocks,
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_w2, self.dim_w1, self.dim_w0)
    }

    /// Block `C_ij`, 1-based: block 1 = W2, 2 and 3 = the W1 copies, 4 = W0.
    pub fn c(&self, i: usize, j: usize) -> &Mat {
        assert!((1..=4).contains(&i) && (1..=4).contains(&j), "blocks are C11..C44");
        &self.blocks[(i - 1) * 4 + (j - 1)]
    }

    pub fn dim_v2(&self) -> usize {
        self.dim_w2 + 2 * self.dim_w1 + self.dim_w0
    }

    /// The assembled antisymmetric Gram matrix on V2.
    pub fn assemble(&self) -> Bilin {
        let grid: Vec<Vec<&Mat>> = (0..4)
            .map(|i| (0..4).map(|j| &self.blocks[i * 4 + j]).collect())
            .collect();
        Bilin::new(Mat::from_blocks(&grid))
    }

    /// Splits an antisymmetric matrix on V2 back into blocks. Inverse of
    /// [`ConstantTwoForm::assemble`].
    pub fn disassemble(m: &Bilin, dim_w2: usize, dim_w1: usize, dim_w0: usize) -> Result<Self> {
        let n = dim_w2 + 2 * dim_w1 + dim_w0;
        if m.left_dim() != n || m.right_dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {n}x{n}",
                m.left_dim(),
                m.right_dim()
            )));
        }
        let g = m.gram();
        for i in 0..n {
            for j in i..n {
                if g[(i, j)] != -g[(j, i)].clone() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        let sizes = [dim_w2, dim_w1, dim_w1, dim_w0];
        let offset = |b: usize| -> usize { sizes[..b].iter().sum() };
        let mut blocks = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                blocks.push(g.block(offset(i), offset(j), sizes[i], sizes[j]));
            }
        }
        Ok(ConstantTwoForm {
            dim_w2,
            dim_w1,
            dim_w0,
            blocks,
        })
    }

    /// Normalization in block terms: `C24 = C33 = C34 = C44 = 0` and
    /// `C22 + C23 + C32 = 0`. Equivalent to the vanishing of both degeneracy
    /// pullbacks; see [`is_normalized_via_degeneracies`].
    pub fn is_normalized(&self) -> bool {
        self.c(2, 4).is_zero()
            && self.c(3, 3).is_zero()
            && self.c(3, 4).is_zero()
            && self.c(4, 4).is_zero()
            && (&(self.c(2, 2) + self.c(2, 3)) + self.c(3, 2)).is_zero()
    }

    /// Constant forms on a vector space are closed: the exterior derivative
    /// of a form with constant coefficients vanishes identically. Recorded as
    /// an explicit no-op so the symplectic conditions can be enumerated.
    pub fn is_closed(&self) -> bool {
        true
    }

    fn same_dims(&self, other: &ConstantTwoForm) -> bool {
        self.dims() == other.dims()
    }

    pub fn add(&self, other: &ConstantTwoForm) -> ConstantTwoForm {
        assert!(self.same_dims(other), "form dimensions differ");
        ConstantTwoForm {
            dim_w2: self.dim_w2,
            dim_w1: self.dim_w1,
            dim_w0: self.dim_w0,
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ConstantTwoForm) -> ConstantTwoForm {
        assert!(self.same_dims(other), "form dimensions differ");
        ConstantTwoForm {
            dim_w2: self.dim_w2,
            dim_w1: self.dim_w1,
            dim_w0: self.dim_w0,
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    /// Replaces one block and its skew partner; used for mutation tests.
    pub fn with_block(&self, i: usize, j: usize, m: Mat) -> ConstantTwoForm {
        assert!((1..=4).contains(&i) && (1..=4).contains(&j));
        let mut f = self.clone();
        let mt = -&m.transpose();
        f.blocks[(i - 1) * 4 + (j - 1)] = m;
        if i != j {
            f.blocks[(j - 1) * 4 + (i - 1)] = mt;
        }
        f
    }
}

/// A constant normalized 2-form on `V1 = W1 + W0`: blocks `B11` (skew on W1)
/// and `B12`, with `B21 = -B12^T` and the `W0 x W0` block structurally zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaForm {
    dim_w1: usize,
    dim_w0: usize,
    b11: Mat,
    b12: Mat,
}

impl AlphaForm {
    pub fn new(dim_w1: usize, dim_w0: usize, b11: Mat, b12: Mat) -> Result<Self> {
        if b11.rows() != dim_w1 || b11.cols() != dim_w1 {
            return Err(Error::DimensionMismatch("B11 must be square on W1".into()));
        }
        if b12.rows() != dim_w1 || b12.cols() != dim_w0 {
            return Err(Error::DimensionMismatch("B12 must be W1 x W0".into()));
        }
        if b11 != -&b11.transpose() {
            return Err(Error::NotSkew(1, 1));
        }
        Ok(AlphaForm {
            dim_w1,
            dim_w0,
            b11,
            b12,
        })
    }

    pub fn zero(dim_w1: usize, dim_w0: usize) -> Self {
        AlphaForm {
            dim_w1,
            dim_w0,
            b11: Mat::zeros(dim_w1, dim_w1),
            b12: Mat::zeros(dim_w1, dim_w0),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_w1, self.dim_w0)
    }

    pub fn b11(&self) -> &Mat {
        &self.b11
    }

    pub fn b12(&self) -> &Mat {
        &self.b12
    }

    pub fn is_zero(&self) -> bool {
        self.b11.is_zero() && self.b12.is_zero()
    }

    /// The assembled antisymmetric matrix on `V1 = W1 + W0`.
    pub fn assemble(&self) -> Bilin {
        let b21 = -&self.b12.transpose();
        let z = Mat::zeros(self.dim_w0, self.dim_w0);
        Bilin::new(Mat::from_blocks(&[
            vec![&self.b11, &self.b12],
            vec![&b21, &z],
        ]))
    }
}

/// The induced pairings of a normalized constant 2-form: `A = C41` between
/// W0 and W2, and the symmetric `B = C32 + C32^T` on W1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub a: Bilin,
    pub b: Bilin,
    pub nondegenerate_a: bool,
    pub nondegenerate_b: bool,
}

/// Simplicial coboundary of a level-1 form: `delta a = sum (-1)^i (f_i^2)* a`,
/// returned in block form on V2. The groupoid must be in the realized
/// coordinates matching the alpha's `(W1, W0)` split.
pub fn delta_alpha(a: &AlphaForm, g: &LinearTwoGroupoid) -> Result<ConstantTwoForm> {
    let (n1, n0) = a.dims();
    if g.dim_v(1) != n1 + n0 {
        return Err(Error::DimensionMismatch(format!(
            "V1 has dimension {}, expected {}",
            g.dim_v(1),
            n1 + n0
        )));
    }
    let n2 = g
        .dim_v(2)
        .checked_sub(2 * n1 + n0)
        .ok_or_else(|| Error::DimensionMismatch("V2 too small for the block split".into()))?;
    let m = a.assemble();
    let mut total = Mat::zeros(g.dim_v(2), g.dim_v(2));
    for i in 0..=2usize {
        let pulled = m.pullback(g.face(2, i), g.face(2, i));
        total = if i % 2 == 0 {
            &total + pulled.gram()
        } else {
            &total - pulled.gram()
        };
    }
    ConstantTwoForm::disassemble(&Bilin::new(total), n2, n1, n0)
}

/// Simplicial coboundary of a level-2 form: `delta f = sum (-1)^i (f_i^3)* f`
/// as a full antisymmetric matrix on V3.
pub fn delta_omega(f: &ConstantTwoForm, g: &LinearTwoGroupoid) -> Result<Bilin> {
    if g.dim_v(2) != f.dim_v2() {
        return Err(Error::DimensionMismatch(format!(
            "V2 has dimension {}, form lives on dimension {}",
            g.dim_v(2),
            f.dim_v2()
        )));
    }
    let m = f.assemble();
    let mut total = Mat::zeros(g.dim_v(3), g.dim_v(3));
    for i in 0..=3usize {
        let pulled = m.pullback(g.face(3, i), g.face(3, i));
        total = if i % 2 == 0 {
            &total + pulled.gram()
        } else {
            &total - pulled.gram()
        };
    }
    Ok(Bilin::new(total))
}

/// Multiplicativity is the exact vanishing of the coboundary.
pub fn is_multiplicative(f: &ConstantTwoForm, g: &LinearTwoGroupoid) -> Result<bool> {
    Ok(delta_omega(f, g)?.gram().is_zero())
}

/// The degeneracy-pullback reading of normalization: both `(sigma_i^1)* f`
/// vanish. Agrees with [`ConstantTwoForm::is_normalized`] on realized
/// coordinates; kept as the independent route.
pub fn is_normalized_via_degeneracies(f: &ConstantTwoForm, g: &LinearTwoGroupoid) -> Result<bool> {
    if g.dim_v(2) != f.dim_v2() {
        return Err(Error::DimensionMismatch("form does not live on this V2".into()));
    }
    let m = f.assemble();
    Ok((0..=1).all(|i| m.pullback(g.degeneracy(1, i), g.degeneracy(1, i)).gram().is_zero()))
}

/// The pairings `A = C41` and `B = C32 + C32^T` of a normalized form,
/// with exact nondegeneracy flags.
pub fn pairings(f: &ConstantTwoForm) -> Result<PairingReport> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized("pairings need a normalized form".into()));
    }
    let a = Bilin::new(f.c(4, 1).clone());
    let b = Bilin::new(f.c(3, 2) + &f.c(3, 2).transpose());
    let nondegenerate_a = a.is_nondegenerate();
    let nondegenerate_b = b.is_nondegenerate();
    Ok(PairingReport {
        a,
        b,
        nondegenerate_a,
        nondegenerate_b,
    })
}

/// Simplicial nondegeneracy: `C41` and the symmetric part of `C32` are both
/// nondegenerate.
pub fn is_simplicially_nondegenerate(f: &ConstantTwoForm) -> Result<bool> {
    let p = pairings(f)?;
    Ok(p.nondegenerate_a && p.nondegenerate_b)
}

/// Checks the compatibility equation
/// `C41(d w1, w2) = C32(d w2, w1) + C32(w1, d w2)`
/// on bases; returns the first failing basis pair.
fn compatibility_witness(c41: &Bilin, c32: &Bilin, c: &ChainComplex3) -> Option<(usize, usize)> {
    // As matrices on (w1, w2) index pairs: d1^T G41 = (G32^T + G32) d2.
    let lhs = &c.d1().transpose() * c41.gram();
    let rhs = &(&c32.gram().transpose() + c32.gram()) * c.d2();
    for a in 0..lhs.rows() {
        for b in 0..lhs.cols() {
            if lhs[(a, b)] != rhs[(a, b)] {
                return Some((a, b));
            }
        }
    }
    None
}

/// Builds the unique normalized multiplicative constant 2-form with the given
/// `C41` and `C32` blocks. The remaining blocks are determined:
/// `C13(w2,w1) = C32(w1, d w2)`, `C12(w2,w1) = C32(d w2, w1)`,
/// `C11(w2,w2') = -C32(d w2, d w2')`, `C23 = -C32^T`, `C22 = -C23 - C32`,
/// `C14 = -C41^T`, and `C24 = C33 = C34 = C44 = 0`.
pub fn build_from_c(c41: &Bilin, c32: &Bilin, c: &ChainComplex3) -> Result<ConstantTwoForm> {
    let (n2, n1, n0) = (c.dim_w2(), c.dim_w1(), c.dim_w0());
    if c41.left_dim() != n0 || c41.right_dim() != n2 {
        return Err(Error::DimensionMismatch(format!(
            "C41 is {}x{}, expected {}x{}",
            c41.left_dim(),
            c41.right_dim(),
            n0,
            n2
        )));
    }
    if c32.left_dim() != n1 || c32.right_dim() != n1 {
        return Err(Error::DimensionMismatch(format!(
            "C32 is {}x{}, expected {}x{}",
            c32.left_dim(),
            c32.right_dim(),
            n1,
            n1
        )));
    }
    if let Some((a, b)) = compatibility_witness(c41, c32, c) {
        return Err(Error::IncompatiblePair(a, b));
    }
    let g32 = c32.gram();
    let g41 = c41.gram();
    let d2 = c.d2();

    let c12 = &d2.transpose() * g32;
    let c13 = &d2.transpose() * &g32.transpose();
    let c11 = -&(&(&d2.transpose() * g32) * d2);
    let c23 = -&g32.transpose();
    let c22 = &g32.transpose() - g32;
    let c14 = -&g41.transpose();

    let z = |r: usize, k: usize| Mat::zeros(r, k);
    ConstantTwoForm::from_blocks(
        n2,
        n1,
        n0,
        vec![
            vec![c11, c12.clone(), c13.clone(), c14],
            vec![-&c12.transpose(), c22, c23, z(n1, n0)],
            vec![-&c13.transpose(), g32.clone(), z(n1, n1), z(n1, n0)],
            vec![g41.clone(), z(n0, n1), z(n0, n1), z(n0, n0)],
        ],
    )
}

/// Recovers `(C41, C32)` from a normalized multiplicative form, checking that
/// every determined block matches the construction of [`build_from_c`]; this
/// is the block-level reading of multiplicativity and makes the two maps
/// mutually inverse.
pub fn reduce_to_c(f: &ConstantTwoForm, c: &ChainComplex3) -> Result<(Bilin, Bilin)> {
    let (n2, n1, n0) = f.dims();
    if (n2, n1, n0) != (c.dim_w2(), c.dim_w1(), c.dim_w0()) {
        return Err(Error::DimensionMismatch("form and complex dimensions differ".into()));
    }
    if !f.is_normalized() {
        return Err(Error::NotNormalized("reduce_to_c needs a normalized form".into()));
    }
    let c41 = Bilin::new(f.c(4, 1).clone());
    let c32 = Bilin::new(f.c(3, 2).clone());
    let rebuilt = build_from_c(&c41, &c32, c).map_err(|e| match e {
        Error::IncompatiblePair(a, b) => Error::NotMultiplicative(format!(
            "compatibility equation fails at basis pair ({a}, {b})"
        )),
        other => other,
    })?;
    if &rebuilt != f {
        for (i, j) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3)] {
            if rebuilt.c(i, j) != f.c(i, j) {
                return Err(Error::NotMultiplicative(format!(
                    "block C{i}{j} is not the one determined by (C41, C32)"
                )));
            }
        }
        return Err(Error::NotMultiplicative("undetermined block mismatch".into()));
    }
    Ok((c41, c32))
}

/// Admissibility of a level-1 potential: `B21(w0, d w2) = 0` and
/// `B21(d w1, w1') + B21(d w1', w1) = 0` on bases. Exactly the condition that
/// `delta alpha` has `A41 = 0` and skew `A32`.
pub fn alpha_is_admissible(a: &AlphaForm, c: &ChainComplex3) -> Result<bool> {
    let (n1, n0) = a.dims();
    if n1 != c.dim_w1() || n0 != c.dim_w0() {
        return Err(Error::DimensionMismatch("alpha and complex dimensions differ".into()));
    }
    // B21 = -B12^T. First display: B21 d2 = 0. Second: d1^T B21 skew.
    let b21 = -&a.b12().transpose();
    let first = (&b21 * c.d2()).is_zero();
    let m = &c.d1().transpose() * &b21;
    let second = (&m + &m.transpose()).is_zero();
    Ok(first && second)
}

/// Replaces `C32` by its symmetric part through an explicit equivalence:
/// returns the symmetrized form `f' = f + delta alpha` and the witness
/// `alpha` with `B11 = r` (the skew part of `C32`) and `B12 = 0`.
pub fn symmetrize(
    f: &ConstantTwoForm,
    c: &ChainComplex3,
) -> Result<(ConstantTwoForm, AlphaForm)> {
    let (c41, c32) = reduce_to_c(f, c)?;
    let r = c32.skew_part();
    let sym = c32.symmetric_part();
    let f_sym = build_from_c(&c41, &sym, c)?;
    let alpha = AlphaForm::new(c.dim_w1(), c.dim_w0(), r.gram().clone(), Mat::zeros(c.dim_w1(), c.dim_w0()))?;
    Ok((f_sym, alpha))
}

/// Decides equivalence of two normalized multiplicative forms on the same
/// complex and, when equivalent, returns an admissible witness with
/// `f2 - f1 = delta alpha`. Equivalence holds exactly when the `C41` blocks
/// and the symmetric parts of the `C32` blocks agree.
pub fn are_equivalent(
    f1: &ConstantTwoForm,
    f2: &ConstantTwoForm,
    c: &ChainComplex3,
) -> Result<Option<AlphaForm>> {
    let (c41a, c32a) = reduce_to_c(f1, c)?;
    let (c41b, c32b) = reduce_to_c(f2, c)?;
    if c41a != c41b || c32a.symmetric_part() != c32b.symmetric_part() {
        return Ok(None);
    }
    // delta alpha has A32 = -B11; we need A32 = C32(f2) - C32(f1).
    let b11 = c32a.gram() - c32b.gram();
    let alpha = AlphaForm::new(c.dim_w1(), c.dim_w0(), b11, Mat::zeros(c.dim_w1(), c.dim_w0()))?;
    Ok(Some(alpha))
}
