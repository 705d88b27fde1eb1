//! Linear sub-2-groupoids from subcomplexes, symplectic orthogonals computed
//! two independent ways, isotropic/coisotropic/Lagrangian classification,
//! and the correspondence between constant Dirac structures and wide
//! Lagrangian sub-2-groupoids.

use crate::bridge::{csg_to_tuple, ConstantSymplectic2Groupoid};
use crate::courant::{bracket, monomials_up_to, ConstantCourantAlgebroid, PolySection};
use crate::doldkan::{ChainComplex3, LinearTwoGroupoid};
use crate::error::{Error, Result};
use crate::exactla::{image, kernel, perp, Bilin, Mat, Rat, Subspace};
use crate::report::Report;

/// A subcomplex `U2, U1, U0` of a 3-term chain complex: closed under both
/// boundary maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subcomplex {
    u2: Subspace,
    u1: Subspace,
    u0: Subspace,
}

impl Subcomplex {
    pub fn u2(&self) -> &Subspace {
        &self.u2
    }

    pub fn u1(&self) -> &Subspace {
        &self.u1
    }

    pub fn u0(&self) -> &Subspace {
        &self.u0
    }
}

/// Validates closure under the boundaries; the error carries the first basis
/// image vector that escapes.
pub fn make_subcomplex(
    u2: Subspace,
    u1: Subspace,
    u0: Subspace,
    c: &ChainComplex3,
) -> Result<Subcomplex> {
    if u2.ambient_dim() != c.dim_w2()
        || u1.ambient_dim() != c.dim_w1()
        || u0.ambient_dim() != c.dim_w0()
    {
        return Err(Error::DimensionMismatch(
            "subspace ambient dimensions do not match the complex".into(),
        ));
    }
    check_maps_into(c.d2(), &u2, &u1, "d2(U2) inside U1")?;
    check_maps_into(c.d1(), &u1, &u0, "d1(U1) inside U0")?;
    Ok(Subcomplex { u2, u1, u0 })
}

fn check_maps_into(map: &Mat, from: &Subspace, to: &Subspace, what: &str) -> Result<()> {
    for j in 0..from.dim() {
        let v = map.apply(&from.basis().col_vec(j));
        if !to.contains_vector(&v) {
            return Err(Error::NotASubcomplex(format!(
                "{what} fails: image of basis vector {j} is {v:?}"
            )));
        }
    }
    Ok(())
}

pub fn full_subcomplex(c: &ChainComplex3) -> Subcomplex {
    Subcomplex {
        u2: Subspace::full(c.dim_w2()),
        u1: Subspace::full(c.dim_w1()),
        u0: Subspace::full(c.dim_w0()),
    }
}

pub fn zero_subcomplex(c: &ChainComplex3) -> Subcomplex {
    Subcomplex {
        u2: Subspace::zero(c.dim_w2()),
        u1: Subspace::zero(c.dim_w1()),
        u0: Subspace::zero(c.dim_w0()),
    }
}

/// A linear sub-2-groupoid in the block coordinates of a realized groupoid:
/// `L0 = U0`, `L1 = U1 + U0`, `L2 = U2 + U1 + U1 + U0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubTwoGroupoid {
    l0: Subspace,
    l1: Subspace,
    l2: Subspace,
    source: Subcomplex,
}

impl SubTwoGroupoid {
    pub fn l0(&self) -> &Subspace {
        &self.l0
    }

    pub fn l1(&self) -> &Subspace {
        &self.l1
    }

    pub fn l2(&self) -> &Subspace {
        &self.l2
    }

    pub fn source(&self) -> &Subcomplex {
        &self.source
    }

    /// Wide means the whole object space is included.
    pub fn is_wide(&self) -> bool {
        self.l0.is_full()
    }
}

/// Direct sum of subspaces inside the direct sum of their ambient spaces.
fn direct_sum(parts: &[&Subspace]) -> Subspace {
    let ambient: usize = parts.iter().map(|p| p.ambient_dim()).sum();
    let total_dim: usize = parts.iter().map(|p| p.dim()).sum();
    let mut basis = Mat::zeros(ambient, total_dim);
    let mut row0 = 0;
    let mut col0 = 0;
    for p in parts {
        for i in 0..p.ambient_dim() {
            for j in 0..p.dim() {
                basis[(row0 + i, col0 + j)] = p.basis()[(i, j)].clone();
            }
        }
        row0 += p.ambient_dim();
        col0 += p.dim();
    }
    Subspace::span(ambient, &basis).expect("block basis has ambient rows")
}

/// Builds the sub-2-groupoid of a subcomplex and verifies stability under
/// every stored face and degeneracy matrix (including level 3, through the
/// block-diagonal extension of the subcomplex).
pub fn sub_two_groupoid(u: &Subcomplex, g: &LinearTwoGroupoid) -> Result<SubTwoGroupoid> {
    let l0 = u.u0.clone();
    let l1 = direct_sum(&[&u.u1, &u.u0]);
    let l2 = direct_sum(&[&u.u2, &u.u1, &u.u1, &u.u0]);
    let l3 = direct_sum(&[&u.u2, &u.u2, &u.u2, &u.u1, &u.u1, &u.u1, &u.u0]);
    if l1.ambient_dim() != g.dim_v(1) || l2.ambient_dim() != g.dim_v(2) || l3.ambient_dim() != g.dim_v(3)
    {
        return Err(Error::DimensionMismatch(
            "groupoid is not in the realized coordinates of this complex".into(),
        ));
    }
    let levels = [&l0, &l1, &l2, &l3];
    for q in 1..=3usize {
        for i in 0..=q {
            check_stable(g.face(q, i), levels[q], levels[q - 1], &format!("f_{i}^{q}"))?;
        }
    }
    for q in 0..=2usize {
        for i in 0..=q {
            check_stable(
                g.degeneracy(q, i),
                levels[q],
                levels[q + 1],
                &format!("sigma_{i}^{q}"),
            )?;
        }
    }
    Ok(SubTwoGroupoid {
        l0,
        l1,
        l2,
        source: u.clone(),
    })
}

fn check_stable(map: &Mat, from: &Subspace, to: &Subspace, what: &str) -> Result<()> {
    let img = image(&(map * from.basis()));
    if !to.contains(&img)? {
        return Err(Error::NotASubcomplex(format!("{what} does not preserve the subspaces")));
    }
    Ok(())
}

/// `{y : p(u, y) = 0 for all u in U}` for a pairing `p` on `left x right`.
fn pairing_right_ann(p: &Bilin, u: &Subspace) -> Subspace {
    kernel(&(&u.basis().transpose() * p.gram()))
}

/// `{x : p(x, u) = 0 for all u in U}`.
fn pairing_left_ann(p: &Bilin, u: &Subspace) -> Subspace {
    kernel(&(p.gram() * u.basis()).transpose())
}

/// The symplectic orthogonal of `L2 = U2 + U1 + U1 + U0` inside V2 for a
/// symmetric constant symplectic 2-groupoid, computed two independent ways
/// and asserted equal: the block formula
/// `Ann(U0) + U1-perp + U1-perp + Ann(U2)` (annihilators through the `C41`
/// pairing, orthogonals through `C32`), and brute force as the kernel of
/// `v -> omega(v, .)` restricted to `L2`.
pub fn omega_orthogonal(u: &Subcomplex, s: &ConstantSymplectic2Groupoid) -> Result<Subspace> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetricRepresentative);
    }
    let tuple = csg_to_tuple(s)?;
    let c41 = Bilin::new(s.form().c(4, 1).clone());

    let by_formula = direct_sum(&[
        &pairing_right_ann(&c41, &u.u0),
        &perp(&u.u1, tuple.pairing())?,
        &perp(&u.u1, tuple.pairing())?,
        &pairing_left_ann(&c41, &u.u2),
    ]);

    let l2 = direct_sum(&[&u.u2, &u.u1, &u.u1, &u.u0]);
    let omega = s.form().assemble();
    let brute_force = kernel(&(&l2.basis().transpose() * omega.gram()));

    assert_eq!(
        by_formula, brute_force,
        "block formula and brute-force orthogonal disagree"
    );
    Ok(by_formula)
}

/// How a sub-2-groupoid sits with respect to the symplectic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiracClassification {
    Isotropic,
    Coisotropic,
    Lagrangian,
    Neither { witness: String },
}

impl DiracClassification {
    pub fn label(&self) -> &'static str {
        match self {
            DiracClassification::Isotropic => "isotropic",
            DiracClassification::Coisotropic => "coisotropic",
            DiracClassification::Lagrangian => "lagrangian",
            DiracClassification::Neither { .. } => "none",
        }
    }
}

/// Classifies `L2` against the symplectic orthogonal, deciding through the
/// subcomplex-level conditions and cross-checking against the subspace
/// comparison `L2 <= L2^omega` / `>=` / `=`.
pub fn classify(
    l: &SubTwoGroupoid,
    s: &ConstantSymplectic2Groupoid,
) -> Result<DiracClassification> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetricRepresentative);
    }
    let u = &l.source;
    let tuple = csg_to_tuple(s)?;
    let c41 = Bilin::new(s.form().c(4, 1).clone());
    let u1_perp = perp(&u.u1, tuple.pairing())?;

    // Pairing of U0 with U2 through C41.
    let pair_zero = (&(&u.u0.basis().transpose() * c41.gram()) * u.u2.basis()).is_zero();
    let isotropic = pair_zero && u1_perp.contains(&u.u1)?;
    let coisotropic = u.u0.contains(&pairing_left_ann(&c41, &u.u2))?
        && u.u2.contains(&pairing_right_ann(&c41, &u.u0))?
        && u.u1.contains(&u1_perp)?;

    // Independent route through the orthogonal complement.
    let orthogonal = omega_orthogonal(u, s)?;
    let l2 = &l.l2;
    assert_eq!(
        isotropic,
        orthogonal.contains(l2)?,
        "subcomplex conditions disagree with L2 <= L2^omega"
    );
    assert_eq!(
        coisotropic,
        l2.contains(&orthogonal)?,
        "subcomplex conditions disagree with L2 >= L2^omega"
    );

    Ok(match (isotropic, coisotropic) {
        (true, true) => DiracClassification::Lagrangian,
        (true, false) => DiracClassification::Isotropic,
        (false, true) => DiracClassification::Coisotropic,
        (false, false) => DiracClassification::Neither {
            witness: format!(
                "dim L2 = {}, dim L2^omega = {}, dim intersection = {}",
                l2.dim(),
                orthogonal.dim(),
                l2.intersect(&orthogonal)?.dim()
            ),
        },
    })
}

/// Builds the Lagrangian sub-2-groupoid of a pair `(U1, U0)` with
/// `U1-perp = U1` and `d1(U1) <= U0`, setting `U2` to the annihilator of
/// `U0` under the `C41` pairing.
pub fn lagrangian_from_pair(
    u1: &Subspace,
    u0: &Subspace,
    s: &ConstantSymplectic2Groupoid,
) -> Result<SubTwoGroupoid> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetricRepresentative);
    }
    let tuple = csg_to_tuple(s)?;
    let u1_perp = perp(u1, tuple.pairing())?;
    if &u1_perp != u1 {
        return Err(Error::Precondition(format!(
            "U1 is not Lagrangian in W1: dim U1 = {}, dim U1-perp = {}",
            u1.dim(),
            u1_perp.dim()
        )));
    }
    let c41 = Bilin::new(s.form().c(4, 1).clone());
    let u2 = pairing_right_ann(&c41, u0);
    let sub = make_subcomplex(u2, u1.clone(), u0.clone(), s.complex())?;
    let l = sub_two_groupoid(&sub, s.groupoid())?;
    debug_assert_eq!(classify(&l, s)?, DiracClassification::Lagrangian);
    Ok(l)
}

/// Membership test for constant Dirac structures: `U1 x W0` is Dirac exactly
/// when `U1` equals its own orthogonal under the pairing.
pub fn is_constant_dirac(u1: &Subspace, e: &ConstantCourantAlgebroid) -> Result<bool> {
    Ok(&perp(u1, e.pairing())? == u1)
}

/// The membership test plus, when it passes, symbolic verification that
/// polynomial sections valued in `U1` (monomial generators up to the degree
/// bound) are closed under the Courant bracket.
pub fn constant_dirac_report(
    u1: &Subspace,
    e: &ConstantCourantAlgebroid,
    degree_bound: u32,
) -> Result<(bool, Report)> {
    let mut report = Report::new();
    let is_dirac = is_constant_dirac(u1, e)?;
    report.record(
        "U1 equals its pairing-orthogonal",
        is_dirac,
        format!(
            "dim U1 = {}, dim orthogonal = {}",
            u1.dim(),
            perp(u1, e.pairing())?.dim()
        ),
    );
    if !is_dirac && e.dim_w1() % 2 == 1 {
        report.note(
            "dim W1 is odd, so the pairing admits no half-dimensional orthogonal and \
             no constant Dirac structure exists in this algebroid",
        );
    }
    if is_dirac {
        let gens = dirac_section_generators(u1, e, degree_bound);
        let mut closed = true;
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                let br = bracket(e, a, b);
                if let Some(coeffs) = section_value_outside(&br, u1) {
                    closed = false;
                    report.fail(
                        format!("bracket closure at generator pair ({i}, {j})"),
                        format!("coefficient vector {coeffs:?} is outside U1"),
                    );
                }
            }
        }
        report.record(
            format!(
                "polynomial sections valued in U1 are bracket-closed ({} generators, degree <= {degree_bound})",
                gens.len()
            ),
            closed,
            "closure failed",
        );
    }
    Ok((is_dirac, report))
}

/// Monomial generators `x^a u_j` of the sections valued in `U1`.
fn dirac_section_generators(
    u1: &Subspace,
    e: &ConstantCourantAlgebroid,
    degree_bound: u32,
) -> Vec<PolySection> {
    let mut gens = Vec::new();
    for exps in monomials_up_to(e.dim_w0(), degree_bound) {
        for j in 0..u1.dim() {
            let coords = u1.basis().col_vec(j);
            let constant = PolySection::constant(e.dim_w0(), &coords);
            let monomial = crate::courant::Poly::monomial(
                e.dim_w0(),
                exps.clone(),
                Rat::from_integer(1.into()),
            );
            gens.push(constant.scale_poly(&monomial));
        }
    }
    gens
}

/// Returns a coefficient vector of the section that lies outside `u`, if any;
/// a section is valued in `u` exactly when all its monomial coefficient
/// vectors are.
fn section_value_outside(s: &PolySection, u: &Subspace) -> Option<Vec<Rat>> {
    use std::collections::BTreeSet;
    let mut exps: BTreeSet<Vec<u32>> = BTreeSet::new();
    for k in 0..s.dim() {
        for (e, _) in s.component(k).terms() {
            exps.insert(e.clone());
        }
    }
    for e in exps {
        let coeffs: Vec<Rat> = (0..s.dim())
            .map(|k| {
                s.component(k)
                    .terms()
                    .find(|(ex, _)| *ex == &e)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(|| Rat::from_integer(0.into()))
            })
            .collect();
        if !u.contains_vector(&coeffs) {
            return Some(coeffs);
        }
    }
    None
}

/// Integration direction of the Dirac correspondence: the wide Lagrangian
/// sub-2-groupoid of the pair `(U1, W0)`.
pub fn dirac_to_lagrangian(
    u1: &Subspace,
    s: &ConstantSymplectic2Groupoid,
) -> Result<SubTwoGroupoid> {
    let tuple = csg_to_tuple(s)?;
    if &perp(u1, tuple.pairing())? != u1 {
        return Err(Error::Precondition("U1 is not a constant Dirac structure".into()));
    }
    lagrangian_from_pair(u1, &Subspace::full(tuple.dim_w0()), s)
}

/// The other direction: a wide Lagrangian sub-2-groupoid comes from the
/// constant Dirac structure `U1 x W0`; wideness forces `U2 = 0`.
pub fn lagrangian_to_dirac(
    l: &SubTwoGroupoid,
    e: &ConstantCourantAlgebroid,
) -> Result<Subspace> {
    if !l.is_wide() {
        return Err(Error::Precondition("sub-2-groupoid is not wide (L0 != V0)".into()));
    }
    if !l.source.u2.is_zero() {
        return Err(Error::Precondition("wide Lagrangian requires U2 = 0".into()));
    }
    let u1 = &l.source.u1;
    if !is_constant_dirac(u1, e)? {
        return Err(Error::Precondition("level-1 data is not Lagrangian in W1".into()));
    }
    Ok(u1.clone())
}

/// The level-1 truncation of a wide Lagrangian sub-2-groupoid: the action
/// groupoid `U1 + W0` over `W0` with source, target, and unit from the
/// restricted simplicial maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneGroupoid {
    pub source: Mat,
    pub target: Mat,
    pub unit: Mat,
}

pub fn dirac_groupoid(u1: &Subspace, e: &ConstantCourantAlgebroid) -> Result<OneGroupoid> {
    if !is_constant_dirac(u1, e)? {
        return Err(Error::Precondition("U1 is not a constant Dirac structure".into()));
    }
    let n0 = e.dim_w0();
    let k = u1.dim();
    let z = Mat::zeros(n0, k);
    let id = Mat::identity(n0);
    let source = Mat::from_blocks(&[vec![&z, &id]]);
    let restricted = -&(e.boundary() * u1.basis());
    let target = Mat::from_blocks(&[vec![&restricted, &id]]);
    let unit = Mat::from_blocks(&[vec![&Mat::zeros(k, n0)], vec![&id]]);
    // target(u, w0) = w0 - d(u); source after unit is the identity.
    debug_assert_eq!(&source * &unit, Mat::identity(n0));
    Ok(OneGroupoid {
        source,
        target,
        unit,
    })
}
