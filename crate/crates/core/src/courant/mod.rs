//! Constant Courant algebroids: a trivial bundle `W1 x W0 -> W0` with a
//! basepoint-independent pairing and anchor, vanishing bracket of constant
//! sections, and the bracket on polynomial sections determined from those.
//! The four Courant axioms are verified as exact polynomial identities.

mod poly;

pub use poly::{Poly, PolySection};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Bilin, Mat, Rat};
use crate::report::Report;

/// A constant Courant algebroid. The anchor is `rho(w1, w0) = (dw1, w0)`
/// and the adjoint boundary `d* = g^{-1} d^T` has isotropic image.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstantCourantAlgebroid {
    dim_w1: usize,
    dim_w0: usize,
    pairing: Bilin,
    boundary: Mat,
    dstar: Mat,
}

/// Validates and builds an algebroid from a symmetric invertible pairing on
/// W1 and a boundary map `d : W1 -> W0` with `d g^{-1} d^T = 0`.
pub fn new_algebroid(pairing: Bilin, boundary: Mat) -> Result<ConstantCourantAlgebroid> {
    let n1 = pairing.left_dim();
    if !pairing.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g_inv = pairing.gram().inverse().map_err(|_| Error::DegeneratePairing)?;
    if boundary.cols() != n1 {
        return Err(Error::DimensionMismatch(format!(
            "boundary has {} columns, expected {}",
            boundary.cols(),
            n1
        )));
    }
    let dstar = &g_inv * &boundary.transpose();
    if !(&boundary * &dstar).is_zero() {
        return Err(Error::IsotropyViolation);
    }
    Ok(ConstantCourantAlgebroid {
        dim_w1: n1,
        dim_w0: boundary.rows(),
        pairing,
        boundary,
        dstar,
    })
}

impl ConstantCourantAlgebroid {
    pub fn dim_w1(&self) -> usize {
        self.dim_w1
    }

    pub fn dim_w0(&self) -> usize {
        self.dim_w0
    }

    pub fn pairing(&self) -> &Bilin {
        &self.pairing
    }

    pub fn boundary(&self) -> &Mat {
        &self.boundary
    }

    /// `d* = g^{-1} d^T : W0* -> W1`, the adjoint of the boundary under the
    /// pairing identification `W1* = W1`.
    pub fn dstar(&self) -> &Mat {
        &self.dstar
    }

    fn check_section(&self, s: &PolySection) -> Result<()> {
        if s.dim() != self.dim_w1 {
            return Err(Error::DimensionMismatch(format!(
                "section has {} components, expected {}",
                s.dim(),
                self.dim_w1
            )));
        }
        Ok(())
    }
}

/// The anchor applied to a function: `rho(s)(f)` is the directional
/// derivative of `f` along the vector field `(d s, basepoint)`.
pub fn anchor_apply(e: &ConstantCourantAlgebroid, s: &PolySection, f: &Poly) -> Poly {
    let n0 = e.dim_w0;
    let mut out = Poly::zero(n0);
    for j in 0..n0 {
        let df = f.partial(j);
        if df.is_zero() {
            continue;
        }
        // (d s)_j as a polynomial.
        let mut ds_j = Poly::zero(n0);
        for i in 0..e.dim_w1 {
            ds_j = ds_j.add(&s.component(i).scale(&e.boundary[(j, i)]));
        }
        out = out.add(&ds_j.mul(&df));
    }
    out
}

/// The operator `D : C^inf(W0) -> Gamma(E)` with `<Df, s> = rho(s)(f)`,
/// computed as `g^{-1} d^T` applied to the gradient.
pub fn dee(e: &ConstantCourantAlgebroid, f: &Poly) -> PolySection {
    let grads: Vec<Poly> = (0..e.dim_w0).map(|j| f.partial(j)).collect();
    let components: Vec<Poly> = (0..e.dim_w1)
        .map(|i| {
            let mut acc = Poly::zero(e.dim_w0);
            for (j, df) in grads.iter().enumerate() {
                acc = acc.add(&df.scale(&e.dstar[(i, j)]));
            }
            acc
        })
        .collect();
    PolySection::new(components)
}

/// Pointwise pairing of sections with polynomial coefficients.
pub fn pairing_sections(e: &ConstantCourantAlgebroid, s1: &PolySection, s2: &PolySection) -> Poly {
    let mut out = Poly::zero(e.dim_w0);
    for i in 0..e.dim_w1 {
        if s1.component(i).is_zero() {
            continue;
        }
        for j in 0..e.dim_w1 {
            let g_ij = &e.pairing.gram()[(i, j)];
            if g_ij.is_zero() || s2.component(j).is_zero() {
                continue;
            }
            out = out.add(&s1.component(i).mul(s2.component(j)).scale(g_ij));
        }
    }
    out
}

/// The Courant bracket on polynomial sections, the bilinear extension of
/// `[f w, g w'] = f rho(w)(g) w' - g rho(w')(f) w + g <w, w'> D f`
/// from constant sections (whose brackets vanish). Componentwise:
/// `[s, t]_k = rho(s)(t_k) - rho(t)(s_k) + sum_i <e_i, t> (D s_i)_k`.
pub fn bracket(e: &ConstantCourantAlgebroid, s1: &PolySection, s2: &PolySection) -> PolySection {
    e.check_section(s1).expect("bracket: left section dimension");
    e.check_section(s2).expect("bracket: right section dimension");
    let mut components = Vec::with_capacity(e.dim_w1);
    for k in 0..e.dim_w1 {
        let mut c = anchor_apply(e, s1, s2.component(k));
        c = c.sub(&anchor_apply(e, s2, s1.component(k)));
        components.push(c);
    }
    let mut out = PolySection::new(components);
    // The D-term: sum_i <e_i, s2> D(s1_i).
    for i in 0..e.dim_w1 {
        if s1.component(i).is_zero() {
            continue;
        }
        let mut h_i = Poly::zero(e.dim_w0);
        for j in 0..e.dim_w1 {
            let g_ij = &e.pairing.gram()[(i, j)];
            if !g_ij.is_zero() {
                h_i = h_i.add(&s2.component(j).scale(g_ij));
            }
        }
        if h_i.is_zero() {
            continue;
        }
        out = out.add(&dee(e, s1.component(i)).scale_poly(&h_i));
    }
    out
}

/// All monomial exponent vectors in `n_vars` variables with total degree at
/// most `bound`, in lexicographic order.
pub fn monomials_up_to(n_vars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    if n_vars == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(&mut out, &mut current, 0, bound);
    out.sort();
    out
}

/// The generating sections `x^a e_i` with `|a| <= bound`, with display names.
fn generators(e: &ConstantCourantAlgebroid, bound: u32) -> Vec<(String, PolySection)> {
    let mut gens = Vec::new();
    for exps in monomials_up_to(e.dim_w0, bound) {
        for i in 0..e.dim_w1 {
            let name = format!(
                "{}e{i}",
                if exps.iter().all(|&x| x == 0) {
                    String::new()
                } else {
                    let vars: Vec<String> = exps
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x > 0)
                        .map(|(v, &x)| if x == 1 { format!("x{v}") } else { format!("x{v}^{x}") })
                        .collect();
                    format!("{}*", vars.join("*"))
                }
            );
            gens.push((name, PolySection::monomial(e.dim_w1, e.dim_w0, exps.clone(), i)));
        }
    }
    gens
}

/// Verifies the four Courant axioms as exact polynomial identities over the
/// generating set `{x^a e_i : |a| <= degree_bound}`, with the function `f` of
/// the Leibniz axiom ranging over monomials of the same degrees. Uses the
/// algebroid's own bracket.
pub fn verify_axioms(e: &ConstantCourantAlgebroid, degree_bound: u32) -> Report {
    verify_axioms_with_bracket(e, degree_bound, bracket)
}

/// Same as [`verify_axioms`] but with a caller-supplied bracket; lets tests
/// and diagnostics demonstrate which axiom a broken bracket violates.
pub fn verify_axioms_with_bracket(
    e: &ConstantCourantAlgebroid,
    degree_bound: u32,
    br: impl Fn(&ConstantCourantAlgebroid, &PolySection, &PolySection) -> PolySection,
) -> Report {
    let mut report = Report::new();
    let gens = generators(e, degree_bound);
    let monos = monomials_up_to(e.dim_w0, degree_bound);
    let n = gens.len();

    // Pairwise brackets are shared by axioms 2, 3, and 4.
    let table: Vec<Vec<PolySection>> = gens
        .iter()
        .map(|(_, a)| gens.iter().map(|(_, b)| br(e, a, b)).collect())
        .collect();

    // (1) [e1, f e2] = rho(e1)(f) e2 + f [e1, e2].
    let mut failures = 0usize;
    let mut instances = 0usize;
    for (i1, (n1, e1)) in gens.iter().enumerate() {
        for exps in &monos {
            let f = Poly::monomial(e.dim_w0, exps.clone(), Rat::from_integer(1.into()));
            for (i2, (n2, e2)) in gens.iter().enumerate() {
                instances += 1;
                let lhs = br(e, e1, &e2.scale_poly(&f));
                let rhs = e2
                    .scale_poly(&anchor_apply(e, e1, &f))
                    .add(&table[i1][i2].scale_poly(&f));
                if lhs != rhs {
                    failures += 1;
                    report.fail(
                        format!("axiom1 instance (e1={n1}, f={f}, e2={n2})"),
                        format!("lhs = {lhs}, rhs = {rhs}"),
                    );
                }
            }
        }
    }
    report.record(
        format!("axiom1 Leibniz rule ({instances} instances)"),
        failures == 0,
        format!("{failures} failing instances"),
    );

    // (2) rho(e1)(<e2, e3>) = <[e1,e2], e3> + <e2, [e1,e3]>.
    let mut failures = 0usize;
    for (i1, (n1, e1)) in gens.iter().enumerate() {
        for (i2, (n2, e2)) in gens.iter().enumerate() {
            for (i3, (n3, e3)) in gens.iter().enumerate() {
                let lhs = anchor_apply(e, e1, &pairing_sections(e, e2, e3));
                let rhs = pairing_sections(e, &table[i1][i2], e3)
                    .add(&pairing_sections(e, e2, &table[i1][i3]));
                if lhs != rhs {
                    failures += 1;
                    report.fail(
                        format!("axiom2 instance (e1={n1}, e2={n2}, e3={n3})"),
                        format!("lhs = {lhs}, rhs = {rhs}"),
                    );
                }
            }
        }
    }
    report.record(
        format!("axiom2 invariance of the pairing ({} instances)", n * n * n),
        failures == 0,
        format!("{failures} failing instances"),
    );

    // (3) [[e1,e2],e3] = [e1,[e2,e3]] - [e2,[e1,e3]].
    let mut failures = 0usize;
    for (i1, (n1, e1)) in gens.iter().enumerate() {
        for (i2, (n2, e2)) in gens.iter().enumerate() {
            for (i3, (n3, e3)) in gens.iter().enumerate() {
                let lhs = br(e, &table[i1][i2], e3);
                let rhs = br(e, e1, &table[i2][i3]).sub(&br(e, e2, &table[i1][i3]));
                if lhs != rhs {
                    failures += 1;
                    report.fail(
                        format!("axiom3 instance (e1={n1}, e2={n2}, e3={n3})"),
                        format!("lhs = {lhs}, rhs = {rhs}"),
                    );
                }
            }
        }
    }
    report.record(
        format!("axiom3 Leibniz identity for the bracket ({} instances)", n * n * n),
        failures == 0,
        format!("{failures} failing instances"),
    );

    // (4) [e1,e2] + [e2,e1] = D <e1, e2>.
    let mut failures = 0usize;
    for (i1, (n1, e1)) in gens.iter().enumerate() {
        for (i2, (n2, e2)) in gens.iter().enumerate() {
            let lhs = table[i1][i2].add(&table[i2][i1]);
            let rhs = dee(e, &pairing_sections(e, e1, e2));
            if lhs != rhs {
                failures += 1;
                report.fail(
                    format!("axiom4 instance (e1={n1}, e2={n2})"),
                    format!("lhs = {lhs}, rhs = {rhs}"),
                );
            }
        }
    }
    report.record(
        format!("axiom4 symmetrized bracket is D of the pairing ({} instances)", n * n),
        failures == 0,
        format!("{failures} failing instances"),
    );

    report
}
