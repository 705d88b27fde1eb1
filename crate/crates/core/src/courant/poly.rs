//! Sparse multivariate polynomials over Q and polynomial-coefficient
//! sections of a trivial bundle. Exponent vectors are the term keys, so the
//! term order is the lexicographic order on exponents and is canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactla::{format_rat, Rat};

/// A polynomial in `n_vars` variables `x0, ..., x{n-1}` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(n_vars);
        p.insert(vec![0; n_vars], c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Poly::constant(n_vars, Rat::from_integer(1.into()))
    }

    /// The coordinate function `x_i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index out of range");
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        Poly::monomial(n_vars, exps, Rat::from_integer(1.into()))
    }

    pub fn monomial(n_vars: usize, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), n_vars, "exponent vector length");
        let mut p = Poly::zero(n_vars);
        p.insert(exps, coeff);
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn insert(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = Poly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.n_vars, "variable index out of range");
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] -= 1;
            out.insert(exps, c * &Rat::from_integer(e[var].into()));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rat(coeff))?;
            } else if coeff == &Rat::from_integer(1.into()) {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rat(coeff), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A section of the trivial bundle `W1 x W0 -> W0`: one polynomial in the
/// base coordinates per fiber coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySection {
    components: Vec<Poly>,
}

impl PolySection {
    pub fn new(components: Vec<Poly>) -> Self {
        if let Some(first) = components.first() {
            assert!(
                components.iter().all(|p| p.n_vars() == first.n_vars()),
                "components must share the variable count"
            );
        }
        PolySection { components }
    }

    pub fn zero(dim_w1: usize, n_vars: usize) -> Self {
        PolySection {
            components: vec![Poly::zero(n_vars); dim_w1],
        }
    }

    /// A constant section from a fiber vector.
    pub fn constant(n_vars: usize, coords: &[Rat]) -> Self {
        PolySection {
            components: coords
                .iter()
                .map(|c| Poly::constant(n_vars, c.clone()))
                .collect(),
        }
    }

    /// The section `x^exps * e_i`.
    pub fn monomial(dim_w1: usize, n_vars: usize, exps: Vec<u32>, i: usize) -> Self {
        assert!(i < dim_w1, "basis index out of range");
        let mut s = PolySection::zero(dim_w1, n_vars);
        s.components[i] = Poly::monomial(n_vars, exps, Rat::from_integer(1.into()));
        s
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &PolySection) -> PolySection {
        assert_eq!(self.dim(), other.dim());
        PolySection {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolySection) -> PolySection {
        assert_eq!(self.dim(), other.dim());
        PolySection {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Multiplies every component by a polynomial function.
    pub fn scale_poly(&self, f: &Poly) -> PolySection {
        PolySection {
            components: self.components.iter().map(|p| p.mul(f)).collect(),
        }
    }
}

impl fmt::Display for PolySection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
