use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Zero};

use super::{Monomial, PolyError, Rational};
use crate::linalg::Matrix;

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed number of anonymous variables `x1..xn`.
///
/// Zero coefficients are never stored, so two equal polynomials have
/// identical term maps. Terms iterate in ascending graded-lex order.
///
/// The arithmetic operators panic when the operands live in different
/// ambient dimensions; the `checked_*` methods report that as an error.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable x{} out of range", index + 1);
        Self::term(nvars, Monomial::var(index), Rational::one())
    }

    /// Panics if the monomial uses a variable outside the ambient dimension.
    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert!(m.max_var().is_none_or(|v| v < nvars), "monomial out of range");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if let Some(v) = m.max_var().filter(|&v| v >= nvars) {
                return Err(PolyError::VariableOutOfRange { var: v, nvars });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut p = Polynomial::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    pub fn ambient_dim(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂p/∂x_var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                let reduced = m.reduce_var(var).expect("exponent checked");
                out.add_term(reduced, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// `∂_ξ p = Σ ξ_i ∂p/∂x_i`.
    pub fn directional_derivative(&self, direction: &[Rational]) -> Result<Polynomial, PolyError> {
        if direction.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: direction.len(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (v, e) in m.iter() {
                let xi = &direction[v];
                if xi.is_zero() {
                    continue;
                }
                let reduced = m.reduce_var(v).expect("variable present");
                out.add_term(reduced, c * xi * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Applies the derivation determined by `x_i ↦ images[i]`.
    pub fn apply_derivation(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (v, e) in m.iter() {
                let img = &images[v];
                if img.is_zero() {
                    continue;
                }
                self.check_dim(img)?;
                let reduced = m.reduce_var(v).expect("variable present");
                let f = c * Rational::from_integer(e.into());
                for (im, ic) in &img.terms {
                    out.add_term(reduced.mul(im), &f * ic);
                }
            }
        }
        Ok(out)
    }

    /// Composition `p(Mx)`: each `x_i` is replaced by `Σ_j M[i][j] x_j`.
    ///
    /// With this convention substituting `M` and then `N` equals
    /// substituting `M·N`.
    pub fn linear_substitute(&self, matrix: &Matrix) -> Result<Polynomial, PolyError> {
        if matrix.rows() != self.nvars || matrix.cols() != self.nvars {
            return Err(PolyError::ShapeMismatch {
                nvars: self.nvars,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = self.nvars;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::linear(matrix.row(i)))
            .collect();
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(n);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(n, c.clone());
            for (v, e) in m.iter() {
                let power = powers.entry((v, e)).or_insert_with(|| images[v].pow(e));
                acc = &acc * power;
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Division by a single polynomial under graded-lex order, returning
    /// `(quotient, remainder)` with `self = quotient·d + remainder` and no
    /// term of the remainder divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        self.check_dim(d)?;
        let (lm, lc) = match d.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::DivisionByZero),
        };
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        let mut remainder = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rest.terms.pop_last() {
            match m.divide(&lm) {
                Some(qm) => {
                    let qc = c / &lc;
                    // The leading term cancels exactly; subtract the rest of d.
                    for (dm, dc) in d.terms.iter().rev().skip(1) {
                        rest.add_term(dm.mul(&qm), -(&qc * dc));
                    }
                    quotient.add_term(qm, qc);
                }
                None => remainder.add_term(m, c),
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient `self / d`, or [`PolyError::NotDivisible`] carrying the
    /// nonzero remainder.
    pub fn exact_divide(&self, d: &Polynomial) -> Result<Polynomial, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible { remainder: r })
        }
    }

    pub fn evaluate_at_zero(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                t *= num::pow(point[v].clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Moves the polynomial into `new_nvars` variables via `f`; monomials
    /// containing a variable that maps to `None` are dropped.
    pub fn remap_variables(
        &self,
        new_nvars: usize,
        f: impl Fn(usize) -> Option<usize>,
    ) -> Result<Polynomial, PolyError> {
        Polynomial::from_terms(
            new_nvars,
            self.terms
                .iter()
                .filter_map(|(m, c)| m.remap(&f).map(|m| (m, c.clone()))),
        )
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
