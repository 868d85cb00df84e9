//! Subspaces of homogeneous polynomials with a canonical basis.

use thiserror::Error;

use crate::exactalg::{Polynomial, Rational, Variables};
use num::One;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("expected a homogeneous polynomial of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A space of degree-`d` homogeneous polynomials, held in reduced row
/// echelon form with respect to descending graded-lex order: every basis
/// element has leading coefficient 1, no two share a leading monomial, and
/// each leading monomial is absent from all other basis elements. Because
/// the form is unique, two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    ambient_dim: usize,
    degree: u32,
    // Sorted by leading monomial, highest first.
    basis: Vec<Polynomial>,
}

impl GradedSubspace {
    pub fn zero(ambient_dim: usize, degree: u32) -> Self {
        GradedSubspace {
            ambient_dim,
            degree,
            basis: Vec::new(),
        }
    }

    /// Span of `polys`; zero polynomials are ignored.
    pub fn from_polys<I>(ambient_dim: usize, degree: u32, polys: I) -> Result<Self, SubspaceError>
    where
        I: IntoIterator<Item = Polynomial>,
    {
        let mut s = Self::zero(ambient_dim, degree);
        for p in polys {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    fn check(&self, p: &Polynomial) -> Result<(), SubspaceError> {
        if p.ambient_dim() != self.ambient_dim {
            return Err(SubspaceError::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.ambient_dim(),
            });
        }
        if !p.is_zero() && !(p.is_homogeneous() && p.degree() == Some(self.degree)) {
            return Err(SubspaceError::NotHomogeneous {
                expected: self.degree,
            });
        }
        Ok(())
    }

    /// Remainder of `p` after eliminating every pivot monomial.
    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut r = p.clone();
        for b in &self.basis {
            let (lm, _) = b.leading_term().expect("basis elements are nonzero");
            let c = r.coefficient(lm);
            if !num::Zero::is_zero(&c) {
                r -= &b.scale(&c);
            }
        }
        r
    }

    /// Adds `p` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, p: Polynomial) -> Result<bool, SubspaceError> {
        self.check(&p)?;
        let r = self.reduce(&p);
        let Some((lm, lc)) = r.leading_term() else {
            return Ok(false);
        };
        let lm = lm.clone();
        let r = r.scale(&(Rational::one() / lc));
        for b in &mut self.basis {
            let c = b.coefficient(&lm);
            if !num::Zero::is_zero(&c) {
                *b -= &r.scale(&c);
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|b| b.leading_term().expect("nonzero").0 < &lm)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, r);
        Ok(true)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.check(p).is_ok() && self.reduce(p).is_zero()
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.degree == other.degree
            && self.ambient_dim == other.ambient_dim
            && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn render(&self, vars: &Variables) -> Vec<String> {
        self.basis.iter().map(|b| b.render(vars)).collect()
    }
}
