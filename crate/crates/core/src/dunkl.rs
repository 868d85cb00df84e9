//! Rational Dunkl operators and the pairing they define.
//!
//! For a direction `ξ ∈ a`,
//!
//! ```text
//! T_ξ p = ∂_ξ p + Σ_{α > 0} k_α α(ξ) (p - r_α p) / α
//! ```
//!
//! The sum runs over positive roots with weight 1; summing over all roots
//! with weight 1/2 gives the same operator because the terms for `α` and
//! `-α` coincide ([`DunklContext::apply_symmetric`] evaluates that form).
//!
//! To evaluate `p(T)` the coordinate `x_i` is replaced by `T_{ε_i}` where
//! `ε_i = G^{-1} e_i` is the vector dual to `x_i` under the invariant form
//! `G`. For the orthonormal coordinates of types B, C, D and for A1 this is
//! just `T_{e_i}`.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{monomials_of_degree, PolyError, Polynomial, Rational};
use crate::linalg::{dot, Matrix};
use crate::rootsys::{
    act, generate_weyl, invariant_basis, is_invariant, MultiplicityAssignment, RootSystem,
    RootSystemError, WeylGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DunklError {
    #[error("direction has length {found}, expected {expected}")]
    Direction { expected: usize, found: usize },
    #[error("polynomial has {found} variables, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("divided difference by root {root} was not exact")]
    Divisibility { root: usize },
    #[error("input polynomial is not W-invariant")]
    NotInvariant,
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

struct RootTerm {
    root: usize,
    k: Rational,
    covector: Vec<Rational>,
    linear_form: Polynomial,
    reflection: Matrix,
}

/// Root system, Weyl group and multiplicities, with the per-root data the
/// operator needs precomputed.
pub struct DunklContext {
    rs: RootSystem,
    weyl: WeylGroup,
    k: Vec<Rational>,
    terms: Vec<RootTerm>,
    dual_directions: Vec<Vec<Rational>>,
    multiplicities: MultiplicityAssignment,
}

impl DunklContext {
    pub fn new(rs: RootSystem, k: &MultiplicityAssignment) -> Result<Self, DunklError> {
        let weyl = generate_weyl(&rs)?;
        let ks = k.resolve(&rs)?;
        let terms = rs
            .positive_roots()
            .filter(|&i| !ks[i].is_zero())
            .map(|i| RootTerm {
                root: i,
                k: ks[i].clone(),
                covector: rs.root(i).to_vec(),
                linear_form: rs.root_polynomial(i),
                reflection: rs.reflection_by_index(i).clone(),
            })
            .collect();
        let ginv = rs.form().inverse().expect("form validated nondegenerate");
        let dual_directions = (0..rs.rank()).map(|i| ginv.column(i)).collect();
        Ok(DunklContext {
            rs,
            weyl,
            k: ks,
            terms,
            dual_directions,
            multiplicities: k.clone(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn multiplicities(&self) -> &MultiplicityAssignment {
        &self.multiplicities
    }

    pub fn multiplicity(&self, root: usize) -> &Rational {
        &self.k[root]
    }

    /// The direction substituted for the coordinate `x_i` in `p(T)`.
    pub fn dual_direction(&self, i: usize) -> &[Rational] {
        &self.dual_directions[i]
    }

    /// The linear form `x ↦ (ξ, x)` dual to a direction.
    pub fn dual_linear_form(&self, xi: &[Rational]) -> Polynomial {
        Polynomial::linear(&self.rs.form().mul_vec(xi))
    }

    fn check(&self, xi: &[Rational], p: &Polynomial) -> Result<(), DunklError> {
        if xi.len() != self.rank() {
            return Err(DunklError::Direction {
                expected: self.rank(),
                found: xi.len(),
            });
        }
        if p.ambient_dim() != self.rank() {
            return Err(DunklError::Dimension {
                expected: self.rank(),
                found: p.ambient_dim(),
            });
        }
        Ok(())
    }

    fn divided_difference(
        &self,
        p: &Polynomial,
        linear_form: &Polynomial,
        reflection: &Matrix,
        root: usize,
    ) -> Result<Polynomial, DunklError> {
        let diff = p - &p.linear_substitute(reflection)?;
        diff.exact_divide(linear_form)
            .map_err(|_| DunklError::Divisibility { root })
    }

    /// `T_ξ p`.
    pub fn apply(&self, xi: &[Rational], p: &Polynomial) -> Result<Polynomial, DunklError> {
        self.check(xi, p)?;
        let mut out = p.directional_derivative(xi)?;
        if p.degree().is_none_or(|d| d == 0) {
            return Ok(out);
        }
        for t in &self.terms {
            let weight = &t.k * dot(&t.covector, xi);
            if weight.is_zero() {
                continue;
            }
            let dd = self.divided_difference(p, &t.linear_form, &t.reflection, t.root)?;
            out += &dd.scale(&weight);
        }
        Ok(out)
    }

    /// `T_ξ p` evaluated term by term over every root with the factor 1/2.
    pub fn apply_symmetric(&self, xi: &[Rational], p: &Polynomial) -> Result<Polynomial, DunklError> {
        self.check(xi, p)?;
        let mut out = p.directional_derivative(xi)?;
        let half = Rational::new(1.into(), 2.into());
        for i in self.rs.indivisible_roots() {
            let weight = &half * &self.k[i] * self.rs.evaluate_root(i, xi);
            if weight.is_zero() {
                continue;
            }
            let dd = self.divided_difference(
                p,
                &self.rs.root_polynomial(i),
                self.rs.reflection_by_index(i),
                i,
            )?;
            out += &dd.scale(&weight);
        }
        Ok(out)
    }

    /// `p(T) q`, expanding `p` monomial by monomial. For `x_1^{a_1}..x_n^{a_n}`
    /// the operators act right to left: `T_n` first, `T_1` last.
    pub fn compose(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, DunklError> {
        if p.ambient_dim() != self.rank() {
            return Err(DunklError::Dimension {
                expected: self.rank(),
                found: p.ambient_dim(),
            });
        }
        let mut out = Polynomial::zero(self.rank());
        for (m, c) in p.terms() {
            let mut r = q.clone();
            let factors: Vec<(usize, u32)> = m.iter().collect();
            'outer: for &(v, e) in factors.iter().rev() {
                for _ in 0..e {
                    r = self.apply(&self.dual_directions[v], &r)?;
                    if r.is_zero() {
                        break 'outer;
                    }
                }
            }
            out += &r.scale(c);
        }
        Ok(out)
    }

    /// `T_ξ T_η p - T_η T_ξ p`; always zero.
    pub fn commutator(
        &self,
        xi: &[Rational],
        eta: &[Rational],
        p: &Polynomial,
    ) -> Result<Polynomial, DunklError> {
        let a = self.apply(xi, &self.apply(eta, p)?)?;
        let b = self.apply(eta, &self.apply(xi, p)?)?;
        Ok(&a - &b)
    }

    /// `⟨p, q⟩ = (p(T) q)(0)`.
    pub fn pairing(&self, p: &Polynomial, q: &Polynomial) -> Result<Rational, DunklError> {
        // p(T) lowers degree by exactly deg p on homogeneous input, so only
        // components of equal degree contribute to the constant term.
        let qc = q.homogeneous_components();
        let mut total = Rational::zero();
        for (d, pd) in p.homogeneous_components() {
            if let Some(qd) = qc.get(&d) {
                total += self.compose(&pd, qd)?.evaluate_at_zero();
            }
        }
        Ok(total)
    }

    /// Gram matrix of the pairing on the degree-`d` monomials (descending
    /// graded-lex) or on the canonical basis of degree-`d` invariants.
    pub fn gram_matrix(&self, degree: u32, invariants_only: bool) -> Result<Matrix, DunklError> {
        let basis = self.gram_basis(degree, invariants_only)?;
        let n = basis.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.pairing(&basis[i], &basis[j])?;
            }
        }
        Ok(g)
    }

    pub fn gram_basis(&self, degree: u32, invariants_only: bool) -> Result<Vec<Polynomial>, DunklError> {
        let n = self.rank();
        Ok(if invariants_only {
            invariant_basis(&self.weyl, degree)?.basis().to_vec()
        } else {
            monomials_of_degree(n, degree)
                .into_iter()
                .map(|m| Polynomial::term(n, m, Rational::one()))
                .collect()
        })
    }

    /// Whether `p(T) q` is W-invariant for invariant `p`, `q`. Rejects
    /// non-invariant inputs.
    pub fn invariant_stability_check(&self, p: &Polynomial, q: &Polynomial) -> Result<bool, DunklError> {
        if !is_invariant(&self.weyl, p)? || !is_invariant(&self.weyl, q)? {
            return Err(DunklError::NotInvariant);
        }
        let r = self.compose(p, q)?;
        Ok(crate::rootsys::reynolds(&self.weyl, &r)? == r)
    }

    /// `⟨ξ·p, q⟩ == ⟨p, T_ξ q⟩` with `ξ·` multiplication by the dual linear form.
    pub fn adjointness_check(
        &self,
        xi: &[Rational],
        p: &Polynomial,
        q: &Polynomial,
    ) -> Result<bool, DunklError> {
        let lhs = self.pairing(&(&self.dual_linear_form(xi) * p), q)?;
        let rhs = self.pairing(p, &self.apply(xi, q)?)?;
        Ok(lhs == rhs)
    }

    /// `w·T_ξ(w^{-1}·p) == T_{wξ} p`.
    pub fn equivariance_check(&self, w: &Matrix, xi: &[Rational], p: &Polynomial) -> Result<bool, DunklError> {
        let winv = w
            .inverse()
            .ok_or_else(|| RootSystemError::Invalid("singular group element".into()))?;
        let lhs = act(w, &self.apply(xi, &act(&winv, p)?)?)?;
        let rhs = self.apply(&w.mul_vec(xi), p)?;
        Ok(lhs == rhs)
    }
}

/// Exact positive-definiteness certificate from leading principal minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub minors: Vec<Rational>,
}

impl PositivityCertificate {
    pub fn new(gram: &Matrix) -> Self {
        PositivityCertificate {
            minors: gram.leading_principal_minors(),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.minors.iter().all(Signed::is_positive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Variables};
    use crate::rootsys::{build_root_system, CartanType};

    fn ctx(name: &str, k: &str) -> DunklContext {
        let (t, r) = CartanType::parse_with_rank(name).unwrap();
        DunklContext::new(build_root_system(t, r).unwrap(), &k.parse().unwrap()).unwrap()
    }

    fn x(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, &Variables::indexed(n)).unwrap()
    }

    /// Rank-one oracle: T(x^n) = (n + k(1 - (-1)^n)) x^{n-1}.
    fn a1_oracle(n: u32, k: &Rational) -> Polynomial {
        if n == 0 {
            return Polynomial::zero(1);
        }
        let odd = if n % 2 == 1 { rat(2, 1) } else { rat(0, 1) };
        let c = Rational::from_integer(n.into()) + k * odd;
        Polynomial::term(1, crate::exactalg::Monomial::var_pow(0, n - 1), c)
    }

    #[test]
    fn rank_one_matches_oracle() {
        for k in [rat(0, 1), rat(1, 2), rat(1, 1), rat(7, 3)] {
            let c = DunklContext::new(
                build_root_system(CartanType::A, 1).unwrap(),
                &MultiplicityAssignment::uniform(k.clone()),
            )
            .unwrap();
            for n in 0..8 {
                let p = Polynomial::term(1, crate::exactalg::Monomial::var_pow(0, n), rat(1, 1));
                assert_eq!(c.apply(&[rat(1, 1)], &p).unwrap(), a1_oracle(n, &k), "n={n}");
            }
        }
        let c = ctx("A1", "all=1");
        assert_eq!(c.apply(&[rat(1, 1)], &x("x1", 1)).unwrap(), x("3", 1));
        assert_eq!(c.apply(&[rat(1, 1)], &x("x1^2", 1)).unwrap(), x("2 x1", 1));
        assert_eq!(c.apply(&[rat(1, 1)], &x("x1^3", 1)).unwrap(), x("5 x1^2", 1));
    }

    #[test]
    fn zero_multiplicity_is_derivative() {
        for sys in ["A2", "B2", "G2", "A3"] {
            let c = ctx(sys, if sys == "B2" || sys == "G2" { "long=0,short=0" } else { "all=0" });
            let n = c.rank();
            let xi: Vec<Rational> = (0..n).map(|i| rat(i as i64 + 1, 2)).collect();
            for d in 0..=4 {
                for m in monomials_of_degree(n, d) {
                    let p = Polynomial::term(n, m, rat(1, 1));
                    assert_eq!(c.apply(&xi, &p).unwrap(), p.directional_derivative(&xi).unwrap());
                }
            }
        }
    }

    #[test]
    fn constants_are_killed() {
        let c = ctx("G2", "long=1,short=1/3");
        assert!(c.apply(&[rat(1, 1), rat(2, 1)], &x("5", 2)).unwrap().is_zero());
    }

    #[test]
    fn positive_sum_equals_symmetric_sum() {
        let c = ctx("B2", "long=2/3,short=5/2");
        for d in 0..=4 {
            for m in monomials_of_degree(2, d) {
                let p = Polynomial::term(2, m, rat(1, 1));
                let xi = [rat(1, 1), rat(-3, 1)];
                assert_eq!(c.apply(&xi, &p).unwrap(), c.apply_symmetric(&xi, &p).unwrap());
            }
        }
    }

    #[test]
    fn compose_examples() {
        let c = ctx("A1", "all=1/2");
        let q = x("x1^3 + x1", 1);
        assert_eq!(c.compose(&x("x1", 1), &q).unwrap(), c.apply(&[rat(1, 1)], &q).unwrap());
        assert_eq!(c.compose(&x("3/2", 1), &q).unwrap(), q.scale(&rat(3, 2)));
        // T(T(x^2)) = T(2x) = 2(1 + 2k) = 4 at k = 1/2
        assert_eq!(c.compose(&x("x1^2", 1), &x("x1^2", 1)).unwrap(), x("4", 1));
    }

    #[test]
    fn pairing_examples() {
        let c = ctx("A1", "all=1");
        assert_eq!(c.pairing(&x("1", 1), &x("1", 1)).unwrap(), rat(1, 1));
        assert_eq!(c.pairing(&x("x1", 1), &x("x1", 1)).unwrap(), rat(3, 1));
        assert_eq!(c.pairing(&x("x1", 1), &x("x1^2", 1)).unwrap(), rat(0, 1));
        let g = c.gram_matrix(2, false).unwrap();
        assert_eq!(g, Matrix::from_i64_rows(&[&[6]]));
        assert_eq!(c.gram_matrix(0, true).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn adjointness_examples() {
        let c = ctx("A1", "all=2/5");
        assert!(c.adjointness_check(&[rat(1, 1)], &x("1", 1), &x("x1", 1)).unwrap());
        assert!(c.adjointness_check(&[rat(1, 1)], &Polynomial::zero(1), &x("x1", 1)).unwrap());
        assert_eq!(c.pairing(&x("x1", 1), &x("x1", 1)).unwrap(), rat(9, 5));
    }

    #[test]
    fn equivariance_on_a1_and_b2() {
        let c = ctx("A1", "all=3");
        let r = Matrix::from_i64_rows(&[&[-1]]);
        for n in 0..5 {
            let p = Polynomial::term(1, crate::exactalg::Monomial::var_pow(0, n), rat(1, 1));
            assert!(c.equivariance_check(&r, &[rat(1, 1)], &p).unwrap());
        }
        let c = ctx("B2", "long=1,short=1/2");
        let w = c.weyl().clone();
        assert_eq!(w.order(), 8);
        for g in w.elements() {
            for m in monomials_of_degree(2, 3) {
                let p = Polynomial::term(2, m, rat(1, 1));
                assert!(c.equivariance_check(g, &[rat(1, 1), rat(2, 1)], &p).unwrap());
            }
        }
    }

    #[test]
    fn stability_rejects_noninvariant() {
        let c = ctx("A2", "all=1");
        assert!(matches!(
            c.invariant_stability_check(&x("x1", 2), &x("1", 2)),
            Err(DunklError::NotInvariant)
        ));
        let inv2 = invariant_basis(c.weyl(), 2).unwrap().basis()[0].clone();
        assert!(c.invariant_stability_check(&inv2, &inv2).unwrap());
        assert!(c.invariant_stability_check(&x("7", 2), &inv2).unwrap());
    }

    #[test]
    fn b2_stability_example() {
        let c = ctx("B2", "long=1,short=2");
        let p = x("x1^2 + x2^2", 2);
        let q = x("x1^4 + x2^4", 2);
        assert!(c.invariant_stability_check(&p, &q).unwrap());
    }

    #[test]
    fn bad_inputs() {
        let c = ctx("A2", "all=1");
        assert!(matches!(c.apply(&[rat(1, 1)], &x("x1", 2)), Err(DunklError::Direction { .. })));
        assert!(matches!(
            c.apply(&[rat(1, 1), rat(0, 1)], &x("x1", 3)),
            Err(DunklError::Dimension { .. })
        ));
    }
}
