//! Restriction of invariants of `g_m` to the Cartan part `h_m`, and the
//! divisibility criterion for membership in its image.

use std::collections::BTreeMap;

use num::Zero;
use thiserror::Error;

use crate::exactalg::{PolyError, Polynomial, Rational, Variables};
use crate::liealg::{takiff_extend, LieAlgebra, LieError, TakiffAlgebra, DEFAULT_WORK_BOUND};
use crate::linalg::{Matrix, SparseEchelon};
use crate::rootsys::{act, generate_weyl, invariant_basis, RootSystem, RootSystemError, WeylGroup};
use crate::subspace::{GradedSubspace, SubspaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictionError {
    #[error("{0} has no diagonal Cartan action")]
    NoCartan(String),
    #[error("restriction is not injective in degree {degree}: {invariants} invariants, image of dimension {image}")]
    NotInjective { degree: u32, invariants: usize, image: usize },
    #[error("the divisibility criterion needs a truncation depth m >= 1")]
    DepthZero,
    #[error("expected a polynomial in {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

const ALIASES: [&str; 4] = ["u", "v", "w", "z"];

/// Coordinates on `h_m = h ⊗ C[T]/T^{m+1}` inside `g_m`, the root system of
/// the base algebra, and its Weyl group acting diagonally on `h_m`.
///
/// Variable `s·r + c` of `S[h_m]` is `H_c ⊗ T^s`, where `H_c` runs over the
/// marked Cartan basis of `g` (`r` of them).
#[derive(Clone, Debug)]
pub struct CartanFrame {
    gm: TakiffAlgebra,
    // (base index, power of T), s-major
    cartan_vars: Vec<(usize, usize)>,
    aliases: Vec<String>,
    raw_names: Vec<String>,
    root_system: RootSystem,
    weyl: WeylGroup,
    weyl_diag: WeylGroup,
    work_bound: u64,
}

impl CartanFrame {
    pub fn new(gm: TakiffAlgebra) -> Result<CartanFrame, RestrictionError> {
        let g = gm.base();
        let weights = g.cartan_weights().ok_or_else(|| RestrictionError::NoCartan(g.name().into()))?;
        let cartan = g.cartan_indices().to_vec();
        let r = cartan.len();
        let roots: Vec<Vec<Rational>> = weights
            .into_iter()
            .filter(|w| w.iter().any(|x| !x.is_zero()))
            .collect();
        let mut form = Matrix::zeros(r, r);
        for (a, &ha) in cartan.iter().enumerate() {
            for (b, &hb) in cartan.iter().enumerate() {
                form[(a, b)] = g.form()[(ha, hb)].clone();
            }
        }
        let root_system = RootSystem::from_roots(g.name(), roots, form)?;
        // Polynomials on h_m have the Cartan elements as variables, so a
        // reflection R (acting on vectors) substitutes through R^T.
        let weyl = generate_weyl(&root_system)?.contragredient();
        let m = gm.depth();
        let weyl_diag = weyl.diagonal(m + 1);

        let cartan_vars: Vec<(usize, usize)> =
            (0..=m).flat_map(|s| cartan.iter().map(move |&i| (i, s))).collect();
        let raw_names: Vec<String> = cartan_vars
            .iter()
            .map(|&(i, s)| gm.algebra().basis_names()[gm.index(i, s)].clone())
            .collect();
        let aliases = if r == 1 {
            ALIASES[..=m].iter().map(|s| s.to_string()).collect()
        } else {
            raw_names.clone()
        };
        Ok(CartanFrame {
            gm,
            cartan_vars,
            aliases,
            raw_names,
            root_system,
            weyl,
            weyl_diag,
            work_bound: DEFAULT_WORK_BOUND,
        })
    }

    /// Frame for `sl(n) ⊗ C[T]/T^{m+1}`.
    pub fn for_sl(n: usize, m: usize) -> Result<CartanFrame, RestrictionError> {
        CartanFrame::new(takiff_extend(&crate::liealg::make_sl(n)?, m)?)
    }

    pub fn with_work_bound(mut self, bound: u64) -> Self {
        self.work_bound = bound;
        self
    }

    pub fn work_bound(&self) -> u64 {
        self.work_bound
    }

    pub fn takiff(&self) -> &TakiffAlgebra {
        &self.gm
    }

    pub fn depth(&self) -> usize {
        self.gm.depth()
    }

    /// Rank of the base algebra.
    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    /// Number of variables of `S[h_m]`.
    pub fn dim(&self) -> usize {
        self.cartan_vars.len()
    }

    pub fn cartan_vars(&self) -> &[(usize, usize)] {
        &self.cartan_vars
    }

    pub fn var_index(&self, c: usize, s: usize) -> usize {
        s * self.rank() + c
    }

    /// `u, v, w, ...` for rank one, the `g_m` basis names otherwise.
    pub fn variables(&self) -> Variables {
        Variables::named(self.aliases.iter().cloned())
    }

    pub fn raw_variables(&self) -> Variables {
        Variables::named(self.raw_names.iter().cloned())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    /// Weyl group acting on `S[h]`.
    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Weyl group acting diagonally on `S[h_m]`.
    pub fn weyl_diag(&self) -> &WeylGroup {
        &self.weyl_diag
    }

    /// The diagonal action of the reflection in root `i` on `S[h_m]`.
    pub fn diagonal_reflection(&self, i: usize) -> Matrix {
        let r = self.rank();
        let refl = self.root_system.reflection_by_index(i).transpose();
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for s in 0..=self.depth() {
            for a in 0..r {
                for b in 0..r {
                    out[(s * r + a, s * r + b)] = refl[(a, b)].clone();
                }
            }
        }
        out
    }

    /// Images of the variables under `δ(H_α ⊗ T^m)`: the pairing of
    /// `H_α ⊗ T^m` with `H_c ⊗ T^s`, nonzero only for `s = 0`.
    pub fn delta_images(&self, root: usize) -> Vec<Polynomial> {
        let n = self.dim();
        let pairing = self.root_system.form().mul_vec(self.root_system.coroot(root));
        (0..n)
            .map(|k| {
                if k < self.rank() {
                    Polynomial::constant(n, pairing[k].clone())
                } else {
                    Polynomial::zero(n)
                }
            })
            .collect()
    }

    /// `δ(H_α ⊗ T^m) p`.
    pub fn delta(&self, root: usize, p: &Polynomial) -> Result<Polynomial, RestrictionError> {
        self.check(p)?;
        Ok(p.apply_derivation(&self.delta_images(root))?)
    }

    /// The coordinate of `H_α ⊗ T^m`, as a linear form on `h_m`.
    pub fn top_coroot_form(&self, root: usize) -> Polynomial {
        let n = self.dim();
        let mut coeffs = vec![Rational::zero(); n];
        let m = self.depth();
        for (c, h) in self.root_system.coroot(root).iter().enumerate() {
            coeffs[self.var_index(c, m)] = h.clone();
        }
        Polynomial::linear(&coeffs)
    }

    fn check(&self, p: &Polynomial) -> Result<(), RestrictionError> {
        if p.ambient_dim() != self.dim() {
            return Err(RestrictionError::DimensionMismatch {
                expected: self.dim(),
                found: p.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Remainders of `δⁿ p` modulo `ℓⁿ`, `ℓ` the `H_α ⊗ T^m` coordinate,
    /// for `n = 1..=deg p`. Beyond `deg p` the iterates vanish.
    fn divisibility_remainders(&self, root: usize, p: &Polynomial) -> Result<Vec<Polynomial>, RestrictionError> {
        let images = self.delta_images(root);
        let ell = self.top_coroot_form(root);
        let mut out = Vec::new();
        let mut current = p.clone();
        let mut power = Polynomial::one(self.dim());
        for _ in 0..p.degree().unwrap_or(0) {
            current = current.apply_derivation(&images)?;
            power = &power * &ell;
            if current.is_zero() {
                break;
            }
            out.push(current.div_rem(&power)?.1);
        }
        Ok(out)
    }
}

/// Sets every non-Cartan coordinate of a polynomial on `g_m` to zero.
pub fn restrict(frame: &CartanFrame, p: &Polynomial) -> Result<Polynomial, RestrictionError> {
    let gm = frame.takiff();
    if p.ambient_dim() != gm.dim() {
        return Err(RestrictionError::DimensionMismatch {
            expected: gm.dim(),
            found: p.ambient_dim(),
        });
    }
    let mut target = vec![None; gm.dim()];
    for (k, &(i, s)) in frame.cartan_vars().iter().enumerate() {
        target[gm.index(i, s)] = Some(k);
    }
    Ok(p.remap_variables(frame.dim(), |v| target[v])?)
}

/// Restriction of the degree-`d` invariants of `g_m`.
pub fn image_basis(frame: &CartanFrame, degree: u32) -> Result<GradedSubspace, RestrictionError> {
    let inv = frame.takiff().invariants_graded(degree, frame.work_bound())?;
    let mut image = GradedSubspace::zero(frame.dim(), degree);
    for p in inv.basis() {
        image.insert(restrict(frame, p)?)?;
    }
    if image.dim() != inv.dim() {
        return Err(RestrictionError::NotInjective {
            degree,
            invariants: inv.dim(),
            image: image.dim(),
        });
    }
    Ok(image)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No,
    /// Not decided: computing the image exceeded the work bound.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityFailure {
    pub root: usize,
    pub n: u32,
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub polynomial: Polynomial,
    /// A root whose diagonal reflection moves `p`.
    pub reflection_failure: Option<usize>,
    /// The first `(α, n)` with `ℓⁿ ∤ δⁿ p`.
    pub divisibility_failure: Option<DivisibilityFailure>,
    pub in_image: Membership,
    pub work_bound: u64,
}

impl CriterionReport {
    pub fn condition1(&self) -> bool {
        self.reflection_failure.is_none()
    }

    pub fn condition2(&self) -> bool {
        self.divisibility_failure.is_none()
    }

    pub fn conditions_pass(&self) -> bool {
        self.condition1() && self.condition2()
    }

    /// Membership in the image forces both conditions.
    pub fn is_consistent(&self) -> bool {
        self.in_image != Membership::Yes || self.conditions_pass()
    }
}

/// Checks invariance under every diagonal reflection and, for every root
/// and `n = 1..=deg p`, divisibility of `δⁿ(H_α ⊗ T^m) p` by the `n`-th power
/// of the coordinate of `H_α ⊗ T^m`. Membership in the image is decided
/// degree by degree when the work bound allows.
pub fn criterion_check(frame: &CartanFrame, p: &Polynomial) -> Result<CriterionReport, RestrictionError> {
    if frame.depth() == 0 {
        return Err(RestrictionError::DepthZero);
    }
    frame.check(p)?;
    let rs = frame.root_system();
    let mut reflection_failure = None;
    for i in 0..rs.num_roots() {
        if act(&frame.diagonal_reflection(i), p)? != *p {
            reflection_failure = Some(i);
            break;
        }
    }
    let mut divisibility_failure = None;
    'roots: for i in 0..rs.num_roots() {
        for (n, rem) in frame.divisibility_remainders(i, p)?.into_iter().enumerate() {
            if !rem.is_zero() {
                divisibility_failure = Some(DivisibilityFailure {
                    root: i,
                    n: n as u32 + 1,
                    remainder: rem,
                });
                break 'roots;
            }
        }
    }
    let mut in_image = Membership::Yes;
    for (d, part) in p.homogeneous_components() {
        match image_basis(frame, d) {
            Ok(image) => {
                if !image.contains(&part) {
                    in_image = Membership::No;
                    break;
                }
            }
            Err(RestrictionError::Lie(LieError::WorkBound { .. })) => in_image = Membership::Unknown,
            Err(e) => return Err(e),
        }
    }
    Ok(CriterionReport {
        polynomial: p.clone(),
        reflection_failure,
        divisibility_failure,
        in_image,
        work_bound: frame.work_bound(),
    })
}

/// All degree-`d` polynomials on `h_m` satisfying both conditions: the
/// diagonal invariants, cut down by the vanishing of every remainder.
pub fn criterion_subspace(frame: &CartanFrame, degree: u32) -> Result<GradedSubspace, RestrictionError> {
    if frame.depth() == 0 {
        return Err(RestrictionError::DepthZero);
    }
    let invariants = invariant_basis(frame.weyl_diag(), degree)?;
    let basis = invariants.basis();
    let mut ech = SparseEchelon::new(basis.len());
    for root in 0..frame.root_system().num_roots() {
        let mut rows: BTreeMap<(u32, crate::exactalg::Monomial), Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, b) in basis.iter().enumerate() {
            for (n, rem) in frame.divisibility_remainders(root, b)?.into_iter().enumerate() {
                for (m, c) in rem.terms() {
                    rows.entry((n as u32, m.clone())).or_default().push((j, c.clone()));
                }
            }
        }
        for row in rows.into_values() {
            ech.insert(row);
        }
    }
    let mut out = GradedSubspace::zero(frame.dim(), degree);
    for v in ech.kernel() {
        let mut p = Polynomial::zero(frame.dim());
        for (b, c) in basis.iter().zip(v) {
            if !c.is_zero() {
                p += &b.scale(&c);
            }
        }
        out.insert(p)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyReport {
    pub degree: u32,
    pub dim_invariants: usize,
    pub dim_restricted: usize,
    pub dim_target: usize,
    /// Every restricted invariant is W-invariant.
    pub restricted_in_target: bool,
}

impl ChevalleyReport {
    pub fn is_isomorphism(&self) -> bool {
        self.restricted_in_target
            && self.dim_invariants == self.dim_restricted
            && self.dim_restricted == self.dim_target
    }
}

/// Compares `S^d[g]^g`, its restriction to `h`, and `S^d[h]^W`.
pub fn chevalley_graded_check(
    g: &LieAlgebra,
    degree: u32,
    work_bound: u64,
) -> Result<ChevalleyReport, RestrictionError> {
    let frame = CartanFrame::new(takiff_extend(g, 0)?)?.with_work_bound(work_bound);
    let inv = g.invariants_graded(degree, work_bound)?;
    let mut restricted = GradedSubspace::zero(frame.dim(), degree);
    for p in inv.basis() {
        restricted.insert(restrict(&frame, p)?)?;
    }
    let target = invariant_basis(frame.weyl(), degree)?;
    Ok(ChevalleyReport {
        degree,
        dim_invariants: inv.dim(),
        dim_restricted: restricted.dim(),
        dim_target: target.dim(),
        restricted_in_target: restricted.is_subspace_of(&target),
    })
}

/// `true` when `p` is fixed by all of the diagonal Weyl group.
pub fn is_diagonal_invariant(frame: &CartanFrame, p: &Polynomial) -> Result<bool, RestrictionError> {
    Ok(crate::rootsys::is_invariant(frame.weyl_diag(), p)?)
}

/// The scalar `δ(H_α ⊗ T^m)` assigns to a single coordinate of `h_m`.
pub fn delta_on_coordinate(frame: &CartanFrame, root: usize, var: usize) -> Rational {
    let p = Polynomial::var(frame.dim(), var);
    frame
        .delta(root, &p)
        .map(|q| q.evaluate_at_zero())
        .unwrap_or_else(|_| Rational::zero())
}
