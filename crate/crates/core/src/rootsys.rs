//! Root systems over Q, their Weyl groups as explicit matrices, and the
//! Reynolds projector onto invariant polynomials.
//!
//! Coordinates: a root system of rank `n` lives on `a = Q^n` with a
//! W-invariant inner product given by a Gram matrix `form`. Polynomials on
//! `a` are written in the coordinates `x_i` dual to the chosen basis, and a
//! root is stored as its covector `(α(f_1), ..., α(f_n))`, so it doubles as
//! the linear polynomial `α(x)`. Weyl group elements are matrices acting on
//! vectors of `a`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{monomials_of_degree, parse_rational, PolyError, Polynomial, Rational};
use crate::linalg::{dot, Matrix};
use crate::subspace::{GradedSubspace, SubspaceError};

/// Upper bound on generated group orders; the largest supported group has 48 elements.
pub const WEYL_CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("invalid root data: {0}")]
    Invalid(String),
    #[error("vector is not a root of {0}")]
    NotARoot(String),
    #[error("group closure exceeded {0} elements")]
    ClosureBound(usize),
    #[error("invalid multiplicities: {0}")]
    Multiplicity(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl CartanType {
    /// Parses `"A2"`, `"g2"`, ... into a type and rank.
    pub fn parse_with_rank(s: &str) -> Result<(CartanType, usize), RootSystemError> {
        let s = s.trim();
        let unsupported = || RootSystemError::Unsupported(s.to_string());
        let mut chars = s.chars();
        let ty = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('G') => CartanType::G,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        Ok((ty, rank))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Which W-orbit of roots a multiplicity applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitLabel {
    All,
    Long,
    Short,
}

impl OrbitLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitLabel::All => "all",
            OrbitLabel::Long => "long",
            OrbitLabel::Short => "short",
        }
    }
}

impl FromStr for OrbitLabel {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "all" => Ok(OrbitLabel::All),
            "long" => Ok(OrbitLabel::Long),
            "short" => Ok(OrbitLabel::Short),
            other => Err(RootSystemError::Multiplicity(format!("unknown orbit label '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    name: String,
    rank: usize,
    form: Matrix,
    roots: Vec<Vec<Rational>>,
    coroots: Vec<Vec<Rational>>,
    reflections: Vec<Matrix>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    orbits: Vec<OrbitLabel>,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// All vectors `±e_i ± e_j` (i < j) in Z^n.
fn pm_pairs(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    out
}

/// Covectors of ambient roots restricted to the sum-zero hyperplane of
/// Z^{n+1}, in the basis `f_i = e_i - e_{n+1}`.
fn restrict_to_hyperplane(ambient_roots: &[Vec<i64>], n: usize) -> Vec<Vec<Rational>> {
    ambient_roots
        .iter()
        .map(|r| (0..n).map(|i| q(r[i] - r[n])).collect())
        .collect()
}

// Gram matrix of f_i = e_i - e_{n+1}, scaled by `scale`.
fn hyperplane_form(n: usize, scale: Rational) -> Matrix {
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = &scale * q(if i == j { 2 } else { 1 });
        }
    }
    g
}

/// Builds one of the supported systems: A1..A3, B2, B3, C2, C3, D3, G2.
///
/// B, C, D use the standard coordinates of Q^n. A_n and G2 use the
/// sum-zero hyperplane of Q^{n+1} (resp. Q^3) with basis `e_i - e_{n+1}`;
/// for A_n the induced inner product is halved, so that A1 is the line with
/// root `α = 2x1` and unit form.
pub fn build_root_system(ty: CartanType, rank: usize) -> Result<RootSystem, RootSystemError> {
    let name = format!("{ty}{rank}");
    let unsupported = || RootSystemError::Unsupported(name.clone());
    let (roots, form) = match (ty, rank) {
        (CartanType::A, 1..=3) => {
            let n = rank;
            let mut ambient = Vec::new();
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut v = vec![0; n + 1];
                        v[i] = 1;
                        v[j] = -1;
                        ambient.push(v);
                    }
                }
            }
            (restrict_to_hyperplane(&ambient, n), hyperplane_form(n, Rational::new(1.into(), 2.into())))
        }
        (CartanType::B, 2..=3) => {
            let mut roots: Vec<Vec<Rational>> = pm_pairs(rank).iter().map(|v| qvec(v)).collect();
            for i in 0..rank {
                for s in [1, -1] {
                    let mut v = vec![0; rank];
                    v[i] = s;
                    roots.push(qvec(&v));
                }
            }
            (roots, Matrix::identity(rank))
        }
        (CartanType::C, 2..=3) => {
            let mut roots: Vec<Vec<Rational>> = pm_pairs(rank).iter().map(|v| qvec(v)).collect();
            for i in 0..rank {
                for s in [2, -2] {
                    let mut v = vec![0; rank];
                    v[i] = s;
                    roots.push(qvec(&v));
                }
            }
            (roots, Matrix::identity(rank))
        }
        (CartanType::D, 3) => (
            pm_pairs(3).iter().map(|v| qvec(v)).collect(),
            Matrix::identity(3),
        ),
        (CartanType::G, 2) => {
            let mut ambient = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut short = vec![0; 3];
                        short[i] = 1;
                        short[j] = -1;
                        ambient.push(short);
                    }
                }
                for s in [1, -1] {
                    let mut long = vec![-s; 3];
                    long[i] = 2 * s;
                    ambient.push(long);
                }
            }
            (restrict_to_hyperplane(&ambient, 2), hyperplane_form(2, q(1)))
        }
        _ => return Err(unsupported()),
    };
    RootSystem::from_roots(&name, roots, form)
}

impl RootSystem {
    /// Validates root data given as covectors together with a W-invariant
    /// Gram matrix, and derives coroots, reflections, a positive system,
    /// simple roots and the orbit (length) classes.
    pub fn from_roots(
        name: &str,
        roots: Vec<Vec<Rational>>,
        form: Matrix,
    ) -> Result<RootSystem, RootSystemError> {
        let invalid = |m: &str| RootSystemError::Invalid(format!("{name}: {m}"));
        let rank = form.rows();
        if !form.is_symmetric() || rank == 0 {
            return Err(invalid("form must be a nonempty symmetric matrix"));
        }
        let form_inv = form.inverse().ok_or_else(|| invalid("form is degenerate"))?;
        let mut uniq: Vec<Vec<Rational>> = Vec::new();
        for r in roots {
            if r.len() != rank {
                return Err(invalid("root has wrong length"));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(invalid("zero root"));
            }
            if !uniq.contains(&r) {
                uniq.push(r);
            }
        }
        let roots = uniq;
        let index: HashSet<&Vec<Rational>> = roots.iter().collect();
        for r in &roots {
            let neg: Vec<Rational> = r.iter().map(|x| -x).collect();
            if !index.contains(&neg) {
                return Err(invalid("roots not closed under negation"));
            }
            let twice: Vec<Rational> = r.iter().map(|x| x * q(2)).collect();
            if index.contains(&twice) {
                return Err(invalid("non-reduced systems are not realized geometrically"));
            }
        }

        let mut coroots = Vec::with_capacity(roots.len());
        let mut reflections = Vec::with_capacity(roots.len());
        let mut norms = Vec::with_capacity(roots.len());
        for a in &roots {
            let dual = form_inv.mul_vec(a);
            let norm = dot(a, &dual);
            if !norm.is_positive() {
                return Err(invalid("form is not positive on roots"));
            }
            let h: Vec<Rational> = dual.iter().map(|x| x * q(2) / &norm).collect();
            debug_assert_eq!(dot(a, &h), q(2));
            let mut refl = Matrix::identity(rank);
            for i in 0..rank {
                for j in 0..rank {
                    refl[(i, j)] -= &h[i] * &a[j];
                }
            }
            coroots.push(h);
            reflections.push(refl);
            norms.push(norm);
        }
        // Each reflection must permute the roots (acting on covectors by the transpose).
        for refl in &reflections {
            let t = refl.transpose();
            for b in &roots {
                if !index.contains(&t.mul_vec(b)) {
                    return Err(invalid("reflection does not permute the roots"));
                }
            }
        }

        let h0 = generic_vector(&roots);
        let positive: Vec<bool> = roots.iter().map(|a| dot(a, &h0).is_positive()).collect();
        let pos_idx: Vec<usize> = (0..roots.len()).filter(|&i| positive[i]).collect();
        let pos_set: HashSet<&Vec<Rational>> = pos_idx.iter().map(|&i| &roots[i]).collect();
        let simple: Vec<usize> = pos_idx
            .iter()
            .copied()
            .filter(|&i| {
                !pos_idx.iter().any(|&j| {
                    let diff: Vec<Rational> =
                        roots[i].iter().zip(&roots[j]).map(|(x, y)| x - y).collect();
                    j != i && pos_set.contains(&diff)
                })
            })
            .collect();
        if simple.len() != rank {
            return Err(invalid("roots do not span with a simple system of full rank"));
        }

        let mut lengths: Vec<Rational> = norms.clone();
        lengths.sort();
        lengths.dedup();
        let orbits = match lengths.len() {
            1 => vec![OrbitLabel::All; roots.len()],
            2 => norms
                .iter()
                .map(|n| if *n == lengths[1] { OrbitLabel::Long } else { OrbitLabel::Short })
                .collect(),
            _ => return Err(invalid("more than two root lengths")),
        };

        Ok(RootSystem {
            name: name.to_string(),
            rank,
            form,
            roots,
            coroots,
            reflections,
            positive,
            simple,
            orbits,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Gram matrix of the W-invariant inner product on `a`.
    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<Rational>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[Rational] {
        &self.roots[i]
    }

    /// The root as the linear polynomial `α(x)` on `a`.
    pub fn root_polynomial(&self, i: usize) -> Polynomial {
        Polynomial::linear(&self.roots[i])
    }

    pub fn coroot(&self, i: usize) -> &[Rational] {
        &self.coroots[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    /// Indivisible roots; every supported system is reduced, so this is all of them.
    pub fn indivisible_roots(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.roots.len()
    }

    pub fn orbit(&self, i: usize) -> OrbitLabel {
        self.orbits[i]
    }

    pub fn orbit_labels(&self) -> Vec<OrbitLabel> {
        let mut v = self.orbits.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn index_of_root(&self, root: &[Rational]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }

    /// The reflection `r_α(H) = H - α(H) H_α` as a matrix on `a`.
    pub fn reflection(&self, root: &[Rational]) -> Result<&Matrix, RootSystemError> {
        let i = self
            .index_of_root(root)
            .ok_or_else(|| RootSystemError::NotARoot(self.name.clone()))?;
        Ok(&self.reflections[i])
    }

    pub fn reflection_by_index(&self, i: usize) -> &Matrix {
        &self.reflections[i]
    }

    /// Pairing `α(H)` of the i-th root with a vector of `a`.
    pub fn evaluate_root(&self, i: usize, h: &[Rational]) -> Rational {
        dot(&self.roots[i], h)
    }
}

// A vector on which no root vanishes; deterministic (1, t, t^2, ...) search.
fn generic_vector(roots: &[Vec<Rational>]) -> Vec<Rational> {
    let n = roots[0].len();
    for t in 2i64.. {
        let mut v = Vec::with_capacity(n);
        let mut p = q(1);
        for _ in 0..n {
            v.push(p.clone());
            p *= q(t);
        }
        if roots.iter().all(|a| !dot(a, &v).is_zero()) {
            return v;
        }
    }
    unreachable!()
}

/// A finite matrix group, stored element by element.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<Matrix>,
    generators: Vec<Matrix>,
}

impl WeylGroup {
    /// Breadth-first closure of `generators` starting from the identity.
    pub fn generate(generators: Vec<Matrix>) -> Result<WeylGroup, RootSystemError> {
        let n = generators
            .first()
            .map(Matrix::rows)
            .ok_or_else(|| RootSystemError::Invalid("no generators".into()))?;
        let id = Matrix::identity(n);
        let mut seen: HashSet<Matrix> = HashSet::new();
        let mut elements = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = s.mul(&g);
                if !seen.contains(&h) {
                    if seen.len() >= WEYL_CLOSURE_BOUND {
                        return Err(RootSystemError::ClosureBound(WEYL_CLOSURE_BOUND));
                    }
                    seen.insert(h.clone());
                    queue.push_back(h);
                }
            }
            elements.push(g);
        }
        Ok(WeylGroup {
            elements,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.elements.contains(m)
    }

    /// The same abstract group acting through `w ↦ (w^{-1})^T`.
    pub fn contragredient(&self) -> WeylGroup {
        let f = |m: &Matrix| m.inverse().expect("group elements are invertible").transpose();
        WeylGroup {
            elements: self.elements.iter().map(f).collect(),
            generators: self.generators.iter().map(f).collect(),
        }
    }

    /// Acts by `copies` identical diagonal blocks on `a ⊕ ... ⊕ a`.
    pub fn diagonal(&self, copies: usize) -> WeylGroup {
        let f = |m: &Matrix| {
            let n = m.rows();
            let mut out = Matrix::zeros(n * copies, n * copies);
            for c in 0..copies {
                for i in 0..n {
                    for j in 0..n {
                        out[(c * n + i, c * n + j)] = m[(i, j)].clone();
                    }
                }
            }
            out
        };
        WeylGroup {
            elements: self.elements.iter().map(f).collect(),
            generators: self.generators.iter().map(f).collect(),
        }
    }
}

/// Weyl group generated by the simple reflections.
pub fn generate_weyl(rs: &RootSystem) -> Result<WeylGroup, RootSystemError> {
    WeylGroup::generate(
        rs.simple_roots()
            .iter()
            .map(|&i| rs.reflection_by_index(i).clone())
            .collect(),
    )
}

/// Left action `w·p = p ∘ w^{-1}`.
pub fn act(w: &Matrix, p: &Polynomial) -> Result<Polynomial, RootSystemError> {
    let inv = w
        .inverse()
        .ok_or_else(|| RootSystemError::Invalid("singular group element".into()))?;
    Ok(p.linear_substitute(&inv)?)
}

/// Average of `w·p` over the group.
pub fn reynolds(group: &WeylGroup, p: &Polynomial) -> Result<Polynomial, RootSystemError> {
    // Summing p ∘ w over all w is the same as summing p ∘ w^{-1}.
    let mut acc = Polynomial::zero(p.ambient_dim());
    for w in group.elements() {
        acc += &p.linear_substitute(w)?;
    }
    Ok(acc.scale(&Rational::new(One::one(), group.order().into())))
}

pub fn is_invariant(group: &WeylGroup, p: &Polynomial) -> Result<bool, RootSystemError> {
    for g in group.generators() {
        if act(g, p)? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree-`d` invariants, spanned by the Reynolds images of all monomials.
pub fn invariant_basis(group: &WeylGroup, degree: u32) -> Result<GradedSubspace, RootSystemError> {
    let n = group.rank();
    let mut space = GradedSubspace::zero(n, degree);
    for m in monomials_of_degree(n, degree) {
        let p = Polynomial::term(n, m, Rational::one());
        space.insert(reynolds(group, &p)?)?;
    }
    Ok(space)
}

/// Multiplicity `k` per root orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityAssignment {
    values: BTreeMap<OrbitLabel, Rational>,
}

impl MultiplicityAssignment {
    pub fn uniform(k: Rational) -> Self {
        MultiplicityAssignment {
            values: BTreeMap::from([(OrbitLabel::All, k)]),
        }
    }

    pub fn long_short(long: Rational, short: Rational) -> Self {
        MultiplicityAssignment {
            values: BTreeMap::from([(OrbitLabel::Long, long), (OrbitLabel::Short, short)]),
        }
    }

    /// From root multiplicities `(m_α, m_{2α})` per orbit, with
    /// `k_α = (m_α + m_{2α}) / 2`.
    pub fn from_root_multiplicities(
        entries: &[(OrbitLabel, Rational, Rational)],
    ) -> Result<Self, RootSystemError> {
        let mut values = BTreeMap::new();
        for (label, m1, m2) in entries {
            if m1.is_negative() || m2.is_negative() {
                return Err(RootSystemError::Multiplicity("root multiplicities must be nonnegative".into()));
            }
            if values.insert(*label, (m1 + m2) / q(2)).is_some() {
                return Err(RootSystemError::Multiplicity(format!("duplicate label '{}'", label.as_str())));
            }
        }
        Self::checked(values)
    }

    fn checked(values: BTreeMap<OrbitLabel, Rational>) -> Result<Self, RootSystemError> {
        if values.is_empty() {
            return Err(RootSystemError::Multiplicity("no values given".into()));
        }
        if values.contains_key(&OrbitLabel::All) && values.len() > 1 {
            return Err(RootSystemError::Multiplicity("'all' cannot be combined with other labels".into()));
        }
        if values.values().any(Signed::is_negative) {
            return Err(RootSystemError::Multiplicity("multiplicities must be nonnegative".into()));
        }
        Ok(MultiplicityAssignment { values })
    }

    pub fn values(&self) -> &BTreeMap<OrbitLabel, Rational> {
        &self.values
    }

    /// True when every value is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.values.values().all(Signed::is_positive)
    }

    /// One `k_α` per root of `rs`. Fails unless the labels match the orbits.
    pub fn resolve(&self, rs: &RootSystem) -> Result<Vec<Rational>, RootSystemError> {
        let labels = rs.orbit_labels();
        let lookup = |l: OrbitLabel| -> Result<Rational, RootSystemError> {
            self.values
                .get(&l)
                .or_else(|| self.values.get(&OrbitLabel::All))
                .cloned()
                .ok_or_else(|| {
                    RootSystemError::Multiplicity(format!("{} needs a value for '{}'", rs.name(), l.as_str()))
                })
        };
        for l in self.values.keys() {
            if *l != OrbitLabel::All && !labels.contains(l) {
                return Err(RootSystemError::Multiplicity(format!(
                    "{} has no '{}' roots",
                    rs.name(),
                    l.as_str()
                )));
            }
        }
        (0..rs.num_roots()).map(|i| lookup(rs.orbit(i))).collect()
    }
}

impl FromStr for MultiplicityAssignment {
    type Err = RootSystemError;

    /// `"all=1/2"` or `"long=1,short=3/2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = BTreeMap::new();
        for part in s.split(',') {
            let (label, value) = part
                .split_once('=')
                .ok_or_else(|| RootSystemError::Multiplicity(format!("expected label=value, got '{part}'")))?;
            let label: OrbitLabel = label.parse()?;
            let value = parse_rational(value)
                .ok_or_else(|| RootSystemError::Multiplicity(format!("bad rational '{value}'")))?;
            if values.insert(label, value).is_some() {
                return Err(RootSystemError::Multiplicity(format!("duplicate label '{}'", label.as_str())));
            }
        }
        Self::checked(values)
    }
}
