//! Lie algebras by structure constants, Takiff extensions, and graded
//! invariants of the adjoint action on the symmetric algebra.
//!
//! The symmetric algebra `S[g]` is modelled as polynomials whose variables
//! are the basis vectors of `g`.

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::exactalg::{count_monomials, monomials_of_degree, Monomial, PolyError, Polynomial, Rational, Variables};
use crate::linalg::{Matrix, SparseEchelon};
use crate::subspace::{GradedSubspace, SubspaceError};

/// Largest supported truncation depth `m` for `g ⊗ C[T]/T^{m+1}`.
pub const MAX_TAKIFF_DEPTH: usize = 3;

/// Default cap on the dimension of the full degree-`d` monomial space.
pub const DEFAULT_WORK_BOUND: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("Takiff depth {0} exceeds the supported maximum {MAX_TAKIFF_DEPTH}")]
    DepthBound(usize),
    #[error("monomial space of dimension {needed} exceeds work bound {bound}")]
    WorkBound { needed: u64, bound: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

type Sparse = Vec<(usize, Rational)>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn add_sparse(acc: &mut BTreeMap<usize, Rational>, v: &[(usize, Rational)], scale: &Rational) {
    for (k, c) in v {
        *acc.entry(*k).or_insert_with(Rational::zero) += c * scale;
    }
}

fn collect_sparse(acc: BTreeMap<usize, Rational>) -> Sparse {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A finite-dimensional Lie algebra over Q with an invariant nondegenerate
/// symmetric form and a marked Cartan subalgebra.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    names: Vec<String>,
    // brackets[i][j] = [X_i, X_j] as sparse coordinates
    brackets: Vec<Vec<Sparse>>,
    form: Matrix,
    cartan: Vec<usize>,
}

impl LieAlgebra {
    /// Validates antisymmetry, the Jacobi identity, and invariance and
    /// nondegeneracy of the form, exhaustively over basis elements.
    pub fn new(
        name: &str,
        names: Vec<String>,
        brackets: Vec<Vec<Sparse>>,
        form: Matrix,
        cartan: Vec<usize>,
    ) -> Result<LieAlgebra, LieError> {
        let n = names.len();
        let invalid = |m: String| LieError::Invalid(format!("{name}: {m}"));
        if brackets.len() != n || brackets.iter().any(|r| r.len() != n) {
            return Err(invalid("structure constants have the wrong shape".into()));
        }
        if form.rows() != n || form.cols() != n {
            return Err(invalid("form has the wrong shape".into()));
        }
        if cartan.iter().any(|&c| c >= n) {
            return Err(invalid("Cartan index out of range".into()));
        }
        let brackets: Vec<Vec<Sparse>> = brackets
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        let mut acc = BTreeMap::new();
                        add_sparse(&mut acc, &v, &Rational::one());
                        collect_sparse(acc)
                    })
                    .collect()
            })
            .collect();
        let alg = LieAlgebra {
            name: name.to_string(),
            names,
            brackets,
            form,
            cartan,
        };
        alg.validate().map_err(invalid)?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), String> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let mut acc = BTreeMap::new();
                add_sparse(&mut acc, &self.brackets[i][j], &Rational::one());
                add_sparse(&mut acc, &self.brackets[j][i], &Rational::one());
                if !collect_sparse(acc).is_empty() {
                    return Err(format!("bracket not antisymmetric at ({i}, {j})"));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = &self.brackets[b][c];
                        add_sparse(&mut acc, &self.bracket_basis(a, inner), &Rational::one());
                    }
                    if !collect_sparse(acc).is_empty() {
                        return Err(format!("Jacobi identity fails at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        if !self.form.is_symmetric() {
            return Err("form is not symmetric".into());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // form([x, y], z) + form(y, [x, z]) = 0
                    let a = self.form_sparse(&self.brackets[i][j], k);
                    let b = self.form_sparse(&self.brackets[i][k], j);
                    if !(a + b).is_zero() {
                        return Err(format!("form not invariant at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        if self.form.determinant().is_zero() {
            return Err("form is degenerate".into());
        }
        Ok(())
    }

    fn form_sparse(&self, v: &[(usize, Rational)], k: usize) -> Rational {
        v.iter().map(|(i, c)| c * &self.form[(*i, k)]).sum()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn variables(&self) -> Variables {
        Variables::named(self.names.iter().cloned())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan
    }

    /// `[X_i, X_j]` in coordinates.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i][j]
    }

    /// `[X_i, v]` for a sparse vector `v`.
    pub fn bracket_basis(&self, i: usize, v: &[(usize, Rational)]) -> Sparse {
        let mut acc = BTreeMap::new();
        for (j, c) in v {
            add_sparse(&mut acc, &self.brackets[i][*j], c);
        }
        collect_sparse(acc)
    }

    /// Weight of every basis vector under the Cartan elements, when they
    /// all act diagonally on the basis.
    pub fn cartan_weights(&self) -> Option<Vec<Vec<Rational>>> {
        let mut weights = vec![Vec::with_capacity(self.cartan.len()); self.dim()];
        for &h in &self.cartan {
            for (j, w) in weights.iter_mut().enumerate() {
                match self.brackets[h][j].as_slice() {
                    [] => w.push(Rational::zero()),
                    [(k, c)] if *k == j => w.push(c.clone()),
                    _ => return None,
                }
            }
        }
        Some(weights)
    }

    /// Images `Y ↦ [X_x, Y]` of the generators, as linear polynomials.
    pub fn adjoint_images(&self, x: usize) -> Vec<Polynomial> {
        let n = self.dim();
        (0..n)
            .map(|y| {
                Polynomial::from_terms(
                    n,
                    self.brackets[x][y].iter().map(|(k, c)| (Monomial::var(*k), c.clone())),
                )
                .expect("indices in range")
            })
            .collect()
    }

    /// The derivation of `S[g]` extending `Y ↦ [X_x, Y]`.
    pub fn adjoint_derivation(&self, x: usize, p: &Polynomial) -> Result<Polynomial, LieError> {
        Ok(p.apply_derivation(&self.adjoint_images(x))?)
    }

    /// The constant-coefficient derivation `δ(X)`, sending a generator `Y`
    /// to the scalar `⟨X, Y⟩`.
    pub fn delta_derivation(&self, x: &[Rational], p: &Polynomial) -> Result<Polynomial, LieError> {
        let n = self.dim();
        if x.len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                found: x.len(),
            }
            .into());
        }
        let pairing = self.form.transpose().mul_vec(x);
        let images: Vec<Polynomial> = pairing.into_iter().map(|c| Polynomial::constant(n, c)).collect();
        Ok(p.apply_derivation(&images)?)
    }

    /// Degree-`d` invariants of the adjoint action; see [`TakiffAlgebra::invariants_graded`].
    pub fn invariants_graded(&self, degree: u32, work_bound: u64) -> Result<GradedSubspace, LieError> {
        graded_invariants(self, &vec![0; self.dim()], degree, work_bound)
    }
}

/// `sl(n)` for `n ∈ {2, 3}` with its Chevalley basis and trace form.
///
/// sl2: `e, h, f`. sl3: `e1, e2, e3, h1, h2, f1, f2, f3` with
/// `e1 = E12, e2 = E23, e3 = E13`, `f` the transposes, `h_i = E_ii - E_{i+1,i+1}`.
pub fn make_sl(n: usize) -> Result<LieAlgebra, LieError> {
    let (names, mats): (Vec<String>, Vec<Vec<Vec<i64>>>) = match n {
        2 => {
            let e = |i: usize, j: usize| {
                let mut m = vec![vec![0; 2]; 2];
                m[i][j] = 1;
                m
            };
            (
                vec!["e".into(), "h".into(), "f".into()],
                vec![e(0, 1), vec![vec![1, 0], vec![0, -1]], e(1, 0)],
            )
        }
        3 => {
            let e = |i: usize, j: usize| {
                let mut m = vec![vec![0; 3]; 3];
                m[i][j] = 1;
                m
            };
            let h = |i: usize| {
                let mut m = vec![vec![0; 3]; 3];
                m[i][i] = 1;
                m[i + 1][i + 1] = -1;
                m
            };
            (
                ["e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"].map(String::from).to_vec(),
                vec![e(0, 1), e(1, 2), e(0, 2), h(0), h(1), e(1, 0), e(2, 1), e(2, 0)],
            )
        }
        _ => return Err(LieError::Unsupported(format!("sl{n}"))),
    };
    let dim = mats.len();
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    let cartan: Vec<usize> = (0..dim)
        .filter(|&i| (0..n).all(|r| (0..n).all(|c| r == c || mats[i][r][c] == 0)))
        .collect();
    // coordinates of a traceless matrix in the basis above
    let coords = |m: &Vec<Vec<i64>>| -> Sparse {
        let mut out = Vec::new();
        for (idx, b) in mats.iter().enumerate() {
            let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| i != j && b[i][j] != 0);
            if let Some((i, j)) = off {
                if m[i][j] != 0 {
                    out.push((idx, q(m[i][j])));
                }
            }
        }
        let mut partial = 0;
        for (k, &idx) in cartan.iter().enumerate() {
            partial += m[k][k];
            if partial != 0 {
                out.push((idx, q(partial)));
            }
        }
        out
    };
    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    let mut form = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let ab = mul(&mats[i], &mats[j]);
            let ba = mul(&mats[j], &mats[i]);
            let comm: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| ab[r][c] - ba[r][c]).collect()).collect();
            brackets[i][j] = coords(&comm);
            form[(i, j)] = q((0..n).map(|r| ab[r][r]).sum());
        }
    }
    LieAlgebra::new(&format!("sl{n}"), names, brackets, form, cartan)
}

/// `g_m = g ⊗ C[T]/T^{m+1}` with the truncated bracket and the pairing
/// `⟨X ⊗ T^s, Y ⊗ T^t⟩ = form(X, Y)` when `s + t = m`, else 0.
///
/// Basis vector `X_i ⊗ T^s` has index `s·dim(g) + i` and is named
/// `name_s` (plain `name` for `s = 0`).
#[derive(Clone, Debug)]
pub struct TakiffAlgebra {
    base: LieAlgebra,
    m: usize,
    algebra: LieAlgebra,
}

pub fn takiff_extend(g: &LieAlgebra, m: usize) -> Result<TakiffAlgebra, LieError> {
    if m > MAX_TAKIFF_DEPTH {
        return Err(LieError::DepthBound(m));
    }
    let n = g.dim();
    let dim = n * (m + 1);
    let idx = |i: usize, s: usize| s * n + i;
    let mut names = Vec::with_capacity(dim);
    for s in 0..=m {
        for name in g.basis_names() {
            names.push(if s == 0 { name.clone() } else { format!("{name}_{s}") });
        }
    }
    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    let mut form = Matrix::zeros(dim, dim);
    for s in 0..=m {
        for t in 0..=m {
            for i in 0..n {
                for j in 0..n {
                    if s + t <= m {
                        brackets[idx(i, s)][idx(j, t)] =
                            g.bracket(i, j).iter().map(|(k, c)| (idx(*k, s + t), c.clone())).collect();
                    }
                    if s + t == m {
                        form[(idx(i, s), idx(j, t))] = g.form()[(i, j)].clone();
                    }
                }
            }
        }
    }
    let cartan = g.cartan_indices().to_vec();
    let algebra = LieAlgebra::new(&format!("{}_{m}", g.name()), names, brackets, form, cartan)?;
    Ok(TakiffAlgebra {
        base: g.clone(),
        m,
        algebra,
    })
}

impl TakiffAlgebra {
    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.m
    }

    /// The full algebra `g_m`, with the pairing as its form.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn index(&self, i: usize, s: usize) -> usize {
        assert!(i < self.base.dim() && s <= self.m);
        s * self.base.dim() + i
    }

    /// `(i, s)` for the index of `X_i ⊗ T^s`.
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx % self.base.dim(), idx / self.base.dim())
    }

    pub fn pairing(&self, a: usize, b: usize) -> &Rational {
        &self.algebra.form()[(a, b)]
    }

    pub fn variables(&self) -> Variables {
        self.algebra.variables()
    }

    pub fn adjoint_derivation(&self, x: usize, p: &Polynomial) -> Result<Polynomial, LieError> {
        self.algebra.adjoint_derivation(x, p)
    }

    pub fn delta_derivation(&self, x: &[Rational], p: &Polynomial) -> Result<Polynomial, LieError> {
        self.algebra.delta_derivation(x, p)
    }

    /// Basis of the degree-`d` invariants: the joint kernel of every
    /// adjoint derivation on the degree-`d` part of `S[g_m]`.
    ///
    /// Each derivation shifts the Cartan weight of a monomial by the weight
    /// of `X` and its `T`-degree by that of `X`, so the kernel splits into
    /// blocks of fixed weight and `T`-degree. Only weight zero can
    /// contribute, since Cartan elements act on other weights by a nonzero
    /// scalar.
    pub fn invariants_graded(&self, degree: u32, work_bound: u64) -> Result<GradedSubspace, LieError> {
        let tdeg: Vec<u32> = (0..self.dim()).map(|i| self.split(i).1 as u32).collect();
        graded_invariants(&self.algebra, &tdeg, degree, work_bound)
    }
}

fn graded_invariants(
    alg: &LieAlgebra,
    tdeg: &[u32],
    degree: u32,
    work_bound: u64,
) -> Result<GradedSubspace, LieError> {
    let n = alg.dim();
    let needed = count_monomials(n, degree);
    if needed > work_bound {
        return Err(LieError::WorkBound {
            needed,
            bound: work_bound,
        });
    }
    let weights = alg.cartan_weights();
    let mut blocks: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_of_degree(n, degree) {
        if let Some(w) = &weights {
            let zero_weight = (0..alg.cartan_indices().len()).all(|c| {
                m.iter()
                    .map(|(v, e)| &w[v][c] * Rational::from_integer(e.into()))
                    .sum::<Rational>()
                    .is_zero()
            });
            if !zero_weight {
                continue;
            }
        }
        let t: u32 = m.iter().map(|(v, e)| tdeg[v] * e).sum();
        blocks.entry(t).or_default().push(m);
    }
    // Cartan elements of T-degree zero act by the weight, which is zero here.
    let active: Vec<usize> = (0..n)
        .filter(|x| weights.is_none() || !(alg.cartan_indices().contains(x) && tdeg[*x] == 0))
        .collect();
    let images: Vec<Vec<Polynomial>> = active.iter().map(|&x| alg.adjoint_images(x)).collect();

    let mut space = GradedSubspace::zero(n, degree);
    for block in blocks.values() {
        let mut ech = SparseEchelon::new(block.len());
        'derivations: for img in &images {
            let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
            for (c, m) in block.iter().enumerate() {
                let image = Polynomial::term(n, m.clone(), Rational::one()).apply_derivation(img)?;
                for (mm, v) in image.terms() {
                    rows.entry(mm.clone()).or_default().push((c, v.clone()));
                }
            }
            for row in rows.into_values() {
                ech.insert(row);
                if ech.is_full() {
                    break 'derivations;
                }
            }
        }
        for v in ech.kernel() {
            let terms = block
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c));
            space.insert(Polynomial::from_terms(n, terms)?)?;
        }
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn sl2() -> LieAlgebra {
        make_sl(2).unwrap()
    }

    fn poly(alg: &LieAlgebra, s: &str) -> Polynomial {
        Polynomial::parse(s, &alg.variables()).unwrap()
    }

    #[test]
    fn sl2_structure() {
        let g = sl2();
        let (e, h, f) = (0, 1, 2);
        assert_eq!(g.bracket(h, e), &[(e, rat(2, 1))]);
        assert_eq!(g.bracket(h, f), &[(f, rat(-2, 1))]);
        assert_eq!(g.bracket(e, f), &[(h, rat(1, 1))]);
        assert_eq!(g.form()[(h, h)], rat(2, 1));
        assert_eq!(g.form()[(e, f)], rat(1, 1));
        assert_eq!(g.form()[(h, e)], rat(0, 1));
        assert_eq!(g.cartan_indices(), &[h]);
    }

    #[test]
    fn sl3_structure() {
        let g = make_sl(3).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.cartan_indices().len(), 2);
        // [e1, e2] = e3
        assert_eq!(g.bracket(0, 1), &[(2, rat(1, 1))]);
        assert!(make_sl(4).is_err());
    }

    #[test]
    fn invalid_structure_rejected() {
        let g = sl2();
        let mut br: Vec<Vec<Sparse>> = (0..3).map(|i| (0..3).map(|j| g.bracket(i, j).to_vec()).collect()).collect();
        br[0][2] = vec![(1, rat(2, 1))];
        br[2][0] = vec![(1, rat(-2, 1))];
        // breaks invariance of the trace form
        assert!(LieAlgebra::new("bad", g.basis_names().to_vec(), br, g.form().clone(), vec![1]).is_err());
        let degenerate = Matrix::zeros(3, 3);
        let br: Vec<Vec<Sparse>> = (0..3).map(|i| (0..3).map(|j| g.bracket(i, j).to_vec()).collect()).collect();
        assert!(LieAlgebra::new("bad", g.basis_names().to_vec(), br, degenerate, vec![1]).is_err());
    }

    #[test]
    fn takiff_bracket_and_pairing() {
        let g1 = takiff_extend(&sl2(), 1).unwrap();
        let a = g1.algebra();
        let e1 = a.index_of("e_1").unwrap();
        let f1 = a.index_of("f_1").unwrap();
        let h = a.index_of("h").unwrap();
        let h1 = a.index_of("h_1").unwrap();
        assert!(a.bracket(e1, f1).is_empty());
        assert_eq!(a.bracket(a.index_of("e").unwrap(), f1), &[(h1, rat(1, 1))]);
        assert_eq!(*g1.pairing(h, h1), rat(2, 1));
        assert_eq!(*g1.pairing(h, h), rat(0, 1));
        assert!(matches!(takiff_extend(&sl2(), 4), Err(LieError::DepthBound(4))));
        let g0 = takiff_extend(&sl2(), 0).unwrap();
        assert_eq!(g0.algebra().form(), sl2().form());
        assert_eq!(g0.dim(), 3);
    }

    #[test]
    fn adjoint_derivation_examples() {
        let g = sl2();
        assert!(g.adjoint_derivation(0, &poly(&g, "7")).unwrap().is_zero());
        assert_eq!(g.adjoint_derivation(1, &poly(&g, "e")).unwrap(), poly(&g, "2 e"));
        let g1 = takiff_extend(&g, 1).unwrap();
        let a = g1.algebra();
        let x = a.index_of("e_1").unwrap();
        assert_eq!(
            g1.adjoint_derivation(x, &poly(a, "h^2 + 4 e f")).unwrap(),
            poly(a, "-4 h e_1 + 4 e h_1")
        );
    }

    #[test]
    fn delta_derivation_examples() {
        let g1 = takiff_extend(&sl2(), 1).unwrap();
        let a = g1.algebra();
        let mut x = vec![rat(0, 1); a.dim()];
        x[a.index_of("h_1").unwrap()] = rat(1, 1);
        assert_eq!(g1.delta_derivation(&x, &poly(a, "h")).unwrap(), poly(a, "2"));
        assert!(g1.delta_derivation(&x, &poly(a, "h_1")).unwrap().is_zero());
        assert!(g1.delta_derivation(&x, &poly(a, "5")).unwrap().is_zero());
        assert_eq!(g1.delta_derivation(&x, &poly(a, "h^2")).unwrap(), poly(a, "4 h"));
    }

    #[test]
    fn sl2_invariants() {
        let g = sl2();
        let casimir = g.invariants_graded(2, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(casimir, GradedSubspace::from_polys(3, 2, [poly(&g, "h^2 + 4 e f")]).unwrap());
        assert_eq!(g.invariants_graded(1, DEFAULT_WORK_BOUND).unwrap().dim(), 0);

        let g1 = takiff_extend(&g, 1).unwrap();
        let a = g1.algebra();
        let inv = g1.invariants_graded(2, DEFAULT_WORK_BOUND).unwrap();
        let expected = GradedSubspace::from_polys(
            a.dim(),
            2,
            [poly(a, "h_1^2 + 4 e_1 f_1"), poly(a, "2 h h_1 + 4 e f_1 + 4 f e_1")],
        )
        .unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn work_bound_enforced() {
        let g1 = takiff_extend(&make_sl(3).unwrap(), 1).unwrap();
        assert!(matches!(g1.invariants_graded(4, 100), Err(LieError::WorkBound { needed: 3876, .. })));
    }
}
