use chevalley::exactalg::{monomials_of_degree, Monomial, Polynomial, Rational};
use chevalley::liealg::{make_sl, takiff_extend, LieAlgebra, DEFAULT_WORK_BOUND};
use chevalley::linalg::SparseEchelon;
use chevalley::restriction::{criterion_check, criterion_subspace, image_basis, is_diagonal_invariant, CartanFrame};
use chevalley::GradedSubspace;
use num::{One, Zero};
use std::collections::BTreeMap;

/// Joint kernel of all adjoint derivations on every degree-`d` monomial,
/// with no grading shortcuts.
fn brute_invariants(alg: &LieAlgebra, d: u32) -> GradedSubspace {
    let n = alg.dim();
    let monos = monomials_of_degree(n, d);
    let mut ech = SparseEchelon::new(monos.len());
    for x in 0..n {
        let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (c, m) in monos.iter().enumerate() {
            let p = Polynomial::term(n, m.clone(), Rational::one());
            for (mm, v) in alg.adjoint_derivation(x, &p).unwrap().terms() {
                rows.entry(mm.clone()).or_default().push((c, v.clone()));
            }
        }
        for row in rows.into_values() {
            ech.insert(row);
        }
    }
    let mut out = GradedSubspace::zero(n, d);
    for v in ech.kernel() {
        let terms = monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero());
        out.insert(Polynomial::from_terms(n, terms).unwrap()).unwrap();
    }
    out
}

#[test]
fn graded_kernel_matches_brute_force() {
    let sl2 = make_sl(2).unwrap();
    for m in 0..=2 {
        let gm = takiff_extend(&sl2, m).unwrap();
        for d in 0..=3 {
            let fast = gm.invariants_graded(d, DEFAULT_WORK_BOUND).unwrap();
            assert_eq!(fast, brute_invariants(gm.algebra(), d), "m={m} d={d}");
        }
    }
    let sl3 = make_sl(3).unwrap();
    for d in 0..=3 {
        assert_eq!(sl3.invariants_graded(d, DEFAULT_WORK_BOUND).unwrap(), brute_invariants(&sl3, d));
    }
}

#[test]
fn invariants_are_annihilated() {
    let g1 = takiff_extend(&make_sl(3).unwrap(), 1).unwrap();
    let inv = g1.invariants_graded(3, DEFAULT_WORK_BOUND).unwrap();
    assert!(inv.dim() > 0);
    for p in inv.basis() {
        for x in 0..g1.dim() {
            assert!(g1.adjoint_derivation(x, p).unwrap().is_zero());
        }
    }
}

#[test]
fn takiff_hilbert_dims() {
    // S[g_m]^{g_m} for sl2 is free on m+1 generators of degree 2
    let sl2 = make_sl(2).unwrap();
    for (m, dims) in [(1, [1, 0, 2, 0, 3]), (2, [1, 0, 3, 0, 6])] {
        let gm = takiff_extend(&sl2, m).unwrap();
        for (d, want) in dims.iter().enumerate() {
            assert_eq!(gm.invariants_graded(d as u32, DEFAULT_WORK_BOUND).unwrap().dim(), *want, "m={m} d={d}");
        }
    }
}

#[test]
fn images_are_injective_and_diagonal_invariant() {
    for (n, m, max) in [(2, 1, 6), (2, 2, 4), (3, 1, 3)] {
        let frame = CartanFrame::for_sl(n, m).unwrap();
        for d in 0..=max {
            let inv = frame.takiff().invariants_graded(d, DEFAULT_WORK_BOUND).unwrap();
            let image = image_basis(&frame, d).unwrap();
            assert_eq!(image.dim(), inv.dim());
            for p in image.basis() {
                assert!(is_diagonal_invariant(&frame, p).unwrap());
                assert!(criterion_check(&frame, p).unwrap().conditions_pass());
            }
            assert!(image.is_subspace_of(&criterion_subspace(&frame, d).unwrap()));
        }
    }
}

#[test]
fn sl2_depth_two_gap_persists() {
    let frame = CartanFrame::for_sl(2, 2).unwrap();
    let image = image_basis(&frame, 4).unwrap();
    let crit = criterion_subspace(&frame, 4).unwrap();
    assert!(image.is_subspace_of(&crit));
    assert!(crit.dim() > image.dim());
}
