//! Property tests for the algebraic invariants.

use proptest::prelude::*;

use fqt_core::heights::ProjectivePoint;
use fqt_core::matrix::PolyMatrix;
use fqt_core::mpoly::Monomial;
use fqt_core::text::{parse_multipoly, parse_ring_element};
use fqt_core::{Budget, Field, MultiPoly, RingElement};

fn field(q: u64) -> Field {
    let (p, e) = match q {
        4 => (2, 2),
        9 => (3, 2),
        _ => (q, 1),
    };
    Field::new(p, e, &Budget::default()).expect("small field")
}

fn ring_strategy(q: u64, max_deg: u32) -> impl Strategy<Value = RingElement> {
    let space = q.pow(max_deg + 1);
    (0..space).prop_map(move |idx| RingElement::from_enum_index(&field(q), idx))
}

fn homogeneous_strategy(q: u64, nvars: usize, d: u32) -> impl Strategy<Value = MultiPoly> {
    let monos = Monomial::all_of_degree(nvars, d);
    let count = monos.len();
    let space = q.pow(3);
    proptest::collection::vec(0..space, count).prop_filter_map("nonzero", move |coeffs| {
        let f = field(q);
        let p = MultiPoly::from_terms(
            &f,
            nvars,
            monos
                .iter()
                .zip(coeffs)
                .map(|(m, c)| (m.exponents().to_vec(), RingElement::from_enum_index(&f, c))),
        )
        .expect("consistent terms");
        if p.is_zero() {
            None
        } else {
            Some(p)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `|ab| = |a||b|` and the ultrametric degree inequality.
    #[test]
    fn norm_multiplicative(a in ring_strategy(3, 4), b in ring_strategy(3, 4)) {
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        let s = a.add(&b);
        prop_assert!(s.degree() <= a.degree().max(b.degree()));
        if a.degree() != b.degree() {
            prop_assert_eq!(s.degree(), a.degree().max(b.degree()));
        }
    }

    /// Printing followed by parsing is the identity on ring elements.
    #[test]
    fn ring_text_round_trip(a in ring_strategy(2, 5), b in ring_strategy(9, 3)) {
        let f2 = field(2);
        prop_assert_eq!(parse_ring_element(&a.to_string(), &f2).unwrap(), a);
        let f9 = field(9);
        prop_assert_eq!(parse_ring_element(&b.to_string(), &f9).unwrap(), b);
    }

    /// Printing followed by parsing is the identity on polynomials.
    #[test]
    fn multipoly_text_round_trip(p in homogeneous_strategy(3, 3, 2)) {
        let f = field(3);
        prop_assert_eq!(parse_multipoly(&p.to_string(), &f, 3).unwrap(), p);
    }

    /// Content recomposition and graded decomposition are exact.
    #[test]
    fn content_and_graded_parts(p in homogeneous_strategy(2, 3, 3)) {
        let (content, prim) = p.content_primitive().unwrap();
        prop_assert_eq!(prim.mul_coeff(&content), p.clone());
        prop_assert!(prim.content_primitive().unwrap().0.is_one());
        let f = field(2);
        let d = p.total_degree().unwrap();
        let mut acc = MultiPoly::zero(&f, 3);
        for i in 0..=d {
            acc = acc.add(&p.graded_part(i).unwrap());
        }
        prop_assert_eq!(acc, p);
    }

    /// A homogeneous shift by `-alpha` undoes the shift by `alpha`.
    #[test]
    fn shift_round_trip(
        p in homogeneous_strategy(2, 3, 2),
        a1 in ring_strategy(2, 1),
        a2 in ring_strategy(2, 1),
    ) {
        let alpha = [a1, a2];
        let shifted = p.shift_homogeneous(&alpha).unwrap();
        let neg: Vec<RingElement> = alpha.iter().map(|x| x.neg()).collect();
        prop_assert_eq!(shifted.shift_homogeneous(&neg).unwrap(), p);
    }

    /// Canonicalization is idempotent and invariant under scaling.
    #[test]
    fn canonical_form_is_scalar_invariant(
        a in ring_strategy(3, 2),
        b in ring_strategy(3, 2),
        lam in ring_strategy(3, 2),
    ) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        prop_assume!(!lam.is_zero());
        let raw = [a, b];
        let canonical = ProjectivePoint::canonicalize(&raw).unwrap();
        let again = ProjectivePoint::canonicalize(canonical.coords()).unwrap();
        prop_assert_eq!(&again, &canonical);
        let scaled: Vec<RingElement> = raw.iter().map(|c| c.mul(&lam)).collect();
        prop_assert_eq!(ProjectivePoint::canonicalize(&scaled).unwrap(), canonical);
    }

    /// Determinants are multiplicative.
    #[test]
    fn determinant_multiplicative(entries in proptest::collection::vec(0..8u64, 18)) {
        let f = field(2);
        let a = PolyMatrix::from_fn(&f, 3, 3, |i, j| {
            RingElement::from_enum_index(&f, entries[3 * i + j])
        })
        .unwrap();
        let b = PolyMatrix::from_fn(&f, 3, 3, |i, j| {
            RingElement::from_enum_index(&f, entries[9 + 3 * i + j])
        })
        .unwrap();
        prop_assert_eq!(
            a.matmul(&b).unwrap().determinant().unwrap(),
            a.determinant().unwrap().mul(&b.determinant().unwrap())
        );
    }

    /// The twisted-form identity `F_H(H, x) = H^d f(x)` holds exactly.
    #[test]
    fn twist_identity(
        p in homogeneous_strategy(3, 3, 2),
        hidx in 0..9u64,
        x1 in ring_strategy(3, 2),
        x2 in ring_strategy(3, 2),
    ) {
        let f = field(3);
        // monic H of degree <= 2 from the index
        let mut coeffs = vec![hidx % 3, (hidx / 3) % 3];
        coeffs.push(1);
        let h = RingElement::from_indices(&f, coeffs).unwrap();
        let affine = p.dehomogenize(0).unwrap();
        prop_assume!(!affine.is_zero());
        let fh = affine.twist_f_h(&h).unwrap();
        let d = affine.total_degree().unwrap();
        let mut hd = RingElement::one(&f);
        for _ in 0..d {
            hd = hd.mul(&h);
        }
        let lhs = fh.evaluate(&[h.clone(), x1.clone(), x2.clone()]).unwrap();
        let rhs = affine.evaluate(&[x1, x2]).unwrap().mul(&hd);
        prop_assert_eq!(lhs, rhs);
    }
}
