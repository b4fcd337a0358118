use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

use outer_billiard::exactfield::{field_degree, FieldElement};
use outer_billiard::planegeom::{AntiAffineMap, Compose, PlaneIsometry, PlaneMap};
use outer_billiard::substlang::{catalog, FreeWord};
use outer_billiard::wordcomb::difference_word;
use outer_billiard::billiard::coding_law_holds;
use outer_billiard::{Field, SmallField};

fn element(n_root: u32) -> impl Strategy<Value = Field> {
    let d = field_degree(n_root).unwrap();
    prop::collection::vec((-9i64..=9, 1i64..=4), d).prop_map(move |cs| {
        let coeffs = cs.into_iter().map(|(n, m)| BigRational::new(n.into(), m.into())).collect();
        FieldElement::new(n_root, coeffs).unwrap()
    })
}

fn any_root() -> impl Strategy<Value = u32> {
    prop_oneof![Just(4u32), Just(6u32), Just(10u32)]
}

fn triple() -> impl Strategy<Value = (Field, Field, Field)> {
    any_root().prop_flat_map(|n| (element(n), element(n), element(n)))
}

/// sum c_i zeta^i evaluated with zeta written in radicals.
fn radical_value(x: &Field) -> (f64, f64) {
    let (re, im) = match x.n_root() {
        4 => (0.0, 1.0),
        6 => (0.5, 3f64.sqrt() / 2.0),
        10 => ((1.0 + 5f64.sqrt()) / 4.0, ((5.0 - 5f64.sqrt()) / 8.0).sqrt()),
        _ => unreachable!(),
    };
    let (mut pr, mut pi) = (1.0, 0.0);
    let (mut sr, mut si) = (0.0, 0.0);
    for c in x.coeffs() {
        let c = c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap();
        sr += c * pr;
        si += c * pi;
        (pr, pi) = (pr * re - pi * im, pr * im + pi * re);
    }
    (sr, si)
}

fn free_word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1u8..=3, prop_oneof![Just(1i8), Just(-1i8)]), 0..8).prop_map(|v| FreeWord::from_signed(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn nonzero_elements_are_invertible((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn conjugation_is_a_ring_automorphism((a, b, _) in triple()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert!((&a * &a.conjugate()).is_real());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn enclosures_agree_with_the_radical_formula((a, _, _) in triple()) {
        let (re, im) = radical_value(&a);
        let eps = BigRational::new(1.into(), 1_000_000.into());
        let (ire, iim) = a.approximate(&eps);
        let (lo, hi) = ire.to_f64();
        prop_assert!(lo - 1e-9 <= re && re <= hi + 1e-9);
        let (lo, hi) = iim.to_f64();
        prop_assert!(lo - 1e-9 <= im && im <= hi + 1e-9);
    }

    #[test]
    fn exact_signs_match_floating_point_away_from_zero((a, _, _) in triple()) {
        let r = a.real_part();
        let (v, _) = radical_value(&r);
        prop_assume!(v.abs() > 1e-6);
        prop_assert_eq!(r.sign_real().unwrap(), v.partial_cmp(&0.0).unwrap());
    }

    #[test]
    fn small_and_big_coefficients_agree(n in any_root(), xs in prop::collection::vec(-20i64..=20, 8), ys in prop::collection::vec(-20i64..=20, 8)) {
        let d = field_degree(n).unwrap();
        let small = |v: &[i64]| SmallField::new(n, v[..d].iter().map(|&c| Rational64::from_integer(c)).collect()).unwrap();
        let big = |v: &[i64]| Field::from_ints(n, &v[..d]).unwrap();
        let prod = &small(&xs) * &small(&ys);
        let lifted: Field = prod.map_coeffs().unwrap();
        prop_assert_eq!(lifted, &big(&xs) * &big(&ys));
    }

    #[test]
    fn isometry_composition_acts_pointwise((a, b, z) in triple(), e in 0i64..10) {
        let rot = FieldElement::zeta_pow(a.n_root(), e).unwrap();
        let f = PlaneIsometry::new(rot.clone(), a.clone()).unwrap();
        let g = PlaneIsometry::new(rot.conjugate(), b.clone()).unwrap();
        prop_assert_eq!(f.compose(&g).apply(&z), f.apply(&g.apply(&z)));
        prop_assert_eq!(f.inverse().apply(&f.apply(&z)), z);
    }

    #[test]
    fn anti_affine_composition_acts_pointwise((a, b, z) in triple(), c in 1i64..4) {
        let n = a.n_root();
        let scale = FieldElement::from_int(n, c).unwrap();
        let d1 = AntiAffineMap::new(&scale * &FieldElement::zeta(n).unwrap(), a.clone()).unwrap();
        let d2 = AntiAffineMap::new(scale, b.clone()).unwrap();
        let iso = PlaneIsometry::translation(b);
        let twice = d1.compose(&d2);
        prop_assert_eq!(twice.apply(&z), d1.apply(&d2.apply(&z)));
        prop_assert_eq!(d1.compose(&iso).apply(&z), d1.apply(&iso.apply(&z)));
        prop_assert_eq!(iso.compose(&d1).apply(&z), iso.apply(&d1.apply(&z)));
    }

    #[test]
    fn substitutions_are_morphisms(u in free_word(), v in free_word(), which in 0usize..5) {
        let name = ["sigma", "psi", "xi", "psi2", "xi2"][which];
        let s = catalog(name).unwrap();
        prop_assert_eq!(s.apply(&u.concat(&v)).unwrap(), s.apply(&u).unwrap().concat(&s.apply(&v).unwrap()));
        prop_assert_eq!(s.apply(&u.inverse()).unwrap(), s.apply(&u).unwrap().inverse());
    }

    #[test]
    fn second_representatives_are_conjugates_by_two(w in free_word()) {
        let two = FreeWord::from_word(&[2]);
        let two_inv = two.inverse();
        for (plain, conj) in [("psi", "psi2"), ("xi", "xi2")] {
            let image = catalog(plain).unwrap().apply(&w).unwrap();
            prop_assert_eq!(catalog(conj).unwrap().apply(&w).unwrap(), two_inv.concat(&image).concat(&two));
        }
    }

    #[test]
    fn difference_words_invert_cumulative_sums(k in prop_oneof![Just(3usize), Just(4), Just(5), Just(6), Just(10)], start in 0usize..10, steps in prop::collection::vec(0usize..10, 1..30)) {
        let j = k.div_ceil(2);
        let eta: Vec<usize> = steps.iter().map(|&s| s % j + 1).collect();
        let mut rho = vec![start % k];
        for &v in &eta {
            rho.push((rho[rho.len() - 1] + v) % k);
        }
        let rho_letters: Vec<u8> = rho.iter().map(|&l| l as u8).collect();
        let back: Vec<usize> = difference_word(&rho_letters, k).unwrap().iter().map(|&l| l as usize).collect();
        prop_assert_eq!(&back, &eta);
        prop_assert!(coding_law_holds(&rho, &eta, k));
    }
}
