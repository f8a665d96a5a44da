use flexlocus::flex::rho::random_form;
use flexlocus::flex::{
    certify, contact_order, flex_polynomial, is_flex, is_flex_by_rho, osculation_bound_check, sample_flex_points,
    ContactOrder, OsculationVerdict, UniqueLine,
};
use flexlocus::oracle::{brute_force_cone, EnumerationDomain};
use flexlocus::poly::parse_poly;
use flexlocus::{Field, Hypersurface, PrimeField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn sampled_quintic_curve_flexes_have_bounded_osculation() {
    let p = PrimeField::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = Hypersurface::new(random_form(&p, 3, 5, &mut rng), &mut rng).unwrap();
    let fp = flex_polynomial(&v, 11).unwrap();
    let (points, reports) = match sample_flex_points(&v, &fp, 1, &mut rng) {
        Ok(found) => found,
        Err(_) => return, // no rational flex on this curve
    };
    assert_eq!(reports[0].eliminant_degree, Some(45));
    for pt in &points {
        let cert = certify(&v, pt, &mut rng).unwrap();
        assert_eq!(cert.unique_line, UniqueLine::Yes);
        let q = cert.line_direction.unwrap();
        assert!(contact_order(&v, pt, &q).unwrap().at_least(3));
        match osculation_bound_check(&v, pt, &mut rng).unwrap() {
            OsculationVerdict::Bounded { max_order, .. } => assert!(max_order <= 5),
            OsculationVerdict::LineFound(_) => panic!("a smooth quintic contains no line"),
        }
    }
}

/// Compares the resultant flex test on the first points of `V(F_7)` with
/// the cone of degree-3 directions enumerated over F_49.
fn compare_with_cone(text: &str, exact: bool) -> usize {
    let v = Hypersurface::with_seed(parse_poly(&PrimeField::new(7).unwrap(), text, None).unwrap(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points = EnumerationDomain::new(7, 1, 3).unwrap();
    let square = EnumerationDomain::new(7, 2, 3).unwrap();
    let mut flexes = 0;
    for pt in points.filter(|pt| v.contains(&pt.iter().map(|c| c.0).collect::<Vec<_>>())).iter().take(16) {
        let x: Vec<u64> = pt.iter().map(|c| c.0).collect();
        let fast = is_flex(&v, &x, &mut rng).unwrap();
        let brute = !brute_force_cone(&v, pt, 3, &square).unwrap().is_empty();
        if exact {
            assert_eq!(fast, brute, "at {x:?}");
        } else {
            assert!(fast || !brute, "at {x:?}");
        }
        flexes += usize::from(fast);
    }
    flexes
}

#[test]
fn cone_oracle_over_quadratic_extension_matches_resultant_test() {
    // F_7 is too small to interpolate rho for a cubic surface, so only the
    // resultant test is checked. All 27 lines of the Fermat surface are
    // defined over F_7, so flex points are exactly the points with a
    // rational cone direction.
    assert!(compare_with_cone("x0^3 + x1^3 + x2^3 + x3^3", true) > 0);
    // 2 is not a cube mod 7: some lines only exist over F_343 and the
    // F_49 oracle is one-sided here
    compare_with_cone("x0^3 + x1^3 + x2^3 + 2*x3^3", false);
}

#[test]
fn line_on_fermat_surface_is_found() {
    let p = PrimeField::new(10007).unwrap();
    let v = Hypersurface::with_seed(parse_poly(&p, "x0^3 + x1^3 + x2^3 + x3^3", None).unwrap(), 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pt = vec![1, p.neg(&1), 2, p.neg(&2)];
    let cert = certify(&v, &pt, &mut rng).unwrap();
    assert!(cert.is_flex);
    assert_eq!(cert.contact_order, Some(ContactOrder::Infinite));
    assert!(matches!(osculation_bound_check(&v, &pt, &mut rng).unwrap(), OsculationVerdict::LineFound(_)));
}

#[test]
fn quartic_curve_flexes_agree_exhaustively() {
    // F_7 has too few elements to interpolate R for d = 4
    for prime in [11u64, 13] {
        let p = PrimeField::new(prime).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(prime);
        let v = Hypersurface::new(random_form(&p, 3, 4, &mut rng), &mut rng).unwrap();
        let fp = flex_polynomial(&v, prime).unwrap();
        let plane = EnumerationDomain::new(prime, 1, 2).unwrap();
        let square = EnumerationDomain::new(prime, 2, 2).unwrap();
        for pt in plane.filter(|pt| v.contains(&pt.iter().map(|c| c.0).collect::<Vec<_>>())) {
            let x: Vec<u64> = pt.iter().map(|c| c.0).collect();
            let fast = is_flex(&v, &x, &mut rng).unwrap();
            assert_eq!(fast, is_flex_by_rho(&v, &fp, &x).unwrap(), "F_{prime} at {x:?}");
            assert_eq!(fast, !brute_force_cone(&v, &pt, 2, &square).unwrap().is_empty(), "F_{prime} at {x:?}");
        }
    }
}
