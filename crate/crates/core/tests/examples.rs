//! Worked examples checked against independently computed values.

use djkm::{
    check_funde, check_odes, gegenbauer, lemma_relation, normalize_ratfunc, pfamily_recursion,
    psi, CurveSpecC, DiffFormC, DjkmC, ExtElementC, Family, OmegaBasis, OmegaClassC, PolyC,
    PowerSeriesZ, RatFuncC, Rational, Reducer, RingElemC, Scalar, SimpleLieAlgebraC,
};

fn r(s: &str) -> RatFuncC {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn ring(s: &str) -> RingElemC {
    s.parse().unwrap()
}

#[test]
fn cancellation_through_gegenbauer_value() {
    // (1 - 2cw + w^2)^(1/2) = 1 - cw + (1 - c^2)/2 w^2 + O(w^3)
    let q2 = PolyC::from_coeffs(vec![q(1, 2), q(0, 1), q(-1, 2)]);
    let num = -(&q2 * &PolyC::var());
    let a = normalize_ratfunc(num, PolyC::from_i64s(&[-1, 0, 1])).unwrap();
    assert_eq!(a, r("c/2"));
    let table = gegenbauer(q(-1, 2), 2);
    assert_eq!(table.get(2), &q2);
    assert_eq!(table.get(1), &PolyC::from_i64s(&[0, -1]));
}

#[test]
fn square_of_root_series() {
    // (z sqrt(1 - 2cz^2 + z^4))^2 = z^2 - 2c z^4 + z^6
    let table = gegenbauer(q(-1, 2), 10);
    let root = PowerSeriesZ::from_terms(
        22,
        table.entries().iter().enumerate().map(|(n, p)| (2 * n as i64 + 1, RatFuncC::from_poly(p.clone()))),
    );
    let sq = root.mul(&root, 22);
    assert_eq!(sq.coeff(2), r("1"));
    assert_eq!(sq.coeff(4), r("-2*c"));
    assert_eq!(sq.coeff(6), r("1"));
    for k in (8..22).step_by(2) {
        assert_eq!(sq.coeff(k), r("0"), "z^{k}");
    }
}

#[test]
fn product_of_binomials() {
    let a = PowerSeriesZ::from_terms(8, [(0, r("1")), (1, r("1"))]);
    let b = PowerSeriesZ::from_terms(8, [(0, r("1")), (1, r("-1"))]);
    let p = a.mul(&b, 8);
    assert_eq!(p.terms().map(|(k, v)| (k, v.clone())).collect::<Vec<_>>(), [(0, r("1")), (2, r("-1"))]);
}

#[test]
fn ring_products() {
    let c = CurveSpecC::djkm();
    let p = ring("t^4 - 2*c*t^2 + 1");
    assert_eq!(c.ring_mul(&RingElemC::u(), &RingElemC::u()).unwrap(), p);
    assert_eq!(c.ring_mul(&ring("t^-1*u"), &ring("t*u")).unwrap(), p);
    assert_eq!(c.sigma_ring(&ring("t^3*u")).unwrap(), ring("t^-5*u"));
}

#[test]
fn differentials_of_monomials() {
    // d(t^(i+j) u) = (i+j) t^(i+j-1) u dt + t^(i+j) du
    let d = ring("t^5*u").d();
    assert_eq!(d.dt, ring("5*t^4*u"));
    assert_eq!(d.du, ring("t^5"));
}

#[test]
fn negative_exponent_rows_via_sigma() {
    // σ(t^3 u dt) = -t^-7 u dt, so [t^-7 u dt] = -σ[t^3 u dt]
    let red = Reducer::djkm();
    let up = red.reduce(&DiffFormC::dt(RingElemC::basis(3, 1)));
    let down = red.reduce(&DiffFormC::dt(RingElemC::basis(-7, 1)));
    assert_eq!(down, up.sigma().neg());
    let m5 = red.reduce(&DiffFormC::dt(RingElemC::basis(-5, 1)));
    assert_eq!(down, m5.scale(&RatFuncC::var()));
}

#[test]
fn cocycle_examples() {
    let red = Reducer::djkm();
    assert_eq!(red.cocycle(&ring("t^-1"), &ring("t")), OmegaClassC::basis(OmegaBasis::Omega0));
    assert!(red.cocycle(&RingElemC::u(), &RingElemC::u()).is_zero());
    assert_eq!(red.cocycle(&RingElemC::u(), &RingElemC::t()), OmegaClassC::basis(OmegaBasis::M4));
}

#[test]
fn lemma_examples() {
    let c = CurveSpecC::djkm();
    let rel = lemma_relation(2, &c, -3).unwrap();
    assert_eq!(rel.lead, (0, 6));
    assert_eq!(rel.tail[0], (-4, r("-6")));
    assert!(rel.tail[1..].iter().all(|(_, a)| a == &r("0")));

    let rel = lemma_relation(2, &c, -1).unwrap();
    assert_eq!(rel.lead, (2, 10));
    assert_eq!(rel.tail[0], (-2, r("-2")));
    assert_eq!(rel.tail[2], (0, r("-8*c")));
}

#[test]
fn family_values() {
    let m3 = pfamily_recursion::<Rational>(Family::M3, 5);
    assert_eq!(RatFuncC::from_poly(m3.get(1).clone()), r("1/2"));
    assert_eq!(RatFuncC::from_poly(m3.get(3).clone()), r("c/2"));
    assert_eq!(RatFuncC::from_poly(m3.get(5).clone()), r("(5*c^2-1)/8"));
}

#[test]
fn funde_examples() {
    let i = |v: [i64; 4]| v.map(Rational::from_i64);
    for init in [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [2, -1, 3, 5]] {
        assert!(check_funde(i(init), 32).unwrap().holds, "{init:?}");
    }
    assert!(check_funde(i([1, 0, 0, 0]), 4).is_err());
}

#[test]
fn ode_identities() {
    let rep = check_odes::<Rational>(20).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures);
    assert_eq!(rep.nmax, 20);
}

/// Killing form from ad matrices written out by hand in the basis (e, h, f).
#[test]
fn killing_form_from_adjoint_traces() {
    let ad_e = [[0, -2, 0], [0, 0, 1], [0, 0, 0]];
    let ad_h = [[2, 0, 0], [0, 0, 0], [0, 0, -2]];
    let ad_f = [[0, 0, 0], [-1, 0, 0], [0, 2, 0]];
    let ads = [ad_e, ad_h, ad_f];
    let tr = |a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]| -> i64 {
        (0..3).map(|i| (0..3).map(|k| a[i][k] * b[k][i]).sum::<i64>()).sum()
    };
    let g = SimpleLieAlgebraC::sl2();
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(g.form(x, y), &Rational::from_i64(tr(&ads[x], &ads[y])), "({x}, {y})");
        }
        // ad matrices agree with the structure constants: ad(x)[k][j] = c_{xj}^k
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(g.constant(x, j, k), &Rational::from_i64(ads[x][k][j]));
            }
        }
    }
}

#[test]
fn extension_examples() {
    let g = DjkmC::symbolic(SimpleLieAlgebraC::sl2());
    let (e, h, f) = (0, 1, 2);
    let b = g.bracket_kassel(&ExtElementC::basis(e, 1, 0), &ExtElementC::basis(f, -1, 0));
    let want = ExtElementC::basis(h, 0, 0)
        .add(&ExtElementC::central(OmegaClassC::from_coord(OmegaBasis::Omega0, r("-4"))));
    assert_eq!(b, want);

    let w = ExtElementC::central(OmegaClassC::basis(OmegaBasis::M2));
    assert!(g.bracket_kassel(&ExtElementC::basis(h, 0, 1), &w).is_zero());

    let b = g.bracket_kassel(&ExtElementC::basis(h, 0, 1), &ExtElementC::basis(h, -2, 1));
    assert_eq!(b, ExtElementC::central(OmegaClassC::from_coord(OmegaBasis::Omega0, r("16*c"))));

    let (x, y) = (ExtElementC::basis(h, 3, 1), ExtElementC::basis(e, 2, 0));
    assert_eq!(g.bracket_closed(&x, &y), g.bracket_kassel(&x, &y));

    assert_eq!(g.sigma(&ExtElementC::basis(e, 1, 1)), ExtElementC::basis(e, -3, 1));
}

#[test]
fn psi_examples() {
    assert_eq!(psi::<Rational>(2).value, OmegaClassC::basis(OmegaBasis::M4));
    let half = r("1/2");
    let c = RatFuncC::var();
    let at5 = OmegaClassC::from_coord(OmegaBasis::M3, &c * &half)
        .add(&OmegaClassC::from_coord(OmegaBasis::M1, &(&c * &c) * &half));
    assert_eq!(psi::<Rational>(5).value, at5);
    let at_m3 = OmegaClassC::from_coord(OmegaBasis::M3, &c * &half)
        .add(&OmegaClassC::from_coord(OmegaBasis::M1, half));
    assert_eq!(psi::<Rational>(-3).value, at_m3);
}

#[test]
fn specialization_examples() {
    assert_eq!(r("(32*c^2-5)/35").specialize(&q(1, 2)).unwrap(), q(3, 35));
    assert_eq!(r("c").specialize(&q(0, 1)).unwrap(), q(0, 1));
    assert!(r("1/(c^2-1)").specialize(&q(1, 1)).is_err());
    assert!(CurveSpecC::djkm_at(q(-1, 1)).is_err());
}

#[test]
fn specialized_curve_matches_symbolic_reduction() {
    let c0 = q(1, 3);
    let red = Reducer::new(CurveSpecC::djkm_at(c0.clone()).unwrap()).unwrap();
    let sym = Reducer::djkm();
    for k in -9..=9 {
        let form = DiffFormC::dt(RingElemC::basis(k, 1));
        let want = sym
            .reduce(&form)
            .map_coords(|a| a.specialize(&c0).map(RatFuncC::constant))
            .unwrap();
        assert_eq!(red.reduce(&form), want, "k = {k}");
    }
}

#[test]
fn machine_rationals_give_the_same_tables() {
    use num_rational::Ratio;
    type Small = Ratio<i64>;
    let small = Reducer::<Small>::djkm();
    let big = Reducer::djkm();
    for k in -8..=8 {
        let a = small.reduce(&djkm::DiffForm::dt(djkm::RingElem::basis(k, 1)));
        let b = big.reduce(&DiffFormC::dt(RingElemC::basis(k, 1)));
        assert_eq!(a.to_string(), b.to_string(), "k = {k}");
    }
    let p = pfamily_recursion::<Small>(Family::M4, 12);
    let q = pfamily_recursion::<Rational>(Family::M4, 12);
    assert_eq!(p.get(12).to_string(), q.get(12).to_string());
}
