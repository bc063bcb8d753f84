//! Randomized invariants for the arithmetic, cohomology and building layers.

use brauer_core::building;
use brauer_core::linalg::{self, Matrix};
use brauer_core::{Field, Fq, LMatrix, LatticeVertex, OneCocycle, Poly, RatFn, ResidueClass, Tower, TwoCocycle};
use proptest::prelude::*;

const PAIRS: [(u32, u32); 5] = [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3)];

fn tower(i: usize) -> Tower {
    let (p, n) = PAIRS[i % PAIRS.len()];
    Tower::new(p, n).unwrap()
}

fn fq(tw: &Tower, raw: u8) -> Fq {
    Fq((raw as usize % tw.gf().size()) as u8)
}

fn poly(tw: &Tower, raw: &[u8]) -> Poly {
    Poly::from_coeffs(raw.iter().map(|&r| fq(tw, r)).collect())
}

/// Nonzero rational function with coefficients in `F_q`, times `t^shift`.
fn ratfn(tw: &Tower, num: &[u8], den: &[u8], shift: i64) -> RatFn {
    let l = tw.l();
    let mut n = poly(tw, num);
    if n.is_zero() {
        n = Poly::one();
    }
    let mut d = poly(tw, den);
    if d.is_zero() {
        d = Poly::one();
    }
    l.shift(&l.fraction(n, d).unwrap(), shift)
}

/// Nonzero element of `K` with valuation `shift` (coefficients in `F_p`).
fn base_elem(tw: &Tower, num: &[u8], den: &[u8], shift: i64) -> RatFn {
    let p = tw.p() as u8;
    let prime = |raw: &[u8]| -> Vec<u8> {
        let mut v: Vec<u8> = raw.iter().map(|r| r % p).collect();
        if v.first() == Some(&0) {
            v[0] = 1;
        }
        v
    };
    ratfn(tw, &prime(num), &prime(den), shift)
}

fn coeffs() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 1..4)
}

/// `u * diag(t^e) * u'` with `u, u'` unimodular polynomial matrices.
fn gl_l(tw: &Tower, m: usize, raw: &[u8], exps: &[i64]) -> LMatrix {
    let l = tw.l();
    let unit = |off: usize| -> LMatrix {
        // lower unitriangular times upper triangular with unit diagonal
        let lower = Matrix::from_fn(m, m, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Equal => l.one(),
            core::cmp::Ordering::Greater => RatFn::from_poly(poly(tw, &raw[(off + i * m + j) % raw.len()..][..1])),
            core::cmp::Ordering::Less => l.zero(),
        });
        let upper = Matrix::from_fn(m, m, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Equal => {
                let c = fq(tw, raw[(off + 7 * i + 3) % raw.len()]);
                l.constant(if c.is_zero() { tw.gf().one() } else { c })
            }
            core::cmp::Ordering::Less => {
                let k = (off + 5 * i + j) % raw.len();
                RatFn::from_poly(poly(tw, &[raw[k], raw[(k + 1) % raw.len()]]))
            }
            core::cmp::Ordering::Greater => l.zero(),
        });
        linalg::mul(l, &lower, &upper)
    };
    let d = Matrix::from_fn(m, m, |i, j| if i == j { l.t_pow(exps[i % exps.len()]) } else { l.zero() });
    linalg::mul(l, &linalg::mul(l, &unit(0), &d), &unit(11))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_field_axioms(i in 0usize..5, a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let tw = tower(i);
        let gf = tw.gf();
        let (a, b, c) = (fq(&tw, a), fq(&tw, b), fq(&tw, c));
        prop_assert_eq!(gf.add(a, b), gf.add(b, a));
        prop_assert_eq!(gf.mul(a, b), gf.mul(b, a));
        prop_assert_eq!(gf.mul(gf.mul(a, b), c), gf.mul(a, gf.mul(b, c)));
        prop_assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
        prop_assert_eq!(gf.add(a, gf.neg(a)), Fq::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(gf.mul(a, gf.inv(a).unwrap()), gf.one());
        }
        // Frobenius is additive and multiplicative
        prop_assert_eq!(gf.frobenius(1, gf.add(a, b)), gf.add(gf.frobenius(1, a), gf.frobenius(1, b)));
        prop_assert_eq!(gf.frobenius(1, gf.mul(a, b)), gf.mul(gf.frobenius(1, a), gf.frobenius(1, b)));
    }

    #[test]
    fn frobenius_has_order_n(i in 0usize..5, a in any::<u8>()) {
        let tw = tower(i);
        let gf = tw.gf();
        let a = fq(&tw, a);
        prop_assert_eq!(gf.frobenius(tw.n(), a), a);
        let g = gf.generator();
        for k in 1..tw.n() {
            prop_assert_ne!(gf.frobenius(k, g), g);
        }
    }

    #[test]
    fn valuation_is_ultrametric(
        i in 0usize..5,
        (n1, d1, s1) in (coeffs(), coeffs(), -3i64..4),
        (n2, d2, s2) in (coeffs(), coeffs(), -3i64..4),
    ) {
        let tw = tower(i);
        let l = tw.l();
        let x = ratfn(&tw, &n1, &d1, s1);
        let y = ratfn(&tw, &n2, &d2, s2);
        let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
        prop_assert_eq!(l.mul(&x, &y).valuation(), Some(vx + vy));
        if let Some(v) = l.add(&x, &y).valuation() {
            prop_assert!(v >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(v, vx.min(vy));
            }
        }
        prop_assert_eq!(tw.act(tw.frobenius(), &x).valuation(), Some(vx));
    }

    #[test]
    fn fixed_field_of_frobenius_is_base(i in 0usize..5, num in coeffs(), den in coeffs(), s in -2i64..3) {
        let tw = tower(i);
        let x = ratfn(&tw, &num, &den, s);
        let fixed = tw.act(tw.frobenius(), &x) == x;
        prop_assert_eq!(fixed, tw.in_base(&x));
        // the norm-like product over the group always lands in K
        let l = tw.l();
        let prod = tw.galois().fold(l.one(), |acc, g| l.mul(&acc, &tw.act(g, &x)));
        prop_assert!(tw.in_base(&prod));
    }

    #[test]
    fn symbol_routes_agree(i in 0usize..5, num in coeffs(), den in coeffs(), k in -3i64..6) {
        let tw = tower(i);
        let a = base_elem(&tw, &num, &den, k);
        let c = OneCocycle::symbol(&tw, &a).unwrap();
        let r = c.residue_theorem1().unwrap();
        prop_assert_eq!(r, c.residue_reference());
        prop_assert_eq!(r, ResidueClass::from_fraction(-k, tw.n() as i64));
    }

    #[test]
    fn residue_is_independent_of_lift(
        i in 0usize..5,
        num in coeffs(), den in coeffs(), k in -2i64..4,
        scalars in prop::collection::vec((coeffs(), coeffs(), -2i64..3), 3),
    ) {
        let tw = tower(i);
        let c = OneCocycle::symbol(&tw, &base_elem(&tw, &num, &den, k)).unwrap();
        let lambda: Vec<RatFn> = (0..tw.n() as usize)
            .map(|s| { let (a, b, e) = &scalars[s]; ratfn(&tw, a, b, *e) })
            .collect();
        let c2 = c.rescale(&lambda).unwrap();
        prop_assert_eq!(c2.residue_theorem1().unwrap(), c.residue_theorem1().unwrap());
        prop_assert_eq!(c2.residue_reference(), c.residue_reference());
    }

    #[test]
    fn coboundaries_have_zero_residue(
        i in 0usize..5,
        scalars in prop::collection::vec((coeffs(), coeffs(), -3i64..4), 3),
    ) {
        let tw = tower(i);
        let lambda: Vec<RatFn> = (0..tw.n() as usize)
            .map(|s| { let (a, b, e) = &scalars[s]; ratfn(&tw, a, b, *e) })
            .collect();
        let d = TwoCocycle::coboundary_of(&tw, &lambda).unwrap();
        prop_assert!(d.residue().is_zero());
        let t = TwoCocycle::trivial(&tw);
        prop_assert_eq!(d.mul(&d.inverse()), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residue_is_conjugation_invariant(
        i in 0usize..5,
        num in coeffs(), den in coeffs(), k in -2i64..4,
        raw in prop::collection::vec(any::<u8>(), 8..16),
        exps in prop::collection::vec(-1i64..3, 3),
    ) {
        let tw = tower(i);
        let c = OneCocycle::symbol(&tw, &base_elem(&tw, &num, &den, k)).unwrap();
        let g = gl_l(&tw, c.size(), &raw, &exps);
        let c2 = c.conjugate(&g).unwrap();
        let r = c.residue_theorem1().unwrap();
        prop_assert_eq!(c2.residue_theorem1().unwrap(), r);
        prop_assert_eq!(c2.residue_reference(), r);
    }

    #[test]
    fn vertex_type_is_class_invariant(
        i in 0usize..5,
        raw in prop::collection::vec(any::<u8>(), 8..16),
        raw_u in prop::collection::vec(any::<u8>(), 8..16),
        exps in prop::collection::vec(-1i64..3, 3),
        (sn, sd, ss) in (coeffs(), coeffs(), -2i64..3),
    ) {
        let tw = tower(i);
        let l = tw.l();
        let m = tw.n() as usize;
        let g = gl_l(&tw, m, &raw, &exps);
        let u = gl_l(&tw, m, &raw_u, &[0]);
        let lambda = ratfn(&tw, &sn, &sd, ss);
        let v = LatticeVertex::new(&tw, &g).unwrap();
        let moved = linalg::scale(l, &lambda, &linalg::mul(l, &g, &u));
        let v2 = LatticeVertex::new(&tw, &moved).unwrap();
        prop_assert_eq!(&v, &v2);
        prop_assert_eq!(v.vertex_type(), v2.vertex_type());
        let expected = exps.iter().cycle().take(m).sum::<i64>().rem_euclid(m as i64) as u32;
        prop_assert_eq!(v.vertex_type(), expected);
        prop_assert!(building::same_class(l, &g, &moved).unwrap());
    }
}
