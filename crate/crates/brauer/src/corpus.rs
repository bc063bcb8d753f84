//! Deterministic generation of test cocycles.
//!
//! Case `i` of a corpus with seed `s` uses the tower `PAIRS[i % 5]` and draws
//! from a ChaCha8 stream keyed by `(s, i)`, so any case can be regenerated on
//! its own and cases can be built in parallel.

use brauer_core::{linalg, Field, Fq, LMatrix, Matrix, OneCocycle, Poly, RatFn, Tower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The `(p, n)` pairs covered by the corpus, in round-robin order.
pub const PAIRS: [(u32, u32); 5] = [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3)];

/// Stream offset separating perturbation draws from case construction.
const PERTURB_STREAM: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// `u^{-1} b sigma(u)` for `b` trivial or a unit symbol and `u` in `GL(O_L)`.
    Integral,
    /// The cyclic symbol `T_a` with `a = t^k * unit`.
    Symbol,
    /// A symbol conjugated by `u * diag(t^e)`.
    ConjugatedSymbol,
    /// Any of the above with every lift multiplied by a random scalar.
    Rescaled,
}

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub index: usize,
    pub kind: CaseKind,
    /// Valuation of the symbol parameter, when the case is built from a symbol.
    pub symbol_valuation: Option<i64>,
    pub cocycle: OneCocycle,
}

/// Towers for [`PAIRS`], built once.
pub fn towers() -> Vec<Tower> {
    PAIRS.iter().map(|&(p, n)| Tower::new(p, n).expect("corpus tower")).collect()
}

pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Independent stream for random perturbations of case `index`.
pub fn perturbation_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PERTURB_STREAM + index as u64);
    rng
}

pub fn generate(seed: u64, count: usize) -> Vec<CorpusCase> {
    let towers = towers();
    (0..count).map(|i| case(&towers, seed, i)).collect()
}

pub fn case(towers: &[Tower], seed: u64, index: usize) -> CorpusCase {
    let tw = &towers[index % towers.len()];
    let mut rng = case_rng(seed, index);
    let kind = match rng.gen_range(0..4) {
        0 => CaseKind::Integral,
        1 => CaseKind::Symbol,
        2 => CaseKind::ConjugatedSymbol,
        _ => CaseKind::Rescaled,
    };
    let (symbol_valuation, cocycle) = build(tw, kind, &mut rng);
    CorpusCase { index, kind, symbol_valuation, cocycle }
}

fn build(tw: &Tower, kind: CaseKind, rng: &mut ChaCha8Rng) -> (Option<i64>, OneCocycle) {
    let n = tw.n() as usize;
    match kind {
        CaseKind::Integral => {
            let base = if rng.gen_bool(0.5) {
                OneCocycle::trivial(tw, n)
            } else {
                OneCocycle::symbol(tw, &random_k_unit(tw, rng)).expect("unit symbol")
            };
            let u = random_gl_o(tw, n, rng);
            (None, base.conjugate(&u).expect("invertible"))
        }
        CaseKind::Symbol => {
            // w(a) = n only for n = 2; larger radii are too costly at n = 3
            let k = if n == 2 { rng.gen_range(0..=2) } else { rng.gen_range(0..n as i64) };
            let a = tw.l().mul(&tw.l().t_pow(k), &random_k_unit(tw, rng));
            (Some(k), OneCocycle::symbol(tw, &a).expect("symbol"))
        }
        CaseKind::ConjugatedSymbol => {
            let k = if n == 2 { rng.gen_range(0..=1) } else { rng.gen_range(0..n as i64) };
            let a = tw.l().mul(&tw.l().t_pow(k), &random_k_unit(tw, rng));
            let c = OneCocycle::symbol(tw, &a).expect("symbol");
            let spread = if n == 2 { 2 } else { 1 };
            let exps: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=spread)).collect();
            let d = Matrix::from_fn(n, n, |i, j| if i == j { tw.l().t_pow(exps[i]) } else { RatFn::zero() });
            let g = linalg::mul(tw.l(), &random_gl_o(tw, n, rng), &d);
            (Some(k), c.conjugate(&g).expect("invertible"))
        }
        CaseKind::Rescaled => {
            let inner = match rng.gen_range(0..3) {
                0 => CaseKind::Integral,
                1 => CaseKind::Symbol,
                _ => CaseKind::ConjugatedSymbol,
            };
            let (k, c) = build(tw, inner, rng);
            let lambda: Vec<RatFn> = (0..tw.n()).map(|_| random_l_nonzero(tw, rng)).collect();
            (k, c.rescale(&lambda).expect("nonzero scalars"))
        }
    }
}

fn random_fq(tw: &Tower, rng: &mut impl Rng) -> Fq {
    Fq(rng.gen_range(0..tw.gf().size()) as u8)
}

fn random_fp(tw: &Tower, rng: &mut impl Rng) -> Fq {
    Fq(rng.gen_range(0..tw.p()) as u8)
}

/// Polynomial of degree at most `deg` with constant term drawn from `F_p^x`
/// (or `F_q^x` when `full`).
fn random_unit_poly(tw: &Tower, deg: usize, full: bool, rng: &mut impl Rng) -> Poly {
    let draw = |rng: &mut _| if full { random_fq(tw, rng) } else { random_fp(tw, rng) };
    let mut c = Vec::with_capacity(deg + 1);
    let mut c0 = draw(rng);
    while c0.is_zero() {
        c0 = draw(rng);
    }
    c.push(c0);
    for _ in 0..deg {
        c.push(draw(rng));
    }
    Poly::from_coeffs(c)
}

/// Element of `K` with valuation zero.
pub fn random_k_unit(tw: &Tower, rng: &mut impl Rng) -> RatFn {
    let num = random_unit_poly(tw, 2, false, rng);
    let den = random_unit_poly(tw, 1, false, rng);
    tw.l().fraction(num, den).expect("nonzero denominator")
}

/// Nonzero element of `L` with valuation in `-1..=1`.
pub fn random_l_nonzero(tw: &Tower, rng: &mut impl Rng) -> RatFn {
    let l = tw.l();
    let num = random_unit_poly(tw, 2, true, rng);
    let den = random_unit_poly(tw, 1, true, rng);
    let x = l.fraction(num, den).expect("nonzero denominator");
    l.shift(&x, rng.gen_range(-1..=1))
}

/// Element of `GL_m(O_L)` with polynomial entries of degree at most one.
pub fn random_gl_o(tw: &Tower, m: usize, rng: &mut impl Rng) -> LMatrix {
    let l = tw.l();
    loop {
        let g = Matrix::from_fn(m, m, |_, _| {
            let c = vec![random_fq(tw, rng), random_fq(tw, rng)];
            RatFn::from_poly(Poly::from_coeffs(c))
        });
        let constants = g.map(|x| l.reduce(x).expect("polynomial"));
        if !tw.gf().is_zero(&linalg::det(tw.gf(), &constants)) {
            return g;
        }
    }
}

/// Element of `GL_m(L)`: a unit matrix times `diag(t^e)` times another unit matrix.
pub fn random_gl_l(tw: &Tower, m: usize, rng: &mut impl Rng) -> LMatrix {
    let l = tw.l();
    let d = Matrix::from_fn(m, m, |i, j| if i == j { l.t_pow(rng.gen_range(-1..=2)) } else { RatFn::zero() });
    let left = random_gl_o(tw, m, rng);
    let right = random_gl_o(tw, m, rng);
    linalg::mul(l, &linalg::mul(l, &left, &d), &right)
}
