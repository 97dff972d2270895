//! Seeded random inputs shared by the integration tests.

#![allow(dead_code)]

pub mod cases;

use bolano_core::oracle::{ComplexRational, Substitution};
use bolano_core::{LadderOp, LadderPoly, Rational, Scalar, Symbol, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MODES: [&str; 3] = ["1", "2", "3"];
pub const SYMBOLS: [&str; 3] = ["x", "y", "z"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rational(rng: &mut impl Rng) -> Rational {
    let mut n: i64 = rng.gen_range(-5..=5);
    if n == 0 {
        n = 1;
    }
    Rational::new(n.into(), rng.gen_range(1i64..=3).into())
}

/// Word of exactly `ops` operators, each drawn uniformly from the `2 * modes`
/// ladder operators.
pub fn word(rng: &mut impl Rng, ops: usize, modes: usize) -> Word {
    let mut w = Word::empty();
    for _ in 0..ops {
        let mode = MODES[rng.gen_range(0..modes)];
        let op = if rng.gen() {
            LadderOp::create(mode)
        } else {
            LadderOp::annihilate(mode)
        };
        w.push(op, 1);
    }
    w
}

/// Rational coefficient times a product of at most two integer powers of
/// `x, y, z`, sometimes times `I`. Every such scalar can be evaluated with
/// [`substitution`].
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    let mut s = Scalar::from_rational(rational(rng));
    for _ in 0..rng.gen_range(0..=2) {
        let sym = Symbol::new(SYMBOLS[rng.gen_range(0..SYMBOLS.len())]);
        s = &s * &Scalar::symbol_pow(sym, Rational::from_integer(rng.gen_range(1i64..=2).into()));
    }
    if rng.gen_ratio(1, 4) {
        s = &s * &Scalar::i();
    }
    s
}

/// As [`scalar`], plus fractional symbol powers and phases.
pub fn rich_scalar(rng: &mut impl Rng) -> Scalar {
    let mut s = scalar(rng);
    if rng.gen_ratio(1, 3) {
        let e = Rational::new(rng.gen_range(-3i64..=3).into(), 2.into());
        s = &s * &Scalar::symbol_pow(Symbol::new("w"), e);
    }
    if rng.gen_ratio(1, 3) {
        s = &s * &Scalar::phase(Symbol::new("theta"), rational(rng));
    }
    if rng.gen_ratio(1, 4) {
        s = &s + &scalar(rng);
    }
    s
}

/// Monomial with between one and `max_ops` operators and a random scalar.
pub fn monomial(rng: &mut impl Rng, max_ops: usize, modes: usize) -> LadderPoly {
    let ops = rng.gen_range(1..=max_ops);
    let w = word(rng, ops, modes);
    LadderPoly::term(scalar(rng), w)
}

/// Unit-coefficient monomial with between one and `max_ops` operators.
pub fn bare_monomial(rng: &mut impl Rng, max_ops: usize, modes: usize) -> LadderPoly {
    let ops = rng.gen_range(1..=max_ops);
    LadderPoly::term(Scalar::one(), word(rng, ops, modes))
}

/// Sum of `terms` random monomials.
pub fn poly(rng: &mut impl Rng, terms: usize, max_ops: usize, modes: usize) -> LadderPoly {
    let mut p = LadderPoly::zero();
    for _ in 0..terms {
        p = &p + &monomial(rng, max_ops, modes);
    }
    p
}

/// Values for the symbols used by [`scalar`].
pub fn substitution() -> Substitution {
    let re = |n: i64, d: i64| {
        ComplexRational::new(
            Rational::new(n.into(), d.into()),
            Rational::from_integer(0.into()),
        )
    };
    Substitution::new()
        .symbol("x", re(2, 1))
        .symbol("y", re(-3, 2))
        .symbol("z", re(5, 7))
}
