//! Unexpanded expression trees and their expansion into [`LadderPoly`].

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::ladder::{LadderOp, LadderPoly, ModeLabel, OpKind};
use super::scalar::{Rational, Scalar, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeKind {
    Sum,
    Product,
}

/// Expression tree as produced by the parser. Nothing is simplified yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Imaginary,
    Symbol(String),
    Ladder {
        kind: OpKind,
        mode: String,
    },
    Add(Vec<Expr>),
    Neg(Box<Expr>),
    /// Ordered (noncommutative) product.
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Range {
        kind: RangeKind,
        index: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Number(Rational::from_integer(BigInt::from(n)))
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Symbol(name.to_string())
    }

    pub fn b(mode: &str) -> Expr {
        Expr::Ladder {
            kind: OpKind::Annihilate,
            mode: mode.to_string(),
        }
    }

    pub fn bd(mode: &str) -> Expr {
        Expr::Ladder {
            kind: OpKind::Create,
            mode: mode.to_string(),
        }
    }

    pub fn pow(base: Expr, exp: Expr) -> Expr {
        Expr::Pow(Box::new(base), Box::new(exp))
    }

    /// Tree form of an already expanded polynomial; `expand` maps it back to
    /// the same polynomial.
    pub fn from_poly(p: &LadderPoly) -> Expr {
        let terms = p
            .iter()
            .map(|(w, c)| {
                let mut factors = vec![Expr::from_scalar(c)];
                for (op, e) in w.blocks() {
                    let lad = Expr::Ladder {
                        kind: op.kind,
                        mode: op.mode.as_str().to_string(),
                    };
                    factors.push(if *e == 1 {
                        lad
                    } else {
                        Expr::pow(lad, Expr::int(*e as i64))
                    });
                }
                Expr::Mul(factors)
            })
            .collect();
        Expr::Add(terms)
    }

    pub fn from_scalar(s: &Scalar) -> Expr {
        let terms = s
            .terms()
            .map(|(m, c)| {
                let mut factors = vec![Expr::Number(c.clone())];
                if m.i_power() == 1 {
                    factors.push(Expr::Imaginary);
                }
                for (sym, e) in m.sym_powers() {
                    factors.push(Expr::pow(Expr::sym(sym.name()), Expr::Number(e.clone())));
                }
                for (sym, r) in m.phases() {
                    factors.push(Expr::Exp(Box::new(Expr::Mul(vec![
                        Expr::Number(r.clone()),
                        Expr::Imaginary,
                        Expr::sym(sym.name()),
                    ]))));
                }
                Expr::Mul(factors)
            })
            .collect();
        Expr::Add(terms)
    }
}

/// Fully distributes an expression tree into a sum of ordered terms.
pub fn expand(e: &Expr) -> Result<LadderPoly> {
    match e {
        Expr::Number(r) => Ok(LadderPoly::scalar(Scalar::from_rational(r.clone()))),
        Expr::Imaginary => Ok(LadderPoly::scalar(Scalar::i())),
        Expr::Symbol(name) => Ok(LadderPoly::scalar(Scalar::symbol(Symbol::new(
            name.clone(),
        )))),
        Expr::Ladder { kind, mode } => Ok(LadderPoly::op(LadderOp {
            kind: *kind,
            mode: ModeLabel::new(mode.clone()),
        })),
        Expr::Add(items) => {
            let mut acc = LadderPoly::zero();
            for it in items {
                acc = &acc + &expand(it)?;
            }
            Ok(acc)
        }
        Expr::Neg(inner) => Ok(-expand(inner)?),
        Expr::Mul(items) => {
            let mut acc = LadderPoly::one();
            for it in items {
                acc = &acc * &expand(it)?;
                if acc.is_zero() {
                    break;
                }
            }
            Ok(acc)
        }
        Expr::Div(num, den) => {
            let den = as_scalar(&expand(den)?).ok_or(Error::InvalidDivisor)?;
            let inv = den.recip()?;
            Ok(expand(num)?.scale(&inv))
        }
        Expr::Pow(base, exp) => expand_pow(base, exp),
        Expr::Exp(arg) => {
            let arg = expand(arg)?;
            let arg = as_scalar(&arg)
                .ok_or_else(|| Error::UnsupportedExp("operator-valued argument".into()))?;
            phase_from_argument(&arg).map(LadderPoly::scalar)
        }
        Expr::Range {
            kind,
            index,
            lo,
            hi,
            body,
        } => {
            let lo_v = range_bound(lo);
            let hi_v = range_bound(hi);
            match (lo_v, hi_v) {
                (Some(l), Some(h)) if l <= h => expand_finite_range(body, index, l, h, *kind),
                _ => Err(Error::UnsupportedBounds {
                    lo: format!("{lo:?}"),
                    hi: format!("{hi:?}"),
                }),
            }
        }
    }
}

/// Expands `body` once per integer `index` in `lo..=hi` and combines the
/// copies by addition or by ordered multiplication (`lo` leftmost).
pub fn expand_finite_range(
    body: &Expr,
    index: &str,
    lo: i64,
    hi: i64,
    kind: RangeKind,
) -> Result<LadderPoly> {
    if lo > hi {
        return Err(Error::UnsupportedBounds {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let mut acc = match kind {
        RangeKind::Sum => LadderPoly::zero(),
        RangeKind::Product => LadderPoly::one(),
    };
    for v in lo..=hi {
        let item = expand(&substitute_index(body, index, v))?;
        acc = match kind {
            RangeKind::Sum => &acc + &item,
            RangeKind::Product => &acc * &item,
        };
    }
    Ok(acc)
}

fn range_bound(e: &Expr) -> Option<i64> {
    let p = expand(e).ok()?;
    let r = as_scalar(&p)?.as_rational()?;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Replaces the index as a bare symbol (by its value), as a symbol subscript
/// (`p_k` -> `p_2`) and as a mode label (`b_k` -> `b_2`).
fn substitute_index(e: &Expr, index: &str, value: i64) -> Expr {
    let sub = |x: &Expr| Box::new(substitute_index(x, index, value));
    match e {
        Expr::Symbol(name) if name == index => Expr::int(value),
        Expr::Symbol(name) => match name.rsplit_once('_') {
            Some((base, subscript)) if subscript == index => {
                Expr::Symbol(format!("{base}_{value}"))
            }
            _ => e.clone(),
        },
        Expr::Ladder { kind, mode } if mode == index => Expr::Ladder {
            kind: *kind,
            mode: value.to_string(),
        },
        Expr::Number(_) | Expr::Imaginary | Expr::Ladder { .. } => e.clone(),
        Expr::Add(xs) => Expr::Add(
            xs.iter()
                .map(|x| substitute_index(x, index, value))
                .collect(),
        ),
        Expr::Mul(xs) => Expr::Mul(
            xs.iter()
                .map(|x| substitute_index(x, index, value))
                .collect(),
        ),
        Expr::Neg(x) => Expr::Neg(sub(x)),
        Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
        Expr::Pow(a, b) => Expr::Pow(sub(a), sub(b)),
        Expr::Exp(a) => Expr::Exp(sub(a)),
        Expr::Range {
            kind,
            index: inner,
            lo,
            hi,
            body,
        } => Expr::Range {
            kind: *kind,
            index: inner.clone(),
            lo: sub(lo),
            hi: sub(hi),
            // an inner range with the same index shadows ours
            body: if inner == index {
                body.clone()
            } else {
                sub(body)
            },
        },
    }
}

/// The polynomial's value if it contains no ladder operators.
fn as_scalar(p: &LadderPoly) -> Option<Scalar> {
    match p.len() {
        0 => Some(Scalar::zero()),
        1 => {
            let (w, c) = p.iter().next().unwrap();
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}

fn expand_pow(base: &Expr, exp: &Expr) -> Result<LadderPoly> {
    let base = expand(base)?;
    let exponent = as_scalar(&expand(exp)?).and_then(|s| s.as_rational());
    match as_scalar(&base) {
        Some(s) => {
            let e = exponent.ok_or_else(|| {
                Error::UnsupportedScalarPower("exponent must be a rational constant".into())
            })?;
            Ok(LadderPoly::scalar(s.pow(&e)?))
        }
        None => {
            let e = exponent
                .filter(|e| e.is_integer() && !e.is_negative())
                .ok_or(Error::NonIntegerLadderPower)?;
            let n = e
                .to_integer()
                .to_u32()
                .ok_or(Error::NonIntegerLadderPower)?;
            Ok(base.pow(n))
        }
    }
}

fn phase_from_argument(arg: &Scalar) -> Result<Scalar> {
    let mut out = Scalar::one();
    for (m, c) in arg.terms() {
        let syms = m.sym_powers();
        let ok = m.i_power() == 1
            && m.phases().is_empty()
            && syms.len() == 1
            && syms.values().next().is_some_and(|e| e.is_one());
        if !ok {
            return Err(Error::UnsupportedExp(format!("{arg}")));
        }
        let sym = syms.keys().next().unwrap().clone();
        out = &out * &Scalar::phase(sym, c.clone());
    }
    debug_assert!(!out.is_zero() || arg.is_zero());
    if arg.is_zero() {
        return Ok(Scalar::one());
    }
    Ok(out)
}
