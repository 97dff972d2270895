//! Independent reference implementations used to check the main pipeline.
//!
//! [`flatten_and_swap_no`] rewrites words by repeated adjacent swaps and knows
//! nothing about Stirling numbers. [`FockMatrix`] evaluates operators on a
//! truncated number basis.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{
    LadderOp, LadderPoly, ModeLabel, NormalPoly, OpKind, Rational, Scalar, Signature,
};

/// Normal-orders by swapping the leftmost `b_j b†_k` pair into
/// `b†_k b_j + δ_jk` until no such pair is left.
pub fn flatten_and_swap_no(p: &LadderPoly) -> NormalPoly {
    let mut out = NormalPoly::zero();
    for (word, coeff) in p.iter() {
        let flat: Vec<LadderOp> = word.flat().cloned().collect();
        for (sig, count) in swap_leaves(flat) {
            out.add_term(
                sig,
                coeff.scale(&Rational::from_integer(BigInt::from(count))),
            );
        }
    }
    out
}

/// Every rewrite leaf has coefficient one, so leaves are just counted.
fn swap_leaves(word: Vec<LadderOp>) -> BTreeMap<Signature, u64> {
    let mut leaves = BTreeMap::new();
    let mut stack = vec![word];
    while let Some(mut w) = stack.pop() {
        let pair = w
            .windows(2)
            .position(|p| p[0].kind == OpKind::Annihilate && p[1].kind == OpKind::Create);
        match pair {
            Some(i) => {
                if w[i].mode == w[i + 1].mode {
                    let mut contracted = w.clone();
                    contracted.drain(i..i + 2);
                    stack.push(contracted);
                }
                w.swap(i, i + 1);
                stack.push(w);
            }
            None => *leaves.entry(signature_of(&w)).or_insert(0) += 1,
        }
    }
    leaves
}

fn signature_of(w: &[LadderOp]) -> Signature {
    let mut counts: BTreeMap<ModeLabel, (u32, u32)> = BTreeMap::new();
    for op in w {
        let e = counts.entry(op.mode.clone()).or_default();
        match op.kind {
            OpKind::Create => e.0 += 1,
            OpKind::Annihilate => e.1 += 1,
        }
    }
    Signature::from_modes(counts.into_iter().map(|(m, (p, q))| (m, p, q)))
}

pub type ComplexRational = Complex<Rational>;

/// Exact values for the symbols of a coefficient.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    /// Value of each plain symbol.
    pub symbols: HashMap<String, ComplexRational>,
    /// Value of `exp(i * theta)` for each phase symbol `theta`; only integer
    /// multiples of the phase can then be evaluated.
    pub phases: HashMap<String, ComplexRational>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn symbol(mut self, name: &str, value: ComplexRational) -> Self {
        self.symbols.insert(name.to_string(), value);
        self
    }

    pub fn phase(mut self, name: &str, value: ComplexRational) -> Self {
        self.phases.insert(name.to_string(), value);
        self
    }
}

fn int_pow(base: &ComplexRational, e: &Rational, name: &str) -> Result<ComplexRational> {
    let n = e
        .is_integer()
        .then(|| e.to_integer().abs().to_u32())
        .flatten()
        .ok_or_else(|| Error::MissingSubstitution(format!("{name}^({e})")))?;
    let mut acc = ComplexRational::one();
    for _ in 0..n {
        acc *= base;
    }
    if e.is_negative() {
        if acc.is_zero() {
            return Err(Error::MissingSubstitution(format!(
                "{name} = 0 raised to {e}"
            )));
        }
        acc = acc.inv();
    }
    Ok(acc)
}

/// Exact value of a coefficient under `subs`.
pub fn evaluate_scalar(s: &Scalar, subs: &Substitution) -> Result<ComplexRational> {
    let mut total = ComplexRational::zero();
    for (m, c) in s.terms() {
        let mut v = ComplexRational::new(c.clone(), Rational::zero());
        if m.i_power() == 1 {
            v *= ComplexRational::i();
        }
        for (sym, e) in m.sym_powers() {
            let base = subs
                .symbols
                .get(sym.name())
                .ok_or_else(|| Error::MissingSubstitution(sym.name().to_string()))?;
            v *= int_pow(base, e, sym.name())?;
        }
        for (sym, r) in m.phases() {
            let base = subs
                .phases
                .get(sym.name())
                .ok_or_else(|| Error::MissingSubstitution(format!("exp(I*{})", sym.name())))?;
            v *= int_pow(base, r, sym.name())?;
        }
        total += v;
    }
    Ok(total)
}

/// Matrix of an operator in the unnormalized number basis `|n) = b†^n |0>`,
/// where `b†|n) = |n+1)` and `b|n) = n|n-1)`. This is a diagonal similarity
/// transform of the usual orthonormal basis, so every entry of a ladder word
/// is an integer and equality is exact.
///
/// Each mode is truncated at `dim` levels (`b†` annihilates `|dim-1)`). Only
/// the leading `block` levels per mode are stored, and of those only the
/// nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockMatrix {
    modes: Vec<ModeLabel>,
    dim: usize,
    block: usize,
    entries: BTreeMap<(usize, usize), ComplexRational>,
}

impl FockMatrix {
    /// Full truncated matrix.
    pub fn new(
        p: &LadderPoly,
        modes: &[ModeLabel],
        dim: usize,
        subs: &Substitution,
    ) -> Result<Self> {
        Self::with_block(p, modes, dim, dim, subs)
    }

    /// Leading `block`-per-mode corner of the matrix truncated at `dim`.
    pub fn with_block(
        p: &LadderPoly,
        modes: &[ModeLabel],
        dim: usize,
        block: usize,
        subs: &Substitution,
    ) -> Result<Self> {
        assert!(dim > 0 && block <= dim, "need 0 < block <= dim");
        let mut modes = modes.to_vec();
        modes.sort();
        modes.dedup();
        let index: HashMap<&ModeLabel, usize> =
            modes.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let size = block.pow(modes.len() as u32);
        let mut entries = BTreeMap::new();
        for (word, coeff) in p.iter() {
            let c = evaluate_scalar(coeff, subs)?;
            if c.is_zero() {
                continue;
            }
            let ops: Vec<(usize, OpKind)> = word
                .flat()
                .map(|op| {
                    index.get(&op.mode).map(|&i| (i, op.kind)).ok_or_else(|| {
                        Error::MissingSubstitution(format!("mode {:?}", op.mode.as_str()))
                    })
                })
                .collect::<Result<_>>()?;
            for col in 0..size {
                let mut state = unflatten(col, block, modes.len());
                if let Some(amp) = apply(&ops, &mut state, dim) {
                    if state.iter().all(|&n| n < block) {
                        let row = flatten(&state, block);
                        let add = c.clone()
                            * ComplexRational::new(Rational::from_integer(amp), Rational::zero());
                        match entries.entry((row, col)) {
                            Entry::Vacant(v) => {
                                v.insert(add);
                            }
                            Entry::Occupied(mut o) => {
                                *o.get_mut() = o.get().clone() + add;
                                if o.get().is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(FockMatrix {
            modes,
            dim,
            block,
            entries,
        })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self) -> usize {
        self.block
    }

    /// Side length of the stored matrix.
    pub fn size(&self) -> usize {
        self.block.pow(self.modes.len() as u32)
    }

    /// Entry at `(row, col)` with indices given as occupation numbers.
    pub fn get(&self, row: &[usize], col: &[usize]) -> ComplexRational {
        self.entries
            .get(&(flatten(row, self.block), flatten(col, self.block)))
            .cloned()
            .unwrap_or_else(ComplexRational::zero)
    }

    /// Number of nonzero stored entries.
    pub fn nonzeros(&self) -> usize {
        self.entries.len()
    }

    /// The leading `block` levels per mode of this matrix.
    pub fn masked(&self, block: usize) -> FockMatrix {
        assert!(block <= self.block);
        let m = self.modes.len();
        let entries = self
            .entries
            .iter()
            .filter_map(|(&(r, c), v)| {
                let row = unflatten(r, self.block, m);
                let col = unflatten(c, self.block, m);
                (row.iter().chain(&col).all(|&n| n < block))
                    .then(|| ((flatten(&row, block), flatten(&col, block)), v.clone()))
            })
            .collect();
        FockMatrix {
            modes: self.modes.clone(),
            dim: self.dim,
            block,
            entries,
        }
    }
}

/// Applies a word (rightmost operator first); `None` when the state is
/// annihilated.
fn apply(ops: &[(usize, OpKind)], state: &mut [usize], dim: usize) -> Option<BigInt> {
    let mut amp = BigInt::one();
    for &(m, kind) in ops.iter().rev() {
        match kind {
            OpKind::Annihilate => {
                if state[m] == 0 {
                    return None;
                }
                amp *= state[m];
                state[m] -= 1;
            }
            OpKind::Create => {
                if state[m] + 1 >= dim {
                    return None;
                }
                state[m] += 1;
            }
        }
    }
    Some(amp)
}

fn flatten(state: &[usize], base: usize) -> usize {
    state.iter().fold(0, |acc, &n| acc * base + n)
}

fn unflatten(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

/// Modes mentioned by a polynomial, sorted.
pub fn modes_of(p: &LadderPoly) -> Vec<ModeLabel> {
    let mut m: Vec<ModeLabel> = p
        .iter()
        .flat_map(|(w, _)| w.flat().map(|op| op.mode.clone()))
        .collect();
    m.sort();
    m.dedup();
    m
}

/// Whether `a` and `b` agree on the part of the Fock space that truncation at
/// `dim` cannot reach, that is the leading `dim - degree` levels per mode.
pub fn fock_block_agrees(
    a: &LadderPoly,
    b: &LadderPoly,
    dim: usize,
    subs: &Substitution,
) -> Result<bool> {
    let degree = a.degree().max(b.degree()) as usize;
    assert!(
        degree < dim,
        "truncation {dim} leaves no unaffected block at degree {degree}"
    );
    let mut modes = modes_of(a);
    modes.extend(modes_of(b));
    let block = dim - degree;
    let ma = FockMatrix::with_block(a, &modes, dim, block, subs)?;
    let mb = FockMatrix::with_block(b, &modes, dim, block, subs)?;
    Ok(ma == mb)
}
