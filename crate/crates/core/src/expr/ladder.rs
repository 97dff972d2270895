//! Ladder operators, ordered operator words and (unordered) polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use indexmap::IndexMap;

use super::scalar::Scalar;
use crate::error::Result;

/// Subsystem label. The empty label is the unsubscripted mode and sorts
/// before every other label; all others compare by code point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel(Arc<str>);

impl ModeLabel {
    pub fn new(label: impl Into<String>) -> Self {
        ModeLabel(Arc::from(label.into()))
    }

    /// The unsubscripted mode.
    pub fn unlabeled() -> Self {
        ModeLabel(Arc::from(""))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_unlabeled(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&str> for ModeLabel {
    fn from(s: &str) -> Self {
        ModeLabel::new(s)
    }
}

impl From<String> for ModeLabel {
    fn from(s: String) -> Self {
        ModeLabel::new(s)
    }
}

impl Default for ModeLabel {
    fn default() -> Self {
        ModeLabel::unlabeled()
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Annihilate,
    Create,
}

impl OpKind {
    pub fn adjoint(self) -> Self {
        match self {
            OpKind::Annihilate => OpKind::Create,
            OpKind::Create => OpKind::Annihilate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LadderOp {
    pub kind: OpKind,
    pub mode: ModeLabel,
}

impl LadderOp {
    pub fn annihilate(mode: impl Into<ModeLabel>) -> Self {
        LadderOp {
            kind: OpKind::Annihilate,
            mode: mode.into(),
        }
    }

    pub fn create(mode: impl Into<ModeLabel>) -> Self {
        LadderOp {
            kind: OpKind::Create,
            mode: mode.into(),
        }
    }

    pub fn adjoint(&self) -> Self {
        LadderOp {
            kind: self.kind.adjoint(),
            mode: self.mode.clone(),
        }
    }
}

/// An ordered product of ladder-operator powers, read left to right.
///
/// Exponents are never zero and adjacent equal operators are always merged,
/// so two words are equal exactly when they spell the same operator product.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<(LadderOp, u32)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_ops(ops: impl IntoIterator<Item = (LadderOp, u32)>) -> Self {
        let mut w = Word::empty();
        for (op, e) in ops {
            w.push(op, e);
        }
        w
    }

    /// Appends `op^exp` on the right, merging with the last block if equal.
    pub fn push(&mut self, op: LadderOp, exp: u32) {
        if exp == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((last, e)) if *last == op => *e += exp,
            _ => self.0.push((op, exp)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn blocks(&self) -> &[(LadderOp, u32)] {
        &self.0
    }

    /// Total number of operators, counting multiplicity.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Iterates single operators with powers flattened.
    pub fn flat(&self) -> impl Iterator<Item = &LadderOp> {
        self.0
            .iter()
            .flat_map(|(op, e)| std::iter::repeat_n(op, *e as usize))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for (op, e) in &other.0 {
            out.push(op.clone(), *e);
        }
        out
    }

    /// Reversed word with every operator replaced by its adjoint.
    pub fn adjoint(&self) -> Word {
        Word::from_ops(self.0.iter().rev().map(|(op, e)| (op.adjoint(), *e)))
    }
}

/// One additive term: a coefficient times an ordered operator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderTerm {
    pub coeff: Scalar,
    pub word: Word,
}

/// A sum of ladder terms in insertion order. Terms with identical words are
/// merged on insertion and zero terms are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LadderPoly {
    terms: IndexMap<Word, Scalar>,
}

impl LadderPoly {
    pub fn zero() -> Self {
        LadderPoly::default()
    }

    pub fn scalar(s: Scalar) -> Self {
        LadderPoly::term(s, Word::empty())
    }

    pub fn one() -> Self {
        LadderPoly::scalar(Scalar::one())
    }

    pub fn op(op: LadderOp) -> Self {
        LadderPoly::term(Scalar::one(), Word::from_ops([(op, 1)]))
    }

    pub fn annihilate(mode: impl Into<ModeLabel>) -> Self {
        LadderPoly::op(LadderOp::annihilate(mode))
    }

    pub fn create(mode: impl Into<ModeLabel>) -> Self {
        LadderPoly::op(LadderOp::create(mode))
    }

    pub fn term(coeff: Scalar, word: Word) -> Self {
        let mut p = LadderPoly::zero();
        p.add_term(coeff, word);
        p
    }

    pub fn add_term(&mut self, coeff: Scalar, word: Word) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.shift_remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = LadderTerm> + '_ {
        self.terms.iter().map(|(w, c)| LadderTerm {
            coeff: c.clone(),
            word: w.clone(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> LadderPoly {
        let mut out = LadderPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(c * s, w.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> LadderPoly {
        let mut acc = LadderPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum word degree over all terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> LadderPoly {
        let mut out = LadderPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(f(c), w.clone());
        }
        out
    }

    /// Hermitian conjugate: conjugate coefficients, reverse words, swap
    /// creation and annihilation.
    pub fn dagger(&self) -> Result<LadderPoly> {
        let mut out = LadderPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(c.conj()?, w.adjoint());
        }
        Ok(out)
    }
}

impl FromIterator<LadderTerm> for LadderPoly {
    fn from_iter<I: IntoIterator<Item = LadderTerm>>(iter: I) -> Self {
        let mut p = LadderPoly::zero();
        for t in iter {
            p.add_term(t.coeff, t.word);
        }
        p
    }
}

impl Add<&LadderPoly> for &LadderPoly {
    type Output = LadderPoly;

    fn add(self, rhs: &LadderPoly) -> LadderPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }
}

impl Add for LadderPoly {
    type Output = LadderPoly;

    fn add(self, rhs: LadderPoly) -> LadderPoly {
        &self + &rhs
    }
}

impl Neg for &LadderPoly {
    type Output = LadderPoly;

    fn neg(self) -> LadderPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for LadderPoly {
    type Output = LadderPoly;

    fn neg(self) -> LadderPoly {
        -&self
    }
}

impl Sub<&LadderPoly> for &LadderPoly {
    type Output = LadderPoly;

    fn sub(self, rhs: &LadderPoly) -> LadderPoly {
        self + &(-rhs)
    }
}

impl Sub for LadderPoly {
    type Output = LadderPoly;

    fn sub(self, rhs: LadderPoly) -> LadderPoly {
        &self - &rhs
    }
}

/// Noncommutative product; words are concatenated in order.
impl Mul<&LadderPoly> for &LadderPoly {
    type Output = LadderPoly;

    fn mul(self, rhs: &LadderPoly) -> LadderPoly {
        let mut out = LadderPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(ca * cb, wa.concat(wb));
            }
        }
        out
    }
}

impl Mul for LadderPoly {
    type Output = LadderPoly;

    fn mul(self, rhs: LadderPoly) -> LadderPoly {
        &self * &rhs
    }
}
