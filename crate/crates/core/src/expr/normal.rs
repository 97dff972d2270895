//! Canonical normal-ordered polynomials.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Neg, Sub};

use super::ladder::{LadderOp, LadderPoly, ModeLabel, Word};
use super::scalar::Scalar;

/// A normal-ordered monomial: for each mode, `b†^p b^q`. Modes with
/// `(0, 0)` are never stored, so the empty signature is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(BTreeMap<ModeLabel, (u32, u32)>);

impl Signature {
    pub fn identity() -> Self {
        Signature::default()
    }

    pub fn single(mode: impl Into<ModeLabel>, p: u32, q: u32) -> Self {
        let mut s = Signature::identity();
        s.insert(mode.into(), p, q);
        s
    }

    pub fn from_modes<M: Into<ModeLabel>>(modes: impl IntoIterator<Item = (M, u32, u32)>) -> Self {
        let mut s = Signature::identity();
        for (m, p, q) in modes {
            s.insert(m.into(), p, q);
        }
        s
    }

    /// Sets the `(p, q)` pair of a mode, replacing any previous value.
    pub fn insert(&mut self, mode: ModeLabel, p: u32, q: u32) {
        if p == 0 && q == 0 {
            self.0.remove(&mode);
        } else {
            self.0.insert(mode, (p, q));
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, mode: &ModeLabel) -> (u32, u32) {
        self.0.get(mode).copied().unwrap_or((0, 0))
    }

    pub fn modes(&self) -> impl Iterator<Item = (&ModeLabel, u32, u32)> {
        self.0.iter().map(|(m, &(p, q))| (m, p, q))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().map(|(p, q)| p + q).sum()
    }

    /// Signature of the Hermitian conjugate monomial.
    pub fn adjoint(&self) -> Signature {
        Signature(
            self.0
                .iter()
                .map(|(m, &(p, q))| (m.clone(), (q, p)))
                .collect(),
        )
    }

    /// The operator word: every creation (modes ascending) followed by every
    /// annihilation (modes ascending).
    pub fn to_word(&self) -> Word {
        let creations = self
            .0
            .iter()
            .map(|(m, &(p, _))| (LadderOp::create(m.clone()), p));
        let annihilations = self
            .0
            .iter()
            .map(|(m, &(_, q))| (LadderOp::annihilate(m.clone()), q));
        Word::from_ops(creations.chain(annihilations))
    }
}

/// A normal-ordered polynomial in canonical form: signature -> nonzero
/// coefficient. Map equality is operator equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalPoly {
    entries: BTreeMap<Signature, Scalar>,
}

impl NormalPoly {
    pub fn zero() -> Self {
        NormalPoly::default()
    }

    pub fn scalar(s: Scalar) -> Self {
        NormalPoly::monomial(Signature::identity(), s)
    }

    pub fn monomial(sig: Signature, coeff: Scalar) -> Self {
        let mut n = NormalPoly::zero();
        n.add_term(sig, coeff);
        n
    }

    pub fn add_term(&mut self, sig: Signature, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(sig) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in deterministic order: mode labels, then `(p, q)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Signature, &Scalar)> {
        self.entries.iter()
    }

    pub fn coeff(&self, sig: &Signature) -> Scalar {
        self.entries.get(sig).cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &Scalar) -> NormalPoly {
        let mut out = NormalPoly::zero();
        for (sig, c) in &self.entries {
            out.add_term(sig.clone(), c * s);
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> NormalPoly {
        let mut out = NormalPoly::zero();
        for (sig, c) in &self.entries {
            out.add_term(sig.clone(), f(c));
        }
        out
    }

    /// Hermitian conjugate; stays normal-ordered.
    pub fn dagger(&self) -> crate::error::Result<NormalPoly> {
        let mut out = NormalPoly::zero();
        for (sig, c) in &self.entries {
            out.add_term(sig.adjoint(), c.conj()?);
        }
        Ok(out)
    }

    /// The same operator as an (already normal-ordered) ladder polynomial.
    pub fn to_ladder_poly(&self) -> LadderPoly {
        let mut p = LadderPoly::zero();
        for (sig, c) in &self.entries {
            p.add_term(c.clone(), sig.to_word());
        }
        p
    }
}

impl FromIterator<(Signature, Scalar)> for NormalPoly {
    fn from_iter<I: IntoIterator<Item = (Signature, Scalar)>>(iter: I) -> Self {
        let mut n = NormalPoly::zero();
        for (s, c) in iter {
            n.add_term(s, c);
        }
        n
    }
}

impl AddAssign<&NormalPoly> for NormalPoly {
    fn add_assign(&mut self, rhs: &NormalPoly) {
        for (s, c) in &rhs.entries {
            self.add_term(s.clone(), c.clone());
        }
    }
}

impl AddAssign for NormalPoly {
    fn add_assign(&mut self, rhs: NormalPoly) {
        if self.entries.len() < rhs.entries.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (s, c) in rhs.entries {
            self.add_term(s, c);
        }
    }
}

impl Add<&NormalPoly> for &NormalPoly {
    type Output = NormalPoly;

    fn add(self, rhs: &NormalPoly) -> NormalPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for NormalPoly {
    type Output = NormalPoly;

    fn add(mut self, rhs: NormalPoly) -> NormalPoly {
        self += rhs;
        self
    }
}

impl Neg for &NormalPoly {
    type Output = NormalPoly;

    fn neg(self) -> NormalPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for NormalPoly {
    type Output = NormalPoly;

    fn neg(self) -> NormalPoly {
        -&self
    }
}

impl Sub<&NormalPoly> for &NormalPoly {
    type Output = NormalPoly;

    fn sub(self, rhs: &NormalPoly) -> NormalPoly {
        self + &(-rhs)
    }
}

impl Sub for NormalPoly {
    type Output = NormalPoly;

    fn sub(self, rhs: NormalPoly) -> NormalPoly {
        &self - &rhs
    }
}
