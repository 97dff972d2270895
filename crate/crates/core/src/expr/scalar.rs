//! Exact commutative coefficients.
//!
//! A [`Scalar`] is a finite sum of rational multiples of [`ScalarMonomial`]s,
//! where a monomial is a power of the imaginary unit times rational powers of
//! real symbols times phase atoms `exp(i*r*theta)`. The representation is kept
//! canonical at all times so that structural equality is value equality:
//! zero coefficients are dropped, `i^2` folds into the coefficient sign, and
//! zero exponents are removed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Reserved name of the reduced Planck constant.
pub const HBAR: &str = "hbar";

/// A named scalar symbol. Identity is by name only.
#[derive(Clone, Debug)]
pub struct Symbol {
    name: String,
    real: bool,
}

impl Symbol {
    /// A real-valued symbol (the default for every parsed identifier).
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "symbol names must be nonempty");
        Symbol { name, real: true }
    }

    /// A symbol that is not assumed real. It can be multiplied and added like
    /// any other symbol but cannot be conjugated.
    pub fn complex(name: impl Into<String>) -> Self {
        Symbol {
            real: false,
            ..Symbol::new(name)
        }
    }

    pub fn hbar() -> Self {
        Symbol::new(HBAR)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_real(&self) -> bool {
        self.real
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The non-numeric part of one scalar term.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalarMonomial {
    /// Power of the imaginary unit. Canonically 0 or 1; `i^2` is folded into
    /// the coefficient.
    i_power: u8,
    sym_powers: BTreeMap<Symbol, Rational>,
    /// `symbol -> r` stands for `exp(i * r * symbol)`.
    phases: BTreeMap<Symbol, Rational>,
}

impl ScalarMonomial {
    pub fn i_power(&self) -> u8 {
        self.i_power
    }

    pub fn sym_powers(&self) -> &BTreeMap<Symbol, Rational> {
        &self.sym_powers
    }

    pub fn phases(&self) -> &BTreeMap<Symbol, Rational> {
        &self.phases
    }

    pub fn is_constant(&self) -> bool {
        self.i_power == 0 && self.sym_powers.is_empty() && self.phases.is_empty()
    }

    /// Builds a monomial from raw parts, normalizing the imaginary power.
    /// Returns the monomial and the sign picked up from folding `i^2`.
    pub fn from_parts(
        i_power: u8,
        sym_powers: impl IntoIterator<Item = (Symbol, Rational)>,
        phases: impl IntoIterator<Item = (Symbol, Rational)>,
    ) -> (Self, bool) {
        let mut m = ScalarMonomial::default();
        for (s, e) in sym_powers {
            add_exponent(&mut m.sym_powers, s, e);
        }
        for (s, e) in phases {
            add_exponent(&mut m.phases, s, e);
        }
        let i = i_power % 4;
        m.i_power = i % 2;
        (m, i >= 2)
    }

    /// Product of two monomials; the boolean is true when the product carries
    /// an extra factor of -1 (from `i * i`).
    fn mul(&self, other: &Self) -> (Self, bool) {
        let mut out = self.clone();
        for (s, e) in &other.sym_powers {
            add_exponent(&mut out.sym_powers, s.clone(), e.clone());
        }
        for (s, e) in &other.phases {
            add_exponent(&mut out.phases, s.clone(), e.clone());
        }
        let i = self.i_power + other.i_power;
        out.i_power = i % 2;
        (out, i == 2)
    }
}

fn add_exponent(map: &mut BTreeMap<Symbol, Rational>, s: Symbol, e: Rational) {
    use std::collections::btree_map::Entry;
    match map.entry(s) {
        Entry::Vacant(v) => {
            if !e.is_zero() {
                v.insert(e);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += e;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// An exact commutative coefficient in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    terms: BTreeMap<ScalarMonomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = Scalar::zero();
        s.add_term(ScalarMonomial::default(), r);
        s
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let mut s = Scalar::zero();
        s.add_term(
            ScalarMonomial {
                i_power: 1,
                ..Default::default()
            },
            Rational::one(),
        );
        s
    }

    pub fn symbol(sym: Symbol) -> Self {
        Scalar::symbol_pow(sym, Rational::one())
    }

    pub fn symbol_pow(sym: Symbol, exponent: Rational) -> Self {
        let (m, _) = ScalarMonomial::from_parts(0, [(sym, exponent)], []);
        let mut s = Scalar::zero();
        s.add_term(m, Rational::one());
        s
    }

    /// `exp(i * multiplier * sym)`.
    pub fn phase(sym: Symbol, multiplier: Rational) -> Self {
        let (m, _) = ScalarMonomial::from_parts(0, [], [(sym, multiplier)]);
        let mut s = Scalar::zero();
        s.add_term(m, Rational::one());
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ScalarMonomial, Rational)>) -> Self {
        let mut s = Scalar::zero();
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarMonomial, &Rational)> {
        self.terms.iter()
    }

    /// The value as a plain rational, if the scalar has no symbolic part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: ScalarMonomial, c: Rational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        if r.is_integer() {
            return self.scale_int(r.numer());
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale_int(&self, k: &BigInt) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let c = if c.is_integer() {
                Rational::from_integer(c.numer() * k)
            } else {
                c * Rational::from_integer(k.clone())
            };
            (m.clone(), c)
        });
        Scalar {
            terms: terms.collect(),
        }
    }

    /// Raises to an exact rational power.
    ///
    /// Nonnegative integer powers work for any scalar. Negative and
    /// fractional powers need a single term; fractional powers additionally
    /// need a positive coefficient whose root is rational and no factor of `i`.
    pub fn pow(&self, exponent: &Rational) -> Result<Scalar> {
        if exponent.is_integer() {
            let n = exponent.to_integer();
            if !n.is_negative() {
                let n = n.to_u32().ok_or_else(|| {
                    Error::UnsupportedScalarPower(format!("exponent {n} too large"))
                })?;
                return Ok(self.pow_u32(n));
            }
            let inv = self.recip()?;
            let n = (-n)
                .to_u32()
                .ok_or_else(|| Error::UnsupportedScalarPower("exponent too large".into()))?;
            return Ok(inv.pow_u32(n));
        }
        let (m, c) = self
            .single_term()
            .ok_or_else(|| Error::UnsupportedScalarPower(format!("({self})^({exponent})")))?;
        if m.i_power != 0 {
            return Err(Error::UnsupportedScalarPower(format!(
                "({self})^({exponent})"
            )));
        }
        let coeff = rational_root_pow(c, exponent)
            .ok_or_else(|| Error::UnsupportedScalarPower(format!("({c})^({exponent})")))?;
        let out = ScalarMonomial {
            i_power: 0,
            sym_powers: m
                .sym_powers
                .iter()
                .map(|(s, e)| (s.clone(), e * exponent))
                .collect(),
            phases: m
                .phases
                .iter()
                .map(|(s, e)| (s.clone(), e * exponent))
                .collect(),
        };
        Ok(Scalar::from_terms([(out, coeff)]))
    }

    fn pow_u32(&self, mut n: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn single_term(&self) -> Option<(&ScalarMonomial, &Rational)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    /// Multiplicative inverse of a single-term scalar.
    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InvalidDivisor);
        }
        let (m, c) = self
            .single_term()
            .ok_or_else(|| Error::UnsupportedScalarPower(format!("1/({self})")))?;
        let mut coeff = c.recip();
        // 1/i = -i
        if m.i_power == 1 {
            coeff = -coeff;
        }
        let out = ScalarMonomial {
            i_power: m.i_power,
            sym_powers: m.sym_powers.iter().map(|(s, e)| (s.clone(), -e)).collect(),
            phases: m.phases.iter().map(|(s, e)| (s.clone(), -e)).collect(),
        };
        Ok(Scalar::from_terms([(out, coeff)]))
    }

    /// Complex conjugate. Symbols are real unless constructed with
    /// [`Symbol::complex`], in which case conjugation is refused.
    pub fn conj(&self) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            if let Some(s) = m.sym_powers.keys().chain(m.phases.keys()).find(|s| !s.real) {
                return Err(Error::ComplexSymbolUnsupported(s.name.clone()));
            }
            let conj_m = ScalarMonomial {
                i_power: m.i_power,
                sym_powers: m.sym_powers.clone(),
                phases: m.phases.iter().map(|(s, e)| (s.clone(), -e)).collect(),
            };
            // conj(i) = i^3 = -i
            let coeff = if m.i_power == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(conj_m, coeff);
        }
        Ok(out)
    }

    /// Sets every power of the named symbol to one. Phase atoms of that
    /// symbol are left untouched.
    pub fn substitute_one(&self, name: &str) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            m.sym_powers.retain(|s, _| s.name != name);
            (m, c.clone())
        }))
    }

    /// Every symbol mentioned, either as a power or as a phase.
    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.sym_powers.keys().chain(m.phases.keys()))
    }
}

/// `c^e` for rational `c > 0` when the result is rational.
fn rational_root_pow(c: &Rational, e: &Rational) -> Option<Rational> {
    if c.is_one() {
        return Some(Rational::one());
    }
    if !c.is_positive() {
        return None;
    }
    let root = e.denom().to_u32()?;
    let num = c.numer().nth_root(root);
    let den = c.denom().nth_root(root);
    if num.pow(root) != *c.numer() || den.pow(root) != *c.denom() {
        return None;
    }
    let base = Rational::new(num, den);
    let p = e.numer();
    let n = p.abs().to_i32()?;
    let r = num_traits::pow(base, n as usize);
    Some(if p.is_negative() { r.recip() } else { r })
}

/// Exact rational value of a finite decimal literal such as `0.125` or `-2`.
pub fn rational_from_decimal(text: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        offset: 0,
        expected: vec!["decimal literal".into()],
        found: format!("{text:?}"),
    };
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty())
        || !digits_ok(int_part)
        || !digits_ok(frac_part)
        || (body.contains('.') && frac_part.is_empty())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (m, flip) = ma.mul(mb);
                let c = ca * cb;
                out.add_term(m, if flip { -c } else { c });
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<Symbol> for Scalar {
    fn from(s: Symbol) -> Self {
        Scalar::symbol(s)
    }
}
