//! Expectation-value evolution under a Lindblad master equation.
//!
//! The density matrix is never built. For an observable `A`,
//!
//! ```text
//! d<A>/dt = -(i/hbar) <[A, H]> + sum_j gamma_j ( 1/2 <[P_j†, A] O_j> + 1/2 <P_j† [A, O_j]> )
//! ```
//!
//! and every bracket is normal-ordered before it is wrapped in `< >`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::{LadderPoly, NormalPoly, Rational, Scalar, Signature, Symbol, HBAR};
use crate::normord::{commutator_no, normal_order, ParallelConfig};

/// One dissipator `gamma * D[O, P]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dissipator {
    pub rate: Scalar,
    pub jump: LadderPoly,
    pub partner: LadderPoly,
}

impl Dissipator {
    /// Dissipator with `P = O`.
    pub fn new(rate: Scalar, jump: LadderPoly) -> Self {
        Dissipator {
            rate,
            partner: jump.clone(),
            jump,
        }
    }

    pub fn with_partner(rate: Scalar, jump: LadderPoly, partner: LadderPoly) -> Self {
        Dissipator {
            rate,
            jump,
            partner,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LindbladSpec {
    pub hamiltonian: LadderPoly,
    pub dissipators: Vec<Dissipator>,
    /// Substitute `hbar = 1` everywhere before assembling.
    pub hbar_is_one: bool,
}

impl LindbladSpec {
    pub fn new(hamiltonian: LadderPoly, dissipators: Vec<Dissipator>) -> Self {
        LindbladSpec {
            hamiltonian,
            dissipators,
            hbar_is_one: true,
        }
    }
}

/// Expectation value of a single normal-ordered monomial. The identity is
/// never wrapped; it contributes to [`EvolutionEquation::constant`] instead.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVal(Signature);

impl ExpVal {
    pub fn new(sig: Signature) -> Option<Self> {
        (!sig.is_identity()).then_some(ExpVal(sig))
    }

    pub fn signature(&self) -> &Signature {
        &self.0
    }
}

/// `d<A>/dt = sum_k c_k <m_k> + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionEquation {
    /// The normal-ordered observable `A`.
    pub observable: NormalPoly,
    pub terms: BTreeMap<ExpVal, Scalar>,
    pub constant: Scalar,
}

impl EvolutionEquation {
    /// The right-hand side with `<m>` replaced by `m`.
    pub fn rhs_poly(&self) -> NormalPoly {
        let mut n = NormalPoly::scalar(self.constant.clone());
        for (e, c) in &self.terms {
            n.add_term(e.0.clone(), c.clone());
        }
        n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// Complex conjugate of both sides: `d<A†>/dt = sum conj(c) <m†> + conj(constant)`.
    pub fn conjugate(&self) -> Result<EvolutionEquation> {
        let rhs = self.rhs_poly().dagger()?;
        let (terms, constant) = wrap_expectation(&rhs);
        Ok(EvolutionEquation {
            observable: self.observable.dagger()?,
            terms,
            constant,
        })
    }
}

/// Splits a normal-ordered polynomial into expectation values and the
/// coefficient of the identity (`<1> = 1`).
pub fn wrap_expectation(n: &NormalPoly) -> (BTreeMap<ExpVal, Scalar>, Scalar) {
    let mut terms = BTreeMap::new();
    let mut constant = Scalar::zero();
    for (sig, c) in n.iter() {
        match ExpVal::new(sig.clone()) {
            Some(e) => {
                terms.insert(e, c.clone());
            }
            None => constant = c.clone(),
        }
    }
    (terms, constant)
}

/// Normal-ordered `[A, H]`, the integrand of the Hamiltonian contribution.
pub fn hamiltonian_trace(h: &LadderPoly, a: &LadderPoly, cfg: &ParallelConfig) -> NormalPoly {
    commutator_no(a, h, cfg)
}

/// Normal-ordered `1/2 [P†, A] O + 1/2 P† [A, O]`.
pub fn dissipator_trace(
    o: &LadderPoly,
    p: &LadderPoly,
    a: &LadderPoly,
    cfg: &ParallelConfig,
) -> Result<NormalPoly> {
    let pd = p.dagger()?;
    let comm = |x: &LadderPoly, y: &LadderPoly| &(x * y) - &(y * x);
    let half = Scalar::from_rational(Rational::new(1.into(), 2.into()));
    let expr = &(&comm(&pd, a) * o) + &(&pd * &comm(a, o));
    Ok(normal_order(&expr.scale(&half), cfg))
}

/// Assembles `d<A>/dt` for the given system.
pub fn lme_expval_evo(
    spec: &LindbladSpec,
    a: &LadderPoly,
    cfg: &ParallelConfig,
) -> Result<EvolutionEquation> {
    if a.is_zero() {
        return Err(Error::EmptyObservable);
    }
    let fix = |p: &LadderPoly| {
        if spec.hbar_is_one {
            p.map_coeffs(|c| c.substitute_one(HBAR))
        } else {
            p.clone()
        }
    };
    let fix_scalar = |s: &Scalar| {
        if spec.hbar_is_one {
            s.substitute_one(HBAR)
        } else {
            s.clone()
        }
    };
    let a = fix(a);
    let h = fix(&spec.hamiltonian);

    let mut prefactor = -Scalar::i();
    if !spec.hbar_is_one {
        prefactor =
            &prefactor * &Scalar::symbol_pow(Symbol::hbar(), Rational::from_integer((-1).into()));
    }
    let mut rhs = hamiltonian_trace(&h, &a, cfg).scale(&prefactor);

    for d in &spec.dissipators {
        let (o, p) = (fix(&d.jump), fix(&d.partner));
        if o.is_zero() || p.is_zero() {
            return Err(Error::InvalidDissipator);
        }
        rhs += dissipator_trace(&o, &p, &a, cfg)?.scale(&fix_scalar(&d.rate));
    }

    let (terms, constant) = wrap_expectation(&rhs);
    Ok(EvolutionEquation {
        observable: normal_order(&a, cfg),
        terms,
        constant,
    })
}
