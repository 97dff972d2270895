//! Worked examples with their expected canonical results.

use bolano_core::io::parse_poly;
use bolano_core::{
    lme_expval_evo, normal_order, Dissipator, EvolutionEquation, LadderPoly, LindbladSpec,
    NormalPoly, ParallelConfig,
};

pub fn p(s: &str) -> LadderPoly {
    parse_poly(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn no(s: &str) -> NormalPoly {
    normal_order(&p(s), &ParallelConfig::serial())
}

/// Already normal-ordered text, read back without reordering.
pub fn n(s: &str) -> NormalPoly {
    let q = p(s);
    let out = normal_order(&q, &ParallelConfig::serial());
    assert_eq!(
        out.to_ladder_poly().len(),
        q.len(),
        "{s} is not in normal form"
    );
    out
}

/// `(input, expected)` normal-ordering examples.
pub const NORMAL_ORDER: [(&str, &str); 4] = [
    ("b*bd*b", "b + bd*b^2"),
    (
        "b_2*b_1*bd_2**2*bd_1",
        "2*bd_1*bd_2*b_1 + bd_1*bd_2^2*b_1*b_2 + 2*bd_2 + bd_2^2*b_2",
    ),
    (
        "b_1*bd_2 + 5*b_2**2*bd_1*b_1 + b_2",
        "b_2 + 5*bd_1*b_1*b_2^2 + bd_2*b_1",
    ),
    ("x*b_1*x**2*bd_1**2", "2*x^3*bd_1 + x^3*bd_1^2*b_1"),
];

/// `(A, B, expected [A, B])` examples.
pub const COMMUTATORS: [(&str, &str, &str); 4] = [
    ("bd*b", "b", "-b"),
    ("bd_1*bd_2", "b_1*b_2", "-1 - bd_1*b_1 - bd_2*b_2"),
    (
        "b_1 + 2*b_2**2",
        "bd_1**3 + 2*bd_2*b_2",
        "8*b_2^2 + 3*bd_1^2",
    ),
    ("x*b_1", "x**(0.5)*bd_1*b", "x^(3/2)*b"),
];

/// `(rate, O, P)`; `P = O` when absent.
pub type DissipatorText<'a> = (&'a str, &'a str, Option<&'a str>);

pub fn evo(ham: &str, diss: &[DissipatorText], obs: &str, hbar_is_one: bool) -> EvolutionEquation {
    let dissipators = diss
        .iter()
        .map(|&(rate, o, pp)| {
            let rate = p(rate);
            assert_eq!(rate.len(), 1);
            let (_, rate) = rate.iter().next().unwrap();
            match pp {
                Some(pp) => Dissipator::with_partner(rate.clone(), p(o), p(pp)),
                None => Dissipator::new(rate.clone(), p(o)),
            }
        })
        .collect();
    let spec = LindbladSpec {
        hamiltonian: p(ham),
        dissipators,
        hbar_is_one,
    };
    lme_expval_evo(&spec, &p(obs), &ParallelConfig::serial()).unwrap()
}

pub struct CaseStudy {
    pub name: &'static str,
    pub ham: &'static str,
    pub dissipators: Vec<DissipatorText<'static>>,
    pub observable: &'static str,
    pub hbar_is_one: bool,
    /// Right-hand side with expectation values written as operators.
    pub rhs: &'static str,
}

impl CaseStudy {
    pub fn equation(&self) -> EvolutionEquation {
        evo(
            self.ham,
            &self.dissipators,
            self.observable,
            self.hbar_is_one,
        )
    }

    pub fn expected(&self) -> NormalPoly {
        if self.rhs == "0" {
            NormalPoly::zero()
        } else {
            n(self.rhs)
        }
    }
}

const SHO: &str = "hbar*omega_0*bd*b";
const RAYLEIGH: &str = "omega_0*bd*b + I*mu/12*(bd*b**3 - bd**3*b) + I*mu/24*(b**4 - bd**4) \
                        - I*mu*(q_0**2 - 1)/4*(b**2 - bd**2)";
const BATTERY: &str = "omega_c*bd_c*b_c + omega_h*bd_h*b_h + g*(bd_c*b_h + bd_h*b_c)";
const TRIMER: &str =
    "(omega_0 + I*kappa/2)*bd_1*b_1 + omega_0*bd_2*b_2 + (omega_0 - I*kappa/2)*bd_3*b_3 \
                      + g*(bd_1*b_2 + bd_2*b_1 + bd_2*b_3 + bd_3*b_2)";
const NONRECIPROCAL: &str = "Delta*(bd_1*b_1 + bd_2*b_2) + Omega*(b_1 + bd_1) \
                             + g*(exp(I*theta)*bd_1*b_2 + exp(-I*theta)*bd_2*b_1)";

fn trimer_dissipators() -> Vec<DissipatorText<'static>> {
    vec![
        ("gamma_1", "b_1", None),
        ("gamma_2", "b_2", None),
        ("gamma_3", "b_3", None),
        ("p_1", "bd_1", None),
        ("p_2", "bd_2", None),
        ("p_3", "bd_3", None),
    ]
}

fn nonreciprocal_dissipators() -> Vec<DissipatorText<'static>> {
    vec![
        ("gamma", "b_1", None),
        ("gamma", "b_2", None),
        ("Gamma*exp(I*phi)", "b_2", Some("b_1")),
        ("Gamma*exp(-I*phi)", "b_1", Some("b_2")),
    ]
}

/// The printed evolution equations of the case studies.
pub fn case_studies() -> Vec<CaseStudy> {
    let case = |name, ham, dissipators, observable, hbar_is_one, rhs| CaseStudy {
        name,
        ham,
        dissipators,
        observable,
        hbar_is_one,
        rhs,
    };
    vec![
        case("harmonic oscillator <b>", SHO, vec![], "b", false, "-I*omega_0*b"),
        case("harmonic oscillator <bd*b>", SHO, vec![], "bd*b", false, "0"),
        case(
            "Rayleigh oscillator <b>",
            RAYLEIGH,
            vec![("mu*(q_0**2 - 1)", "bd", None), ("3*mu/4", "b**2", None), ("mu", "bd*b - bd**2/2", None)],
            "b",
            true,
            "mu*q_0^2/2*b + mu*q_0^2/2*bd - mu/2*b - mu/6*b^3 - mu/2*bd - mu/2*bd*b^2 \
             - mu/2*bd^2*b - mu/6*bd^3 - I*omega_0*b",
        ),
        case(
            "quantum battery <bd_c*b_c>",
            BATTERY,
            vec![("gamma", "b_c", None)],
            "bd_c*b_c",
            true,
            "-I*g*bd_c*b_h + I*g*bd_h*b_c - gamma*bd_c*b_c",
        ),
        case(
            "quantum battery <bd_h*b_h>",
            BATTERY,
            vec![("gamma", "b_c", None)],
            "bd_h*b_h",
            true,
            "I*g*bd_c*b_h - I*g*bd_h*b_c",
        ),
        case(
            "PT trimer <bd_1*b_1>",
            TRIMER,
            trimer_dissipators(),
            "bd_1*b_1",
            true,
            "-I*g*bd_1*b_2 + I*g*bd_2*b_1 - gamma_1*bd_1*b_1 + p_1*bd_1*b_1 + p_1",
        ),
        case(
            "PT trimer <bd_2*b_2>",
            TRIMER,
            trimer_dissipators(),
            "bd_2*b_2",
            true,
            "I*g*bd_1*b_2 - I*g*bd_2*b_1 - I*g*bd_2*b_3 + I*g*bd_3*b_2 - gamma_2*bd_2*b_2 + p_2*bd_2*b_2 + p_2",
        ),
        case(
            "PT trimer <bd_3*b_3>",
            TRIMER,
            trimer_dissipators(),
            "bd_3*b_3",
            true,
            "I*g*bd_2*b_3 - I*g*bd_3*b_2 - gamma_3*bd_3*b_3 + p_3*bd_3*b_3 + p_3",
        ),
        case(
            "nonreciprocal resonators <b_1>",
            NONRECIPROCAL,
            nonreciprocal_dissipators(),
            "b_1",
            true,
            "-I*Delta*b_1 - Gamma/2*exp(I*phi)*b_2 - I*Omega - I*g*exp(I*theta)*b_2 - gamma/2*b_1",
        ),
        case(
            "nonreciprocal resonators <b_2>",
            NONRECIPROCAL,
            nonreciprocal_dissipators(),
            "b_2",
            true,
            "-I*Delta*b_2 - Gamma/2*exp(-I*phi)*b_1 - I*g*exp(-I*theta)*b_1 - gamma/2*b_2",
        ),
    ]
}
