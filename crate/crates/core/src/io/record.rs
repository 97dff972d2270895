//! Versioned JSON interchange format.
//!
//! Rationals are strings (`"3/2"`, `"-4"`) so nothing is lost to floats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{ModeLabel, NormalPoly, Rational, Scalar, ScalarMonomial, Signature, Symbol};
use crate::lindblad::{wrap_expectation, EvolutionEquation};

pub const SCHEMA_VERSION: u32 = 1;

const KIND_POLY: &str = "normal_poly";
const KIND_EQUATION: &str = "evolution_equation";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolPower {
    name: String,
    exp: String,
    real: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Phase {
    name: String,
    mult: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffTerm {
    value: String,
    i: u8,
    symbols: Vec<SymbolPower>,
    phases: Vec<Phase>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Coeff {
    terms: Vec<CoeffTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModePowers {
    mode: String,
    p: u32,
    q: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    coeff: Coeff,
    signature: Vec<ModePowers>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    schema_version: u32,
    kind: String,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationDoc {
    schema_version: u32,
    kind: String,
    observable: Vec<Term>,
    constant: Coeff,
    terms: Vec<Term>,
}

fn rat_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rational> {
    s.parse::<Rational>()
        .map_err(|_| Error::Record(format!("bad rational {s:?}")))
}

fn coeff_out(c: &Scalar) -> Coeff {
    Coeff {
        terms: c
            .terms()
            .map(|(m, r)| CoeffTerm {
                value: rat_str(r),
                i: m.i_power(),
                symbols: m
                    .sym_powers()
                    .iter()
                    .map(|(s, e)| SymbolPower {
                        name: s.name().to_string(),
                        exp: rat_str(e),
                        real: s.is_real(),
                    })
                    .collect(),
                phases: m
                    .phases()
                    .iter()
                    .map(|(s, r)| Phase {
                        name: s.name().to_string(),
                        mult: rat_str(r),
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn coeff_in(c: &Coeff) -> Result<Scalar> {
    let mut out = Scalar::zero();
    for t in &c.terms {
        if t.i > 1 {
            return Err(Error::Record(format!(
                "imaginary power {} is not canonical",
                t.i
            )));
        }
        let mut syms = Vec::new();
        for s in &t.symbols {
            let sym = if s.real {
                Symbol::new(&s.name)
            } else {
                Symbol::complex(&s.name)
            };
            syms.push((sym, parse_rat(&s.exp)?));
        }
        let mut phases = Vec::new();
        for p in &t.phases {
            phases.push((Symbol::new(&p.name), parse_rat(&p.mult)?));
        }
        let (m, flip): (ScalarMonomial, bool) = ScalarMonomial::from_parts(t.i, syms, phases);
        let v = parse_rat(&t.value)?;
        out.add_term(m, if flip { -v } else { v });
    }
    Ok(out)
}

fn terms_out(n: &NormalPoly) -> Vec<Term> {
    n.iter()
        .map(|(sig, c)| Term {
            coeff: coeff_out(c),
            signature: sig
                .modes()
                .map(|(m, p, q)| ModePowers {
                    mode: m.as_str().to_string(),
                    p,
                    q,
                })
                .collect(),
        })
        .collect()
}

fn terms_in(terms: &[Term]) -> Result<NormalPoly> {
    let mut n = NormalPoly::zero();
    for t in terms {
        let mut sig = BTreeMap::new();
        for m in &t.signature {
            if sig
                .insert(ModeLabel::new(m.mode.clone()), (m.p, m.q))
                .is_some()
            {
                return Err(Error::Record(format!("mode {:?} listed twice", m.mode)));
            }
        }
        let sig = Signature::from_modes(sig.into_iter().map(|(m, (p, q))| (m, p, q)));
        n.add_term(sig, coeff_in(&t.coeff)?);
    }
    Ok(n)
}

fn check_header(version: u32, kind: &str, want: &str) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Record(format!(
            "unsupported schema_version {version} (expected {SCHEMA_VERSION})"
        )));
    }
    if kind != want {
        return Err(Error::Record(format!(
            "expected kind {want:?}, found {kind:?}"
        )));
    }
    Ok(())
}

fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("record documents always serialize")
}

pub(super) fn normal_to_json(n: &NormalPoly) -> String {
    to_json(&PolyDoc {
        schema_version: SCHEMA_VERSION,
        kind: KIND_POLY.into(),
        terms: terms_out(n),
    })
}

pub(super) fn equation_to_json(e: &EvolutionEquation) -> String {
    let mut rhs = NormalPoly::zero();
    for (ev, c) in &e.terms {
        rhs.add_term(ev.signature().clone(), c.clone());
    }
    to_json(&EquationDoc {
        schema_version: SCHEMA_VERSION,
        kind: KIND_EQUATION.into(),
        observable: terms_out(&e.observable),
        constant: coeff_out(&e.constant),
        terms: terms_out(&rhs),
    })
}

pub fn parse_normal_record(text: &str) -> Result<NormalPoly> {
    let doc: PolyDoc = serde_json::from_str(text).map_err(|e| Error::Record(e.to_string()))?;
    check_header(doc.schema_version, &doc.kind, KIND_POLY)?;
    terms_in(&doc.terms)
}

pub fn parse_equation_record(text: &str) -> Result<EvolutionEquation> {
    let doc: EquationDoc = serde_json::from_str(text).map_err(|e| Error::Record(e.to_string()))?;
    check_header(doc.schema_version, &doc.kind, KIND_EQUATION)?;
    let rhs = terms_in(&doc.terms)?;
    if rhs.iter().any(|(s, _)| s.is_identity()) {
        return Err(Error::Record("identity term belongs in `constant`".into()));
    }
    let (terms, _) = wrap_expectation(&rhs);
    Ok(EvolutionEquation {
        observable: terms_in(&doc.observable)?,
        terms,
        constant: coeff_in(&doc.constant)?,
    })
}
