//! JSON reports. Field order in each struct is the key order on output.

use serde::Serialize;

use crate::charset::{CharsetTrace, Component, GeometricProof};
use crate::poly::Polynomial;
use crate::pseudo::{PseudoResult, SetPseudoResult};
use crate::triset::TriangularSet;
use crate::zeroset::IdentityCheck;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub field: String,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: T,
}

#[derive(Serialize)]
pub struct MemberReport {
    pub polynomial: String,
    pub main_variable: Option<String>,
    pub main_degree: u32,
    pub initial: String,
}

impl MemberReport {
    pub fn new(p: &Polynomial) -> Self {
        MemberReport {
            polynomial: p.to_string(),
            main_variable: p.main_variable().map(|v| p.order().name(v).to_string()),
            main_degree: p.main_degree(),
            initial: p.initial().to_string(),
        }
    }
}

pub fn members(set: &TriangularSet) -> Vec<MemberReport> {
    set.members().iter().map(MemberReport::new).collect()
}

pub fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(Polynomial::to_string).collect()
}

#[derive(Serialize)]
pub struct PremReport {
    pub dividend: String,
    pub divisor: String,
    pub exponent: u32,
    pub quotient: String,
    pub remainder: String,
    pub identity_checked: bool,
    pub reduced: bool,
}

impl PremReport {
    pub fn new(g: &Polynomial, f: &Polynomial, res: &PseudoResult) -> Self {
        let cert = res.certify(g, f);
        PremReport {
            dividend: g.to_string(),
            divisor: f.to_string(),
            exponent: res.exponent,
            quotient: res.quotient.to_string(),
            remainder: res.remainder.to_string(),
            identity_checked: cert.identity_checked,
            reduced: cert.reduced,
        }
    }
}

#[derive(Serialize)]
pub struct SetPremReport {
    pub dividend: String,
    pub triangular_set: Vec<String>,
    pub exponents: Vec<u32>,
    pub quotients: Vec<String>,
    pub remainder: String,
    pub identity_checked: bool,
    pub reduced: bool,
}

impl SetPremReport {
    pub fn new(g: &Polynomial, set: &TriangularSet, res: &SetPseudoResult) -> Self {
        let cert = res.certify(g, set);
        SetPremReport {
            dividend: g.to_string(),
            triangular_set: strings(set.members()),
            exponents: res.exponents.clone(),
            quotients: strings(&res.quotients),
            remainder: res.remainder.to_string(),
            identity_checked: cert.identity_checked,
            reduced: cert.reduced,
        }
    }
}

#[derive(Serialize)]
pub struct BasicSetReport {
    pub members: Vec<MemberReport>,
    pub contradictory: bool,
}

#[derive(Serialize)]
pub struct IterationReport {
    pub basic_set: Vec<String>,
    pub nonzero_remainders: usize,
}

#[derive(Serialize)]
pub struct CharsetReport {
    pub members: Vec<MemberReport>,
    pub initial_product: String,
    pub contradictory: bool,
    pub remainders_vanish: bool,
    pub iteration_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<IterationReport>>,
}

pub fn trace_report(trace: &CharsetTrace) -> Vec<IterationReport> {
    trace
        .iterations
        .iter()
        .map(|it| IterationReport {
            basic_set: strings(it.basic_set.members()),
            nonzero_remainders: it.nonzero_remainders,
        })
        .collect()
}

#[derive(Serialize)]
pub struct ComponentReport {
    pub triangular_set: Vec<String>,
    pub initial_product: String,
    pub contradictory: bool,
    pub provenance: Vec<String>,
}

impl ComponentReport {
    pub fn new(c: &Component) -> Self {
        ComponentReport {
            triangular_set: strings(c.triangular_set.members()),
            initial_product: c.initial_product.to_string(),
            contradictory: c.is_contradictory(),
            provenance: strings(&c.provenance),
        }
    }
}

#[derive(Serialize)]
pub struct DecompositionReport {
    pub pruned: bool,
    pub components: Vec<ComponentReport>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub holds: bool,
    pub points: usize,
    pub counterexample: Option<Vec<u32>>,
}

impl CheckReport {
    pub fn new(check: &'static str, c: &IdentityCheck) -> Self {
        CheckReport { check, holds: c.holds, points: c.points, counterexample: c.counterexample.clone() }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub prime: u32,
    pub space_size: u64,
    pub all_hold: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Serialize)]
pub struct ProveReport {
    pub conclusion: String,
    pub characteristic_set: Vec<String>,
    pub proved_generically: bool,
    pub remainder: String,
    pub nondegeneracy_conditions: Vec<String>,
    pub exponents: Vec<u32>,
    pub quotients: Vec<String>,
}

impl ProveReport {
    pub fn new(conclusion: &Polynomial, proof: &GeometricProof) -> Self {
        ProveReport {
            conclusion: conclusion.to_string(),
            characteristic_set: strings(proof.characteristic_set.members()),
            proved_generically: proof.proved_generically,
            remainder: proof.witness.remainder.to_string(),
            nondegeneracy_conditions: strings(&proof.nondegeneracy_conditions),
            exponents: proof.witness.exponents.clone(),
            quotients: strings(&proof.witness.quotients),
        }
    }
}
