//! Published coefficient values for the classified calculi.
//!
//! The free-case calculus has the unique coefficient set
//!
//! ```text
//! a2 = q^-1, a3 = q, a4 = 1, b1 = -1, b2 = -q, b3 = -q, b4 = -1,
//! c = q^2 + 1, all others zero,
//! ```
//!
//! the first restricted calculus (constraint relation with A = q^2,
//! B = q^-1, C = -sii+/si+, D = -1/si+) has
//!
//! ```text
//! b2 = q^3, b4 = q^-2, b5 = -q^{2N+2}/si+, b6 = -q^-1/si+,
//! g1 = -q^-2/si+, c = -q^-2 siv+/si+, all others zero,
//! ```
//!
//! and the second restricted calculus (A = q^2, B = q^-1, H = 0) keeps only
//! b2 = q^3 and b4 = q^-2.

use super::conditions::RelationData;
use super::engine::{term_index, Engine, NUM_TERMS};
use crate::coeff::Field;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CalculusId {
    /// The free-left-module calculus.
    Gamma,
    /// The restricted calculus with the four-coefficient relation family.
    GammaTilde,
    /// The restricted calculus with the two-coefficient relation and H = 0.
    GammaTildeTilde,
}

impl CalculusId {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gamma" => Some(CalculusId::Gamma),
            "gamma-tilde" => Some(CalculusId::GammaTilde),
            "gamma-tilde-tilde" => Some(CalculusId::GammaTildeTilde),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CalculusId::Gamma => "gamma",
            CalculusId::GammaTilde => "gamma-tilde",
            CalculusId::GammaTildeTilde => "gamma-tilde-tilde",
        }
    }
}

/// The 27 published coefficients for a calculus at the engine's N.
pub fn published_coefficients<F: Field>(eng: &Engine<F>, id: CalculusId) -> Vec<F::E> {
    let f = &eng.field;
    let mut v = vec![f.zero(); NUM_TERMS];
    let mut set = |name: &str, val: F::E| {
        v[term_index(name).expect("known name")] = val;
    };
    match id {
        CalculusId::Gamma => {
            set("a2", f.q_pow(-1));
            set("a3", f.q_pow(1));
            set("a4", f.one());
            set("b1", f.neg(&f.one()));
            set("b2", f.neg(&f.q_pow(1)));
            set("b3", f.neg(&f.q_pow(1)));
            set("b4", f.neg(&f.one()));
            set("c", f.add(&f.q_pow(2), &f.one()));
        }
        CalculusId::GammaTilde => {
            let si_inv = f.inv(&eng.consts().siplus).expect("si+ nonzero");
            let n = eng.n as i64;
            set("b2", f.q_pow(3));
            set("b4", f.q_pow(-2));
            set("b5", f.neg(&f.mul(&f.q_pow(2 * n + 2), &si_inv)));
            set("b6", f.neg(&f.mul(&f.q_pow(-1), &si_inv)));
            set("g1", f.neg(&f.mul(&f.q_pow(-2), &si_inv)));
            set(
                "c",
                f.neg(&f.mul(&f.mul(&f.q_pow(-2), &eng.consts().sivplus), &si_inv)),
            );
        }
        CalculusId::GammaTildeTilde => {
            set("b2", f.q_pow(3));
            set("b4", f.q_pow(-2));
        }
    }
    v
}

/// The constraint relation imposed by the case, where applicable.
pub fn published_relation<F: Field>(eng: &Engine<F>, id: CalculusId) -> Option<RelationData<F::E>> {
    let f = &eng.field;
    match id {
        CalculusId::Gamma => None,
        CalculusId::GammaTilde => {
            let si_inv = f.inv(&eng.consts().siplus).expect("si+ nonzero");
            Some(RelationData {
                a: f.q_pow(2),
                b: f.q_pow(-1),
                c: f.neg(&f.mul(&eng.consts().siiplus, &si_inv)),
                d: f.neg(&si_inv),
                h_zero: false,
            })
        }
        CalculusId::GammaTildeTilde => Some(RelationData {
            a: f.q_pow(2),
            b: f.q_pow(-1),
            c: f.zero(),
            d: f.zero(),
            h_zero: true,
        }),
    }
}
