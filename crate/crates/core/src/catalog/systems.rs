//! Special linear systems, stored by basis forms.

use serde::Serialize;

use super::curves::nonic_pencil;
use super::maps::psi_components;
use super::surfaces::{self, product_form, sigma22, sigma4};
use crate::exactmath::{CycNum, Form};

#[derive(Clone, Debug, Serialize)]
pub struct SystemEntry {
    pub name: String,
    pub degree: u32,
    pub basis: Vec<Form>,
}

pub const SYSTEM_NAMES: [&str; 7] = ["O1", "M4", "M6", "psi", "pencil_C9", "pencil_C9prime", "P4_gamma"];

fn sextic_power_sum() -> Form {
    let terms = (0..4).map(|k| {
        let mut e = [0u16; 4];
        e[k] = 6;
        (crate::exactmath::Mono::from_slice(&e), CycNum::one())
    });
    Form::from_terms(4, 6, terms).expect("homogeneous")
}

pub fn basis(name: &str) -> Option<Vec<Form>> {
    let s = |n: &str| surfaces::surface(n).expect("catalog surface");
    Some(match name {
        "O1" => (0..4).map(|k| Form::var(4, k)).collect(),
        "M4" => vec![product_form(), sigma22(), sigma4()],
        "M6" => {
            let q1 = s("Q1");
            vec![q1.pow(3), q1.mul(&s("f2")), q1.mul(&s("f3")), sextic_power_sum()]
        }
        "psi" => psi_components(),
        "pencil_C9" => nonic_pencil(false),
        "pencil_C9prime" => nonic_pencil(true),
        "P4_gamma" => vec![s("P4_a"), s("P4_b")],
        _ => return None,
    })
}

pub fn entry(name: &str) -> Option<SystemEntry> {
    let basis = basis(name)?;
    Some(SystemEntry { name: name.to_string(), degree: basis[0].degree(), basis })
}
