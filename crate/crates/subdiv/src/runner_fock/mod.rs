//! Runner addition, Laurent polynomials and canonical bases of the charged
//! q-Fock space.

pub mod fock;
pub mod laurent;
pub mod reference;
pub mod runner;

pub use fock::{canonical_basis, decomposition_number, f_action, Convention, FockEngine, FockVector, Side, CONVENTION_ENV};
pub use laurent::LaurentPoly;
pub use reference::{parse_reference, ReferenceTerm, Tag};
pub use runner::{
    conjecture_scan, epsilon_d, extended_beta, runner_add, runner_theorem_check, term_images, MultiRunner, RunnerCheck, RunnerData,
    ScanConfig, ScanMode, ScanReport, TermImage,
};

use crate::error::Result;

/// Tries every convention against the reference expansions and returns
/// those that reproduce them: the first one exactly, the second one on every
/// listed term.
pub fn calibrate() -> Result<Vec<Convention>> {
    let full = parse_reference(reference::G3_6_511)?;
    let partial = parse_reference(reference::G4_8_711)?;
    let mut good = Vec::new();
    for conv in Convention::ALL {
        let (Ok(g3), Ok(g4)) = (canonical_basis(&full[0].shape, 3, &[0, 1], conv), canonical_basis(&partial[0].shape, 4, &[0, 1], conv)) else {
            continue;
        };
        let exact = g3.len() == full.len() && full.iter().all(|t| g3.coeff(&t.shape) == t.coeff);
        let listed = partial.iter().all(|t| g4.coeff(&t.shape) == t.coeff);
        if exact && listed {
            good.push(conv);
        }
    }
    Ok(good)
}
