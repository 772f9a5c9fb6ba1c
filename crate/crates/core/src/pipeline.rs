//! End-to-end analytic route for a general state: CS parameters, Hadamard
//! image in X form, phase reduction, closed-form discord.

use crate::discord::{discord_family, DiscordResult, NanoporeFamilyParams};
use crate::error::{Error, Result};
use crate::localops::{cs_to_x_params, phase_reduce_x, PhaseReduction};
use crate::states::{extract_cs, extract_x, is_centrosymmetric, is_x_form, CSParams, DensityMatrix, XParams};

/// Every intermediate of the analytic route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticDiscord {
    /// Present when the input was centrosymmetric.
    pub cs: Option<CSParams>,
    /// X form of the input (Hadamard image of a CS state, or the input itself).
    pub x: XParams,
    pub reduction: PhaseReduction,
    pub family: NanoporeFamilyParams,
    pub result: DiscordResult,
}

/// Analytic discord of a CS or X state whose real X form has equal middle
/// diagonals. Anything else is [`Error::AnalyticNotApplicable`].
pub fn analytic_discord(rho: &DensityMatrix, tol: f64) -> Result<AnalyticDiscord> {
    let m = rho.matrix();
    let (cs, x) = if is_centrosymmetric(m, tol) {
        let p = extract_cs(rho, tol)?;
        (Some(p), cs_to_x_params(&p))
    } else if is_x_form(m, tol) {
        (None, extract_x(rho, tol)?)
    } else {
        return Err(Error::AnalyticNotApplicable(
            "state is neither centrosymmetric nor X-shaped".into(),
        ));
    };
    let reduction = phase_reduce_x(&x);
    let family = NanoporeFamilyParams::from_real_x(&reduction.real_x, tol)?;
    let result = discord_family(&family)?;
    Ok(AnalyticDiscord { cs, x, reduction, family, result })
}
