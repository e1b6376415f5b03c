//! Channel estimators and the risk machinery that tunes them.

mod baseline;
mod linear;
mod nonlinear;
mod risk;
mod solve;
mod spec;
mod thresholds;

pub use baseline::{estimate_cir_threshold, estimate_lmmse, estimate_lmmse_circulant, estimate_ml};
pub use linear::{
    adaptive_divergence, estimate_james_stein, estimate_sure_linear, sure_linear_weights, SureLinearEstimate,
    SureLinearParams,
};
pub use nonlinear::{
    apply_sure_let, estimate_sure_let, estimate_sure_let_at, estimate_sure_let_with_basis, let_residual, let_shrink,
    threshold_grid, LetBasis, SureLetEstimate, SureLetParams, ThresholdPolicy, DEFAULT_THRESHOLD_MULTIPLE,
    GRID_LOWER_MULTIPLE, GRID_POINTS, GRID_UPPER_MULTIPLE,
};
pub use risk::{sure_risk, RiskComponents, RiskReport};
pub use solve::MAX_CONDITION;
pub use thresholds::{hard_threshold, soft_threshold};
pub use spec::{ChannelEstimate, EstimationContext, EstimatorSpec, Sigma2Source};
