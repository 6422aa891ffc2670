//! Code-level metrics over a [`QProgram`](crate::model::QProgram).

mod halstead;
mod infoflow;
mod loc;

pub use halstead::{compute_halstead, tokenize_halstead, HalsteadMetrics, HalsteadTokens};
pub use infoflow::{compute_information_flow, InfoFlowMetrics, ModuleFlow};
pub use loc::{compute_loc_metrics, LocMetrics};
