//! Shared record type for a full set of state statistics.

use serde::{Deserialize, Serialize};

/// How a quantity was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed forms in terms of hypergeometric functions.
    Analytic,
    /// Large-|α| expansions; guarded to |α| ≥ 3.
    Asymptotic,
    /// Sums over the truncated closed-form amplitude vector.
    DirectSum,
    /// Matrix expectations in the truncated Fock space.
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Asymptotic => "asymptotic",
            Method::DirectSum => "direct_sum",
            Method::Oracle => "oracle",
        }
    }
}

/// Every first- and second-order statistic of one state, tagged with the
/// method that produced it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MomentReport {
    pub mean_n: f64,
    pub var_n: f64,
    pub mandel_q: f64,
    pub mean_x: f64,
    pub mean_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub uncertainty_product: f64,
    pub robertson_bound: f64,
    pub method: Method,
}

impl MomentReport {
    /// Largest pairwise relative difference (with an absolute floor) over
    /// all numeric fields of two reports.
    pub fn max_discrepancy(&self, other: &MomentReport) -> f64 {
        let pairs = [
            (self.mean_n, other.mean_n),
            (self.var_n, other.var_n),
            (self.mandel_q, other.mandel_q),
            (self.mean_x, other.mean_x),
            (self.mean_y, other.mean_y),
            (self.var_x, other.var_x),
            (self.var_y, other.var_y),
            (self.uncertainty_product, other.uncertainty_product),
            (self.robertson_bound, other.robertson_bound),
        ];
        pairs
            .iter()
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1e-2))
            .fold(0.0, f64::max)
    }
}
