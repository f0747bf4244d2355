//! Solver library for the sequential currency-competition game on weighted
//! trade networks.
//!
//! Users embedded in a payment network split their transaction volumes across
//! the currencies that issuers choose to internationalize; issuers move in
//! order, weighing total adoption against a convex commitment cost. The crate
//! computes the unique user allocation for a given commitment profile, the
//! subgame-perfect equilibrium of the issuer game (two currencies by the
//! semi-analytic case logic, T currencies by recursive grid refinement),
//! regime thresholds in the cost weight, comparative statics over network
//! integration, and per-user concentration (Gini) diagnostics.

pub mod allocation;
pub mod analysis;
pub mod error;
pub mod issuer_game;
pub mod network;
pub mod numerics;

pub use allocation::{Allocation, CommitCostFn, CommitmentProfile, GiniDecomposition, IssuerChoice, LiquidityFn};
pub use analysis::{IntegrationReport, RegimeBoundary, RegimeMap, SweepParam, SweepPoint, SweepRow, SweepTable};
pub use error::{Error, Result};
pub use issuer_game::{Deterrence, Issuer, Regime, Scenario, SpeDiagnostics, SpeOutcome, SpeTOptions};
pub use network::{IntegrationOrder, TradeNetwork, UserVolumes};
pub use numerics::{RootVerdict, Tolerances};
