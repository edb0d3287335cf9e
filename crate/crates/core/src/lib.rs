//! Link-budget and payload-power trade-off engine for UAV-assisted mmWave
//! coverage over the sea.
//!
//! Two payload architectures are compared:
//!
//! * a flying base station ([`ArchitectureKind::FlyBS`]) that processes
//!   baseband on board and carries user traffic over a wireless backhaul;
//! * a flying remote radio head ([`ArchitectureKind::FlyRRH`]) that ships
//!   digitized IQ samples over a wireless fronthaul to a shore BBU.
//!
//! For every distance from the shore node the engine budgets the transport
//! link, sizes the antenna array needed to reach the required EIRP and reports
//! the consumed payload power of both architectures.

pub mod cli;
pub mod error;
pub mod fronthaul;
pub mod linkbudget;
pub mod power;
pub mod propagation;
pub mod scenario;

pub use error::{Error, Result};
pub use fronthaul::{FronthaulSpec, TransportKind, TransportRequirement};
pub use linkbudget::{RadioConfig, ThroughputTarget};
pub use power::{ArchitectureKind, PowerBreakdown, PowerModel};
pub use propagation::{AtmosphereSpec, CarrierSpec, LinkGeometry};
pub use scenario::{ArchPoint, CrossoverReport, DistanceRange, PowerModels, Scenario, SweepRow};
