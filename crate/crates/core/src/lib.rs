//! Randomized greedy independent sets in hypergraphs: instance model,
//! the greedy process, generators, analytic bounds, exact oracles and
//! Monte Carlo experiments.

pub mod experiments;
pub mod fmt;
pub mod generators;
pub mod greedy;
pub mod hypercore;
pub mod oracle;
pub mod theory;
pub mod verify;
