pub mod error;
pub mod exact;
pub mod characterize;
pub mod cli;
pub mod combinatorics;
pub mod generators;
pub mod graph;
pub mod report;
pub mod verify;

#[cfg(test)]
mod testing;
