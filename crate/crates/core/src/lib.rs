// SPDX-License-Identifier: Apache-2.0

//! Online-testable reversible circuits.
//!
//! The crate reads and writes RevLib `.real` netlists, simulates reversible
//! circuits exactly, and rewrites any circuit of reversible gates into an
//! online-testable one: each gate becomes a testable block whose parity line
//! goes high on a single-bit error, and an MFRG cascade ORs the parity lines
//! into one error output `E`. Fault-injection campaigns check that every
//! single flip at a block cut raises `E`.
//!
//! Runnable examples, one per capability (`cargo run --example <name>`):
//!
//! - `gate_library`: built-in gates, truth tables and costs
//! - `simulate_fixture`: parse a netlist and print its truth table
//! - `transform_netlist`: make a netlist testable and emit it
//! - `fault_campaign`: single-fault campaigns and negative controls
//! - `checker_tree`: the MFRG error checker
//! - `cost_tables`: cost formulas for the compared designs
//! - `benchmark_table`: counts over the bundled benchmark corpus
//!
//! ```
//! use revtest::{bench, real, testability};
//!
//! let c = real::parse_real(bench::fixture("3_17").unwrap().text()).unwrap();
//! let tc = testability::transform(&c).unwrap();
//! assert_eq!(tc.circuit().gate_count(), 3 * c.gate_count() - 1);
//! ```

pub mod bench;
pub mod circuit;
pub mod cli;
pub mod cost;
pub mod error;
pub mod faultsim;
pub mod gate;
pub mod real;
pub mod report;
pub mod simulator;
pub mod testability;

pub use circuit::{Circuit, GateInstance};
pub use cost::{quantum_cost, CostTable};
pub use error::{Error, RealError, Result};
pub use gate::{builtin_gate, Family, GateKind};
pub use simulator::{Assignment, ConstantMode, TruthTable};
pub use testability::{transform, FaultSite, TestableCircuit};
