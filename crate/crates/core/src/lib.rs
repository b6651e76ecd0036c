//! Set Splitting as penalty QUBOs.
//!
//! * [`instance`]: instances, assignments, file format and the planted-solution
//!   generator.
//! * [`qubo`]: compilation into an upper-triangular QUBO, energy evaluation and
//!   the QUBO interchange format.
//! * [`solvers`]: exhaustive search and Metropolis simulated annealing.
//! * [`analysis`]: split verification and the energy/split-count relationship.
//!
//! ```
//! use setsplit_core::instance::{Assignment, Instance};
//! use setsplit_core::qubo::build_qubo;
//! use setsplit_core::solvers::brute_force;
//!
//! let instance = Instance::new(5, vec![vec![0, 1], vec![1, 3], vec![0, 2, 4]]);
//! let qubo = build_qubo(&instance).unwrap();
//! let ground = brute_force(&qubo).unwrap();
//! let x: Assignment = "01101".parse().unwrap();
//! assert_eq!(ground.min_energy(), Some(-3.0));
//! assert!(ground.records().iter().any(|r| r.assignment == x));
//! assert_eq!(qubo.energy_with_offset(&x).unwrap(), 0.5);
//! ```

pub mod analysis;
pub mod error;
pub mod instance;
pub mod qubo;
pub mod solvers;

pub use error::{Error, Result};
