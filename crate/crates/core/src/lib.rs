//! Coordination control synthesis for modular discrete-event systems.
//!
//! Plants and specifications are deterministic generators over a shared
//! [`fsm::EventTable`]. On top of the usual automaton operations the crate
//! provides monolithic supervisory control ([`supervisory`]), observer and
//! local-control-consistency checks ([`observer`]), coordinator construction
//! and synthesis for systems made of several subsystems ([`coordination`]),
//! the coordinator for nonblockingness ([`nonblocking`]), and a brute-force
//! reference implementation over bounded word sets ([`oracle`]) used to
//! cross-validate everything above.

pub mod coordination;
pub mod corpus;
pub mod fsm;
pub mod nonblocking;
pub mod observer;
pub mod oracle;
pub mod supervisory;
mod verdict;

pub use verdict::{Verdict, Witness};
