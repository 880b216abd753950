//! Symbolic dynamics of the first-return map: interval sequences, horseshoe
//! certification, multipulse connections, switching and escape.

pub mod crossing;
pub mod escape;
pub mod horseshoe;
pub mod intervals;
pub mod itinerary;
pub mod multipulse;
