//! Presentations with fiber functors: axiom checks, connected decomposition,
//! and fundamental groupoid reconstruction.
