//! Library side of the `secant` command: envelopes, manifests, batch runs
//! and the verification suites.

pub mod batch;
pub mod compute;
pub mod envelope;
pub mod manifest;
pub mod verify;

pub use compute::{compute, compute_fresh};
pub use envelope::{Computation, EllRange, Frac, Payload, ResultEnvelope, TOOL_VERSION};
