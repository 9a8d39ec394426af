//! Hat-flavor Heegaard Floer homology of integral surgeries on two-component
//! L-space links, computed from Alexander polynomials and the framing matrix.

pub mod alexander;
pub mod classify;
pub mod corpus;
pub mod descriptor;
pub mod error;
pub mod f2;
pub mod halfint;
pub mod hinv;
pub mod lattice;
pub mod laurent;
pub mod surgery;

pub use alexander::{obstruction_report, LinkData, ObstructionReport};
pub use classify::{propagate, region_scan, torus_oracle, CertificateSet, RegionVerdict, Verdict};
pub use descriptor::{parse_link, parse_link_file, serialize_link, LinkDescriptor};
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use hinv::{Axis, NTable, NuProfile};
pub use lattice::{Framing, SpinC};
pub use laurent::{LaurentPoly1, LaurentPoly2, StableSeries};
pub use surgery::{HFResult, Surgeon, TruncationCase, TruncationOptions};
