//! Spectra of hypergraph signless Laplacians and an auditor for the
//! eigenvalue bounds built on them.

pub mod bounds;
pub mod cli;
pub mod eigen;
pub mod generate;
pub mod hypergraph;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod structure;
pub mod sweep;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hypergraphs.md")]
    mod hypergraphs {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/auditing.md")]
    mod auditing {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
