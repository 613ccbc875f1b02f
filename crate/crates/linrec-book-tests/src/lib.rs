//! Doc-test shim for the guide in `book/`.
//!
//! mdBook renders the chapters but cannot execute them. Including each
//! chapter as module documentation makes `cargo test --doc` compile and
//! run every ```rust code fence, so the book and the library cannot
//! drift apart. A failing snippet reports the module name, which is the
//! chapter file it came from.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}

#[doc = include_str!("../../../book/src/periods.md")]
pub mod periods {}

#[doc = include_str!("../../../book/src/padic-convergence.md")]
pub mod padic_convergence {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
