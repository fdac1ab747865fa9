//! Exact-arithmetic engine for the relative algebraic K-theory
//! `K_{2r+1}(THH(k), k) ≅ 𝕎_r(k)` at `k = F_p`.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//!
//! - [`linalg`]: integer matrices, Smith normal form, homology of integer
//!   chain complexes, kernels and cokernels of maps of finite abelian groups.
//! - [`witt`]: Witt vectors over truncation sets with ghost coordinates,
//!   integral structure polynomials, Frobenius, Verschiebung and restriction.
//! - [`simplicial`]: finite pointed simplicial sets, the sphere model
//!   `Δ²/∂Δ²`, smash products and normalized chains.
//! - [`bar`]: the weight-graded cyclic bar construction on the free monoid
//!   on the sphere, its edgewise subdivision with the `C_p`-action, and the
//!   homology of each weight piece `B(m)`.
//! - [`ss`]: Tate and homotopy fixed point spectral sequences per weight.
//! - [`tc`]: the `φ − can` kernel analysis and the big-Witt tables.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bar;
pub mod linalg;
pub mod simplicial;
pub mod ss;
pub mod tc;
pub mod witt;

pub use num_bigint::BigInt;
