//! Exact computational algebra for finite Galois CM-extension data:
//! permutation groups and their characters, group rings over cyclotomic
//! fields and truncated p-adic coefficient rings, reduced norms and
//! generalised adjoints, non-commutative Fitting invariants, equivariant
//! Artin L-values at s = 0, Stickelberger elements, and executable
//! annihilation checks for the (non-abelian) Brumer and Brumer–Stark
//! conjectures together with the group-theoretic applicability
//! classifiers (Frobenius structure, hybrid p-adic group rings,
//! monomiality).
//!
//! All arithmetic is exact: rationals, cyclotomic numbers in the
//! power basis of a fixed root of unity, or residue rings Z/p^k.
//! No floating point is used anywhere.

pub mod chartab;
pub mod conjecture;
pub mod cyclotomic;
pub mod dirichlet;
pub mod extension;
pub mod fitting;
pub mod gmodule;
pub mod group;
pub mod lvalues;
pub mod perm;
pub mod ring;
pub mod zmodp;

pub use cyclotomic::{Cyclotomic, Rat};
pub use group::FiniteGroup;
