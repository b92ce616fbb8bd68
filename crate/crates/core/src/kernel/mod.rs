//! Permutation-group engine: permutations, stabilizer chains, orders,
//! membership, normal closures, intersections and coset actions.

mod cayley;
mod chain;
mod group;
mod perm;

pub use cayley::{evaluate_word, CayleyGraph};
pub use chain::StabChain;
pub use group::{direct_product, generator_matching_isomorphic, CosetAction, Embedding, FiniteGroup};
pub use perm::Permutation;
