//! Exact-arithmetic library for deciding which sets of event orderings can
//! be seen by inertial observers in Minkowski space.
//!
//! Observers moving at different velocities rank a common set of spacelike
//! separated events by the relativized time `t - v.w`, so a set of
//! permutations is *realizable* when events and sub-light velocities exist
//! that produce exactly those rankings. This crate provides:
//!
//! - [`perm`]: permutations, permutation sets, inversion sets, translation
//!   equivalence, time reversal, and the 1-D chain condition;
//! - [`counting`]: closed-form counts (centralizer orders, time-reversal
//!   invariant sets, equivalence classes, the binomial/power Diophantine
//!   scan);
//! - [`spacetime`]: the exact rational Minkowski kernel with witness
//!   verification and the explicit pair/simplex/axis constructions;
//! - [`signs`]: the sign-pattern elimination test that proves sets of six
//!   events unrealizable for five observers;
//! - [`realizer`]: the constructive schedule/gap-system pipeline that
//!   realizes sets of five orderings with exact feasibility decisions;
//! - [`poly`] and [`certificate`]: the sparse polynomial engine and the
//!   symbolic certificate that the cyclic set of five orderings is
//!   unrealizable;
//! - [`search`]: the enumeration harnesses over `S_5` and `S_6` with
//!   deterministic sharding.
//!
//! Floating point is banned from every decision path; all comparisons are
//! exact rational comparisons.

pub mod certificate;
pub mod counting;
pub mod perm;
pub mod poly;
pub mod rational;
pub mod realizer;
pub mod search;
pub mod signs;
pub mod spacetime;

pub use perm::{PairIndex, PermError, PermSet, Permutation};
pub use rational::Rat;
