//! The shipped relation lists and the semigroups they present.

pub const J197: &str = include_str!("../../../data/J197.rel");
pub const J199: &str = include_str!("../../../data/J199.rel");
pub const I: &str = include_str!("../../../data/I.rel");
pub const ETA: &str = include_str!("../../../data/eta.lie");

/// The non-symmetric semigroup being symmetrized.
pub const BASE_GENERATORS: [u64; 7] = [18, 24, 25, 26, 28, 30, 33];
pub const S197: [u64; 12] = [36, 48, 50, 52, 56, 60, 66, 67, 107, 121, 129, 135];
pub const S199: [u64; 12] = [36, 48, 50, 52, 56, 60, 66, 69, 109, 123, 131, 137];

/// Weights on `b..l` after `a = 0`: the seven linear forms in degree one,
/// `i, j, k, l` in degree two.
pub const I_WEIGHTS: [u64; 11] = [1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2];
pub const I_VARIABLES: [char; 11] = ['b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l'];
