//! Orbits of the orthogonal group `O(V)` over truncated power series on `M_- ⊗ V`.

pub mod brute;
pub mod census;
pub mod invariant;
pub mod isometry;
pub mod setting;
pub mod tangent;
pub mod witt;

pub use brute::{brute_force_orbits, orthogonal_group, orthogonal_group_residue, BruteOrbits};
pub use census::{census, Census, CensusRow};
pub use invariant::{normal_form, normal_form_in, orbit_invariant, same_orbit, sym_dim, t_sym, NormalForm, OrbitInvariant};
pub use isometry::{extend_isometry, random_orthogonal, reflection, transport, witt_extend_residue};
pub use setting::{OrbitSetting, OrthSpace, PolyVec};
pub use tangent::{is_submersive, submersion, tangent_map, Submersion, TangentMap};
pub use witt::{grams_agree, is_primitive_tuple, witt_lift};
