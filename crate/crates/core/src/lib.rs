//! Auslander-Reiten theory for perfect complexes over finite-dimensional
//! split basic algebras, computed exactly over prime fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`] and [`poly`]: dense matrices over F_p, row reduction,
//!   characteristic polynomials and root finding.
//! * [`algebra`]: validated structure-constant presentations of split basic
//!   algebras, with socles, Cartan data, Nakayama permutations and
//!   symmetrizing forms.
//! * [`module`]: finite-dimensional representations, hom spaces, projective
//!   covers, syzygies, the Nakayama functor and exact direct-sum
//!   decomposition.
//! * [`complex`]: perfect complexes as block matrices of algebra elements,
//!   homology, minimization, mapping cones and decomposition up to homotopy.
//! * [`ar`]: Auslander-Reiten triangles and sequences, quiver components of
//!   the homotopy category, rim tests and stabilization.
//! * [`laurent`] and [`forms`]: Laurent-polynomial valued Euler pairings on
//!   the homotopy category and the hat-element characterizations.
//! * [`io`]: file formats for algebras, modules and complexes.
//! * [`verify`]: end-to-end consistency checks shared by the test suite and
//!   the command-line interface.

pub mod algebra;
pub mod ar;
pub mod complex;
pub mod fixtures;
pub mod forms;
pub mod laurent;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod verify;
