//! Exact computation in simply-laced Chevalley groups over fields of
//! characteristic 2.
//!
//! The toolkit is organized in layers:
//!
//! * [`coeffring`] — coefficient arithmetic: the finite fields GF(2^m) and
//!   multivariate polynomials over GF(2), including square-root
//!   linearization of perfect squares.
//! * [`rootsys`] — simply-laced root systems generated from a Cartan matrix,
//!   with support for an externally supplied labeling of the positive roots.
//! * [`weyl`] — Weyl-group words, their action on signed root labels, orbit
//!   partitions, and bounded group closure.
//! * [`chevalley`] — unipotent elements of a parabolic radical in normal
//!   form, commutator collection, and mixed (Weyl x unipotent) elements.
//! * [`centralizer`] — symbolic centralizer conditions, a GF(2) constraint
//!   solver, infinitesimal centralizers, and separability reports.
//! * [`crgit`] — cocharacters, parabolic decompositions, the limit
//!   homomorphism attached to a cocharacter, and conjugacy decision
//!   procedures for tuples in a unipotent radical.
//! * [`modrep`] — matrix representations over GF(2^m): spinning, submodule
//!   decomposition, and complete-reducibility tests.
//! * [`e7`] — the bundled E7 configuration: labeled root table, the two
//!   standard Weyl words, the defining cocharacter, and curve presets.
//! * [`verify`] — the end-to-end certification pipeline producing a
//!   deterministic machine-readable report.
//!
//! All group-theoretic computation is exact; no floating point is involved
//! anywhere. Characteristic 2 is hard-coded: root elements are involutions,
//! signs vanish, and commutator structure constants are all 1.

pub mod centralizer;
pub mod chevalley;
pub mod coeffring;
pub mod crgit;
pub mod e7;
pub mod modrep;
pub mod rootsys;
pub mod verify;
pub mod weyl;
