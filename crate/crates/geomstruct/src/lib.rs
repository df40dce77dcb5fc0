//! Structure predicates and constructive conversions on a chart: contact and
//! symplectic certification, Reeb and Hamiltonian fields, Poisson and Jacobi
//! pairs, the nondegenerate-Jacobi dichotomy, and pointwise 1-jet operators.

mod classify;
mod contact;
mod error;
mod jacobi;
mod jet;
pub mod linalg;

pub use classify::{classify_2form, is_contact, nondegeneracy_report, Classification, NondegReport};
pub use contact::{
    contact_gradient_frame, contact_hamiltonian, musical_phi, phi_inverse, reeb_field, ContactData,
    SymplecticFrameReport,
};
pub use error::Error;
pub use jacobi::{
    hamiltonian_relations_check, jacobi_bracket, jacobi_check, jacobi_from_contact,
    poisson_from_symplectic, structure_from_nondeg_jacobi, JacobiCheck, JacobiPair,
    JacobiStructure, LcsPair,
};
pub use jet::{jet_d_bar, jet_d_theta, jet_lift, JetPoint};
