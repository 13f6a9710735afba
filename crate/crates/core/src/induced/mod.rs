//! Induced nil(2)-modules and quadratic modules along `φ: P → Q`.

pub mod cokernel;
pub mod epi;
pub mod general;
pub mod mono;
pub mod presentation;
pub mod pushout;

pub use cokernel::{adjunction_count, cokernel, AdjunctionCount, Cokernel};
pub use epi::{
    epi_oracle_check, induce_nil2_epi, induce_quad_epi, induce_quad_epi_with, induced_universal_check, InducedFactorization,
    InducedNil2Epi, InducedQuadEpi, OracleComparison, TopKernel,
};
pub use general::{induce_nil2_general, induce_quad_general, GeneralInduced, GeneralNil2Induced};
pub use mono::{
    induce_nil2_mono, induce_quad_mono, FreeProduct, FreeProductWord, MonoInduced, MonoQuadLayer,
    SampleReport, Transversal,
};
pub use presentation::{
    enumerate_presentation_quotient, induced_presentation, induced_presentation_top, InducedPresentation,
    Realization, RealizedPresentation, Relator, RelatorFamily,
};
pub use pushout::{bounded_membership, pushout_relators, relator_membership, MembershipReport, Reading};
