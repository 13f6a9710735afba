//! Induction along an arbitrary homomorphism, factored as an epimorphism
//! followed by a monomorphism.

use crate::error::Result;
use crate::group::{quotient, Quotient};
use crate::hom::GroupHom;
use crate::nil2::Nil2Module;
use crate::quadratic::QuadraticModule;

use super::epi::{descend_hom, induce_nil2_epi, induce_quad_epi, InducedNil2Epi, InducedQuadEpi};
use super::mono::{induce_nil2_mono, induce_quad_mono, MonoInduced, MonoQuadLayer, SampleReport};

/// The nil(2) analogue of [`GeneralInduced`].
#[derive(Clone, Debug)]
pub struct GeneralNil2Induced {
    pub image: Quotient,
    pub epi: InducedNil2Epi,
    pub iota: GroupHom,
    pub mono: MonoInduced,
    pub report: SampleReport,
}

pub fn induce_nil2_general(n: &Nil2Module, phi: &GroupHom, samples: usize, seed: u64) -> Result<GeneralNil2Induced> {
    let image = quotient(phi.source(), &phi.kernel())?;
    let epi = induce_nil2_epi(n, &image.projection)?;
    let iota = descend_hom(phi, &image, "phi on P/ker phi")?;
    let mono = induce_nil2_mono(&epi.result, &iota)?;
    let report = mono.check_samples(samples, seed);
    Ok(GeneralNil2Induced {
        image,
        epi,
        iota,
        mono,
        report,
    })
}

/// `φ = ι∘π`: the computed epi stage along `π: P ↠ P/ker φ` and the
/// word-level mono layer along `ι: P/ker φ ↪ Q`.
#[derive(Clone, Debug)]
pub struct GeneralInduced {
    pub image: Quotient,
    pub epi: InducedQuadEpi,
    pub iota: GroupHom,
    pub mono: MonoQuadLayer,
    pub report: SampleReport,
}

pub fn induce_quad_general(
    qm: &QuadraticModule,
    phi: &GroupHom,
    samples: usize,
    seed: u64,
) -> Result<GeneralInduced> {
    let image = quotient(phi.source(), &phi.kernel())?;
    let epi = induce_quad_epi(qm, &image.projection)?;
    let iota = descend_hom(phi, &image, "phi on P/ker phi")?;
    let mono = induce_quad_mono(&epi.result, &iota)?;
    let report = mono.check_samples(samples, seed);
    Ok(GeneralInduced {
        image,
        epi,
        iota,
        mono,
        report,
    })
}
