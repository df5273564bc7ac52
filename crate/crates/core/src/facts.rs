//! Named external results that verdicts and bounds rely on.

use core::fmt;

/// Standard results a bound depends on, cited rather than computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExternalFact {
    NonessentialSummandInvariance,
    NonessentialZeroEntropy,
    SurfaceEntropy,
    BabenkoProductBound,
    BcgLowerBound,
    BucherKarlssonVolume,
    GromovConnectedSumAdditivity,
    HitchinThorpe,
    GromovHitchinThorpeSimplicial,
    EntropyHitchinThorpe,
    StableCohomotopyObstruction,
    FreedmanClassification,
    InfiniteDiffeotypes,
}

impl ExternalFact {
    pub fn name(&self) -> &'static str {
        match self {
            ExternalFact::NonessentialSummandInvariance => "nonessential_summand_invariance",
            ExternalFact::NonessentialZeroEntropy => "nonessential_zero_entropy",
            ExternalFact::SurfaceEntropy => "surface_entropy_4pi_genus",
            ExternalFact::BabenkoProductBound => "babenko_product_bound",
            ExternalFact::BcgLowerBound => "bcg_simplicial_volume_lower_bound",
            ExternalFact::BucherKarlssonVolume => "bucher_karlsson_surface_product_volume",
            ExternalFact::GromovConnectedSumAdditivity => "gromov_connected_sum_additivity",
            ExternalFact::HitchinThorpe => "hitchin_thorpe_inequality",
            ExternalFact::GromovHitchinThorpeSimplicial => "gromov_hitchin_thorpe_simplicial_volume",
            ExternalFact::EntropyHitchinThorpe => "kotschick_entropy_hitchin_thorpe",
            ExternalFact::StableCohomotopyObstruction => "stable_cohomotopy_einstein_obstruction",
            ExternalFact::FreedmanClassification => "freedman_classification",
            ExternalFact::InfiniteDiffeotypes => "bandwidth_argument_infinite_diffeotypes",
        }
    }
}

impl fmt::Display for ExternalFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
