use crate::error::Result;
use crate::polytope::{simplex_weights, Polytope, SimplexWeights};
use crate::rational::Rational;
use crate::sectors::{enumerate_sectors, wps_labels, SectorTable};

/// A validated polytope together with its enumerated sectors. When the
/// polytope is a reduced simplex, its weights and the label of each sector
/// are recorded as well.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub polytope: Polytope,
    pub sectors: SectorTable,
    pub weights: Option<SimplexWeights>,
    /// Label of each sector (table order) for weighted projective spaces.
    pub labels: Option<Vec<Rational>>,
}

impl Analysis {
    pub fn new(polytope: Polytope) -> Result<Self> {
        let sectors = enumerate_sectors(&polytope)?;
        let weights = if polytope.is_simplex() {
            Some(simplex_weights(&polytope)?).filter(SimplexWeights::is_reduced)
        } else {
            None
        };
        let labels = match weights {
            Some(_) => Some(wps_labels(&polytope, &sectors)?),
            None => None,
        };
        Ok(Analysis { polytope, sectors, weights, labels })
    }

    pub fn from_weights(w: &SimplexWeights) -> Result<Self> {
        Analysis::new(Polytope::from_weights(w)?)
    }

    pub fn n(&self) -> usize {
        self.polytope.dimension()
    }
}
