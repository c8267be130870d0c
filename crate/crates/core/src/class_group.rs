//! Local class groups of rational double points, computed as the
//! discriminant group of the root lattice of the resolution graph.

use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::{DiscriminantGroup, Isometry};
use crate::roots::{covering_involution_action, AdeType, DiagramAutomorphism, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClassGroup {
    pub singularity: AdeType,
    pub group: DiscriminantGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeckActionReport {
    pub singularity: AdeType,
    pub diagram_action: DiagramAutomorphism,
    /// The permutation isometry of `diagram_action` negates `E^∨/E`.
    pub acts_as_minus_one: bool,
    /// `-id ∈ W(E)`.
    pub minus_id_in_weyl: bool,
}

pub fn local_class_group(t: AdeType) -> Result<LocalClassGroup> {
    Ok(LocalClassGroup { singularity: t, group: t.lattice().discriminant_group()? })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `p · Cl = 0`.
pub fn is_p_torsion(t: AdeType, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(LatticeError::NotPrime(p));
    }
    let g = local_class_group(t)?.group;
    Ok(g.invariant_factors.iter().all(|&d| p.is_multiple_of(d as u64)))
}

pub fn deck_action_report(t: AdeType) -> Result<DeckActionReport> {
    let rd = RootDatum::new(t)?;
    let diagram_action = covering_involution_action(t)?;
    let acts_as_minus_one = rd.lattice.discriminant_action(&diagram_action.to_isometry())?.is_negation();
    let minus_id_in_weyl = rd.is_minus_weyl(&Isometry::identity(t.rank()))?;
    Ok(DeckActionReport { singularity: t, diagram_action, acts_as_minus_one, minus_id_in_weyl })
}
