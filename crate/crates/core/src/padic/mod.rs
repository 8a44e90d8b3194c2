//! p-adic integers and quadratic extensions of Q_p.

mod int;
mod quad;

pub use int::{contains_pth_roots_of_unity, hensel_lift_root, pth_power_index_qp, PadicInt};
pub use quad::{
    make_quadratic_extension, quad_embed_cubic_root, quad_unit_power_index, splitting_quadratic_field,
    LocalQuadElement, LocalQuadField, QuadKind, Uniformizer,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("element is not a unit")]
    NotUnit,
    #[error("value is not a root modulo p")]
    NotRoot,
    #[error("root is not simple modulo p")]
    NotSimpleRoot,
    #[error("precision too low: need {needed}, have {available}")]
    PrecisionTooLow { needed: u32, available: u32 },
    #[error("element is not divisible by p^{k}")]
    NotDivisible { k: u32 },
    #[error("d is a square in Q_p")]
    SquareDiscriminant,
    #[error("v_p(d) = {valuation}; expected 0 or 1")]
    BadValuation { valuation: u32 },
    #[error("roots of the cubic do not lie in the given extension")]
    WrongField,
    #[error("cubic has no irreducible quadratic factor over Q_p")]
    NoQuadraticFactor,
}
