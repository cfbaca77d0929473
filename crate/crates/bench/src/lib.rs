//! Shared fixtures for the kernel benchmarks in `benches/`.

use beatty_zeta::{ContinuationConfig, IrrationalNumber, MellinEngine, PhiContext, RValue, Result};

/// `PhiContext` for the golden ratio with twist `r` and shift `1/2`.
pub fn golden_ctx(r: RValue) -> Result<PhiContext> {
    PhiContext::new(IrrationalNumber::golden(), r, 0.5)
}

/// Continuation engine for the golden ratio with default settings.
pub fn golden_engine(r: RValue) -> Result<MellinEngine> {
    MellinEngine::new(golden_ctx(r)?, ContinuationConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert!(golden_engine(RValue::Lattice { k: 1, l: 0 }).is_ok());
        assert!(golden_ctx(RValue::Real(0.0)).is_ok());
    }
}
