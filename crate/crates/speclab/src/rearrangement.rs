//! Schwarz symmetrization.
