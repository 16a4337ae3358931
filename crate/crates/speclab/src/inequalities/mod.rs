//! Deficit engine.
