//! Sharpness families.
