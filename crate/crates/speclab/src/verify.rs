//! Built-in verification suites.
