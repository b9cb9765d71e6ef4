//! Holds the `acceptance` integration test, which exercises `maass-core`
//! end to end against known coefficients and identities.
//!
//! Kept as its own package so that it runs after the unit and property
//! tests of the other crates.
