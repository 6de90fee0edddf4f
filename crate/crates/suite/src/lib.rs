//! Holds the workspace acceptance suite in `tests/acceptance.rs`. Run it with
//! `cargo test -p halfgap-suite --test acceptance -- --nocapture`.
