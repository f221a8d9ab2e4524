//! Acceptance checks over the shipped configurations; see `tests/acceptance.rs`.
