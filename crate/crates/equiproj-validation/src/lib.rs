//! Acceptance checks for `equiproj` live in `tests/acceptance.rs`; this crate has no API.
