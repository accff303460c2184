//! Holds the `acceptance` test target; run it with
//! `cargo test -p torus-tqft-verify --test acceptance`.
