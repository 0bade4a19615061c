//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod embedding;
pub mod geometry;
pub mod graphs;
