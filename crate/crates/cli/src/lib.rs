//! Configuration, verification battery and display helpers behind the
//! `gencluster` binary.

pub mod config;
pub mod dilog;
pub mod mutate;
pub mod verify;
