pub mod arith;
pub mod semifield;
pub mod seed;
pub mod tropical;
pub mod fpoly;
pub mod wedge;
pub mod dilog;
pub mod quantum;
pub mod fixtures;
