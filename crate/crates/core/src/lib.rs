pub mod cli;
pub mod error;
pub mod exact;
pub mod groups;
pub mod lowerbounds;
pub mod polymethod;
pub mod protocols;
pub mod qcore;
pub mod reconstruct;
pub mod rng;
