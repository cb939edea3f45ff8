pub mod cli;
pub mod cost;
pub mod degseq;
pub mod error;
pub mod euler;
pub mod instance;
pub mod memprobe;
pub mod multigraph;
pub mod opttree;
pub mod par;
pub mod solvers;
pub mod transport;
pub mod trees;
