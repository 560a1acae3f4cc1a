pub mod formula;
pub mod structure;
pub mod equivalence;
pub mod signature;
pub mod parse;
pub mod classical;
pub mod intuitionistic;
pub mod search;
pub mod embedding;
pub mod sexpr;
pub mod render;
pub mod corpus;
