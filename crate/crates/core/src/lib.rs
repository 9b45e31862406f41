pub mod analyzer;
pub mod cli;
pub mod corpus;
pub mod event;
pub mod lcs;
pub mod lexicon;
