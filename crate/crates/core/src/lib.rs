pub mod arithmetic;
pub mod catalog;
pub mod cayley;
pub mod cli;
pub mod constructions;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod group;
pub mod iso;
pub mod perm;
pub mod presentation;
pub mod search;
pub mod spectra;
pub mod todd_coxeter;
pub mod verify;
