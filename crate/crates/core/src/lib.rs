pub mod atlas;
pub mod autgroup;
pub mod bsgs;
pub mod classes;
pub mod dessins;
pub mod error;
pub mod field;
pub mod gbar;
pub mod pairs;
pub mod perm;
pub mod report;
pub mod repro;
pub mod sg;
pub mod structure;
pub mod table;
