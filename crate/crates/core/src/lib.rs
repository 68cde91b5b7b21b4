pub mod functors;
pub mod group;
pub mod homsearch;
pub mod mposet;
pub mod msimp;
pub mod realization;
pub mod oracle;
pub mod fixtures;
pub mod lemmas;
pub mod cli;
