//! File formats, seeded corpus generators and the command-line front end
//! for `bruijn-core`.

pub mod cli;
pub mod corpus;
pub mod formats;
