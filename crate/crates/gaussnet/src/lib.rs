//! Text formats, JSON and the `gaussnet` command line for
//! [`gaussnet_core`].

pub mod cli;
pub mod formats;
