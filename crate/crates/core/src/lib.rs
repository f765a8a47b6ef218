pub mod analysis;
pub mod cli;
pub mod error;
pub mod expr;
pub mod oracle;
pub mod sums;
