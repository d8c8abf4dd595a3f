//! Exact computation in interpolation categories of the symmetric group.

pub mod cli;
pub mod daha;
pub mod delcat;
pub mod exactalg;
pub mod oracle;
pub mod recollement;
pub mod wreath;
