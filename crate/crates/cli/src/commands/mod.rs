pub mod dispersion;
pub mod ingest;
pub mod rabi;
pub mod steady;
pub mod transient;
pub mod vacuum;
