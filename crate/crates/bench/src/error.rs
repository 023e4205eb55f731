use thiserror::Error;

use crate::report::RunReport;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Gtsp(#[from] gtsp_core::GtspError),
    #[error(transparent)]
    Map(#[from] map_core::MapError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("oracle refused: {work} units of work exceed the limit {limit}")]
    TooLarge { work: u128, limit: u128 },
    #[error("no feasible solution found")]
    Infeasible(Box<Option<RunReport>>),
}

pub type Result<T> = std::result::Result<T, BenchError>;
