use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("search budget exceeded ({what}, budget {budget})")]
    BudgetExceeded { what: &'static str, budget: u64 },
    #[error("u_! implemented for injective u only")]
    NotInjective,
    #[error("not a full and faithful inclusion: {0}")]
    NotFullInclusion(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("composition not well-defined at bound {bound}: {detail}")]
    IllDefined { bound: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Counts search steps against a fixed allowance.
#[derive(Debug, Clone)]
pub struct Budget {
    what: &'static str,
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(what: &'static str, limit: u64) -> Self {
        Budget {
            what,
            limit,
            used: 0,
        }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded {
                what: self.what,
                budget: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Default step allowance for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 5_000_000;
