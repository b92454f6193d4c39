use crate::error::{Error, Result};

/// Default ceiling on the number of basis elements any single construction
/// may enumerate.
pub const DEFAULT_MAX_CELLS: usize = 5_000_000;

/// Resource guard for word enumerations.
#[derive(Debug, Clone, Copy)]
pub struct CellBudget {
    pub max_cells: usize,
}

impl Default for CellBudget {
    fn default() -> Self {
        CellBudget {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

impl CellBudget {
    pub fn new(max_cells: usize) -> Self {
        CellBudget { max_cells }
    }

    pub fn check(&self, cells: usize) -> Result<()> {
        if cells > self.max_cells {
            Err(Error::CutoffTooLarge {
                limit: self.max_cells,
            })
        } else {
            Ok(())
        }
    }
}
