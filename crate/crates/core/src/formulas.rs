//! Closed forms for the maximal region count and the vertex/edge tallies of
//! the optimal arrangements. Integer arithmetic throughout; the halves cancel.

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("cycle length must be at least 3, got {0}")]
pub struct InvalidN(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// A cycle length together with its parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParityCase {
    n: u64,
    parity: Parity,
}

impl ParityCase {
    pub fn new(n: u64) -> Result<Self, InvalidN> {
        if n < 3 {
            return Err(InvalidN(n));
        }
        let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        Ok(ParityCase { n, parity })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// Maximal number of bounded regions of a straight-line N-cycle.
///
/// Even N: N²/2 − 2N + 2. Odd N: N²/2 − 3N/2 + 1.
pub fn f_max(n: u64) -> Result<u64, InvalidN> {
    let case = ParityCase::new(n)?;
    Ok(match case.parity {
        Parity::Even => n * n / 2 - 2 * n + 2,
        Parity::Odd => (n * n - 3 * n) / 2 + 1,
    })
}

/// Arrangement vertex count (corners plus crossings) of the optimal construction.
pub fn predicted_vertices(n: u64) -> Result<u64, InvalidN> {
    let case = ParityCase::new(n)?;
    Ok(match case.parity {
        Parity::Odd => n * (n - 1) / 2,
        Parity::Even => ((n - 2) * (n - 2) + 2 * (n - 1)) / 2,
    })
}

/// Arrangement edge count of the optimal construction.
pub fn predicted_edges(n: u64) -> Result<u64, InvalidN> {
    let case = ParityCase::new(n)?;
    Ok(match case.parity {
        Parity::Odd => n * (n - 2),
        Parity::Even => (n - 2) * (n - 3) + 2 * (n - 2),
    })
}
