//! Table that checks the constructions against the closed form, one row per n.

use thiserror::Error;

use crate::arrangement::{
    build_arrangement, region_count_euler, region_count_traversal, splitter_analysis,
    ArrangementError, Classification,
};
use crate::embedding::{construct, EmbeddingError};
use crate::formulas::{f_max, InvalidN, Parity, ParityCase};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    InvalidN(#[from] InvalidN),
    #[error("empty range {0}..={1}")]
    EmptyRange(u64, u64),
    #[error("n={n}: {source}")]
    Construction { n: u64, source: EmbeddingError },
    #[error("n={n}: {source}")]
    Arrangement { n: u64, source: ArrangementError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub n: u64,
    pub parity: Parity,
    pub f_formula: u64,
    pub regions_euler: u64,
    pub regions_traversal: u64,
    pub splitters: usize,
    pub one_off_splitters: usize,
    pub matches: bool,
}

impl VerifyRow {
    pub const TSV_HEADER: &'static str =
        "n\tparity\tf_formula\tregions_euler\tregions_traversal\tsplitters\tone_off_splitters\tmatch";

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.parity,
            self.f_formula,
            self.regions_euler,
            self.regions_traversal,
            self.splitters,
            self.one_off_splitters,
            self.matches
        )
    }

    pub fn to_human(&self) -> String {
        format!(
            "n={:<3} {:<4} f={:<5} euler={:<5} traversal={:<5} splitters={:<3} one-off={:<3} {}",
            self.n,
            self.parity,
            self.f_formula,
            self.regions_euler,
            self.regions_traversal,
            self.splitters,
            self.one_off_splitters,
            if self.matches { "ok" } else { "MISMATCH" }
        )
    }
}

/// Constructs the optimal embedding for `n` and checks both region counts
/// and the splitter profile: `n` splitters for odd `n`, two splitters and
/// `n - 2` one-off splitters for even `n`.
pub fn verify_one(n: u64, seed: u64) -> Result<VerifyRow, VerifyError> {
    let case = ParityCase::new(n)?;
    let f_formula = f_max(n)?;
    let emb = construct(n as usize, seed).map_err(|source| VerifyError::Construction { n, source })?;
    let wrap = |source| VerifyError::Arrangement { n, source };
    let regions_euler = region_count_euler(&build_arrangement(&emb).map_err(wrap)?);
    let regions_traversal = region_count_traversal(&emb).map_err(wrap)?;
    let report = splitter_analysis(&emb).map_err(wrap)?;
    let splitters = report.count(Classification::Splitter);
    let one_off_splitters = report.count(Classification::OneOffSplitter);
    let expected_profile = match case.parity() {
        Parity::Odd => (n as usize, 0),
        Parity::Even => (2, n as usize - 2),
    };
    let matches = regions_euler == f_formula
        && regions_traversal == f_formula
        && (splitters, one_off_splitters) == expected_profile;
    Ok(VerifyRow {
        n,
        parity: case.parity(),
        f_formula,
        regions_euler,
        regions_traversal,
        splitters,
        one_off_splitters,
        matches,
    })
}

pub fn verify_range(n_min: u64, n_max: u64, seed: u64) -> Result<Vec<VerifyRow>, VerifyError> {
    ParityCase::new(n_min)?;
    if n_min > n_max {
        return Err(VerifyError::EmptyRange(n_min, n_max));
    }
    (n_min..=n_max).map(|n| verify_one(n, seed)).collect()
}
