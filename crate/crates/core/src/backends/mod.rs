//! Word-problem oracles.
//!
//! Every backend answers for one group given on a fixed alphabet. The ball
//! builder and the verification pipeline only see the [`WordOracle`] trait.

mod bs;
mod finite;
mod free;
mod free_product;

use thiserror::Error;

use crate::words::{Alphabet, Word, WordError};

pub use bs::{bs_oracle, BsOracle, BsTriple};
pub use finite::{dihedral_group, dihedral_group_with, FiniteGroupTable};
pub use free::{free_abelian_oracle, free_oracle, FreeAbelianOracle, FreeOracle};
pub use free_product::FreeProductOracle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("dihedral order must be even and at least 2, got {0}")]
    BadOrder(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("permutation for `{0}` is not a bijection of the expected size")]
    BadPermutation(String),
    #[error("generator `{0}` is declared involutive but its image has order > 2")]
    NotInvolution(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A solution of the word problem for one group on one alphabet.
pub trait WordOracle: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    /// Canonical representative; equal group elements get identical words.
    fn normal_form(&self, w: &Word) -> Word;

    fn is_identity(&self, w: &Word) -> bool {
        self.normal_form(w).is_empty()
    }

    fn equal(&self, u: &Word, v: &Word) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// Short label of the group this oracle answers for.
    fn describe(&self) -> String;
}

impl<T: WordOracle + ?Sized> WordOracle for Box<T> {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn normal_form(&self, w: &Word) -> Word {
        (**self).normal_form(w)
    }
    fn is_identity(&self, w: &Word) -> bool {
        (**self).is_identity(w)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}
