use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::index::{Grade, MultiIndex, NVec};
use crate::postlie::LGenerator;

/// Which post-Lie algebra the generators live in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Space {
    /// The graded subalgebra: γ ∈ ℳ⁻ and |γ| > |n|.
    L,
    /// All of `𝒜 ⊗ span{∂_i, D^(n)}`.
    L0,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::L => "L",
            Space::L0 => "L0",
        })
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Space> {
        match s {
            "L" => Ok(Space::L),
            "L0" | "L₀" => Ok(Space::L0),
            other => Err(Error::Config(format!("unknown space {other:?} (expected L or L0)"))),
        }
    }
}

/// Dimension, α and space shared by every operation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Config {
    pub dim: usize,
    pub alpha: Grade,
    pub space: Space,
}

impl Default for Config {
    fn default() -> Self {
        Config { dim: 1, alpha: Grade::new(2, 5), space: Space::L }
    }
}

impl Config {
    pub fn new(dim: usize, alpha: Grade, space: Space) -> Result<Config> {
        if dim == 0 {
            return Err(Error::Config("dimension must be positive".into()));
        }
        if alpha <= Grade::from_integer(0) || alpha >= Grade::from_integer(1) {
            return Err(Error::Config(format!("alpha = {alpha} must lie strictly between 0 and 1")));
        }
        Ok(Config { dim, alpha, space })
    }

    pub fn homogeneity(&self, g: &MultiIndex) -> Grade {
        g.homogeneity(self.alpha)
    }

    pub fn check_vec(&self, n: &NVec) -> Result<()> {
        if n.dim() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: n.dim() });
        }
        Ok(())
    }

    pub fn check_multi_index(&self, g: &MultiIndex) -> Result<()> {
        match g.check_dim(self.dim) {
            Some(found) => Err(Error::Dimension { expected: self.dim, found }),
            None => Ok(()),
        }
    }

    /// Membership of a generator in the configured space.
    pub fn in_space(&self, g: &LGenerator) -> bool {
        crate::postlie::in_space(g, self.space, self.alpha)
    }

    /// Dimension and space validation of a generator.
    pub fn validate(&self, g: &LGenerator) -> Result<()> {
        match g {
            LGenerator::P(i) => {
                if *i == 0 || *i > self.dim {
                    return Err(Error::Config(format!(
                        "P({i}) is out of range for dimension {}",
                        self.dim
                    )));
                }
            }
            LGenerator::D(x) => {
                self.check_vec(&x.n)?;
                self.check_multi_index(&x.gamma)?;
            }
        }
        if !self.in_space(g) {
            return Err(Error::InvalidGenerator {
                generator: g.to_string(),
                space: self.space.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_l(&self, what: &str) -> Result<()> {
        if self.space != Space::L {
            return Err(Error::Config(format!("{what} requires space L (finiteness fails in L0)")));
        }
        Ok(())
    }
}
