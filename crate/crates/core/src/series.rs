//! Classical series labels and the matrix groups that realize them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LocusError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesTag {
    /// `SU(n)`, root system `A_{n-1}`.
    A,
    /// `Spin(2n+1)`, root system `B_n`.
    B,
    /// `USp(2n)`, root system `C_n`.
    C,
    /// `Spin(2n)`, root system `D_n`.
    D,
}

impl SeriesTag {
    pub const ALL: [SeriesTag; 4] = [SeriesTag::A, SeriesTag::B, SeriesTag::C, SeriesTag::D];

    pub fn min_n(self) -> u32 {
        match self {
            SeriesTag::D => 4,
            _ => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SeriesTag::A => "SU",
            SeriesTag::B => "Spin(odd)",
            SeriesTag::C => "USp",
            SeriesTag::D => "Spin(even)",
        }
    }
}

impl FromStr for SeriesTag {
    type Err = LocusError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "su" => Ok(SeriesTag::A),
            "b" | "spin-odd" | "so-odd" => Ok(SeriesTag::B),
            "c" | "usp" | "sp" => Ok(SeriesTag::C),
            "d" | "spin-even" | "so-even" => Ok(SeriesTag::D),
            other => Err(LocusError::Parse(format!("unknown series `{other}`"))),
        }
    }
}

/// A series together with the integer `n` of `SU(n)`, `Spin(2n+1)`,
/// `USp(2n)` or `Spin(2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Series {
    pub tag: SeriesTag,
    pub n: u32,
}

impl Series {
    pub fn new(tag: SeriesTag, n: u32) -> Result<Self> {
        if n < tag.min_n() {
            return Err(LocusError::RankTooSmall {
                group: tag.name(),
                n,
                min: tag.min_n(),
            });
        }
        Ok(Series { tag, n })
    }

    pub fn rank(&self) -> u32 {
        match self.tag {
            SeriesTag::A => self.n - 1,
            _ => self.n,
        }
    }

    pub fn dim(&self) -> u32 {
        let n = self.n;
        match self.tag {
            SeriesTag::A => n * n - 1,
            SeriesTag::B | SeriesTag::C => n * (2 * n + 1),
            SeriesTag::D => n * (2 * n - 1),
        }
    }

    /// Order of the center of the simply connected group.
    pub fn center_order(&self) -> u32 {
        match self.tag {
            SeriesTag::A => self.n,
            SeriesTag::B | SeriesTag::C => 2,
            SeriesTag::D => 4,
        }
    }

    pub fn group_name(&self) -> String {
        let n = self.n;
        match self.tag {
            SeriesTag::A => format!("SU({n})"),
            SeriesTag::B => format!("Spin({})", 2 * n + 1),
            SeriesTag::C => format!("USp({})", 2 * n),
            SeriesTag::D => format!("Spin({})", 2 * n),
        }
    }

    pub fn matrix_group(&self) -> MatrixGroup {
        let n = self.n as usize;
        match self.tag {
            SeriesTag::A => MatrixGroup::SpecialUnitary(n),
            SeriesTag::B => MatrixGroup::SpecialOrthogonal(2 * n + 1),
            SeriesTag::C => MatrixGroup::UnitarySymplectic(n),
            SeriesTag::D => MatrixGroup::SpecialOrthogonal(2 * n),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group_name())
    }
}

/// Defining matrix representation used for Lie algebra bases and sampling.
/// Unlike [`Series`] this admits the low-rank cases `so(3)`..`so(7)` and
/// `usp(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixGroup {
    SpecialUnitary(usize),
    SpecialOrthogonal(usize),
    /// `USp(2n)`; the payload is `n`.
    UnitarySymplectic(usize),
}

impl MatrixGroup {
    pub fn su(m: usize) -> Result<Self> {
        check_min("SU", m, 2)?;
        Ok(MatrixGroup::SpecialUnitary(m))
    }

    pub fn so(m: usize) -> Result<Self> {
        check_min("SO", m, 3)?;
        Ok(MatrixGroup::SpecialOrthogonal(m))
    }

    pub fn usp(n: usize) -> Result<Self> {
        check_min("USp", n, 1)?;
        Ok(MatrixGroup::UnitarySymplectic(n))
    }

    /// Parses `su`, `so` or `usp` with the size convention `su(n)`, `so(n)`,
    /// `usp(2n)`.
    pub fn parse(family: &str, n: usize) -> Result<Self> {
        match family.to_ascii_lowercase().as_str() {
            "su" | "a" => Self::su(n),
            "so" => Self::so(n),
            "usp" | "sp" | "c" => Self::usp(n),
            other => Err(LocusError::Parse(format!("unknown matrix group `{other}`"))),
        }
    }

    pub fn matrix_size(&self) -> usize {
        match *self {
            MatrixGroup::SpecialUnitary(m) | MatrixGroup::SpecialOrthogonal(m) => m,
            MatrixGroup::UnitarySymplectic(n) => 2 * n,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            MatrixGroup::SpecialUnitary(m) => m * m - 1,
            MatrixGroup::SpecialOrthogonal(m) => m * (m - 1) / 2,
            MatrixGroup::UnitarySymplectic(n) => n * (2 * n + 1),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            MatrixGroup::SpecialUnitary(m) => format!("su({m})"),
            MatrixGroup::SpecialOrthogonal(m) => format!("so({m})"),
            MatrixGroup::UnitarySymplectic(n) => format!("usp({})", 2 * n),
        }
    }
}

fn check_min(group: &'static str, n: usize, min: u32) -> Result<()> {
    if (n as u64) < min as u64 {
        return Err(LocusError::RankTooSmall {
            group,
            n: n as u32,
            min,
        });
    }
    Ok(())
}

impl fmt::Display for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
