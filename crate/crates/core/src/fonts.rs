//! Negativity-font determinants of a four-qubit state.
//!
//! Every font is a 2x2 determinant whose rows are the two values of `A1`
//! and whose columns are a base index `(i2, i3, i4)` and the same index
//! with every non-spectator bit flipped. Spectator qubits keep their value
//! in both columns:
//!
//! | family                  | spectators | flipped bits |
//! |-------------------------|------------|--------------|
//! | two-way `D^{00}_{(A3)i3(A4)i4}` | A3, A4 | A2 |
//! | three-way `D^{0 i2 i4}_{(A3)i3}` | A3 | A2, A4 |
//! | three-way `D^{0 i2 i3}_{(A4)i4}` | A4 | A2, A3 |
//! | four-way `D^{0 i2 i3 i4}` | none | A2, A3, A4 |

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::StateVector;

const A2: usize = 0b100;
const A3: usize = 0b010;
const A4: usize = 0b001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn value(self) -> usize {
        self as usize
    }

    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl TryFrom<u8> for Bit {
    type Error = u8;

    fn try_from(v: u8) -> std::result::Result<Self, u8> {
        match v {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            other => Err(other),
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FontKind {
    TwoWay,
    ThreeWaySpectatorA3,
    ThreeWaySpectatorA4,
    FourWay,
}

impl FontKind {
    fn flip_mask(self) -> usize {
        match self {
            FontKind::TwoWay => A2,
            FontKind::ThreeWaySpectatorA3 => A2 | A4,
            FontKind::ThreeWaySpectatorA4 => A2 | A3,
            FontKind::FourWay => A2 | A3 | A4,
        }
    }
}

/// Selects one font. Field names follow the qubit whose bit they fix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FontIndex {
    TwoWay { i3: Bit, i4: Bit },
    ThreeWaySpectatorA3 { i3: Bit, i2: Bit, i4: Bit },
    ThreeWaySpectatorA4 { i4: Bit, i2: Bit, i3: Bit },
    FourWay { i2: Bit, i3: Bit, i4: Bit },
}

impl FontIndex {
    pub fn kind(&self) -> FontKind {
        match self {
            FontIndex::TwoWay { .. } => FontKind::TwoWay,
            FontIndex::ThreeWaySpectatorA3 { .. } => FontKind::ThreeWaySpectatorA3,
            FontIndex::ThreeWaySpectatorA4 { .. } => FontKind::ThreeWaySpectatorA4,
            FontIndex::FourWay { .. } => FontKind::FourWay,
        }
    }

    /// Low three bits `(i2, i3, i4)` of the first column.
    fn base(&self) -> usize {
        let pack = |i2: Bit, i3: Bit, i4: Bit| i2.value() << 2 | i3.value() << 1 | i4.value();
        match *self {
            FontIndex::TwoWay { i3, i4 } => pack(Bit::Zero, i3, i4),
            FontIndex::ThreeWaySpectatorA3 { i3, i2, i4 }
            | FontIndex::ThreeWaySpectatorA4 { i4, i2, i3 }
            | FontIndex::FourWay { i2, i3, i4 } => pack(i2, i3, i4),
        }
    }

    /// Every font of every family, 28 in total.
    pub fn all() -> Vec<FontIndex> {
        let mut out = Vec::with_capacity(28);
        for a in Bit::ALL {
            for b in Bit::ALL {
                out.push(FontIndex::TwoWay { i3: a, i4: b });
            }
        }
        for a in Bit::ALL {
            for b in Bit::ALL {
                for c in Bit::ALL {
                    out.push(FontIndex::ThreeWaySpectatorA3 {
                        i3: a,
                        i2: b,
                        i4: c,
                    });
                    out.push(FontIndex::ThreeWaySpectatorA4 {
                        i4: a,
                        i2: b,
                        i3: c,
                    });
                    out.push(FontIndex::FourWay {
                        i2: a,
                        i3: b,
                        i4: c,
                    });
                }
            }
        }
        out
    }

    pub fn evaluate(&self, state: &StateVector) -> Result<Complex64> {
        Ok(font_at(amps4(state)?, self.base(), self.kind().flip_mask()))
    }
}

impl fmt::Display for FontIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FontIndex::TwoWay { i3, i4 } => write!(f, "D^00_(A3){i3}(A4){i4}"),
            FontIndex::ThreeWaySpectatorA3 { i3, i2, i4 } => write!(f, "D^0{i2}{i4}_(A3){i3}"),
            FontIndex::ThreeWaySpectatorA4 { i4, i2, i3 } => write!(f, "D^0{i2}{i3}_(A4){i4}"),
            FontIndex::FourWay { i2, i3, i4 } => write!(f, "D^0{i2}{i3}{i4}"),
        }
    }
}

pub(crate) fn amps4(state: &StateVector) -> Result<&[Complex64; 16]> {
    state
        .amplitudes()
        .try_into()
        .map_err(|_| Error::QubitCount {
            expected: 4,
            got: state.n_qubits(),
        })
}

#[inline]
fn font_at(a: &[Complex64; 16], x: usize, mask: usize) -> Complex64 {
    let y = x ^ mask;
    a[x] * a[8 | y] - a[y] * a[8 | x]
}

pub fn two_way_font(state: &StateVector, i3: Bit, i4: Bit) -> Result<Complex64> {
    FontIndex::TwoWay { i3, i4 }.evaluate(state)
}

pub fn three_way_font_spectator_a3(
    state: &StateVector,
    i3: Bit,
    i2: Bit,
    i4: Bit,
) -> Result<Complex64> {
    FontIndex::ThreeWaySpectatorA3 { i3, i2, i4 }.evaluate(state)
}

pub fn three_way_font_spectator_a4(
    state: &StateVector,
    i4: Bit,
    i2: Bit,
    i3: Bit,
) -> Result<Complex64> {
    FontIndex::ThreeWaySpectatorA4 { i4, i2, i3 }.evaluate(state)
}

pub fn four_way_font(state: &StateVector, i2: Bit, i3: Bit, i4: Bit) -> Result<Complex64> {
    FontIndex::FourWay { i2, i3, i4 }.evaluate(state)
}

/// All fonts of one state, indexed by bit values in the argument order of
/// the single-font functions.
#[derive(Debug, Clone, PartialEq)]
pub struct FontTable {
    /// `[i3][i4]`
    pub two_way: [[Complex64; 2]; 2],
    /// `[i3][i2][i4]`
    pub spectator_a3: [[[Complex64; 2]; 2]; 2],
    /// `[i4][i2][i3]`
    pub spectator_a4: [[[Complex64; 2]; 2]; 2],
    /// `[i2][i3][i4]`
    pub four_way: [[[Complex64; 2]; 2]; 2],
}

impl FontTable {
    pub fn new(state: &StateVector) -> Result<Self> {
        let a = amps4(state)?;
        let f = |x: usize, m: usize| font_at(a, x, m);
        let cube = |g: &dyn Fn(usize, usize, usize) -> Complex64| {
            [0, 1].map(|p| [0, 1].map(|q| [0, 1].map(|r| g(p, q, r))))
        };
        Ok(Self {
            two_way: [0, 1].map(|i3| [0, 1].map(|i4| f(i3 << 1 | i4, A2))),
            spectator_a3: cube(&|i3, i2, i4| f(i2 << 2 | i3 << 1 | i4, A2 | A4)),
            spectator_a4: cube(&|i4, i2, i3| f(i2 << 2 | i3 << 1 | i4, A2 | A3)),
            four_way: cube(&|i2, i3, i4| f(i2 << 2 | i3 << 1 | i4, A2 | A3 | A4)),
        })
    }

    pub fn get(&self, idx: FontIndex) -> Complex64 {
        match idx {
            FontIndex::TwoWay { i3, i4 } => self.two_way[i3.value()][i4.value()],
            FontIndex::ThreeWaySpectatorA3 { i3, i2, i4 } => {
                self.spectator_a3[i3.value()][i2.value()][i4.value()]
            }
            FontIndex::ThreeWaySpectatorA4 { i4, i2, i3 } => {
                self.spectator_a4[i4.value()][i2.value()][i3.value()]
            }
            FontIndex::FourWay { i2, i3, i4 } => self.four_way[i2.value()][i3.value()][i4.value()],
        }
    }

    /// `D^{0000} + D^{0001} + D^{0010} + D^{0011}`
    pub fn four_way_sum(&self) -> Complex64 {
        self.four_way[0].iter().flatten().sum()
    }

    /// `D^{000}_{(A3)i3} + D^{001}_{(A3)i3}`
    pub fn spectator_a3_pair(&self, i3: Bit) -> Complex64 {
        let row = &self.spectator_a3[i3.value()][0];
        row[0] + row[1]
    }

    /// `D^{000}_{(A4)i4} + D^{001}_{(A4)i4}`
    pub fn spectator_a4_pair(&self, i4: Bit) -> Complex64 {
        let row = &self.spectator_a4[i4.value()][0];
        row[0] + row[1]
    }
}
