//! Three- and four-qubit polynomial invariants built from font
//! determinants, with `A4` as the distinguished qubit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fonts::{Bit, FontTable};
use crate::state::StateVector;

/// Allowed deviation of `norm_squared` from one for the tangles.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Coefficients of `a y^4 - 4 b y^3 + 6 c y^2 - 4 d y + f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub f: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticInvariants {
    pub s: Complex64,
    pub t_cubic: Complex64,
    pub delta: Complex64,
}

/// `S = af - 4bd + 3c^2`, `T = acf - ad^2 - b^2 f + 2bcd - c^3`,
/// `Delta = S^3 - 27 T^2`.
pub fn quartic_invariants(q: &QuarticCoefficients) -> QuarticInvariants {
    let QuarticCoefficients { a, b, c, d, f } = *q;
    let s = a * f - 4.0 * b * d + 3.0 * c * c;
    let t_cubic = a * c * f - a * d * d - b * b * f + 2.0 * b * c * d - c * c * c;
    QuarticInvariants {
        s,
        t_cubic,
        delta: s * s * s - 27.0 * t_cubic * t_cubic,
    }
}

/// The five degree-4 invariants of the triple `A1 A2 A3`, indexed by the
/// value of the spectator `A4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeQubitInvariants {
    /// `(I3)_{(A4)0}`, `(I3)_{(A4)1}`
    pub i3: [Complex64; 2],
    /// `P_{(A4)0}`, `P_{(A4)1}`
    pub p: [Complex64; 2],
    pub t: Complex64,
}

impl ThreeQubitInvariants {
    pub fn new(state: &StateVector) -> Result<Self> {
        Ok(Self::from_fonts(&FontTable::new(state)?))
    }

    pub fn from_fonts(fonts: &FontTable) -> Self {
        let sum4 = fonts.four_way_sum();
        let a3 = |b| fonts.spectator_a3_pair(b);
        let a4 = |b| fonts.spectator_a4_pair(b);
        let two = &fonts.two_way;

        let i3 = Bit::ALL.map(|i4| {
            let k = i4.value();
            let mixed = fonts.spectator_a4[k][0][0] - fonts.spectator_a4[k][1][0];
            mixed * mixed - 4.0 * two[0][k] * two[1][k]
        });

        let t = sum4 * sum4 / 6.0 - (2.0 / 3.0) * a3(Bit::Zero) * a3(Bit::One)
            + a4(Bit::Zero) * a4(Bit::One) / 3.0
            - (2.0 / 3.0) * (two[0][0] * two[1][1] + two[1][0] * two[0][1]);

        let p = Bit::ALL.map(|i4| {
            let k = i4.value();
            0.5 * a4(i4) * sum4 - (two[1][k] * a3(Bit::Zero) + two[0][k] * a3(Bit::One))
        });

        Self { i3, p, t }
    }

    /// Coefficients of the quartic in `conj(y)` whose roots make the
    /// transformed `(I3)_{(A4)0}` vanish.
    pub fn quartic(&self) -> QuarticCoefficients {
        QuarticCoefficients {
            a: self.i3[1],
            b: self.p[1],
            c: self.t,
            d: self.p[0],
            f: self.i3[0],
        }
    }

    /// `3 T^2 + (I3)_0 (I3)_1 - 4 P_0 P_1`
    pub fn i48(&self) -> Complex64 {
        3.0 * self.t * self.t + self.i3[0] * self.i3[1] - 4.0 * self.p[0] * self.p[1]
    }

    /// `det [[I3_1, P_1, T], [P_1, T, P_0], [T, P_0, I3_0]]`
    pub fn j(&self) -> Complex64 {
        let [i0, i1] = self.i3;
        let [p0, p1] = self.p;
        let t = self.t;
        det3(&[[i1, p1, t], [p1, t, p0], [t, p0, i0]])
    }

    pub fn discriminant(&self) -> Complex64 {
        let i = self.i48();
        let j = self.j();
        i * i * i - 27.0 * j * j
    }

    /// Right-hand side of the `(I3)_{(A4)0}` transformation law under
    /// `LocalOperator::u_of_y(y, A4)`.
    pub fn transformed_i3(&self, y: Complex64) -> Complex64 {
        let yc = y.conj();
        let y2 = yc * yc;
        let poly = y2 * y2 * self.i3[1] - 4.0 * y2 * yc * self.p[1] + 6.0 * y2 * self.t
            - 4.0 * yc * self.p[0]
            + self.i3[0];
        let w = 1.0 + y.norm_sqr();
        poly / (w * w)
    }
}

fn det3(m: &[[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn i3_spectator(state: &StateVector, i4: Bit) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.i3[i4.value()])
}

pub fn t_invariant(state: &StateVector) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.t)
}

pub fn p_invariant(state: &StateVector, i4: Bit) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.p[i4.value()])
}

pub fn i48(state: &StateVector) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.i48())
}

pub fn j_invariant(state: &StateVector) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.j())
}

pub fn discriminant(state: &StateVector) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.discriminant())
}

pub fn transformed_i3(state: &StateVector, y: Complex64) -> Result<Complex64> {
    Ok(ThreeQubitInvariants::new(state)?.transformed_i3(y))
}

/// `4 sqrt(12 |I_(4,8)|)` from a precomputed `I_(4,8)`.
pub fn tau4_from_i48(i48: Complex64) -> f64 {
    4.0 * (12.0 * i48.norm()).sqrt()
}

fn require_normalized(state: &StateVector) -> Result<()> {
    let n = state.norm_squared();
    if (n - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Unnormalized(n));
    }
    Ok(())
}

/// Four tangle of a unit-norm four-qubit state.
pub fn tau4(state: &StateVector) -> Result<f64> {
    let inv = ThreeQubitInvariants::new(state)?;
    require_normalized(state)?;
    Ok(tau4_from_i48(inv.i48()))
}

/// Three tangle of a unit-norm three-qubit state, `4 |(I3)_{(A4)0}|` of
/// the state embedded with `A4 = |0>`.
pub fn tau3(state: &StateVector) -> Result<f64> {
    let embedded = state.embed_with_a4_zero()?;
    require_normalized(state)?;
    Ok(4.0 * i3_spectator(&embedded, Bit::Zero)?.norm())
}
