//! Aggregated invariant reports per choice of distinguished qubit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fonts::{Bit, FontIndex, FontTable};
use crate::invariants::{tau4_from_i48, ThreeQubitInvariants, NORM_TOLERANCE};
use crate::state::{Qubit, QubitPermutation, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledValue {
    pub label: String,
    pub value: Complex64,
}

/// Moduli of the five three-qubit invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeQubitModuli {
    pub i3_0: f64,
    pub i3_1: f64,
    pub p_0: f64,
    pub p_1: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub distinguished_qubit: Qubit,
    pub degenerate: bool,
    pub i3_0: Complex64,
    pub i3_1: Complex64,
    pub p_0: Complex64,
    pub p_1: Complex64,
    pub t: Complex64,
    pub three_qubit_moduli: ThreeQubitModuli,
    pub i48: Complex64,
    pub j: Complex64,
    pub delta: Complex64,
    pub tau4: f64,
    pub two_qubit_invariants: Vec<LabeledValue>,
}

/// The five families of two-qubit invariants for the pair `A1 A2`:
/// `D^00_(A3)i3(A4)i4`, `D^00i4_(A3)i3 - D^01i4_(A3)i3`,
/// `D^00i3_(A4)i4 - D^01i3_(A4)i4`, `D^0000 - D^0100`, `D^0001 - D^0101`.
pub fn two_qubit_invariant_list(state: &StateVector) -> Result<Vec<LabeledValue>> {
    Ok(two_qubit_from_fonts(&FontTable::new(state)?))
}

fn two_qubit_from_fonts(fonts: &FontTable) -> Vec<LabeledValue> {
    use Bit::{One, Zero};
    let mut out = Vec::with_capacity(14);
    let mut push = |label: String, value: Complex64| out.push(LabeledValue { label, value });

    for i3 in Bit::ALL {
        for i4 in Bit::ALL {
            let idx = FontIndex::TwoWay { i3, i4 };
            push(idx.to_string(), fonts.get(idx));
        }
    }
    for i3 in Bit::ALL {
        for i4 in Bit::ALL {
            let lhs = FontIndex::ThreeWaySpectatorA3 { i3, i2: Zero, i4 };
            let rhs = FontIndex::ThreeWaySpectatorA3 { i3, i2: One, i4 };
            push(format!("{lhs} - {rhs}"), fonts.get(lhs) - fonts.get(rhs));
        }
    }
    for i4 in Bit::ALL {
        for i3 in Bit::ALL {
            let lhs = FontIndex::ThreeWaySpectatorA4 { i4, i2: Zero, i3 };
            let rhs = FontIndex::ThreeWaySpectatorA4 { i4, i2: One, i3 };
            push(format!("{lhs} - {rhs}"), fonts.get(lhs) - fonts.get(rhs));
        }
    }
    for i4 in Bit::ALL {
        let lhs = FontIndex::FourWay {
            i2: Zero,
            i3: Zero,
            i4,
        };
        let rhs = FontIndex::FourWay {
            i2: One,
            i3: Zero,
            i4,
        };
        push(format!("{lhs} - {rhs}"), fonts.get(lhs) - fonts.get(rhs));
    }
    out
}

/// Computes every invariant after relabeling so that `distinguished`
/// occupies the `A4` slot; the other qubits keep their relative order.
///
/// A degenerate (all-zero) state reports zeros with `degenerate` set. Any
/// other state must be normalized.
pub fn full_report(state: &StateVector, distinguished: Qubit) -> Result<InvariantReport> {
    if state.n_qubits() != 4 {
        return Err(Error::QubitCount {
            expected: 4,
            got: state.n_qubits(),
        });
    }
    let degenerate = state.is_degenerate();
    if !degenerate {
        let n = state.norm_squared();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Unnormalized(n));
        }
    }
    let relabeled = state.permute_qubits(&QubitPermutation::distinguish(4, distinguished)?)?;
    let fonts = FontTable::new(&relabeled)?;
    let inv = ThreeQubitInvariants::from_fonts(&fonts);
    let i48 = inv.i48();
    Ok(InvariantReport {
        distinguished_qubit: distinguished,
        degenerate,
        i3_0: inv.i3[0],
        i3_1: inv.i3[1],
        p_0: inv.p[0],
        p_1: inv.p[1],
        t: inv.t,
        three_qubit_moduli: ThreeQubitModuli {
            i3_0: inv.i3[0].norm(),
            i3_1: inv.i3[1].norm(),
            p_0: inv.p[0].norm(),
            p_1: inv.p[1].norm(),
            t: inv.t.norm(),
        },
        i48,
        j: inv.j(),
        delta: inv.discriminant(),
        tau4: tau4_from_i48(i48),
        two_qubit_invariants: two_qubit_from_fonts(&fonts),
    })
}

/// Max pairwise relative deviation `|x - y| / max(|x|, |y|, floor)`.
pub fn relative_spread(values: &[Complex64], floor: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, x) in values.iter().enumerate() {
        for y in &values[k + 1..] {
            worst = worst.max(crate::verify::residual(*x, *y, floor));
        }
    }
    worst
}

/// Reports for all four distinguished-qubit choices.
pub fn all_reports(state: &StateVector) -> Result<Vec<InvariantReport>> {
    Qubit::ALL.iter().map(|q| full_report(state, *q)).collect()
}
