//! Pure states of three or four qubits, single-qubit operators, qubit
//! relabeling and seeded sampling.
//!
//! Amplitudes are stored big-endian: `a[i1 i2 i3 i4]` lives at flat index
//! `8*i1 + 4*i2 + 2*i3 + i4`, so qubit `A1` is the most significant bit.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense 2x2 complex matrix, row major.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Qubit label. `A1` is the leftmost subscript of an amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Qubit {
    A1,
    A2,
    A3,
    A4,
}

impl Qubit {
    pub const ALL: [Qubit; 4] = [Qubit::A1, Qubit::A2, Qubit::A3, Qubit::A4];

    /// Zero-based position in the label order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Qubit> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.index() + 1)
    }
}

impl FromStr for Qubit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A1" | "a1" => Ok(Qubit::A1),
            "A2" | "a2" => Ok(Qubit::A2),
            "A3" | "a3" => Ok(Qubit::A3),
            "A4" | "a4" => Ok(Qubit::A4),
            other => Err(Error::UnknownQubit(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from amplitudes in big-endian index order.
    ///
    /// The all-zero vector is accepted; use [`StateVector::is_degenerate`]
    /// to detect it.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if !(3..=4).contains(&n_qubits) {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let expected = 1 << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::AmplitudeCount {
                n_qubits,
                expected,
                got: amplitudes.len(),
            });
        }
        if let Some(i) = amplitudes.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|bits>`, with `bits` read big-endian.
    pub fn basis(n_qubits: usize, bits: usize) -> Result<Self> {
        if !(3..=4).contains(&n_qubits) {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let mut amps = vec![ZERO; 1 << n_qubits];
        let slot = amps.get_mut(bits).ok_or(Error::AmplitudeCount {
            n_qubits,
            expected: 1 << n_qubits,
            got: bits + 1,
        })?;
        *slot = ONE;
        Self::new(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// True when every amplitude is exactly zero.
    pub fn is_degenerate(&self) -> bool {
        self.amplitudes.iter().all(|a| *a == ZERO)
    }

    /// Unit-norm copy. A degenerate state is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.norm_squared().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / norm, 0.0))
    }

    /// Multiplies every amplitude by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }

    /// Embeds a three-qubit state as `|psi> (x) |0>` on `A4`.
    pub fn embed_with_a4_zero(&self) -> Result<Self> {
        if self.n_qubits != 3 {
            return Err(Error::QubitCount {
                expected: 3,
                got: self.n_qubits,
            });
        }
        let mut amps = vec![ZERO; 16];
        for (i, a) in self.amplitudes.iter().enumerate() {
            amps[i << 1] = *a;
        }
        Self::new(4, amps)
    }

    /// Applies a single-qubit operator. The input is left untouched.
    pub fn apply_local(&self, op: &LocalOperator) -> Result<Self> {
        let q = op.target.index();
        if q >= self.n_qubits {
            return Err(Error::TargetOutOfRange {
                target: op.target,
                n_qubits: self.n_qubits,
            });
        }
        let mask = 1 << (self.n_qubits - 1 - q);
        let m = &op.entries;
        let mut out = self.amplitudes.clone();
        for i0 in (0..self.amplitudes.len()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            out[i0] = m[0][0] * a0 + m[0][1] * a1;
            out[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: out,
        })
    }

    /// Applies one operator per qubit, `ops[k]` acting on qubit `k`.
    pub fn apply_product(&self, ops: &[Mat2]) -> Result<Self> {
        if ops.len() != self.n_qubits {
            return Err(Error::ArityMismatch {
                perm: ops.len(),
                state: self.n_qubits,
            });
        }
        ops.iter()
            .zip(Qubit::ALL)
            .try_fold(self.clone(), |s, (m, q)| {
                s.apply_local(&LocalOperator::new(*m, q)?)
            })
    }

    /// Relabels qubits: the bit of original qubit `q` moves to position
    /// `perm.image(q)`.
    pub fn permute_qubits(&self, perm: &QubitPermutation) -> Result<Self> {
        let n = self.n_qubits;
        if perm.len() != n {
            return Err(Error::ArityMismatch {
                perm: perm.len(),
                state: n,
            });
        }
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (old, a) in self.amplitudes.iter().enumerate() {
            let mut new = 0;
            for q in 0..n {
                let bit = (old >> (n - 1 - q)) & 1;
                new |= bit << (n - 1 - perm.mapping[q]);
            }
            out[new] = *a;
        }
        Ok(Self {
            n_qubits: n,
            amplitudes: out,
        })
    }
}

/// A 2x2 matrix acting on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperator {
    pub entries: Mat2,
    pub target: Qubit,
}

impl LocalOperator {
    pub fn new(entries: Mat2, target: Qubit) -> Result<Self> {
        if entries.iter().flatten().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        Ok(Self { entries, target })
    }

    /// `(1 + |y|^2)^(-1/2) [[1, -conj(y)], [y, 1]]`, a determinant-one
    /// unitary.
    pub fn u_of_y(y: Complex64, target: Qubit) -> Self {
        let s = Complex64::new(1.0 / (1.0 + y.norm_sqr()).sqrt(), 0.0);
        Self {
            entries: [[s, -y.conj() * s], [y * s, s]],
            target,
        }
    }
}

pub mod mat2 {
    //! Small helpers on [`Mat2`](super::Mat2).
    use super::{Mat2, ONE, ZERO};
    use num_complex::Complex64;

    pub fn identity() -> Mat2 {
        [[ONE, ZERO], [ZERO, ONE]]
    }

    pub fn pauli_x() -> Mat2 {
        [[ZERO, ONE], [ONE, ZERO]]
    }

    pub fn det(m: &Mat2) -> Complex64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn adjoint(m: &Mat2) -> Mat2 {
        [
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ]
    }

    pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    /// Max entrywise modulus of `m^dagger m - 1`.
    pub fn unitarity_defect(m: &Mat2) -> f64 {
        let p = mul(&adjoint(m), m);
        let id = identity();
        (0..4)
            .map(|k| (p[k / 2][k % 2] - id[k / 2][k % 2]).norm())
            .fold(0.0, f64::max)
    }
}

/// A relabeling of qubits. `mapping[q]` is the new position of qubit `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPermutation {
    mapping: Vec<usize>,
}

impl QubitPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::NotBijection);
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    pub fn swap(n: usize, a: Qubit, b: Qubit) -> Result<Self> {
        let mut mapping: Vec<usize> = (0..n).collect();
        if a.index() >= n || b.index() >= n {
            return Err(Error::NotBijection);
        }
        mapping.swap(a.index(), b.index());
        Ok(Self { mapping })
    }

    /// Sends `q` to the last slot; the other qubits keep their relative order.
    pub fn distinguish(n: usize, q: Qubit) -> Result<Self> {
        let d = q.index();
        if d >= n {
            return Err(Error::NotBijection);
        }
        let mapping = (0..n)
            .map(|k| match k.cmp(&d) {
                std::cmp::Ordering::Less => k,
                std::cmp::Ordering::Equal => n - 1,
                std::cmp::Ordering::Greater => k - 1,
            })
            .collect();
        Ok(Self { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn image(&self, q: usize) -> usize {
        self.mapping[q]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (q, &m) in self.mapping.iter().enumerate() {
            inv[m] = q;
        }
        Self { mapping: inv }
    }
}

/// Named fixture states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Ghz4,
    W4,
    Cluster4,
    Product4,
    Ghz3,
    W3,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Ghz4,
        Builtin::W4,
        Builtin::Cluster4,
        Builtin::Product4,
        Builtin::Ghz3,
        Builtin::W3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Ghz4 => "ghz4",
            Builtin::W4 => "w4",
            Builtin::Cluster4 => "cluster4",
            Builtin::Product4 => "product4",
            Builtin::Ghz3 => "ghz3",
            Builtin::W3 => "w3",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Builtin::Ghz4 => "(|0000> + |1111>)/sqrt2",
            Builtin::W4 => "(|0001> + |0010> + |0100> + |1000>)/2",
            Builtin::Cluster4 => "(|0000> + |0011> + |1100> - |1111>)/2",
            Builtin::Product4 => "|0000>",
            Builtin::Ghz3 => "(|000> + |111>)/sqrt2",
            Builtin::W3 => "(|001> + |010> + |100>)/sqrt3",
        }
    }

    pub fn state(self) -> StateVector {
        let r = |x: f64| Complex64::new(x, 0.0);
        let (n, terms): (usize, Vec<(usize, f64)>) = match self {
            Builtin::Ghz4 => (4, vec![(0b0000, FRAC_1_SQRT_2), (0b1111, FRAC_1_SQRT_2)]),
            Builtin::W4 => (
                4,
                vec![(0b0001, 0.5), (0b0010, 0.5), (0b0100, 0.5), (0b1000, 0.5)],
            ),
            Builtin::Cluster4 => (
                4,
                vec![(0b0000, 0.5), (0b0011, 0.5), (0b1100, 0.5), (0b1111, -0.5)],
            ),
            Builtin::Product4 => (4, vec![(0b0000, 1.0)]),
            Builtin::Ghz3 => (3, vec![(0b000, FRAC_1_SQRT_2), (0b111, FRAC_1_SQRT_2)]),
            Builtin::W3 => {
                let w = 1.0 / 3f64.sqrt();
                (3, vec![(0b001, w), (0b010, w), (0b100, w)])
            }
        };
        let mut amps = vec![ZERO; 1 << n];
        for (i, x) in terms {
            amps[i] = r(x);
        }
        StateVector {
            n_qubits: n,
            amplitudes: amps,
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

pub fn builtin_state(name: &str) -> Result<StateVector> {
    Ok(name.parse::<Builtin>()?.state())
}

/// The generator behind every sampled quantity: ChaCha8 seeded through
/// `seed_from_u64`, with `stream` selecting an independent substream.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// I.i.d. standard complex Gaussian amplitudes, normalized.
pub fn random_state_from<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<StateVector> {
    if !(3..=4).contains(&n_qubits) {
        return Err(Error::UnsupportedQubitCount(n_qubits));
    }
    let amps = (0..1 << n_qubits)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * FRAC_1_SQRT_2
        })
        .collect();
    Ok(StateVector::new(n_qubits, amps)?.normalized())
}

pub fn random_state(n_qubits: usize, seed: u64) -> Result<StateVector> {
    random_state_from(n_qubits, &mut seeded_rng(seed, 0))
}

/// Haar SU(2) element `[[a, -conj(b)], [b, conj(a)]]` with
/// `a = cos(t) e^{i phi}`, `b = sin(t) e^{i chi}` and `cos^2(t)` uniform.
pub fn random_su2_from<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let u: f64 = rng.random();
    let phi = 2.0 * PI * rng.random::<f64>();
    let chi = 2.0 * PI * rng.random::<f64>();
    let (c, s) = (u.sqrt(), (1.0 - u).sqrt());
    let a = Complex64::from_polar(c, phi);
    let b = Complex64::from_polar(s, chi);
    [[a, -b.conj()], [b, a.conj()]]
}

/// Haar U(2) element: an SU(2) draw times a uniform global phase.
pub fn random_u2_from<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let m = random_su2_from(rng);
    let phase = Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>());
    m.map(|row| row.map(|z| z * phase))
}

pub fn random_su2(seed: u64) -> Mat2 {
    random_su2_from(&mut seeded_rng(seed, 1))
}

pub fn random_u2(seed: u64) -> Mat2 {
    random_u2_from(&mut seeded_rng(seed, 2))
}
