use thiserror::Error;

use crate::state::Qubit;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported qubit count {0} (expected 3 or 4)")]
    UnsupportedQubitCount(usize),

    #[error("expected {expected} amplitudes for {n_qubits} qubits, got {got}")]
    AmplitudeCount {
        n_qubits: usize,
        expected: usize,
        got: usize,
    },

    #[error("amplitude at index {0} is not finite")]
    NonFinite(usize),

    #[error("operation needs a {expected}-qubit state, got {got} qubits")]
    QubitCount { expected: usize, got: usize },

    #[error("qubit {target} is out of range for a {n_qubits}-qubit state")]
    TargetOutOfRange { target: Qubit, n_qubits: usize },

    #[error("permutation acts on {perm} qubits but the state has {state}")]
    ArityMismatch { perm: usize, state: usize },

    #[error("qubit mapping is not a bijection")]
    NotBijection,

    #[error("state is not normalized (norm squared {0})")]
    Unnormalized(f64),

    #[error("unknown builtin state `{0}`")]
    UnknownBuiltin(String),

    #[error("unknown qubit label `{0}`")]
    UnknownQubit(String),

    #[error("trials must be >= 1")]
    NoTrials,

    #[error("invalid tolerance: {0}")]
    Tolerance(&'static str),

    #[error("unsupported state file version {0} (expected 1)")]
    FileVersion(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
