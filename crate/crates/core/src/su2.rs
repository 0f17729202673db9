//! Single-qubit unitaries, the fault-tolerant generator set and the
//! global-phase-invariant distance between unitaries.
//!
//! Gate words are written as strings over `{H, S, s, T, t, X, Z}` where the
//! lowercase letters are the adjoints `S†` and `T†`. The leftmost symbol of a
//! word is the first gate applied, so `"HT"` evaluates to the matrix `T·H`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `exp(i·π/2^d)`, exact for `d ≤ 2`.
pub fn phase_pi_over_pow2(d: u32) -> Complex64 {
    match d {
        0 => Complex64::new(-1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        _ => Complex64::cis(PI / libm::ldexp(1.0, d as i32)),
    }
}

/// A 2×2 complex matrix, row-major. Every public constructor yields a unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2 { m: [[ONE, ZERO], [ZERO, ONE]] };

    /// `diag(1, phase)`; `phase` must have unit modulus.
    pub fn diag_phase(phase: Complex64) -> Self {
        Unitary2 { m: [[ONE, ZERO], [ZERO, phase]] }
    }

    /// `diag(1, exp(iθ))`.
    pub fn phase_gate(theta: f64) -> Self {
        Self::diag_phase(Complex64::cis(theta))
    }

    /// Builds a matrix from row-major entries, checking unitarity to `tol`.
    pub fn try_from_rows(rows: [[Complex64; 2]; 2], tol: f64) -> Option<Self> {
        let u = Unitary2 { m: rows };
        u.is_unitary(tol).then_some(u)
    }

    /// Unit quaternion `(q0, q1, q2, q3)` of the SU(2) part, with the global
    /// phase removed. `|tr(U†V)| = 2·|⟨q(U), q(V)⟩|`.
    pub fn quaternion(&self) -> [f64; 4] {
        let det = self.det();
        let root = det.sqrt();
        let a = self.m[0][0] / root;
        let b = self.m[0][1] / root;
        let q = [a.re, -b.im, -b.re, -a.im];
        if q[0] < 0.0 {
            [-q[0], -q[1], -q[2], -q[3]]
        } else {
            q
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Unitary2 { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Multiplies by the global phase `exp(iθ)`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let p = Complex64::cis(theta);
        let m = &self.m;
        Unitary2 { m: [[m[0][0] * p, m[0][1] * p], [m[1][0] * p, m[1][1] * p]] }
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint() * *self;
        max_entry_error(&p.m, &Self::IDENTITY.m)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol && (self.det().norm() - 1.0).abs() <= tol
    }

    /// Largest entrywise absolute difference.
    pub fn max_diff(&self, other: &Unitary2) -> f64 {
        max_entry_error(&self.m, &other.m)
    }
}

fn max_entry_error<const N: usize>(a: &[[Complex64; N]; N], b: &[[Complex64; N]; N]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (&self.m, &rhs.m);
        Unitary2 {
            m: [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ],
        }
    }
}

/// `sqrt((2 − |tr(U†V)|) / 2)`: zero iff the two agree up to a global phase.
pub fn dist(u: &Unitary2, v: &Unitary2) -> f64 {
    // With U†V = e^{iα}(q₀I + i q⃗·σ), |tr(U†V)|/2 = |q₀| and
    // 1 − |q₀| = |q⃗|² / (1 + |q₀|), which avoids cancellation near zero.
    let w = u.adjoint() * *v;
    let root = w.det().sqrt();
    let a = w.m[0][0] / root;
    let d = w.m[1][1] / root;
    let b = w.m[0][1] / root;
    let c = w.m[1][0] / root;
    let q0 = ((a + d) / 2.0).re.abs();
    let v1 = ((b + c) / 2.0).im;
    let v2 = ((b - c) / 2.0).re;
    let v3 = ((a - d) / 2.0).im;
    libm::sqrt((v1 * v1 + v2 * v2 + v3 * v3) / (1.0 + q0.min(1.0)))
}

/// Distance computed from [`Unitary2::quaternion`] keys: for unit `p`, `q`,
/// `1 − |⟨p, q⟩| = min(‖p − q‖², ‖p + q‖²) / 2`.
pub fn quaternion_dist(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    let mut minus = 0.0;
    let mut plus = 0.0;
    for i in 0..4 {
        minus += (p[i] - q[i]) * (p[i] - q[i]);
        plus += (p[i] + q[i]) * (p[i] + q[i]);
    }
    libm::sqrt(minus.min(plus) / 2.0)
}

/// Generators of the fault-tolerant single-qubit gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Z,
}

impl Gate {
    pub const ALL: [Gate; 7] = [Gate::H, Gate::S, Gate::Sdg, Gate::T, Gate::Tdg, Gate::X, Gate::Z];

    pub fn label(self) -> char {
        match self {
            Gate::H => 'H',
            Gate::S => 'S',
            Gate::Sdg => 's',
            Gate::T => 'T',
            Gate::Tdg => 't',
            Gate::X => 'X',
            Gate::Z => 'Z',
        }
    }

    pub fn from_label(c: char) -> Result<Gate> {
        Ok(match c {
            'H' => Gate::H,
            'S' => Gate::S,
            's' => Gate::Sdg,
            'T' => Gate::T,
            't' => Gate::Tdg,
            'X' => Gate::X,
            'Z' => Gate::Z,
            other => return Err(Error::GateLabel(other)),
        })
    }

    /// For diagonal gates, the `k` with matrix `diag(1, ω^k)`, `ω = e^{iπ/4}`.
    pub fn eighth_turns(self) -> Option<u8> {
        match self {
            Gate::T => Some(1),
            Gate::S => Some(2),
            Gate::Z => Some(4),
            Gate::Sdg => Some(6),
            Gate::Tdg => Some(7),
            Gate::H | Gate::X => None,
        }
    }

    pub fn matrix(self) -> Unitary2 {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            Gate::H => Unitary2 { m: [[h, h], [h, -h]] },
            Gate::X => Unitary2 { m: [[ZERO, ONE], [ONE, ZERO]] },
            _ => Unitary2::diag_phase(omega_pow(self.eighth_turns().unwrap())),
        }
    }
}

/// `ω^k` with `ω = e^{iπ/4}`, exact in every component.
fn omega_pow(k: u8) -> Complex64 {
    let r = FRAC_1_SQRT_2;
    match k % 8 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(r, r),
        2 => Complex64::new(0.0, 1.0),
        3 => Complex64::new(-r, r),
        4 => Complex64::new(-1.0, 0.0),
        5 => Complex64::new(-r, -r),
        6 => Complex64::new(0.0, -1.0),
        _ => Complex64::new(r, -r),
    }
}

/// Shortest representative of `diag(1, ω^k)` with sorted diagonal letters.
pub(crate) fn diagonal_block(k: u8) -> &'static [Gate] {
    match k % 8 {
        0 => &[],
        1 => &[Gate::T],
        2 => &[Gate::S],
        3 => &[Gate::S, Gate::T],
        4 => &[Gate::Z],
        5 => &[Gate::Z, Gate::T],
        6 => &[Gate::Sdg],
        _ => &[Gate::Tdg],
    }
}

/// An ordered sequence of generators; the first gate is applied first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateWord(Vec<Gate>);

impl GateWord {
    pub fn new(gates: Vec<Gate>) -> Self {
        GateWord(gates)
    }

    pub fn empty() -> Self {
        GateWord(Vec::new())
    }

    pub fn gates(&self) -> &[Gate] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GateWord) -> GateWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GateWord(v)
    }

    /// Matrix of the word: `G_n ⋯ G_2 · G_1` for the word `G_1 G_2 … G_n`.
    pub fn eval(&self) -> Unitary2 {
        eval_gates(&self.0)
    }

    /// Applies the reduction rules until none fires: `HH → I`, `XX → I`, and
    /// every run of diagonal gates merges into the shortest sorted
    /// representative of its total phase.
    pub fn canonical(&self) -> GateWord {
        #[derive(Clone, Copy, PartialEq)]
        enum Block {
            H,
            X,
            Diag(u8),
        }
        let mut stack: Vec<Block> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            let block = match g.eighth_turns() {
                Some(k) => Block::Diag(k),
                None if g == Gate::H => Block::H,
                None => Block::X,
            };
            match (stack.last().copied(), block) {
                (Some(Block::H), Block::H) | (Some(Block::X), Block::X) => {
                    stack.pop();
                }
                (Some(Block::Diag(a)), Block::Diag(b)) => {
                    stack.pop();
                    let k = (a + b) % 8;
                    if k != 0 {
                        stack.push(Block::Diag(k));
                    }
                }
                _ => stack.push(block),
            }
        }
        let mut out = Vec::with_capacity(self.0.len());
        for b in stack {
            match b {
                Block::H => out.push(Gate::H),
                Block::X => out.push(Gate::X),
                Block::Diag(k) => out.extend_from_slice(diagonal_block(k)),
            }
        }
        GateWord(out)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

/// Product of generator matrices, first gate applied first.
pub fn eval_gates(gates: &[Gate]) -> Unitary2 {
    gates.iter().fold(Unitary2::IDENTITY, |acc, g| g.matrix() * acc)
}

impl fmt::Display for GateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.label())?;
        }
        Ok(())
    }
}

impl FromStr for GateWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Gate::from_label).collect::<Result<Vec<_>>>().map(GateWord)
    }
}

impl From<&GateWord> for String {
    fn from(w: &GateWord) -> String {
        use core::fmt::Write;
        let mut s = String::with_capacity(w.len());
        let _ = write!(s, "{w}");
        s
    }
}

/// The 31-gate approximation of `R_128` found by exhaustive search over
/// alternating `H`/`T^{±1}` words.
pub const U31: &str = "HTHtHTHTHTHtHtHTHTHtHtHTHtHtHtH";

/// The single-qubit rotation `R_{2^d} = diag(1, e^{iπ/2^d})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RotationTarget {
    pub d: u32,
}

impl RotationTarget {
    pub fn new(d: u32) -> Self {
        RotationTarget { d }
    }

    pub fn matrix(self) -> Unitary2 {
        rotation(self)
    }
}

pub fn rotation(target: RotationTarget) -> Unitary2 {
    Unitary2::diag_phase(phase_pi_over_pow2(target.d))
}

/// Closed form of `dist(R_{2^d}, I) = √2·|sin(π/2^{d+2})|`.
pub fn rotation_identity_distance(d: u32) -> f64 {
    core::f64::consts::SQRT_2 * libm::sin(PI / libm::ldexp(1.0, d as i32 + 2)).abs()
}

/// A 4×4 complex matrix on `|control, target⟩`, basis index `2·control + target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary4 {
    pub m: [[Complex64; 4]; 4],
}

impl Unitary4 {
    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Unitary4 { m }
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut u = Self::identity();
        for (i, v) in d.into_iter().enumerate() {
            u.m[i][i] = v;
        }
        u
    }

    pub fn max_diff(&self, other: &Unitary4) -> f64 {
        max_entry_error(&self.m, &other.m)
    }

    /// Largest entrywise difference after removing the best global phase
    /// (aligned on the largest entry of `other`).
    pub fn max_diff_up_to_phase(&self, other: &Unitary4) -> f64 {
        let (mut bi, mut bj, mut best) = (0, 0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                if other.m[i][j].norm() > best {
                    best = other.m[i][j].norm();
                    (bi, bj) = (i, j);
                }
            }
        }
        let a = self.m[bi][bj];
        if a.norm() == 0.0 {
            return f64::INFINITY;
        }
        let phase = other.m[bi][bj] / a;
        let phase = phase / phase.norm();
        let mut scaled = *self;
        for row in scaled.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= phase;
            }
        }
        scaled.max_diff(other)
    }

    fn kron(a: &Unitary2, b: &Unitary2) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a.m[i / 2][j / 2] * b.m[i % 2][j % 2];
            }
        }
        Unitary4 { m }
    }

    fn cnot() -> Self {
        let mut u = Self::identity();
        u.m[2][2] = ZERO;
        u.m[3][3] = ZERO;
        u.m[2][3] = ONE;
        u.m[3][2] = ONE;
        u
    }
}

impl Mul for Unitary4 {
    type Output = Unitary4;

    fn mul(self, rhs: Unitary4) -> Unitary4 {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        Unitary4 { m }
    }
}

/// `diag(1, 1, 1, e^{iπ/2^d})`.
pub fn controlled_rotation_matrix(d: u32) -> Unitary4 {
    Unitary4::diag([ONE, ONE, ONE, phase_pi_over_pow2(d)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    Control,
    Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingleQubitGate {
    H,
    /// `R_{2^d}` or its adjoint.
    Rotation { d: u32, adjoint: bool },
}

impl SingleQubitGate {
    pub fn matrix(self) -> Unitary2 {
        match self {
            SingleQubitGate::H => Gate::H.matrix(),
            SingleQubitGate::Rotation { d, adjoint } => {
                let r = rotation(RotationTarget::new(d));
                if adjoint {
                    r.adjoint()
                } else {
                    r
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitOp {
    Single { qubit: Qubit, gate: SingleQubitGate },
    Cnot,
}

impl CircuitOp {
    pub fn matrix(self) -> Unitary4 {
        match self {
            CircuitOp::Cnot => Unitary4::cnot(),
            CircuitOp::Single { qubit: Qubit::Control, gate } => {
                Unitary4::kron(&gate.matrix(), &Unitary2::IDENTITY)
            }
            CircuitOp::Single { qubit: Qubit::Target, gate } => {
                Unitary4::kron(&Unitary2::IDENTITY, &gate.matrix())
            }
        }
    }
}

/// Controlled `π/2^d` rotation as CNOTs and single-qubit gates, in application order.
///
/// `d = 0` (controlled-Z) needs a single CNOT conjugated by Hadamards on the
/// target. Every other angle is not locally equivalent to a CNOT and uses two
/// CNOTs with three `R_{2^{d+1}}`-type rotations.
pub fn decompose_controlled(d: u32) -> Vec<CircuitOp> {
    use CircuitOp::{Cnot, Single};
    use Qubit::{Control, Target};
    if d == 0 {
        let h = SingleQubitGate::H;
        return alloc::vec![
            Single { qubit: Target, gate: h },
            Cnot,
            Single { qubit: Target, gate: h },
        ];
    }
    let half = |adjoint| SingleQubitGate::Rotation { d: d + 1, adjoint };
    alloc::vec![
        Single { qubit: Target, gate: half(false) },
        Cnot,
        Single { qubit: Target, gate: half(true) },
        Cnot,
        Single { qubit: Control, gate: half(false) },
    ]
}

/// Product of a circuit given in application order.
pub fn circuit_matrix(ops: &[CircuitOp]) -> Unitary4 {
    ops.iter().fold(Unitary4::identity(), |acc, op| op.matrix() * acc)
}
