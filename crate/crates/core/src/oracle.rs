//! Dense state-vector simulation of the period-finding register, gate by gate.
//!
//! Qubit `q` of the `2L`-qubit register carries bit `q` of the basis index. The
//! AQFT circuit processes targets from the most significant qubit down: a
//! Hadamard on the target, then the kept controlled rotations from every lower
//! qubit, and finally a reversal of the qubit order.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qpf::{check_distribution_size, AqftSpec, Distribution, NoiseAngles};

/// Largest register the oracle simulates.
pub const MAX_ORACLE_QUBITS: u32 = 24;
/// Largest `2L` accepted by [`qpf_distribution_exact`].
pub const MAX_SHOR_QUBITS: u32 = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(qubits: u32, index: u64) -> Result<Self> {
        check_qubits(qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << qubits];
        let slot = amps
            .get_mut(index as usize)
            .ok_or(Error::Outcome { value: index, bits: qubits })?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Dimension { expected: len.next_power_of_two(), got: len });
        }
        let qubits = len.trailing_zeros();
        check_qubits(qubits)?;
        Ok(StateVector { qubits, amps })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply_h(&mut self, q: u32) {
        let bit = 1usize << q;
        let h = core::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a = self.amps[i];
                let b = self.amps[i | bit];
                self.amps[i] = (a + b) * h;
                self.amps[i | bit] = (a - b) * h;
            }
        }
    }

    /// `diag(1, 1, 1, e^{iθ})` on qubits `a`, `b` (symmetric in the two).
    pub fn apply_controlled_phase(&mut self, a: u32, b: u32, theta: f64) {
        let mask = (1usize << a) | (1usize << b);
        let phase = Complex64::cis(theta);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= phase;
            }
        }
    }

    pub fn reverse_qubits(&mut self) {
        let n = self.qubits;
        if n == 0 {
            return;
        }
        for i in 0..self.amps.len() {
            let j = i.reverse_bits() >> (usize::BITS - n);
            if i < j {
                self.amps.swap(i, j);
            }
        }
    }
}

fn check_qubits(qubits: u32) -> Result<()> {
    if qubits > MAX_ORACLE_QUBITS {
        return Err(Error::TooLarge { what: "state vector", bits: qubits, limit: MAX_ORACLE_QUBITS });
    }
    Ok(())
}

/// One gate of the AQFT circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AqftGate {
    H { qubit: u32 },
    /// Controlled rotation by `π/2^d + offset` between `control` and `target`.
    ControlledPhase { control: u32, target: u32, d: u32, offset: f64 },
    Reverse,
}

/// The AQFT gate list in application order.
pub fn aqft_circuit(spec: &AqftSpec, noise: Option<&NoiseAngles>) -> Result<Vec<AqftGate>> {
    spec.check_realisable()?;
    let n = spec.bits();
    let mut gates = Vec::new();
    for target in (0..n).rev() {
        gates.push(AqftGate::H { qubit: target });
        let out_bit = n - 1 - target;
        for control in (0..target).rev() {
            if spec.keeps(out_bit, control) {
                let offset = noise.map_or(0.0, |a| a.get(out_bit, control));
                gates.push(AqftGate::ControlledPhase { control, target, d: target - control, offset });
            }
        }
    }
    gates.push(AqftGate::Reverse);
    Ok(gates)
}

fn apply_gate(state: &mut StateVector, gate: AqftGate) {
    match gate {
        AqftGate::H { qubit } => state.apply_h(qubit),
        AqftGate::ControlledPhase { control, target, d, offset } => {
            state.apply_controlled_phase(control, target, PI / libm::ldexp(1.0, d as i32) + offset)
        }
        AqftGate::Reverse => state.reverse_qubits(),
    }
}

/// Runs the AQFT circuit on `state`.
pub fn apply_aqft_circuit(
    mut state: StateVector,
    spec: &AqftSpec,
    noise: Option<&NoiseAngles>,
) -> Result<StateVector> {
    if state.qubits != spec.bits() {
        return Err(Error::Dimension { expected: 1usize << spec.bits(), got: state.amps.len() });
    }
    for gate in aqft_circuit(spec, noise)? {
        apply_gate(&mut state, gate);
    }
    Ok(state)
}

/// Applies the transform `|k⟩ → 2^(−L) Σ_j e^{iφ(j,k)} |j⟩` as a dense matrix.
/// Quadratic in the dimension; a cross-check for small registers.
pub fn apply_aqft_matrix(state: &StateVector, spec: &AqftSpec) -> Result<StateVector> {
    if state.qubits != spec.bits() {
        return Err(Error::Dimension { expected: 1usize << spec.bits(), got: state.amps.len() });
    }
    let dim = state.amps.len();
    let scale = libm::ldexp(1.0, -(spec.l() as i32));
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (k, a) in state.amps.iter().enumerate() {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let phi = spec.units_to_radians(spec.phase_units(j as u64, k as u64));
            *o += *a * Complex64::cis(phi) * scale;
        }
    }
    StateVector::from_amplitudes(out)
}

/// The input register after measuring the function register:
/// `(√r / 2^L) Σ_{n<M} |k_0 + n·r⟩`, `M = ⌊2^(2L)/r⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicInput {
    pub l: u32,
    pub r: u64,
    pub k0: u64,
}

impl PeriodicInput {
    pub fn new(l: u32, r: u64, k0: u64) -> Result<Self> {
        if !(2..=MAX_ORACLE_QUBITS / 2).contains(&l) {
            return Err(Error::RegisterSize(l));
        }
        if r < 2 || r >= 1u64 << l {
            return Err(Error::Period { r, l });
        }
        if k0 >= r {
            return Err(Error::Domain("k0 must be smaller than r"));
        }
        Ok(PeriodicInput { l, r, k0 })
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        let terms = (1u64 << (2 * self.l)) / self.r;
        (0..terms).map(move |n| self.k0 + n * self.r)
    }

    pub fn state(&self) -> StateVector {
        let amp = libm::sqrt(self.r as f64) * libm::ldexp(1.0, -(self.l as i32));
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << (2 * self.l)];
        for k in self.support() {
            amps[k as usize] = Complex64::new(amp, 0.0);
        }
        StateVector { qubits: 2 * self.l, amps }
    }
}

/// Outcome distribution of the AQFT circuit applied to a periodic input.
pub fn aqft_on_periodic(input: &PeriodicInput, spec: &AqftSpec) -> Result<Distribution> {
    if input.l != spec.l() {
        return Err(Error::Dimension { expected: 1usize << spec.bits(), got: 1usize << (2 * input.l) });
    }
    let out = apply_aqft_circuit(input.state(), spec, None)?;
    Ok(Distribution { spec: *spec, r: input.r, probabilities: out.probabilities() })
}

/// Multiplicative order of `m` modulo `n` by iteration; `None` if not coprime.
pub fn multiplicative_order(m: u64, n: u64) -> Option<u64> {
    if n < 2 || m.gcd(&n) != 1 {
        return None;
    }
    let mut v = m % n;
    let mut r = 1;
    while v != 1 {
        v = ((u128::from(v) * u128::from(m)) % u128::from(n)) as u64;
        r += 1;
    }
    Some(r)
}

/// Exact outcome distribution of period finding for `f(k) = m^k mod N`.
///
/// The function register is traced out: each value `f` contributes the AQFT of
/// the uniform superposition over `{k : f(k) = f}` with amplitude `2^(−L)`.
pub fn qpf_distribution_exact(n: u64, m: u64, spec: &AqftSpec) -> Result<Distribution> {
    if spec.bits() > MAX_SHOR_QUBITS {
        return Err(Error::TooLarge { what: "exact period finding", bits: spec.bits(), limit: MAX_SHOR_QUBITS });
    }
    check_distribution_size(spec)?;
    if n < 3 || n >= 1u64 << spec.l() {
        return Err(Error::Instance(alloc::format!("N={n} does not fit in L={} bits", spec.l())));
    }
    if !(2..n).contains(&m) {
        return Err(Error::Instance(alloc::format!("base m={m} must satisfy 1 < m < N")));
    }
    let r = multiplicative_order(m, n).ok_or(Error::NotCoprime)?;

    let dim = spec.dimension() as usize;
    let amp = Complex64::new(libm::ldexp(1.0, -(spec.l() as i32)), 0.0);
    let mut probabilities = vec![0.0; dim];
    let circuit = aqft_circuit(spec, None)?;
    // f(k) depends only on k mod r, so branch k0 holds {k0, k0 + r, ...}.
    for k0 in 0..r.min(dim as u64) {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        let mut k = k0 as usize;
        while k < dim {
            amps[k] = amp;
            k += r as usize;
        }
        let mut state = StateVector { qubits: spec.bits(), amps };
        for &g in &circuit {
            apply_gate(&mut state, g);
        }
        for (p, a) in probabilities.iter_mut().zip(&state.amps) {
            *p += a.norm_sqr();
        }
    }
    Ok(Distribution { spec: *spec, r, probabilities })
}
