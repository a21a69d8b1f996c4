//! Exact single-qubit Clifford+T arithmetic over `Z[omega] / sqrt(2)^k`,
//! `omega = exp(i pi / 4)`.
//!
//! A [`RingScalar`] is `(a + b omega + c omega^2 + d omega^3) / sqrt(2)^k` in
//! reduced form; reduced forms are unique, so structural equality is exact
//! equality. [`ExactUnitary`] is the canonical representative of a class of
//! 2x2 unitaries modulo the phases `omega^m`; [`PhasedUnitary`] keeps the
//! phase for computations in the unquotiented group.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Element of `Z[omega, 1/sqrt(2)]`.
///
/// Field order gives the derived ordering `(k, a, b, c, d)` used to pick
/// canonical phase representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingScalar {
    k: u32,
    coeffs: [BigInt; 4],
}

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `(omega - omega^3) * x`, i.e. multiplication of the numerator by sqrt(2).
fn times_sqrt2([a, b, c, d]: &[BigInt; 4]) -> [BigInt; 4] {
    [b - d, a + c, b + d, c - a]
}

impl RingScalar {
    /// `(a + b omega + c omega^2 + d omega^3) / sqrt(2)^k`, reduced.
    pub fn new(a: i64, b: i64, c: i64, d: i64, k: u32) -> Self {
        Self::from_parts([bi(a), bi(b), bi(c), bi(d)], k)
    }

    pub fn from_parts(coeffs: [BigInt; 4], k: u32) -> Self {
        let mut x = Self { k, coeffs };
        x.reduce_in_place();
        x
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0, 0, 0)
    }

    /// `omega^m`.
    pub fn omega_pow(m: i64) -> Self {
        Self::one().mul_omega(m)
    }

    /// `1 / sqrt(2)`.
    pub fn inv_sqrt2() -> Self {
        Self::new(1, 0, 0, 0, 1)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Numerator divisible by sqrt(2) in `Z[omega]`.
    pub fn numerator_divisible_by_sqrt2(&self) -> bool {
        let [a, b, c, d] = &self.coeffs;
        a.is_even() == c.is_even() && b.is_even() == d.is_even()
    }

    fn reduce_in_place(&mut self) {
        while self.k > 0 && self.numerator_divisible_by_sqrt2() {
            let two = bi(2);
            self.coeffs = times_sqrt2(&self.coeffs).map(|x| x / &two);
            self.k -= 1;
        }
        if self.is_zero() {
            self.k = 0;
        }
    }

    /// Canonical form; idempotent.
    pub fn reduce(&self) -> Self {
        let mut x = self.clone();
        x.reduce_in_place();
        x
    }

    /// Numerator rescaled to denominator exponent `k >= self.k`.
    fn numerator_at(&self, k: u32) -> [BigInt; 4] {
        let mut out = self.coeffs.clone();
        let mut gap = k - self.k;
        while gap >= 2 {
            out = out.map(|x| x * 2);
            gap -= 2;
        }
        if gap == 1 {
            out = times_sqrt2(&out);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        let (x, y) = (self.numerator_at(k), other.numerator_at(k));
        let [a0, a1, a2, a3] = x;
        let [b0, b1, b2, b3] = y;
        Self::from_parts([a0 + b0, a1 + b1, a2 + b2, a3 + b3], k)
    }

    pub fn neg(&self) -> Self {
        Self {
            k: self.k,
            coeffs: self.coeffs.clone().map(|x| -x),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let x = &self.coeffs;
        let y = &other.coeffs;
        let mut out: [BigInt; 4] = Default::default();
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if y[j].is_zero() {
                    continue;
                }
                let p = &x[i] * &y[j];
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        Self::from_parts(out, self.k + other.k)
    }

    /// Complex conjugate: `omega -> omega^7 = -omega^3`.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        Self {
            k: self.k,
            coeffs: [a.clone(), -d, -c, -b],
        }
    }

    /// `omega^m * self`; the reduced form is preserved.
    pub fn mul_omega(&self, m: i64) -> Self {
        let m = m.rem_euclid(8) as usize;
        let mut c = self.coeffs.clone();
        for _ in 0..m {
            let [a, b, cc, d] = c;
            c = [-d, a, b, cc];
        }
        Self {
            k: self.k,
            coeffs: c,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            acc += p * big_to_f64(c);
            p *= w;
        }
        acc / std::f64::consts::SQRT_2.powi(self.k as i32)
    }

    fn write_key(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.k.to_be_bytes());
        for c in &self.coeffs {
            let (sign, mag) = c.to_bytes_be();
            out.push(match sign {
                num_bigint::Sign::Minus => 0,
                num_bigint::Sign::NoSign => 1,
                num_bigint::Sign::Plus => 2,
            });
            out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
            out.extend_from_slice(&mag);
        }
    }

    /// `[a, b, c, d, k]` for the gate-set file format.
    pub fn to_array(&self) -> Option<[i64; 5]> {
        let conv = |x: &BigInt| i64::try_from(x).ok();
        Some([
            conv(&self.coeffs[0])?,
            conv(&self.coeffs[1])?,
            conv(&self.coeffs[2])?,
            conv(&self.coeffs[3])?,
            self.k as i64,
        ])
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "({a} + {b}w + {c}w^2 + {d}w^3)/sqrt2^{}", self.k)
    }
}

/// Exact 2x2 matrix, row-major `[u00, u01, u10, u11]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingMatrix(pub [RingScalar; 4]);

impl RingMatrix {
    pub fn identity() -> Self {
        Self([
            RingScalar::one(),
            RingScalar::zero(),
            RingScalar::zero(),
            RingScalar::one(),
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        Self([
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        ])
    }

    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Self([a.conj(), c.conj(), b.conj(), d.conj()])
    }

    pub fn mul_omega(&self, m: i64) -> Self {
        Self(self.0.clone().map(|x| x.mul_omega(m)))
    }

    /// `U^dagger U = I` as a ring identity.
    pub fn is_unitary(&self) -> bool {
        self.adjoint().mul(self) == Self::identity()
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_iterator(2, 2, [0, 2, 1, 3].map(|i| self.0[i].to_complex()))
    }

    /// Smallest of the eight phase multiples and the exponent `m` with
    /// `self = omega^m * canonical`.
    fn canonical_phase(&self) -> (RingMatrix, u8) {
        let (j, best) = (0..8)
            .map(|j| (j, self.mul_omega(j)))
            .min_by(|(_, x), (_, y)| x.cmp(y))
            .expect("eight candidates");
        (best, ((8 - j) % 8) as u8)
    }
}

/// Phase class of a 2x2 unitary modulo `omega^m`, stored as its canonical
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactUnitary(RingMatrix);

/// An exact unitary together with its phase: the matrix is
/// `omega^phase * class`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedUnitary {
    pub class: ExactUnitary,
    pub phase: u8,
}

impl ExactUnitary {
    /// Canonical class of a raw matrix. Unitarity is not checked.
    pub fn from_matrix(m: &RingMatrix) -> Self {
        Self(m.canonical_phase().0)
    }

    /// Canonical class of a raw matrix, rejecting non-unitary input.
    pub fn from_matrix_checked(m: &RingMatrix) -> Result<Self> {
        if !m.is_unitary() {
            return Err(Error::GateSet("matrix is not exactly unitary".into()));
        }
        Ok(Self::from_matrix(m))
    }

    pub fn identity() -> Self {
        Self::from_matrix(&RingMatrix::identity())
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.0
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_matrix(&self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Self {
        Self::from_matrix(&self.0.adjoint())
    }

    pub fn phase_equal(&self, other: &Self) -> bool {
        self == other
    }

    pub fn is_identity_class(&self) -> bool {
        *self == Self::identity()
    }

    /// Byte key, equal exactly for phase-equal unitaries.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(96);
        for x in &self.0 .0 {
            x.write_key(&mut out);
        }
        out
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        self.0.to_complex()
    }
}

impl PhasedUnitary {
    pub fn from_matrix(m: &RingMatrix) -> Self {
        let (canon, phase) = m.canonical_phase();
        Self {
            class: ExactUnitary(canon),
            phase,
        }
    }

    pub fn identity() -> Self {
        Self::from_matrix(&RingMatrix::identity())
    }

    pub fn matrix(&self) -> RingMatrix {
        self.class.0.mul_omega(self.phase as i64)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let prod = self.class.0.mul(&other.class.0);
        let (canon, phase) = prod.canonical_phase();
        Self {
            class: ExactUnitary(canon),
            phase: ((self.phase as u32 + other.phase as u32 + phase as u32) % 8) as u8,
        }
    }

    pub fn inverse(&self) -> Self {
        let (canon, phase) = self.class.0.adjoint().canonical_phase();
        Self {
            class: ExactUnitary(canon),
            phase: ((phase as u32 + 8 - self.phase as u32) % 8) as u8,
        }
    }

    pub fn key(&self) -> Vec<u8> {
        let mut out = self.class.canonical_key();
        out.push(self.phase);
        out
    }
}

/// A labeled gate of a [`GateSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGate {
    pub label: String,
    pub gate: PhasedUnitary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateSet {
    pub name: String,
    pub elements: Vec<LabeledGate>,
    pub closed_under_inverse: bool,
}

fn diag(a: RingScalar, d: RingScalar) -> RingMatrix {
    RingMatrix([a, RingScalar::zero(), RingScalar::zero(), d])
}

pub fn hadamard() -> RingMatrix {
    let h = RingScalar::inv_sqrt2();
    RingMatrix([h.clone(), h.clone(), h.clone(), h.neg()])
}

pub fn s_gate() -> RingMatrix {
    diag(RingScalar::one(), RingScalar::omega_pow(2))
}

pub fn s_dagger() -> RingMatrix {
    diag(RingScalar::one(), RingScalar::omega_pow(6))
}

pub fn t_gate() -> RingMatrix {
    diag(RingScalar::one(), RingScalar::omega_pow(1))
}

pub fn t_dagger() -> RingMatrix {
    diag(RingScalar::one(), RingScalar::omega_pow(7))
}

/// `{H, S, S^dagger, T, T^dagger}`.
pub fn clifford_t_gateset() -> GateSet {
    let gates = [
        ("H", hadamard()),
        ("S", s_gate()),
        ("Sdg", s_dagger()),
        ("T", t_gate()),
        ("Tdg", t_dagger()),
    ];
    GateSet {
        name: "clifford_t".into(),
        elements: gates
            .into_iter()
            .map(|(label, m)| LabeledGate {
                label: label.into(),
                gate: PhasedUnitary::from_matrix(&m),
            })
            .collect(),
        closed_under_inverse: true,
    }
}

/// On-disk gate: label and a 2x2 matrix of `[a, b, c, d, k]` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateRecord {
    pub label: String,
    pub matrix: [[[i64; 5]; 2]; 2],
}

fn record_matrix(rec: &GateRecord) -> Result<RingMatrix> {
    let entry = |e: [i64; 5]| -> Result<RingScalar> {
        let k = u32::try_from(e[4]).map_err(|_| {
            Error::GateSet(format!("gate {}: negative denominator exponent", rec.label))
        })?;
        Ok(RingScalar::new(e[0], e[1], e[2], e[3], k))
    };
    let [[a, b], [c, d]] = rec.matrix;
    Ok(RingMatrix([entry(a)?, entry(b)?, entry(c)?, entry(d)?]))
}

/// Problems with a list of gate records; empty means the list is a valid
/// inverse-closed gate set.
pub fn gate_set_findings(records: &[GateRecord]) -> Vec<String> {
    let mut findings = Vec::new();
    if records.is_empty() {
        findings.push("gate set is empty".to_string());
        return findings;
    }
    let mut classes = Vec::new();
    for rec in records {
        match record_matrix(rec) {
            Err(e) => findings.push(e.to_string()),
            Ok(m) if !m.is_unitary() => {
                findings.push(format!("gate {}: not exactly unitary", rec.label))
            }
            Ok(m) => classes.push((rec.label.clone(), ExactUnitary::from_matrix(&m))),
        }
    }
    if classes.len() != records.len() {
        return findings;
    }
    for (i, (la, a)) in classes.iter().enumerate() {
        if a.is_identity_class() {
            findings.push(format!("gate {la}: identity class is not a generator"));
        }
        for (lb, b) in &classes[i + 1..] {
            if a.phase_equal(b) {
                findings.push(format!("gates {la} and {lb} are phase-equal"));
            }
        }
        let inv = a.inverse();
        if !classes.iter().any(|(_, b)| b.phase_equal(&inv)) {
            findings.push(format!(
                "gate set not inverse-closed: missing inverse of {la}"
            ));
        }
    }
    findings
}

impl GateSet {
    pub fn from_records(name: impl Into<String>, records: &[GateRecord]) -> Result<Self> {
        let findings = gate_set_findings(records);
        if !findings.is_empty() {
            return Err(Error::GateSet(findings.join("; ")));
        }
        let elements = records
            .iter()
            .map(|rec| {
                Ok(LabeledGate {
                    label: rec.label.clone(),
                    gate: PhasedUnitary::from_matrix(&record_matrix(rec)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: name.into(),
            elements,
            closed_under_inverse: true,
        })
    }

    /// Parses the JSON list-of-gates format.
    pub fn from_json_str(name: impl Into<String>, text: &str) -> Result<Self> {
        let records: Vec<GateRecord> = serde_json::from_str(text)?;
        Self::from_records(name, &records)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "gateset".into());
        Self::from_json_str(name, &std::fs::read_to_string(path)?)
    }

    pub fn to_records(&self) -> Vec<GateRecord> {
        self.elements
            .iter()
            .map(|g| {
                let m = g.gate.matrix();
                let e = |i: usize| m.0[i].to_array().expect("small gate entries");
                GateRecord {
                    label: g.label.clone(),
                    matrix: [[e(0), e(1)], [e(2), e(3)]],
                }
            })
            .collect()
    }

    /// Closed under exact inverses, not just inverses up to phase.
    pub fn exactly_inverse_closed(&self) -> bool {
        self.elements.iter().all(|g| {
            let inv = g.gate.inverse();
            self.elements.iter().any(|h| h.gate == inv)
        })
    }
}
