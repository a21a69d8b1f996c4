//! Block architectures and the construction map from gate tuples to
//! n-qubit unitaries.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{embed_two_qubit, haar_random_su, identity, unitarity_defect, ComplexMatrix};

/// Tolerance for the unitarity and determinant checks on circuit gates.
pub const GATE_TOL: f64 = 1e-9;

/// A fixed arrangement of two-qubit gate slots on `n` qubits.
///
/// Serialized as `{"n": 3, "name": "brickwork3", "slots": [[0,1],[1,2]]}`;
/// slot order is significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArchitecture", into = "RawArchitecture")]
pub struct BlockArchitecture {
    n: usize,
    name: String,
    slots: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawArchitecture {
    n: usize,
    name: String,
    slots: Vec<[usize; 2]>,
}

impl TryFrom<RawArchitecture> for BlockArchitecture {
    type Error = Error;

    fn try_from(raw: RawArchitecture) -> Result<Self> {
        BlockArchitecture::new(
            raw.n,
            raw.name,
            raw.slots.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

impl From<BlockArchitecture> for RawArchitecture {
    fn from(arch: BlockArchitecture) -> Self {
        RawArchitecture {
            n: arch.n,
            name: arch.name,
            slots: arch.slots.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// Result of the SWAP-routing universality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Universality {
    /// One block realizes any two-qubit gate on any pair.
    Universal,
    /// The sufficient criterion does not apply; undecided.
    Unknown,
}

/// Problems found in an architecture description. Empty means well-formed.
pub fn architecture_findings(n: usize, slots: &[(usize, usize)]) -> Vec<String> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(format!("architecture needs n >= 2 qubits, got {n}"));
    }
    if slots.is_empty() {
        out.push("architecture needs at least one slot".to_string());
    }
    for (idx, &(a, b)) in slots.iter().enumerate() {
        if a == b {
            out.push(format!("slot {idx} ({a},{b}): slot indices must differ"));
        }
        if a >= n || b >= n {
            out.push(format!(
                "slot {idx} ({a},{b}): qubit index out of range for n={n}"
            ));
        }
    }
    out
}

impl BlockArchitecture {
    pub fn new(n: usize, name: impl Into<String>, slots: Vec<(usize, usize)>) -> Result<Self> {
        let findings = architecture_findings(n, &slots);
        if !findings.is_empty() {
            return Err(Error::Architecture(findings.join("; ")));
        }
        Ok(Self {
            n,
            name: name.into(),
            slots,
        })
    }

    /// Even layer `(0,1), (2,3), ...` followed by odd layer `(1,2), (3,4), ...`.
    pub fn brickwork(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Architecture(format!(
                "brickwork needs n >= 2, got {n}"
            )));
        }
        let slots = (0..n - 1)
            .step_by(2)
            .chain((1..n - 1).step_by(2))
            .map(|i| (i, i + 1))
            .collect();
        Self::new(n, format!("brickwork{n}"), slots)
    }

    /// One gate on qubits `(0, 1)`.
    pub fn single_slot(n: usize) -> Result<Self> {
        Self::new(n, format!("single{n}"), vec![(0, 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    /// `|B|`.
    pub fn block_size(&self) -> usize {
        self.slots.len()
    }

    /// `2^{2n} - 1`.
    pub fn target_dimension(&self) -> usize {
        (1usize << (2 * self.n)) - 1
    }

    /// Undirected edges between qubits, deduplicated.
    pub fn connectivity(&self) -> BTreeSet<(usize, usize)> {
        self.slots
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let edges = self.connectivity();
        while let Some(q) = stack.pop() {
            for &(a, b) in &edges {
                let other = if a == q {
                    b
                } else if b == q {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Sufficient SWAP-routing criterion for "one block contains every
    /// two-qubit gate".
    ///
    /// For a target pair `(a, b)` pick a path `a = p_0, ..., p_m = b` in the
    /// connectivity graph. Using slots on the path in order as SWAPs moves
    /// `a` next to `b`; one slot on the final edge applies the target gate;
    /// the same number of slots afterwards routes back. So the block is
    /// universal when, for every pair, some path admits slot indices
    /// `s_1 < ... < s_{m-1} < t < s'_{m-1} < ... < s'_1` with `s_i` on edge
    /// `(p_{i-1}, p_i)`, `t` on `(p_{m-1}, p_m)` and `s'_i` on edge
    /// `(p_{i-1}, p_i)` again. Other slots are set to the identity.
    pub fn universal_block(&self) -> Universality {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if !self.routable(a, b) && !self.routable(b, a) {
                    return Universality::Unknown;
                }
            }
        }
        Universality::Universal
    }

    fn routable(&self, a: usize, b: usize) -> bool {
        // DFS over simple paths from a to b; n is small.
        let mut path = vec![a];
        self.search_paths(b, &mut path)
    }

    fn search_paths(&self, target: usize, path: &mut Vec<usize>) -> bool {
        let last = *path.last().unwrap();
        if last == target {
            return self.path_schedulable(path);
        }
        let neighbours: BTreeSet<usize> = self
            .connectivity()
            .into_iter()
            .filter_map(|(x, y)| {
                if x == last {
                    Some(y)
                } else if y == last {
                    Some(x)
                } else {
                    None
                }
            })
            .collect();
        for nb in neighbours {
            if path.contains(&nb) {
                continue;
            }
            path.push(nb);
            if self.search_paths(target, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    fn path_schedulable(&self, path: &[usize]) -> bool {
        let edge = |i: usize| (path[i].min(path[i + 1]), path[i].max(path[i + 1]));
        let on_edge = |slot: usize, e: (usize, usize)| {
            let (x, y) = self.slots[slot];
            (x.min(y), x.max(y)) == e
        };
        let m = path.len() - 1;
        let mut sequence: Vec<(usize, usize)> = (0..m).map(edge).collect();
        sequence.extend((0..m - 1).rev().map(edge));
        // Greedy earliest matching of the edge sequence as a subsequence.
        let mut next = 0;
        for e in sequence {
            match (next..self.slots.len()).find(|&s| on_edge(s, e)) {
                Some(s) => next = s + 1,
                None => return false,
            }
        }
        true
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("architecture serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// A point `x in SU(4)^{k|B|}`: `k` blocks worth of gates, block-major.
#[derive(Debug, Clone)]
pub struct CircuitPoint {
    arch: Arc<BlockArchitecture>,
    k: usize,
    gates: Vec<ComplexMatrix>,
}

impl CircuitPoint {
    pub fn new(arch: Arc<BlockArchitecture>, k: usize, gates: Vec<ComplexMatrix>) -> Result<Self> {
        let want = k * arch.block_size();
        if gates.len() != want {
            return Err(Error::CircuitPoint(format!(
                "expected {want} gates for k={k}, got {}",
                gates.len()
            )));
        }
        for (m, g) in gates.iter().enumerate() {
            if g.shape() != (4, 4) {
                return Err(Error::CircuitPoint(format!("gate {m} is not 4x4")));
            }
            let defect = unitarity_defect(g);
            if defect > GATE_TOL {
                return Err(Error::CircuitPoint(format!(
                    "gate {m} not unitary (defect {defect:.3e})"
                )));
            }
            let det = g.determinant();
            if (det - Complex64::new(1.0, 0.0)).norm() > GATE_TOL {
                return Err(Error::CircuitPoint(format!(
                    "gate {m} has determinant {det}, expected 1"
                )));
            }
        }
        Ok(Self { arch, k, gates })
    }

    /// Every gate is `I_4`.
    pub fn identity(arch: Arc<BlockArchitecture>, k: usize) -> Self {
        let gates = vec![identity(4); k * arch.block_size()];
        Self { arch, k, gates }
    }

    pub fn arch(&self) -> &Arc<BlockArchitecture> {
        &self.arch
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gates(&self) -> &[ComplexMatrix] {
        &self.gates
    }

    /// Slot of gate `m`.
    pub fn slot(&self, m: usize) -> (usize, usize) {
        self.arch.slots()[m % self.arch.block_size()]
    }

    /// Gate `m` embedded into the full register.
    pub fn embedded_gate(&self, m: usize) -> ComplexMatrix {
        embed_two_qubit(&self.gates[m], self.slot(m), self.arch.n()).expect("validated slot")
    }

    /// Copy with gate `m` replaced. The replacement is not re-validated.
    pub fn with_gate(&self, m: usize, gate: ComplexMatrix) -> Self {
        let mut out = self.clone();
        out.gates[m] = gate;
        out
    }

    /// `self` followed by `later` (which must share the architecture).
    pub fn then(&self, later: &CircuitPoint) -> Result<Self> {
        if self.arch != later.arch {
            return Err(Error::CircuitPoint("architectures differ".into()));
        }
        let mut gates = self.gates.clone();
        gates.extend(later.gates.iter().cloned());
        Ok(Self {
            arch: Arc::clone(&self.arch),
            k: self.k + later.k,
            gates,
        })
    }

    /// First `k` blocks.
    pub fn prefix(&self, k: usize) -> Self {
        let k = k.min(self.k);
        Self {
            arch: Arc::clone(&self.arch),
            k,
            gates: self.gates[..k * self.arch.block_size()].to_vec(),
        }
    }
}

/// `k|B|` independent Haar gates.
pub fn sample_point<R: Rng + ?Sized>(
    arch: &Arc<BlockArchitecture>,
    k: usize,
    rng: &mut R,
) -> CircuitPoint {
    let gates = (0..k * arch.block_size())
        .map(|_| haar_random_su(4, rng).expect("d = 4"))
        .collect();
    CircuitPoint {
        arch: Arc::clone(arch),
        k,
        gates,
    }
}

/// The construction map: product of the embedded gates, earlier gates
/// acting first (the first gate is the rightmost factor).
pub fn construct(point: &CircuitPoint) -> ComplexMatrix {
    let dim = 1usize << point.arch.n();
    (0..point.gates.len()).fold(identity(dim), |acc, m| point.embedded_gate(m) * acc)
}
