use crate::error::{Error, Result};
use crate::exact::{clifford_t_gateset, GateSet, PhasedUnitary, RingMatrix};

use super::{check_generators, Generator, GroupBackend, Key};

/// `Z^d` with generators `+e_i, -e_i`.
#[derive(Debug, Clone)]
pub struct LatticeBackend {
    d: usize,
    gens: Vec<Generator<Vec<i64>>>,
}

impl LatticeBackend {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "lattice dimension must be >= 1".into(),
            ));
        }
        let mut gens = Vec::with_capacity(2 * d);
        for i in 0..d {
            for sign in [1i64, -1] {
                let mut e = vec![0; d];
                e[i] = sign;
                gens.push(Generator {
                    label: format!("{}e{i}", if sign > 0 { '+' } else { '-' }),
                    element: e,
                });
            }
        }
        Ok(Self { d, gens })
    }

    pub fn dim(&self) -> usize {
        self.d
    }
}

impl GroupBackend for LatticeBackend {
    type Element = Vec<i64>;

    fn id(&self) -> String {
        format!("lattice{}", self.d)
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.d]
    }

    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn key(&self, a: &Vec<i64>) -> Key {
        a.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    fn generators(&self) -> &[Generator<Vec<i64>>] {
        &self.gens
    }
}

/// Permutations of `0..m`; an element `p` maps `i -> p[i]` and the product
/// `a * b` applies `b` first.
#[derive(Debug, Clone)]
pub struct PermutationBackend {
    m: usize,
    gens: Vec<Generator<Vec<u16>>>,
}

impl PermutationBackend {
    pub fn new(m: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(
                "permutation backend needs m >= 2".into(),
            ));
        }
        if m > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("m = {m} too large")));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (idx, g) in generators.into_iter().enumerate() {
            let mut seen = vec![false; m];
            if g.len() != m
                || g.iter()
                    .any(|&x| x >= m || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::Generators(format!(
                    "generator {idx} is not a permutation of 0..{m}"
                )));
            }
            gens.push(Generator {
                label: cycle_label(&g),
                element: g.into_iter().map(|x| x as u16).collect(),
            });
        }
        let backend = Self { m, gens };
        check_generators(&backend)?;
        Ok(backend)
    }

    /// Adjacent transpositions `(i i+1)`.
    pub fn adjacent_transpositions(m: usize) -> Result<Self> {
        let gens = (0..m.saturating_sub(1))
            .map(|i| {
                let mut p: Vec<usize> = (0..m).collect();
                p.swap(i, i + 1);
                p
            })
            .collect();
        Self::new(m, gens)
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Element from an image list.
    pub fn element(&self, images: &[usize]) -> Vec<u16> {
        images.iter().map(|&x| x as u16).collect()
    }
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

impl GroupBackend for PermutationBackend {
    type Element = Vec<u16>;

    fn id(&self) -> String {
        format!("perm{}", self.m)
    }

    fn identity(&self) -> Vec<u16> {
        (0..self.m as u16).collect()
    }

    fn multiply(&self, a: &Vec<u16>, b: &Vec<u16>) -> Vec<u16> {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    fn inverse(&self, a: &Vec<u16>) -> Vec<u16> {
        let mut out = vec![0u16; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        out
    }

    fn key(&self, a: &Vec<u16>) -> Key {
        a.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    fn generators(&self) -> &[Generator<Vec<u16>>] {
        &self.gens
    }
}

/// Single-qubit exact gates. With `projective` set (the default), elements
/// are compared up to the phases `omega^m`; otherwise in `U(2)` itself.
#[derive(Debug, Clone)]
pub struct CliffordTBackend {
    name: String,
    projective: bool,
    gens: Vec<Generator<PhasedUnitary>>,
}

impl CliffordTBackend {
    /// `{H, S, S^dagger, T, T^dagger}`, projective.
    pub fn new() -> Self {
        Self::from_gate_set(&clifford_t_gateset(), true).expect("standard gate set is valid")
    }

    pub fn from_gate_set(set: &GateSet, projective: bool) -> Result<Self> {
        if !projective && !set.exactly_inverse_closed() {
            return Err(Error::Generators(format!(
                "gate set {} is not closed under exact inverses",
                set.name
            )));
        }
        let backend = Self {
            name: set.name.clone(),
            projective,
            gens: set
                .elements
                .iter()
                .map(|g| Generator {
                    label: g.label.clone(),
                    element: g.gate.clone(),
                })
                .collect(),
        };
        check_generators(&backend)?;
        Ok(backend)
    }

    pub fn projective(&self) -> bool {
        self.projective
    }
}

impl Default for CliffordTBackend {
    fn default() -> Self {
        Self::new()
    }
}

impl GroupBackend for CliffordTBackend {
    type Element = PhasedUnitary;

    fn id(&self) -> String {
        if self.projective {
            self.name.clone()
        } else {
            format!("{}_u2", self.name)
        }
    }

    fn identity(&self) -> PhasedUnitary {
        PhasedUnitary::identity()
    }

    fn multiply(&self, a: &PhasedUnitary, b: &PhasedUnitary) -> PhasedUnitary {
        a.multiply(b)
    }

    fn inverse(&self, a: &PhasedUnitary) -> PhasedUnitary {
        a.inverse()
    }

    fn key(&self, a: &PhasedUnitary) -> Key {
        if self.projective {
            a.class.canonical_key()
        } else {
            a.key()
        }
    }

    fn generators(&self) -> &[Generator<PhasedUnitary>] {
        &self.gens
    }

    fn word_product(&self, word: &[usize]) -> PhasedUnitary {
        // raw products, canonicalized once
        let raw = word.iter().fold(RingMatrix::identity(), |acc, &i| {
            acc.mul(&self.gens[i].element.matrix())
        });
        PhasedUnitary::from_matrix(&raw)
    }
}
