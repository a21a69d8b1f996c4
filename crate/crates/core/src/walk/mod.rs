//! Random walks `g_k = h_1 h_2 ... h_k` on finitely generated groups and the
//! exact word-length complexity of their endpoints.

mod backends;
mod estimate;
mod search;

pub use backends::{CliffordTBackend, LatticeBackend, PermutationBackend};
pub use estimate::{
    exact_return_probability, kingman_estimate, return_probability, GrowthEstimate, KEstimate,
    ReturnEstimate, RETURN_CSV_HEADER, WALK_CSV_HEADER,
};
pub use search::{exact_complexity, Ball, Complexity, ComplexityResult, SearchStats};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::stream_rng;

/// Injective byte encoding of a group element.
pub type Key = Vec<u8>;

#[derive(Debug, Clone, PartialEq)]
pub struct Generator<E> {
    pub label: String,
    pub element: E,
}

/// A group presented by an inverse-closed generator list.
///
/// Products are read left to right: the word `h_1 h_2 ... h_k` is the
/// element `multiply(multiply(h_1, h_2), ...)`.
pub trait GroupBackend: Sync + Send {
    type Element: Clone + Send + Sync;

    /// Short name used in artifacts.
    fn id(&self) -> String;

    fn identity(&self) -> Self::Element;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn inverse(&self, a: &Self::Element) -> Self::Element;

    /// Equal keys iff equal elements.
    fn key(&self, a: &Self::Element) -> Key;

    fn generators(&self) -> &[Generator<Self::Element>];

    /// Product of a word of generator indices.
    fn word_product(&self, word: &[usize]) -> Self::Element {
        let gens = self.generators();
        word.iter().fold(self.identity(), |acc, &i| {
            self.multiply(&acc, &gens[i].element)
        })
    }

    fn is_identity(&self, a: &Self::Element) -> bool {
        self.key(a) == self.key(&self.identity())
    }
}

/// Checks that the generator list is inverse-closed and identity-free.
pub fn generator_findings<B: GroupBackend + ?Sized>(backend: &B) -> Vec<String> {
    let mut out = Vec::new();
    let gens = backend.generators();
    if gens.is_empty() {
        out.push("generator list is empty".to_string());
    }
    let keys: Vec<Key> = gens.iter().map(|g| backend.key(&g.element)).collect();
    for (g, key) in gens.iter().zip(&keys) {
        if backend.is_identity(&g.element) {
            out.push(format!("generator {} is the identity", g.label));
        }
        let inv = backend.key(&backend.inverse(&g.element));
        if !keys.contains(&inv) {
            out.push(format!(
                "generators not inverse-closed: missing inverse of {}",
                g.label
            ));
        }
        if keys.iter().filter(|k| *k == key).count() > 1 {
            out.push(format!("generator {} is listed twice", g.label));
        }
    }
    out
}

pub(crate) fn check_generators<B: GroupBackend + ?Sized>(backend: &B) -> Result<()> {
    let findings = generator_findings(backend);
    if findings.is_empty() {
        Ok(())
    } else {
        Err(Error::Generators(findings.join("; ")))
    }
}

/// Verifies associativity, inverses and identity on random word triples.
pub fn check_group_axioms<B: GroupBackend>(backend: &B, samples: usize, seed: u64) -> Result<()> {
    let mut rng = stream_rng(seed, 0);
    let n = backend.generators().len();
    for _ in 0..samples {
        let mut draw = || {
            let len = rng.random_range(0..8);
            let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..n)).collect();
            backend.word_product(&w)
        };
        let (a, b, c) = (draw(), draw(), draw());
        let left = backend.multiply(&backend.multiply(&a, &b), &c);
        let right = backend.multiply(&a, &backend.multiply(&b, &c));
        if backend.key(&left) != backend.key(&right) {
            return Err(Error::Generators("associativity fails".into()));
        }
        if !backend.is_identity(&backend.multiply(&a, &backend.inverse(&a))) {
            return Err(Error::Generators("inverse fails".into()));
        }
        if backend.key(&backend.multiply(&backend.identity(), &a)) != backend.key(&a) {
            return Err(Error::Generators("identity fails".into()));
        }
    }
    Ok(())
}

/// A uniformly random word and its product.
#[derive(Debug, Clone)]
pub struct RandomWord<E> {
    pub word: Vec<usize>,
    pub element: E,
}

/// `h_1 ... h_k` with each `h_i` uniform over the generators.
pub fn random_word<B: GroupBackend, R: Rng + ?Sized>(
    backend: &B,
    k: usize,
    rng: &mut R,
) -> RandomWord<B::Element> {
    let n = backend.generators().len();
    let word: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
    let element = backend.word_product(&word);
    RandomWord { word, element }
}

/// One sampled walk with its exact complexity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkRecord {
    pub backend: String,
    pub k: usize,
    pub trial: usize,
    pub word: Vec<String>,
    pub element_key: String,
    pub complexity: Complexity,
    pub stats: SearchStats,
    pub seed: u64,
}

impl WalkRecord {
    pub fn csv_row(&self) -> String {
        let (value, censored) = match self.complexity {
            Complexity::Exact(c) => (c.to_string(), false),
            Complexity::ExceedsCap => (String::new(), true),
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.backend,
            self.k,
            self.trial,
            value,
            censored,
            self.stats.ball_radius,
            self.stats.ball_size,
            self.seed
        )
    }
}
