//! Meet-in-the-middle word length on Cayley graphs.
//!
//! The identity ball `B(R)` is grown breadth-first once and then shared,
//! read-only, by every query. A query for `g` grows the sphere layers of
//! `g * B(r)` and stops at the first layer `r` that meets `B(R)`; the
//! smallest `depth + r` among those hits is the exact word length.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{GroupBackend, Key};

/// Word length, or a cap was hit before a witness was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Complexity {
    Exact(u32),
    ExceedsCap,
}

impl Complexity {
    pub fn value(self) -> Option<u32> {
        match self {
            Complexity::Exact(c) => Some(c),
            Complexity::ExceedsCap => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SearchStats {
    pub ball_radius: usize,
    pub ball_size: usize,
    /// Layers of `g * B(r)` explored.
    pub target_radius: usize,
    /// Largest number of elements held by the target-side search.
    pub peak_elements: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplexityResult {
    pub complexity: Complexity,
    pub stats: SearchStats,
}

/// Identity-centred ball, complete up to [`radius`](Ball::radius).
#[derive(Debug, Clone)]
pub struct Ball<E> {
    depth: HashMap<Key, u32>,
    /// `layers[r]` holds the elements at distance exactly `r`.
    layers: Vec<Vec<E>>,
    memory_cap: usize,
    capped: bool,
}

impl<E: Clone + Send + Sync> Ball<E> {
    pub fn new<B: GroupBackend<Element = E>>(backend: &B, memory_cap: usize) -> Self {
        let id = backend.identity();
        let mut depth = HashMap::new();
        depth.insert(backend.key(&id), 0);
        Self {
            depth,
            layers: vec![vec![id]],
            memory_cap: memory_cap.max(1),
            capped: false,
        }
    }

    /// Grows the ball to `radius`, stopping early if the next sphere would
    /// push the element count past the memory cap. Returns whether the
    /// requested radius was reached.
    pub fn grow_to<B: GroupBackend<Element = E>>(&mut self, backend: &B, radius: usize) -> bool {
        while self.radius() < radius {
            if self.capped {
                return false;
            }
            let mut next_keys: HashMap<Key, usize> = HashMap::new();
            let mut next = Vec::new();
            for x in self.layers.last().expect("radius 0 layer") {
                for g in backend.generators() {
                    let y = backend.multiply(x, &g.element);
                    let key = backend.key(&y);
                    if self.depth.contains_key(&key) || next_keys.contains_key(&key) {
                        continue;
                    }
                    if self.depth.len() + next.len() >= self.memory_cap {
                        self.capped = true;
                        return false;
                    }
                    next_keys.insert(key, next.len());
                    next.push(y);
                }
            }
            let r = self.layers.len() as u32;
            self.depth.extend(next_keys.into_keys().map(|k| (k, r)));
            self.layers.push(next);
        }
        true
    }

    pub fn radius(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    pub fn depth_of(&self, key: &Key) -> Option<u32> {
        self.depth.get(key).copied()
    }

    pub fn layer(&self, r: usize) -> &[E] {
        &self.layers[r]
    }

    /// `|B(r)|` for `r = 0..=radius`.
    pub fn ball_sizes(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0, |acc, l| {
                *acc += l.len();
                Some(*acc)
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &E)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(r, l)| l.iter().map(move |x| (r, x)))
    }
}

/// Exact word length of `target`.
///
/// The ball is used up to `min(ball.radius(), radius_cap)`; the target side
/// explores at most `radius_cap` layers and `memory_cap` elements. A result
/// of [`Complexity::Exact`] is always the true word length.
pub fn exact_complexity<B: GroupBackend>(
    backend: &B,
    ball: &Ball<B::Element>,
    target: &B::Element,
    radius_cap: usize,
    memory_cap: usize,
) -> ComplexityResult {
    let inner = ball.radius().min(radius_cap) as u32;
    let mut stats = SearchStats {
        ball_radius: inner as usize,
        ball_size: ball.ball_sizes()[inner as usize],
        target_radius: 0,
        peak_elements: 1,
    };
    let lookup = |key: &Key| ball.depth_of(key).filter(|&d| d <= inner);

    let start_key = backend.key(target);
    if let Some(d) = lookup(&start_key) {
        return ComplexityResult {
            complexity: Complexity::Exact(d),
            stats,
        };
    }
    let mut seen: HashSet<Key> = HashSet::from([start_key]);
    let mut frontier = vec![target.clone()];
    for r in 1..=radius_cap {
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for x in &frontier {
            for g in backend.generators() {
                let y = backend.multiply(x, &g.element);
                let key = backend.key(&y);
                if seen.contains(&key) {
                    continue;
                }
                if let Some(d) = lookup(&key) {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
                if seen.len() >= memory_cap {
                    stats.target_radius = r;
                    return ComplexityResult {
                        complexity: Complexity::ExceedsCap,
                        stats,
                    };
                }
                seen.insert(key);
                next.push(y);
            }
        }
        stats.target_radius = r;
        stats.peak_elements = seen.len();
        if let Some(d) = best {
            return ComplexityResult {
                complexity: Complexity::Exact(d + r as u32),
                stats,
            };
        }
        frontier = next;
    }
    ComplexityResult {
        complexity: Complexity::ExceedsCap,
        stats,
    }
}
