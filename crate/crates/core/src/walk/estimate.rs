//! Kingman-rate and return-probability estimators.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, stream_id, stream_rng};

use super::search::{exact_complexity, Ball, Complexity};
use super::{random_word, GroupBackend, WalkRecord};

pub const WALK_CSV_HEADER: &str = "backend,k,trial,complexity,censored,ball_radius,ball_size,seed";
pub const RETURN_CSV_HEADER: &str =
    "backend,two_k,trials,returns,probability,rho_estimate,upper_bound,seed";

/// Stream tag for return-probability walks, kept apart from the Kingman
/// streams `(k, trial)`.
const RETURN_TAG: u64 = 1 << 30;

/// Mean and standard error of `C(g_k) / k` at one `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KEstimate {
    pub k: usize,
    /// `None` when every trial was censored (or `k = 0`).
    pub mean_ratio: Option<f64>,
    pub stderr: Option<f64>,
    pub trials: usize,
    pub censored_count: usize,
}

impl KEstimate {
    pub fn uncensored(&self) -> usize {
        self.trials - self.censored_count
    }

    pub fn all_censored(&self) -> bool {
        self.censored_count == self.trials
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub backend: String,
    pub entries: Vec<KEstimate>,
    pub radius_cap: usize,
    pub ball_radius: usize,
    pub ball_size: usize,
    pub seed: u64,
}

impl GrowthEstimate {
    pub fn total_censored(&self) -> usize {
        self.entries.iter().map(|e| e.censored_count).sum()
    }

    pub fn total_trials(&self) -> usize {
        self.entries.iter().map(|e| e.trials).sum()
    }
}

fn mean_and_stderr(xs: &[f64]) -> (Option<f64>, Option<f64>) {
    if xs.is_empty() {
        return (None, None);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (Some(mean), Some(0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (Some(mean), Some((var / n).sqrt()))
}

/// Samples `trials` words per `k` and computes their exact complexity.
///
/// The identity ball is built once to `radius_cap` (or as far as
/// `memory_cap` allows) and shared by every query, so complexities up to
/// `2 * radius_cap` are resolved. Trial `t` at length `k` draws from stream
/// `(k, t)` of `seed`. Censored trials are counted and left out of the means.
pub fn kingman_estimate<B: GroupBackend>(
    backend: &B,
    k_list: &[usize],
    trials: usize,
    radius_cap: usize,
    memory_cap: usize,
    seed: u64,
) -> Result<(GrowthEstimate, Vec<WalkRecord>)> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if k_list.is_empty() {
        return Err(Error::InvalidArgument("k list must be nonempty".into()));
    }
    if radius_cap == 0 || memory_cap == 0 {
        return Err(Error::InvalidArgument("caps must be positive".into()));
    }
    let mut ball = Ball::new(backend, memory_cap);
    ball.grow_to(backend, radius_cap);
    let labels: Vec<&str> = backend
        .generators()
        .iter()
        .map(|g| g.label.as_str())
        .collect();
    let id = backend.id();

    let mut entries = Vec::with_capacity(k_list.len());
    let mut records = Vec::with_capacity(k_list.len() * trials);
    for &k in k_list {
        let batch: Vec<WalkRecord> = map_indexed(trials, |t| {
            let mut rng = stream_rng(seed, stream_id(k as u64, t as u64));
            let w = random_word(backend, k, &mut rng);
            let res = exact_complexity(backend, &ball, &w.element, radius_cap, memory_cap);
            WalkRecord {
                backend: id.clone(),
                k,
                trial: t,
                word: w.word.iter().map(|&i| labels[i].to_string()).collect(),
                element_key: hex::encode(backend.key(&w.element)),
                complexity: res.complexity,
                stats: res.stats,
                seed,
            }
        });
        let ratios: Vec<f64> = if k == 0 {
            Vec::new()
        } else {
            batch
                .iter()
                .filter_map(|r| r.complexity.value())
                .map(|c| c as f64 / k as f64)
                .collect()
        };
        let censored_count = batch
            .iter()
            .filter(|r| r.complexity == Complexity::ExceedsCap)
            .count();
        let (mean_ratio, stderr) = mean_and_stderr(&ratios);
        entries.push(KEstimate {
            k,
            mean_ratio,
            stderr,
            trials,
            censored_count,
        });
        records.extend(batch);
    }
    let sizes = ball.ball_sizes();
    Ok((
        GrowthEstimate {
            backend: id,
            entries,
            radius_cap,
            ball_radius: ball.radius(),
            ball_size: *sizes.last().unwrap(),
            seed,
        },
        records,
    ))
}

/// Monte-Carlo estimate of `Prob(g_{2k} = id)^{1/(2k)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnEstimate {
    pub k: usize,
    pub two_k: usize,
    pub trials: usize,
    pub returns: usize,
    pub probability: f64,
    /// With no returns this is `(1 / trials)^{1/(2k)}`, an upper bound.
    pub rho_estimate: f64,
    pub upper_bound: bool,
}

impl ReturnEstimate {
    pub fn csv_row(&self, backend: &str, seed: u64) -> String {
        format!(
            "{},{},{},{},{:.12e},{:.12},{},{}",
            backend,
            self.two_k,
            self.trials,
            self.returns,
            self.probability,
            self.rho_estimate,
            self.upper_bound,
            seed
        )
    }
}

/// Walks of length `2k` for each `k`; counts returns to the identity (up to
/// phase for projective backends).
pub fn return_probability<B: GroupBackend>(
    backend: &B,
    k_list: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<ReturnEstimate>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if k_list.is_empty() || k_list.contains(&0) {
        return Err(Error::InvalidArgument(
            "k list must be nonempty and positive".into(),
        ));
    }
    let id_key = backend.key(&backend.identity());
    Ok(k_list
        .iter()
        .map(|&k| {
            let two_k = 2 * k;
            let hits = map_indexed(trials, |t| {
                let mut rng = stream_rng(seed, stream_id(RETURN_TAG | two_k as u64, t as u64));
                let w = random_word(backend, two_k, &mut rng);
                backend.key(&w.element) == id_key
            });
            let returns = hits.into_iter().filter(|&h| h).count();
            let probability = returns as f64 / trials as f64;
            let upper_bound = returns == 0;
            let base = if upper_bound {
                1.0 / trials as f64
            } else {
                probability
            };
            ReturnEstimate {
                k,
                two_k,
                trials,
                returns,
                probability,
                rho_estimate: base.powf(1.0 / two_k as f64),
                upper_bound,
            }
        })
        .collect())
}

/// Exact `Prob(g_{2k} = id)` by dynamic programming over the ball of
/// radius `k`: the walk after `k` steps has distribution `p` on `B(k)` and
/// returns at step `2k` with probability `sum_g p(g) p(g^{-1})` (the step
/// measure is uniform on an inverse-closed set, hence symmetric).
///
/// Fails if the ball of radius `k` exceeds `max_elements`.
pub fn exact_return_probability<B: GroupBackend>(
    backend: &B,
    k: usize,
    max_elements: usize,
) -> Result<f64> {
    let gens = backend.generators();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut elements = vec![backend.identity()];
    index.insert(backend.key(&elements[0]), 0);
    // transitions[i][s] = index of elements[i] * gens[s], if enumerated
    let mut transitions: Vec<Vec<Option<usize>>> = Vec::new();
    let mut frontier = vec![0usize];
    for _ in 0..k {
        let mut next = Vec::new();
        for &i in &frontier {
            let mut row = Vec::with_capacity(gens.len());
            for g in gens {
                let y = backend.multiply(&elements[i], &g.element);
                let key = backend.key(&y);
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= max_elements {
                            return Err(Error::InvalidArgument(format!(
                                "ball of radius {k} exceeds {max_elements} elements"
                            )));
                        }
                        index.insert(key, elements.len());
                        elements.push(y);
                        next.push(elements.len() - 1);
                        elements.len() - 1
                    }
                };
                row.push(Some(j));
            }
            if transitions.len() <= i {
                transitions.resize(i + 1, Vec::new());
            }
            transitions[i] = row;
        }
        frontier = next;
    }
    transitions.resize(elements.len(), Vec::new());

    let step = 1.0 / gens.len() as f64;
    let mut p = vec![0.0; elements.len()];
    p[0] = 1.0;
    for _ in 0..k {
        let mut q = vec![0.0; elements.len()];
        for (i, &mass) in p.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for t in &transitions[i] {
                q[t.expect("walk stays inside the ball")] += mass * step;
            }
        }
        p = q;
    }
    let mut total = 0.0;
    for (i, &mass) in p.iter().enumerate() {
        if mass == 0.0 {
            continue;
        }
        let inv = index[&backend.key(&backend.inverse(&elements[i]))];
        total += mass * p[inv];
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{CliffordTBackend, LatticeBackend, PermutationBackend};

    fn binomial_return(two_k: u64) -> f64 {
        // C(2k, k) / 2^{2k} via a running product
        (1..=two_k / 2).fold(1.0, |acc, i| {
            acc * (two_k / 2 + i) as f64 / (4.0 * i as f64)
        })
    }

    #[test]
    fn exact_dp_matches_binomial_on_z() {
        let z1 = LatticeBackend::new(1).unwrap();
        for k in [1usize, 5, 50, 100] {
            let p = exact_return_probability(&z1, k, 10_000).unwrap();
            assert!((p - binomial_return(2 * k as u64)).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn exact_dp_on_s3() {
        // two steps of adjacent transpositions return iff the same one repeats
        let s3 = PermutationBackend::adjacent_transpositions(3).unwrap();
        assert!((exact_return_probability(&s3, 1, 100).unwrap() - 0.5).abs() < 1e-15);
        let p = exact_return_probability(&s3, 32, 100).unwrap();
        assert!((p - 1.0 / 3.0).abs() < 1e-6);
        assert!(exact_return_probability(&CliffordTBackend::new(), 6, 10).is_err());
    }

    #[test]
    fn kingman_rejects_bad_arguments() {
        let z1 = LatticeBackend::new(1).unwrap();
        assert!(kingman_estimate(&z1, &[], 1, 2, 10, 0).is_err());
        assert!(kingman_estimate(&z1, &[2], 0, 2, 10, 0).is_err());
        assert!(return_probability(&z1, &[0], 1, 0).is_err());
    }

    #[test]
    fn kingman_is_deterministic_and_bounded() {
        let z2 = LatticeBackend::new(2).unwrap();
        let (est, rec) = kingman_estimate(&z2, &[4, 9], 20, 5, 100_000, 42).unwrap();
        let (est2, rec2) = kingman_estimate(&z2, &[4, 9], 20, 5, 100_000, 42).unwrap();
        assert_eq!(est, est2);
        assert_eq!(rec, rec2);
        for r in &rec {
            let c = r.complexity.value().unwrap() as usize;
            assert!(c <= r.k);
            assert_eq!(c % 2, r.k % 2);
        }
        assert_eq!(est.total_censored(), 0);
    }

    #[test]
    fn censored_trials_are_counted() {
        let z1 = LatticeBackend::new(1).unwrap();
        // radius cap 1 resolves only |g| <= 2
        let (est, _) = kingman_estimate(&z1, &[40], 50, 1, 1000, 7).unwrap();
        assert!(est.entries[0].censored_count > 0);
        assert!(est.entries[0].censored_count < 50 || est.entries[0].mean_ratio.is_none());
    }

    #[test]
    fn return_estimate_upper_bound_when_no_returns() {
        let z1 = LatticeBackend::new(1).unwrap();
        let est = return_probability(&z1, &[1], 200, 3).unwrap();
        assert!(est[0].returns > 0 && !est[0].upper_bound);
        let ct = CliffordTBackend::new();
        let est = return_probability(&ct, &[40], 20, 3).unwrap();
        if est[0].returns == 0 {
            assert!(est[0].upper_bound);
            assert!((est[0].rho_estimate - (1.0f64 / 20.0).powf(1.0 / 80.0)).abs() < 1e-12);
        }
    }
}
