//! Accessible dimension `d^B(k)` as the generic rank of the differential of
//! the construction map, and the inequalities it satisfies.
//!
//! Tangent vectors come from left-multiplying one gate by `i H_j`, with
//! `H_j` running over an orthonormal basis of su(4). Each is translated
//! back to the identity by `F(x)^dagger`, which leaves `i A H_j A^dagger`
//! where `A` is the product of the gates acting after the perturbed one.
//! Rows of the Jacobian are coordinates in an orthonormal su(2^n) basis
//! (the basis `i E_l`), so all columns live in one real space of dimension
//! `4^n - 1`.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::architecture::{sample_point, BlockArchitecture, CircuitPoint};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, stream_id, stream_rng};
use crate::linalg::{
    embed_two_qubit, generator_basis, identity, rank_from_singular_values, singular_values,
    ComplexMatrix, GeneratorBasis, RealMatrix,
};

/// Parameters per two-qubit gate, `dim SU(4)`.
pub const GATE_PARAMS: usize = 15;

/// Default number of Haar points per block count.
pub const DEFAULT_SAMPLES: usize = 5;

/// Relative tolerance multipliers for the stability sweep.
pub const SWEEP_FACTORS: [f64; 3] = [0.1, 1.0, 10.0];

/// Largest tolerated imaginary residue of a Jacobian coordinate.
pub const TRACE_RESIDUE_TOL: f64 = 1e-9;

/// `min(15 s, 4^n - 1)`: upper bound on the dimension reachable by `s`
/// two-qubit gates in any arrangement.
pub fn allstructure_dimension_upper(n: usize, s: usize) -> usize {
    (GATE_PARAMS * s).min((1usize << (2 * n)) - 1)
}

/// Differential of the construction map at a point.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub point: CircuitPoint,
    /// `(4^n - 1) x 15 k |B|`, column `15 m + j` for gate `m`, generator `j`.
    pub jacobian: RealMatrix,
}

/// Bases and embedded local generators for one architecture, reused across
/// points.
#[derive(Debug, Clone)]
pub struct TangentSpace {
    arch: Arc<BlockArchitecture>,
    target: GeneratorBasis,
    /// `local[slot][j]` is generator `j` of su(4) embedded at `slot`.
    local: Vec<Vec<ComplexMatrix>>,
}

impl TangentSpace {
    pub fn new(arch: Arc<BlockArchitecture>) -> Self {
        let n = arch.n();
        let target = generator_basis(1 << n).expect("n >= 2");
        let su4 = generator_basis(4).expect("d = 4");
        let local = arch
            .slots()
            .iter()
            .map(|&slot| {
                su4.generators()
                    .iter()
                    .map(|h| embed_two_qubit(h, slot, n).expect("validated slot"))
                    .collect()
            })
            .collect();
        Self {
            arch,
            target,
            local,
        }
    }

    pub fn arch(&self) -> &Arc<BlockArchitecture> {
        &self.arch
    }

    pub fn target_basis(&self) -> &GeneratorBasis {
        &self.target
    }

    /// Embedded su(4) generator `j` on the slot of gate `m`.
    pub fn local_generator(&self, m: usize, j: usize) -> &ComplexMatrix {
        &self.local[m % self.arch.block_size()][j]
    }

    pub fn jacobian_at(&self, point: &CircuitPoint) -> Result<TangentFrame> {
        if **point.arch() != *self.arch {
            return Err(Error::CircuitPoint(
                "point belongs to another architecture".into(),
            ));
        }
        let gates = point.gates().len();
        let dim = 1usize << self.arch.n();
        let rows = self.target.len();
        let mut jacobian = RealMatrix::zeros(rows, GATE_PARAMS * gates);
        // after = product of the gates acting after gate m
        let mut after = identity(dim);
        for m in (0..gates).rev() {
            let after_dag = after.adjoint();
            for j in 0..GATE_PARAMS {
                let moved = &after * self.local_generator(m, j) * &after_dag;
                let coords = self.target.coordinates_complex(&moved);
                let col = GATE_PARAMS * m + j;
                for (r, c) in coords.iter().enumerate() {
                    if c.im.abs() > TRACE_RESIDUE_TOL {
                        return Err(Error::CircuitPoint(format!(
                            "tangent column {col} left su(2^n): residue {:.3e}",
                            c.im
                        )));
                    }
                    jacobian[(r, col)] = c.re;
                }
            }
            after *= point.embedded_gate(m);
        }
        Ok(TangentFrame {
            point: point.clone(),
            jacobian,
        })
    }

    /// Rank at one point, with the tolerance sweep.
    pub fn sample_rank(&self, point: &CircuitPoint, rel_tol: f64) -> Result<SampleRank> {
        if point.gates().is_empty() {
            return Ok(SampleRank {
                rank: 0,
                sweep: [0; 3],
                stable: true,
            });
        }
        let frame = self.jacobian_at(point)?;
        let sv = singular_values(&frame.jacobian)?;
        let sweep = SWEEP_FACTORS.map(|f| rank_from_singular_values(&sv, rel_tol * f));
        let rank = sweep[1];
        Ok(SampleRank {
            rank,
            sweep,
            stable: sweep.iter().all(|&r| r == rank),
        })
    }
}

/// Jacobian of the construction map at `point`.
pub fn jacobian_at(point: &CircuitPoint) -> Result<TangentFrame> {
    TangentSpace::new(Arc::clone(point.arch())).jacobian_at(point)
}

/// Rank of one sampled Jacobian at `rel_tol`, and at `rel_tol` scaled by
/// each of [`SWEEP_FACTORS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleRank {
    pub rank: usize,
    pub sweep: [usize; 3],
    pub stable: bool,
}

/// Estimate of `d^B(k)` from a handful of Haar points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub k: usize,
    /// Maximum rank over samples.
    pub d_estimate: usize,
    pub ranks: Vec<SampleRank>,
    pub seed: u64,
}

impl DimensionEstimate {
    pub fn samples(&self) -> usize {
        self.ranks.len()
    }

    /// Samples whose rank falls below the estimate.
    pub fn deficient_count(&self) -> usize {
        self.ranks
            .iter()
            .filter(|r| r.rank < self.d_estimate)
            .count()
    }

    pub fn tol_stable(&self) -> bool {
        self.ranks.iter().all(|r| r.stable)
    }
}

fn sample_ranks(
    space: &TangentSpace,
    k: usize,
    samples: usize,
    rel_tol: f64,
    seed: u64,
) -> Result<Vec<SampleRank>> {
    map_indexed(samples, |s| {
        let mut rng = stream_rng(seed, stream_id(k as u64, s as u64));
        let point = sample_point(space.arch(), k, &mut rng);
        space.sample_rank(&point, rel_tol)
    })
    .into_iter()
    .collect()
}

fn check_samples(samples: usize, rel_tol: f64) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    if !(rel_tol > 0.0 && rel_tol * SWEEP_FACTORS[2] < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "rel_tol must lie in (0, 0.1), got {rel_tol}"
        )));
    }
    Ok(())
}

/// `d^B(k)` as the maximum Jacobian rank over `samples` Haar points.
///
/// Sample `s` at block count `k` draws from stream `(k, s)` of `seed`, so the
/// result does not depend on thread count or on which other `k` are run.
pub fn accessible_dimension(
    arch: &Arc<BlockArchitecture>,
    k: usize,
    samples: usize,
    rel_tol: f64,
    seed: u64,
) -> Result<DimensionEstimate> {
    check_samples(samples, rel_tol)?;
    estimate_with(
        &TangentSpace::new(Arc::clone(arch)),
        k,
        samples,
        rel_tol,
        seed,
    )
}

fn estimate_with(
    space: &TangentSpace,
    k: usize,
    samples: usize,
    rel_tol: f64,
    seed: u64,
) -> Result<DimensionEstimate> {
    let ranks = sample_ranks(space, k, samples, rel_tol, seed)?;
    let d_estimate = ranks.iter().map(|r| r.rank).max().unwrap_or(0);
    Ok(DimensionEstimate {
        k,
        d_estimate,
        ranks,
        seed,
    })
}

/// Generic rank at block count `k` and how many samples miss it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankProbe {
    pub generic_rank: usize,
    pub deficient: usize,
    pub ranks: Vec<usize>,
}

pub fn generic_rank_probe(
    arch: &Arc<BlockArchitecture>,
    k: usize,
    trials: usize,
    rel_tol: f64,
    seed: u64,
) -> Result<RankProbe> {
    if trials < 2 {
        return Err(Error::InvalidArgument(
            "generic_rank_probe needs trials >= 2".into(),
        ));
    }
    let est = accessible_dimension(arch, k, trials, rel_tol, seed)?;
    Ok(RankProbe {
        generic_rank: est.d_estimate,
        deficient: est.deficient_count(),
        ranks: est.ranks.iter().map(|r| r.rank).collect(),
    })
}

/// `d^B(k)` for `k = 0..=k_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionCurve {
    pub arch: BlockArchitecture,
    pub rel_tol: f64,
    pub entries: Vec<DimensionEstimate>,
}

pub const CURVE_CSV_HEADER: &str = "k,d_estimate,samples,deficient_count,tol_stable,seed";

impl DimensionCurve {
    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.d_estimate).collect()
    }

    pub fn tol_stable(&self) -> bool {
        self.entries.iter().all(DimensionEstimate::tol_stable)
    }

    /// Curve from bare values at `k = 0, 1, ...` (no per-sample data).
    pub fn from_values(arch: BlockArchitecture, values: &[usize]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .map(|(k, &d)| DimensionEstimate {
                k,
                d_estimate: d,
                ranks: Vec::new(),
                seed: 0,
            })
            .collect();
        Self {
            arch,
            rel_tol: crate::linalg::DEFAULT_REL_TOL,
            entries,
        }
    }

    /// CSV body, header row included, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CURVE_CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                e.k,
                e.d_estimate,
                e.samples(),
                e.deficient_count(),
                e.tol_stable(),
                e.seed
            )
            .unwrap();
        }
        out
    }

    /// Reads the CSV written by [`to_csv`](Self::to_csv); `#` lines are
    /// skipped. Per-sample ranks are not recoverable, so the stability flag
    /// and deficient count are kept only through the reconstructed samples.
    pub fn from_csv(arch: BlockArchitecture, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == CURVE_CSV_HEADER => {}
            other => {
                return Err(Error::Curve(format!("unexpected curve header {other:?}")));
            }
        }
        let mut entries = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 6 {
                return Err(Error::Curve(format!("malformed curve row '{line}'")));
            }
            let num = |i: usize| -> Result<usize> {
                fields[i]
                    .parse()
                    .map_err(|_| Error::Curve(format!("bad integer '{}'", fields[i])))
            };
            let (k, d, samples, deficient) = (num(0)?, num(1)?, num(2)?, num(3)?);
            let stable: bool = fields[4]
                .parse()
                .map_err(|_| Error::Curve(format!("bad flag '{}'", fields[4])))?;
            let seed: u64 = fields[5]
                .parse()
                .map_err(|_| Error::Curve(format!("bad seed '{}'", fields[5])))?;
            if deficient > samples {
                return Err(Error::Curve(format!("row k={k}: deficient > samples")));
            }
            let ranks = (0..samples)
                .map(|s| {
                    let rank = if s < deficient {
                        d.saturating_sub(1)
                    } else {
                        d
                    };
                    SampleRank {
                        rank,
                        sweep: [rank; 3],
                        stable: stable || s > 0,
                    }
                })
                .collect();
            entries.push(DimensionEstimate {
                k,
                d_estimate: d,
                ranks,
                seed,
            });
        }
        Ok(Self {
            arch,
            rel_tol: crate::linalg::DEFAULT_REL_TOL,
            entries,
        })
    }
}

/// Estimates `d^B(k)` for `k = 0..=k_max`.
pub fn dimension_curve(
    arch: &Arc<BlockArchitecture>,
    k_max: usize,
    samples: usize,
    rel_tol: f64,
    seed: u64,
) -> Result<DimensionCurve> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    check_samples(samples, rel_tol)?;
    let space = TangentSpace::new(Arc::clone(arch));
    let entries = (0..=k_max)
        .map(|k| estimate_with(&space, k, samples, rel_tol, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionCurve {
        arch: (**arch).clone(),
        rel_tol,
        entries,
    })
}

/// One row of the shortcut comparison: circuits of `floor(c k)` gates in
/// any arrangement against `d^B(k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShortcutRow {
    pub k: usize,
    pub d_estimate: usize,
    pub shortcut_gates: usize,
    pub shortcut_upper: usize,
    /// `shortcut_upper < d_estimate`.
    pub subdimensional: bool,
}

/// Verdicts on a dimension curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub arch: String,
    pub n: usize,
    pub block_size: usize,
    pub values: Vec<usize>,
    pub eq2_pass: bool,
    /// Per-`k` check of `d <= 15 k |B|` and `d <= 4^n - 1`.
    pub eq2_per_k: Vec<bool>,
    pub monotone_pass: bool,
    pub subadditive_pass: bool,
    pub subadditive_violations: Vec<(usize, usize)>,
    /// Strictly increasing until the first saturated entry, constant after.
    pub strict_growth_pass: bool,
    pub saturation_k: Option<usize>,
    /// `min_{k >= 1} d(k) / k`.
    pub c2_fit: Option<f64>,
    pub tol_stable: bool,
    pub shortcut_c: f64,
    pub shortcut_table: Vec<ShortcutRow>,
}

pub fn growth_report(curve: &DimensionCurve, shortcut_c: f64) -> Result<GrowthReport> {
    if curve.entries.is_empty() {
        return Err(Error::Curve("empty curve".into()));
    }
    for (i, e) in curve.entries.iter().enumerate() {
        if e.k != i {
            return Err(Error::Curve(format!(
                "curve must cover k = 0, 1, ... without gaps; found k={} at position {i}",
                e.k
            )));
        }
    }
    if !(shortcut_c >= 0.0 && shortcut_c.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "shortcut c must be >= 0, got {shortcut_c}"
        )));
    }
    let arch = &curve.arch;
    let n = arch.n();
    let block = arch.block_size();
    let cap = arch.target_dimension();
    let d = curve.values();
    let k_max = d.len() - 1;

    let eq2_per_k: Vec<bool> = curve
        .entries
        .iter()
        .map(|e| {
            let bound = (GATE_PARAMS * e.k * block).min(cap);
            e.d_estimate <= bound && e.ranks.iter().all(|r| r.sweep.iter().all(|&x| x <= bound))
        })
        .collect();
    let monotone_pass = d.windows(2).all(|w| w[1] >= w[0]);

    let mut subadditive_violations = Vec::new();
    for k1 in 0..=k_max {
        for k2 in k1..=(k_max - k1) {
            if d[k1 + k2] > d[k1] + d[k2] {
                subadditive_violations.push((k1, k2));
            }
        }
    }

    let saturation_k = d.iter().position(|&x| x == cap);
    let strict_growth_pass = match saturation_k {
        Some(s) => d[..=s].windows(2).all(|w| w[1] > w[0]) && d[s..].iter().all(|&x| x == cap),
        None => d.windows(2).all(|w| w[1] > w[0]),
    };
    let c2_fit = (1..=k_max)
        .map(|k| d[k] as f64 / k as f64)
        .min_by(|a, b| a.total_cmp(b));

    let shortcut_table = (1..=k_max)
        .map(|k| {
            let gates = (shortcut_c * k as f64).floor() as usize;
            let upper = allstructure_dimension_upper(n, gates);
            ShortcutRow {
                k,
                d_estimate: d[k],
                shortcut_gates: gates,
                shortcut_upper: upper,
                subdimensional: upper < d[k],
            }
        })
        .collect();

    Ok(GrowthReport {
        arch: arch.name().to_string(),
        n,
        block_size: block,
        values: d.clone(),
        eq2_pass: eq2_per_k.iter().all(|&b| b),
        eq2_per_k,
        monotone_pass,
        subadditive_pass: subadditive_violations.is_empty(),
        subadditive_violations,
        strict_growth_pass,
        saturation_k,
        c2_fit,
        tol_stable: curve.tol_stable(),
        shortcut_c,
        shortcut_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expm_antihermitian, DEFAULT_REL_TOL};
    use num_complex::Complex64;

    fn arch(a: BlockArchitecture) -> Arc<BlockArchitecture> {
        Arc::new(a)
    }

    /// `(F(x with g_m -> exp(i eps H_j) g_m) F(x)^dagger - I) / (i eps)`
    /// in target coordinates.
    fn finite_difference_column(point: &CircuitPoint, m: usize, j: usize, eps: f64) -> Vec<f64> {
        let su4 = generator_basis(4).unwrap();
        let target = generator_basis(1 << point.arch().n()).unwrap();
        let kick = expm_antihermitian(&(su4.get(j) * Complex64::new(0.0, eps))).unwrap();
        let moved = point.with_gate(m, kick * &point.gates()[m]);
        let f = crate::architecture::construct(point);
        let dim = f.nrows();
        let diff = (crate::architecture::construct(&moved) * f.adjoint() - identity(dim))
            / Complex64::new(0.0, eps);
        target
            .coordinates_complex(&diff)
            .iter()
            .map(|z| z.re)
            .collect()
    }

    #[test]
    fn frame_shape() {
        let a = arch(BlockArchitecture::brickwork(3).unwrap());
        let p = sample_point(&a, 2, &mut stream_rng(1, 0));
        let frame = jacobian_at(&p).unwrap();
        assert_eq!(frame.jacobian.shape(), (63, 60));
    }

    #[test]
    fn single_gate_is_full_rank() {
        let a = arch(BlockArchitecture::brickwork(2).unwrap());
        let p = sample_point(&a, 1, &mut stream_rng(2, 0));
        let frame = jacobian_at(&p).unwrap();
        assert_eq!(
            crate::linalg::numerical_rank(&frame.jacobian, DEFAULT_REL_TOL).unwrap(),
            15
        );
    }

    #[test]
    fn columns_match_finite_differences() {
        let a = arch(BlockArchitecture::brickwork(3).unwrap());
        let p = sample_point(&a, 2, &mut stream_rng(3, 0));
        let frame = jacobian_at(&p).unwrap();
        for (m, j) in [(0, 0), (1, 7), (2, 14), (3, 3)] {
            let fd = finite_difference_column(&p, m, j, 1e-6);
            let col = frame.jacobian.column(GATE_PARAMS * m + j);
            let err: f64 = col
                .iter()
                .zip(&fd)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(
                err / col.norm() < 1e-4,
                "m={m} j={j} rel err {}",
                err / col.norm()
            );
        }
    }

    #[test]
    fn k_zero_and_single_slot() {
        let a = arch(BlockArchitecture::single_slot(2).unwrap());
        assert_eq!(
            accessible_dimension(&a, 0, 3, DEFAULT_REL_TOL, 1)
                .unwrap()
                .d_estimate,
            0
        );
        for k in 1..=3 {
            assert_eq!(
                accessible_dimension(&a, k, 3, DEFAULT_REL_TOL, 1)
                    .unwrap()
                    .d_estimate,
                15
            );
        }
        assert!(accessible_dimension(&a, 1, 0, DEFAULT_REL_TOL, 1).is_err());
    }

    #[test]
    fn curve_single_slot() {
        let a = arch(BlockArchitecture::single_slot(2).unwrap());
        let c = dimension_curve(&a, 4, 2, DEFAULT_REL_TOL, 9).unwrap();
        assert_eq!(c.values(), vec![0, 15, 15, 15, 15]);
        assert!(c.tol_stable());
        assert!(dimension_curve(&a, 0, 2, DEFAULT_REL_TOL, 9).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(allstructure_dimension_upper(3, 0), 0);
        assert_eq!(allstructure_dimension_upper(3, 2), 30);
        assert_eq!(allstructure_dimension_upper(2, 10), 15);
    }

    #[test]
    fn identity_point_is_deficient() {
        let a = arch(BlockArchitecture::brickwork(3).unwrap());
        let space = TangentSpace::new(a.clone());
        let id = space
            .sample_rank(&CircuitPoint::identity(a.clone(), 2), DEFAULT_REL_TOL)
            .unwrap();
        let probe = generic_rank_probe(&a, 2, 4, DEFAULT_REL_TOL, 5).unwrap();
        assert!(id.rank < probe.generic_rank);
        assert!(generic_rank_probe(&a, 2, 1, DEFAULT_REL_TOL, 5).is_err());
    }

    #[test]
    fn report_on_single_slot_curve() {
        let c =
            DimensionCurve::from_values(BlockArchitecture::single_slot(2).unwrap(), &[0, 15, 15]);
        let r = growth_report(&c, 1.0).unwrap();
        assert!(r.monotone_pass && r.subadditive_pass && r.eq2_pass);
        assert_eq!(r.c2_fit, Some(7.5));
        assert_eq!(r.saturation_k, Some(1));
    }

    #[test]
    fn report_flags_eq2_violation() {
        let c =
            DimensionCurve::from_values(BlockArchitecture::single_slot(3).unwrap(), &[0, 16, 30]);
        let r = growth_report(&c, 1.0).unwrap();
        assert!(!r.eq2_pass);
        assert_eq!(r.eq2_per_k, vec![true, false, true]);
    }

    #[test]
    fn report_flags_subadditivity_and_monotonicity() {
        let c =
            DimensionCurve::from_values(BlockArchitecture::brickwork(3).unwrap(), &[0, 10, 9, 40]);
        let r = growth_report(&c, 1.0).unwrap();
        assert!(!r.monotone_pass);
        assert!(!r.subadditive_pass);
        assert!(r.subadditive_violations.contains(&(1, 2)));
        assert_eq!(r.saturation_k, None);
    }

    #[test]
    fn report_rejects_gaps() {
        let mut c =
            DimensionCurve::from_values(BlockArchitecture::brickwork(3).unwrap(), &[0, 27, 45]);
        c.entries.remove(1);
        assert!(growth_report(&c, 1.0).is_err());
        c.entries.clear();
        assert!(growth_report(&c, 1.0).is_err());
    }

    #[test]
    fn shortcut_table() {
        let c = DimensionCurve::from_values(
            BlockArchitecture::brickwork(3).unwrap(),
            &[0, 27, 45, 63, 63],
        );
        let r = growth_report(&c, 0.5).unwrap();
        let row = &r.shortcut_table[1];
        assert_eq!((row.k, row.shortcut_gates, row.shortcut_upper), (2, 1, 15));
        assert!(row.subdimensional);
        assert!(r.strict_growth_pass);
        assert_eq!(r.saturation_k, Some(3));
    }

    #[test]
    fn csv_round_trip() {
        let a = arch(BlockArchitecture::single_slot(2).unwrap());
        let c = dimension_curve(&a, 2, 2, DEFAULT_REL_TOL, 3).unwrap();
        let text = c.to_csv();
        assert!(text.starts_with(CURVE_CSV_HEADER));
        let back = DimensionCurve::from_csv((*a).clone(), &format!("# comment\n{text}")).unwrap();
        assert_eq!(back.values(), c.values());
        assert_eq!(back.to_csv(), text);
        assert!(DimensionCurve::from_csv((*a).clone(), "nope\n").is_err());
    }
}
