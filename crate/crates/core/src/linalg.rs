//! Dense complex matrices, su(d) generator bases and numerical rank.
//!
//! Matrices are plain `nalgebra` dynamic matrices. Qubit 0 is the most
//! significant bit of a computational-basis index throughout the crate.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type RealMatrix = DMatrix<f64>;

/// Default relative tolerance for [`numerical_rank`].
pub const DEFAULT_REL_TOL: f64 = 1e-7;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Spectral norm.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    a.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// `max |U^dagger U - I|` entrywise.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    unitarity_defect(u) <= tol
}

pub fn is_hermitian(h: &ComplexMatrix, tol: f64) -> bool {
    h.is_square() && max_abs_diff(h, &h.adjoint()) <= tol
}

pub fn is_antihermitian(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_square() && max_abs_diff(a, &(-a.adjoint())) <= tol
}

pub fn is_traceless(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_square() && m.trace().norm() <= tol
}

/// Hilbert-Schmidt inner product `Tr(A^dagger B)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Orthonormal basis of the traceless Hermitian `d x d` matrices.
///
/// Generators are the generalized Gell-Mann matrices, re-orthonormalized
/// under `<A, B> = Tr(A^dagger B)`. Each generator also carries its list of
/// nonzero entries so that coordinate extraction stays sparse.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<ComplexMatrix>,
    support: Vec<Vec<(usize, usize, Complex64)>>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn get(&self, index: usize) -> &ComplexMatrix {
        &self.generators[index]
    }

    /// Coordinates `Tr(E_l M)` of `m` in the basis. For Hermitian `m` these
    /// are real; the imaginary parts are returned alongside for checking.
    pub fn coordinates_complex(&self, m: &ComplexMatrix) -> Vec<Complex64> {
        self.support
            .iter()
            .map(|entries| entries.iter().map(|&(r, c, e)| e * m[(c, r)]).sum())
            .collect()
    }

    /// Real coordinates of a Hermitian matrix.
    pub fn coordinates(&self, m: &ComplexMatrix) -> Vec<f64> {
        self.coordinates_complex(m)
            .into_iter()
            .map(|z| z.re)
            .collect()
    }

    /// `sum_l c_l E_l`.
    pub fn reconstruct(&self, coords: &[f64]) -> ComplexMatrix {
        assert_eq!(coords.len(), self.len());
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (c, g) in coords.iter().zip(&self.generators) {
            out += g * Complex64::new(*c, 0.0);
        }
        out
    }
}

/// Generalized Gell-Mann basis of su(d), orthonormalized.
pub fn generator_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "generator basis needs d >= 2, got {d}"
        )));
    }
    let mut raw = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(j, k)] = C1;
            sym[(k, j)] = C1;
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(j, k)] = -CI;
            anti[(k, j)] = CI;
            raw.push(sym);
            raw.push(anti);
        }
    }
    for l in 1..d {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = ComplexMatrix::zeros(d, d);
        for j in 0..l {
            diag[(j, j)] = Complex64::new(scale, 0.0);
        }
        diag[(l, l)] = Complex64::new(-(l as f64) * scale, 0.0);
        raw.push(diag);
    }

    // Modified Gram-Schmidt; the Gell-Mann set is already orthogonal, this
    // pins the numerical orthonormality.
    let mut generators: Vec<ComplexMatrix> = Vec::with_capacity(raw.len());
    for mut g in raw {
        for q in &generators {
            let proj = hs_inner(q, &g);
            if proj != C0 {
                g -= q * proj;
            }
        }
        let norm = hs_inner(&g, &g).re.sqrt();
        g /= Complex64::new(norm, 0.0);
        generators.push(g);
    }

    let support = generators
        .iter()
        .map(|g| {
            let mut entries = Vec::new();
            for r in 0..d {
                for c in 0..d {
                    let e = g[(r, c)];
                    if e != C0 {
                        entries.push((r, c, e));
                    }
                }
            }
            entries
        })
        .collect();
    Ok(GeneratorBasis {
        dim: d,
        generators,
        support,
    })
}

/// Matrix exponential of an anti-Hermitian matrix via the spectral
/// decomposition of the Hermitian matrix `-iA`.
pub fn expm_antihermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "expm needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if !is_antihermitian(a, 1e-10 * scale) {
        return Err(Error::InvalidArgument(
            "expm_antihermitian: input is not anti-Hermitian".into(),
        ));
    }
    let h = a * (-CI);
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let v = eig.eigenvectors;
    let phases = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        v.ncols(),
        eig.eigenvalues
            .iter()
            .map(|&l| Complex64::from_polar(1.0, l)),
    ));
    Ok(&v * phases * v.adjoint())
}

/// Haar-random element of SU(d).
///
/// QR of a complex Ginibre matrix with the phases of `R`'s diagonal pushed
/// into `Q`, then divided by the principal `d`-th root of the determinant.
pub fn haar_random_su<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "haar_random_su needs d >= 2, got {d}"
        )));
    }
    let z = ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            C1
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    let det = q.determinant();
    let correction = Complex64::from_polar(1.0, -det.arg() / d as f64);
    Ok(q * correction)
}

/// Singular values of a real matrix, descending.
pub fn singular_values(m: &RealMatrix) -> Result<Vec<f64>> {
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut sv: Vec<f64> = m.clone().singular_values().iter().cloned().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn rank_from_singular_values(sv: &[f64], rel_tol: f64) -> usize {
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

pub fn numerical_rank(m: &RealMatrix, rel_tol: f64) -> Result<usize> {
    if m.is_empty() {
        return Err(Error::Shape("numerical_rank of an empty matrix".into()));
    }
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "rel_tol must lie in (0, 1), got {rel_tol}"
        )));
    }
    Ok(rank_from_singular_values(&singular_values(m)?, rel_tol))
}

/// Acts as `u` on the ordered qubit pair and as identity elsewhere.
///
/// The first qubit of `pair` is the more significant bit of `u`'s index,
/// so `(j, i)` gives `SWAP * u * SWAP` relative to `(i, j)`.
pub fn embed_two_qubit(u: &ComplexMatrix, pair: (usize, usize), n: usize) -> Result<ComplexMatrix> {
    let (qa, qb) = pair;
    if u.shape() != (4, 4) {
        return Err(Error::Shape(format!(
            "two-qubit gate must be 4x4, got {}x{}",
            u.nrows(),
            u.ncols()
        )));
    }
    if qa == qb {
        return Err(Error::InvalidArgument(format!(
            "qubit pair ({qa}, {qb}) must be distinct"
        )));
    }
    if qa >= n || qb >= n {
        return Err(Error::InvalidArgument(format!(
            "qubit pair ({qa}, {qb}) out of range for {n} qubits"
        )));
    }
    let dim = 1usize << n;
    let sa = n - 1 - qa;
    let sb = n - 1 - qb;
    let mask = (1usize << sa) | (1usize << sb);
    let local = |x: usize| 2 * ((x >> sa) & 1) + ((x >> sb) & 1);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for rest in (0..dim).filter(|x| x & mask == 0) {
        for lr in 0..4 {
            let row = rest | ((lr >> 1) << sa) | ((lr & 1) << sb);
            for lc in 0..4 {
                let col = rest | ((lc >> 1) << sa) | ((lc & 1) << sb);
                debug_assert_eq!(local(row), lr);
                out[(row, col)] = u[(lr, lc)];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::stream_rng;
    use proptest::prelude::*;
    use rand::Rng;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_row_slice(2, 2, &[C0, C1, C1, C0])
    }

    fn swap() -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(4, 4);
        s[(0, 0)] = C1;
        s[(1, 2)] = C1;
        s[(2, 1)] = C1;
        s[(3, 3)] = C1;
        s
    }

    fn random_hermitian(d: usize, seed: u64) -> ComplexMatrix {
        let mut rng = stream_rng(seed, 0);
        let g = ComplexMatrix::from_fn(d, d, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(generator_basis(2).unwrap().len(), 3);
        assert_eq!(generator_basis(4).unwrap().len(), 15);
        assert_eq!(generator_basis(8).unwrap().len(), 63);
        assert!(generator_basis(1).is_err());
        assert!(generator_basis(0).is_err());
    }

    #[test]
    fn basis_is_orthonormal_traceless_hermitian() {
        for d in [2, 3, 4, 8] {
            let b = generator_basis(d).unwrap();
            for (i, g) in b.generators().iter().enumerate() {
                assert!(is_hermitian(g, 1e-12));
                assert!(is_traceless(g, 1e-12));
                for (j, h) in b.generators().iter().enumerate() {
                    let ip = hs_inner(g, h);
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn su2_basis_is_scaled_pauli() {
        let b = generator_basis(2).unwrap();
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        assert!(max_abs_diff(b.get(0), &(pauli_x() * s)) < 1e-15);
    }

    #[test]
    fn basis_spans_traceless_hermitian() {
        for d in [2, 4, 8] {
            let b = generator_basis(d).unwrap();
            let mut h = random_hermitian(d, d as u64);
            let tr = h.trace() / Complex64::new(d as f64, 0.0);
            for i in 0..d {
                h[(i, i)] -= tr;
            }
            let back = b.reconstruct(&b.coordinates(&h));
            assert!(max_abs_diff(&h, &back) < 1e-10);
        }
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(4, 4);
        assert!(max_abs_diff(&expm_antihermitian(&z).unwrap(), &identity(4)) < 1e-15);
    }

    #[test]
    fn expm_pauli_rotation() {
        let a = pauli_x() * Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
        let e = expm_antihermitian(&a).unwrap();
        assert!(max_abs_diff(&e, &(pauli_x() * CI)) < 1e-12);
    }

    #[test]
    fn expm_rejects_bad_input() {
        assert!(expm_antihermitian(&ComplexMatrix::zeros(2, 3)).is_err());
        assert!(expm_antihermitian(&pauli_x()).is_err());
    }

    #[test]
    fn expm_inverse_identity() {
        let a = random_hermitian(4, 3) * CI;
        let e = expm_antihermitian(&a).unwrap();
        let f = expm_antihermitian(&(-&a)).unwrap();
        assert!(max_abs_diff(&(e * f), &identity(4)) < 1e-9);
    }

    #[test]
    fn haar_sample_is_special_unitary() {
        let mut rng = stream_rng(11, 0);
        let u = haar_random_su(4, &mut rng).unwrap();
        assert!(unitarity_defect(&u) < 1e-10);
        assert!((u.determinant() - C1).norm() < 1e-10);
        assert!(haar_random_su(1, &mut rng).is_err());
    }

    #[test]
    fn haar_seeds_differ() {
        let u = haar_random_su(4, &mut stream_rng(1, 0)).unwrap();
        let v = haar_random_su(4, &mut stream_rng(2, 0)).unwrap();
        assert!(operator_norm(&(u - v)) > 1e-3);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            numerical_rank(&RealMatrix::identity(5, 5), 1e-7).unwrap(),
            5
        );
        assert_eq!(numerical_rank(&RealMatrix::zeros(4, 6), 1e-7).unwrap(), 0);
        let mut rng = stream_rng(5, 0);
        let x: Vec<f64> = (0..8).map(|_| rng.sample(StandardNormal)).collect();
        let y: Vec<f64> = (0..8).map(|_| rng.sample(StandardNormal)).collect();
        let outer = RealMatrix::from_fn(8, 8, |i, j| x[i] * y[j]);
        assert_eq!(numerical_rank(&outer, 1e-7).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_non_finite_and_bad_tol() {
        let mut m = RealMatrix::identity(3, 3);
        assert!(numerical_rank(&m, 0.0).is_err());
        assert!(numerical_rank(&m, 1.0).is_err());
        m[(1, 1)] = f64::NAN;
        assert!(matches!(numerical_rank(&m, 1e-7), Err(Error::NonFinite)));
    }

    #[test]
    fn embed_identity_and_swap() {
        assert!(
            max_abs_diff(
                &embed_two_qubit(&identity(4), (0, 2), 3).unwrap(),
                &identity(8)
            ) == 0.0
        );
        assert!(max_abs_diff(&embed_two_qubit(&swap(), (0, 1), 2).unwrap(), &swap()) == 0.0);
        let u = haar_random_su(4, &mut stream_rng(3, 0)).unwrap();
        assert!(max_abs_diff(&embed_two_qubit(&u, (0, 1), 2).unwrap(), &u) == 0.0);
        let reversed = embed_two_qubit(&u, (1, 0), 2).unwrap();
        assert!(max_abs_diff(&reversed, &(swap() * &u * swap())) < 1e-15);
    }

    #[test]
    fn embed_rejects_bad_pairs() {
        let u = identity(4);
        assert!(embed_two_qubit(&u, (1, 1), 3).is_err());
        assert!(embed_two_qubit(&u, (0, 3), 3).is_err());
        assert!(embed_two_qubit(&identity(2), (0, 1), 3).is_err());
    }

    #[test]
    fn embed_matches_kron_for_adjacent_pairs() {
        // (1,2) on three qubits is I_2 (x) u
        let u = haar_random_su(4, &mut stream_rng(9, 0)).unwrap();
        let e = embed_two_qubit(&u, (1, 2), 3).unwrap();
        let k = identity(2).kronecker(&u);
        assert!(max_abs_diff(&e, &k) == 0.0);
        let e0 = embed_two_qubit(&u, (0, 1), 3).unwrap();
        assert!(max_abs_diff(&e0, &u.kronecker(&identity(2))) == 0.0);
    }

    #[test]
    fn overlapping_embeddings_do_not_commute() {
        let u = haar_random_su(4, &mut stream_rng(21, 0)).unwrap();
        let v = haar_random_su(4, &mut stream_rng(21, 1)).unwrap();
        let a = embed_two_qubit(&u, (0, 1), 3).unwrap();
        let b = embed_two_qubit(&v, (1, 2), 3).unwrap();
        assert!(operator_norm(&(&a * &b - &b * &a)) > 1e-3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn expm_is_unitary(seed in any::<u64>()) {
            let a = random_hermitian(4, seed) * CI;
            let e = expm_antihermitian(&a).unwrap();
            for s in e.singular_values().iter() {
                prop_assert!((s - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn embed_is_homomorphism(seed in any::<u64>(), pair in (0usize..3, 0usize..3)) {
            prop_assume!(pair.0 != pair.1);
            let mut rng = stream_rng(seed, 0);
            let u = haar_random_su(4, &mut rng).unwrap();
            let v = haar_random_su(4, &mut rng).unwrap();
            let lhs = embed_two_qubit(&(&u * &v), pair, 3).unwrap();
            let rhs = embed_two_qubit(&u, pair, 3).unwrap() * embed_two_qubit(&v, pair, 3).unwrap();
            prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
        }

        #[test]
        fn rank_invariant_under_orthogonal_maps(seed in any::<u64>(), r in 1usize..6) {
            let mut rng = stream_rng(seed, 0);
            let mut gauss = |rows: usize, cols: usize| {
                RealMatrix::from_fn(rows, cols, |_, _| rng.sample::<f64, _>(StandardNormal))
            };
            let m = gauss(7, r) * gauss(r, 9);
            let q1 = gauss(7, 7).qr().q();
            let q2 = gauss(9, 9).qr().q();
            let base = numerical_rank(&m, DEFAULT_REL_TOL).unwrap();
            prop_assert_eq!(base, r);
            prop_assert_eq!(numerical_rank(&(&q1 * &m * &q2), DEFAULT_REL_TOL).unwrap(), base);
            let permuted = RealMatrix::from_fn(7, 9, |i, j| m[((i + 3) % 7, (j * 2) % 9)]);
            prop_assert_eq!(numerical_rank(&permuted, DEFAULT_REL_TOL).unwrap(), base);
        }
    }
}
