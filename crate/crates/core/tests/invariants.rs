use circuit_growth::exec::stream_rng;
use circuit_growth::walk::{
    exact_complexity, random_word, Ball, CliffordTBackend, Complexity, GroupBackend,
    LatticeBackend, PermutationBackend,
};

#[test]
fn lattice_complexity_is_l1_norm() {
    for d in [1, 2, 3] {
        let z = LatticeBackend::new(d).unwrap();
        let mut ball = Ball::new(&z, 1 << 20);
        ball.grow_to(&z, 6);
        let mut rng = stream_rng(1, d as u64);
        for k in 0..30 {
            let w = random_word(&z, k, &mut rng);
            let l1: i64 = w.element.iter().map(|x| x.abs()).sum();
            let c = exact_complexity(&z, &ball, &w.element, 15, 1 << 20).complexity;
            assert_eq!(c, Complexity::Exact(l1 as u32));
        }
    }
}

fn symmetric_and_bounded<B: GroupBackend>(b: &B, radius: usize, seed: u64) {
    let mut ball = Ball::new(b, 1 << 20);
    ball.grow_to(b, radius);
    let mut rng = stream_rng(seed, 0);
    for k in 0..=2 * radius {
        let w = random_word(b, k, &mut rng);
        let c = exact_complexity(b, &ball, &w.element, radius, 1 << 20).complexity;
        let ci = exact_complexity(b, &ball, &b.inverse(&w.element), radius, 1 << 20).complexity;
        assert_eq!(c, ci, "C(g) != C(g^-1) at k={k}");
        let c = c.value().expect("resolvable within 2 * radius");
        assert!(c as usize <= k);
        assert_eq!(c == 0, b.is_identity(&w.element));
    }
}

#[test]
fn complexity_symmetric_and_bounded() {
    symmetric_and_bounded(&CliffordTBackend::new(), 5, 2);
    symmetric_and_bounded(
        &PermutationBackend::adjacent_transpositions(5).unwrap(),
        4,
        3,
    );
    symmetric_and_bounded(&LatticeBackend::new(2).unwrap(), 5, 4);
}

#[test]
fn long_clifford_t_word_stays_exact() {
    let b = CliffordTBackend::new();
    let w = random_word(&b, 10_000, &mut stream_rng(5, 0));
    assert!(w.element.matrix().is_unitary());
    // the canonical class is independent of how the product is grouped
    let half = b.multiply(
        &b.word_product(&w.word[..5000]),
        &b.word_product(&w.word[5000..]),
    );
    assert_eq!(b.key(&half), b.key(&w.element));
}

#[test]
fn unquotiented_count_is_at_least_projective() {
    let proj = CliffordTBackend::new();
    let full = CliffordTBackend::from_gate_set(&circuit_growth::exact::clifford_t_gateset(), false)
        .unwrap();
    let mut bp = Ball::new(&proj, 1 << 20);
    let mut bf = Ball::new(&full, 1 << 20);
    bp.grow_to(&proj, 4);
    bf.grow_to(&full, 4);
    let mut rng = stream_rng(6, 0);
    for k in 0..8 {
        let w = random_word(&full, k, &mut rng);
        let cp = exact_complexity(&proj, &bp, &w.element, 4, 1 << 20)
            .complexity
            .value()
            .unwrap();
        let cf = exact_complexity(&full, &bf, &w.element, 4, 1 << 20).complexity;
        if let Complexity::Exact(cf) = cf {
            assert!(cf >= cp);
        }
    }
}
