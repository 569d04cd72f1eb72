//! End-to-end acceptance suite. Every check is exact (tolerance 0); each
//! criterion prints a single pass/fail line.

use multisym::algebra::monomials_of_degree;
use multisym::matrix::Echelon;
use multisym::s4;
use multisym::syzygy::{min_generator_report, phi, psi, rewrite_product};
use multisym::trace::all_perms;
use multisym::{
    diagonal_embedding, fundamental_identity, fundamental_identity_rat, gamma_evaluation_check,
    generic_matrices, random_rat_matrix, rat, rint, AlgElement, BasedAlgebra, BasisWord, Mono,
    Poly, RatMatrix, StructureTable, TensorPoly, Var, WordMultiset,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn criterion<F>(k: usize, label: &str, f: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    match std::panic::catch_unwind(f) {
        Ok(()) => println!("criterion {k}: pass ({label})"),
        Err(e) => {
            println!("criterion {k}: FAIL ({label})");
            std::panic::resume_unwind(e);
        }
    }
}

fn char_algebra() -> BasedAlgebra {
    // K[x]/(x^2 - 1), basis {x}
    let mut products = BTreeMap::new();
    products.insert((0, 0), AlgElement::one());
    BasedAlgebra::from_table(StructureTable {
        names: vec!["x".into()],
        degrees: None,
        products,
    })
    .unwrap()
}

fn truncated_cubic() -> BasedAlgebra {
    // K[x]/(x^3), basis {x, x2}
    let mut products = BTreeMap::new();
    let mut xx = AlgElement::zero();
    xx.add_word(BasisWord::Index(1), rint(1));
    products.insert((0, 0), xx);
    products.insert((0, 1), AlgElement::zero());
    products.insert((1, 1), AlgElement::zero());
    BasedAlgebra::from_table(StructureTable {
        names: vec!["x".into(), "x2".into()],
        degrees: Some(vec![1, 2]),
        products,
    })
    .unwrap()
}

fn random_multiset<R: Rng>(words: &[BasisWord], size: usize, rng: &mut R) -> WordMultiset {
    (0..size)
        .map(|_| words[rng.gen_range(0..words.len())].clone())
        .collect()
}

#[test]
fn criterion_01_master_syzygy_vanishing() {
    criterion(1, "master syzygy vanishing", || {
        // K[x,y], n = 3: every multiset of 4 basis monomials, total degree <= 8
        let alg = BasedAlgebra::polynomial(2);
        let n = 3;
        let words = alg.basis_words_up_to(5).unwrap();
        let degs: Vec<u32> = words.iter().map(|w| alg.word_degree(w).unwrap()).collect();
        let mut checked = 0usize;
        for a in 0..words.len() {
            for b in a..words.len() {
                for c in b..words.len() {
                    for d in c..words.len() {
                        if degs[a] + degs[b] + degs[c] + degs[d] > 8 {
                            continue;
                        }
                        let mu = WordMultiset::new(vec![
                            words[a].clone(),
                            words[b].clone(),
                            words[c].clone(),
                            words[d].clone(),
                        ]);
                        let p = psi(&alg, n, &mu).unwrap();
                        assert!(phi(&alg, n, &p).unwrap().is_zero(), "mu = {mu:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked >= 200, "only {checked} multisets enumerated");

        // structure-constant instances, 50 random multisets each
        let char_alg = char_algebra();
        let char_words = vec![char_alg.parse_word("x").unwrap()];
        let trunc = truncated_cubic();
        let trunc_words = trunc.basis_words_up_to(2).unwrap();
        for (alg, words, seed) in [
            (char_alg, char_words, 5u64),
            (trunc, trunc_words, 6u64),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..50 {
                let n = rng.gen_range(1..=3usize);
                let mu = random_multiset(&words, n + 1, &mut rng);
                let p = psi(&alg, n, &mu).unwrap();
                assert!(phi(&alg, n, &p).unwrap().is_zero(), "n = {n}, mu = {mu:?}");
            }
        }
    });
}

#[test]
fn criterion_02_rewrite_oracle_equivalence() {
    criterion(2, "rewrite agrees with basis-conversion oracle", || {
        let alg = BasedAlgebra::polynomial(2);
        let words = alg.basis_words_up_to(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for case in 0..100 {
            let n = rng.gen_range(1..=3usize);
            let size = rng.gen_range(1..=6usize);
            let mu = random_multiset(&words, size, &mut rng);
            let direct = rewrite_product(&alg, n, &mu).unwrap();
            let expanded = alg.bracket_product(n, &mu).unwrap();
            let oracle = alg.to_power_product_basis(n, &expanded).unwrap();
            assert_eq!(direct, oracle, "case {case}: n = {n}, mu = {mu:?}");
        }
    });
}

#[test]
fn criterion_03_height_triangularity() {
    criterion(3, "bracket products are height-triangular", || {
        let alg = BasedAlgebra::polynomial(2);
        let words = alg.basis_words_up_to(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in 0..100 {
            let r = rng.gen_range(1..=4usize);
            let n = rng.gen_range(r..=5usize);
            let mu = random_multiset(&words, r, &mut rng);
            let t = alg.bracket_product(n, &mu).unwrap();
            let coeffs = alg.to_orbit_basis(n, &t).unwrap();
            assert_eq!(
                coeffs[&mu],
                mu.multiplicity_factorial(),
                "case {case}: mu = {mu:?}"
            );
            for (nu, c) in &coeffs {
                if *c != rat(0, 1) && nu != &mu {
                    assert!(
                        nu.height() < mu.height(),
                        "case {case}: mu = {mu:?}, nu = {nu:?}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_04_fundamental_trace_identity() {
    criterion(4, "fundamental trace identity", || {
        // symbolic zero on fully generic matrices
        for n in 1..=3usize {
            let y = generic_matrices(n, n + 1);
            assert!(fundamental_identity(n, &y).unwrap().is_zero(), "n = {n}");
        }
        // exact zero at seeded random rational tuples
        for n in [4usize, 5] {
            for seed in 0..20u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(400 * n as u64 + seed);
                let y: Vec<RatMatrix> =
                    (0..=n).map(|_| random_rat_matrix(n, &mut rng)).collect();
                assert_eq!(
                    fundamental_identity_rat(n, &y).unwrap(),
                    rat(0, 1),
                    "n = {n}, seed = {seed}"
                );
            }
        }
    });
}

#[test]
fn criterion_05_relations_vanish() {
    criterion(5, "presentation relations vanish", || {
        let names = s4::relation_names();
        for (name, rel) in names.iter().zip(s4::relation_generators()) {
            assert!(s4::phi_s4(&rel).is_zero(), "{name}");
        }
        let (_, tilde) = s4::corollary5_presentation();
        assert_eq!(tilde.len(), 5);
        for (k, rel) in tilde.iter().enumerate() {
            assert!(s4::phi_s4(rel).is_zero(), "substituted relation {k}");
        }
    });
}

#[test]
fn criterion_06_kernel_degreewise_and_minimality() {
    criterion(6, "kernel equals relation ideal through degree 10", || {
        let report = s4::kernel_report(10);
        assert_eq!(report.degrees.len(), 10);
        for kd in &report.degrees {
            assert!(
                kd.matches,
                "degree {}: kernel {} vs ideal {}",
                kd.degree, kd.kernel_dim, kd.ideal_dim
            );
        }
        let degs: Vec<u32> = report.minimality.iter().map(|w| w.degree).collect();
        assert_eq!(degs, vec![6, 7, 8, 8, 9, 10]);
        for w in &report.minimality {
            assert!(
                w.essential,
                "{} is redundant: {} vs {}",
                w.relation, w.dropped_dim, w.ideal_dim
            );
        }
    });
}

#[test]
fn criterion_07_minimal_generators() {
    criterion(7, "minimal generator counts", || {
        // the pairs ring: nine generators in degrees 1..5, none in 6..8
        let profile = s4::min_generator_profile(8);
        assert_eq!(profile, vec![1, 2, 3, 2, 1, 0, 0, 0]);
        assert_eq!(profile.iter().sum::<usize>(), 9);

        // T^3(K[x,y])^{S_3}: the nine degree <= 3 power sums
        let alg = BasedAlgebra::polynomial(2);
        let reports = min_generator_report(&alg, 3, 3).unwrap();
        let counts: Vec<usize> = reports[1..].iter().map(|r| r.indecomposable).collect();
        assert_eq!(counts, vec![2, 3, 4]);

        // [z^6] is decomposable: its image lies in the span of the images of
        // the composite monomials of degree 6
        let xzvars: Vec<Var> = (1..=3)
            .flat_map(|i| [Var::slotted("x", i), Var::slotted("z", i)])
            .collect();
        let index: BTreeMap<Mono, usize> = monomials_of_degree(&xzvars, 6)
            .into_iter()
            .zip(0..)
            .collect();
        let coords = |p: &Poly| {
            let mut v = vec![rat(0, 1); index.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        let mut span = Echelon::new();
        for m in s4::weighted_monomials(&s4::symbols(), 6) {
            if m.degree() >= 2 {
                span.insert(coords(&s4::phi_s4(&Poly::from_term(m, rat(1, 1)))));
            }
        }
        let z6 = s4::phi_s4(&Poly::var(Var::new("T_y3")));
        assert!(span.contains(&coords(&z6)));
    });
}

#[test]
fn criterion_08_hilbert_dimension_cross_check() {
    criterion(8, "Burnside counts match symmetrized-monomial ranks", || {
        assert_eq!(s4::invariant_dim(0), 1);
        assert_eq!(s4::invariant_dim(1), 1);
        assert_eq!(s4::invariant_dim(2), 3);
        let perms = all_perms(4);
        let act_mono = |sigma: &multisym::Perm, m: &Mono| -> Mono {
            let p = s4::s4_act(sigma, &Poly::from_term(m.clone(), rat(1, 1)));
            let (m2, _) = p.terms().next().unwrap();
            m2.clone()
        };
        for d in 0..=8u32 {
            let monos = monomials_of_degree(&s4::pair_vars(), d);
            let index: BTreeMap<Mono, usize> =
                monos.iter().cloned().zip(0..).collect();
            // one symmetrization per monomial orbit spans the same space as
            // symmetrizing everything
            let mut reps: Vec<Mono> = monos
                .iter()
                .filter(|m| perms.iter().all(|s| act_mono(s, m) >= **m))
                .cloned()
                .collect();
            reps.dedup();
            let mut span = Echelon::new();
            for m in &reps {
                let mut sym = Poly::zero();
                for s in &perms {
                    sym = &sym + &s4::s4_act(s, &Poly::from_term(m.clone(), rat(1, 1)));
                }
                let mut v = vec![rat(0, 1); monos.len()];
                for (mono, c) in sym.terms() {
                    v[index[mono]] = c.clone();
                }
                span.insert(v);
            }
            assert_eq!(span.rank(), s4::invariant_dim(d), "d = {d}");
        }
    });
}

#[test]
fn criterion_09_graph_isomorphism_fingerprints() {
    criterion(9, "fingerprints classify 4-vertex graphs", || {
        let report = s4::isomorphism_classes();
        assert!(report.equal);
        assert_eq!(report.orbit_classes.len(), 11);
        assert_eq!(report.fingerprint_classes.len(), 11);
        let total: usize = report.orbit_classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 64);
        for g in s4::Graph4::all() {
            let fp = s4::fingerprint(g);
            for sigma in all_perms(4) {
                assert_eq!(s4::fingerprint(g.relabel(&sigma)), fp, "g = {g:?}");
            }
        }
    });
}

#[test]
fn criterion_10_evaluation_checks() {
    criterion(10, "syzygies vanish at commuting matrix tuples", || {
        let alg = BasedAlgebra::polynomial(2);
        let n = 2;
        let words = alg.basis_words_up_to(2).unwrap();
        let mut test_psis = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        for _ in 0..5 {
            let mu = random_multiset(&words, n + 1, &mut rng);
            test_psis.push(psi(&alg, n, &mu).unwrap());
        }
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // a diagonal pair
            let mut a = RatMatrix::zero(n, n);
            let mut b = RatMatrix::zero(n, n);
            for i in 0..n {
                a[(i, i)] = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
                b[(i, i)] = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
            }
            // and an (M, p(M)) pair with p = c2 t^2 + c1 t + c0
            let m = random_rat_matrix(n, &mut rng);
            let m2 = m.mul(&m).unwrap();
            let c0 = rat(rng.gen_range(-5..=5), 1);
            let c1 = rat(rng.gen_range(-5..=5), 1);
            let c2 = rat(rng.gen_range(-5..=5), 1);
            let mut pm = RatMatrix::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    pm[(i, j)] = m[(i, j)].clone() * &c1 + m2[(i, j)].clone() * &c2;
                    if i == j {
                        pm[(i, j)] = pm[(i, j)].clone() + &c0;
                    }
                }
            }
            for point in [[a.clone(), b.clone()], [m.clone(), pm.clone()]] {
                for f in &test_psis {
                    assert_eq!(
                        gamma_evaluation_check(&alg, &point, f).unwrap(),
                        rat(0, 1),
                        "seed = {seed}"
                    );
                }
            }
        }

        // diagonal embeddings multiply like the algebra and their traces are
        // the power-sum brackets
        let n = 3;
        for w in alg.basis_words_up_to(3).unwrap() {
            let d = diagonal_embedding(&alg, n, &AlgElement::word(w.clone())).unwrap();
            match alg.power_sum(n, &w) {
                TensorPoly::Slots(p) => assert_eq!(d.trace(), p),
                TensorPoly::Tuples(_) => unreachable!(),
            }
        }
        let w1 = alg.parse_word("x*y").unwrap();
        let w2 = alg.parse_word("x^2").unwrap();
        let d1 = diagonal_embedding(&alg, n, &AlgElement::word(w1.clone())).unwrap();
        let d2 = diagonal_embedding(&alg, n, &AlgElement::word(w2.clone())).unwrap();
        let prod = alg.word_list_product(&[w1, w2]).unwrap();
        let dprod = diagonal_embedding(&alg, n, &prod).unwrap();
        assert_eq!(d1.mul(&d2).unwrap().trace(), dprod.trace());
    });
}
