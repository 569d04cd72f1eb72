//! The presentation of the invariant algebra: set partitions, the
//! linearization T_a, the master syzygies Psi, the substitution
//! homomorphism phi sending T_w to the power sum [w], normal-form
//! rewriting of long bracket products, and degreewise minimal-generator
//! analysis.

use crate::algebra::{AlgElement, BasedAlgebra, BasisWord, TensorPoly, WordMultiset};
use crate::error::{Error, Result};
use crate::matrix::Echelon;
use crate::mono::Mono;
use crate::poly::Poly;
use crate::rat::{factorial, rint, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Polynomial in the formal symbols T_w; plain `Poly` over interned T
/// variables.
pub type FPoly = Poly;

/// A partition of `{1..k}` into disjoint nonempty blocks; blocks are sorted
/// by least element, elements inside a block ascend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }
}

/// Iterates the set partitions of `{1..k}` via restricted growth strings.
pub fn set_partitions(k: usize) -> SetPartitions {
    assert!(k >= 1, "set_partitions needs k >= 1");
    SetPartitions {
        rgs: vec![0; k],
        done: false,
    }
}

pub struct SetPartitions {
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let part = partition_from_rgs(&self.rgs);
        // advance to the next restricted growth string
        let k = self.rgs.len();
        let mut i = k;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = *self.rgs[..i].iter().max().unwrap();
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for j in i + 1..k {
                    self.rgs[j] = 0;
                }
                break;
            }
        }
        Some(part)
    }
}

fn partition_from_rgs(rgs: &[usize]) -> SetPartition {
    let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); nblocks];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b].push(i + 1);
    }
    SetPartition { blocks }
}

/// T_a for a general algebra element `a = c_0 + sum c_w w`: the degree-one
/// polynomial `c_0 * n + sum c_w T_w`.
pub fn linearize(alg: &BasedAlgebra, n: usize, a: &AlgElement) -> FPoly {
    let mut out = Poly::constant(&a.c0 * rint(n as i64));
    for (w, c) in &a.terms {
        out.add_term(Mono::var(alg.tsym(w)), c.clone());
    }
    out
}

/// The master syzygy for a multiset of n+1 basis words: the alternating
/// sum over set partitions of `{1..n+1}`, each block contributing
/// `(|block|-1)! * T_{product of its words}`.
pub fn psi(alg: &BasedAlgebra, n: usize, mu: &WordMultiset) -> Result<FPoly> {
    if mu.height() != n + 1 {
        return Err(Error::WrongSize {
            expected: n + 1,
            got: mu.height(),
        });
    }
    let words = mu.words();
    let mut acc = Poly::zero();
    for part in set_partitions(n + 1) {
        let h = part.num_blocks();
        let sign = if h % 2 == 0 { Rat::one() } else { -Rat::one() };
        let mut term = Poly::constant(sign);
        for block in part.blocks() {
            let block_words: Vec<BasisWord> =
                block.iter().map(|&s| words[s - 1].clone()).collect();
            let product = alg.word_list_product(&block_words)?;
            let factor = linearize(alg, n, &product).scale(&factorial(block.len() - 1));
            term = &term * &factor;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The presentation map: substitutes every T_w by the power sum [w].
pub fn phi(alg: &BasedAlgebra, n: usize, f: &FPoly) -> Result<TensorPoly> {
    let mut acc = alg.tensor_zero();
    for (m, c) in f.terms() {
        let mut term = alg.tensor_scale(&alg.tensor_one(n), c);
        for (v, e) in m.exps() {
            let w = alg
                .tsym_word(v)
                .ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
            let ps = alg.power_sum(n, &w);
            for _ in 0..e {
                term = alg.tensor_mul(&term, &ps)?;
            }
        }
        acc = alg.tensor_add(&acc, &term);
    }
    Ok(acc)
}

/// True when the image of `f` in the invariant algebra vanishes.
pub fn kernel_member(alg: &BasedAlgebra, n: usize, f: &FPoly) -> Result<bool> {
    Ok(phi(alg, n, f)?.is_zero())
}

/// Interprets an FPoly monomial as the bracket multiset it stands for.
fn monomial_multiset(alg: &BasedAlgebra, m: &Mono) -> Result<WordMultiset> {
    let mut words = Vec::new();
    for (v, e) in m.exps() {
        let w = alg
            .tsym_word(v)
            .ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
        for _ in 0..e {
            words.push(w.clone());
        }
    }
    Ok(WordMultiset::new(words))
}

/// Rewrites the bracket product over `mu` into the normal form of products
/// of at most n power sums, by repeatedly solving the Psi relation of the
/// first n+1 factors for its top term.
pub fn rewrite_product(
    alg: &BasedAlgebra,
    n: usize,
    mu: &WordMultiset,
) -> Result<BTreeMap<WordMultiset, Rat>> {
    let mut pending: BTreeMap<WordMultiset, Rat> = BTreeMap::new();
    pending.insert(mu.clone(), Rat::one());
    loop {
        let Some(nu) = pending
            .keys()
            .filter(|k| k.height() > n)
            .max_by_key(|k| k.height())
            .cloned()
        else {
            break;
        };
        let c = pending.remove(&nu).unwrap();
        let (head, tail) = nu.split_at(n + 1);
        let relation = psi(alg, n, &head)?;
        // Psi = (-1)^{n+1} * (product of the head symbols) + L, with L of
        // degree <= n, so the head product equals (-1)^n * phi(L).
        let head_mono = head.words().iter().fold(Mono::one(), |m, w| {
            m.mul(&Mono::var(alg.tsym(w)))
        });
        let head_sign = if (n + 1) % 2 == 0 { rint(1) } else { rint(-1) };
        debug_assert_eq!(relation.coeff(&head_mono), head_sign);
        let flip = -head_sign;
        for (m, k) in relation.terms() {
            if *m == head_mono {
                continue;
            }
            let contribution = monomial_multiset(alg, m)?.union(&tail);
            let entry = pending.entry(contribution).or_insert_with(Rat::zero);
            *entry += &c * &(k * &flip);
        }
        pending.retain(|_, v| !v.is_zero());
    }
    Ok(pending)
}

/// Rewrites the long power sum `[w_1 ... w_{n+1}]` as a polynomial in the
/// T_u of proper subproducts, by solving Psi for its single-block term.
pub fn reduce_long_word(
    alg: &BasedAlgebra,
    n: usize,
    factors: &[BasisWord],
) -> Result<FPoly> {
    if factors.len() != n + 1 {
        return Err(Error::WrongSize {
            expected: n + 1,
            got: factors.len(),
        });
    }
    let full = alg.word_list_product(factors)?;
    if !full.c0.is_zero() || full.terms.len() != 1 {
        return Err(Error::NotAWord);
    }
    let (word, coeff) = full.terms.iter().next().unwrap();
    if !coeff.is_one() {
        return Err(Error::NotAWord);
    }
    let mu = WordMultiset::new(factors.to_vec());
    let relation = psi(alg, n, &mu)?;
    let target = Mono::var(alg.tsym(word));
    let c = relation.coeff(&target);
    if c.is_zero() {
        return Err(Error::NotAWord);
    }
    let without = &relation - &Poly::from_term(target, c.clone());
    Ok(without.scale(&(-c.recip())))
}

/// All multisets indexing the degree-d component of the bracket-product
/// basis: height at most n, total word degree exactly d.
pub fn invariant_space_basis(
    alg: &BasedAlgebra,
    n: usize,
    d: u32,
) -> Result<Vec<WordMultiset>> {
    if !alg.is_graded() {
        return Err(Error::NotGraded);
    }
    let words = alg.basis_words_up_to(d)?;
    let degrees: Vec<u32> = words
        .iter()
        .map(|w| alg.word_degree(w))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut current: Vec<BasisWord> = Vec::new();
    fn rec(
        words: &[BasisWord],
        degrees: &[u32],
        start: usize,
        remaining: u32,
        slots: usize,
        current: &mut Vec<BasisWord>,
        out: &mut Vec<WordMultiset>,
    ) {
        if remaining == 0 {
            out.push(WordMultiset::new(current.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for i in start..words.len() {
            if degrees[i] > remaining {
                continue;
            }
            current.push(words[i].clone());
            rec(words, degrees, i, remaining - degrees[i], slots - 1, current, out);
            current.pop();
        }
    }
    rec(&words, &degrees, 0, d, n, &mut current, &mut out);
    out.sort();
    Ok(out)
}

/// Per-degree minimal-generator data for the invariant algebra.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: u32,
    pub dim: usize,
    pub decomposable_dim: usize,
    pub indecomposable: usize,
    /// Basis multisets whose bracket products extend the decomposable
    /// subspace to the whole degree component.
    pub witnesses: Vec<WordMultiset>,
}

/// Degreewise indecomposable counts via exact linear algebra: the
/// decomposable subspace in degree d is spanned by products of two
/// lower-degree basis invariants, and the graded Nakayama lemma turns the
/// quotient dimension into the number of degree-d minimal generators.
pub fn min_generator_report(
    alg: &BasedAlgebra,
    n: usize,
    d_max: u32,
) -> Result<Vec<DegreeReport>> {
    if !alg.is_graded() {
        return Err(Error::NotGraded);
    }
    let mut reports = vec![DegreeReport {
        degree: 0,
        dim: 1,
        decomposable_dim: 0,
        indecomposable: 0,
        witnesses: Vec::new(),
    }];
    let mut bases: Vec<Vec<WordMultiset>> = vec![Vec::new()]; // degree 0 handled above
    for d in 1..=d_max {
        let basis = invariant_space_basis(alg, n, d)?;
        let index: BTreeMap<&WordMultiset, usize> =
            basis.iter().zip(0..).collect();
        let dim = basis.len();
        let mut span = Echelon::new();
        for d1 in 1..=d / 2 {
            let d2 = d - d1;
            for mu1 in &bases[d1 as usize] {
                for mu2 in &bases[d2 as usize] {
                    let coeffs = rewrite_product(alg, n, &mu1.union(mu2))?;
                    let mut v = vec![Rat::zero(); dim];
                    for (nu, c) in coeffs {
                        v[index[&nu]] = c;
                    }
                    span.insert(v);
                }
            }
        }
        let decomposable_dim = span.rank();
        let mut witnesses = Vec::new();
        for (i, mu) in basis.iter().enumerate() {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            if span.insert(e) {
                witnesses.push(mu.clone());
            }
        }
        reports.push(DegreeReport {
            degree: d,
            dim,
            decomposable_dim,
            indecomposable: dim - decomposable_dim,
            witnesses,
        });
        bases.push(basis);
    }
    Ok(reports)
}
