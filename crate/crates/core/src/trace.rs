//! The matrix side of the theory: Tr over cycle decompositions, the
//! fundamental trace identity of n x n matrices, generic matrices, the
//! diagonal embedding of algebra elements, and exact evaluation checks for
//! the trace presentation of the invariant algebra.

use crate::algebra::{AlgElement, BasedAlgebra, TensorPoly, WordMultiset};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::Poly;
use crate::rat::{rat, Rat};
use crate::syzygy::{phi, psi, FPoly};
use crate::var::Var;
use itertools::Itertools;
use num::{One, Zero};
use rand::Rng;
use std::collections::{BTreeMap, HashMap};

/// A permutation of `{1..k}`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm {
            image: (1..=k).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Perm> {
        let k = image.len();
        let mut seen = vec![false; k + 1];
        for &i in &image {
            if i < 1 || i > k || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {image:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { image })
    }

    /// Builds a permutation of `{1..k}` from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut image: Vec<usize> = (1..=k).collect();
        let mut moved = vec![false; k + 1];
        for cycle in cycles {
            for (idx, &i) in cycle.iter().enumerate() {
                if i < 1 || i > k || moved[i] {
                    return Err(Error::Invalid(format!("bad cycle {cycle:?}")));
                }
                moved[i] = true;
                image[i - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Perm { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// Cycle decomposition; each cycle starts at its least element and the
    /// cycles are ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.size();
        let mut seen = vec![false; k + 1];
        let mut out = Vec::new();
        for start in 1..=k {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    pub fn sign(&self) -> i32 {
        if (self.size() - self.cycles().len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All k! permutations of `{1..k}`.
pub fn all_perms(k: usize) -> Vec<Perm> {
    (1..=k)
        .permutations(k)
        .map(|image| Perm { image })
        .collect()
}

/// A square matrix with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPoly {
    size: usize,
    entries: Vec<Poly>,
}

impl MatrixPoly {
    pub fn zero(size: usize) -> MatrixPoly {
        MatrixPoly {
            size,
            entries: vec![Poly::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> MatrixPoly {
        let mut m = MatrixPoly::zero(size);
        for i in 0..size {
            m[(i, i)] = Poly::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<Poly>) -> MatrixPoly {
        let mut m = MatrixPoly::zero(entries.len());
        for (i, p) in entries.into_iter().enumerate() {
            m[(i, i)] = p;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<MatrixPoly> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch("matrix is not square".into()));
        }
        Ok(MatrixPoly {
            size: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_rat(m: &RatMatrix) -> Result<MatrixPoly> {
        if m.nrows() != m.ncols() {
            return Err(Error::SizeMismatch("matrix is not square".into()));
        }
        let n = m.nrows();
        let mut out = MatrixPoly::zero(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = Poly::constant(m[(i, j)].clone());
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(format!(
                "{}x{0} * {1}x{1}",
                self.size, other.size
            )));
        }
        let n = self.size;
        let mut out = MatrixPoly::zero(n);
        for i in 0..n {
            for k in 0..n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let p = &self[(i, k)] * &other[(k, j)];
                    let v = &out[(i, j)] + &p;
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Poly {
        let mut t = Poly::zero();
        for i in 0..self.size {
            t = &t + &self[(i, i)];
        }
        t
    }
}

impl std::ops::Index<(usize, usize)> for MatrixPoly {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.entries[i * self.size + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixPoly {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.entries[i * self.size + j]
    }
}

fn product_trace(cycle: &[usize], y: &[MatrixPoly]) -> Result<Poly> {
    let mut acc = y[cycle[0] - 1].clone();
    for &i in &cycle[1..] {
        acc = acc.mul(&y[i - 1])?;
    }
    Ok(acc.trace())
}

/// Tr^pi: the product over the cycles `(i1 .. id)` of `pi` of
/// `Tr(Y_{i1} ... Y_{id})`.
pub fn trace_word(pi: &Perm, y: &[MatrixPoly]) -> Result<Poly> {
    if y.len() != pi.size() {
        return Err(Error::SizeMismatch(format!(
            "permutation of {} symbols, {} matrices",
            pi.size(),
            y.len()
        )));
    }
    if y.iter().any(|m| m.size() != y[0].size()) {
        return Err(Error::SizeMismatch("matrix sizes differ".into()));
    }
    let mut acc = Poly::one();
    for cycle in pi.cycles() {
        acc = &acc * &product_trace(&cycle, y)?;
    }
    Ok(acc)
}

/// Rotates a cycle so its least entry comes first; traces are invariant
/// under exactly this, so it keys the memo table in `fundamental_identity`.
fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
        .unwrap();
    let mut out = cycle[pos..].to_vec();
    out.extend_from_slice(&cycle[..pos]);
    out
}

/// The alternating sum `sum over pi in S_{n+1} of sign(pi) * Tr^pi` for the
/// n+1 supplied n x n matrices; identically zero over any commutative ring.
pub fn fundamental_identity(n: usize, y: &[MatrixPoly]) -> Result<Poly> {
    if y.len() != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "need {} matrices, got {}",
            n + 1,
            y.len()
        )));
    }
    if y.iter().any(|m| m.size() != n) {
        return Err(Error::SizeMismatch(format!("matrices must be {n}x{n}")));
    }
    let mut cycle_traces: HashMap<Vec<usize>, Poly> = HashMap::new();
    let mut acc = Poly::zero();
    for pi in all_perms(n + 1) {
        let mut term = Poly::constant(rat(pi.sign() as i64, 1));
        for cycle in pi.cycles() {
            let key = canonical_rotation(&cycle);
            let tr = match cycle_traces.get(&key) {
                Some(t) => t.clone(),
                None => {
                    let t = product_trace(&key, y)?;
                    cycle_traces.insert(key, t.clone());
                    t
                }
            };
            term = &term * &tr;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `fundamental_identity` specialized to rational matrices; avoids the
/// polynomial wrappers, which matters for the randomized checks at n >= 4.
pub fn fundamental_identity_rat(n: usize, y: &[RatMatrix]) -> Result<Rat> {
    if y.len() != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "need {} matrices, got {}",
            n + 1,
            y.len()
        )));
    }
    if y.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::SizeMismatch(format!("matrices must be {n}x{n}")));
    }
    let mut cycle_traces: HashMap<Vec<usize>, Rat> = HashMap::new();
    let mut acc = Rat::zero();
    for pi in all_perms(n + 1) {
        let mut term = rat(pi.sign() as i64, 1);
        for cycle in pi.cycles() {
            let key = canonical_rotation(&cycle);
            let tr = match cycle_traces.get(&key) {
                Some(t) => t.clone(),
                None => {
                    let mut prod = y[key[0] - 1].clone();
                    for &i in &key[1..] {
                        prod = prod.mul(&y[i - 1])?;
                    }
                    let t = prod.trace()?;
                    cycle_traces.insert(key, t.clone());
                    t
                }
            };
            term *= &tr;
        }
        acc += term;
    }
    Ok(acc)
}

/// m generic n x n matrices; the entry variables are named `x{r}_{i}{j}`.
pub fn generic_matrices(n: usize, m: usize) -> Vec<MatrixPoly> {
    (1..=m)
        .map(|r| {
            let mut mat = MatrixPoly::zero(n);
            for i in 0..n {
                for j in 0..n {
                    mat[(i, j)] = Poly::var(Var::new(&format!("x{}_{}{}", r, i + 1, j + 1)));
                }
            }
            mat
        })
        .collect()
}

/// The element `a` written in slot `i` of the tensor power, as a polynomial
/// in the slotted variables.
fn slot_poly(alg: &BasedAlgebra, a: &AlgElement, i: u32) -> Result<Poly> {
    if !alg.is_slot_kind() {
        return Err(Error::UnsupportedKind);
    }
    let mut p = Poly::constant(a.c0.clone());
    for (w, c) in &a.terms {
        let m = w.mono().ok_or(Error::UnsupportedKind)?;
        let slotted = crate::mono::Mono::from_exps(m.exps().map(|(v, e)| (v.with_slot(i), e)));
        p.add_term(slotted, c.clone());
    }
    Ok(p)
}

/// The diagonal n x n matrix whose ith diagonal entry is a placed in
/// slot i: `diag(1 x .. x a x .. x 1)`.
pub fn diagonal_embedding(alg: &BasedAlgebra, n: usize, a: &AlgElement) -> Result<MatrixPoly> {
    let entries = (1..=n as u32)
        .map(|i| slot_poly(alg, a, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixPoly::diagonal(entries))
}

/// Cross-checks the two derivations of the syzygy over `mu`: substituting
/// the diagonal embeddings of its words into the fundamental trace identity
/// must reproduce `(-1)^{n+1} * phi(psi(mu))`, and both must vanish.
pub fn verify_psi_by_substitution(
    alg: &BasedAlgebra,
    n: usize,
    mu: &WordMultiset,
) -> Result<bool> {
    if mu.height() != n + 1 {
        return Err(Error::WrongSize {
            expected: n + 1,
            got: mu.height(),
        });
    }
    let diags = mu
        .words()
        .iter()
        .map(|w| diagonal_embedding(alg, n, &AlgElement::word(w.clone())))
        .collect::<Result<Vec<_>>>()?;
    let fi = fundamental_identity(n, &diags)?;
    let pp = phi(alg, n, &psi(alg, n, mu)?)?;
    let TensorPoly::Slots(pp) = pp else {
        return Err(Error::UnsupportedKind);
    };
    let sign = if n % 2 == 0 { -Rat::one() } else { Rat::one() };
    Ok(fi.is_zero() && fi == pp.scale(&sign))
}

/// Evaluates `f` under `T_w -> Tr(w(M_1, .., M_m))` at a tuple of pairwise
/// commuting rational matrices; for f in the relation ideal the value is 0.
pub fn gamma_evaluation_check(
    alg: &BasedAlgebra,
    point: &[RatMatrix],
    f: &FPoly,
) -> Result<Rat> {
    let gens = alg.generator_vars().ok_or(Error::UnsupportedKind)?.to_vec();
    if point.len() != gens.len() {
        return Err(Error::SizeMismatch(format!(
            "{} generators, {} matrices",
            gens.len(),
            point.len()
        )));
    }
    for (i, m) in point.iter().enumerate() {
        for (j, other) in point.iter().enumerate().skip(i + 1) {
            if !m.commutes_with(other)? {
                return Err(Error::NotCommuting(i + 1, j + 1));
            }
        }
    }
    // cache Tr(w(M)) per T-symbol
    let mut traces: BTreeMap<Var, Rat> = BTreeMap::new();
    let mut value = Rat::zero();
    for (mono, c) in f.terms() {
        let mut term = c.clone();
        for (v, e) in mono.exps() {
            let tr = match traces.get(&v) {
                Some(t) => t.clone(),
                None => {
                    let w = alg
                        .tsym_word(v)
                        .ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
                    let m = w.mono().ok_or(Error::UnsupportedKind)?;
                    let n = point[0].nrows();
                    let mut acc = RatMatrix::identity(n);
                    for (wv, we) in m.exps() {
                        let idx = gens
                            .iter()
                            .position(|g| *g == wv)
                            .ok_or_else(|| Error::UnknownVariable(wv.to_string()))?;
                        for _ in 0..we {
                            acc = acc.mul(&point[idx])?;
                        }
                    }
                    let t = acc.trace()?;
                    traces.insert(v, t.clone());
                    t
                }
            };
            for _ in 0..e {
                term *= &tr;
            }
        }
        value += term;
    }
    Ok(value)
}

/// A random matrix with numerators in [-9, 9] and denominators in [1, 9].
pub fn random_rat_matrix<R: Rng>(n: usize, rng: &mut R) -> RatMatrix {
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        }
    }
    m
}
