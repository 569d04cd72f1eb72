//! Based commutative algebras and their symmetric tensor powers.
//!
//! An algebra comes with a distinguished basis `{1} ∪ M`; the supported
//! kinds are polynomial algebras (M = non-constant monomials), Veronese
//! subalgebras (M = monomials of degree a positive multiple of q), and
//! finite structure-constant algebras given by a multiplication table.
//!
//! Tensors in the n-th power are slot-tagged polynomials for the polynomial
//! kinds, and maps from slot tuples of basis indices for table algebras.

use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::poly::Poly;
use crate::rat::{factorial, Rat};
use crate::var::Var;
use itertools::Itertools;
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

/// A basis element of the algebra, excluding 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisWord {
    /// Non-constant monomial in the algebra's generator variables.
    Mono(Mono),
    /// Index into a structure-constant basis.
    Index(usize),
}

impl BasisWord {
    pub fn mono(&self) -> Option<&Mono> {
        match self {
            BasisWord::Mono(m) => Some(m),
            BasisWord::Index(_) => None,
        }
    }
}

/// A finite rational combination of basis words plus a constant.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgElement {
    pub c0: Rat,
    pub terms: BTreeMap<BasisWord, Rat>,
}

impl AlgElement {
    pub fn zero() -> AlgElement {
        AlgElement::default()
    }

    pub fn one() -> AlgElement {
        AlgElement {
            c0: Rat::one(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: BasisWord) -> AlgElement {
        let mut e = AlgElement::zero();
        e.add_word(w, Rat::one());
        e
    }

    pub fn add_word(&mut self, w: BasisWord, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.c0 += &other.c0;
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> AlgElement {
        if c.is_zero() {
            return AlgElement::zero();
        }
        AlgElement {
            c0: &self.c0 * c,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.terms.is_empty()
    }
}

/// Sorted multiset of basis words; its size is the height.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WordMultiset(Vec<BasisWord>);

impl WordMultiset {
    pub fn new(mut words: Vec<BasisWord>) -> WordMultiset {
        words.sort();
        WordMultiset(words)
    }

    pub fn words(&self) -> &[BasisWord] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct words with multiplicities, in word order.
    pub fn multiplicities(&self) -> Vec<(&BasisWord, usize)> {
        let mut out: Vec<(&BasisWord, usize)> = Vec::new();
        for w in &self.0 {
            match out.last_mut() {
                Some((u, k)) if *u == w => *k += 1,
                _ => out.push((w, 1)),
            }
        }
        out
    }

    /// Product of the multiplicity factorials r_1! ... r_d!.
    pub fn multiplicity_factorial(&self) -> Rat {
        self.multiplicities()
            .iter()
            .map(|(_, k)| factorial(*k))
            .fold(Rat::one(), |a, b| a * b)
    }

    pub fn union(&self, other: &WordMultiset) -> WordMultiset {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        WordMultiset::new(v)
    }

    pub fn split_at(&self, k: usize) -> (WordMultiset, WordMultiset) {
        let (a, b) = self.0.split_at(k);
        (WordMultiset(a.to_vec()), WordMultiset(b.to_vec()))
    }
}

impl FromIterator<BasisWord> for WordMultiset {
    fn from_iter<I: IntoIterator<Item = BasisWord>>(it: I) -> Self {
        WordMultiset::new(it.into_iter().collect())
    }
}

/// A tensor in the n-th tensor power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorPoly {
    /// Slot-tagged polynomial (polynomial and Veronese kinds).
    Slots(Poly),
    /// Map from slot tuples of basis indices to coefficients (table kind);
    /// `None` marks a 1 in that slot.
    Tuples(BTreeMap<Vec<Option<usize>>, Rat>),
}

impl TensorPoly {
    pub fn is_zero(&self) -> bool {
        match self {
            TensorPoly::Slots(p) => p.is_zero(),
            TensorPoly::Tuples(t) => t.is_empty(),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            TensorPoly::Slots(p) => Some(p),
            TensorPoly::Tuples(_) => None,
        }
    }
}

/// Multiplication table for a finite structure-constant algebra. Products
/// are keyed by sorted index pairs, so the table is commutative by
/// construction; associativity is swept over all triples when the algebra
/// is built.
#[derive(Debug, Clone)]
pub struct StructureTable {
    pub names: Vec<String>,
    pub degrees: Option<Vec<u32>>,
    pub products: BTreeMap<(usize, usize), AlgElement>,
}

impl StructureTable {
    pub fn product(&self, i: usize, j: usize) -> Result<&AlgElement> {
        let key = (i.min(j), i.max(j));
        self.products.get(&key).ok_or_else(|| {
            Error::TableMiss(self.names[key.0].clone(), self.names[key.1].clone())
        })
    }
}

#[derive(Debug)]
enum AlgebraKind {
    Polynomial { vars: Vec<Var> },
    Veronese { vars: Vec<Var>, q: u32 },
    Table(StructureTable),
}

/// A based commutative algebra together with the intern table for its
/// presentation symbols T_w.
#[derive(Debug)]
pub struct BasedAlgebra {
    kind: AlgebraKind,
    tsyms: Mutex<TsymRegistry>,
}

#[derive(Debug, Default)]
struct TsymRegistry {
    by_word: HashMap<BasisWord, Var>,
    by_var: HashMap<Var, BasisWord>,
}

fn default_var_names(m: usize) -> Vec<Var> {
    match m {
        1 => vec![Var::new("x")],
        2 => vec![Var::new("x"), Var::new("y")],
        3 => vec![Var::new("x"), Var::new("y"), Var::new("z")],
        _ => (1..=m).map(|i| Var::new(&format!("x{i}"))).collect(),
    }
}

impl BasedAlgebra {
    /// `K[x_1..x_m]` with the monomial basis.
    pub fn polynomial(m: usize) -> BasedAlgebra {
        BasedAlgebra {
            kind: AlgebraKind::Polynomial {
                vars: default_var_names(m),
            },
            tsyms: Mutex::new(TsymRegistry::default()),
        }
    }

    pub fn polynomial_named(names: &[&str]) -> BasedAlgebra {
        BasedAlgebra {
            kind: AlgebraKind::Polynomial {
                vars: names.iter().map(|n| Var::new(n)).collect(),
            },
            tsyms: Mutex::new(TsymRegistry::default()),
        }
    }

    /// q-th Veronese subalgebra of `K[x_1..x_m]`.
    pub fn veronese(m: usize, q: u32) -> Result<BasedAlgebra> {
        if q == 0 {
            return Err(Error::Invalid("Veronese degree must be positive".into()));
        }
        Ok(BasedAlgebra {
            kind: AlgebraKind::Veronese {
                vars: default_var_names(m),
                q,
            },
            tsyms: Mutex::new(TsymRegistry::default()),
        })
    }

    /// Builds a structure-constant algebra, sweeping associativity over all
    /// basis triples.
    pub fn from_table(table: StructureTable) -> Result<BasedAlgebra> {
        if let Some(degs) = &table.degrees {
            if degs.len() != table.names.len() || degs.iter().any(|&d| d == 0) {
                return Err(Error::Invalid("bad degree list".into()));
            }
        }
        let alg = BasedAlgebra {
            kind: AlgebraKind::Table(table),
            tsyms: Mutex::new(TsymRegistry::default()),
        };
        let k = alg.table().names.len();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let ij = alg.word_product(&BasisWord::Index(i), &BasisWord::Index(j))?;
                    let jl = alg.word_product(&BasisWord::Index(j), &BasisWord::Index(l))?;
                    let left = alg.element_mul(&ij, &AlgElement::word(BasisWord::Index(l)))?;
                    let right = alg.element_mul(&AlgElement::word(BasisWord::Index(i)), &jl)?;
                    if left != right {
                        return Err(Error::Invalid(format!(
                            "table not associative at ({}, {}, {})",
                            alg.table().names[i],
                            alg.table().names[j],
                            alg.table().names[l]
                        )));
                    }
                }
            }
        }
        if let Some(degs) = &alg.table().degrees {
            for ((i, j), prod) in &alg.table().products {
                let d = degs[*i] + degs[*j];
                if !prod.c0.is_zero() {
                    return Err(Error::Invalid("graded table with constant term".into()));
                }
                for w in prod.terms.keys() {
                    let BasisWord::Index(k) = w else { unreachable!() };
                    if degs[*k] != d {
                        return Err(Error::Invalid("table products not graded".into()));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Parses a CLI algebra descriptor: `poly:m`, `veronese:m:q`, `table:<path>`.
    pub fn from_descriptor(desc: &str) -> Result<BasedAlgebra> {
        let parts: Vec<&str> = desc.split(':').collect();
        match parts.as_slice() {
            ["poly", m] => {
                let m: usize = m.parse().map_err(|_| Error::Invalid(desc.into()))?;
                if m == 0 {
                    return Err(Error::Invalid("poly:0".into()));
                }
                Ok(BasedAlgebra::polynomial(m))
            }
            ["veronese", m, q] => {
                let m: usize = m.parse().map_err(|_| Error::Invalid(desc.into()))?;
                let q: u32 = q.parse().map_err(|_| Error::Invalid(desc.into()))?;
                BasedAlgebra::veronese(m, q)
            }
            ["table", path] => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
                BasedAlgebra::from_table(parse_table_json(&text)?)
            }
            _ => Err(Error::Invalid(format!("bad algebra descriptor `{desc}`"))),
        }
    }

    fn table(&self) -> &StructureTable {
        match &self.kind {
            AlgebraKind::Table(t) => t,
            _ => unreachable!(),
        }
    }

    pub fn generator_vars(&self) -> Option<&[Var]> {
        match &self.kind {
            AlgebraKind::Polynomial { vars } | AlgebraKind::Veronese { vars, .. } => Some(vars),
            AlgebraKind::Table(_) => None,
        }
    }

    pub fn is_slot_kind(&self) -> bool {
        self.generator_vars().is_some()
    }

    pub fn is_graded(&self) -> bool {
        match &self.kind {
            AlgebraKind::Polynomial { .. } | AlgebraKind::Veronese { .. } => true,
            AlgebraKind::Table(t) => t.degrees.is_some(),
        }
    }

    pub fn word_degree(&self, w: &BasisWord) -> Result<u32> {
        match (&self.kind, w) {
            (AlgebraKind::Polynomial { .. } | AlgebraKind::Veronese { .. }, BasisWord::Mono(m)) => {
                Ok(m.degree())
            }
            (AlgebraKind::Table(t), BasisWord::Index(i)) => {
                t.degrees.as_ref().map(|d| d[*i]).ok_or(Error::NotGraded)
            }
            _ => Err(Error::UnsupportedKind),
        }
    }

    pub fn multiset_degree(&self, mu: &WordMultiset) -> Result<u32> {
        mu.words().iter().map(|w| self.word_degree(w)).sum()
    }

    /// Checks that `w` denotes a basis word of this algebra.
    pub fn is_basis_word(&self, w: &BasisWord) -> bool {
        match (&self.kind, w) {
            (AlgebraKind::Polynomial { vars }, BasisWord::Mono(m)) => {
                !m.is_one() && m.vars().all(|v| vars.contains(&v))
            }
            (AlgebraKind::Veronese { vars, q }, BasisWord::Mono(m)) => {
                !m.is_one() && m.degree() % q == 0 && m.vars().all(|v| vars.contains(&v))
            }
            (AlgebraKind::Table(t), BasisWord::Index(i)) => *i < t.names.len(),
            _ => false,
        }
    }

    /// All basis words of degree at most `d`, in canonical order.
    pub fn basis_words_up_to(&self, d: u32) -> Result<Vec<BasisWord>> {
        match &self.kind {
            AlgebraKind::Polynomial { vars } => Ok(monomials_up_to(vars, d)
                .into_iter()
                .filter(|m| !m.is_one())
                .map(BasisWord::Mono)
                .collect()),
            AlgebraKind::Veronese { vars, q } => Ok(monomials_up_to(vars, d)
                .into_iter()
                .filter(|m| !m.is_one() && m.degree() % q == 0)
                .map(BasisWord::Mono)
                .collect()),
            AlgebraKind::Table(t) => {
                let degs = t.degrees.as_ref().ok_or(Error::NotGraded)?;
                Ok((0..t.names.len())
                    .filter(|&i| degs[i] <= d)
                    .map(BasisWord::Index)
                    .collect())
            }
        }
    }

    pub fn word_name(&self, w: &BasisWord) -> String {
        match (w, &self.kind) {
            (BasisWord::Mono(m), _) => m.to_string(),
            (BasisWord::Index(i), AlgebraKind::Table(t)) => t.names[*i].clone(),
            (BasisWord::Index(i), _) => format!("e{i}"),
        }
    }

    /// Parses a basis word from text: a monomial over the generator
    /// variables for polynomial kinds (e.g. `x`, `x^2*y`, `xy`), or a basis
    /// name for table algebras.
    pub fn parse_word(&self, text: &str) -> Result<BasisWord> {
        let text = text.trim();
        match &self.kind {
            AlgebraKind::Table(t) => t
                .names
                .iter()
                .position(|n| n == text)
                .map(BasisWord::Index)
                .ok_or_else(|| Error::UnknownVariable(text.to_string())),
            AlgebraKind::Polynomial { vars } | AlgebraKind::Veronese { vars, .. } => {
                let m = parse_compact_monomial(text, vars)?;
                let w = BasisWord::Mono(m);
                if self.is_basis_word(&w) {
                    Ok(w)
                } else {
                    Err(Error::NotAWord)
                }
            }
        }
    }

    /// The product u*v expanded in the basis `{1} ∪ M`.
    pub fn word_product(&self, u: &BasisWord, v: &BasisWord) -> Result<AlgElement> {
        match (&self.kind, u, v) {
            (
                AlgebraKind::Polynomial { .. } | AlgebraKind::Veronese { .. },
                BasisWord::Mono(a),
                BasisWord::Mono(b),
            ) => Ok(AlgElement::word(BasisWord::Mono(a.mul(b)))),
            (AlgebraKind::Table(t), BasisWord::Index(i), BasisWord::Index(j)) => {
                t.product(*i, *j).cloned()
            }
            _ => Err(Error::UnsupportedKind),
        }
    }

    pub fn element_mul(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        let mut out = AlgElement::zero();
        out.c0 = &a.c0 * &b.c0;
        for (w, c) in &a.terms {
            out.add_word(w.clone(), c * &b.c0);
        }
        for (w, c) in &b.terms {
            out.add_word(w.clone(), c * &a.c0);
        }
        for (w, cw) in &a.terms {
            for (v, cv) in &b.terms {
                let prod = self.word_product(w, v)?;
                let scaled = prod.scale(&(cw * cv));
                out.c0 += &scaled.c0;
                for (u, cu) in scaled.terms {
                    out.add_word(u, cu);
                }
            }
        }
        Ok(out)
    }

    /// Product of a list of words as an algebra element.
    pub fn word_list_product(&self, words: &[BasisWord]) -> Result<AlgElement> {
        let mut acc = AlgElement::one();
        for w in words {
            acc = self.element_mul(&acc, &AlgElement::word(w.clone()))?;
        }
        Ok(acc)
    }

    // ----- tensors ----------------------------------------------------

    pub fn tensor_zero(&self) -> TensorPoly {
        if self.is_slot_kind() {
            TensorPoly::Slots(Poly::zero())
        } else {
            TensorPoly::Tuples(BTreeMap::new())
        }
    }

    pub fn tensor_one(&self, n: usize) -> TensorPoly {
        if self.is_slot_kind() {
            TensorPoly::Slots(Poly::one())
        } else {
            let mut t = BTreeMap::new();
            t.insert(vec![None; n], Rat::one());
            TensorPoly::Tuples(t)
        }
    }

    /// `w` placed in slot `i` (1-based) with 1 elsewhere, as a monomial.
    fn word_in_slot(&self, n: usize, w: &BasisWord, i: usize) -> TensorPoly {
        match w {
            BasisWord::Mono(m) => {
                let slotted = Mono::from_exps(m.exps().map(|(v, e)| (v.with_slot(i as u32), e)));
                TensorPoly::Slots(Poly::from_term(slotted, Rat::one()))
            }
            BasisWord::Index(k) => {
                let mut tuple = vec![None; n];
                tuple[i - 1] = Some(*k);
                let mut t = BTreeMap::new();
                t.insert(tuple, Rat::one());
                TensorPoly::Tuples(t)
            }
        }
    }

    pub fn tensor_add(&self, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
        match (a, b) {
            (TensorPoly::Slots(p), TensorPoly::Slots(q)) => TensorPoly::Slots(p + q),
            (TensorPoly::Tuples(p), TensorPoly::Tuples(q)) => {
                let mut out = p.clone();
                for (t, c) in q {
                    add_tuple(&mut out, t.clone(), c.clone());
                }
                TensorPoly::Tuples(out)
            }
            _ => unreachable!("mixed tensor representations"),
        }
    }

    pub fn tensor_scale(&self, a: &TensorPoly, c: &Rat) -> TensorPoly {
        if c.is_zero() {
            return self.tensor_zero();
        }
        match a {
            TensorPoly::Slots(p) => TensorPoly::Slots(p.scale(c)),
            TensorPoly::Tuples(t) => {
                TensorPoly::Tuples(t.iter().map(|(k, v)| (k.clone(), v * c)).collect())
            }
        }
    }

    pub fn tensor_mul(&self, a: &TensorPoly, b: &TensorPoly) -> Result<TensorPoly> {
        match (a, b) {
            (TensorPoly::Slots(p), TensorPoly::Slots(q)) => Ok(TensorPoly::Slots(p * q)),
            (TensorPoly::Tuples(p), TensorPoly::Tuples(q)) => {
                let mut out: BTreeMap<Vec<Option<usize>>, Rat> = BTreeMap::new();
                for (t1, c1) in p {
                    for (t2, c2) in q {
                        // slotwise products, expanded bilinearly
                        let mut partial: Vec<(Vec<Option<usize>>, Rat)> =
                            vec![(Vec::with_capacity(t1.len()), c1 * c2)];
                        for (s1, s2) in t1.iter().zip(t2) {
                            let slot_elem = match (s1, s2) {
                                (None, None) => None,
                                (Some(i), None) | (None, Some(i)) => {
                                    Some(AlgElement::word(BasisWord::Index(*i)))
                                }
                                (Some(i), Some(j)) => Some(
                                    self.word_product(&BasisWord::Index(*i), &BasisWord::Index(*j))?,
                                ),
                            };
                            let mut next = Vec::new();
                            for (prefix, coeff) in &partial {
                                match &slot_elem {
                                    None => {
                                        let mut p2 = prefix.clone();
                                        p2.push(None);
                                        next.push((p2, coeff.clone()));
                                    }
                                    Some(e) => {
                                        if !e.c0.is_zero() {
                                            let mut p2 = prefix.clone();
                                            p2.push(None);
                                            next.push((p2, coeff * &e.c0));
                                        }
                                        for (w, cw) in &e.terms {
                                            let BasisWord::Index(k) = w else { unreachable!() };
                                            let mut p2 = prefix.clone();
                                            p2.push(Some(*k));
                                            next.push((p2, coeff * cw));
                                        }
                                    }
                                }
                            }
                            partial = next;
                        }
                        for (tuple, coeff) in partial {
                            add_tuple(&mut out, tuple, coeff);
                        }
                    }
                }
                Ok(TensorPoly::Tuples(out))
            }
            _ => Err(Error::UnsupportedKind),
        }
    }

    /// Applies the slot permutation `perm` (1-based images: slot i moves to
    /// `perm[i-1]`).
    pub fn tensor_permute(&self, t: &TensorPoly, perm: &[usize]) -> TensorPoly {
        match t {
            TensorPoly::Slots(p) => TensorPoly::Slots(p.map_vars(|v| match v.slot() {
                Some(s) => v.with_slot(perm[(s - 1) as usize] as u32),
                None => v,
            })),
            TensorPoly::Tuples(map) => {
                let mut out = BTreeMap::new();
                for (tuple, c) in map {
                    let mut t2 = vec![None; tuple.len()];
                    for (i, entry) in tuple.iter().enumerate() {
                        t2[perm[i] - 1] = *entry;
                    }
                    add_tuple(&mut out, t2, c.clone());
                }
                TensorPoly::Tuples(out)
            }
        }
    }

    /// Errors unless `t` is fixed by every adjacent slot transposition
    /// (those generate the whole symmetric group).
    pub fn check_invariant(&self, n: usize, t: &TensorPoly) -> Result<()> {
        for i in 1..n {
            let mut perm: Vec<usize> = (1..=n).collect();
            perm.swap(i - 1, i);
            if &self.tensor_permute(t, &perm) != t {
                return Err(Error::NotInvariant(i, i + 1));
            }
        }
        Ok(())
    }

    /// The power-sum generator `[w]`: the sum over slots of `w` in one slot
    /// with 1 elsewhere.
    pub fn power_sum(&self, n: usize, w: &BasisWord) -> TensorPoly {
        let mut acc = self.tensor_zero();
        for i in 1..=n {
            acc = self.tensor_add(&acc, &self.word_in_slot(n, w, i));
        }
        acc
    }

    /// The product `[w_1]...[w_r]` over the multiset.
    pub fn bracket_product(&self, n: usize, mu: &WordMultiset) -> Result<TensorPoly> {
        let mut acc = self.tensor_one(n);
        for w in mu.words() {
            acc = self.tensor_mul(&acc, &self.power_sum(n, w))?;
        }
        Ok(acc)
    }

    /// The orbit sum O_mu: each monomial in the S_n-orbit of
    /// `w_1 ⊗ ... ⊗ w_r ⊗ 1 ⊗ ... ⊗ 1` with coefficient 1.
    pub fn orbit_sum(&self, n: usize, mu: &WordMultiset) -> Result<TensorPoly> {
        let r = mu.height();
        if r > n {
            return Err(Error::HeightExceedsPower {
                height: r,
                power: n,
            });
        }
        let mut padded: Vec<Option<&BasisWord>> = mu.words().iter().map(Some).collect();
        padded.resize(n, None);
        let arrangements: BTreeSet<Vec<Option<&BasisWord>>> = padded
            .iter()
            .copied()
            .permutations(n)
            .map(|v| v.into_iter().collect())
            .collect();
        let mut acc = self.tensor_zero();
        for arr in arrangements {
            let mut term = self.tensor_one(n);
            for (i, slot) in arr.iter().enumerate() {
                if let Some(w) = slot {
                    term = self.tensor_mul(&term, &self.word_in_slot(n, w, i + 1))?;
                }
            }
            acc = self.tensor_add(&acc, &term);
        }
        Ok(acc)
    }

    /// Splits a slot monomial into per-slot basis words. Returns the words
    /// of the non-trivial slots together with their slot positions.
    fn slot_words(&self, n: usize, m: &Mono) -> Result<Vec<(usize, BasisWord)>> {
        let mut per_slot: BTreeMap<usize, Mono> = BTreeMap::new();
        for (v, e) in m.exps() {
            let slot = v.slot().ok_or(Error::NotInAlgebra(0))? as usize;
            if slot == 0 || slot > n {
                return Err(Error::NotInAlgebra(slot));
            }
            let base = Var::new(&v.name());
            let entry = per_slot.entry(slot).or_insert_with(Mono::one);
            *entry = entry.mul(&Mono::var(base).pow(e));
        }
        let mut out = Vec::new();
        for (slot, mono) in per_slot {
            let w = BasisWord::Mono(mono);
            if !self.is_basis_word(&w) {
                return Err(Error::NotInAlgebra(slot));
            }
            out.push((slot, w));
        }
        Ok(out)
    }

    /// Expands an S_n-invariant tensor in the orbit-sum basis.
    pub fn to_orbit_basis(&self, n: usize, t: &TensorPoly) -> Result<BTreeMap<WordMultiset, Rat>> {
        self.check_invariant(n, t)?;
        self.orbit_coeffs_unchecked(n, t)
    }

    /// Same extraction without the invariance sweep; callers must pass
    /// tensors that are invariant by construction.
    fn orbit_coeffs_unchecked(
        &self,
        n: usize,
        t: &TensorPoly,
    ) -> Result<BTreeMap<WordMultiset, Rat>> {
        let mut out = BTreeMap::new();
        match t {
            TensorPoly::Slots(p) => {
                for (m, c) in p.terms() {
                    let slots = self.slot_words(n, m)?;
                    if canonical_placement(&slots) {
                        let mu: WordMultiset = slots.into_iter().map(|(_, w)| w).collect();
                        out.insert(mu, c.clone());
                    }
                }
            }
            TensorPoly::Tuples(map) => {
                for (tuple, c) in map {
                    let slots: Vec<(usize, BasisWord)> = tuple
                        .iter()
                        .enumerate()
                        .filter_map(|(i, s)| s.map(|k| (i + 1, BasisWord::Index(k))))
                        .collect();
                    if canonical_placement(&slots) {
                        let mu: WordMultiset = slots.into_iter().map(|(_, w)| w).collect();
                        out.insert(mu, c.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Expands an S_n-invariant tensor in the basis of bracket products
    /// `[w_1]...[w_r]`, r <= n, by descending-height elimination: the top
    /// orbit coefficient of a bracket product is the multiplicity factorial,
    /// everything else it contributes has strictly smaller height.
    pub fn to_power_product_basis(
        &self,
        n: usize,
        t: &TensorPoly,
    ) -> Result<BTreeMap<WordMultiset, Rat>> {
        self.check_invariant(n, t)?;
        let mut remaining = self.orbit_coeffs_unchecked(n, t)?;
        let mut result: BTreeMap<WordMultiset, Rat> = BTreeMap::new();
        loop {
            let Some(mu) = remaining
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .max_by_key(|(mu, _)| mu.height())
                .map(|(mu, _)| mu.clone())
            else {
                break;
            };
            let c = remaining.get(&mu).cloned().unwrap() / mu.multiplicity_factorial();
            let expansion =
                self.orbit_coeffs_unchecked(n, &self.bracket_product(n, &mu)?)?;
            for (nu, k) in expansion {
                let entry = remaining.entry(nu).or_insert_with(Rat::zero);
                *entry -= &c * &k;
            }
            remaining.retain(|_, v| !v.is_zero());
            *result.entry(mu).or_insert_with(Rat::zero) += c;
        }
        result.retain(|_, v| !v.is_zero());
        Ok(result)
    }

    /// Rebuilds `sum c_mu * [w_1]...[w_r]` from a coefficient map.
    pub fn from_power_products(
        &self,
        n: usize,
        coeffs: &BTreeMap<WordMultiset, Rat>,
    ) -> Result<TensorPoly> {
        let mut acc = self.tensor_zero();
        for (mu, c) in coeffs {
            let p = self.bracket_product(n, mu)?;
            acc = self.tensor_add(&acc, &self.tensor_scale(&p, c));
        }
        Ok(acc)
    }

    // ----- presentation symbols ---------------------------------------

    /// The interned formal symbol T_w for a basis word.
    pub fn tsym(&self, w: &BasisWord) -> Var {
        let mut reg = self.tsyms.lock().unwrap();
        if let Some(v) = reg.by_word.get(w) {
            return *v;
        }
        let name = format!("T_{}", compact_word_label(&self.word_name(w)));
        let v = Var::new(&name);
        reg.by_word.insert(w.clone(), v);
        reg.by_var.insert(v, w.clone());
        v
    }

    /// The basis word a formal symbol stands for, if it was created here.
    pub fn tsym_word(&self, v: Var) -> Option<BasisWord> {
        self.tsyms.lock().unwrap().by_var.get(&v).cloned()
    }

    /// Renders a tensor for output: slot polynomials print as polynomials,
    /// tuple tensors as sums of tensor monomials.
    pub fn render_tensor(&self, t: &TensorPoly) -> String {
        match t {
            TensorPoly::Slots(p) => p.to_string(),
            TensorPoly::Tuples(map) => {
                if map.is_empty() {
                    return "0".to_string();
                }
                map.iter()
                    .map(|(tuple, c)| {
                        let body = tuple
                            .iter()
                            .map(|s| match s {
                                None => "1".to_string(),
                                Some(k) => self.table().names[*k].clone(),
                            })
                            .join("(x)");
                        format!("{}*{}", crate::rat::rat_to_string(c), body)
                    })
                    .join(" + ")
            }
        }
    }
}

fn add_tuple(map: &mut BTreeMap<Vec<Option<usize>>, Rat>, t: Vec<Option<usize>>, c: Rat) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(t) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Non-trivial slots occupy a prefix in non-decreasing word order.
fn canonical_placement(slots: &[(usize, BasisWord)]) -> bool {
    slots.iter().enumerate().all(|(i, (slot, _))| *slot == i + 1)
        && slots.windows(2).all(|w| w[0].1 <= w[1].1)
}

/// All monomials of degree <= d (including 1), in canonical order.
pub fn monomials_up_to(vars: &[Var], d: u32) -> Vec<Mono> {
    let mut out = vec![Mono::one()];
    let mut frontier = vec![Mono::one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            // extend only by variables >= the largest one present, so each
            // monomial is produced exactly once
            let min = m.exps().last().map(|(v, _)| v);
            for v in vars {
                if min.map_or(true, |mv| *v >= mv) {
                    next.push(m.mul(&Mono::var(*v)));
                }
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Exactly the monomials of degree d, canonical order.
pub fn monomials_of_degree(vars: &[Var], d: u32) -> Vec<Mono> {
    monomials_up_to(vars, d)
        .into_iter()
        .filter(|m| m.degree() == d)
        .collect()
}

/// `x^2*y` -> `x2y`; used inside T-symbol names, which must stay within the
/// polynomial text grammar (no `^` or `*`).
fn compact_word_label(name: &str) -> String {
    let compact: String = name.chars().filter(|c| *c != '^' && *c != '*').collect();
    if compact.chars().all(|c| c.is_ascii_alphanumeric()) {
        compact
    } else {
        format!("{{{compact}}}")
    }
}

/// `x2y` or `x^2*y` -> the monomial x^2*y over the given variables.
/// Accepts both the compact and the starred spelling.
pub fn parse_compact_monomial(text: &str, vars: &[Var]) -> Result<Mono> {
    let by_name: BTreeMap<String, Var> = vars.iter().map(|v| (v.to_string(), *v)).collect();
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*' && *c != '{' && *c != '}')
        .collect();
    let bytes = cleaned.as_bytes();
    let mut i = 0;
    let mut mono = Mono::one();
    while i < bytes.len() {
        if !bytes[i].is_ascii_alphabetic() {
            return Err(Error::SyntaxError {
                pos: i,
                msg: format!("bad word `{text}`"),
            });
        }
        // longest variable-name match
        let mut best: Option<(usize, Var)> = None;
        for (name, v) in &by_name {
            if cleaned[i..].starts_with(name.as_str()) {
                match best {
                    Some((len, _)) if name.len() <= len => {}
                    _ => best = Some((name.len(), *v)),
                }
            }
        }
        let Some((len, v)) = best else {
            return Err(Error::UnknownVariable(cleaned[i..].to_string()));
        };
        i += len;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let e: u32 = if start == i {
            1
        } else {
            cleaned[start..i].parse().map_err(|_| Error::SyntaxError {
                pos: start,
                msg: "exponent out of range".into(),
            })?
        };
        mono = mono.mul(&Mono::var(v).pow(e));
    }
    Ok(mono)
}

/// Parses a structure-constant table from JSON: a map `"u,v" -> {"1": rat,
/// "w": rat, ...}`, optionally wrapped as `{"products": ..., "degrees":
/// {"w": int, ...}}`.
pub fn parse_table_json(text: &str) -> Result<StructureTable> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("table JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Invalid("table JSON must be an object".into()))?;
    let (products_obj, degrees_obj) = if obj.contains_key("products") {
        (
            obj["products"]
                .as_object()
                .ok_or_else(|| Error::Invalid("`products` must be an object".into()))?,
            obj.get("degrees").and_then(|d| d.as_object()),
        )
    } else {
        (obj, None)
    };
    let mut names: BTreeSet<String> = BTreeSet::new();
    for key in products_obj.keys() {
        let (u, v) = key
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("bad product key `{key}`")))?;
        names.insert(u.trim().to_string());
        names.insert(v.trim().to_string());
    }
    let names: Vec<String> = names.into_iter().collect();
    let index: HashMap<&str, usize> = names.iter().map(|n| n.as_str()).zip(0..).collect();
    let mut products: BTreeMap<(usize, usize), AlgElement> = BTreeMap::new();
    for (key, val) in products_obj {
        let (u, v) = key.split_once(',').unwrap();
        let (i, j) = (index[u.trim()], index[v.trim()]);
        let pair = (i.min(j), i.max(j));
        let mut elem = AlgElement::zero();
        let val = val
            .as_object()
            .ok_or_else(|| Error::Invalid(format!("product `{key}` must be an object")))?;
        for (name, coeff) in val {
            let c = json_rat(coeff)?;
            if name == "1" {
                elem.c0 = c;
            } else {
                let k = *index
                    .get(name.as_str())
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                elem.add_word(BasisWord::Index(k), c);
            }
        }
        if let Some(prev) = products.get(&pair) {
            if prev != &elem {
                return Err(Error::Invalid(format!(
                    "conflicting entries for commutative product `{key}`"
                )));
            }
        }
        products.insert(pair, elem);
    }
    let degrees = match degrees_obj {
        None => None,
        Some(d) => {
            let mut degs = vec![0u32; names.len()];
            for (name, v) in d {
                let k = *index
                    .get(name.as_str())
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                degs[k] = v
                    .as_u64()
                    .ok_or_else(|| Error::Invalid("degree must be an integer".into()))?
                    as u32;
            }
            Some(degs)
        }
    };
    Ok(StructureTable {
        names,
        degrees,
        products,
    })
}

fn json_rat(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(crate::rat::rint)
            .ok_or_else(|| Error::Invalid("non-integer numeric coefficient".into())),
        serde_json::Value::String(s) => {
            crate::rat::rat_from_str(s).ok_or_else(|| Error::Invalid(format!("bad rational `{s}`")))
        }
        _ => Err(Error::Invalid("coefficient must be number or string".into())),
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisWord::Mono(m) => write!(f, "{m}"),
            BasisWord::Index(i) => write!(f, "e{i}"),
        }
    }
}
