//! S4 acting on the six pair variables of a 4-element set: the x/z change
//! of coordinates, the ten invariant generators, the six ideal relations
//! and the minimal nine-generator presentation, degreewise kernel
//! verification, and graph-isomorphism fingerprints for 4-vertex graphs.

use crate::error::{Error, Result};
use crate::matrix::Echelon;
use crate::mono::Mono;
use crate::parse::{parse_poly, VarContext};
use crate::poly::Poly;
use crate::rat::{rat, rint, Rat};
use crate::syzygy::FPoly;
use crate::trace::{all_perms, Perm};
use crate::var::Var;
use num::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;

/// The six two-element subsets of {1,2,3,4}, in lexicographic order.
pub const PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// The interned variable x_{ij} for an unordered pair.
pub fn pair_var(i: u8, j: u8) -> Result<Var> {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    if i < 1 || j > 4 || i == j {
        return Err(Error::Invalid(format!("bad pair {{{i},{j}}}")));
    }
    Ok(Var::new(&format!("x_{{{i}{j}}}")))
}

pub fn pair_vars() -> Vec<Var> {
    PAIRS.iter().map(|&(i, j)| pair_var(i, j).unwrap()).collect()
}

fn xvar(i: usize) -> Var {
    Var::slotted("x", i as u32)
}

fn zvar(i: usize) -> Var {
    Var::slotted("z", i as u32)
}

/// The x/z coordinate `(1..3, sign)` a pair variable contributes to:
/// pairs {1,2}/{3,4} make up x1 and z1, {1,3}/{2,4} x2 and z2,
/// {1,4}/{2,3} x3 and z3; the pair containing vertex 1 carries the plus
/// sign in the z form.
fn pair_coord(i: u8, j: u8) -> (usize, i64) {
    if i == 1 {
        (j as usize - 1, 1)
    } else {
        // the complementary pair contains 1; its other vertex names the
        // coordinate
        let other = (1..=4u8).find(|v| *v != i && *v != j && *v != 1).unwrap();
        (other as usize - 1, -1)
    }
}

/// Rewrites a polynomial in the pair variables in the coordinates
/// x1,x2,x3,z1,z2,z3.
pub fn to_xz(p: &Poly) -> Poly {
    static MAP: Lazy<BTreeMap<Var, Poly>> = Lazy::new(|| {
        PAIRS
            .iter()
            .map(|&(i, j)| {
                let (c, s) = pair_coord(i, j);
                let mut q = Poly::from_term(Mono::var(xvar(c)), rat(1, 2));
                q.add_term(Mono::var(zvar(c)), rat(s, 2));
                (pair_var(i, j).unwrap(), q)
            })
            .collect()
    });
    p.substitute(&MAP)
}

/// Inverse of `to_xz`.
pub fn from_xz(p: &Poly) -> Poly {
    static MAP: Lazy<BTreeMap<Var, Poly>> = Lazy::new(|| {
        let mut map = BTreeMap::new();
        for &(i, j) in &PAIRS {
            let (c, s) = pair_coord(i, j);
            let pv = Poly::var(pair_var(i, j).unwrap());
            map.entry(xvar(c))
                .and_modify(|q: &mut Poly| *q = &*q + &pv)
                .or_insert_with(|| pv.clone());
            map.entry(zvar(c))
                .and_modify(|q: &mut Poly| *q = &*q + &pv.scale(&rint(s)))
                .or_insert_with(|| pv.scale(&rint(s)));
        }
        map
    });
    p.substitute(&MAP)
}

/// The action of a permutation of {1,2,3,4} on a polynomial in the pair
/// variables: x_{ij} goes to x_{sigma(i)sigma(j)}.
pub fn s4_act(sigma: &Perm, p: &Poly) -> Poly {
    let table: BTreeMap<Var, Var> = PAIRS
        .iter()
        .map(|&(i, j)| {
            let v = pair_var(i, j).unwrap();
            let w = pair_var(sigma.apply(i as usize) as u8, sigma.apply(j as usize) as u8)
                .unwrap();
            (v, w)
        })
        .collect();
    p.map_vars(|v| table.get(&v).copied().unwrap_or(v))
}

/// The induced action on x/z coordinates: x_i goes to x_{perm[i-1]} and
/// z_i to signs[i-1] * z_{perm[i-1]}.
#[derive(Debug, Clone)]
pub struct SignedAction {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
}

/// The 24 signed actions, derived by pushing each group element through the
/// pair variables.
pub fn signed_actions() -> &'static [SignedAction] {
    static ACTIONS: Lazy<Vec<SignedAction>> = Lazy::new(|| {
        all_perms(4)
            .iter()
            .map(|g| {
                let mut perm = [0usize; 3];
                let mut signs = [0i64; 3];
                for c in 1..=3usize {
                    // the plus pair of coordinate c is {1, c+1}
                    let plus = (1u8, c as u8 + 1);
                    let gi = g.apply(plus.0 as usize) as u8;
                    let gj = g.apply(plus.1 as usize) as u8;
                    let (c2, s) = pair_coord(gi.min(gj), gi.max(gj));
                    perm[c - 1] = c2;
                    signs[c - 1] = s;
                }
                SignedAction { perm, signs }
            })
            .collect()
    });
    &ACTIONS
}

// ----- the presentation --------------------------------------------------

/// (symbol name, x-exponent, y-exponent) for the nine T symbols; y stands
/// for z^2, so the R-degree of T_{x^a y^b} is a + 2b.
const T_WORDS: [(&str, u32, u32); 9] = [
    ("T_x", 1, 0),
    ("T_x2", 2, 0),
    ("T_x3", 3, 0),
    ("T_y", 0, 1),
    ("T_y2", 0, 2),
    ("T_y3", 0, 3),
    ("T_xy", 1, 1),
    ("T_x2y", 2, 1),
    ("T_xy2", 1, 2),
];

pub fn s_var() -> Var {
    Var::new("S")
}

/// The ten presentation symbols with their R-degrees; the nine T symbols in
/// the order of `T_WORDS` followed by S (degree 3).
pub fn symbols() -> Vec<(Var, u32)> {
    let mut out: Vec<(Var, u32)> = T_WORDS
        .iter()
        .map(|&(name, a, b)| (Var::new(name), a + 2 * b))
        .collect();
    out.push((s_var(), 3));
    out
}

/// Sum over the three slots of x_i^a z_i^zb.
fn power_sum3(a: u32, zb: u32) -> Poly {
    let mut p = Poly::zero();
    for i in 1..=3 {
        p.add_term(
            Mono::from_exps([(xvar(i), a), (zvar(i), zb)]),
            Rat::one(),
        );
    }
    p
}

fn z1z2z3() -> Poly {
    Poly::from_term(
        Mono::from_exps([(zvar(1), 1), (zvar(2), 1), (zvar(3), 1)]),
        Rat::one(),
    )
}

/// The ten generators of the invariant ring, in x/z coordinates:
/// [x], [x^2], [x^3], [z^2], [z^4], [z^6], [xz^2], [x^2z^2], [xz^4],
/// z1z2z3.
pub fn ten_generators() -> Vec<Poly> {
    let mut out: Vec<Poly> = [
        (1, 0),
        (2, 0),
        (3, 0),
        (0, 2),
        (0, 4),
        (0, 6),
        (1, 2),
        (2, 2),
        (1, 4),
    ]
    .iter()
    .map(|&(a, zb)| power_sum3(a, zb))
    .collect();
    out.push(z1z2z3());
    out
}

/// The nine minimal generators ([z^6] dropped), in fingerprint order:
/// [x], [x^2], [x^3], [z^2], [z^4], [xz^2], [x^2z^2], [xz^4], z1z2z3.
pub fn nine_generators() -> Vec<Poly> {
    let mut out: Vec<Poly> = [
        (1, 0),
        (2, 0),
        (3, 0),
        (0, 2),
        (0, 4),
        (1, 2),
        (2, 2),
        (1, 4),
    ]
    .iter()
    .map(|&(a, zb)| power_sum3(a, zb))
    .collect();
    out.push(z1z2z3());
    out
}

/// The presentation homomorphism: T_{x^a y^b} goes to the power sum of
/// x^a z^{2b} and S to z1z2z3; output in x/z coordinates.
pub fn phi_s4(f: &FPoly) -> Poly {
    static MAP: Lazy<BTreeMap<Var, Poly>> = Lazy::new(|| {
        let mut map: BTreeMap<Var, Poly> = T_WORDS
            .iter()
            .map(|&(name, a, b)| (Var::new(name), power_sum3(a, 2 * b)))
            .collect();
        map.insert(s_var(), z1z2z3());
        map
    });
    f.substitute(&MAP)
}

const RELATION_TEXTS: [(&str, &str); 6] = [
    (
        "S^2",
        "S^2 - 1/3*T_y3 + 1/2*T_y2*T_y - 1/6*T_y^3",
    ),
    (
        "J_{3,2}",
        "6*T_x2y*T_xy - 3*T_xy2*T_x2 - 2*T_x2y*T_x*T_y + T_xy2*T_x^2 - 4*T_xy^2*T_x \
         + 2*T_xy*T_x^2*T_y - 3*T_x3*T_y2 + 4*T_x2*T_x*T_y2 - T_x^3*T_y2 \
         + T_x3*T_y^2 - T_x2*T_x*T_y^2",
    ),
    (
        "J_{2,3}",
        "6*T_xy2*T_xy - 3*T_x2y*T_y2 - 2*T_xy2*T_x*T_y + T_x2y*T_y^2 - 4*T_xy^2*T_y \
         + 2*T_xy*T_y^2*T_x - 3*T_y3*T_x2 + 4*T_y2*T_y*T_x2 - T_y^3*T_x2 \
         + T_y3*T_x^2 - T_y2*T_y*T_x^2",
    ),
    (
        "J_{4,2}",
        "6*T_x2y^2 + T_xy^2*T_x2 - 3*T_xy^2*T_x^2 - 6*T_x3*T_xy2 + 2*T_x2*T_xy2*T_x \
         + 4*T_x3*T_xy*T_y - 2*T_x2*T_xy*T_x*T_y + 2*T_xy*T_x^3*T_y - 4*T_x2y*T_x2*T_y \
         - T_x2^2*T_y2 + T_x2^2*T_y^2 + 4*T_x2*T_x^2*T_y2 - T_x2*T_x^2*T_y^2 \
         - T_x^4*T_y2 - 2*T_x3*T_x*T_y2",
    ),
    (
        "J_{3,3}",
        "3*T_x2y*T_xy2 - T_xy*T_x2*T_y2 + T_xy^3 + T_xy*T_x^2*T_y2 - 5*T_xy^2*T_x*T_y \
         - 3*T_x3*T_y3 + 2*T_xy*T_xy2*T_x + T_x2*T_x*T_y3 - 3*T_x2*T_xy2*T_y \
         + 2*T_x2y*T_xy*T_y + 3*T_x2*T_x*T_y2*T_y + T_x3*T_y2*T_y + T_x2*T_xy*T_y^2 \
         - T_x^3*T_y2*T_y + 2*T_x^2*T_xy*T_y^2 - T_x2*T_x*T_y^3 - 3*T_x*T_x2y*T_y2",
    ),
    (
        "J_{2,4}",
        "6*T_xy2^2 + T_xy^2*T_y2 - 3*T_xy^2*T_y^2 - 6*T_y3*T_x2y + 2*T_y2*T_x2y*T_y \
         + 4*T_y3*T_xy*T_x - 2*T_y2*T_xy*T_x*T_y + 2*T_xy*T_y^3*T_x - 4*T_xy2*T_y2*T_x \
         - T_y2^2*T_x2 + T_y2^2*T_x^2 + 4*T_y2*T_y^2*T_x2 - T_y2*T_y^2*T_x^2 \
         - T_y^4*T_x2 - 2*T_y3*T_y*T_x2",
    ),
];

pub fn relation_names() -> Vec<&'static str> {
    RELATION_TEXTS.iter().map(|(n, _)| *n).collect()
}

pub fn relation_degrees() -> Vec<u32> {
    vec![6, 7, 8, 8, 9, 10]
}

/// The six ideal generators of the kernel of `phi_s4`, as stored data.
pub fn relation_generators() -> Vec<FPoly> {
    static RELATIONS: Lazy<Vec<Poly>> = Lazy::new(|| {
        let ctx = VarContext::known(symbols().iter().map(|(v, _)| *v));
        RELATION_TEXTS
            .iter()
            .map(|(name, text)| {
                let p = parse_poly(text, &ctx).expect(name);
                check_transcription(name, &p);
                p
            })
            .collect()
    });
    RELATIONS.clone()
}

/// (x-degree, y-degree) weights of a symbol; S counts as y-degree 3/2
/// doubled, so the check works over integers: returns (2*deg_x, 2*deg_y).
fn bidegree(m: &Mono) -> (u32, u32) {
    let mut dx = 0;
    let mut dy = 0;
    for (v, e) in m.exps() {
        if v == s_var() {
            dy += 3 * e;
        } else {
            let (_, a, b) = T_WORDS
                .iter()
                .map(|&(n, a, b)| (n, a, b))
                .find(|(n, _, _)| Var::new(n) == v)
                .expect("not a presentation symbol");
            dx += 2 * a * e;
            dy += 2 * b * e;
        }
    }
    (dx, dy)
}

/// Transcription self-check: every relation is bidegree homogeneous.
fn check_transcription(name: &str, p: &Poly) {
    let mut degs: Vec<(u32, u32)> = p.terms().map(|(m, _)| bidegree(m)).collect();
    degs.dedup();
    assert_eq!(degs.len(), 1, "{name} is not bihomogeneous: {degs:?}");
}

/// The symbol swap x <-> y: T_{x^a y^b} to T_{x^b y^a}, S fixed.
pub fn swap_xy(f: &FPoly) -> FPoly {
    let table: BTreeMap<Var, Var> = T_WORDS
        .iter()
        .map(|&(name, a, b)| {
            let target = T_WORDS
                .iter()
                .find(|&&(_, a2, b2)| a2 == b && b2 == a)
                .unwrap()
                .0;
            let _ = name;
            (Var::new(name), Var::new(target))
        })
        .collect();
    f.map_vars(|v| table.get(&v).copied().unwrap_or(v))
}

/// The minimal presentation on nine symbols: T_{y^3} eliminated from the
/// five J relations via T_{y^3} -> 3S^2 + 3/2 T_{y^2} T_y - 1/2 T_y^3.
pub fn corollary5_presentation() -> (Vec<(Var, u32)>, Vec<FPoly>) {
    let subs: BTreeMap<Var, Poly> = {
        let ctx = VarContext::known(symbols().iter().map(|(v, _)| *v));
        let rhs = parse_poly("3*S^2 + 3/2*T_y2*T_y - 1/2*T_y^3", &ctx).unwrap();
        [(Var::new("T_y3"), rhs)].into_iter().collect()
    };
    let syms: Vec<(Var, u32)> = symbols()
        .into_iter()
        .filter(|(v, _)| *v != Var::new("T_y3"))
        .collect();
    let tilde = relation_generators()[1..]
        .iter()
        .map(|j| j.substitute(&subs))
        .collect();
    (syms, tilde)
}

// ----- degreewise linear algebra -----------------------------------------

/// Number of S4-orbits of degree-d monomials in the six pair variables,
/// by Burnside's lemma.
pub fn invariant_dim(d: u32) -> usize {
    let d = d as usize;
    let mut total = 0usize;
    for g in all_perms(4) {
        // induced permutation on the pair indices
        let mut perm = [0usize; 6];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            let gi = g.apply(i as usize) as u8;
            let gj = g.apply(j as usize) as u8;
            let target = (gi.min(gj), gi.max(gj));
            perm[k] = PAIRS.iter().position(|p| *p == target).unwrap();
        }
        // cycle lengths
        let mut seen = [false; 6];
        let mut dp = vec![0usize; d + 1];
        dp[0] = 1;
        for start in 0..6 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
                len += 1;
            }
            // a fixed monomial is constant on each cycle
            let mut next = vec![0usize; d + 1];
            let mut base = 0;
            while base <= d {
                for t in base..=d {
                    next[t] += dp[t - base];
                }
                base += len;
            }
            dp = next;
        }
        total += dp[d];
    }
    total / 24
}

/// All monomials in the presentation symbols with weighted R-degree d.
pub fn weighted_monomials(syms: &[(Var, u32)], d: u32) -> Vec<Mono> {
    fn rec(
        syms: &[(Var, u32)],
        start: usize,
        remaining: u32,
        current: &mut Vec<(Var, u32)>,
        out: &mut Vec<Mono>,
    ) {
        if remaining == 0 {
            out.push(Mono::from_exps(current.iter().copied()));
            return;
        }
        for k in start..syms.len() {
            let (v, w) = syms[k];
            if w > remaining {
                continue;
            }
            let mut e = 1;
            while e * w <= remaining {
                current.push((v, e));
                rec(syms, k + 1, remaining - e * w, current, out);
                current.pop();
                e += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(syms, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn exps6(m: &Mono) -> [u32; 6] {
    let mut e = [0u32; 6];
    for i in 1..=3 {
        e[i - 1] = m.exp(xvar(i));
        e[i + 2] = m.exp(zvar(i));
    }
    e
}

fn act_exps(act: &SignedAction, e: &[u32; 6]) -> ([u32; 6], i64) {
    let mut out = [0u32; 6];
    let mut sign = 1i64;
    for i in 0..3 {
        let j = act.perm[i] - 1;
        out[j] = e[i];
        out[j + 3] = e[i + 3];
        if e[i + 3] % 2 == 1 && act.signs[i] < 0 {
            sign = -sign;
        }
    }
    (out, sign)
}

/// An invariant polynomial in x/z coordinates is determined by its
/// coefficients at one representative per signed orbit; representatives of
/// orbits some group element negates are dropped (the coefficient there is
/// forced to 0).
fn canonical_columns(d: u32) -> Vec<Mono> {
    let vars: Vec<Var> = (1..=3).map(xvar).chain((1..=3).map(zvar)).collect();
    crate::algebra::monomials_of_degree(&vars, d)
        .into_iter()
        .filter(|m| {
            let e = exps6(m);
            for act in signed_actions() {
                let (img, sign) = act_exps(act, &e);
                if img < e || (img == e && sign < 0) {
                    return false;
                }
            }
            true
        })
        .collect()
}

/// Coefficient vector of a homogeneous invariant at the canonical columns.
fn coords(p: &Poly, index: &BTreeMap<Mono, usize>, len: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); len];
    for (m, c) in p.terms() {
        if let Some(&k) = index.get(m) {
            v[k] = c.clone();
        }
    }
    v
}

#[derive(Debug, Clone)]
pub struct KernelDegree {
    pub degree: u32,
    pub kernel_dim: usize,
    pub ideal_dim: usize,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct MinimalityWitness {
    pub relation: &'static str,
    pub degree: u32,
    pub ideal_dim: usize,
    pub dropped_dim: usize,
    pub essential: bool,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub degrees: Vec<KernelDegree>,
    pub minimality: Vec<MinimalityWitness>,
}

/// Coefficient vectors (over the degree-d monomial basis of the symbol
/// algebra) spanning the degree-d part of the ideal generated by the listed
/// relations.
fn ideal_span_vectors(
    syms: &[(Var, u32)],
    relations: &[(usize, &FPoly, u32)],
    d: u32,
    index: &BTreeMap<Mono, usize>,
    skip: Option<usize>,
) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for &(k, rel, rd) in relations {
        if Some(k) == skip || rd > d {
            continue;
        }
        for m in weighted_monomials(syms, d - rd) {
            let prod = rel * &Poly::from_term(m, Rat::one());
            let mut v = vec![Rat::zero(); index.len()];
            for (mono, c) in prod.terms() {
                v[*index.get(mono).expect("degree bookkeeping")] = c.clone();
            }
            out.push(v);
        }
    }
    out
}

/// Degreewise comparison of ker(phi_s4) with the ideal generated by the six
/// relations, plus a drop-one minimality check for each relation in its own
/// degree.
pub fn kernel_report(d_max: u32) -> KernelReport {
    let syms = symbols();
    let rels = relation_generators();
    let rel_degs = relation_degrees();
    let indexed: Vec<(usize, &FPoly, u32)> = rels
        .iter()
        .enumerate()
        .map(|(k, r)| (k, r, rel_degs[k]))
        .collect();
    let mut degrees = Vec::new();
    for d in 1..=d_max {
        let fmonos = weighted_monomials(&syms, d);
        let columns = canonical_columns(d);
        let col_index: BTreeMap<Mono, usize> =
            columns.iter().cloned().zip(0..).collect();
        let mut image = Echelon::new();
        for m in &fmonos {
            let p = phi_s4(&Poly::from_term(m.clone(), Rat::one()));
            image.insert(coords(&p, &col_index, columns.len()));
        }
        let kernel_dim = fmonos.len() - image.rank();
        let fmono_index: BTreeMap<Mono, usize> =
            fmonos.iter().cloned().zip(0..).collect();
        let mut ideal = Echelon::new();
        for v in ideal_span_vectors(&syms, &indexed, d, &fmono_index, None) {
            ideal.insert(v);
        }
        let ideal_dim = ideal.rank();
        degrees.push(KernelDegree {
            degree: d,
            kernel_dim,
            ideal_dim,
            matches: kernel_dim == ideal_dim,
        });
    }
    let mut minimality = Vec::new();
    for (k, _, rd) in &indexed {
        if *rd > d_max {
            continue;
        }
        let fmonos = weighted_monomials(&syms, *rd);
        let fmono_index: BTreeMap<Mono, usize> =
            fmonos.iter().cloned().zip(0..).collect();
        let full = {
            let mut e = Echelon::new();
            for v in ideal_span_vectors(&syms, &indexed, *rd, &fmono_index, None) {
                e.insert(v);
            }
            e.rank()
        };
        let dropped = {
            let mut e = Echelon::new();
            for v in ideal_span_vectors(&syms, &indexed, *rd, &fmono_index, Some(*k)) {
                e.insert(v);
            }
            e.rank()
        };
        minimality.push(MinimalityWitness {
            relation: RELATION_TEXTS[*k].0,
            degree: *rd,
            ideal_dim: full,
            dropped_dim: dropped,
            essential: dropped < full,
        });
    }
    KernelReport {
        degrees,
        minimality,
    }
}

/// Indecomposable invariant counts per degree 1..d_max: the dimension of
/// degree-d invariants modulo products of lower-degree invariants. The
/// expected profile is (1,2,3,2,1,0,0,...): the nine minimal generators.
pub fn min_generator_profile(d_max: u32) -> Vec<usize> {
    let syms = symbols();
    let mut out = Vec::new();
    for d in 1..=d_max {
        let columns = canonical_columns(d);
        let col_index: BTreeMap<Mono, usize> =
            columns.iter().cloned().zip(0..).collect();
        let mut all = Echelon::new();
        let mut composite = Echelon::new();
        for m in weighted_monomials(&syms, d) {
            let v = coords(
                &phi_s4(&Poly::from_term(m.clone(), Rat::one())),
                &col_index,
                columns.len(),
            );
            if m.degree() >= 2 {
                composite.insert(v.clone());
            }
            all.insert(v);
        }
        // surjectivity cross-check against the Burnside count
        debug_assert_eq!(all.rank(), invariant_dim(d), "d = {d}");
        out.push(all.rank() - composite.rank());
    }
    out
}

// ----- graphs ------------------------------------------------------------

/// A simple graph on vertices {1,2,3,4}: a subset of the six pairs, stored
/// as a bitmask over `PAIRS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph4(pub u8);

impl Graph4 {
    pub fn from_edges(edges: &[(u8, u8)]) -> Result<Graph4> {
        let mut bits = 0u8;
        for &(i, j) in edges {
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            let k = PAIRS
                .iter()
                .position(|p| *p == (i, j))
                .ok_or_else(|| Error::Invalid(format!("bad edge {{{i},{j}}}")))?;
            bits |= 1 << k;
        }
        Ok(Graph4(bits))
    }

    /// Parses a comma-separated edge list like "12,34"; empty means the
    /// empty graph.
    pub fn parse(text: &str) -> Result<Graph4> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Graph4(0));
        }
        let mut edges = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let digits: Vec<u8> = part.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            if digits.len() != 2 || digits.iter().any(|&d| d < 1 || d > 4) {
                return Err(Error::Invalid(format!("bad edge `{part}`")));
            }
            edges.push((digits[0], digits[1]));
        }
        Graph4::from_edges(&edges)
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        PAIRS
            .iter()
            .enumerate()
            .filter(|(k, _)| self.0 >> k & 1 == 1)
            .map(|(_, p)| *p)
            .collect()
    }

    pub fn all() -> impl Iterator<Item = Graph4> {
        (0u8..64).map(Graph4)
    }

    pub fn relabel(&self, sigma: &Perm) -> Graph4 {
        let edges: Vec<(u8, u8)> = self
            .edges()
            .iter()
            .map(|&(i, j)| {
                (
                    sigma.apply(i as usize) as u8,
                    sigma.apply(j as usize) as u8,
                )
            })
            .collect();
        Graph4::from_edges(&edges).unwrap()
    }

    pub fn to_string_edges(&self) -> String {
        self.edges()
            .iter()
            .map(|(i, j)| format!("{i}{j}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The nine minimal-generator values at the 0/1 edge-indicator point of a
/// graph, in the order of `nine_generators`.
pub type Fingerprint = Vec<Rat>;

pub fn fingerprint(g: Graph4) -> Fingerprint {
    let mut point: BTreeMap<Var, Rat> = BTreeMap::new();
    for c in 1..=3usize {
        point.insert(xvar(c), Rat::zero());
        point.insert(zvar(c), Rat::zero());
    }
    for &(i, j) in &g.edges() {
        let (c, s) = pair_coord(i, j);
        *point.get_mut(&xvar(c)).unwrap() += Rat::one();
        *point.get_mut(&zvar(c)).unwrap() += rint(s);
    }
    nine_generators()
        .iter()
        .map(|p| p.eval(&point).unwrap())
        .collect()
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    /// Graphs grouped by fingerprint, each class sorted, classes ordered by
    /// their least member.
    pub fingerprint_classes: Vec<(Fingerprint, Vec<Graph4>)>,
    /// Graphs grouped by S4-orbit, same ordering.
    pub orbit_classes: Vec<Vec<Graph4>>,
    /// Whether the two partitions coincide.
    pub equal: bool,
}

/// Partitions the 64 labeled graphs by fingerprint and, independently, by
/// relabeling orbit; the theorem says the partitions agree (11 classes).
pub fn isomorphism_classes() -> ClassReport {
    let perms = all_perms(4);
    let mut by_orbit: BTreeMap<Graph4, Vec<Graph4>> = BTreeMap::new();
    let mut by_fp: BTreeMap<Vec<Rat>, Vec<Graph4>> = BTreeMap::new();
    for g in Graph4::all() {
        let rep = perms.iter().map(|s| g.relabel(s)).min().unwrap();
        by_orbit.entry(rep).or_default().push(g);
        by_fp.entry(fingerprint(g)).or_default().push(g);
    }
    let orbit_classes: Vec<Vec<Graph4>> = by_orbit.into_values().collect();
    let mut fingerprint_classes: Vec<(Fingerprint, Vec<Graph4>)> =
        by_fp.into_iter().map(|(fp, gs)| (fp, gs)).collect();
    fingerprint_classes.sort_by_key(|(_, gs)| gs[0]);
    let equal = orbit_classes
        == fingerprint_classes
            .iter()
            .map(|(_, gs)| gs.clone())
            .collect::<Vec<_>>();
    ClassReport {
        fingerprint_classes,
        orbit_classes,
        equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(i: u8, j: u8) -> Poly {
        Poly::var(pair_var(i, j).unwrap())
    }

    #[test]
    fn xz_round_trip() {
        // x_{12} -> (x1 + z1)/2
        let mut expect = Poly::from_term(Mono::var(xvar(1)), rat(1, 2));
        expect.add_term(Mono::var(zvar(1)), rat(1, 2));
        assert_eq!(to_xz(&pv(1, 2)), expect);

        // x1 + x2 + x3 -> sum of all six pair variables
        let sum_x = &(&Poly::var(xvar(1)) + &Poly::var(xvar(2))) + &Poly::var(xvar(3));
        let all: Poly = PAIRS
            .iter()
            .fold(Poly::zero(), |acc, &(i, j)| &acc + &pv(i, j));
        assert_eq!(from_xz(&sum_x), all);

        assert!(to_xz(&Poly::zero()).is_zero());

        for p in [
            &pv(1, 2) * &pv(3, 4),
            &pv(1, 3).pow(3) - &pv(2, 4),
        ] {
            assert_eq!(from_xz(&to_xz(&p)), p);
        }
        for q in [
            &Poly::var(xvar(2)) * &Poly::var(zvar(3)),
            &z1z2z3() - &Poly::var(xvar(1)).pow(2),
        ] {
            assert_eq!(to_xz(&from_xz(&q)), q);
        }
    }

    #[test]
    fn action_examples() {
        let swap12 = Perm::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert_eq!(s4_act(&swap12, &pv(1, 3)), pv(2, 3));

        // (12)(34) fixes z1 and negates z2
        let h = Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let z1 = &pv(1, 2) - &pv(3, 4);
        let z2 = &pv(1, 3) - &pv(2, 4);
        assert_eq!(s4_act(&h, &z1), z1);
        assert_eq!(s4_act(&h, &z2), -&z2);

        // z1z2z3 is invariant under all 24 permutations
        let zzz = from_xz(&z1z2z3());
        for g in all_perms(4) {
            assert_eq!(s4_act(&g, &zzz), zzz);
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let p = &(&pv(1, 2).pow(2) * &pv(2, 3)) - &pv(1, 4).scale(&rint(3));
        for s in all_perms(4) {
            for t in [
                Perm::from_cycles(4, &[vec![1, 2, 3]]).unwrap(),
                Perm::from_cycles(4, &[vec![2, 4]]).unwrap(),
            ] {
                let st =
                    Perm::from_image((1..=4).map(|i| s.apply(t.apply(i))).collect()).unwrap();
                assert_eq!(s4_act(&st, &p), s4_act(&s, &s4_act(&t, &p)));
            }
        }
    }

    #[test]
    fn generators_are_invariant() {
        for gen in ten_generators() {
            let p = from_xz(&gen);
            for g in all_perms(4) {
                assert_eq!(s4_act(&g, &p), p);
            }
        }
    }

    #[test]
    fn h_fixes_x_and_z_squares() {
        let doubles = [
            Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
            Perm::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap(),
            Perm::from_cycles(4, &[vec![1, 4], vec![2, 3]]).unwrap(),
        ];
        for h in &doubles {
            for c in 1..=3usize {
                let x = from_xz(&Poly::var(xvar(c)));
                let z2 = from_xz(&Poly::var(zvar(c)).pow(2));
                assert_eq!(s4_act(h, &x), x);
                assert_eq!(s4_act(h, &z2), z2);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let ctx = VarContext::known(symbols().iter().map(|(v, _)| *v));
        let ty = parse_poly("T_y", &ctx).unwrap();
        assert_eq!(phi_s4(&ty), power_sum3(0, 2));
        assert_eq!(phi_s4(&Poly::one()), Poly::one());
        let rel = parse_poly("S^2 - 1/3*T_y3 + 1/2*T_y2*T_y - 1/6*T_y^3", &ctx).unwrap();
        assert!(phi_s4(&rel).is_zero());
    }

    #[test]
    fn relations_vanish() {
        for (name, rel) in relation_names().iter().zip(relation_generators()) {
            assert!(phi_s4(&rel).is_zero(), "{name}");
        }
    }

    #[test]
    fn relation_degrees_and_symmetries() {
        let rels = relation_generators();
        for (rel, d) in rels.iter().zip(relation_degrees()) {
            let sym_weight: BTreeMap<Var, u32> = symbols().into_iter().collect();
            for (m, _) in rel.terms() {
                let total: u32 = m.exps().map(|(v, e)| sym_weight[&v] * e).sum();
                assert_eq!(total, d);
            }
        }
        // x <-> y symmetry pairs up the J's
        assert_eq!(swap_xy(&rels[1]), rels[2]);
        assert_eq!(swap_xy(&rels[2]), rels[1]);
        assert_eq!(swap_xy(&rels[3]), rels[5]);
        assert_eq!(swap_xy(&rels[5]), rels[3]);
        assert_eq!(swap_xy(&rels[4]), rels[4]);
    }

    #[test]
    fn corollary_presentation() {
        let (syms, tilde) = corollary5_presentation();
        assert_eq!(syms.len(), 9);
        assert!(syms.iter().all(|(v, _)| *v != Var::new("T_y3")));
        // J_{3,2} has no T_{y^3} term, so it is unchanged
        assert_eq!(tilde[0], relation_generators()[1]);
        for (k, j) in tilde.iter().enumerate() {
            assert!(phi_s4(j).is_zero(), "tilde J #{k}");
            assert!(j.vars().iter().all(|v| *v != Var::new("T_y3")));
        }
    }

    #[test]
    fn burnside_dims() {
        let dims: Vec<usize> = (0..=10).map(invariant_dim).collect();
        assert_eq!(dims, vec![1, 1, 3, 6, 11, 18, 32, 48, 75, 111, 160]);
    }

    #[test]
    fn canonical_columns_count_matches_burnside() {
        for d in 0..=8 {
            assert_eq!(canonical_columns(d).len(), invariant_dim(d), "d = {d}");
        }
    }

    #[test]
    fn kernel_dimensions_low_degrees() {
        let report = kernel_report(8);
        let kdims: Vec<usize> = report.degrees.iter().map(|r| r.kernel_dim).collect();
        assert_eq!(kdims, vec![0, 0, 0, 0, 0, 1, 2, 6]);
        assert!(report.degrees.iter().all(|r| r.matches));
        // relations of degree <= 8 are each essential
        assert_eq!(report.minimality.len(), 4);
        assert!(report.minimality.iter().all(|w| w.essential));
    }

    #[test]
    fn min_generator_profile_matches() {
        assert_eq!(min_generator_profile(6), vec![1, 2, 3, 2, 1, 0]);
    }

    #[test]
    fn fingerprint_examples() {
        assert_eq!(fingerprint(Graph4(0)), vec![rint(0); 9]);

        let k4 = Graph4(0b111111);
        assert_eq!(
            fingerprint(k4),
            vec![
                rint(6),
                rint(12),
                rint(24),
                rint(0),
                rint(0),
                rint(0),
                rint(0),
                rint(0),
                rint(0)
            ]
        );

        let edge = Graph4::from_edges(&[(1, 2)]).unwrap();
        let mut expect = vec![rint(1); 8];
        expect.push(rint(0));
        assert_eq!(fingerprint(edge), expect);
    }

    #[test]
    fn fingerprint_is_relabeling_invariant() {
        for g in Graph4::all() {
            let fp = fingerprint(g);
            for s in all_perms(4) {
                assert_eq!(fingerprint(g.relabel(&s)), fp);
            }
        }
    }

    #[test]
    fn graph_classes() {
        let report = isomorphism_classes();
        assert!(report.equal);
        assert_eq!(report.fingerprint_classes.len(), 11);
        // empty and complete graphs are singletons
        let sizes: BTreeMap<Graph4, usize> = report
            .fingerprint_classes
            .iter()
            .flat_map(|(_, gs)| gs.iter().map(|g| (*g, gs.len())))
            .collect();
        assert_eq!(sizes[&Graph4(0)], 1);
        assert_eq!(sizes[&Graph4(63)], 1);
        // the path 1-2-3 and its relabelings form one class
        let path = Graph4::from_edges(&[(1, 2), (2, 3)]).unwrap();
        let class = report
            .fingerprint_classes
            .iter()
            .find(|(_, gs)| gs.contains(&path))
            .unwrap();
        for s in all_perms(4) {
            assert!(class.1.contains(&path.relabel(&s)));
        }
    }

    #[test]
    fn graph_parsing() {
        assert_eq!(Graph4::parse("").unwrap(), Graph4(0));
        assert_eq!(
            Graph4::parse("12,34").unwrap(),
            Graph4::from_edges(&[(1, 2), (3, 4)]).unwrap()
        );
        assert_eq!(Graph4::parse("21").unwrap(), Graph4::parse("12").unwrap());
        assert!(Graph4::parse("15").is_err());
        assert!(Graph4::parse("1").is_err());
        let g = Graph4::parse("12,23,34").unwrap();
        assert_eq!(Graph4::parse(&g.to_string_edges()).unwrap(), g);
    }
}
