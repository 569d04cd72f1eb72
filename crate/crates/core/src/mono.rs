//! Monomials: finite exponent maps with a canonical graded order.

use crate::var::Var;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial; the empty map is 1. Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    exps: BTreeMap<Var, u32>,
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(v: Var) -> Mono {
        Mono::from_exps([(v, 1)])
    }

    pub fn from_exps<I: IntoIterator<Item = (Var, u32)>>(it: I) -> Mono {
        let mut exps = BTreeMap::new();
        for (v, e) in it {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Mono { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().map(|(v, e)| (*v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.keys().copied()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            *exps.entry(*v).or_insert(0) += e;
        }
        Mono { exps }
    }

    pub fn pow(&self, k: u32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono {
            exps: self.exps.iter().map(|(v, e)| (*v, e * k)).collect(),
        }
    }

    /// Tie-break inside one degree: at the first variable (in increasing
    /// variable order) where the exponents differ, the larger exponent gives
    /// the smaller monomial. This puts `x < y < x^2 < xy < y^2`.
    pub fn cmp_same_degree(&self, other: &Mono) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                    },
                },
            }
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_same_degree(other))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let x = Mono::var(Var::new("x"));
        let y = Mono::var(Var::new("y"));
        let x2 = x.pow(2);
        let xy = x.mul(&y);
        let y2 = y.pow(2);
        let mut ms = vec![y2.clone(), xy.clone(), x2.clone(), y.clone(), x.clone()];
        ms.sort();
        assert_eq!(ms, vec![x, y, x2, xy, y2]);
    }

    #[test]
    fn one_is_minimal() {
        assert!(Mono::one() < Mono::var(Var::new("a")));
        assert_eq!(Mono::one().degree(), 0);
    }

    #[test]
    fn display() {
        let m = Mono::var(Var::new("x")).pow(2).mul(&Mono::var(Var::new("y")));
        assert_eq!(m.to_string(), "x^2*y");
        assert_eq!(Mono::one().to_string(), "1");
    }
}
