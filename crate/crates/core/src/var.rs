//! Interned polynomial variables.
//!
//! A variable is a name plus an optional slot index (slot-tagged copies of a
//! base variable carry the tensor-factor number, e.g. `x` in slot 2 renders
//! as `x2`). Interning is global and append-only; equal name/slot pairs
//! intern to the same id. Variables order by `(name, slot)` so the order is
//! independent of interning sequence.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarKey {
    pub name: String,
    pub slot: Option<u32>,
}

impl VarKey {
    pub fn render(&self) -> String {
        match self.slot {
            None => self.name.clone(),
            Some(s) => format!("{}{}", self.name, s),
        }
    }
}

struct Interner {
    ids: HashMap<VarKey, u32>,
    keys: Vec<Arc<VarKey>>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    RwLock::new(Interner {
        ids: HashMap::new(),
        keys: Vec::new(),
    })
});

/// An interned variable. Copyable; all structure lives in the intern table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        Var::intern(VarKey {
            name: name.to_string(),
            slot: None,
        })
    }

    /// The slot-tagged copy of `base` living in tensor factor `slot` (1-based).
    pub fn slotted(base: &str, slot: u32) -> Var {
        Var::intern(VarKey {
            name: base.to_string(),
            slot: Some(slot),
        })
    }

    pub fn intern(key: VarKey) -> Var {
        if let Some(&id) = INTERNER.read().unwrap().ids.get(&key) {
            return Var(id);
        }
        let mut w = INTERNER.write().unwrap();
        if let Some(&id) = w.ids.get(&key) {
            return Var(id);
        }
        let id = w.keys.len() as u32;
        w.keys.push(Arc::new(key.clone()));
        w.ids.insert(key, id);
        Var(id)
    }

    pub fn key(&self) -> Arc<VarKey> {
        INTERNER.read().unwrap().keys[self.0 as usize].clone()
    }

    pub fn name(&self) -> String {
        self.key().name.clone()
    }

    pub fn slot(&self) -> Option<u32> {
        self.key().slot
    }

    /// Same variable retagged into another slot.
    pub fn with_slot(&self, slot: u32) -> Var {
        let k = self.key();
        Var::intern(VarKey {
            name: k.name.clone(),
            slot: Some(slot),
        })
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            return std::cmp::Ordering::Equal;
        }
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key().render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Var::new("x");
        let b = Var::new("x");
        assert_eq!(a, b);
        assert_ne!(a, Var::new("y"));
    }

    #[test]
    fn order_by_name_then_slot() {
        let x = Var::new("x");
        let x1 = Var::slotted("x", 1);
        let x2 = Var::slotted("x", 2);
        let y = Var::new("y");
        assert!(x < x1 && x1 < x2 && x2 < y);
    }

    #[test]
    fn slot_rendering() {
        assert_eq!(Var::slotted("z", 3).to_string(), "z3");
        assert_eq!(Var::new("x_{12}").to_string(), "x_{12}");
    }
}
