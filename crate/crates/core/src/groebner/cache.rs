use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{GroebnerBasis, RingSpec};
use crate::poly::{MonomialOrder, Polynomial};

type Key = (Vec<Polynomial>, RingSpec, MonomialOrder);

const MAX_ENTRIES: usize = 50_000;

fn table() -> &'static RwLock<HashMap<Key, Arc<GroebnerBasis>>> {
    static TABLE: OnceLock<RwLock<HashMap<Key, Arc<GroebnerBasis>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn key(gens: &[Polynomial], ring: &RingSpec, ord: &MonomialOrder) -> Key {
    let mut g: Vec<Polynomial> = gens.to_vec();
    g.sort();
    g.dedup();
    (g, ring.clone(), ord.clone())
}

pub(crate) fn lookup(k: &Key) -> Option<Arc<GroebnerBasis>> {
    table().read().ok()?.get(k).cloned()
}

pub(crate) fn store(k: Key, gb: Arc<GroebnerBasis>) {
    if let Ok(mut t) = table().write() {
        if t.len() >= MAX_ENTRIES {
            t.clear();
        }
        t.insert(k, gb);
    }
}

/// Empties the memo table.
pub fn clear_cache() {
    if let Ok(mut t) = table().write() {
        t.clear();
    }
}
