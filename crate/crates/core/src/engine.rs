use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::algebra::Polynomial;
use crate::config::Config;
use crate::derivations::RhoCache;
use crate::duality::{Coaction, UTensor};
use crate::envelope::{BasisWord, FComb, FMono, UElement};
use crate::index::{Grade, MultiIndex};
use crate::postlie::DLetter;

type Memo<K, V> = Mutex<HashMap<K, Arc<V>>>;

pub(crate) struct Caches {
    pub rho: RhoCache,
    pub basis_rho: Memo<(BasisWord, MultiIndex), Polynomial>,
    pub graft: Memo<(BasisWord, FMono), FComb>,
    pub gl: Memo<(BasisWord, BasisWord), UElement>,
    pub coaction: Memo<(MultiIndex, Grade), Coaction>,
    pub generator_delta: Memo<DLetter, UTensor>,
    pub delta: Memo<BasisWord, UTensor>,
}

/// Configuration plus the memo tables shared by the algebraic operations.
///
/// Cloning is cheap; clones share caches. Every cached value is a function of
/// its key and the configuration, so sharing across threads is safe.
#[derive(Clone)]
pub struct Engine {
    cfg: Config,
    caches: Arc<Caches>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("cfg", &self.cfg).finish_non_exhaustive()
    }
}

impl Engine {
    pub fn new(cfg: Config) -> Engine {
        let caches = Caches {
            rho: RhoCache::new(cfg.dim),
            basis_rho: Mutex::default(),
            graft: Mutex::default(),
            gl: Mutex::default(),
            coaction: Mutex::default(),
            generator_delta: Mutex::default(),
            delta: Mutex::default(),
        };
        Engine { cfg, caches: Arc::new(caches) }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim
    }

    pub fn alpha(&self) -> Grade {
        self.cfg.alpha
    }

    pub(crate) fn caches(&self) -> &Caches {
        &self.caches
    }
}

pub(crate) fn memo<K, V>(table: &Memo<K, V>, key: K, compute: impl FnOnce() -> V) -> Arc<V>
where
    K: Eq + Hash,
{
    if let Some(hit) = table.lock().expect("cache poisoned").get(&key) {
        return hit.clone();
    }
    let value = Arc::new(compute());
    table.lock().expect("cache poisoned").entry(key).or_insert(value).clone()
}
