use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Write-once lookup table shared across threads.
///
/// Concurrent misses on the same key may both compute; the values are equal
/// and the first insert wins.
#[derive(Debug)]
pub(crate) struct Memo<K, V> {
    table: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Self {
            table: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_try_insert<E>(
        &self,
        key: K,
        compute: impl FnOnce() -> Result<V, E>,
    ) -> Result<V, E> {
        if let Some(v) = self.table.read().expect("memo lock poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        Ok(self
            .table
            .write()
            .expect("memo lock poisoned")
            .entry(key)
            .or_insert(v)
            .clone())
    }

    pub(crate) fn len(&self) -> usize {
        self.table.read().expect("memo lock poisoned").len()
    }
}

impl<K: Eq + Hash, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
