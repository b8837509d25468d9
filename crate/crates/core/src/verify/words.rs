//! Reduced words in the three involutions, composed and decomposed once per
//! process: several suites look at the same words.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::birational::{sarkisov_decompose, word_map, Decomposition, Letter, RationalMap, DEFAULT_MAX_STEPS};

/// A word, the map it composes to and the result of decomposing that map.
#[derive(Debug)]
pub struct WordRun {
    pub word: Vec<Letter>,
    pub map: Result<RationalMap, String>,
    pub decomposition: Result<Decomposition, String>,
}

impl WordRun {
    /// The decomposition reads the word backwards, with an identity tail.
    pub fn recovers_word(&self) -> bool {
        let reversed: Vec<Letter> = self.word.iter().rev().copied().collect();
        matches!(&self.decomposition, Ok(d) if d.word.letters == reversed && d.word.tail.is_identity())
    }
}

fn cache() -> &'static Mutex<HashMap<Vec<Letter>, Arc<WordRun>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<Letter>, Arc<WordRun>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn word_run(word: &[Letter]) -> Arc<WordRun> {
    if let Some(r) = cache().lock().expect("cache lock").get(word) {
        return r.clone();
    }
    let map = word_map(word).map_err(|e| e.to_string());
    let decomposition = match &map {
        Ok(m) => sarkisov_decompose(m, DEFAULT_MAX_STEPS).map_err(|e| e.to_string()),
        Err(e) => Err(e.clone()),
    };
    let run = Arc::new(WordRun { word: word.to_vec(), map, decomposition });
    cache().lock().expect("cache lock").insert(word.to_vec(), run.clone());
    run
}

/// All reduced words of the given length, in lexicographic order.
pub fn reduced_words(len: usize) -> Vec<Vec<Letter>> {
    let mut words = vec![vec![]];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                Letter::ALL
                    .into_iter()
                    .filter(|l| w.last() != Some(l))
                    .map(|l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    words
}

/// `iota.iota_prime` style label.
pub(crate) fn label(word: &[Letter]) -> String {
    word.iter().map(|l| l.as_str()).collect::<Vec<_>>().join(".")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_reduced_words() {
        assert_eq!(reduced_words(1).len(), 3);
        assert_eq!(reduced_words(2).len(), 6);
        assert_eq!(reduced_words(3).len(), 12);
        assert!(reduced_words(3).iter().all(|w| w.windows(2).all(|p| p[0] != p[1])));
    }
}
