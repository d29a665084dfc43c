use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A finite nonempty alphabet. Letters are referred to by dense index; names
/// are kept for the text formats. Cloning is cheap (shared storage).
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    inner: Arc<AlphabetInner>,
}

#[derive(PartialEq, Eq)]
struct AlphabetInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    /// Builds an alphabet from distinct letter names.
    ///
    /// Panics when empty or when names repeat; alphabets come from validated
    /// parses or internal constructions, both of which uphold this.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Alphabet {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty(), "alphabet must be nonempty");
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate letter name {n:?}");
        }
        Alphabet {
            inner: Arc::new(AlphabetInner { names, index }),
        }
    }

    /// The alphabet `{0,1}^tracks` of bit-vector letters used for MSO
    /// valuations. Letter index = Σ bit_i · 2^i (track 0 is the first
    /// character of the name); the 0-track alphabet has the single letter `e`.
    pub fn bits(tracks: usize) -> Alphabet {
        assert!(tracks <= 16, "bit alphabet would have 2^{tracks} letters");
        if tracks == 0 {
            return Alphabet::new(["e"]);
        }
        Alphabet::new((0..1usize << tracks).map(|v| {
            (0..tracks)
                .map(|t| if v >> t & 1 == 1 { '1' } else { '0' })
                .collect::<String>()
        }))
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.inner.names[letter]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.inner.names.iter().map(String::as_str)
    }

    pub fn letters(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    /// Same letter names in the same order.
    pub fn same_as(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_round_trip() {
        let a = Alphabet::new(["a", "b", "c"]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.index_of("b"), Some(1));
        assert_eq!(a.name(2), "c");
        assert_eq!(a.index_of("d"), None);
    }

    #[test]
    fn bit_alphabets() {
        let a = Alphabet::bits(2);
        assert_eq!(a.len(), 4);
        assert_eq!(a.name(0), "00");
        assert_eq!(a.name(1), "10"); // track 0 set => first character
        assert_eq!(a.name(2), "01");
        let e = Alphabet::bits(0);
        assert_eq!(e.len(), 1);
        assert_eq!(e.name(0), "e");
    }

    #[test]
    #[should_panic(expected = "duplicate")]
    fn rejects_duplicates() {
        let _ = Alphabet::new(["a", "a"]);
    }
}
