use std::collections::HashMap;

use crate::automata::{Alphabet, LassoWord};

/// A deterministic letter-to-letter transducer `T : Σ^ω → Γ^ω` with a total
/// step map `(state, input letter) → (output letter, state)`.
#[derive(Clone, Debug)]
pub struct Transducer {
    input_alphabet: Alphabet,
    output_alphabet: Alphabet,
    state_count: usize,
    initial: usize,
    // step[q * |Σ| + a] = (output letter, successor)
    step: Vec<(usize, usize)>,
}

impl Transducer {
    /// Builds a transducer from the dense step table, which must cover every
    /// (state, input letter) pair.
    pub fn new(
        input_alphabet: Alphabet,
        output_alphabet: Alphabet,
        state_count: usize,
        initial: usize,
        step: Vec<(usize, usize)>,
    ) -> Transducer {
        assert!(state_count > 0 && initial < state_count);
        assert_eq!(step.len(), state_count * input_alphabet.len(), "step map must be total");
        for &(out, next) in &step {
            assert!(out < output_alphabet.len() && next < state_count);
        }
        Transducer {
            input_alphabet,
            output_alphabet,
            state_count,
            initial,
            step,
        }
    }

    /// The identity transducer on an alphabet.
    pub fn identity(alphabet: Alphabet) -> Transducer {
        let step = alphabet.letters().map(|a| (a, 0)).collect();
        Transducer::new(alphabet.clone(), alphabet, 1, 0, step)
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output_alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, state: usize, letter: usize) -> (usize, usize) {
        self.step[state * self.input_alphabet.len() + letter]
    }

    /// The image `T(u·v^ω)` as a lasso: runs over the stem, then iterates the
    /// period until the transducer state repeats at a period boundary, so the
    /// collected outputs represent the image exactly.
    pub fn output_lasso(&self, word: &LassoWord) -> LassoWord {
        let mut state = self.initial;
        let mut out_stem = Vec::with_capacity(word.stem().len());
        for &letter in word.stem() {
            let (out, next) = self.step(state, letter);
            out_stem.push(out);
            state = next;
        }

        let mut boundary_pass: HashMap<usize, usize> = HashMap::new();
        let mut passes: Vec<Vec<usize>> = Vec::new();
        loop {
            if let Some(&first) = boundary_pass.get(&state) {
                for pass in &passes[..first] {
                    out_stem.extend_from_slice(pass);
                }
                let period: Vec<usize> =
                    passes[first..].iter().flatten().copied().collect();
                return LassoWord::new(out_stem, period);
            }
            boundary_pass.insert(state, passes.len());
            let mut outputs = Vec::with_capacity(word.period().len());
            for &letter in word.period() {
                let (out, next) = self.step(state, letter);
                outputs.push(out);
                state = next;
            }
            passes.push(outputs);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_reproduces_input() {
        let al = Alphabet::new(["a", "b"]);
        let t = Transducer::identity(al);
        let w = LassoWord::new(vec![0, 1], vec![1, 0]);
        let out = t.output_lasso(&w);
        for i in 0..12 {
            assert_eq!(out.letter_at(i), w.letter_at(i));
        }
    }

    #[test]
    fn stateless_relabeling() {
        // a ↦ x, b ↦ y over ("a", "ba") gives ("x", "yx").
        let input = Alphabet::new(["a", "b"]);
        let output = Alphabet::new(["x", "y"]);
        let t = Transducer::new(input.clone(), output.clone(), 1, 0, vec![(0, 0), (1, 0)]);
        let w = LassoWord::from_names(&input, &["a"], &["b", "a"]);
        let out = t.output_lasso(&w);
        assert_eq!(out, LassoWord::from_names(&output, &["x"], &["y", "x"]));
    }

    #[test]
    fn parity_flipper_output_matches_letterwise() {
        // Two states; on each input letter the machine flips state and outputs
        // the letter xor'ed with the state parity.
        let al = Alphabet::new(["0", "1"]);
        let step = vec![
            // state 0
            (0, 1),
            (1, 1),
            // state 1
            (1, 0),
            (0, 0),
        ];
        let t = Transducer::new(al.clone(), al.clone(), 2, 0, step);
        let w = LassoWord::new(vec![0], vec![1, 0, 0]);
        let out = t.output_lasso(&w);
        assert_eq!(out.period().len() % w.period().len(), 0);
        assert!(out.period().len() <= 2 * w.period().len());

        // Letterwise re-simulation over a long unrolled prefix.
        let mut state = 0usize;
        for i in 0..3 * (w.stem().len() + w.period().len()) {
            let (o, n) = t.step(state, w.letter_at(i));
            assert_eq!(out.letter_at(i), o, "position {i}");
            state = n;
        }
    }
}
