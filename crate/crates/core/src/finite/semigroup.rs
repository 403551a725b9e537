use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::finite::PartialInjection;

/// A generator or the inverse of one. Letters order as
/// `g0 < g0^-1 < g1 < g1^-1 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }
}

/// A nonempty word over generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Generators 0..26 print as `a..z`, inverses as upper case; larger indices as `[n]` / `[n]'`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            if l.generator < 26 {
                let c = (b'a' + l.generator as u8) as char;
                let c = if l.inverse { c.to_ascii_uppercase() } else { c };
                write!(f, "{c}")?;
            } else if l.inverse {
                write!(f, "[{}]'", l.generator)?;
            } else {
                write!(f, "[{}]", l.generator)?;
            }
        }
        Ok(())
    }
}

/// A finite inverse semigroup of partial injections, stored as the closure
/// of its generators. Elements are kept in canonical order and addressed by
/// index.
#[derive(Debug)]
pub struct FiniteInvSemigroup {
    degree: usize,
    generators: Vec<PartialInjection>,
    elements: Vec<PartialInjection>,
    index: HashMap<PartialInjection, usize>,
    words: Vec<Word>,
    inverse: Vec<usize>,
    table: OnceLock<Vec<u32>>,
}

impl FiniteInvSemigroup {
    /// The inverse subsemigroup generated by `gens`.
    ///
    /// Breadth-first over words, extending on the right by letters in
    /// letter order, so each recorded word is the shortlex-least word for
    /// its element.
    pub fn closure(gens: &[PartialInjection]) -> Result<Self> {
        let degree = gens
            .first()
            .ok_or_else(|| Error::IllFormed("closure needs at least one generator".into()))?
            .degree();
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
        }
        let letters: Vec<(Letter, PartialInjection)> = gens
            .iter()
            .enumerate()
            .flat_map(|(i, g)| [(Letter::gen(i), g.clone()), (Letter::inv(i), g.invert())])
            .collect();

        let mut found: HashMap<PartialInjection, Word> = HashMap::new();
        let mut queue: VecDeque<PartialInjection> = VecDeque::new();
        for (l, p) in &letters {
            if !found.contains_key(p) {
                found.insert(p.clone(), Word(vec![*l]));
                queue.push_back(p.clone());
            }
        }
        while let Some(p) = queue.pop_front() {
            let word = found[&p].clone();
            for (l, q) in &letters {
                let r = p.compose_unchecked(q);
                if !found.contains_key(&r) {
                    let mut w = word.clone();
                    w.0.push(*l);
                    found.insert(r.clone(), w);
                    queue.push_back(r);
                }
            }
        }

        let mut pairs: Vec<(PartialInjection, Word)> = found.into_iter().collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (elements, words): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let index: HashMap<PartialInjection, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverse = elements.iter().map(|p| index[&p.invert()]).collect();
        Ok(FiniteInvSemigroup {
            degree,
            generators: gens.to_vec(),
            elements,
            index,
            words,
            inverse,
            table: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[PartialInjection] {
        &self.generators
    }

    pub fn elements(&self) -> &[PartialInjection] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialInjection {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &PartialInjection) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Like `index_of`, but a missing element is a precondition error.
    pub fn require(&self, p: &PartialInjection) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::Precondition(format!("{p} is not an element of the semigroup")))
    }

    /// Shortlex-least witness word over the generators.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.elements[i].is_idempotent()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_idempotent(i)).collect()
    }

    fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.len();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    t.push(self.index[&a.compose_unchecked(b)] as u32);
                }
            }
            t
        })
    }

    /// Product of two elements by index.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table()[a * self.len() + b] as usize
    }

    pub fn product(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.mul(a, b))
    }

    /// Index of a letter's value given the generator indices `gens`.
    pub fn letter_value(&self, gens: &[usize], l: Letter) -> usize {
        let g = gens[l.generator];
        if l.inverse {
            self.inverse(g)
        } else {
            g
        }
    }

    /// Evaluates a word over the generator indices `gens`.
    pub fn eval(&self, gens: &[usize], word: &Word) -> Result<usize> {
        if let Some(l) = word.0.iter().find(|l| l.generator >= gens.len()) {
            return Err(Error::IllFormed(format!("letter refers to missing generator {}", l.generator)));
        }
        self.product(word.0.iter().map(|&l| self.letter_value(gens, l)))
            .ok_or_else(|| Error::IllFormed("empty word".into()))
    }

    /// Inverse subsemigroup generated by a subset, as a sorted index set.
    pub fn subclosure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut letters: Vec<usize> = gens.iter().flat_map(|&g| [g, self.inverse(g)]).collect();
        letters.sort_unstable();
        letters.dedup();
        let mut seen = vec![false; self.len()];
        let mut stack = Vec::new();
        for &l in &letters {
            if !seen[l] {
                seen[l] = true;
                stack.push(l);
            }
        }
        while let Some(a) = stack.pop() {
            for &l in &letters {
                let p = self.mul(a, l);
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    /// Indices of the given elements, all of which must lie in the semigroup.
    pub fn indices_of(&self, items: &[PartialInjection]) -> Result<Vec<usize>> {
        items.iter().map(|p| self.require(p)).collect()
    }
}
