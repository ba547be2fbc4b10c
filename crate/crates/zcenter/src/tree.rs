use crate::category::Category;
use crate::linalg::Mat;
use crate::obj::{Mor, Obj};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("empty word")]
    EmptyWord,
    #[error("label {0} is not a simple")]
    BadLabel(usize),
    #[error("bracketing does not match a word of length {0}")]
    BadBracketing(usize),
    #[error("inadmissible tree labels {0:?}")]
    Inadmissible(Vec<usize>),
}

/// A binary bracketing of a word, leaves numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf,
    Pair(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn left_nested(len: usize) -> Bracketing {
        let mut b = Bracketing::Leaf;
        for _ in 1..len {
            b = Bracketing::Pair(Box::new(b), Box::new(Bracketing::Leaf));
        }
        b
    }

    pub fn right_nested(len: usize) -> Bracketing {
        let mut b = Bracketing::Leaf;
        for _ in 1..len {
            b = Bracketing::Pair(Box::new(Bracketing::Leaf), Box::new(b));
        }
        b
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Pair(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Parses strings such as `((..).)` where each `.` is a leaf.
    pub fn parse(s: &str) -> Option<Bracketing> {
        fn go(s: &[u8], pos: &mut usize) -> Option<Bracketing> {
            match s.get(*pos)? {
                b'.' => {
                    *pos += 1;
                    Some(Bracketing::Leaf)
                }
                b'(' => {
                    *pos += 1;
                    let l = go(s, pos)?;
                    let r = go(s, pos)?;
                    if s.get(*pos)? != &b')' {
                        return None;
                    }
                    *pos += 1;
                    Some(Bracketing::Pair(Box::new(l), Box::new(r)))
                }
                _ => None,
            }
        }
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let b = go(&bytes, &mut pos)?;
        (pos == bytes.len()).then_some(b)
    }
}

/// One left-nested fusion tree: intermediates are listed from the root inward
/// (x_{n-1}, …, x_2), multiplicity indices from the innermost vertex outward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub intermediates: Vec<usize>,
    pub mults: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FusionTreeBasis {
    pub word: Vec<usize>,
    pub target: usize,
    pub trees: Vec<Tree>,
}

impl FusionTreeBasis {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

impl Category {
    fn check_word(&self, word: &[usize]) -> Result<(), TreeError> {
        if word.is_empty() {
            return Err(TreeError::EmptyWord);
        }
        for &w in word {
            if w >= self.rank() {
                return Err(TreeError::BadLabel(w));
            }
        }
        Ok(())
    }

    /// Trees spanning Hom(t, (…(w₁⊗w₂)⊗…)⊗w_n), in the order of the block of that object.
    pub fn hom_basis(&self, word: &[usize], t: usize) -> Result<FusionTreeBasis, TreeError> {
        self.check_word(word)?;
        if t >= self.rank() {
            return Err(TreeError::BadLabel(t));
        }
        // trees[x] = trees of the current prefix ending at x, in block order.
        let n = self.rank();
        let mut trees: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![Vec::new(); n];
        trees[word[0]].push((vec![], vec![]));
        for &w in &word[1..] {
            let mut next: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![Vec::new(); n];
            for (y, slot) in next.iter_mut().enumerate() {
                for x in 0..n {
                    let m = self.n(x, w, y);
                    for (inter, mults) in &trees[x] {
                        for mu in 0..m {
                            let mut i2 = vec![x];
                            i2.extend(inter.iter().cloned());
                            let mut m2 = mults.clone();
                            m2.push(mu);
                            slot.push((i2, m2));
                        }
                    }
                }
            }
            trees = next;
        }
        let trees = trees[t]
            .iter()
            .map(|(i, m)| {
                // Drop the leading w₁ placeholder: the innermost "intermediate" is w₁ itself.
                let mut inter = i.clone();
                inter.pop();
                Tree { intermediates: inter, mults: m.clone() }
            })
            .collect();
        Ok(FusionTreeBasis { word: word.to_vec(), target: t, trees })
    }

    /// Product of the word in the given bracketing.
    pub fn bracket_obj(&self, word: &[usize], br: &Bracketing) -> Result<Obj, TreeError> {
        self.check_word(word)?;
        if br.leaves() != word.len() {
            return Err(TreeError::BadBracketing(word.len()));
        }
        Ok(self.bracket_obj_unchecked(word, br))
    }

    fn bracket_obj_unchecked(&self, word: &[usize], br: &Bracketing) -> Obj {
        match br {
            Bracketing::Leaf => self.simple(word[0]),
            Bracketing::Pair(l, r) => {
                let k = l.leaves();
                self.tensor(&self.bracket_obj_unchecked(&word[..k], l), &self.bracket_obj_unchecked(&word[k..], r))
            }
        }
    }

    /// Canonical isomorphism from the bracketed product to the left-nested one.
    fn to_left_nested(&self, word: &[usize], br: &Bracketing) -> Mor {
        match br {
            Bracketing::Leaf => Mor::identity(&self.simple(word[0])),
            Bracketing::Pair(l, r) => {
                let k = l.leaves();
                let nl = self.to_left_nested(&word[..k], l);
                let nr = self.to_left_nested(&word[k..], r);
                let step = self.tensor_mor(&nl, &nr);
                step.compose_after_absorb(self, &word[..k], &word[k..])
            }
        }
    }

    /// Basis change between two bracketings of the same word.
    pub fn rebracket(&self, word: &[usize], from: &Bracketing, to: &Bracketing) -> Result<Mor, TreeError> {
        self.bracket_obj(word, from)?;
        self.bracket_obj(word, to)?;
        let a = self.to_left_nested(word, from);
        let b = self.to_left_nested(word, to);
        Ok(b.inverse().expect("associators are invertible").compose(&a))
    }

    /// Moves a morphism into the product in bracketing `from` over to bracketing `to`.
    pub fn f_move(&self, m: &Mor, word: &[usize], from: &Bracketing, to: &Bracketing) -> Result<Mor, TreeError> {
        let r = self.rebracket(word, from, to)?;
        if r.src != m.dst {
            return Err(TreeError::BadBracketing(word.len()));
        }
        Ok(r.compose(m))
    }

    /// Recoupling matrix on Hom(t, word): rows are source trees, columns target trees, so that
    /// for a three-letter word it coincides with F^{abc}_t.
    pub fn f_move_matrix(&self, word: &[usize], t: usize, from: &Bracketing, to: &Bracketing) -> Result<Mat, TreeError> {
        if t >= self.rank() {
            return Err(TreeError::BadLabel(t));
        }
        let r = self.rebracket(word, from, to)?;
        Ok(r.blocks[t].transpose())
    }
}

trait Absorb {
    fn compose_after_absorb(self, cat: &Category, left: &[usize], right: &[usize]) -> Mor;
}

impl Absorb for Mor {
    /// Given self: X → L(left) ⊗ L(right) with both factors left-nested, continue into
    /// L(left ++ right) by peeling letters off the right factor.
    fn compose_after_absorb(self, cat: &Category, left: &[usize], right: &[usize]) -> Mor {
        if right.len() == 1 {
            return self;
        }
        let lobj = cat.bracket_obj_unchecked(left, &Bracketing::left_nested(left.len()));
        let k = right.len() - 1;
        let r1 = cat.bracket_obj_unchecked(&right[..k], &Bracketing::left_nested(k));
        let last = cat.simple(right[k]);
        let a = cat.assoc_inv(&lobj, &r1, &last);
        let step = a.compose(&self);
        // (L ⊗ L(r₁)) ⊗ last: normalize the left factor, then it is left-nested.
        let inner = Mor::identity(&cat.tensor(&lobj, &r1)).compose_after_absorb(cat, left, &right[..k]);
        cat.tensor_id(&inner, &last).compose(&step)
    }
}
