use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::engine::coset::{enumerate_cosets, CosetTable};
use crate::engine::presentation::Presentation;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

const ROOT: u32 = u32::MAX;

/// An element of a [`ConcreteGroup`]: its index in the regular action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite group given by its right regular action on itself, with
/// distinguished generators `s1, ..., s(rank-1)`.
///
/// Element `0` is the identity. Every element stores the last letter of a
/// shortest word reaching it, so elements can be multiplied by replaying
/// words: `x * y` is `x` acted on by the word of `y`.
#[derive(Clone, Debug)]
pub struct ConcreteGroup {
    id: u64,
    rank: usize,
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    parent_col: Vec<u8>,
}

impl ConcreteGroup {
    fn from_table(rank: usize, table: Vec<u32>) -> Self {
        let cols = 2 * (rank - 1);
        let order = table.len() / cols;
        let mut parent = vec![ROOT; order];
        let mut parent_col = vec![0u8; order];
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let e = queue[k];
            k += 1;
            for x in 0..cols {
                let d = table[e * cols + x] as usize;
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = e as u32;
                    parent_col[d] = x as u8;
                    queue.push(d);
                }
            }
        }
        debug_assert!(seen.iter().all(|&s| s), "regular action must be transitive");
        ConcreteGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            rank,
            cols,
            table,
            parent,
            parent_col,
        }
    }

    /// The group acting on the cosets of the trivial subgroup.
    pub fn from_coset_table(table: CosetTable) -> Self {
        let (rank, table) = table.into_raw();
        Self::from_table(rank, table)
    }

    /// Realizes a presentation by enumerating the cosets of the trivial
    /// subgroup.
    pub fn realize(p: &Presentation, limit: usize) -> Result<Self> {
        Ok(Self::from_coset_table(enumerate_cosets(p, &[], limit)?))
    }

    /// Builds the Cayley graph of the group generated by an arbitrary right
    /// action. `act(x, l)` must return `x * l` for a faithful representation
    /// of the group elements. Also returns the representatives in element
    /// order.
    pub fn from_action<T, F>(
        rank: usize,
        identity: T,
        mut act: F,
        limit: usize,
    ) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: FnMut(&T, Letter) -> T,
    {
        Word::identity(rank)?;
        let cols = 2 * (rank - 1);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut table = Vec::new();
        let mut k = 0;
        while k < elements.len() {
            for x in 0..cols {
                let y = act(&elements[k], Letter::from_column(x));
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= limit {
                            return Err(Error::EnumerationOverflow { limit });
                        }
                        let id = elements.len() as u32;
                        index.insert(y.clone(), id);
                        elements.push(y);
                        id
                    }
                };
                table.push(id);
            }
            k += 1;
        }
        Ok((Self::from_table(rank, table), elements))
    }

    /// The subgroup generated by `gens`, as a group in its own right with
    /// `gens[i-1]` as its distinguished generator `s_i`.
    pub fn regenerate(&self, gens: &[Element]) -> Result<Self> {
        let rank = gens.len() + 1;
        let words: Vec<Vec<Letter>> = gens.iter().map(|&g| self.letters_of(g)).collect();
        let inverse_words: Vec<Vec<Letter>> = gens
            .iter()
            .map(|&g| self.letters_of(self.inverse(g)))
            .collect();
        let (group, _) = Self::from_action(
            rank,
            self.identity(),
            |&x, l| {
                let w = if l.is_inverse() {
                    &inverse_words[l.index() - 1]
                } else {
                    &words[l.index() - 1]
                };
                self.apply_letters(x, w)
            },
            usize::MAX,
        )?;
        Ok(group)
    }

    /// Identifier shared by clones of this group.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as u32).map(Element)
    }

    /// `x * l` for a single letter.
    #[inline]
    pub fn act(&self, x: Element, l: Letter) -> Element {
        Element(self.table[x.index() * self.cols + l.column()])
    }

    pub(crate) fn apply_letters(&self, mut x: Element, letters: &[Letter]) -> Element {
        for &l in letters {
            x = self.act(x, l);
        }
        x
    }

    /// `x * w`.
    pub fn apply_word(&self, x: Element, w: &Word) -> Result<Element> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        Ok(self.apply_letters(x, w.letters()))
    }

    /// Image of `w` under the generator assignment `s_i -> generator(i)`.
    pub fn evaluate(&self, w: &Word) -> Result<Element> {
        self.apply_word(self.identity(), w)
    }

    /// Image of `s_index`.
    pub fn generator(&self, index: usize) -> Element {
        self.act(self.identity(), Letter::new(index, false))
    }

    pub fn generators(&self) -> Vec<Element> {
        (1..self.rank).map(|i| self.generator(i)).collect()
    }

    /// A shortest word (in the distinguished generators) for `x`.
    pub fn letters_of(&self, x: Element) -> Vec<Letter> {
        let mut out = Vec::new();
        let mut cur = x.index();
        while self.parent[cur] != ROOT {
            out.push(Letter::from_column(self.parent_col[cur] as usize));
            cur = self.parent[cur] as usize;
        }
        out.reverse();
        out
    }

    pub fn word_of(&self, x: Element) -> Word {
        Word::from_letters(self.letters_of(x), self.rank).expect("letters are in range")
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        let mut cur = y.index();
        // replay y's word from x, collected backwards from y to the root
        let mut path = Vec::new();
        while self.parent[cur] != ROOT {
            path.push(self.parent_col[cur]);
            cur = self.parent[cur] as usize;
        }
        path.iter()
            .rev()
            .fold(x, |acc, &c| self.act(acc, Letter::from_column(c as usize)))
    }

    pub fn inverse(&self, x: Element) -> Element {
        let mut cur = x.index();
        let mut acc = self.identity();
        while self.parent[cur] != ROOT {
            let l = Letter::from_column(self.parent_col[cur] as usize);
            acc = self.act(acc, l.inv());
            cur = self.parent[cur] as usize;
        }
        acc
    }

    pub fn pow(&self, x: Element, exponent: i64) -> Element {
        let base = if exponent < 0 { self.inverse(x) } else { x };
        let letters = self.letters_of(base);
        (0..exponent.unsigned_abs())
            .fold(self.identity(), |acc, _| self.apply_letters(acc, &letters))
    }

    /// `x^-1 y x`.
    pub fn conjugate(&self, y: Element, x: Element) -> Element {
        self.mul(self.mul(self.inverse(x), y), x)
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: Element) -> usize {
        let letters = self.letters_of(x);
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity() {
            acc = self.apply_letters(acc, &letters);
            k += 1;
        }
        k
    }

    /// Checks that the generator images satisfy every relator of `p`,
    /// implicit ones included.
    pub fn satisfies(&self, p: &Presentation) -> Result<bool> {
        for r in p.all_relators() {
            if self.evaluate(&r)? != self.identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relabels the generators: the new `s_i` is the evaluation of
    /// `images[i-1]`. The images must generate the whole group.
    pub fn relabel(&self, images: &[Word]) -> Result<Self> {
        let gens = images
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<Vec<_>>>()?;
        let out = self.regenerate(&gens)?;
        if out.order() != self.order() {
            return Err(Error::Invalid(format!(
                "relabelled generators span a subgroup of order {} in a group of order {}",
                out.order(),
                self.order()
            )));
        }
        Ok(out)
    }

    /// Schreier relators `w_x s w_(xs)^-1` read off the Cayley graph. Their
    /// normal closure in the free group is the kernel of the presentation
    /// map onto this group.
    pub fn schreier_relators(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for x in self.elements() {
            for i in 1..self.rank {
                let l = Letter::new(i, false);
                let y = self.act(x, l);
                if self.parent[y.index()] == x.0
                    && self.parent_col[y.index()] as usize == l.column()
                {
                    continue;
                }
                let mut letters = self.letters_of(x);
                letters.push(l);
                letters.extend(self.letters_of(y).iter().rev().map(|l| l.inv()));
                let w = Word::from_letters(letters, self.rank).expect("in range");
                if !w.is_empty() {
                    out.push(w);
                }
            }
        }
        out
    }
}

/// Bit set over the elements of one group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        !had
    }
}

/// A subgroup of a [`ConcreteGroup`], stored as its element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group_id: u64,
    members: BitSet,
    elements: Vec<Element>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.contains(x.index())
    }

    /// Elements in increasing index order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn parent_id(&self) -> u64 {
        self.group_id
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group_id == other.group_id && self.elements.iter().all(|&x| other.contains(x))
    }
}

/// Smallest subgroup of `g` containing `gens`, by breadth-first closure.
pub fn subgroup_closure(g: &ConcreteGroup, gens: &[Element]) -> Subgroup {
    let words: Vec<Vec<Letter>> = gens
        .iter()
        .filter(|&&h| h != g.identity())
        .map(|&h| g.letters_of(h))
        .collect();
    let mut members = BitSet::new(g.order());
    members.insert(0);
    let mut elements = vec![g.identity()];
    let mut k = 0;
    while k < elements.len() {
        let x = elements[k];
        k += 1;
        for w in &words {
            let y = g.apply_letters(x, w);
            if members.insert(y.index()) {
                elements.push(y);
            }
        }
    }
    elements.sort_unstable();
    Subgroup {
        group_id: g.id(),
        members,
        elements,
    }
}

/// Intersection of two subgroups of the same group.
pub fn subgroup_intersection(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if a.group_id != b.group_id {
        return Err(Error::ParentMismatch);
    }
    let (small, large) = if a.order() <= b.order() {
        (a, b)
    } else {
        (b, a)
    };
    let mut members = BitSet::new(small.members.0.len() * 64);
    let mut elements = Vec::new();
    for &x in &small.elements {
        if large.contains(x) {
            members.insert(x.index());
            elements.push(x);
        }
    }
    members.0.truncate(small.members.0.len());
    Ok(Subgroup {
        group_id: a.group_id,
        members,
        elements,
    })
}

/// Normal closure of `gens` in `g`.
pub fn normal_closure(g: &ConcreteGroup, gens: &[Element]) -> Subgroup {
    let mut generating: Vec<Element> = Vec::new();
    let mut current = subgroup_closure(g, &[]);
    let mut pending: Vec<Element> = gens.to_vec();
    let conjugators: Vec<Element> = g.generators();
    while let Some(x) = pending.pop() {
        if current.contains(x) {
            continue;
        }
        generating.push(x);
        current = subgroup_closure(g, &generating);
        for &c in &conjugators {
            pending.push(g.conjugate(x, c));
        }
    }
    current
}

/// Result of [`hom_graph_extends`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomGraph {
    /// The assignment `s_i -> images[i-1]` extends to a homomorphism.
    pub extends: bool,
    /// Order of the subgroup of the target generated by the images.
    pub image_order: usize,
}

/// Decides whether `domain.generator(i) -> images[i-1]` extends to a
/// homomorphism `domain -> target`, by closing the pairs
/// `(generator, image)` inside the direct product. The assignment extends
/// iff that closure is no larger than the domain (it is then the graph of
/// the homomorphism).
pub fn hom_graph_extends(
    domain: &ConcreteGroup,
    images: &[Element],
    target: &ConcreteGroup,
) -> Result<HomGraph> {
    if images.len() != domain.rank() - 1 {
        return Err(Error::RankMismatch {
            left: domain.rank(),
            right: images.len() + 1,
        });
    }
    let image_order = subgroup_closure(target, images).order();
    let fwd: Vec<Vec<Letter>> = images.iter().map(|&y| target.letters_of(y)).collect();
    let bwd: Vec<Vec<Letter>> = images
        .iter()
        .map(|&y| target.letters_of(target.inverse(y)))
        .collect();
    let cols = 2 * (domain.rank() - 1);

    // image[d] is the target element paired with domain element d.
    let mut image = vec![u32::MAX; domain.order()];
    image[0] = 0;
    let mut queue = vec![domain.identity()];
    let mut k = 0;
    while k < queue.len() {
        let d = queue[k];
        k += 1;
        let t = Element(image[d.index()]);
        for x in 0..cols {
            let l = Letter::from_column(x);
            let d2 = domain.act(d, l);
            let w = if l.is_inverse() {
                &bwd[l.index() - 1]
            } else {
                &fwd[l.index() - 1]
            };
            let t2 = target.apply_letters(t, w);
            match image[d2.index()] {
                u32::MAX => {
                    image[d2.index()] = t2.0;
                    queue.push(d2);
                }
                existing if existing != t2.0 => {
                    return Ok(HomGraph {
                        extends: false,
                        image_order,
                    });
                }
                _ => {}
            }
        }
    }
    Ok(HomGraph {
        extends: true,
        image_order,
    })
}
