//! Todd-Coxeter coset enumeration, HLT strategy with lookahead.
//!
//! Cosets are processed in order of definition. For each live coset every
//! relator is scanned and filled, then any remaining gaps in its row are
//! defined. When the live-coset limit is reached a lookahead pass scans all
//! relators at all cosets without defining anything, which may free space
//! through coincidences. If it does not, enumeration stops with
//! [`Error::EnumerationOverflow`].

use crate::engine::presentation::Presentation;
use crate::error::{Error, Result};
use crate::words::Word;

const NONE: u32 = u32::MAX;

/// Default upper bound on live cosets.
pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

/// Environment variable that overrides [`DEFAULT_COSET_LIMIT`].
pub const COSET_LIMIT_ENV: &str = "POLYMIX_COSET_LIMIT";

/// The limit from `POLYMIX_COSET_LIMIT`, or the default.
pub fn coset_limit_from_env() -> usize {
    std::env::var(COSET_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(DEFAULT_COSET_LIMIT)
}

/// A complete coset table, standardized so that coset `0` is the subgroup
/// itself and the other cosets are numbered in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rank: usize,
    columns: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.table.len() / self.columns
    }

    /// Two columns per generator: `s_i` then `s_i^-1`.
    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Image of `coset` under the given column.
    pub fn get(&self, coset: usize, column: usize) -> usize {
        self.table[coset * self.columns + column] as usize
    }

    pub(crate) fn into_raw(self) -> (usize, Vec<u32>) {
        (self.rank, self.table)
    }
}

/// Enumerates the cosets of `<subgroup_gens>` in the group presented by `p`.
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup_gens: &[Word],
    limit: usize,
) -> Result<CosetTable> {
    if limit == 0 {
        return Err(Error::Invalid("coset limit must be at least 1".into()));
    }
    if let Some(w) = subgroup_gens.iter().find(|w| w.rank() != p.rank()) {
        return Err(Error::RankMismatch {
            left: p.rank(),
            right: w.rank(),
        });
    }
    let relators: Vec<Vec<usize>> = p
        .all_relators()
        .iter()
        .map(|w| w.letters().iter().map(|l| l.column()).collect())
        .collect();
    let subgroup: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|w| w.letters().iter().map(|l| l.column()).collect())
        .collect();

    let mut e = Enumerator::new(2 * (p.rank() - 1), limit);
    e.run(&relators, &subgroup)?;
    Ok(CosetTable {
        rank: p.rank(),
        columns: e.cols,
        table: e.standardize(),
    })
}

#[derive(Debug, PartialEq, Eq)]
enum Scan {
    Done,
    NoSpace,
}

struct Enumerator {
    cols: usize,
    limit: usize,
    table: Vec<u32>,
    // Union-find forwarding pointer; `rep[c] == c` iff `c` is live.
    rep: Vec<u32>,
    live: usize,
    queue: Vec<u32>,
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(cols: usize, limit: usize) -> Self {
        let mut e = Enumerator {
            cols,
            limit,
            table: Vec::new(),
            rep: Vec::new(),
            live: 0,
            queue: Vec::new(),
        };
        e.new_coset();
        e
    }

    fn slots(&self) -> usize {
        self.rep.len()
    }

    fn is_live(&self, c: usize) -> bool {
        self.rep[c] as usize == c
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    fn new_coset(&mut self) -> usize {
        let c = self.rep.len();
        self.rep.push(c as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        c
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.live >= self.limit {
            return false;
        }
        let d = self.new_coset();
        self.set(c, x, d as u32);
        self.set(d, inv(x), c as u32);
        true
    }

    fn find(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.rep[root] as usize != root {
            root = self.rep[root] as usize;
        }
        let mut cur = c;
        while self.rep[cur] as usize != root {
            let next = self.rep[cur] as usize;
            self.rep[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.rep[kill] = keep as u32;
        self.live -= 1;
        self.queue.push(kill as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                if self.get(d, inv(x)) == dead as u32 {
                    self.set(d, inv(x), NONE);
                }
                let mu = self.find(dead);
                let nu = self.find(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x as usize);
                } else {
                    let nu_inv = self.get(nu, inv(x));
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv as usize);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, inv(x), mu as u32);
                    }
                }
            }
        }
    }

    /// Scans `word` at coset `c`, defining new cosets when `fill` is set.
    fn scan(&mut self, c: usize, word: &[usize], fill: bool) -> Scan {
        if word.is_empty() {
            return Scan::Done;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Scan::Done;
            }
            while j >= i as isize && self.get(b, inv(word[j as usize])) != NONE {
                b = self.get(b, inv(word[j as usize])) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Scan::Done;
            }
            if j == i as isize {
                self.set(f, word[i], b as u32);
                self.set(b, inv(word[i]), f as u32);
                return Scan::Done;
            }
            if !fill {
                return Scan::Done;
            }
            if !self.define(f, word[i]) {
                return Scan::NoSpace;
            }
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.slots() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets in increasing order, dropping dead rows.
    /// Returns the new number of old coset `keep` (which must be live, or
    /// the next live coset after it).
    #[allow(clippy::needless_range_loop)]
    fn compact(&mut self, keep: usize) -> usize {
        let mut new_index = vec![NONE; self.slots()];
        let mut next = 0u32;
        for c in 0..self.slots() {
            if self.is_live(c) {
                new_index[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..self.slots() {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.cols {
                let d = self.get(c, x);
                let mapped = if d == NONE {
                    NONE
                } else {
                    let r = self.find(d as usize);
                    new_index[r]
                };
                table.push(mapped);
            }
        }
        let keep_new = (keep..self.slots())
            .find(|&c| self.is_live(c))
            .map(|c| new_index[c] as usize)
            .unwrap_or(next as usize);
        self.table = table;
        self.rep = (0..next).collect();
        self.live = next as usize;
        keep_new
    }

    fn overflow(&self) -> Error {
        Error::EnumerationOverflow { limit: self.limit }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<()> {
        for h in subgroup {
            loop {
                match self.scan(0, h, true) {
                    Scan::Done => break,
                    Scan::NoSpace => {
                        let before = self.live;
                        self.lookahead(relators);
                        if self.live == before {
                            return Err(self.overflow());
                        }
                    }
                }
            }
        }

        let mut c = 0;
        while c < self.slots() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            if self.slots() > 2 * self.live + 1024 {
                c = self.compact(c);
                continue;
            }
            let mut stalled = false;
            for r in relators {
                if self.scan(c, r, true) == Scan::NoSpace {
                    stalled = true;
                    break;
                }
                if !self.is_live(c) {
                    break;
                }
            }
            if !stalled && self.is_live(c) {
                for x in 0..self.cols {
                    if self.get(c, x) == NONE && !self.define(c, x) {
                        stalled = true;
                        break;
                    }
                }
            }
            if stalled {
                let before = self.live;
                self.lookahead(relators);
                if self.live == before {
                    return Err(self.overflow());
                }
                c = self.compact(c);
                continue;
            }
            c += 1;
        }
        Ok(())
    }

    /// Breadth-first renumbering from coset 0 over live cosets.
    fn standardize(&mut self) -> Vec<u32> {
        let root = self.find(0);
        let mut order = vec![root];
        let mut new_index = vec![NONE; self.slots()];
        new_index[root] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..self.cols {
                let d = self.find(self.get(c, x) as usize);
                if new_index[d] == NONE {
                    new_index[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for x in 0..self.cols {
                let d = self.find(self.get(c, x) as usize);
                table.push(new_index[d]);
            }
        }
        table
    }
}
