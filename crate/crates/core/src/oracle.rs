//! Brute-force face posets.
//!
//! The `i`-faces of a rotation system are the left cosets of
//! `Γ⁺_I`, `I = {0, ..., n-1} \ {i}`, and two faces of different ranks are
//! incident iff their cosets meet. This module builds that poset from the
//! group elements and checks the polytope axioms on it directly, without
//! using the intersection property.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rotation::{standard_generators, RotationSystem};
use crate::words::Word;

/// Default cap on the group order accepted by [`build_pre_polytope`].
pub const DEFAULT_ORACLE_BUDGET: usize = 10_000;

/// Ranked poset of cosets with an adjoined least and greatest face.
///
/// Proper faces have ranks `0..n`; rank `-1` and rank `n` each hold one
/// face that is incident to everything.
#[derive(Clone, Debug)]
pub struct FacePoset {
    rank: usize,
    /// `face_of[i][g]`: the `i`-face containing element `g`.
    face_of: Vec<Vec<u32>>,
    counts: Vec<usize>,
    /// `incident[i][j]` for `i < j`: pairs `(a, b)` of incident faces.
    incident: Vec<Vec<HashSet<(u32, u32)>>>,
    /// `up[i][a]`: the `(i+1)`-faces incident to the `i`-face `a`.
    up: Vec<Vec<Vec<u32>>>,
}

/// Rank used for the adjoined faces in reports.
pub const BOTTOM: i64 = -1;

/// A face identified by rank (`-1..=n`) and index within that rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub rank: i64,
    pub index: u32,
}

impl FacePoset {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of `i`-faces for `i` in `0..n`.
    pub fn face_counts(&self) -> &[usize] {
        &self.counts
    }

    /// Whether two faces are incident (comparable). Faces of equal rank are
    /// incident only to themselves.
    pub fn incident(&self, a: Face, b: Face) -> bool {
        let (a, b) = if a.rank <= b.rank { (a, b) } else { (b, a) };
        let n = self.rank as i64;
        if a.rank == b.rank {
            return a.index == b.index;
        }
        if a.rank == BOTTOM || b.rank == n {
            return true;
        }
        self.incident[a.rank as usize][b.rank as usize].contains(&(a.index, b.index))
    }

    fn count(&self, rank: i64) -> usize {
        if rank < 0 || rank >= self.rank as i64 {
            1
        } else {
            self.counts[rank as usize]
        }
    }

    /// Faces of rank `rank + 1` incident to `f`.
    fn above(&self, f: Face) -> Vec<u32> {
        let n = self.rank as i64;
        if f.rank == BOTTOM || f.rank == n - 1 {
            (0..self.count(f.rank + 1) as u32).collect()
        } else {
            self.up[f.rank as usize][f.index as usize].clone()
        }
    }

    /// All maximal chains strictly between `lower` and `upper`, each listed
    /// from low rank to high rank. Every face of a chain is incident to
    /// `lower`, `upper` and every other face of the chain.
    pub fn chains_between(&self, lower: Face, upper: Face) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut chain: Vec<Face> = Vec::new();
        self.extend_chain(lower, upper, &mut chain, &mut out);
        out
    }

    fn extend_chain(
        &self,
        lower: Face,
        upper: Face,
        chain: &mut Vec<Face>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let last = *chain.last().unwrap_or(&lower);
        if last.rank + 1 == upper.rank {
            if self.incident(last, upper) {
                out.push(chain.iter().map(|f| f.index).collect());
            }
            return;
        }
        for index in self.above(last) {
            let f = Face {
                rank: last.rank + 1,
                index,
            };
            if !self.incident(lower, f) || !self.incident(f, upper) {
                continue;
            }
            if chain.iter().any(|&c| !self.incident(c, f)) {
                continue;
            }
            chain.push(f);
            self.extend_chain(lower, upper, chain, out);
            chain.pop();
        }
    }

    fn bottom(&self) -> Face {
        Face {
            rank: BOTTOM,
            index: 0,
        }
    }

    fn top(&self) -> Face {
        Face {
            rank: self.rank as i64,
            index: 0,
        }
    }

    /// All flags, as the indices of their proper faces by rank.
    pub fn flags(&self) -> Vec<Vec<u32>> {
        self.chains_between(self.bottom(), self.top())
    }
}

/// Builds the coset poset of `r`, refusing groups larger than `budget`.
pub fn build_pre_polytope(r: &RotationSystem, budget: usize) -> Result<FacePoset> {
    build_pre_polytope_with(r, budget, Execution::default())
}

pub fn build_pre_polytope_with(
    r: &RotationSystem,
    budget: usize,
    exec: Execution,
) -> Result<FacePoset> {
    if r.order() > budget {
        return Err(Error::BudgetExceeded {
            order: r.order(),
            budget,
        });
    }
    let n = r.rank();
    let g = r.group();
    let ranks: Vec<usize> = (0..n).collect();
    let labelled: Vec<(Vec<u32>, usize)> = par::map(exec, &ranks, |&i| {
        let set: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        let gens: Vec<Word> = standard_generators(n, &set);
        let mut face_of = vec![u32::MAX; g.order()];
        let mut count = 0u32;
        for start in g.elements() {
            if face_of[start.index()] != u32::MAX {
                continue;
            }
            // the left coset start·H, closed under right multiplication
            face_of[start.index()] = count;
            let mut queue = vec![start];
            while let Some(x) = queue.pop() {
                for w in &gens {
                    let y = g.apply_word(x, w).expect("same rank");
                    if face_of[y.index()] == u32::MAX {
                        face_of[y.index()] = count;
                        queue.push(y);
                    }
                }
            }
            count += 1;
        }
        (face_of, count as usize)
    });
    let counts: Vec<usize> = labelled.iter().map(|(_, c)| *c).collect();
    let face_of: Vec<Vec<u32>> = labelled.into_iter().map(|(f, _)| f).collect();

    let mut incident = vec![vec![HashSet::new(); n]; n];
    for (i, row) in incident.iter_mut().enumerate() {
        for (j, set) in row.iter_mut().enumerate().skip(i + 1) {
            *set = (0..g.order())
                .map(|e| (face_of[i][e], face_of[j][e]))
                .collect();
        }
    }
    let mut up = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n - 1 {
        let mut lists = vec![Vec::new(); counts[i]];
        let mut pairs: Vec<&(u32, u32)> = incident[i][i + 1].iter().collect();
        pairs.sort_unstable();
        for &(a, b) in pairs {
            lists[a as usize].push(b);
        }
        up.push(lists);
    }
    Ok(FacePoset {
        rank: n,
        face_of,
        counts,
        incident,
        up,
    })
}

impl FacePoset {
    /// The `i`-face containing group element `g` (by element index).
    pub fn face_of(&self, i: usize, element: usize) -> u32 {
        self.face_of[i][element]
    }
}

/// An incident pair `lower < upper` two ranks apart whose open interval
/// does not hold exactly two faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondFailure {
    pub lower: Face,
    pub upper: Face,
    pub between: usize,
}

/// First diamond-condition failure, scanning middle ranks upwards and faces
/// in index order.
pub fn diamond_failure(fp: &FacePoset) -> Option<DiamondFailure> {
    let n = fp.rank as i64;
    for j in 0..n {
        let lower_rank = j - 1;
        let upper_rank = j + 1;
        let mut between: HashMap<(u32, u32), usize> = HashMap::new();
        for h in 0..fp.count(j) as u32 {
            let mid = Face { rank: j, index: h };
            let lows: Vec<u32> = (0..fp.count(lower_rank) as u32)
                .filter(|&a| {
                    fp.incident(
                        Face {
                            rank: lower_rank,
                            index: a,
                        },
                        mid,
                    )
                })
                .collect();
            let highs = fp.above(mid);
            for &a in &lows {
                for &c in &highs {
                    *between.entry((a, c)).or_default() += 1;
                }
            }
        }
        for a in 0..fp.count(lower_rank) as u32 {
            let lower = Face {
                rank: lower_rank,
                index: a,
            };
            for c in 0..fp.count(upper_rank) as u32 {
                let upper = Face {
                    rank: upper_rank,
                    index: c,
                };
                if !fp.incident(lower, upper) {
                    continue;
                }
                let k = between.get(&(a, c)).copied().unwrap_or(0);
                if k != 2 {
                    return Some(DiamondFailure {
                        lower,
                        upper,
                        between: k,
                    });
                }
            }
        }
    }
    None
}

/// Every interval `F < G` with ranks two apart contains exactly two faces.
pub fn check_diamond(fp: &FacePoset) -> bool {
    diamond_failure(fp).is_none()
}

/// A section `F < G` whose flag graph is disconnected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityFailure {
    pub lower: Face,
    pub upper: Face,
    pub flags: usize,
    pub components: usize,
}

/// Number of connected components of the graph on `chains` where two
/// chains are adjacent iff they differ in exactly one position.
fn components(chains: &[Vec<u32>]) -> usize {
    if chains.is_empty() {
        return 0;
    }
    let mut parent: Vec<usize> = (0..chains.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let width = chains[0].len();
    for k in 0..width {
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        for (idx, chain) in chains.iter().enumerate() {
            let mut key = chain.clone();
            key[k] = u32::MAX;
            match seen.get(&key) {
                Some(&other) => {
                    let (a, b) = (find(&mut parent, idx), find(&mut parent, other));
                    parent[a] = b;
                }
                None => {
                    seen.insert(key, idx);
                }
            }
        }
    }
    (0..chains.len())
        .filter(|&x| find(&mut parent, x) == x)
        .count()
}

/// Sections to examine: the whole poset, plus with `strong` every section
/// of rank at least 2, ordered by lower rank, then upper rank, then faces.
fn sections(fp: &FacePoset, strong: bool) -> Vec<(Face, Face)> {
    let n = fp.rank as i64;
    if !strong {
        return vec![(fp.bottom(), fp.top())];
    }
    let mut out = Vec::new();
    for r in BOTTOM..=n {
        for s in r + 3..=n {
            for a in 0..fp.count(r) as u32 {
                for b in 0..fp.count(s) as u32 {
                    let (lower, upper) = (Face { rank: r, index: a }, Face { rank: s, index: b });
                    if fp.incident(lower, upper) {
                        out.push((lower, upper));
                    }
                }
            }
        }
    }
    out
}

/// First section whose flag graph is disconnected.
pub fn connectivity_failure(fp: &FacePoset, strong: bool) -> Option<ConnectivityFailure> {
    connectivity_failure_with(fp, strong, Execution::default())
}

pub fn connectivity_failure_with(
    fp: &FacePoset,
    strong: bool,
    exec: Execution,
) -> Option<ConnectivityFailure> {
    let sections = sections(fp, strong);
    let results = par::map(exec, &sections, |&(lower, upper)| {
        let chains = fp.chains_between(lower, upper);
        (chains.len(), components(&chains))
    });
    sections
        .iter()
        .zip(results)
        .find(|(_, (_, c))| *c != 1)
        .map(
            |(&(lower, upper), (flags, components))| ConnectivityFailure {
                lower,
                upper,
                flags,
                components,
            },
        )
}

/// With `strong = false`, whether the flag graph is connected; with
/// `strong = true`, whether every section of rank at least 2 is.
pub fn check_flag_connectivity(fp: &FacePoset, strong: bool) -> bool {
    connectivity_failure(fp, strong).is_none()
}

/// Everything the oracle reports about one rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub order: usize,
    pub faces: Vec<usize>,
    pub flags: usize,
    pub diamond: bool,
    pub diamond_failure: Option<DiamondFailure>,
    pub flag_connected: bool,
    pub strongly_flag_connected: bool,
    pub connectivity_failure: Option<ConnectivityFailure>,
    /// Diamond condition and strong flag-connectivity together.
    pub polytope: bool,
}

/// Builds the poset and runs every check on it.
pub fn run_oracle(r: &RotationSystem, budget: usize) -> Result<OracleReport> {
    run_oracle_with(r, budget, Execution::default())
}

pub fn run_oracle_with(r: &RotationSystem, budget: usize, exec: Execution) -> Result<OracleReport> {
    let fp = build_pre_polytope_with(r, budget, exec)?;
    let flags = fp.flags();
    let diamond_failure = diamond_failure(&fp);
    let flag_connected = components(&flags) == 1;
    let connectivity_failure = connectivity_failure_with(&fp, true, exec);
    let diamond = diamond_failure.is_none();
    let strongly_flag_connected = connectivity_failure.is_none();
    Ok(OracleReport {
        order: r.order(),
        faces: fp.face_counts().to_vec(),
        flags: flags.len(),
        diamond,
        diamond_failure,
        flag_connected,
        strongly_flag_connected,
        connectivity_failure,
        polytope: diamond && strongly_flag_connected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn system(name: &str) -> RotationSystem {
        RotationSystem::from_presentation(&lookup(name).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn tetrahedron() {
        let fp = build_pre_polytope(&system("[3,3]+"), DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(fp.face_counts(), &[4, 6, 4]);
        assert_eq!(fp.flags().len(), 24);
        assert!(check_diamond(&fp));
        assert!(check_flag_connectivity(&fp, true));
    }

    #[test]
    fn chiral_torus_map() {
        let report = run_oracle(&system("{3,6}(1,2)"), DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(report.faces, vec![7, 21, 14]);
        assert_eq!(report.flags, 84);
        assert!(report.polytope);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            build_pre_polytope(&system("[4,3,3]+"), 100),
            Err(Error::BudgetExceeded {
                order: 192,
                budget: 100
            })
        ));
    }

    #[test]
    fn components_of_chain_graph() {
        let chains = vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![5, 5]];
        assert_eq!(components(&chains), 2);
    }
}
