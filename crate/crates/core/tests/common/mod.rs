//! Independent models of the groups in the catalog, built without coset
//! enumeration: permutation groups and affine maps of the plane lattices.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use polymix_core::catalog::{lookup, TorusKind, TorusMapParams};
use polymix_core::rotation::{covers, RotationSystem};
use polymix_core::{ConcreteGroup, Letter};

pub const LIMIT: usize = 1_000_000;

pub fn system(name: &str) -> RotationSystem {
    RotationSystem::from_presentation(&lookup(name).unwrap(), LIMIT).unwrap()
}

/// Same order and covering both ways: the generator assignment is an
/// isomorphism.
pub fn isomorphic(a: &RotationSystem, b: &RotationSystem) -> bool {
    a.order() == b.order() && covers(a, b).unwrap() && covers(b, a).unwrap()
}

/// Permutation composed left to right: `(x * y)[i] = y[x[i]]`.
pub fn compose(x: &[u8], y: &[u8]) -> Vec<u8> {
    x.iter().map(|&i| y[i as usize]).collect()
}

pub fn invert(x: &[u8]) -> Vec<u8> {
    let mut out = vec![0; x.len()];
    for (i, &j) in x.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

/// Group generated by permutations acting on the right.
pub fn permutation_group(gens: &[Vec<u8>]) -> RotationSystem {
    let degree = gens[0].len();
    let inverses: Vec<Vec<u8>> = gens.iter().map(|g| invert(g)).collect();
    let identity: Vec<u8> = (0..degree as u8).collect();
    let (group, _) = ConcreteGroup::from_action(
        gens.len() + 1,
        identity,
        |x, l: Letter| {
            let g = if l.is_inverse() {
                &inverses[l.index() - 1]
            } else {
                &gens[l.index() - 1]
            };
            compose(x, g)
        },
        LIMIT,
    )
    .unwrap();
    RotationSystem::from_group(group, "permutations").unwrap()
}

/// Rotations `s_i = r_(i-1) r_i` from a list of involutions `r_0, ..., r_(n-1)`.
pub fn rotations_from_reflections(reflections: &[Vec<u8>]) -> Vec<Vec<u8>> {
    reflections
        .windows(2)
        .map(|w| compose(&w[0], &w[1]))
        .collect()
}

fn transposition(degree: usize, a: usize, b: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (0..degree as u8).collect();
    p.swap(a, b);
    p
}

/// The 12 rotations of the tetrahedron: `s1 = (0 1 2)`, `s2 = (1 2 3)`.
pub fn tetrahedron() -> RotationSystem {
    permutation_group(&[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
}

/// Even permutations of 5 points from the Coxeter reflections of the
/// 4-simplex.
pub fn simplex4() -> RotationSystem {
    let r: Vec<Vec<u8>> = (0..4).map(|i| transposition(5, i, i + 1)).collect();
    permutation_group(&rotations_from_reflections(&r))
}

/// Rotations of the 4-cube as signed permutations of 4 coordinates, acting
/// on the symbols `+x_k = 2k`, `-x_k = 2k+1`.
pub fn cube4() -> RotationSystem {
    let mut r = Vec::new();
    r.push(transposition(8, 0, 1));
    for k in 0..3 {
        let mut p = transposition(8, 2 * k, 2 * k + 2);
        p.swap(2 * k + 1, 2 * k + 3);
        r.push(p);
    }
    permutation_group(&rotations_from_reflections(&r))
}

/// Quadratic integer `x + y w` with `w = i` (square lattice) or
/// `w = ζ = e^(iπ/3)` (triangular lattice).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub x: i64,
    pub y: i64,
}

impl Lattice {
    pub fn new(x: i64, y: i64) -> Self {
        Lattice { x, y }
    }
}

/// Arithmetic of `Z[i]` or `Z[ζ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Gaussian,
    Eisenstein,
}

impl Ring {
    pub fn add(self, a: Lattice, b: Lattice) -> Lattice {
        Lattice::new(a.x + b.x, a.y + b.y)
    }

    pub fn neg(self, a: Lattice) -> Lattice {
        Lattice::new(-a.x, -a.y)
    }

    pub fn mul(self, a: Lattice, b: Lattice) -> Lattice {
        match self {
            // (a + bi)(c + di)
            Ring::Gaussian => Lattice::new(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x),
            // (a + bζ)(c + dζ) with ζ^2 = ζ - 1
            Ring::Eisenstein => {
                Lattice::new(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x + a.y * b.y)
            }
        }
    }

    pub fn conj(self, a: Lattice) -> Lattice {
        match self {
            Ring::Gaussian => Lattice::new(a.x, -a.y),
            // conj(ζ) = 1 - ζ
            Ring::Eisenstein => Lattice::new(a.x + a.y, -a.y),
        }
    }

    pub fn norm(self, a: Lattice) -> i64 {
        let n = self.mul(a, self.conj(a));
        assert_eq!(n.y, 0);
        n.x
    }

    /// Units in counterclockwise order, starting at 1.
    pub fn units(self) -> Vec<Lattice> {
        let w = Lattice::new(0, 1);
        let count = match self {
            Ring::Gaussian => 4,
            Ring::Eisenstein => 6,
        };
        let mut out = vec![Lattice::new(1, 0)];
        for _ in 1..count {
            out.push(self.mul(*out.last().unwrap(), w));
        }
        out
    }
}

/// Residues of the ring modulo the ideal `(v)`.
#[derive(Clone, Copy, Debug)]
pub struct Quotient {
    pub ring: Ring,
    pub v: Lattice,
    pub n: i64,
}

impl Quotient {
    pub fn new(ring: Ring, v: Lattice) -> Self {
        Quotient {
            ring,
            v,
            n: ring.norm(v),
        }
    }

    /// `t` is in `(v)` iff `t conj(v)` is divisible by `N(v)`; the residues
    /// of `t conj(v)` therefore identify the class of `t`.
    pub fn key(&self, t: Lattice) -> (i64, i64) {
        let s = self.ring.mul(t, self.ring.conj(self.v));
        (s.x.rem_euclid(self.n), s.y.rem_euclid(self.n))
    }

    /// Shrinks coordinates without leaving the class (`N(v)` lies in `(v)`).
    pub fn reduce(&self, t: Lattice) -> Lattice {
        Lattice::new(t.x.rem_euclid(self.n), t.y.rem_euclid(self.n))
    }
}

/// Orientation-preserving affine map `z -> u z + t` of the torus, with the
/// translation kept up to the lattice.
#[derive(Clone, Copy, Debug)]
pub struct Affine {
    pub u: Lattice,
    pub t: Lattice,
    pub key: (i64, i64),
}

impl PartialEq for Affine {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.key == other.key
    }
}

impl Eq for Affine {}

impl Hash for Affine {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.u.hash(state);
        self.key.hash(state);
    }
}

/// The torus map as a quotient of the plane tessellation by the lattice
/// `(v)`. With counterclockwise generators the catalog's `(b, c)` is
/// `v = c + b w`; `b + c w` gives the enantiomorphic map.
pub struct LatticeTorus {
    pub q: Quotient,
    pub kind: TorusKind,
    pub gens: Vec<(Lattice, Lattice)>,
}

impl LatticeTorus {
    /// `{4,4}`: `s1: z -> iz + 1` (quarter turn about the square with
    /// corners `0, 1, 1+i, i`), `s2: z -> iz` (about the vertex `0`).
    /// `{3,6}`: `s1: z -> ζ^2 z + 1` (about the triangle `0, 1, ζ`),
    /// `s2: z -> ζ z`.
    pub fn new(params: TorusMapParams) -> Self {
        let (b, c) = (params.b as i64, params.c as i64);
        let (ring, gens) = match params.kind {
            TorusKind::Square => (
                Ring::Gaussian,
                vec![
                    (Lattice::new(0, 1), Lattice::new(1, 0)),
                    (Lattice::new(0, 1), Lattice::new(0, 0)),
                ],
            ),
            TorusKind::Triangular => (
                Ring::Eisenstein,
                vec![
                    (Lattice::new(-1, 1), Lattice::new(1, 0)),
                    (Lattice::new(0, 1), Lattice::new(0, 0)),
                ],
            ),
            TorusKind::Hexagonal => panic!("use the dual of the triangular model"),
        };
        LatticeTorus {
            q: Quotient::new(ring, Lattice::new(c, b)),
            kind: params.kind,
            gens,
        }
    }

    fn affine(&self, u: Lattice, t: Lattice) -> Affine {
        let t = self.q.reduce(t);
        Affine {
            u,
            t,
            key: self.q.key(t),
        }
    }

    fn inverse(&self, (u, t): (Lattice, Lattice)) -> (Lattice, Lattice) {
        let ring = self.q.ring;
        let units = ring.units();
        let ui = *units
            .iter()
            .find(|&&w| ring.mul(w, u) == Lattice::new(1, 0))
            .unwrap();
        (ui, ring.neg(ring.mul(ui, t)))
    }

    /// The rotation group as affine maps composed left to right:
    /// `x * y = (u_y u_x, u_y t_x + t_y)`.
    pub fn rotation_group(&self) -> RotationSystem {
        let ring = self.q.ring;
        let inverses: Vec<_> = self.gens.iter().map(|&g| self.inverse(g)).collect();
        let identity = self.affine(Lattice::new(1, 0), Lattice::new(0, 0));
        let (group, _) = ConcreteGroup::from_action(
            3,
            identity,
            |x, l: Letter| {
                let (u, t) = if l.is_inverse() {
                    inverses[l.index() - 1]
                } else {
                    self.gens[l.index() - 1]
                };
                self.affine(ring.mul(u, x.u), ring.add(ring.mul(u, x.t), t))
            },
            LIMIT,
        )
        .unwrap();
        RotationSystem::from_group(group, "lattice torus").unwrap()
    }

    /// Corners of the tiles owned by the vertex `p`: one square, or an up
    /// and a down triangle.
    fn tiles_at(&self, p: Lattice) -> Vec<Vec<Lattice>> {
        let ring = self.q.ring;
        let at = |x, y| ring.add(p, Lattice::new(x, y));
        match self.kind {
            TorusKind::Square => vec![vec![at(0, 0), at(1, 0), at(1, 1), at(0, 1)]],
            _ => vec![
                vec![at(0, 0), at(1, 0), at(0, 1)],
                vec![at(1, 0), at(1, 1), at(0, 1)],
            ],
        }
    }

    /// `(vertices, edges, faces, flags)` of the quotient map. Vertex classes
    /// are found by reducing every point of an `N x N` box; an edge is a
    /// class of a point with a direction, identified with its reverse.
    pub fn brute_force(&self) -> (usize, usize, usize, usize) {
        let ring = self.q.ring;
        let mut reps = Vec::new();
        let mut seen = BTreeSet::new();
        for x in 0..self.q.n {
            for y in 0..self.q.n {
                let p = Lattice::new(x, y);
                if seen.insert(self.q.key(p)) {
                    reps.push(p);
                }
            }
        }
        let mut edges = BTreeSet::new();
        let mut faces = 0;
        let mut flags = 0;
        for &p in &reps {
            for tile in self.tiles_at(p) {
                faces += 1;
                for k in 0..tile.len() {
                    let (a, b) = (tile[k], tile[(k + 1) % tile.len()]);
                    let d = ring.add(b, ring.neg(a));
                    let forward = (self.q.key(a), d.x, d.y);
                    let back = (self.q.key(b), -d.x, -d.y);
                    edges.insert(forward.min(back));
                    // a side of a face carries a flag for each endpoint
                    flags += 2;
                }
            }
        }
        (reps.len(), edges.len(), faces, flags)
    }
}
