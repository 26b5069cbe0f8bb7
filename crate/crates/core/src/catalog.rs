//! Named presentations: universal rotation groups `[p1, ..., p(n-1)]+`,
//! the torus maps `{4,4}(b,c)`, `{3,6}(b,c)`, `{6,3}(b,c)`, and the dual and
//! mirror operators on presentations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::Presentation;
use crate::error::{Error, Result};
use crate::words::Word;

/// Schläfli type `{p1, ..., p(n-1)}` with finite entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SchlafliType(Vec<u64>);

impl SchlafliType {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid(
                "a Schläfli type needs at least one entry".into(),
            ));
        }
        if let Some(bad) = entries.iter().find(|&&p| p < 2) {
            return Err(Error::Invalid(format!("Schläfli entry {bad} is below 2")));
        }
        Ok(SchlafliType(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Rank `n` of polytopes of this type.
    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }

    pub fn reversed(&self) -> Self {
        SchlafliType(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for SchlafliType {
    type Err = Error;

    /// Accepts `{3,3}`, `[3,3]+`, `[3,3]` or `3,3`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_end_matches('+')
            .trim_start_matches(['{', '['])
            .trim_end_matches(['}', ']']);
        let entries = inner
            .split(',')
            .map(|e| e.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::UnknownName(s.to_string()))?;
        SchlafliType::new(entries)
    }
}

/// The three families of regular and chiral maps on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorusKind {
    #[serde(rename = "{4,4}")]
    Square,
    #[serde(rename = "{3,6}")]
    Triangular,
    #[serde(rename = "{6,3}")]
    Hexagonal,
}

impl TorusKind {
    pub fn schlafli(self) -> [u64; 2] {
        match self {
            TorusKind::Square => [4, 4],
            TorusKind::Triangular => [3, 6],
            TorusKind::Hexagonal => [6, 3],
        }
    }
}

impl fmt::Display for TorusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = self.schlafli();
        write!(f, "{{{p},{q}}}")
    }
}

/// Parameters of a torus map `{p,q}(b,c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusMapParams {
    pub kind: TorusKind,
    pub b: u64,
    pub c: u64,
}

impl TorusMapParams {
    pub fn new(kind: TorusKind, b: u64, c: u64) -> Result<Self> {
        if b == 0 && c == 0 {
            return Err(Error::InvalidTorusMap("(b, c) = (0, 0)".into()));
        }
        Ok(TorusMapParams { kind, b, c })
    }

    /// `b^2 + bc + c^2` for the triangular families, `b^2 + c^2` for `{4,4}`.
    pub fn m(&self) -> u64 {
        let (b, c) = (self.b, self.c);
        match self.kind {
            TorusKind::Square => b * b + c * c,
            TorusKind::Triangular | TorusKind::Hexagonal => b * b + b * c + c * c,
        }
    }

    /// Order of the rotation group: `4m` for `{4,4}`, `6m` otherwise.
    pub fn rotation_group_order(&self) -> u64 {
        match self.kind {
            TorusKind::Square => 4 * self.m(),
            _ => 6 * self.m(),
        }
    }

    /// `b, c` both nonzero and distinct.
    pub fn is_chiral(&self) -> bool {
        self.b != 0 && self.c != 0 && self.b != self.c
    }

    pub fn name(&self) -> String {
        format!("{}({},{})", self.kind, self.b, self.c)
    }
}

fn word(text: &str, rank: usize) -> Word {
    Word::parse(text, rank).expect("catalog words are well formed")
}

/// `[p1, ..., p(n-1)]+`: the implicit relators plus `s_i^(p_i)`.
pub fn universal_rotation(t: &SchlafliType) -> Presentation {
    let rank = t.rank();
    let relators = t
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            Word::generator(i + 1, rank)
                .expect("index in range")
                .pow(p as i64)
        })
        .collect();
    let label = format!(
        "[{}]+",
        t.entries()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Presentation::new(rank, relators, label).expect("ranks agree")
}

/// Rotation group of a torus map.
///
/// `{3,6}(b,c)` adds `(s1 s2^-1 s1^-1 s2)^b (s2 s1 s2^-1 s1^-1)^c` to
/// `[3,6]+`; `{6,3}(b,c)` is its dual. `{4,4}(b,c)` adds
/// `(s1 s2^-1)^b (s1^-1 s2)^c` to `[4,4]+`: with `s1` the quarter turn about
/// the base square and `s2` the quarter turn about the base vertex, the two
/// factors are perpendicular unit translations.
pub fn torus_map(params: TorusMapParams) -> Presentation {
    let (b, c) = (params.b as i64, params.c as i64);
    let label = params.name();
    match params.kind {
        TorusKind::Triangular => {
            let translation = word("s1 s2^-1 s1^-1 s2", 3)
                .pow(b)
                .mul(&word("s2 s1 s2^-1 s1^-1", 3).pow(c))
                .expect("same rank");
            Presentation::new(
                3,
                vec![word("s1^3", 3), word("s2^6", 3), translation],
                label,
            )
            .expect("ranks agree")
        }
        TorusKind::Hexagonal => {
            let primal = TorusMapParams {
                kind: TorusKind::Triangular,
                ..params
            };
            dual_presentation(&torus_map(primal)).with_label(label)
        }
        TorusKind::Square => {
            let translation = word("s1 s2^-1", 3)
                .pow(b)
                .mul(&word("s1^-1 s2", 3).pow(c))
                .expect("same rank");
            Presentation::new(
                3,
                vec![word("s1^4", 3), word("s2^4", 3), translation],
                label,
            )
            .expect("ranks agree")
        }
    }
}

/// Presentation of the dual: every relator mapped by [`Word::dual`].
pub fn dual_presentation(p: &Presentation) -> Presentation {
    p.dual()
}

/// Presentation of the mirror image: every relator mapped by
/// [`Word::enantiomorph`].
pub fn mirror_presentation(p: &Presentation) -> Presentation {
    p.mirror()
}

/// Looks up a catalog name. Accepted forms:
///
/// - `{3,6}(1,2)`, `{6,3}(1,2)`, `{4,4}(1,2)`: torus maps
/// - `{3,3}`, `[4,3,3]+`: universal rotation groups
/// - `dual:<name>` and `mirror:<name>` apply the operators
pub fn lookup(name: &str) -> Result<Presentation> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("dual:") {
        return Ok(dual_presentation(&lookup(rest)?).with_label(name));
    }
    if let Some(rest) = name.strip_prefix("mirror:") {
        return Ok(mirror_presentation(&lookup(rest)?).with_label(name));
    }
    if let Some((head, tail)) = name.split_once('(') {
        let kind = match head.trim() {
            "{4,4}" => TorusKind::Square,
            "{3,6}" => TorusKind::Triangular,
            "{6,3}" => TorusKind::Hexagonal,
            _ => return Err(Error::UnknownName(name.to_string())),
        };
        let params = tail
            .trim_end_matches(')')
            .split_once(',')
            .and_then(|(b, c)| Some((b.trim().parse().ok()?, c.trim().parse().ok()?)))
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let params = TorusMapParams::new(kind, params.0, params.1)?;
        return Ok(torus_map(params));
    }
    let t: SchlafliType = name.parse()?;
    Ok(universal_rotation(&t))
}

/// One entry of [`entries`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub rotation_group_order: Option<u64>,
}

/// The named presentations used throughout the reproduction suite.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (t, order, what) in [
        ("[3,3]+", 12, "tetrahedron"),
        ("[3,4]+", 24, "octahedron"),
        ("[4,3]+", 24, "cube"),
        ("[3,5]+", 60, "icosahedron"),
        ("[5,3]+", 60, "dodecahedron"),
        ("[3,3,3]+", 60, "4-simplex"),
        ("[4,3,3]+", 192, "4-cube"),
        ("[3,3,4]+", 192, "4-orthoplex"),
        ("[2,4,2]+", 16, "rank-4 product of polygons"),
    ] {
        out.push(CatalogEntry {
            name: t.to_string(),
            description: format!("universal rotation group ({what})"),
            rotation_group_order: Some(order),
        });
    }
    let torus = [
        (TorusKind::Triangular, 1, 1),
        (TorusKind::Triangular, 1, 2),
        (TorusKind::Triangular, 2, 1),
        (TorusKind::Triangular, 1, 3),
        (TorusKind::Triangular, 2, 3),
        (TorusKind::Triangular, 1, 4),
        (TorusKind::Hexagonal, 1, 2),
        (TorusKind::Hexagonal, 2, 1),
        (TorusKind::Hexagonal, 1, 3),
        (TorusKind::Hexagonal, 2, 3),
        (TorusKind::Hexagonal, 2, 4),
        (TorusKind::Square, 1, 1),
        (TorusKind::Square, 1, 2),
        (TorusKind::Square, 2, 1),
        (TorusKind::Square, 1, 3),
    ];
    for (kind, b, c) in torus {
        let p = TorusMapParams { kind, b, c };
        let regularity = if p.is_chiral() { "chiral" } else { "regular" };
        out.push(CatalogEntry {
            name: p.name(),
            description: format!("{regularity} torus map, m = {}", p.m()),
            rotation_group_order: Some(p.rotation_group_order()),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::realize;

    const LIMIT: usize = 100_000;

    fn order(p: &Presentation) -> usize {
        realize(p, LIMIT).unwrap().order()
    }

    fn tri(b: u64, c: u64) -> TorusMapParams {
        TorusMapParams::new(TorusKind::Triangular, b, c).unwrap()
    }

    #[test]
    fn universal_orders() {
        let t33: SchlafliType = "{3,3}".parse().unwrap();
        let p = universal_rotation(&t33);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(order(&p), 12);
        assert_eq!(order(&universal_rotation(&"{3,3,3}".parse().unwrap())), 60);
        assert_eq!(order(&universal_rotation(&"{4,3,3}".parse().unwrap())), 192);
        assert_eq!(
            order(&universal_rotation(&SchlafliType::new(vec![7]).unwrap())),
            7
        );
    }

    #[test]
    fn schlafli_parsing() {
        assert_eq!(
            "[4,3,3]+".parse::<SchlafliType>().unwrap().entries(),
            &[4, 3, 3]
        );
        assert!("{1,3}".parse::<SchlafliType>().is_err());
        assert!("{a,3}".parse::<SchlafliType>().is_err());
        assert_eq!(SchlafliType::new(vec![3, 6]).unwrap().to_string(), "{3,6}");
    }

    #[test]
    fn torus_orders() {
        assert_eq!(order(&torus_map(tri(1, 2))), 42);
        let hex = TorusMapParams::new(TorusKind::Hexagonal, 1, 2).unwrap();
        assert_eq!(order(&torus_map(hex)), 42);
        assert_eq!(order(&torus_map(tri(1, 1))), 18);
    }

    #[test]
    fn torus_params_validation() {
        assert!(TorusMapParams::new(TorusKind::Square, 0, 0).is_err());
        assert_eq!(tri(2, 3).m(), 19);
        assert!(tri(1, 2).is_chiral());
        assert!(!tri(1, 1).is_chiral());
        assert!(!tri(0, 2).is_chiral());
    }

    #[test]
    fn dual_of_universal_is_reversed() {
        let p = universal_rotation(&"{4,3}".parse().unwrap());
        let q = universal_rotation(&"{3,4}".parse().unwrap());
        let mut d: Vec<Word> = dual_presentation(&p)
            .relators()
            .iter()
            .map(|w| w.inverse())
            .collect();
        d.sort_by_key(|w| w.to_string());
        let mut e: Vec<Word> = q.relators().to_vec();
        e.sort_by_key(|w| w.to_string());
        assert_eq!(d, e);
    }

    #[test]
    fn operators_are_involutions() {
        let p = torus_map(tri(1, 2));
        assert_eq!(
            dual_presentation(&dual_presentation(&p)).relators(),
            p.relators()
        );
        assert_eq!(
            mirror_presentation(&mirror_presentation(&p)).relators(),
            p.relators()
        );
        assert_eq!(order(&dual_presentation(&p)), 42);
        assert_eq!(order(&mirror_presentation(&p)), 42);
        let u = universal_rotation(&"{3,4}".parse().unwrap());
        assert_eq!(order(&mirror_presentation(&u)), 24);
    }

    #[test]
    fn lookup_names() {
        assert_eq!(order(&lookup("{3,6}(1,2)").unwrap()), 42);
        assert_eq!(order(&lookup("[3,3]+").unwrap()), 12);
        assert_eq!(order(&lookup("dual:{3,6}(1,2)").unwrap()), 42);
        assert!(lookup("{5,5}(1,2)").is_err());
        assert!(lookup("nonsense").is_err());
        assert!(lookup("{3,6}(0,0)").is_err());
    }

    #[test]
    fn catalog_orders_match_realizations() {
        for e in entries() {
            let p = lookup(&e.name).unwrap();
            assert_eq!(Some(order(&p) as u64), e.rotation_group_order, "{}", e.name);
        }
    }
}
