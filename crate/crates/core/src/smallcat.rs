//! Finite categories given by an explicit composition table.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category. Objects and morphisms are kept sorted by label, and
/// `comp[g][f]` holds `g ∘ f` whenever `target(f) = source(g)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
}

/// Raw description of a category, before validation.
#[derive(Clone, Debug, Default)]
pub struct CatSpec {
    pub objects: Vec<String>,
    /// `(label, source, target)`, non-identity morphisms only.
    pub morphisms: Vec<(String, String, String)>,
    /// `(g, f, g∘f)` for composable non-identity pairs.
    pub compositions: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Undefined { g: String, f: String },
    WrongEnds { g: String, f: String, composite: String },
    Identity { id: String, f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Undefined { g, f } => write!(out, "composite {} ∘ {} is undefined", g, f),
            Violation::WrongEnds { g, f, composite } => write!(
                out,
                "composite {} ∘ {} = {} has the wrong source or target",
                g, f, composite
            ),
            Violation::Identity { id, f } => write!(out, "identity law fails for {} with {}", id, f),
            Violation::Associativity { h, g, f } => {
                write!(out, "associativity fails on ({}, {}, {})", h, g, f)
            }
        }
    }
}

pub fn identity_label(object: &str) -> String {
    format!("id_{}", object)
}

pub fn pair_label(a: &str, b: &str) -> String {
    format!("({},{})", a, b)
}

impl FinCat {
    /// Builds and validates a category. Identity morphisms `id_<obj>` and
    /// their compositions are added automatically.
    pub fn new(spec: &CatSpec) -> Result<Self> {
        let c = Self::unvalidated(spec)?;
        c.validate()
            .map_err(|v| Error::InvalidCategory(v.to_string()))?;
        Ok(c)
    }

    /// Builds the table without checking the category axioms, so that
    /// `validate` can report on it.
    pub fn unvalidated(spec: &CatSpec) -> Result<Self> {
        let mut objects = spec.objects.clone();
        objects.sort();
        if objects.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCategory("duplicate object label".into()));
        }
        let obj_index: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let find_obj = |o: &str| {
            obj_index
                .get(o)
                .copied()
                .ok_or_else(|| Error::Unknown {
                    kind: "object".into(),
                    name: o.into(),
                })
        };
        let mut morphisms: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                label: identity_label(o),
                source: i,
                target: i,
            })
            .collect();
        for (label, s, t) in &spec.morphisms {
            morphisms.push(Morphism {
                label: label.clone(),
                source: find_obj(s)?,
                target: find_obj(t)?,
            });
        }
        morphisms.sort_by(|a, b| a.label.cmp(&b.label));
        if morphisms.windows(2).any(|w| w[0].label == w[1].label) {
            return Err(Error::InvalidCategory("duplicate morphism label".into()));
        }
        let mor_index: HashMap<&str, usize> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.label.as_str(), i))
            .collect();
        let find_mor = |m: &str| {
            mor_index
                .get(m)
                .copied()
                .ok_or_else(|| Error::Unknown {
                    kind: "morphism".into(),
                    name: m.into(),
                })
        };
        let identities: Vec<usize> = objects
            .iter()
            .map(|o| find_mor(&identity_label(o)))
            .collect::<Result<_>>()?;
        let n = morphisms.len();
        let mut comp = vec![vec![None; n]; n];
        for (f, m) in morphisms.iter().enumerate() {
            comp[identities[m.target]][f] = Some(f);
            comp[f][identities[m.source]] = Some(f);
        }
        for (g, f, gf) in &spec.compositions {
            comp[find_mor(g)?][find_mor(f)?] = Some(find_mor(gf)?);
        }
        Ok(FinCat {
            objects,
            morphisms,
            identities,
            comp,
        })
    }

    /// Builds from already-indexed parts (used by products and opposites).
    fn from_parts(objects: Vec<String>, morphisms: Vec<Morphism>, table: impl Fn(usize, usize) -> Option<usize>) -> Self {
        // re-sort by label, keeping the table consistent
        let mut obj_order: Vec<usize> = (0..objects.len()).collect();
        obj_order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        let mut obj_new = vec![0; objects.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut mor_order: Vec<usize> = (0..morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| morphisms[a].label.cmp(&morphisms[b].label));
        let mut mor_new = vec![0; morphisms.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }
        let sorted_objects: Vec<String> = obj_order.iter().map(|&o| objects[o].clone()).collect();
        let sorted_morphisms: Vec<Morphism> = mor_order
            .iter()
            .map(|&m| Morphism {
                label: morphisms[m].label.clone(),
                source: obj_new[morphisms[m].source],
                target: obj_new[morphisms[m].target],
            })
            .collect();
        let n = morphisms.len();
        let mut comp = vec![vec![None; n]; n];
        for g in 0..n {
            for f in 0..n {
                comp[mor_new[g]][mor_new[f]] = table(g, f).map(|h| mor_new[h]);
            }
        }
        let mut identities = vec![0; sorted_objects.len()];
        for (m, mor) in sorted_morphisms.iter().enumerate() {
            if mor.source == mor.target && mor.label == identity_label(&sorted_objects[mor.source]) {
                identities[mor.source] = m;
            }
        }
        FinCat {
            objects: sorted_objects,
            morphisms: sorted_morphisms,
            identities,
            comp,
        }
    }

    /// Checks composability, identity laws, and associativity, reporting the
    /// first failure in label order.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.morphisms.len();
        let label = |m: usize| self.morphisms[m].label.clone();
        for g in 0..n {
            for f in 0..n {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                match (composable, self.comp[g][f]) {
                    (true, None) => return Err(Violation::Undefined { g: label(g), f: label(f) }),
                    (false, Some(_)) => {
                        return Err(Violation::WrongEnds {
                            g: label(g),
                            f: label(f),
                            composite: label(self.comp[g][f].unwrap()),
                        })
                    }
                    (true, Some(h)) => {
                        let mh = &self.morphisms[h];
                        if mh.source != self.morphisms[f].source || mh.target != self.morphisms[g].target {
                            return Err(Violation::WrongEnds {
                                g: label(g),
                                f: label(f),
                                composite: label(h),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (o, &id) in self.identities.iter().enumerate() {
            for f in 0..n {
                let m = &self.morphisms[f];
                if (m.target == o && self.comp[id][f] != Some(f)) || (m.source == o && self.comp[f][id] != Some(f)) {
                    return Err(Violation::Identity { id: label(id), f: label(f) });
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.comp[h][g] else { continue };
                for f in 0..n {
                    let Some(gf) = self.comp[g][f] else { continue };
                    if self.comp[hg][f] != self.comp[h][gf] {
                        return Err(Violation::Associativity {
                            h: label(h),
                            g: label(g),
                            f: label(f),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].source] == m
    }

    pub fn source(&self, m: usize) -> usize {
        self.morphisms[m].source
    }

    pub fn target(&self, m: usize) -> usize {
        self.morphisms[m].target
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    pub fn object_index(&self, label: &str) -> Result<usize> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(label))
            .map_err(|_| Error::Unknown {
                kind: "object".into(),
                name: label.into(),
            })
    }

    pub fn morphism_index(&self, label: &str) -> Result<usize> {
        self.morphisms
            .binary_search_by(|m| m.label.as_str().cmp(label))
            .map_err(|_| Error::Unknown {
                kind: "morphism".into(),
                name: label.into(),
            })
    }

    /// Morphisms `i → j` in label order.
    pub fn hom(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].source == i && self.morphisms[m].target == j)
            .collect()
    }

    /// Objects are pairs `(i,j)`, morphisms pairs `(f,g)`, composed componentwise.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let no = other.objects.len();
        let nm = other.morphisms.len();
        let mut objects = Vec::new();
        for a in &self.objects {
            for b in &other.objects {
                objects.push(pair_label(a, b));
            }
        }
        let mut morphisms = Vec::new();
        for f in &self.morphisms {
            for g in &other.morphisms {
                let label = if f.label == identity_label(&self.objects[f.source])
                    && g.label == identity_label(&other.objects[g.source])
                {
                    identity_label(&pair_label(&self.objects[f.source], &other.objects[g.source]))
                } else {
                    pair_label(&f.label, &g.label)
                };
                morphisms.push(Morphism {
                    label,
                    source: f.source * no + g.source,
                    target: f.target * no + g.target,
                });
            }
        }
        FinCat::from_parts(objects, morphisms, |x, y| {
            let (f1, g1) = (x / nm, x % nm);
            let (f2, g2) = (y / nm, y % nm);
            Some(self.comp[f1][f2]? * nm + other.comp[g1][g2]?)
        })
    }

    /// Index of the product object `(i, j)` in `self.product(other)`.
    pub fn product_object(&self, other: &FinCat, product: &FinCat, i: usize, j: usize) -> usize {
        product
            .object_index(&pair_label(&self.objects[i], &other.objects[j]))
            .expect("product object")
    }

    /// Index of the product morphism `(f, g)` in `self.product(other)`.
    pub fn product_morphism(&self, other: &FinCat, product: &FinCat, f: usize, g: usize) -> usize {
        let label = if self.is_identity(f) && other.is_identity(g) {
            identity_label(&pair_label(
                &self.objects[self.source(f)],
                &other.objects[other.source(g)],
            ))
        } else {
            pair_label(&self.morphisms[f].label, &other.morphisms[g].label)
        };
        product.morphism_index(&label).expect("product morphism")
    }

    pub fn opposite(&self) -> FinCat {
        FinCat {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| Morphism {
                    label: m.label.clone(),
                    source: m.target,
                    target: m.source,
                })
                .collect(),
            identities: self.identities.clone(),
            comp: (0..self.morphisms.len())
                .map(|g| (0..self.morphisms.len()).map(|f| self.comp[f][g]).collect())
                .collect(),
        }
    }

    pub fn point() -> FinCat {
        FinCat::new(&CatSpec {
            objects: vec!["*".into()],
            ..Default::default()
        })
        .expect("point")
    }

    /// `0 → 1` via `a`.
    pub fn arrow() -> FinCat {
        FinCat::new(&CatSpec {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![("a".into(), "0".into(), "1".into())],
            compositions: vec![],
        })
        .expect("arrow")
    }

    /// Commutative square `x: 0→1, y: 0→2, u: 1→3, v: 2→3` with diagonal
    /// `d = u∘x = v∘y`.
    pub fn square() -> FinCat {
        let s = |x: &str| x.to_string();
        FinCat::new(&CatSpec {
            objects: vec![s("0"), s("1"), s("2"), s("3")],
            morphisms: vec![
                (s("x"), s("0"), s("1")),
                (s("y"), s("0"), s("2")),
                (s("u"), s("1"), s("3")),
                (s("v"), s("2"), s("3")),
                (s("d"), s("0"), s("3")),
            ],
            compositions: vec![(s("u"), s("x"), s("d")), (s("v"), s("y"), s("d"))],
        })
        .expect("square")
    }

    /// Two parallel morphisms `a, b: 0 → 1`.
    pub fn parallel() -> FinCat {
        FinCat::new(&CatSpec {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                ("a".into(), "0".into(), "1".into()),
                ("b".into(), "0".into(), "1".into()),
            ],
            compositions: vec![],
        })
        .expect("parallel pair")
    }

    /// One-object category of a finite monoid. `labels[e]` is the identity
    /// element and `table[a][b]` is the index of `a·b` (composition `a ∘ b`).
    pub fn monoid(labels: &[String], identity: usize, table: &[Vec<usize>]) -> Result<FinCat> {
        let n = labels.len();
        if identity >= n || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidCategory("monoid table has the wrong shape".into()));
        }
        // the identity element becomes id_*
        let name = |a: usize| {
            if a == identity {
                identity_label("*")
            } else {
                labels[a].clone()
            }
        };
        let mut spec = CatSpec {
            objects: vec!["*".into()],
            ..Default::default()
        };
        for a in (0..n).filter(|&a| a != identity) {
            spec.morphisms.push((labels[a].clone(), "*".into(), "*".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if a != identity && b != identity {
                    spec.compositions.push((name(a), name(b), name(table[a][b])));
                }
            }
        }
        let c = FinCat::unvalidated(&spec)?;
        // identity compositions are filled in automatically; check they agree
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidCategory(format!(
                    "{} is not a two-sided identity",
                    labels[identity]
                )));
            }
        }
        c.validate().map_err(|v| Error::InvalidCategory(v.to_string()))?;
        Ok(c)
    }

    pub fn standard(name: &str) -> Result<FinCat> {
        match name {
            "point" => Ok(Self::point()),
            "arrow" => Ok(Self::arrow()),
            "square" => Ok(Self::square()),
            "parallel" => Ok(Self::parallel()),
            _ => Err(Error::Unknown {
                kind: "standard category".into(),
                name: name.into(),
            }),
        }
    }

    /// Back to a raw description (used for printing).
    pub fn to_spec(&self) -> CatSpec {
        let mut spec = CatSpec {
            objects: self.objects.clone(),
            ..Default::default()
        };
        for (m, mor) in self.morphisms.iter().enumerate() {
            if !self.is_identity(m) {
                spec.morphisms.push((
                    mor.label.clone(),
                    self.objects[mor.source].clone(),
                    self.objects[mor.target].clone(),
                ));
            }
        }
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                if self.is_identity(g) || self.is_identity(f) {
                    continue;
                }
                if let Some(h) = self.comp[g][f] {
                    spec.compositions.push((
                        self.morphisms[g].label.clone(),
                        self.morphisms[f].label.clone(),
                        self.morphisms[h].label.clone(),
                    ));
                }
            }
        }
        spec
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_sizes() {
        assert_eq!(FinCat::point().num_morphisms(), 1);
        assert_eq!(FinCat::arrow().num_morphisms(), 3);
        assert_eq!(FinCat::parallel().num_morphisms(), 4);
        assert_eq!(FinCat::square().num_morphisms(), 9);
        assert!(FinCat::standard("pentagon").is_err());
    }

    #[test]
    fn arrow_squared_is_a_square() {
        let a = FinCat::arrow();
        let p = a.product(&a);
        assert_eq!(p.num_objects(), 4);
        assert_eq!(p.num_morphisms(), 9);
        assert_eq!(p.validate(), Ok(()));
        // oracle: count morphisms between objects of the commutative square
        let hom_sizes: Vec<usize> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| p.hom(i, j).len())
            .collect();
        let s = FinCat::square();
        let mut expected: Vec<usize> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| s.hom(i, j).len())
            .collect();
        let mut got = hom_sizes;
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn point_is_a_product_unit() {
        let pt = FinCat::point();
        assert_eq!(pt.product(&pt).num_morphisms(), 1);
        let a = FinCat::arrow();
        let ap = a.product(&pt);
        assert_eq!(ap.num_objects(), 2);
        assert_eq!(ap.num_morphisms(), 3);
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [FinCat::arrow(), FinCat::square(), FinCat::parallel()] {
            assert_eq!(c.opposite().opposite(), c);
            assert_eq!(c.opposite().validate(), Ok(()));
        }
    }

    #[test]
    fn planted_associativity_failure_is_named() {
        // monoid {e, a, z} where a∘a = e but z absorbs on the left only
        let s = |x: &str| x.to_string();
        let spec = CatSpec {
            objects: vec![s("*")],
            morphisms: vec![(s("a"), s("*"), s("*")), (s("z"), s("*"), s("*"))],
            compositions: vec![
                (s("a"), s("a"), s("id_*")),
                (s("a"), s("z"), s("z")),
                (s("z"), s("a"), s("a")),
                (s("z"), s("z"), s("z")),
            ],
        };
        let c = FinCat::unvalidated(&spec).unwrap();
        let err = c.validate().unwrap_err();
        // direct triple scan oracle
        let n = c.num_morphisms();
        let mut first = None;
        'outer: for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    let (Some(hg), Some(gf)) = (c.compose(h, g), c.compose(g, f)) else { continue };
                    if c.compose(hg, f) != c.compose(h, gf) {
                        first = Some((h, g, f));
                        break 'outer;
                    }
                }
            }
        }
        let (h, g, f) = first.expect("planted failure");
        let m = c.morphisms();
        assert_eq!(
            err,
            Violation::Associativity {
                h: m[h].label.clone(),
                g: m[g].label.clone(),
                f: m[f].label.clone()
            }
        );
    }

    #[test]
    fn cyclic_monoid() {
        let labels = vec![s("e"), s("t")];
        fn s(x: &str) -> String {
            x.into()
        }
        let c = FinCat::monoid(&labels, 0, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c.num_morphisms(), 2);
        assert!(FinCat::monoid(&labels, 0, &[vec![0, 1], vec![1, 1]]).is_ok());
        assert!(FinCat::monoid(&labels, 1, &[vec![0, 1], vec![1, 0]]).is_err());
    }
}
