//! Built-in SNC fiber graphs: the genus-1 Kodaira types and the genus-2
//! type 4 in Ogg's numbering.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fiber::{FiberGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaType {
    /// Good reduction.
    I,
    IStar,
    In(u64),
    InStar(u64),
    II,
    IIStar,
    III,
    IIIStar,
    IV,
    IVStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberTypeId {
    Kodaira(KodairaType),
    Ogg(u32),
}

impl FromStr for FiberTypeId {
    type Err = Error;

    /// Accepts `kodaira:IV`, `kodaira:In*:3`, `ogg:4` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let param = |p: Option<&&str>| -> Result<u64> {
            let v: u64 = p.ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
            if v == 0 {
                return Err(unknown());
            }
            Ok(v)
        };
        match parts.as_slice() {
            ["ogg", k] => Ok(Self::Ogg(k.parse().map_err(|_| unknown())?)),
            ["kodaira", name, rest @ ..] => {
                use KodairaType::*;
                let t = match (*name, rest.len()) {
                    ("I" | "I0", 0) => I,
                    ("I*" | "I0*", 0) => IStar,
                    ("In", 1) => In(param(rest.first())?),
                    ("In*", 1) => InStar(param(rest.first())?),
                    ("II", 0) => II,
                    ("II*", 0) => IIStar,
                    ("III", 0) => III,
                    ("III*", 0) => IIIStar,
                    ("IV", 0) => IV,
                    ("IV*", 0) => IVStar,
                    _ => return Err(unknown()),
                };
                Ok(Self::Kodaira(t))
            }
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for FiberTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            Self::Ogg(k) => write!(f, "ogg:{k}"),
            Self::Kodaira(t) => match t {
                I => write!(f, "kodaira:I"),
                IStar => write!(f, "kodaira:I*"),
                In(n) => write!(f, "kodaira:In:{n}"),
                InStar(n) => write!(f, "kodaira:In*:{n}"),
                II => write!(f, "kodaira:II"),
                IIStar => write!(f, "kodaira:II*"),
                III => write!(f, "kodaira:III"),
                IIIStar => write!(f, "kodaira:III*"),
                IV => write!(f, "kodaira:IV"),
                IVStar => write!(f, "kodaira:IV*"),
            },
        }
    }
}

fn build(vs: &[(&str, u64, u64)], es: &[(&str, &str)]) -> FiberGraph {
    let vertices = vs
        .iter()
        .map(|&(id, genus, mult)| Vertex {
            id: id.to_string(),
            genus,
            mult,
        })
        .collect();
    FiberGraph::new(vertices, es).expect("catalog graphs are valid")
}

fn build_owned(vs: Vec<(String, u64, u64)>, es: Vec<(String, String)>) -> FiberGraph {
    let vertices = vs
        .into_iter()
        .map(|(id, genus, mult)| Vertex { id, genus, mult })
        .collect();
    FiberGraph::new(vertices, &es).expect("catalog graphs are valid")
}

fn cycle(n: u64) -> FiberGraph {
    let id = |i: u64| format!("v{i}");
    let vs = (1..=n).map(|i| (id(i), 0, 1)).collect();
    let es = (1..=n).map(|i| (id(i), id(i % n + 1))).collect();
    build_owned(vs, es)
}

fn d_chain(n: u64) -> FiberGraph {
    let id = |i: u64| format!("c{i}");
    let mut vs: Vec<(String, u64, u64)> = (0..=n).map(|i| (id(i), 0, 2)).collect();
    let mut es: Vec<(String, String)> = (0..n).map(|i| (id(i), id(i + 1))).collect();
    for (leaf, at) in [("a1", 0), ("a2", 0), ("b1", n), ("b2", n)] {
        vs.push((leaf.to_string(), 0, 1));
        es.push((leaf.to_string(), id(at)));
    }
    build_owned(vs, es)
}

pub fn lookup(id: FiberTypeId) -> Result<FiberGraph> {
    use KodairaType::*;
    let g = match id {
        FiberTypeId::Kodaira(t) => match t {
            I => build(&[("e", 1, 1)], &[]),
            IStar => build(
                &[
                    ("c", 0, 2),
                    ("l1", 0, 1),
                    ("l2", 0, 1),
                    ("l3", 0, 1),
                    ("l4", 0, 1),
                ],
                &[("l1", "c"), ("l2", "c"), ("l3", "c"), ("l4", "c")],
            ),
            In(n) => cycle(n),
            InStar(n) => d_chain(n),
            II => build(
                &[("c", 0, 6), ("t1", 0, 1), ("t2", 0, 2), ("t3", 0, 3)],
                &[("t1", "c"), ("t2", "c"), ("t3", "c")],
            ),
            III => build(
                &[("c", 0, 4), ("t1", 0, 1), ("t2", 0, 1), ("t3", 0, 2)],
                &[("t1", "c"), ("t2", "c"), ("t3", "c")],
            ),
            IV => build(
                &[("v1", 0, 1), ("v2", 0, 1), ("v3", 0, 1), ("v4", 0, 3)],
                &[("v1", "v4"), ("v2", "v4"), ("v3", "v4")],
            ),
            IVStar => build(
                &[
                    ("c", 0, 3),
                    ("a1", 0, 2),
                    ("a2", 0, 2),
                    ("a3", 0, 2),
                    ("b1", 0, 1),
                    ("b2", 0, 1),
                    ("b3", 0, 1),
                ],
                &[
                    ("a1", "c"),
                    ("a2", "c"),
                    ("a3", "c"),
                    ("b1", "a1"),
                    ("b2", "a2"),
                    ("b3", "a3"),
                ],
            ),
            IIIStar => build(
                &[
                    ("u1", 0, 1),
                    ("u2", 0, 2),
                    ("u3", 0, 3),
                    ("u4", 0, 4),
                    ("u5", 0, 3),
                    ("u6", 0, 2),
                    ("u7", 0, 1),
                    ("u8", 0, 2),
                ],
                &[
                    ("u1", "u2"),
                    ("u2", "u3"),
                    ("u3", "u4"),
                    ("u4", "u5"),
                    ("u5", "u6"),
                    ("u6", "u7"),
                    ("u8", "u4"),
                ],
            ),
            IIStar => build(
                &[
                    ("u1", 0, 1),
                    ("u2", 0, 2),
                    ("u3", 0, 3),
                    ("u4", 0, 4),
                    ("u5", 0, 5),
                    ("u6", 0, 6),
                    ("u7", 0, 4),
                    ("u8", 0, 2),
                    ("u9", 0, 3),
                ],
                &[
                    ("u1", "u2"),
                    ("u2", "u3"),
                    ("u3", "u4"),
                    ("u4", "u5"),
                    ("u5", "u6"),
                    ("u6", "u7"),
                    ("u7", "u8"),
                    ("u9", "u6"),
                ],
            ),
        },
        FiberTypeId::Ogg(4) => build(
            &[
                ("v1", 0, 1),
                ("v2", 0, 2),
                ("v3", 0, 3),
                ("v4", 0, 4),
                ("v5", 0, 2),
                ("v6", 0, 2),
                ("v7", 0, 1),
            ],
            &[
                ("v1", "v2"),
                ("v2", "v3"),
                ("v3", "v4"),
                ("v5", "v4"),
                ("v6", "v4"),
                ("v7", "v4"),
            ],
        ),
        FiberTypeId::Ogg(_) => return Err(Error::UnknownType(id.to_string())),
    };
    Ok(g)
}

pub fn lookup_str(id: &str) -> Result<FiberGraph> {
    lookup(id.parse()?)
}

/// Catalog entries as `(id pattern, description)`.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("kodaira:I", "good reduction, one genus-1 component"),
        (
            "kodaira:I*",
            "multiplicity-2 centre with four reduced leaves",
        ),
        ("kodaira:In:<n>", "cycle of n reduced rational curves"),
        (
            "kodaira:In*:<n>",
            "chain of n+1 double curves with two leaves at each end",
        ),
        ("kodaira:II", "multiplicity-6 centre with tails 1, 2, 3"),
        ("kodaira:II*", "E8 configuration"),
        ("kodaira:III", "multiplicity-4 centre with tails 1, 1, 2"),
        ("kodaira:III*", "E7 configuration"),
        (
            "kodaira:IV",
            "multiplicity-3 centre with three reduced leaves",
        ),
        ("kodaira:IV*", "E6 configuration"),
        ("ogg:4", "genus-2 type 4"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        assert_eq!(
            "kodaira:IV".parse::<FiberTypeId>().unwrap(),
            FiberTypeId::Kodaira(KodairaType::IV)
        );
        assert_eq!(
            "kodaira:In*:3".parse::<FiberTypeId>().unwrap(),
            FiberTypeId::Kodaira(KodairaType::InStar(3))
        );
        assert_eq!("ogg:4".parse::<FiberTypeId>().unwrap(), FiberTypeId::Ogg(4));
        for bad in [
            "kodaira:V",
            "kodaira:In",
            "kodaira:In:0",
            "kodaira:IV:2",
            "tate:I",
            "ogg:x",
            "",
        ] {
            assert!(
                matches!(bad.parse::<FiberTypeId>(), Err(Error::UnknownType(_))),
                "{bad}"
            );
        }
        assert!(matches!(lookup_str("ogg:5"), Err(Error::UnknownType(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "kodaira:I",
            "kodaira:In:7",
            "kodaira:In*:2",
            "kodaira:II*",
            "ogg:4",
        ] {
            assert_eq!(s.parse::<FiberTypeId>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn lookup_examples() {
        let g = lookup_str("kodaira:IV").unwrap();
        let mut mults: Vec<u64> = g.vertices().iter().map(|v| v.mult).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 1, 3]);
        assert!(g.vertices().iter().all(|v| v.genus == 0));
        assert_eq!(g.edge_count(), 3);

        let g = lookup_str("ogg:4").unwrap();
        let mults: Vec<u64> = g.vertices().iter().map(|v| v.mult).collect();
        assert_eq!(mults, vec![1, 2, 3, 4, 2, 2, 1]);
        assert_eq!(g.edge_count(), 6);

        let g = lookup_str("kodaira:I").unwrap();
        assert_eq!(
            g.vertices(),
            &[Vertex {
                id: "e".into(),
                genus: 1,
                mult: 1
            }]
        );
        assert_eq!(g.edge_count(), 0);

        let g = lookup_str("kodaira:In:1").unwrap();
        assert_eq!(g.degree("v1"), 2);
        let g = lookup_str("kodaira:In*:2").unwrap();
        assert_eq!(g.vertices().len(), 7);
    }

    #[test]
    fn list_entries_resolve() {
        for (pattern, _) in list() {
            let id = pattern.replace("<n>", "2");
            assert!(lookup_str(&id).is_ok(), "{id}");
        }
    }
}
