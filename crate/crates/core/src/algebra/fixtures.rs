//! Built-in presentations of the algebras the test corpus revolves around.

use std::fmt;
use std::str::FromStr;

use super::presentation::{QuiverPresentation, Relation, Term};
use crate::error::{Error, Result};
use crate::linalg::q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureTag {
    /// Linear quiver `1 <- 2 <- ... <- n+1` with every length-2 path zero.
    A(usize),
    /// Linear quiver on `2n+1` vertices, length-2 paths zero except `b_n b_{n+1}`.
    E410(usize),
    /// Commutative square with two tails.
    E65,
    /// Two-cycle `1 <-> 2` with one zero relation.
    E66,
    /// Linear `A_5` with the single relation of length 4.
    Rem,
}

impl FixtureTag {
    pub const ALL_NAMES: &'static [&'static str] =
        &["A<n>", "E410-<n>", "E64", "E65", "E66", "REM"];

    /// Representative tags, used by `fixtures` listings and corpus tests.
    pub fn corpus() -> Vec<FixtureTag> {
        vec![
            FixtureTag::A(2),
            FixtureTag::A(3),
            FixtureTag::A(4),
            FixtureTag::E410(2),
            FixtureTag::E410(3),
            FixtureTag::E65,
            FixtureTag::E66,
            FixtureTag::Rem,
        ]
    }
}

impl fmt::Display for FixtureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureTag::A(n) => write!(f, "A{n}"),
            FixtureTag::E410(n) => write!(f, "E410-{n}"),
            FixtureTag::E65 => write!(f, "E65"),
            FixtureTag::E66 => write!(f, "E66"),
            FixtureTag::Rem => write!(f, "REM"),
        }
    }
}

impl FromStr for FixtureTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownTag(s.to_string());
        let param = |digits: &str| -> Result<usize> {
            let n: usize = digits.parse().map_err(|_| unknown())?;
            if n < 2 {
                Err(unknown())
            } else {
                Ok(n)
            }
        };
        match s {
            "E64" => Ok(FixtureTag::E410(2)),
            "E65" => Ok(FixtureTag::E65),
            "E66" => Ok(FixtureTag::E66),
            "REM" => Ok(FixtureTag::Rem),
            _ => {
                if let Some(rest) = s.strip_prefix("E410-") {
                    Ok(FixtureTag::E410(param(rest)?))
                } else if let Some(rest) = s.strip_prefix('A') {
                    Ok(FixtureTag::A(param(rest)?))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

fn linear(vertices: usize, prefix: &str) -> QuiverPresentation {
    (1..vertices).fold(QuiverPresentation::new(vertices), |p, i| {
        p.with_arrow(&format!("{prefix}{i}"), i + 1, i)
    })
}

fn consecutive(prefix: &str, i: usize) -> Relation {
    Relation::monomial(&[format!("{prefix}{i}"), format!("{prefix}{}", i + 1)])
}

/// The presentation for `tag`, with the arrow names used in the literature.
pub fn named_fixture(tag: FixtureTag) -> Result<QuiverPresentation> {
    match tag {
        FixtureTag::A(n) | FixtureTag::E410(n) if n < 2 => Err(Error::UnknownTag(tag.to_string())),
        FixtureTag::A(n) => Ok((1..n).fold(linear(n + 1, "b"), |p, i| {
            p.with_relation(consecutive("b", i))
        })),
        FixtureTag::E410(n) => Ok((1..2 * n)
            .filter(|&i| i != n)
            .fold(linear(2 * n + 1, "b"), |p, i| {
                p.with_relation(consecutive("b", i))
            })),
        FixtureTag::E65 => Ok(QuiverPresentation::new(6)
            .with_arrow("alpha", 6, 4)
            .with_arrow("gamma", 6, 5)
            .with_arrow("beta", 4, 3)
            .with_arrow("delta", 5, 3)
            .with_arrow("lambda", 3, 1)
            .with_arrow("mu", 3, 2)
            .with_relation(Relation {
                terms: vec![
                    Term {
                        coefficient: q(1),
                        path: vec!["beta".into(), "alpha".into()],
                    },
                    Term {
                        coefficient: q(-1),
                        path: vec!["delta".into(), "gamma".into()],
                    },
                ],
            })
            .with_relation(Relation::monomial(&["mu", "delta"]))
            .with_relation(Relation::monomial(&["lambda", "beta"]))),
        FixtureTag::E66 => Ok(QuiverPresentation::new(2)
            .with_arrow("alpha", 2, 1)
            .with_arrow("beta", 1, 2)
            .with_relation(Relation::monomial(&["beta", "alpha"]))),
        FixtureTag::Rem => Ok(linear(5, "a").with_relation(Relation::monomial(&[
            "a1", "a2", "a3", "a4",
        ]))),
    }
}
