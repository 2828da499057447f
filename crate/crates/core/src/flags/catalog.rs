//! The inequality catalog: named flag atoms and inequalities over them,
//! loaded from `catalog/inequalities.txt` and evaluated on host graphs.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::graph::Graph;
use crate::Rational;

use super::expr::{self, Expr};
use super::{labeled_density, valid_anchors, Flag, FlagError};

pub const CATALOG_TEXT: &str = include_str!("../../catalog/inequalities.txt");

pub type Params = BTreeMap<String, Rational>;

const PARAMS: [&str; 3] = ["eps", "alpha", "beta"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Le,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Inequality {
    pub id: String,
    pub statement: String,
    pub description: String,
    lhs: Expr,
    rhs: Expr,
    cmp: Cmp,
    atoms: Vec<String>,
    params: Vec<String>,
    /// Any atom of the shared type; `None` when all atoms are unlabeled.
    type_of: Option<Flag>,
}

impl Inequality {
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Number of labeled vertices per anchor.
    pub fn labels(&self) -> usize {
        self.type_of.as_ref().map_or(0, Flag::k)
    }

    fn residual(&self, env: &BTreeMap<String, Rational>) -> Option<Rational> {
        let (l, r) = (self.lhs.eval(env)?, self.rhs.eval(env)?);
        Some(match self.cmp {
            Cmp::Le => r - l,
            Cmp::Ge => l - r,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    atoms: BTreeMap<String, Flag>,
    entries: Vec<Inequality>,
}

/// Labeled type as (number of labels, adjacency among labels in label order).
fn type_key(f: &Flag) -> (usize, Vec<bool>) {
    let l = f.labels();
    let adj = (0..l.len())
        .tuple_combinations()
        .map(|(i, j)| f.h().has_edge(l[i], l[j]))
        .collect();
    (l.len(), adj)
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, FlagError> {
        let mut atoms = BTreeMap::new();
        let mut entries: Vec<Inequality> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |why: &str| FlagError::Parse(format!("line {}: {why}", no + 1));
            if let Some(rest) = line.strip_prefix("atom ") {
                let (name, code) = rest
                    .split_whitespace()
                    .collect_tuple()
                    .ok_or_else(|| bad("expected `atom NAME CODE`"))?;
                if PARAMS.contains(&name) || atoms.contains_key(name) {
                    return Err(bad(&format!("duplicate name `{name}`")));
                }
                atoms.insert(name.to_string(), Flag::parse(code)?);
            } else if let Some(rest) = line.strip_prefix("ineq ") {
                let (id, statement, description) =
                    rest.split('|')
                        .map(str::trim)
                        .collect_tuple()
                        .ok_or_else(|| bad("expected `ineq ID | STATEMENT | DESCRIPTION`"))?;
                if entries.iter().any(|e| e.id == id) {
                    return Err(bad(&format!("duplicate id `{id}`")));
                }
                entries.push(
                    Self::inequality(&atoms, id, statement, description).map_err(|e| match e {
                        FlagError::Parse(m) => bad(&m),
                        other => other,
                    })?,
                );
            } else {
                return Err(bad("expected `atom` or `ineq`"));
            }
        }
        Ok(Self { atoms, entries })
    }

    fn inequality(
        atoms: &BTreeMap<String, Flag>,
        id: &str,
        statement: &str,
        description: &str,
    ) -> Result<Inequality, FlagError> {
        let (cmp, (l, r)) = if let Some(p) = statement.split_once("<=") {
            (Cmp::Le, p)
        } else if let Some(p) = statement.split_once(">=") {
            (Cmp::Ge, p)
        } else {
            return Err(FlagError::Parse(format!("`{id}` has no `<=` or `>=`")));
        };
        let (lhs, rhs) = (expr::parse(l)?, expr::parse(r)?);
        let mut names = Vec::new();
        lhs.names(&mut names);
        rhs.names(&mut names);
        names.sort();
        names.dedup();
        let (params, used): (Vec<String>, Vec<String>) = names
            .into_iter()
            .partition(|n| PARAMS.contains(&n.as_str()));
        let mut type_of: Option<Flag> = None;
        for name in &used {
            let flag = atoms
                .get(name)
                .ok_or_else(|| FlagError::Parse(format!("`{id}` uses unknown atom `{name}`")))?;
            if flag.k() == 0 {
                continue;
            }
            match &type_of {
                Some(t) if type_key(t) != type_key(flag) => {
                    return Err(FlagError::Parse(format!(
                        "`{id}` mixes atoms of different types"
                    )))
                }
                Some(_) => {}
                None => type_of = Some(flag.clone()),
            }
        }
        Ok(Inequality {
            id: id.to_string(),
            statement: statement.to_string(),
            description: description.to_string(),
            lhs,
            rhs,
            cmp,
            atoms: used,
            params,
            type_of,
        })
    }

    pub fn atom(&self, name: &str) -> Option<&Flag> {
        self.atoms.get(name)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&str, &Flag)> {
        self.atoms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn entries(&self) -> &[Inequality] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&Inequality, FlagError> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| FlagError::UnknownInequality(id.to_string()))
    }

    /// Evaluates inequality `id` on `g` at every anchor of its type.
    pub fn residual(
        &self,
        g: &Graph,
        id: &str,
        params: &Params,
    ) -> Result<ResidualReport, FlagError> {
        let ineq = self.get(id)?;
        let mut env: BTreeMap<String, Rational> = BTreeMap::new();
        env.insert("eps".into(), Rational::new(1, 10_000));
        for (k, v) in params {
            env.insert(k.clone(), *v);
        }
        if let Some(p) = ineq.params.iter().find(|p| !env.contains_key(*p)) {
            return Err(FlagError::MissingParameter(p.clone()));
        }
        let anchors = match &ineq.type_of {
            Some(t) => valid_anchors(t, g),
            None => vec![super::Anchor::new(Vec::new())],
        };
        let mut values = Vec::with_capacity(anchors.len());
        let mut skipped = 0;
        for a in &anchors {
            for name in &ineq.atoms {
                let flag = &self.atoms[name];
                let d = if flag.k() == 0 {
                    super::density(flag.h(), g)?
                } else {
                    labeled_density(flag, g, a)?
                };
                env.insert(name.clone(), d);
            }
            match ineq.residual(&env) {
                Some(r) => values.push(r),
                None => skipped += 1,
            }
        }
        let used = values.len();
        let min = values.iter().min().copied();
        let mean = (used > 0)
            .then(|| values.iter().sum::<Rational>() / Rational::from_integer(used as i128));
        Ok(ResidualReport {
            id: id.to_string(),
            mean,
            min,
            anchors: used,
            skipped,
        })
    }
}

/// Residual of one inequality on one host graph. `mean` averages the
/// per-anchor residuals; anchors where a denominator vanishes are skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub id: String,
    pub mean: Option<Rational>,
    pub min: Option<Rational>,
    pub anchors: usize,
    pub skipped: usize,
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::parse(CATALOG_TEXT).expect("bundled catalog parses"))
}

/// SHA-256 of the bundled catalog text, hex encoded.
pub fn catalog_hash() -> String {
    hex::encode(Sha256::digest(CATALOG_TEXT.as_bytes()))
}

pub fn inequality_residual(
    g: &Graph,
    id: &str,
    params: &Params,
) -> Result<ResidualReport, FlagError> {
    catalog().residual(g, id, params)
}
