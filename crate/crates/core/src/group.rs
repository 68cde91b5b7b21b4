//! Exact arithmetic in a finite group `A`.
//!
//! Every label in the crate lives in a [`Group`]. Elements are stored as
//! indices into a canonical enumeration: residue tuples in lexicographic
//! order for products of cyclic groups, table indices as given for explicit
//! multiplication tables. Nonabelian groups are supported; all products are
//! taken in the order they are written.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Description of a finite group, either as a product of cyclic groups or as
/// an explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    /// `Z/o_1 x ... x Z/o_k`; an empty list is the trivial group.
    CyclicProduct { orders: Vec<u32> },
    /// `table[a][b]` is the index of `a*b`.
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        identity: usize,
    },
}

/// An element of a [`Group`], identified by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A single failed group axiom together with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum GroupViolation {
    Closure { a: usize, b: usize, entry: usize },
    Associativity { a: usize, b: usize, c: usize },
    Identity { element: usize },
    Inverse { element: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::Closure { a, b, entry } => {
                write!(f, "closure: table[{a}][{b}] = {entry} is not an element")
            }
            GroupViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails for ({a},{b},{c})")
            }
            GroupViolation::Identity { element } => {
                write!(f, "identity is not neutral for element {element}")
            }
            GroupViolation::Inverse { element } => {
                write!(f, "no two-sided inverse for element {element}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group description: {0}")]
    Malformed(String),
    #[error("not a group: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotAGroup(Vec<GroupViolation>),
    #[error("element index {index} does not belong to a group of order {order}")]
    ForeignElement { index: usize, order: usize },
    #[error("residue tuple {residues:?} does not fit orders {orders:?}")]
    BadResidues { residues: Vec<u32>, orders: Vec<u32> },
}

/// Checks the group axioms exhaustively.
///
/// Returns `Err` only for structural problems (ragged or empty tables,
/// out-of-range identity, zero cyclic orders). The returned list is empty iff
/// the description is a group.
pub fn validate_group(spec: &GroupSpec) -> Result<Vec<GroupViolation>, GroupError> {
    match spec {
        GroupSpec::CyclicProduct { orders } => {
            if let Some(pos) = orders.iter().position(|&o| o == 0) {
                return Err(GroupError::Malformed(format!(
                    "cyclic factor {pos} has order 0"
                )));
            }
            Ok(Vec::new())
        }
        GroupSpec::Table { table, identity } => {
            let n = table.len();
            if n == 0 {
                return Err(GroupError::Malformed("empty multiplication table".into()));
            }
            if let Some(row) = table.iter().position(|r| r.len() != n) {
                return Err(GroupError::Malformed(format!(
                    "row {row} has length {} but the table has {n} rows",
                    table[row].len()
                )));
            }
            if *identity >= n {
                return Err(GroupError::Malformed(format!(
                    "identity index {identity} out of range for {n} elements"
                )));
            }
            let mut out = Vec::new();
            for (a, row) in table.iter().enumerate() {
                for (b, &entry) in row.iter().enumerate() {
                    if entry >= n {
                        out.push(GroupViolation::Closure { a, b, entry });
                    }
                }
            }
            if !out.is_empty() {
                return Ok(out);
            }
            let e = *identity;
            for a in 0..n {
                if table[e][a] != a || table[a][e] != a {
                    out.push(GroupViolation::Identity { element: a });
                }
            }
            for a in 0..n {
                if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                    out.push(GroupViolation::Inverse { element: a });
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            out.push(GroupViolation::Associativity { a, b, c });
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

/// A validated finite group with precomputed multiplication and inversion.
#[derive(Clone, Debug)]
pub struct Group {
    spec: GroupSpec,
    order: usize,
    identity: Elem,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Group {}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Group, GroupError> {
        let violations = validate_group(&spec)?;
        if !violations.is_empty() {
            return Err(GroupError::NotAGroup(violations));
        }
        let (order, identity, table) = match &spec {
            GroupSpec::CyclicProduct { orders } => {
                let order: usize = orders.iter().map(|&o| o as usize).product();
                let mut table = vec![0usize; order * order];
                for a in 0..order {
                    let ra = decode(orders, a);
                    for b in 0..order {
                        let rb = decode(orders, b);
                        let sum: Vec<u32> = ra
                            .iter()
                            .zip(&rb)
                            .zip(orders)
                            .map(|((x, y), o)| (x + y) % o)
                            .collect();
                        table[a * order + b] = encode(orders, &sum);
                    }
                }
                (order, 0, table)
            }
            GroupSpec::Table { table, identity } => {
                let n = table.len();
                (n, *identity, table.iter().flatten().copied().collect())
            }
        };
        let mul: Vec<Elem> = table.iter().map(|&i| Elem(i as u32)).collect();
        let inv = (0..order)
            .map(|a| {
                let b = (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("validated group has inverses");
                Elem(b as u32)
            })
            .collect();
        Ok(Group {
            spec,
            order,
            identity: Elem(identity as u32),
            mul,
            inv,
        })
    }

    pub fn cyclic(n: u32) -> Group {
        Group::new(GroupSpec::CyclicProduct { orders: vec![n] }).expect("cyclic order >= 1")
    }

    pub fn trivial() -> Group {
        Group::cyclic(1)
    }

    pub fn cyclic_product(orders: &[u32]) -> Result<Group, GroupError> {
        Group::new(GroupSpec::CyclicProduct {
            orders: orders.to_vec(),
        })
    }

    /// The symmetric group on three letters, given by its table.
    ///
    /// Permutations of `{0,1,2}` are listed in lexicographic order of their
    /// one-line notation and multiplied as functions, `(p*q)(i) = p(q(i))`.
    pub fn symmetric3() -> Group {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq = [p[q[0]], p[q[1]], p[q[2]]];
                        perms.iter().position(|r| *r == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        Group::new(GroupSpec::Table { table, identity: 0 }).expect("S3 table is a group")
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as u32).map(Elem)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.index() < self.order
    }

    pub fn elem(&self, index: usize) -> Result<Elem, GroupError> {
        if index < self.order {
            Ok(Elem(index as u32))
        } else {
            Err(GroupError::ForeignElement {
                index,
                order: self.order,
            })
        }
    }

    /// Product `a*b`. Both elements must belong to this group.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a.index() * self.order + b.index()]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a.index()]
    }

    pub fn try_mul(&self, a: Elem, b: Elem) -> Result<Elem, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_inv(&self, a: Elem) -> Result<Elem, GroupError> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Left-to-right product of a sequence.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    fn check(&self, a: Elem) -> Result<(), GroupError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::ForeignElement {
                index: a.index(),
                order: self.order,
            })
        }
    }

    /// Element from a residue tuple (cyclic-product groups only).
    pub fn from_residues(&self, residues: &[u32]) -> Result<Elem, GroupError> {
        match &self.spec {
            GroupSpec::CyclicProduct { orders }
                if orders.len() == residues.len()
                    && residues.iter().zip(orders).all(|(r, o)| r < o) =>
            {
                Ok(Elem(encode(orders, residues) as u32))
            }
            GroupSpec::CyclicProduct { orders } => Err(GroupError::BadResidues {
                residues: residues.to_vec(),
                orders: orders.clone(),
            }),
            GroupSpec::Table { .. } => Err(GroupError::Malformed(
                "table groups use element indices, not residues".into(),
            )),
        }
    }

    /// Residue tuple of an element of a cyclic-product group.
    pub fn residues(&self, a: Elem) -> Option<Vec<u32>> {
        match &self.spec {
            GroupSpec::CyclicProduct { orders } => Some(decode(orders, a.index())),
            GroupSpec::Table { .. } => None,
        }
    }

    /// The same group written as an explicit table over canonical indices.
    pub fn to_table_spec(&self) -> GroupSpec {
        let n = self.order;
        GroupSpec::Table {
            table: (0..n)
                .map(|a| (0..n).map(|b| self.mul[a * n + b].index()).collect())
                .collect(),
            identity: self.identity.index(),
        }
    }

    /// Human-readable element: residue tuple or table index.
    pub fn format(&self, a: Elem) -> String {
        match self.residues(a) {
            Some(r) if r.len() == 1 => r[0].to_string(),
            Some(r) => format!(
                "({})",
                r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            None => a.index().to_string(),
        }
    }

    /// Short name such as `C2`, `C2xC2`, `C1` or `T6` for a table group.
    pub fn name(&self) -> String {
        match &self.spec {
            GroupSpec::CyclicProduct { orders } if orders.is_empty() => "C1".into(),
            GroupSpec::CyclicProduct { orders } => orders
                .iter()
                .map(|o| format!("C{o}"))
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::Table { table, .. } => format!("T{}", table.len()),
        }
    }
}

// Lexicographic: the first factor is the most significant digit.
fn encode(orders: &[u32], residues: &[u32]) -> usize {
    residues
        .iter()
        .zip(orders)
        .fold(0usize, |acc, (&r, &o)| acc * o as usize + r as usize)
}

fn decode(orders: &[u32], mut index: usize) -> Vec<u32> {
    let mut out = vec![0u32; orders.len()];
    for (slot, &o) in out.iter_mut().zip(orders).rev() {
        *slot = (index % o as usize) as u32;
        index /= o as usize;
    }
    out
}
