//! Finite groups given by multiplication tables, the built-in group registry
//! and subgroup enumeration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite group by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CayleyDoc")]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Table rows as read from JSON: flat row-major or nested.
#[derive(Deserialize)]
#[serde(untagged)]
enum TableDoc {
    Flat(Vec<usize>),
    Nested(Vec<Vec<usize>>),
}

#[derive(Deserialize)]
struct CayleyDoc {
    order: usize,
    table: TableDoc,
    identity: Option<usize>,
    inverse: Option<Vec<usize>>,
}

impl TryFrom<CayleyDoc> for CayleyTable {
    type Error = Error;

    fn try_from(doc: CayleyDoc) -> Result<Self> {
        let table = match doc.table {
            TableDoc::Flat(t) => t,
            TableDoc::Nested(rows) => {
                if rows.iter().any(|r| r.len() != doc.order) {
                    return Err(Error::InvalidTable("nested table rows must have length `order`".into()));
                }
                rows.concat()
            }
        };
        if table.len() != doc.order * doc.order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                doc.order * doc.order
            )));
        }
        match (doc.identity, doc.inverse) {
            (Some(e), Some(inv)) => Self::new(doc.order, table, e, inv),
            (None, None) => Self::from_fn(doc.order, |x, y| table[x * doc.order + y]),
            _ => Err(Error::InvalidTable("give both `identity` and `inverse` or neither".into())),
        }
    }
}

impl CayleyTable {
    /// `table` is row-major: `table[x * order + y] = x·y`.
    pub fn new(order: usize, table: Vec<usize>, identity: usize, inverse: Vec<usize>) -> Result<Self> {
        let g = Self { order, table, identity, inverse };
        g.check()?;
        Ok(g)
    }

    /// Builds a table from a multiplication closure on `0..order`, deriving
    /// the identity and inverses.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        let table: Vec<usize> = (0..order * order).map(|i| mul(i / order, i % order)).collect();
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity".into()))?;
        let inverse = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| table[x * order + y] == identity)
                    .ok_or_else(|| Error::InvalidTable(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, table, identity, inverse)
    }

    fn check(&self) -> Result<()> {
        let n = self.order;
        let bad = |m: String| Err(Error::InvalidTable(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if self.table.len() != n * n {
            return bad(format!("table has {} entries, expected {}", self.table.len(), n * n));
        }
        if self.inverse.len() != n {
            return bad(format!("inverse has {} entries, expected {n}", self.inverse.len()));
        }
        if self.identity >= n || self.table.iter().chain(&self.inverse).any(|&x| x >= n) {
            return bad("index out of range".into());
        }
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return bad(format!("identity {} fails on {x}", self.identity));
            }
            let xi = self.inverse[x];
            if self.mul(x, xi) != self.identity || self.mul(xi, x) != self.identity {
                return bad(format!("inverse[{x}] = {xi} is not an inverse"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return bad(format!("not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Whether `h` is a subgroup (nonempty, closed under products and inverses).
    pub fn is_subgroup(&self, h: &BTreeSet<usize>) -> bool {
        !h.is_empty()
            && h.iter().all(|&x| x < self.order)
            && h.iter().all(|&x| h.contains(&self.inv(x)) && h.iter().all(|&y| h.contains(&self.mul(x, y))))
    }

    pub fn check_subgroup(&self, h: &BTreeSet<usize>) -> Result<()> {
        if self.is_subgroup(h) {
            Ok(())
        } else {
            Err(Error::NotSubgroup(format!("{h:?}")))
        }
    }

    pub fn is_normal(&self, h: &BTreeSet<usize>) -> bool {
        (0..self.order).all(|g| h.iter().all(|&x| h.contains(&self.mul(self.mul(g, x), self.inv(g)))))
    }

    /// Subgroup generated by a set of elements.
    pub fn closure(&self, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut h: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if h.insert(y) {
                    frontier.push(y);
                }
            }
        }
        h
    }

    /// All subgroups, sorted by order and then lexicographically.
    ///
    /// Every subgroup is reached from the trivial one by adjoining one
    /// element at a time, so closing the family under `H ↦ ⟨H, g⟩` is
    /// complete.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let trivial = BTreeSet::from([self.identity]);
        let mut queue = vec![trivial.clone()];
        found.insert(trivial);
        while let Some(h) = queue.pop() {
            for g in 0..self.order {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.insert(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    queue.push(k);
                }
            }
        }
        let mut all: Vec<_> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn direct_product(&self, other: &CayleyTable) -> CayleyTable {
        let m = other.order;
        Self::from_fn(self.order * m, |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
            .expect("product of groups is a group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_fn(n, |x, y| (x + y) % n)
    }

    /// Dihedral group of order `2n`: element `(r, s)` is `r^k s^f`, encoded as `2k + f`.
    pub fn dihedral(n: usize) -> Result<Self> {
        Self::from_fn(2 * n, |x, y| {
            let (k1, f1) = (x / 2, x % 2);
            let (k2, f2) = (y / 2, y % 2);
            let k = if f1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            2 * k + (f1 ^ f2)
        })
    }

    /// Symmetric group on `k` letters, elements in lexicographic permutation order.
    pub fn symmetric(k: usize) -> Result<Self> {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        Self::from_fn(perms.len(), |x, y| {
            // (xy)(i) = x(y(i))
            let p: Vec<usize> = (0..k).map(|i| perms[x][perms[y][i]]).collect();
            index(&p)
        })
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` encoded as `sign*4 + unit`.
    pub fn quaternion() -> Result<Self> {
        // unit products: (result unit, sign flip)
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        Self::from_fn(8, |x, y| {
            let (u, s) = T[x % 4][y % 4];
            ((x / 4) ^ (y / 4) ^ s) * 4 + u
        })
    }

    /// Built-in registry: `Z1`..`Z12`, `Z2xZ2`, `S3`, `D4`, `Q8`, `S4`.
    pub fn builtin(name: &str) -> Result<Self> {
        let upper = name.trim().to_ascii_uppercase();
        match upper.as_str() {
            "Z2XZ2" | "Z2×Z2" | "V4" | "K4" => Ok(Self::cyclic(2)?.direct_product(&Self::cyclic(2)?)),
            "S3" => Self::symmetric(3),
            "S4" => Self::symmetric(4),
            "D4" => Self::dihedral(4),
            "Q8" => Self::quaternion(),
            _ => {
                let n: usize = upper
                    .strip_prefix('Z')
                    .and_then(|s| s.parse().ok())
                    .filter(|n| (1..=12).contains(n))
                    .ok_or_else(|| Error::Parse(format!("unknown group `{name}`")))?;
                Self::cyclic(n)
            }
        }
    }

    pub const BUILTIN_NAMES: &'static [&'static str] =
        &["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z2xZ2", "S3", "D4", "Q8", "S4"];
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), &mut out);
    out
}
