//! Finite groups given by explicit Cayley tables.
//!
//! A [`FiniteGroup`] is validated on construction (Latin square, identity,
//! associativity) and is immutable afterwards. Conjugacy classes are computed
//! by orbit enumeration and ordered by `(element order, class size, smallest
//! member index)`, which fixes the column order of every character table in
//! the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Associativity is checked exhaustively up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// A finite group stored as a full multiplication table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// On-disk form of a group: `{"name": .., "labels": [..], "table": [[..]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Builds a group from labels and a multiplication table, `table[a][b] = a*b`.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::MalformedTable(format!(
                "{} labels for a {n}x{n} table",
                labels.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedTable(format!(
                    "row {i} contains out-of-range entry {bad}"
                )));
            }
        }
        let mut seen_labels = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(prev) = seen_labels.insert(l.as_str(), i) {
                return Err(Error::MalformedTable(format!(
                    "label `{l}` used by elements {prev} and {i}"
                )));
            }
        }

        for (i, row) in table.iter().enumerate() {
            if let Some(e) = first_repeat(row.iter().copied(), n) {
                return Err(Error::NotLatinSquare {
                    axis: "row",
                    index: i,
                    element: e,
                });
            }
        }
        for j in 0..n {
            if let Some(e) = first_repeat(table.iter().map(|row| row[j]), n) {
                return Err(Error::NotLatinSquare {
                    axis: "column",
                    index: j,
                    element: e,
                });
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(Error::NoIdentity)?;

        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }

        let inverses = (0..n)
            .map(|g| {
                table[g]
                    .iter()
                    .position(|&x| x == identity)
                    .expect("Latin square rows contain the identity")
            })
            .collect();

        Ok(Self {
            name: name.into(),
            labels,
            table,
            identity,
            inverses,
        })
    }

    pub fn from_file_data(file: GroupFile) -> Result<Self> {
        Self::from_table(file.name, file.labels, file.table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: GroupFile = serde_json::from_str(&text)?;
        Self::from_file_data(file)
    }

    pub fn to_file_data(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            labels: self.labels.clone(),
            table: self.table.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// `h * g * h^-1`.
    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inverse(by))
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = g;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.identity, |acc, g| self.mul(acc, g))
    }

    /// Least `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order())
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClassPartition {
        ConjugacyClassPartition::of(self)
    }

    /// Direct product, elements labelled `(a,b)`.
    pub fn direct_product(&self, other: &FiniteGroup, name: impl Into<String>) -> Self {
        let (n, m) = (self.order(), other.order());
        let idx = |a: usize, b: usize| a * m + b;
        let mut labels = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                labels.push(format!("({},{})", self.label(a), other.label(b)));
            }
        }
        let mut table = vec![vec![0; n * m]; n * m];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        table[idx(a1, b1)][idx(a2, b2)] =
                            idx(self.mul(a1, a2), other.mul(b1, b2));
                    }
                }
            }
        }
        Self::from_table(name, labels, table).expect("direct product of groups is a group")
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

fn first_repeat(items: impl Iterator<Item = usize>, n: usize) -> Option<usize> {
    let mut seen = vec![false; n];
    let mut items = items;
    items.find(|&x| std::mem::replace(&mut seen[x], true))
}

/// Conjugacy classes of a group in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    orders: Vec<u64>,
}

impl ConjugacyClassPartition {
    pub fn of(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| group.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                assigned[x] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (group.element_order(c[0]), c.len(), c[0]));

        let mut class_of = vec![0; n];
        for (j, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = j;
            }
        }
        let orders = classes.iter().map(|c| group.element_order(c[0])).collect();
        Self {
            classes,
            class_of,
            orders,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, j: usize) -> &[usize] {
        &self.classes[j]
    }

    /// Smallest element index in class `j`.
    pub fn representative(&self, j: usize) -> usize {
        self.classes[j][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn size(&self, j: usize) -> usize {
        self.classes[j].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Common element order of class `j`.
    pub fn order(&self, j: usize) -> u64 {
        self.orders[j]
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Class of `g^{-1}` for `g` in class `j`.
    pub fn inverse_class(&self, group: &FiniteGroup, j: usize) -> usize {
        self.class_of(group.inverse(self.representative(j)))
    }

    /// Image of every class under `g -> g^k`.
    pub fn power_map(&self, group: &FiniteGroup, k: u64) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of(group.pow(c[0], k)))
            .collect()
    }
}

/// Names of the bundled groups, in listing order: every group of order at most 8.
pub const BUNDLED_GROUPS: [&str; 14] = [
    "trivial", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2",
    "D4", "Q8",
];

/// Looks up a bundled group by (case-insensitive) name.
pub fn bundled(name: &str) -> Result<FiniteGroup> {
    let key = name.to_ascii_lowercase();
    let group = match key.as_str() {
        "trivial" | "z1" | "1" => cyclic(1).renamed("trivial"),
        "z2" => cyclic(2),
        "z3" => cyclic(3),
        "z4" => cyclic(4),
        "z5" => cyclic(5),
        "z6" => cyclic(6),
        "z7" => cyclic(7),
        "z8" => cyclic(8),
        "z2xz2" | "v4" | "klein" => abelian(&[2, 2]),
        "z2xz4" => abelian(&[2, 4]),
        "z2xz2xz2" => abelian(&[2, 2, 2]),
        "s3" | "d3" => dihedral(3).renamed("S3"),
        "d4" => dihedral(4),
        "q8" => quaternion(),
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    Ok(group)
}

/// All bundled groups in listing order.
pub fn all_bundled() -> Vec<FiniteGroup> {
    BUNDLED_GROUPS
        .iter()
        .map(|n| bundled(n).expect("bundled names resolve"))
        .collect()
}

impl FiniteGroup {
    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Cyclic group `Z_n` on `0, 1, ..., n-1` under addition.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let labels = (0..n).map(|k| k.to_string()).collect();
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGroup::from_table(format!("Z{n}"), labels, table).expect("cyclic group")
}

/// Product of cyclic groups `Z_n1 x Z_n2 x ..`, elements labelled `(a,b,..)`
/// in lexicographic index order.
pub fn abelian(factors: &[usize]) -> FiniteGroup {
    assert!(!factors.is_empty() && factors.iter().all(|&n| n >= 1));
    let n: usize = factors.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; factors.len()];
        for (slot, &m) in d.iter_mut().zip(factors).rev() {
            *slot = x % m;
            x /= m;
        }
        d
    };
    let index = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &m)| acc * m + x);
    let labels = (0..n)
        .map(|x| {
            let d: Vec<String> = digits(x).iter().map(usize::to_string).collect();
            format!("({})", d.join(","))
        })
        .collect();
    let table = (0..n)
        .map(|a| {
            let da = digits(a);
            (0..n)
                .map(|b| {
                    let sum: Vec<usize> = digits(b)
                        .iter()
                        .zip(&da)
                        .zip(factors)
                        .map(|((x, y), m)| (x + y) % m)
                        .collect();
                    index(&sum)
                })
                .collect()
        })
        .collect();
    let name = factors
        .iter()
        .map(|m| format!("Z{m}"))
        .collect::<Vec<_>>()
        .join("x");
    FiniteGroup::from_table(name, labels, table).expect("abelian group")
}

/// Dihedral group of order `2n`; element `r^a s^b` has index `a + n*b`.
///
/// Labels follow `1, r, r2, .., s, rs, r2s, ..`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let label = |a: usize, b: usize| -> String {
        let rot = match a {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r{a}"),
        };
        match (rot.is_empty(), b) {
            (true, 0) => "1".to_string(),
            (_, 0) => rot,
            (_, _) => format!("{rot}s"),
        }
    };
    let idx = |a: usize, b: usize| a + n * b;
    let mut labels = Vec::with_capacity(2 * n);
    for b in 0..2 {
        for a in 0..n {
            labels.push(label(a, b));
        }
    }
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for b1 in 0..2 {
        for a1 in 0..n {
            for b2 in 0..2 {
                for a2 in 0..n {
                    // r^a1 s^b1 r^a2 s^b2 = r^(a1 + (-1)^b1 a2) s^(b1+b2)
                    let a = if b1 == 0 { a1 + a2 } else { a1 + n - a2 } % n;
                    table[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2);
                }
            }
        }
    }
    FiniteGroup::from_table(format!("D{n}"), labels, table).expect("dihedral group")
}

/// Quaternion group `{1, -1, i, -i, j, -j, k, -k}` in that index order.
pub fn quaternion() -> FiniteGroup {
    // Units 1,i,j,k as (unit, sign); index = 2*unit + (sign negative).
    const UNIT_MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = vec![vec![0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = UNIT_MUL[a / 2][b / 2];
            let neg = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
            table[a][b] = 2 * u + usize::from(neg);
        }
    }
    FiniteGroup::from_table("Q8", labels, table).expect("quaternion group")
}

/// Resolves a bundled name, or failing that reads a group file.
pub fn resolve(name_or_path: &str) -> Result<FiniteGroup> {
    match bundled(name_or_path) {
        Ok(g) => Ok(g),
        Err(Error::UnknownGroup(_)) if Path::new(name_or_path).exists() => {
            FiniteGroup::load(name_or_path)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels_of(g: &FiniteGroup, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| g.label(i).to_string()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table("t", vec!["e".into()], vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().sizes(), vec![1]);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn repeated_row_entry_is_rejected() {
        let err = FiniteGroup::from_table(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![1, 0]],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::NotLatinSquare {
                axis: "row",
                index: 0,
                element: 0
            }
        ));
    }

    #[test]
    fn latin_square_without_identity() {
        // x*y = -x-y mod 3 is a Latin square with no identity.
        let table = (0..3)
            .map(|a| (0..3).map(|b| (6 - a - b) % 3).collect())
            .collect();
        let err = FiniteGroup::from_table("q", vec!["0".into(), "1".into(), "2".into()], table)
            .unwrap_err();
        assert!(matches!(err, Error::NoIdentity));
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // The smallest non-associative loop, order 5.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        let err = FiniteGroup::from_table("loop", labels, table).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn d4_classes_and_orders() {
        let g = bundled("D4").unwrap();
        assert_eq!(
            g.labels(),
            ["1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
        );
        let p = g.conjugacy_classes();
        assert_eq!(p.sizes(), vec![1, 1, 2, 2, 2]);
        let classes: Vec<_> = p.classes().iter().map(|c| labels_of(&g, c)).collect();
        assert_eq!(
            classes,
            vec![
                vec!["1"],
                vec!["r2"],
                vec!["s", "r2s"],
                vec!["rs", "r3s"],
                vec!["r", "r3"]
            ]
        );
        assert_eq!(g.element_order(g.element("r").unwrap()), 4);
        // squaring {r, r3} lands in {r2}
        let r_class = p.class_of(g.element("r").unwrap());
        assert_eq!(p.power_map(&g, 2)[r_class], p.class_of(g.element("r2").unwrap()));
    }

    #[test]
    fn q8_classes_and_power_map() {
        let g = bundled("Q8").unwrap();
        let p = g.conjugacy_classes();
        assert_eq!(p.sizes(), vec![1, 1, 2, 2, 2]);
        let classes: Vec<_> = p.classes().iter().map(|c| labels_of(&g, c)).collect();
        assert_eq!(
            classes,
            vec![
                vec!["1"],
                vec!["-1"],
                vec!["i", "-i"],
                vec!["j", "-j"],
                vec!["k", "-k"]
            ]
        );
        let minus_one = g.element("-1").unwrap();
        assert_eq!(g.element_order(minus_one), 2);
        let i_class = p.class_of(g.element("i").unwrap());
        assert_eq!(p.power_map(&g, 2)[i_class], p.class_of(minus_one));
        // ij = k
        let (i, j, k) = (
            g.element("i").unwrap(),
            g.element("j").unwrap(),
            g.element("k").unwrap(),
        );
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), g.element("-k").unwrap());
    }

    #[test]
    fn power_map_with_k_one_is_identity() {
        for g in all_bundled() {
            let p = g.conjugacy_classes();
            assert_eq!(p.power_map(&g, 1), (0..p.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn bundled_orders_cover_everything_up_to_eight() {
        let mut counts = BTreeMap::new();
        for g in all_bundled() {
            *counts.entry(g.order()).or_insert(0) += 1;
        }
        // number of groups of order n, n = 1..8
        assert_eq!(
            counts.into_iter().collect::<Vec<_>>(),
            vec![(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2), (7, 1), (8, 5)]
        );
    }

    #[test]
    fn classes_are_conjugation_invariant_and_canonical() {
        for g in all_bundled() {
            let p = g.conjugacy_classes();
            assert_eq!(p.sizes().iter().sum::<usize>(), g.order());
            assert_eq!(p.class(0), &[g.identity()]);
            for a in 0..g.order() {
                for h in 0..g.order() {
                    assert_eq!(p.class_of(g.conjugate(h, a)), p.class_of(h));
                }
            }
            for (j, c) in p.classes().iter().enumerate() {
                assert!(c.iter().all(|&x| g.element_order(x) == p.order(j)));
            }
            assert_eq!(p, ConjugacyClassPartition::of(&g.clone()));
        }
    }

    #[test]
    fn group_file_round_trip() {
        let g = bundled("S3").unwrap();
        let json = serde_json::to_string(&g.to_file_data()).unwrap();
        let back = FiniteGroup::from_file_data(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(g, back);
    }
}
