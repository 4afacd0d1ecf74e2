//! Telling groups apart by their r-characters.
//!
//! Two groups with the same character table can still differ in their
//! r-characters for some `r >= 2`. The comparison here is element-level: a
//! class matching identifies the two character tables (columns and rows), and
//! an element bijection refining it must carry every `chi_i^(r)` of the first
//! group onto the matched `chi'^(r)` of the second for all `r <= width`.
//! Comparing only the multisets of values is not enough, since D4 and Q8 have
//! equal multisets at width 2.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::frobenius::{self, RCharacterValues};

/// Caps for [`equivalent_up_to_width_with`].
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_order: usize,
    pub max_width: usize,
    /// Bound on `prod_j |C_j|!`, the element bijections per class matching.
    pub max_assignments: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_order: 16,
            max_width: 3,
            max_assignments: 1_000_000,
        }
    }
}

/// A bijection between the classes of two groups identifying their tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMatching {
    /// `classes[j]` is the class of the second group matched with class `j`.
    pub classes: Vec<usize>,
    /// `rows[i]` is the character of the second group matched with `chi_i`.
    pub rows: Vec<usize>,
    pub preserves_orders: bool,
    pub preserves_power_maps: bool,
}

/// A tuple on which a candidate bijection changes some r-character.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationWitness {
    pub width: usize,
    pub tuple: Vec<usize>,
    pub image: Vec<usize>,
    /// First character (0-based, first group) whose value changes.
    pub character: usize,
    /// Its partner in the second group.
    pub matched_character: usize,
    /// `chi_i^(r)(tuple)` for every character of the first group.
    #[serde(serialize_with = "serialize_values")]
    pub values: Vec<Cyclotomic>,
    /// `chi'_{rows[i]}^(r)(image)`, in the first group's character order.
    #[serde(serialize_with = "serialize_values")]
    pub image_values: Vec<Cyclotomic>,
    pub matching: ClassMatching,
}

fn serialize_values<S: serde::Serializer>(v: &[Cyclotomic], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Cyclotomic::to_json))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    /// No class matching identifies the two character tables.
    CharacterTables,
    /// Every candidate bijection fails; this is the first failure found.
    Tuple(SeparationWitness),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Some bijection preserves all r-characters up to the width. This is a
    /// bounded-width statement, not an isomorphism.
    Equivalent {
        matching: ClassMatching,
        /// `bijection[g]` is the image of element `g`.
        bijection: Vec<usize>,
    },
    Separated(Separation),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn witness(&self) -> Option<&SeparationWitness> {
        match self {
            Verdict::Separated(Separation::Tuple(w)) => Some(w),
            _ => None,
        }
    }
}

/// All class bijections that match class sizes and carry the character table
/// of `g` onto that of `h` after permuting rows. They are ordered
/// lexicographically by the induced character permutation and then by the
/// class permutation, so a matching that keeps the character order comes
/// first when one exists.
///
/// Element orders and power maps are reported per matching but not required:
/// D4 and Q8 share a table although only Q8 has elements of order 4 outside
/// its cyclic subgroup.
pub fn compatible_class_matchings(g: &CharacterTable, h: &CharacterTable) -> Vec<ClassMatching> {
    let t = g.classes().len();
    if t != h.classes().len() || g.group().order() != h.group().order() || g.len() != h.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut classes = Vec::with_capacity(t);
    let mut used = vec![false; t];
    let candidates = vec![(0..t).collect::<Vec<usize>>(); t];
    search_classes(g, h, &mut classes, &mut used, candidates, &mut out);
    out.sort_by(|a, b| (&a.rows, &a.classes).cmp(&(&b.rows, &b.classes)));
    out
}

fn search_classes(
    g: &CharacterTable,
    h: &CharacterTable,
    classes: &mut Vec<usize>,
    used: &mut [bool],
    rows: Vec<Vec<usize>>,
    out: &mut Vec<ClassMatching>,
) {
    let t = used.len();
    let j = classes.len();
    if j == t {
        if let Some(perm) = row_bijection(&rows) {
            out.push(finish_matching(g, h, classes.clone(), perm));
        }
        return;
    }
    for k in 0..t {
        if used[k] || g.classes().size(j) != h.classes().size(k) {
            continue;
        }
        // each row of g keeps only the rows of h that agree on column j -> k
        let narrowed: Vec<Vec<usize>> = rows
            .iter()
            .enumerate()
            .map(|(i, cands)| {
                cands
                    .iter()
                    .copied()
                    .filter(|&m| g.class_value(i, j) == h.class_value(m, k))
                    .collect()
            })
            .collect();
        if narrowed.iter().any(Vec::is_empty) {
            continue;
        }
        used[k] = true;
        classes.push(k);
        search_classes(g, h, classes, used, narrowed, out);
        classes.pop();
        used[k] = false;
    }
}

/// Distinct characters have distinct value rows, so once every column is
/// matched each row has at most one partner.
fn row_bijection(rows: &[Vec<usize>]) -> Option<Vec<usize>> {
    let perm: Vec<usize> = rows.iter().map(|c| (c.len() == 1).then(|| c[0])).collect::<Option<_>>()?;
    let mut seen = vec![false; perm.len()];
    for &m in &perm {
        if std::mem::replace(&mut seen[m], true) {
            return None;
        }
    }
    Some(perm)
}

fn finish_matching(g: &CharacterTable, h: &CharacterTable, classes: Vec<usize>, rows: Vec<usize>) -> ClassMatching {
    let (cg, ch) = (g.classes(), h.classes());
    let preserves_orders = (0..classes.len()).all(|j| cg.order(j) == ch.order(classes[j]));
    let exponent = g.group().exponent().max(h.group().exponent());
    let preserves_power_maps = (1..=exponent).all(|k| {
        let pg = cg.power_map(g.group(), k);
        let ph = ch.power_map(h.group(), k);
        (0..classes.len()).all(|j| classes[pg[j]] == ph[classes[j]])
    });
    ClassMatching {
        classes,
        rows,
        preserves_orders,
        preserves_power_maps,
    }
}

/// [`equivalent_up_to_width_with`] under the default [`SearchLimits`].
pub fn equivalent_up_to_width(g: &CharacterTable, h: &CharacterTable, width: usize) -> Result<Verdict> {
    equivalent_up_to_width_with(g, h, width, &SearchLimits::default())
}

/// Searches for an element bijection preserving every r-character for
/// `r <= width`.
///
/// Class matchings are tried in the order of [`compatible_class_matchings`]
/// and, within each,
/// elements of the first group are assigned in index order with images in
/// index order; a branch is abandoned at the first tuple whose values differ.
/// When no bijection survives, the first failure met in this order is the
/// witness.
pub fn equivalent_up_to_width_with(
    g: &CharacterTable,
    h: &CharacterTable,
    width: usize,
    limits: &SearchLimits,
) -> Result<Verdict> {
    let n = g.group().order();
    if width == 0 {
        return Err(Error::Parse("width must be at least 1".into()));
    }
    if width > limits.max_width {
        return Err(Error::BoundExceeded {
            what: "width",
            limit: limits.max_width as u128,
            actual: width as u128,
        });
    }
    for order in [n, h.group().order()] {
        if order > limits.max_order {
            return Err(Error::BoundExceeded {
                what: "group order",
                limit: limits.max_order as u128,
                actual: order as u128,
            });
        }
    }
    let matchings = compatible_class_matchings(g, h);
    if matchings.is_empty() {
        return Ok(Verdict::Separated(Separation::CharacterTables));
    }
    let assignments: u128 = g
        .classes()
        .sizes()
        .iter()
        .map(|&s| (1..=s as u128).product::<u128>())
        .try_fold(1u128, |acc, f| acc.checked_mul(f))
        .unwrap_or(u128::MAX);
    if assignments > limits.max_assignments {
        return Err(Error::BoundExceeded {
            what: "element bijections per class matching",
            limit: limits.max_assignments,
            actual: assignments,
        });
    }

    let values_g = all_values(g, width)?;
    let values_h = all_values(h, width)?;
    let mut first_failure: Option<SeparationWitness> = None;
    for matching in &matchings {
        let mut search = BijectionSearch {
            g,
            h,
            matching,
            values_g: &values_g,
            values_h: &values_h,
            theta: vec![usize::MAX; n],
            used: vec![false; n],
            failure: None,
        };
        if search.extend(0) {
            return Ok(Verdict::Equivalent {
                matching: matching.clone(),
                bijection: search.theta,
            });
        }
        if first_failure.is_none() {
            first_failure = search.failure;
        }
    }
    Ok(Verdict::Separated(Separation::Tuple(
        first_failure.expect("a failed search records its first violation"),
    )))
}

/// `values[r-1][i]` holds all of `chi_i^(r)`.
fn all_values(table: &CharacterTable, width: usize) -> Result<Vec<Vec<RCharacterValues>>> {
    (1..=width)
        .map(|r| {
            (0..table.len())
                .map(|i| RCharacterValues::compute(table, i, r))
                .collect()
        })
        .collect()
}

struct BijectionSearch<'a> {
    g: &'a CharacterTable,
    h: &'a CharacterTable,
    matching: &'a ClassMatching,
    values_g: &'a [Vec<RCharacterValues>],
    values_h: &'a [Vec<RCharacterValues>],
    theta: Vec<usize>,
    used: Vec<bool>,
    failure: Option<SeparationWitness>,
}

impl BijectionSearch<'_> {
    fn extend(&mut self, x: usize) -> bool {
        let n = self.theta.len();
        if x == n {
            return true;
        }
        let target = self.matching.classes[self.g.classes().class_of(x)];
        for &y in self.h.classes().class(target) {
            if self.used[y] {
                continue;
            }
            self.theta[x] = y;
            self.used[y] = true;
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.used[y] = false;
            self.theta[x] = usize::MAX;
        }
        false
    }

    /// Checks every tuple over `{0..=x}` that contains `x`.
    fn consistent(&mut self, x: usize) -> bool {
        for (level, rows) in self.values_g.iter().enumerate() {
            let r = level + 1;
            let m = x + 1;
            for idx in 0..m.pow(r as u32) {
                let tuple = frobenius::tuple_at(m, r, idx);
                if !tuple.contains(&x) {
                    continue;
                }
                let image: Vec<usize> = tuple.iter().map(|&a| self.theta[a]).collect();
                let bad = (0..rows.len()).find(|&i| {
                    rows[i].get(&tuple) != self.values_h[level][self.matching.rows[i]].get(&image)
                });
                if let Some(i) = bad {
                    if self.failure.is_none() {
                        self.failure = Some(SeparationWitness {
                            width: r,
                            values: rows.iter().map(|v| v.get(&tuple).clone()).collect(),
                            image_values: self
                                .matching
                                .rows
                                .iter()
                                .map(|&k| self.values_h[level][k].get(&image).clone())
                                .collect(),
                            tuple,
                            image,
                            character: i,
                            matched_character: self.matching.rows[i],
                            matching: self.matching.clone(),
                        });
                    }
                    return false;
                }
            }
        }
        true
    }
}

/// Re-evaluates a witness with the defining recursion on both groups.
pub fn witness_holds(g: &CharacterTable, h: &CharacterTable, w: &SeparationWitness) -> bool {
    let a = frobenius::r_char_recursive(g, w.character, &w.tuple);
    let b = frobenius::r_char_recursive(h, w.matched_character, &w.image);
    a != b && a == w.values[w.character] && b == w.image_values[w.character]
}

/// Distinct values of `chi_i^(r)` over `G^(r)` with their multiplicities,
/// sorted by their complex value.
pub fn value_multiset(table: &CharacterTable, i: usize, r: usize) -> Result<Vec<(Cyclotomic, usize)>> {
    let values = RCharacterValues::compute(table, i, r)?;
    let mut out: Vec<(Cyclotomic, usize)> = Vec::new();
    for v in values.values() {
        match out.iter_mut().find(|(x, _)| x == v) {
            Some((_, c)) => *c += 1,
            None => out.push((v.clone(), 1)),
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
    Ok(out)
}

/// Whether two multisets from [`value_multiset`] coincide.
pub fn same_multiset(a: &[(Cyclotomic, usize)], b: &[(Cyclotomic, usize)]) -> bool {
    a.len() == b.len() && a.iter().all(|(x, c)| b.iter().any(|(y, d)| x == y && c == d))
}

/// Number of tuples of width `r`, for reporting.
pub fn tuple_count(order: usize, r: usize) -> u64 {
    (order as u128).pow(r as u32).to_u64().unwrap_or(u64::MAX)
}
