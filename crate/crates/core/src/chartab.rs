//! Character tables with exact cyclotomic entries.
//!
//! Columns always follow the canonical class order of
//! [`ConjugacyClassPartition`]; rows are either taken verbatim from a table
//! file (the bundled D4 and Q8 tables keep their textbook row order) or, for
//! computed tables, sorted by degree with the trivial character first and the
//! remaining ties broken by descending lexicographic order of the values.
//!
//! Tables are computed with the Burnside–Dixon method: the common
//! eigenvectors of the class-multiplication matrices are found over a prime
//! field `F_p` with `p = 1 mod exp(G)`, and every character value is then
//! recovered exactly as a sum of roots of unity from the eigenvalue
//! multiplicities of `rho(g)`. Every computed table is re-validated with exact
//! arithmetic before it is returned.

use std::cmp::Ordering;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{self, ConjugacyClassPartition, FiniteGroup};
use crate::report::Report;

/// Largest group order accepted by [`CharacterTable::compute`].
pub const DEFAULT_COMPUTE_BOUND: usize = 32;

const D4_TABLE: &str = include_str!("../data/d4_character_table.json");
const Q8_TABLE: &str = include_str!("../data/q8_character_table.json");

/// On-disk form of a character table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CharacterTableFile {
    pub group: String,
    pub class_reps: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub values: Vec<Vec<Value>>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: ConjugacyClassPartition,
    /// `values[i][j]` = chi_i on class j.
    values: Vec<Vec<Cyclotomic>>,
    /// `by_element[i][g]` = chi_i(g).
    by_element: Vec<Vec<Cyclotomic>>,
    dims: Vec<u64>,
}

impl CharacterTable {
    /// Builds a validated table from rows given in canonical class order.
    pub fn from_rows(group: FiniteGroup, rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let t = classes.len();
        let invalid = |msg: String| Err(Error::InvalidCharacterTable(msg));
        if rows.len() != t {
            return invalid(format!("{} rows for {t} classes", rows.len()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != t) {
            return invalid(format!("row {} has {} entries, expected {t}", i + 1, rows[i].len()));
        }
        if !rows[0].iter().all(Cyclotomic::is_one) {
            return invalid("first row is not the trivial character".into());
        }
        let mut dims = Vec::with_capacity(t);
        for (i, row) in rows.iter().enumerate() {
            let d = row[0]
                .to_integer()
                .and_then(|d| d.to_u64())
                .filter(|&d| d >= 1);
            match d {
                Some(d) => dims.push(d),
                None => return invalid(format!("row {} has degree {}", i + 1, row[0])),
            }
        }
        let sum_sq: u64 = dims.iter().map(|d| d * d).sum();
        if sum_sq != group.order() as u64 {
            return invalid(format!(
                "sum of squared degrees is {sum_sq}, group order is {}",
                group.order()
            ));
        }

        let by_element = rows
            .iter()
            .map(|row| {
                (0..group.order())
                    .map(|g| row[classes.class_of(g)].clone())
                    .collect()
            })
            .collect();
        let table = Self {
            group,
            classes,
            values: rows,
            by_element,
            dims,
        };
        let report = table.verify_row_orthogonality();
        if let Some(v) = report.violations.first() {
            return invalid(format!(
                "row orthogonality fails at {}: {} != {}",
                v.context, v.lhs, v.rhs
            ));
        }
        Ok(table)
    }

    pub fn from_file_data(group: FiniteGroup, file: &CharacterTableFile) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let t = classes.len();
        if file.class_reps.len() != t || file.class_sizes.len() != t {
            return Err(Error::InvalidCharacterTable(format!(
                "table lists {} classes, group {} has {t}",
                file.class_reps.len(),
                group.name()
            )));
        }
        // column c of the file is canonical class perm[c]
        let mut perm = Vec::with_capacity(t);
        for (rep, &size) in file.class_reps.iter().zip(&file.class_sizes) {
            let j = classes.class_of(group.element(rep)?);
            if perm.contains(&j) {
                return Err(Error::InvalidCharacterTable(format!(
                    "class of `{rep}` listed twice"
                )));
            }
            if classes.size(j) != size {
                return Err(Error::InvalidCharacterTable(format!(
                    "class of `{rep}` has size {}, file says {size}",
                    classes.size(j)
                )));
            }
            perm.push(j);
        }
        let mut rows = Vec::with_capacity(file.values.len());
        for row in &file.values {
            if row.len() != t {
                return Err(Error::InvalidCharacterTable(format!(
                    "row has {} entries, expected {t}",
                    row.len()
                )));
            }
            let mut canon = vec![Cyclotomic::zero(); t];
            for (c, v) in row.iter().enumerate() {
                canon[perm[c]] = Cyclotomic::from_json(v)?;
            }
            rows.push(canon);
        }
        Self::from_rows(group, rows)
    }

    pub fn load(group: FiniteGroup, path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_file_data(group, &serde_json::from_str(&text)?)
    }

    /// The table in file form, columns in canonical order.
    pub fn to_file_data(&self) -> CharacterTableFile {
        CharacterTableFile {
            group: self.group.name().to_string(),
            class_reps: self
                .classes
                .representatives()
                .into_iter()
                .map(|g| self.group.label(g).to_string())
                .collect(),
            class_sizes: self.classes.sizes(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(Cyclotomic::to_json).collect())
                .collect(),
        }
    }

    /// Bundled table file for D4 or Q8, if `name` is one of them.
    pub fn bundled_file(name: &str) -> Option<CharacterTableFile> {
        let text = match name.to_ascii_lowercase().as_str() {
            "d4" => D4_TABLE,
            "q8" => Q8_TABLE,
            _ => return None,
        };
        Some(serde_json::from_str(text).expect("bundled table parses"))
    }

    /// Table for a bundled group: the textbook file for D4/Q8, computed otherwise.
    pub fn bundled(name: &str) -> Result<Self> {
        Self::for_group(group::bundled(name)?)
    }

    /// Uses a bundled table file when one matches the group's name and
    /// labels, otherwise computes the table.
    pub fn for_group(group: FiniteGroup) -> Result<Self> {
        if let Some(file) = Self::bundled_file(group.name()) {
            if let Ok(t) = Self::from_file_data(group.clone(), &file) {
                return Ok(t);
            }
        }
        Self::compute(&group)
    }

    pub fn compute(group: &FiniteGroup) -> Result<Self> {
        Self::compute_with_bound(group, DEFAULT_COMPUTE_BOUND)
    }

    pub fn compute_with_bound(group: &FiniteGroup, bound: usize) -> Result<Self> {
        if group.order() > bound {
            return Err(Error::BoundExceeded {
                what: "group order for character-table computation",
                limit: bound as u128,
                actual: group.order() as u128,
            });
        }
        let rows = dixon::character_rows(group)?;
        let exponent = group.exponent() as u32;
        let mut rows: Vec<_> = rows
            .into_iter()
            .map(|row| {
                let dim = row[0].to_integer().and_then(|d| d.to_u64()).unwrap_or(0);
                let trivial = row.iter().all(Cyclotomic::is_one);
                (dim, !trivial, row)
            })
            .collect();
        rows.sort_by(|a, b| {
            (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| {
                // descending lexicographic order of the values
                for (x, y) in a.2.iter().zip(&b.2) {
                    match y.cmp_in(x, exponent) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
        });
        Self::from_rows(group.clone(), rows.into_iter().map(|r| r.2).collect())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClassPartition {
        &self.classes
    }

    /// Number of irreducible characters (= number of classes).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.values[i]
    }

    /// chi_i on class `j`.
    pub fn class_value(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.values[i][j]
    }

    /// chi_i(g), with `i` and `g` zero-based.
    pub fn char_value(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.by_element[i][g]
    }

    pub fn element_values(&self, i: usize) -> &[Cyclotomic] {
        &self.by_element[i]
    }

    /// chi_i(e).
    pub fn dim(&self, i: usize) -> u64 {
        self.dims[i]
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn is_trivial(&self, i: usize) -> bool {
        self.values[i].iter().all(Cyclotomic::is_one)
    }

    /// Exponent of the group; every value lies in `Q(zeta_exponent)`.
    pub fn modulus(&self) -> u32 {
        self.group.exponent() as u32
    }

    /// Checks `sum_g chi_i(g) conj(chi_j(g)) = |G| delta_ij` for every pair.
    pub fn verify_row_orthogonality(&self) -> Report {
        let mut report = Report::new("row orthogonality of irreducible characters");
        let order = Cyclotomic::from_integer(self.group.order() as i64);
        for i in 0..self.len() {
            for j in 0..self.len() {
                let sum: Cyclotomic = (0..self.group.order())
                    .map(|g| self.char_value(i, g) * &self.char_value(j, g).conj())
                    .sum();
                let expected = if i == j { order.clone() } else { Cyclotomic::zero() };
                report.check(|| format!("chi{} x chi{}", i + 1, j + 1), &sum, &expected);
            }
        }
        report
    }

    /// Checks `sum_g chi(g) = 0` for every nontrivial character.
    pub fn verify_column_sums(&self) -> Report {
        let mut report = Report::new("vanishing sum of a nontrivial character");
        for i in 0..self.len() {
            if self.is_trivial(i) {
                continue;
            }
            let sum: Cyclotomic = self.element_values(i).iter().cloned().sum();
            report.check(|| format!("chi{}", i + 1), &sum, &Cyclotomic::zero());
        }
        report
    }
}

impl PartialEq for CharacterTable {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.values == other.values
    }
}

/// Modular Burnside–Dixon eigenvector computation.
mod dixon {
    use super::*;

    pub(super) fn character_rows(group: &FiniteGroup) -> Result<Vec<Vec<Cyclotomic>>> {
        let n = group.order() as u64;
        let classes = group.conjugacy_classes();
        let t = classes.len();
        let e = group.exponent();
        let p = choose_prime(n, e);
        let zeta = pow_mod(primitive_root(p), (p - 1) / e, p);
        let fail = |msg: &str| Error::InvalidCharacterTable(format!("{msg} (p = {p})"));

        // a[j][k][l] = #{x in C_j : x^-1 g_l in C_k}
        let reps = classes.representatives();
        let mut mats = vec![vec![vec![0u64; t]; t]; t];
        for (j, mat) in mats.iter_mut().enumerate() {
            for (l, &gl) in reps.iter().enumerate() {
                for &x in classes.class(j) {
                    let k = classes.class_of(group.mul(group.inverse(x), gl));
                    mat[k][l] += 1;
                }
            }
        }

        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..t)
            .map(|i| (0..t).map(|k| u64::from(i == k)).collect())
            .collect()];
        for mat in mats.iter().skip(1) {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::with_capacity(t);
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let images: Vec<Vec<u64>> = space.iter().map(|b| mat_vec(mat, b, p)).collect();
                let mut found = 0;
                for lambda in 0..p {
                    // columns (A - lambda) b_c
                    let rows: Vec<Vec<u64>> = (0..t)
                        .map(|r| {
                            space
                                .iter()
                                .zip(&images)
                                .map(|(b, ab)| (ab[r] + p - lambda * b[r] % p) % p)
                                .collect()
                        })
                        .collect();
                    let kernel = nullspace(rows, space.len(), p);
                    if kernel.is_empty() {
                        continue;
                    }
                    found += kernel.len();
                    next.push(
                        kernel
                            .iter()
                            .map(|x| combine(&space, x, p))
                            .collect(),
                    );
                    if found == space.len() {
                        break;
                    }
                }
                if found != space.len() {
                    return Err(fail("class matrix is not diagonalizable"));
                }
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) {
            return Err(fail("class algebra did not split into lines"));
        }

        let sizes: Vec<u64> = classes.sizes().into_iter().map(|s| s as u64).collect();
        let inv_class: Vec<usize> = (0..t).map(|j| classes.inverse_class(group, j)).collect();
        let mut rows = Vec::with_capacity(t);
        for space in spaces {
            let v = &space[0];
            if v[0] == 0 {
                return Err(fail("central character vanishes at the identity"));
            }
            let s = inv_mod(v[0], p);
            let omega: Vec<u64> = v.iter().map(|x| x * s % p).collect();

            // d^2 = |G| / sum_l omega_l omega_{l*} / |C_l|
            let denom = (0..t).fold(0, |acc, l| {
                (acc + omega[l] * omega[inv_class[l]] % p * inv_mod(sizes[l] % p, p)) % p
            });
            if denom == 0 {
                return Err(fail("degenerate degree equation"));
            }
            let d_sq = n % p * inv_mod(denom, p) % p;
            let d = (1..=n)
                .take_while(|d| d * d <= n)
                .find(|d| d * d % p == d_sq)
                .ok_or_else(|| fail("no integral character degree"))?;

            let modp: Vec<u64> = (0..t)
                .map(|l| d * omega[l] % p * inv_mod(sizes[l] % p, p) % p)
                .collect();

            let mut row = Vec::with_capacity(t);
            for l in 0..t {
                let g = classes.representative(l);
                let o = classes.order(l);
                let zeta_o = pow_mod(zeta, e / o, p);
                let inv_o = inv_mod(o % p, p);
                let mut mult = vec![0i64; e as usize];
                for k in 0..o {
                    let mut acc = 0;
                    for s in 0..o {
                        let val = modp[classes.class_of(group.pow(g, s))];
                        let root = pow_mod(zeta_o, (o - (k * s) % o) % o, p);
                        acc = (acc + val * root) % p;
                    }
                    let mu = acc * inv_o % p;
                    if mu > d {
                        return Err(fail("eigenvalue multiplicity out of range"));
                    }
                    mult[(k * (e / o)) as usize] = mu as i64;
                }
                row.push(Cyclotomic::from_root_multiplicities(e as u32, &mult));
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Smallest prime `p = 1 mod e` with `p > 2 sqrt(n)`.
    pub(super) fn choose_prime(n: u64, e: u64) -> u64 {
        let mut p = e + 1;
        loop {
            if p * p > 4 * n && is_prime(p) {
                return p;
            }
            p += e;
        }
    }

    fn is_prime(p: u64) -> bool {
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
    }

    fn primitive_root(p: u64) -> u64 {
        let phi = p - 1;
        let mut factors = Vec::new();
        let mut m = phi;
        let mut f = 2;
        while f * f <= m {
            if m.is_multiple_of(f) {
                factors.push(f);
                while m.is_multiple_of(f) {
                    m /= f;
                }
            }
            f += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, phi / q, p) != 1))
            .unwrap_or(1)
    }

    pub(super) fn pow_mod(mut b: u64, mut k: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        b %= p;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            k >>= 1;
        }
        acc
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn mat_vec(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
            .collect()
    }

    fn combine(basis: &[Vec<u64>], coeffs: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; basis[0].len()];
        for (b, &c) in basis.iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(b) {
                *o = (*o + c * x) % p;
            }
        }
        out
    }

    /// Basis of `{x : rows * x = 0}` over `F_p`.
    fn nullspace(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = inv_mod(rows[r][c], p);
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        (0..ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![0; ncols];
                x[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = (p - rows[i][free]) % p;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon::choose_prime(8, 4), 13);
        assert_eq!(dixon::choose_prime(2, 2), 3);
        assert_eq!(dixon::choose_prime(7, 7), 29);
    }

    #[test]
    fn z2_table() {
        let t = CharacterTable::bundled("Z2").unwrap();
        assert_eq!(t.values(), &[vec![int(1), int(1)], vec![int(1), int(-1)]]);
    }

    #[test]
    fn z4_table_matches_brute_force_homomorphisms() {
        // Oracle: homomorphisms Z4 -> <i> are k -> i^(a k) for a = 0..3.
        let t = CharacterTable::bundled("Z4").unwrap();
        let g = t.group();
        let mut expected: Vec<Vec<Cyclotomic>> = (0..4)
            .map(|a| {
                (0..4)
                    .map(|k| Cyclotomic::root_of_unity(4, a * k as i64))
                    .collect()
            })
            .collect();
        let mut got: Vec<Vec<Cyclotomic>> = (0..4)
            .map(|i| (0..4).map(|x| t.char_value(i, g.element(&x.to_string()).unwrap()).clone()).collect())
            .collect();
        let key = |r: &Vec<Cyclotomic>| r.iter().map(|c| c.lift_to(4).coeffs().to_vec()).collect::<Vec<_>>();
        expected.sort_by_key(key);
        got.sort_by_key(key);
        assert_eq!(got, expected);
        assert!(got.iter().flatten().any(|c| !c.is_rational()));
    }

    #[test]
    fn d4_q8_table_values() {
        let d4 = CharacterTable::bundled("D4").unwrap();
        let r2 = d4.group().element("r2").unwrap();
        assert_eq!(d4.char_value(4, r2), &int(-2));
        let q8 = CharacterTable::bundled("Q8").unwrap();
        let i = q8.group().element("i").unwrap();
        assert_eq!(q8.char_value(1, i), &int(-1));
        assert_eq!(d4.dims(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn d4_and_q8_tables_coincide_under_textbook_matching() {
        let d4 = CharacterTable::bundled("D4").unwrap();
        let q8 = CharacterTable::bundled("Q8").unwrap();
        let pairs = [("1", "1"), ("r2", "-1"), ("r", "i"), ("s", "j"), ("rs", "k")];
        for i in 0..5 {
            for (a, b) in pairs {
                let ga = d4.group().element(a).unwrap();
                let gb = q8.group().element(b).unwrap();
                assert_eq!(d4.char_value(i, ga), q8.char_value(i, gb));
            }
        }
    }

    #[test]
    fn computed_tables_agree_with_bundled_up_to_row_order() {
        for name in ["D4", "Q8"] {
            let bundled = CharacterTable::bundled(name).unwrap();
            let computed = CharacterTable::compute(bundled.group()).unwrap();
            let mut a = bundled.values().to_vec();
            let mut b = computed.values().to_vec();
            let key = |r: &Vec<Cyclotomic>| r.iter().map(|c| c.lift_to(4).coeffs().to_vec()).collect::<Vec<_>>();
            a.sort_by_key(key);
            b.sort_by_key(key);
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn every_bundled_group_has_a_valid_computed_table() {
        for g in group::all_bundled() {
            let t = CharacterTable::compute(&g).unwrap();
            assert_eq!(t.len(), g.conjugacy_classes().len());
            assert!(t.is_trivial(0));
            assert!(t.verify_row_orthogonality().passed());
            assert!(t.verify_column_sums().passed());
            for i in 0..t.len() {
                for a in 0..g.order() {
                    for h in 0..g.order() {
                        assert_eq!(t.char_value(i, g.conjugate(a, h)), t.char_value(i, a));
                    }
                }
            }
        }
    }

    #[test]
    fn larger_groups_compute() {
        // D8 (order 16) and Z3 x S3-like products stay exact.
        let d8 = group::dihedral(8);
        let t = CharacterTable::compute(&d8).unwrap();
        assert_eq!(t.dims(), &[1, 1, 1, 1, 2, 2, 2]);
        let prod = group::dihedral(3).direct_product(&group::cyclic(4), "S3xZ4");
        let t = CharacterTable::compute(&prod).unwrap();
        assert_eq!(t.len(), 12);
        assert!(t.verify_column_sums().passed());
    }

    #[test]
    fn bound_is_enforced() {
        let g = group::cyclic(33);
        assert!(matches!(
            CharacterTable::compute(&g),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn orthogonality_values_for_d4() {
        // brute force: chi5 x chi5 = 4 + 4 = 8, chi1 x chi2 = 0
        let t = CharacterTable::bundled("D4").unwrap();
        let g = t.group();
        let dot = |i: usize, j: usize| -> Cyclotomic {
            (0..g.order())
                .map(|x| t.char_value(i, x) * &t.char_value(j, x).conj())
                .sum()
        };
        assert_eq!(dot(4, 4), int(8));
        assert_eq!(dot(0, 1), int(0));
        assert_eq!(dot(0, 0), int(8));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let g = group::bundled("Z2").unwrap();
        let bad = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(matches!(
            CharacterTable::from_rows(g.clone(), bad),
            Err(Error::InvalidCharacterTable(_))
        ));
        let mut file = CharacterTable::bundled_file("D4").unwrap();
        file.class_sizes[2] = 1;
        assert!(CharacterTable::from_file_data(group::bundled("D4").unwrap(), &file).is_err());
    }

    #[test]
    fn file_round_trip() {
        let t = CharacterTable::bundled("Z4").unwrap();
        let file = t.to_file_data();
        let back = CharacterTable::from_file_data(t.group().clone(), &file).unwrap();
        assert_eq!(t, back);
    }
}
