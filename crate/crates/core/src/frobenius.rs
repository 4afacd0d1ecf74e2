//! Frobenius r-characters and the identities they satisfy.
//!
//! For a character `chi` the r-character is defined by `chi^(1) = chi` and
//!
//! ```text
//! chi^(r)(g1, ..., gr) = chi(g1) chi^(r-1)(g2, ..., gr)
//!     - sum_{k=2..r} chi^(r-1)(g2, ..., g1 gk, ..., gr)
//! ```
//!
//! where in the k-th summand `g1 gk` takes the place of `gk`. Equivalently
//! `chi^(r)` is the signed sum over `S_r` of products of `chi` evaluated on the
//! products of tuple entries along each cycle; both forms are implemented and
//! cross-checked.
//!
//! Character indices are 0-based throughout the library.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::report::Report;

/// Default cap on `|G|^r` for exhaustive sums over `G^(r)`.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "MOONSHINE_BUDGET";

/// Largest width accepted by the `S_r` expansions (their cost grows like `r!`).
pub const CYCLE_FORMULA_BOUND: usize = 6;

/// The enumeration budget in effect.
pub fn enumeration_budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `Ok(|G|^r)` if it fits within the budget.
pub fn ensure_budget(order: usize, r: usize) -> Result<u128> {
    let budget = enumeration_budget();
    let needed = (order as u128)
        .checked_pow(r as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// An element of `G^(r)`, stored as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple(Vec<usize>);

impl Tuple {
    pub fn new(group: &FiniteGroup, entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parse("a tuple needs at least one entry".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&g| g >= group.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                limit: group.order(),
            });
        }
        Ok(Self(entries))
    }

    /// Parses comma-separated element labels, e.g. `r3s,rs`.
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|s| group.element(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// Simultaneous conjugate `(h g1 h^-1, ..., h gr h^-1)`.
    pub fn conjugate(&self, group: &FiniteGroup, by: usize) -> Self {
        Self(self.0.iter().map(|&g| group.conjugate(g, by)).collect())
    }

    /// Renders as `(s,r2s)` using the group's labels.
    pub fn display<'a>(&'a self, group: &'a FiniteGroup) -> impl fmt::Display + 'a {
        TupleDisplay(group, &self.0)
    }
}

struct TupleDisplay<'a>(&'a FiniteGroup, &'a [usize]);

impl fmt::Display for TupleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.1.iter().map(|&g| self.0.label(g)).join(","))
    }
}

/// Labels of a tuple of element indices, e.g. `(s,r2s)`.
pub fn tuple_label(group: &FiniteGroup, t: &[usize]) -> String {
    TupleDisplay(group, t).to_string()
}

/// A permutation of `{0, ..., r-1}` with its cycle structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub perm: Vec<usize>,
    /// Disjoint cycles, 1-cycles included; each starts at its smallest point.
    pub cycles: Vec<Vec<usize>>,
    pub sign: i8,
}

impl CycleDecomposition {
    pub fn new(perm: Vec<usize>) -> Self {
        let r = perm.len();
        let mut seen = vec![false; r];
        let mut cycles = Vec::new();
        for a in 0..r {
            if seen[a] {
                continue;
            }
            let mut cycle = vec![a];
            seen[a] = true;
            let mut b = perm[a];
            while b != a {
                seen[b] = true;
                cycle.push(b);
                b = perm[b];
            }
            cycles.push(cycle);
        }
        let sign = if (r - cycles.len()).is_multiple_of(2) { 1 } else { -1 };
        Self { perm, cycles, sign }
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Every element of `S_r` in lexicographic order.
    pub fn all(r: usize) -> impl Iterator<Item = CycleDecomposition> {
        (0..r).permutations(r).map(CycleDecomposition::new)
    }
}

/// `sigma o tau^-1` as a permutation vector.
fn compose_with_inverse(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    let mut tau_inv = vec![0; tau.len()];
    for (a, &b) in tau.iter().enumerate() {
        tau_inv[b] = a;
    }
    tau_inv.iter().map(|&b| sigma[b]).collect()
}

/// Memoized evaluation of one character's r-characters at single tuples.
pub struct RCharEvaluator<'a> {
    table: &'a CharacterTable,
    index: usize,
    cache: HashMap<Vec<usize>, Cyclotomic>,
}

impl<'a> RCharEvaluator<'a> {
    pub fn new(table: &'a CharacterTable, index: usize) -> Self {
        Self {
            table,
            index,
            cache: HashMap::new(),
        }
    }

    /// `chi^(r)(t)` with `r = t.len()`. Panics on an empty tuple.
    pub fn eval(&mut self, t: &[usize]) -> Cyclotomic {
        assert!(!t.is_empty(), "r-characters need r >= 1");
        if t.len() == 1 {
            return self.table.char_value(self.index, t[0]).clone();
        }
        if let Some(v) = self.cache.get(t) {
            return v.clone();
        }
        let group = self.table.group();
        let g1 = t[0];
        let mut rest = t[1..].to_vec();
        let mut value = self.table.char_value(self.index, g1) * &self.eval(&rest);
        for k in 0..rest.len() {
            let original = rest[k];
            rest[k] = group.mul(g1, original);
            value = &value - &self.eval(&rest);
            rest[k] = original;
        }
        self.cache.insert(t.to_vec(), value.clone());
        value
    }
}

/// `chi_i^(r)(t)` by the defining recursion. Panics on an empty tuple.
pub fn r_char_recursive(table: &CharacterTable, i: usize, t: &[usize]) -> Cyclotomic {
    RCharEvaluator::new(table, i).eval(t)
}

/// `chi_i^(r)(t)` as `sum_sigma sgn(sigma) prod_cycles chi_i(product along the cycle)`.
pub fn r_char_cycle_formula(table: &CharacterTable, i: usize, t: &[usize]) -> Result<Cyclotomic> {
    let r = t.len();
    if r > CYCLE_FORMULA_BOUND {
        return Err(Error::BoundExceeded {
            what: "width for the permutation expansion",
            limit: CYCLE_FORMULA_BOUND as u128,
            actual: r as u128,
        });
    }
    let group = table.group();
    let mut total = Cyclotomic::zero();
    for sigma in CycleDecomposition::all(r) {
        let mut term = Cyclotomic::from_integer(sigma.sign as i64);
        for cycle in &sigma.cycles {
            let g = group.product(cycle.iter().map(|&a| t[a]));
            term = &term * table.char_value(i, g);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Position of a tuple in the lexicographic enumeration of `G^(r)`.
pub fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * order + g)
}

/// Inverse of [`tuple_index`].
pub fn tuple_at(order: usize, r: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for slot in t.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    t
}

/// Every element of `G^(r)` in lexicographic order.
pub fn all_tuples(order: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = order.pow(r as u32);
    (0..count).map(move |k| tuple_at(order, r, k))
}

/// All values of `chi_i^(r)` on `G^(r)`, indexed by [`tuple_index`].
#[derive(Clone, Debug)]
pub struct RCharacterValues {
    order: usize,
    width: usize,
    values: Vec<Cyclotomic>,
}

impl RCharacterValues {
    /// Builds the full table level by level; `|G|^r` must fit the budget.
    pub fn compute(table: &CharacterTable, i: usize, r: usize) -> Result<Self> {
        assert!(r >= 1, "r-characters need r >= 1");
        let group = table.group();
        let n = group.order();
        ensure_budget(n, r)?;
        let chi = table.element_values(i);
        let mut prev: Vec<Cyclotomic> = chi.to_vec();
        for level in 2..=r {
            let rest_len = n.pow(level as u32 - 1);
            let mut next = Vec::with_capacity(n * rest_len);
            for (g1, c1) in chi.iter().enumerate() {
                for rest_idx in 0..rest_len {
                    let rest = tuple_at(n, level - 1, rest_idx);
                    let mut value = c1 * &prev[rest_idx];
                    let mut place = rest_len;
                    for &gk in &rest {
                        place /= n;
                        let swapped = rest_idx - gk * place + group.mul(g1, gk) * place;
                        value = &value - &prev[swapped];
                    }
                    next.push(value);
                }
            }
            prev = next;
        }
        Ok(Self {
            order: n,
            width: r,
            values: prev,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, t: &[usize]) -> &Cyclotomic {
        assert_eq!(t.len(), self.width);
        &self.values[tuple_index(self.order, t)]
    }

    /// Values in lexicographic tuple order.
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Cyclotomic)> {
        let (n, r) = (self.order, self.width);
        self.values
            .iter()
            .enumerate()
            .map(move |(k, v)| (tuple_at(n, r, k), v))
    }
}

/// Checks that `chi_i^(r)` vanishes on all of `G^(r)`; requires `r > dim chi_i`.
pub fn check_vanish(table: &CharacterTable, i: usize, r: usize) -> Result<Report> {
    let dim = table.dim(i);
    if (r as u64) <= dim {
        return Err(Error::WidthNotAboveDimension { width: r, dim });
    }
    let values = RCharacterValues::compute(table, i, r)?;
    let group = table.group();
    let zero = Cyclotomic::zero();
    let mut report = Report::new(format!("chi{}^({r}) vanishes identically", i + 1));
    for (t, v) in values.iter() {
        report.check(|| tuple_label(group, &t), v, &zero);
    }
    Ok(report)
}

/// `sum over G^(r) of chi_i^(r)`; zero for every nontrivial irreducible `chi_i`.
pub fn check_zero_sum(table: &CharacterTable, i: usize, r: usize) -> Result<Cyclotomic> {
    if table.is_trivial(i) {
        return Err(Error::TrivialCharacter(i));
    }
    let values = RCharacterValues::compute(table, i, r)?;
    Ok(values.values().iter().cloned().sum())
}

/// `sum over G^(r) of chi_i^(r) * conj(chi_j^(r))`.
pub fn orthogonality_sum(table: &CharacterTable, i: usize, j: usize, r: usize) -> Result<Cyclotomic> {
    let a = RCharacterValues::compute(table, i, r)?;
    if i == j {
        return Ok(pairing(&a, &a));
    }
    let b = RCharacterValues::compute(table, j, r)?;
    Ok(pairing(&a, &b))
}

fn pairing(a: &RCharacterValues, b: &RCharacterValues) -> Cyclotomic {
    a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x * &y.conj())
        .sum()
}

fn factorial(r: usize) -> BigInt {
    (1..=r).map(BigInt::from).product()
}

/// Closed form of the r-character orthogonality sum:
/// `r! |G|^r [i = j] (d-1)(d-2)...(d-r+1) / d^(r-1)`.
pub fn orthogonality_constant(order: u64, dim: u64, r: usize, same: bool) -> BigRational {
    if !same {
        return BigRational::zero();
    }
    let d = BigInt::from(dim);
    let falling: BigInt = (1..r).map(|k| &d - BigInt::from(k)).product();
    let numer = factorial(r) * BigInt::from(order).pow(r as u32) * falling;
    BigRational::new(numer, d.pow(r as u32 - 1))
}

/// Both sides of `sum_g chi(g h1 g^-1 h2^-1) = chi(h1) conj(chi(h2)) |G| / dim chi`.
pub fn lemma_aux1(table: &CharacterTable, i: usize, h1: usize, h2: usize) -> (Cyclotomic, Cyclotomic) {
    let group = table.group();
    let h2_inv = group.inverse(h2);
    let lhs = (0..group.order())
        .map(|g| table.char_value(i, group.mul(group.conjugate(h1, g), h2_inv)).clone())
        .sum();
    let scale = BigRational::new(BigInt::from(group.order()), BigInt::from(table.dim(i)));
    let rhs = (table.char_value(i, h1) * &table.char_value(i, h2).conj()).scale(&scale);
    (lhs, rhs)
}

/// Both sides of `sum_g chi_i(h1 g) conj(chi_j(g h2)) = chi_i(h1 h2^-1) |G| [i = j] / dim chi_i`.
pub fn lemma_aux2(
    table: &CharacterTable,
    i: usize,
    j: usize,
    h1: usize,
    h2: usize,
) -> (Cyclotomic, Cyclotomic) {
    let group = table.group();
    let lhs = (0..group.order())
        .map(|g| table.char_value(i, group.mul(h1, g)) * &table.char_value(j, group.mul(g, h2)).conj())
        .sum();
    let rhs = if i == j {
        let scale = BigRational::new(BigInt::from(group.order()), BigInt::from(table.dim(i)));
        table
            .char_value(i, group.mul(h1, group.inverse(h2)))
            .scale(&scale)
    } else {
        Cyclotomic::zero()
    };
    (lhs, rhs)
}

/// `sum_{sigma, tau in S_r} sgn(sigma) sgn(tau) |G|^r / d^m(sigma, tau)`, where
/// `m` is `r` minus the number of cycles of `sigma tau^-1`.
pub fn omega_cycle_statistic(order: u64, dim: u64, r: usize) -> Result<BigRational> {
    if r > CYCLE_FORMULA_BOUND {
        return Err(Error::BoundExceeded {
            what: "width for the permutation expansion",
            limit: CYCLE_FORMULA_BOUND as u128,
            actual: r as u128,
        });
    }
    let perms: Vec<CycleDecomposition> = CycleDecomposition::all(r).collect();
    // bucket by m so each power of d is formed once
    let mut by_m = vec![BigInt::zero(); r];
    for sigma in &perms {
        for tau in &perms {
            let m = r - CycleDecomposition::new(compose_with_inverse(&sigma.perm, &tau.perm)).cycle_count();
            by_m[m] += BigInt::from(sigma.sign as i64 * tau.sign as i64);
        }
    }
    let g_r = BigRational::from_integer(BigInt::from(order).pow(r as u32));
    let d = BigInt::from(dim);
    let total: BigRational = by_m
        .into_iter()
        .enumerate()
        .map(|(m, c)| BigRational::new(c, d.pow(m as u32)))
        .sum();
    Ok(total * g_r)
}

/// Checks the orthogonality sums against [`orthogonality_constant`] for all character
/// pairs and every `r <= max_width`.
pub fn verify_orthogonality(table: &CharacterTable, max_width: usize) -> Result<Report> {
    let order = table.group().order() as u64;
    let mut report = Report::new(format!("{} r-character orthogonality", table.group().name()));
    for r in 1..=max_width {
        let rows = (0..table.len())
            .map(|i| RCharacterValues::compute(table, i, r))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..table.len() {
            for j in 0..table.len() {
                let lhs = pairing(&rows[i], &rows[j]);
                let rhs = Cyclotomic::rational(orthogonality_constant(order, table.dim(i), r, i == j));
                report.check(|| format!("r={r} chi{} chi{}", i + 1, j + 1), &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// The two conjugation/translation sum identities for every pair `(h1, h2)`,
/// the zero sums of nontrivial r-characters, and vanishing above the degree,
/// for all `r <= max_width`.
pub fn verify_lemmas(table: &CharacterTable, max_width: usize) -> Result<Vec<Report>> {
    let group = table.group();
    let n = group.order();
    let t = table.len();
    let name = group.name();

    let mut aux1 = Report::new(format!("{name} conjugation sum identity"));
    let mut aux2 = Report::new(format!("{name} translation sum identity"));
    for h1 in 0..n {
        for h2 in 0..n {
            let ctx = || format!("h1={} h2={}", group.label(h1), group.label(h2));
            for i in 0..t {
                let (l, r) = lemma_aux1(table, i, h1, h2);
                aux1.check(|| format!("chi{} {}", i + 1, ctx()), &l, &r);
                for j in 0..t {
                    let (l, r) = lemma_aux2(table, i, j, h1, h2);
                    aux2.check(|| format!("chi{} chi{} {}", i + 1, j + 1, ctx()), &l, &r);
                }
            }
        }
    }

    let mut zero_sums = Report::new(format!("{name} nontrivial r-characters sum to zero"));
    let mut vanish = Report::new(format!("{name} r-characters vanish above the degree"));
    let zero = Cyclotomic::zero();
    for r in 1..=max_width {
        for i in 0..t {
            if !table.is_trivial(i) {
                let s = check_zero_sum(table, i, r)?;
                zero_sums.check(|| format!("r={r} chi{}", i + 1), &s, &zero);
            }
            if r as u64 > table.dim(i) {
                let mut sub = check_vanish(table, i, r)?;
                for v in &mut sub.violations {
                    v.context = format!("r={r} chi{} {}", i + 1, v.context);
                }
                vanish.merge(sub);
            }
        }
    }
    Ok(vec![aux1, aux2, zero_sums, vanish])
}

/// Recursion against the permutation expansion on every tuple, `r <= max_width`.
pub fn verify_cycle_formula(table: &CharacterTable, max_width: usize) -> Result<Report> {
    let group = table.group();
    let mut report = Report::new(format!("{} recursion agrees with the permutation expansion", group.name()));
    for r in 1..=max_width {
        for i in 0..table.len() {
            let values = RCharacterValues::compute(table, i, r)?;
            for (tuple, v) in values.iter() {
                let c = r_char_cycle_formula(table, i, &tuple)?;
                report.check(|| format!("chi{} {}", i + 1, tuple_label(group, &tuple)), v, &c);
            }
        }
    }
    Ok(report)
}

/// `chi^(2)(g1, g2) = chi^(2)(g2, g1)` for every pair.
pub fn verify_symmetry(table: &CharacterTable) -> Result<Report> {
    let group = table.group();
    let mut report = Report::new(format!("{} 2-characters are symmetric", group.name()));
    for i in 0..table.len() {
        let values = RCharacterValues::compute(table, i, 2)?;
        for (t, v) in values.iter() {
            let swapped = [t[1], t[0]];
            report.check(|| format!("chi{} {}", i + 1, tuple_label(group, &t)), v, values.get(&swapped));
        }
    }
    Ok(report)
}

/// [`omega_cycle_statistic`] against [`orthogonality_constant`] for `r <= max_width`, `dim <= max_dim`.
pub fn verify_omega(order: u64, max_width: usize, max_dim: u64) -> Result<Report> {
    let mut report = Report::new("permutation-pair statistic matches the closed form");
    for r in 1..=max_width {
        for dim in 1..=max_dim {
            let lhs = Cyclotomic::rational(omega_cycle_statistic(order, dim, r)?);
            let rhs = Cyclotomic::rational(orthogonality_constant(order, dim, r, true));
            report.check(|| format!("|G|={order} dim={dim} r={r}"), &lhs, &rhs);
        }
    }
    Ok(report)
}
