//! Brute-force finite-group oracle: groups from tables or permutation
//! generators, conjugacy classes, class-algebra structure constants and the
//! iterated commutators computed directly in the group algebra.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::class_algebra::{ClassData, EtaStructure};
use crate::error::{Error, Result};
use crate::fusion::{CharacterTable, FusionRing};
use crate::rational::{exact, from_u64, Rational};

/// Default cap on the order of groups built from generators.
pub const DEFAULT_MAX_ORDER: usize = 10_000;
/// Largest order for which `brute_gamma` runs with `m >= 1`.
pub const BRUTE_GAMMA_MAX_ORDER: usize = 2_000;
/// Largest exponent accepted by [`mth_root_distribution`].
pub const MAX_ROOT_EXPONENT: u32 = 12;

const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 10_000;

/// A permutation of `{0, .., k-1}` in image form: `p[x]` is the image of `x`.
pub type Permutation = Vec<usize>;

/// Parses one line of cycle notation, e.g. `(0 1 2)(3 4)`, on `degree` points.
pub fn parse_cycles(line: &str, degree: usize) -> Result<Permutation> {
    let mut perm: Permutation = (0..degree).collect();
    let mut seen = vec![false; degree];
    let mut rest = line.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {line:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {line:?}")))?;
        let points = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        for (idx, &p) in points.iter().enumerate() {
            if p >= degree || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("point {p} repeated or out of range in {line:?}")));
            }
            perm[p] = points[(idx + 1) % points.len()];
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Parses a generator file: one permutation per non-empty line, `#` starts a comment.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let degree = lines
        .iter()
        .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|s| s.parse::<usize>().ok())
        .max()
        .map_or(1, |m| m + 1);
    lines.iter().map(|l| parse_cycles(l, degree)).collect()
}

fn compose(p: &[usize], q: &[usize]) -> Permutation {
    // apply p first, then q
    p.iter().map(|&x| q[x]).collect()
}

/// A finite group by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// From a full multiplication table; checks the group axioms.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("empty table".into());
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad(format!("table must be {n}x{n} with entries < {n}"));
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
        else {
            return bad("no identity element".into());
        };
        let mut inv = vec![0; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            match (0..n).find(|&y| rows[x][y] == identity && rows[y][x] == identity) {
                Some(y) => *slot = y,
                None => return bad(format!("element {x} has no inverse")),
            }
        }
        let g = Self {
            order: n,
            mul: rows.into_iter().flatten().map(|x| x as u32).collect(),
            identity,
            inv,
        };
        let check = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return bad(format!("not associative at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return bad(format!("not associative at ({a}, {b}, {c})"));
                }
            }
        }
        Ok(g)
    }

    /// Plain-text table: one row per line, whitespace-separated, 0-indexed.
    pub fn from_table_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(rows)
    }

    /// Closure of `gens` under composition, breadth first; element 0 is the identity.
    pub fn from_generators(gens: &[Permutation], cap: usize) -> Result<Self> {
        let degree = gens.iter().map(Vec::len).max().unwrap_or(0);
        let mut gens: Vec<Permutation> = gens
            .iter()
            .map(|g| {
                let mut p = g.clone();
                p.extend(g.len()..degree);
                p
            })
            .collect();
        for g in &gens {
            let mut seen = vec![false; degree];
            if g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let identity: Permutation = (0..degree).collect();
        gens.retain(|g| *g != identity);

        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        // BFS tree: element = elements[parent] * gens[via]
        let mut parent = vec![(0usize, 0usize)];
        let mut right = Vec::new(); // right[x * n_gens + g]
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = compose(&elements[x], g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= cap {
                            return Err(Error::CapExceeded { what: "group order", found: i + 1, cap });
                        }
                        index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((x, gi));
                        queue.push_back(i);
                        i
                    }
                };
                if right.len() <= x * gens.len() + gi {
                    right.resize(x * gens.len() + gi + 1, 0);
                }
                right[x * gens.len() + gi] = idx;
            }
        }

        let n = elements.len();
        let ng = gens.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
        }
        // columns in BFS order: a * b = (a * parent(b)) * gen(b)
        for b in 1..n {
            let (pb, gb) = parent[b];
            for a in 0..n {
                let ap = mul[a * n + pb] as usize;
                mul[a * n + b] = right[ap * ng + gb] as u32;
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("finite group has inverses");
        }
        Ok(Self { order: n, mul, identity: 0, inv })
    }

    pub fn from_generator_text(text: &str, cap: usize) -> Result<Self> {
        Self::from_generators(&parse_generators(text)?, cap)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a b a^-1 b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv[a], self.inv[b]))
    }

    pub fn power(&self, a: usize, m: u32) -> usize {
        (0..m).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        (0..self.order).map(|a| self.element_order(a)).fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }
}

/// Conjugacy classes, class 0 the identity and the rest ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    dual: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.members[c][0]
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.len() as u64).collect()
    }

    /// Class of inverses.
    pub fn dual(&self) -> &[usize] {
        &self.dual
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClasses {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    let order = std::iter::once(g.identity()).chain((0..n).filter(|&x| x != g.identity()));
    for x in order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut orbit = Vec::new();
        for h in 0..n {
            let y = g.mul(g.mul(h, x), g.inv(h));
            if class_of[y] == usize::MAX {
                class_of[y] = c;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let dual = members.iter().map(|m| class_of[g.inv(m[0])]).collect();
    ConjugacyClasses { class_of, members, dual }
}

/// `q(i, j, k)` with `eta_i eta_j = sum_k q(i, j, k) eta_k`, by expanding `C_i C_j`.
pub fn class_structure_constants(g: &FiniteGroup, cc: &ConjugacyClasses) -> EtaStructure {
    let n = cc.len();
    let mut counts = vec![0u64; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for &x in cc.members(i) {
                for &y in cc.members(j) {
                    counts[(i * n + j) * n + cc.class_of(g.mul(x, y))] += 1;
                }
            }
        }
    }
    let sizes = cc.sizes();
    EtaStructure::from_fn(n, |i, j, k| {
        Rational::new(counts[(i * n + j) * n + k].into(), (sizes[i] * sizes[j]).into())
    })
}

/// Class data of `kG`: class sizes, inverse classes, structure constants and,
/// when an aligned table is supplied, `xi_{ij} = chi_i(g_j)`.
pub fn class_data(g: &FiniteGroup, cc: &ConjugacyClasses, table: Option<&CharacterTable>) -> Result<ClassData> {
    let xi = match table {
        Some(t) => {
            if t.class_sizes() != cc.sizes().as_slice() {
                return Err(Error::TableMismatch("class sizes differ; align the table first".into()));
            }
            Some(t.entries().to_vec())
        }
        None => None,
    };
    ClassData::new(
        cc.sizes(),
        g.order() as u64,
        xi,
        cc.dual().to_vec(),
        Some(class_structure_constants(g, cc)),
    )
}

/// Reorders the columns of `table` so that column `j` is group class `j`.
///
/// A bijection of classes is accepted when class sizes agree and the
/// structure constants computed from the table match the group's exactly (to
/// 1e-6), which pins down the table as a character table of `g`.
pub fn align_character_table(
    g: &FiniteGroup,
    cc: &ConjugacyClasses,
    table: &CharacterTable,
) -> Result<CharacterTable> {
    let n = cc.len();
    if table.n_classes() != n || table.order() != g.order() as u64 {
        return Err(Error::TableMismatch(format!(
            "table has {} classes of a group of order {}, group has {n} classes and order {}",
            table.n_classes(),
            table.order(),
            g.order()
        )));
    }
    let group_q = class_structure_constants(g, cc);
    let sizes = cc.sizes();
    let order = g.order() as f64;
    let degrees = table.degrees();
    let e = table.entries();
    // q from the table, in table column indices
    let table_q = |i: usize, j: usize, k: usize| -> Complex64 {
        let s: Complex64 = (0..n)
            .map(|x| e[x][i] * e[x][j] * e[x][k].conj() / degrees[x] as f64)
            .sum();
        s * (table.class_sizes()[k] as f64 / order)
    };
    let mut tq = vec![Complex64::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                tq[(i * n + j) * n + k] = table_q(i, j, k);
            }
        }
    }
    let gq: Vec<f64> = (0..n * n * n)
        .map(|idx| crate::rational::to_f64(group_q.q(idx / (n * n), (idx / n) % n, idx % n)))
        .collect();

    fn extend(
        assigned: &mut Vec<usize>,
        used: &mut Vec<bool>,
        n: usize,
        sizes: &[u64],
        table_sizes: &[u64],
        tq: &[Complex64],
        gq: &[f64],
    ) -> bool {
        let c = assigned.len();
        if c == n {
            return true;
        }
        for col in 0..n {
            if used[col] || table_sizes[col] != sizes[c] {
                continue;
            }
            assigned.push(col);
            let consistent = (0..=c).all(|a| {
                (0..=c).all(|b| {
                    (0..=c).all(|k| {
                        if a != c && b != c && k != c {
                            return true;
                        }
                        let t = tq[(assigned[a] * n + assigned[b]) * n + assigned[k]];
                        (t - gq[(a * n + b) * n + k]).norm() <= 1e-6
                    })
                })
            });
            if consistent {
                used[col] = true;
                if extend(assigned, used, n, sizes, table_sizes, tq, gq) {
                    return true;
                }
                used[col] = false;
            }
            assigned.pop();
        }
        false
    }

    let mut assigned = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(&mut assigned, &mut used, n, &sizes, table.class_sizes(), &tq, &gq) {
        table.permute_classes(&assigned)
    } else {
        Err(Error::TableMismatch("no class bijection matches the structure constants".into()))
    }
}

/// `gamma_m` as a coefficient per group element.
///
/// `gamma_0 = (1/|G|) sum g` and `gamma_{m+1}(y) = sum_{x,h} gamma_m(x) [x h x^-1 h^-1 = y] / |G|`.
/// The first step enumerates all pairs; later steps act on class functions,
/// using one representative per class.
pub fn brute_gamma(g: &FiniteGroup, m: usize) -> Result<Vec<Rational>> {
    let n = g.order();
    let uniform = vec![Rational::new(1.into(), (n as u64).into()); n];
    if m == 0 {
        return Ok(uniform);
    }
    if n > BRUTE_GAMMA_MAX_ORDER {
        return Err(Error::CapExceeded { what: "group order", found: n, cap: BRUTE_GAMMA_MAX_ORDER });
    }
    let mut counts = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            counts[g.commutator(a, b)] += 1;
        }
    }
    let nn = (n as u64) * (n as u64);
    let gamma1: Vec<Rational> = counts.iter().map(|&c| Rational::new(c.into(), nn.into())).collect();
    if m == 1 {
        return Ok(gamma1);
    }

    let cc = conjugacy_classes(g);
    let k = cc.len();
    // hits[c][c'] = #{h : [rep_c, h] in class c'}
    let mut hits = vec![vec![0u64; k]; k];
    for (c, row) in hits.iter_mut().enumerate() {
        let x = cc.representative(c);
        for h in 0..n {
            row[cc.class_of(g.commutator(x, h))] += 1;
        }
    }
    let sizes = cc.sizes();
    let mut value: Vec<Rational> = (0..k).map(|c| gamma1[cc.representative(c)].clone()).collect();
    let order = from_u64(n as u64);
    for _ in 1..m {
        let mut mass = vec![Rational::zero(); k];
        for c in 0..k {
            if value[c].is_zero() {
                continue;
            }
            let weight = &value[c] * from_u64(sizes[c]) / &order;
            for (c2, &h) in hits[c].iter().enumerate() {
                if h != 0 {
                    mass[c2] += &weight * from_u64(h);
                }
            }
        }
        value = mass.into_iter().zip(&sizes).map(|(ms, &s)| ms / from_u64(s)).collect();
    }
    Ok((0..n).map(|x| value[cc.class_of(x)].clone()).collect())
}

/// [`brute_gamma`] without the class-function shortcut: every step sums over all pairs.
pub fn brute_gamma_naive(g: &FiniteGroup, m: usize) -> Vec<Rational> {
    let n = g.order();
    let order = from_u64(n as u64);
    let mut gamma = vec![Rational::new(1.into(), (n as u64).into()); n];
    for _ in 0..m {
        let mut next = vec![Rational::zero(); n];
        for x in 0..n {
            if gamma[x].is_zero() {
                continue;
            }
            let w = &gamma[x] / &order;
            for h in 0..n {
                next[g.commutator(x, h)] += &w;
            }
        }
        gamma = next;
    }
    gamma
}

/// Collapses an element-wise central vector to `eta` coordinates: `z = sum_c (|C_c| z(g_c)) eta_c`.
pub fn to_eta_coordinates(cc: &ConjugacyClasses, z: &[Rational]) -> Vec<Rational> {
    (0..cc.len())
        .map(|c| cc.members(c).iter().map(|&x| z[x].clone()).sum())
        .collect()
}

/// Whether `z` is constant on every conjugacy class.
pub fn is_class_function(cc: &ConjugacyClasses, z: &[Rational]) -> bool {
    (0..cc.len()).all(|c| cc.members(c).iter().all(|&x| z[x] == z[cc.representative(c)]))
}

/// `#{(a, b) : a b a^-1 b^-1 = element}`.
pub fn commutator_count(g: &FiniteGroup, element: usize) -> u64 {
    let n = g.order();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            if g.commutator(a, b) == element {
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusCheck {
    /// Measured commutator count at each class representative.
    pub counts: Vec<u64>,
    /// `sum_i (|G| / d_i) chi_i(g)` at each representative.
    pub predicted: Vec<f64>,
    pub passed: bool,
}

/// Compares commutator counts against `sum_i (|G| / d_i) chi_i`, to 1e-6.
pub fn frobenius_check(g: &FiniteGroup, cc: &ConjugacyClasses, table: &CharacterTable) -> Result<FrobeniusCheck> {
    if table.class_sizes() != cc.sizes().as_slice() {
        return Err(Error::TableMismatch("class sizes differ; align the table first".into()));
    }
    let order = g.order() as f64;
    let degrees = table.degrees();
    let mut counts = Vec::with_capacity(cc.len());
    let mut predicted: Vec<f64> = Vec::with_capacity(cc.len());
    for c in 0..cc.len() {
        counts.push(commutator_count(g, cc.representative(c)));
        predicted.push(
            (0..table.n_classes())
                .map(|i| table.entry(i, c).re * order / degrees[i] as f64)
                .sum(),
        );
    }
    let passed = counts.iter().zip(&predicted).all(|(&c, &p)| (c as f64 - p).abs() <= 1e-6);
    Ok(FrobeniusCheck { counts, predicted, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDistribution {
    pub m: u32,
    /// `#{x : x^m in class j}`.
    pub counts: Vec<u64>,
    /// `eta` coefficients of `(1/|G|) sum_x x^m`.
    #[serde(with = "exact::vec")]
    pub eta_coefficients: Vec<Rational>,
}

pub fn mth_root_distribution(g: &FiniteGroup, cc: &ConjugacyClasses, m: u32) -> Result<RootDistribution> {
    if !(1..=MAX_ROOT_EXPONENT).contains(&m) {
        return Err(Error::OutOfRange(format!("root exponent {m} not in 1..={MAX_ROOT_EXPONENT}")));
    }
    let mut counts = vec![0u64; cc.len()];
    for x in 0..g.order() {
        counts[cc.class_of(g.power(x, m))] += 1;
    }
    let order = g.order() as u64;
    let eta_coefficients = counts.iter().map(|&c| Rational::new(c.into(), order.into())).collect();
    Ok(RootDistribution { m, counts, eta_coefficients })
}

/// Whether every `eta` coefficient of `Lambda^[m]` is non-negative.
pub fn fs_positivity_probe(g: &FiniteGroup, cc: &ConjugacyClasses, m: u32) -> Result<bool> {
    let dist = mth_root_distribution(g, cc, m)?;
    Ok(dist.eta_coefficients.iter().all(crate::rational::is_non_negative))
}

/// Generalized Frobenius–Schur indicators `(1/|G|) sum_x chi_i(x^m)` from the root counts.
pub fn frobenius_schur_indicators(dist: &RootDistribution, table: &CharacterTable) -> Vec<Complex64> {
    let order = table.order() as f64;
    (0..table.n_classes())
        .map(|i| {
            dist.counts
                .iter()
                .enumerate()
                .map(|(j, &c)| table.entry(i, j) * c as f64)
                .sum::<Complex64>()
                / order
        })
        .collect()
}

/// Least `t` with `G_t = 1` for `G_0 = G`, `G_{t+1} = [G_t, G]`; `None` if the series stalls.
pub fn lower_central_series_class(g: &FiniteGroup) -> Option<usize> {
    let n = g.order();
    let mut current: Vec<bool> = vec![true; n];
    let mut t = 0;
    loop {
        let size = current.iter().filter(|&&b| b).count();
        if size == 1 {
            return Some(t);
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = vec![false; n];
        for x in (0..n).filter(|&x| current[x]) {
            for y in 0..n {
                let c = g.commutator(x, y);
                if !std::mem::replace(&mut seen[c], true) {
                    gens.push(c);
                }
            }
        }
        let next = g.generated_subgroup(&gens);
        if next == current {
            return None;
        }
        current = next;
        t += 1;
    }
}

/// Grothendieck ring of the dual group algebra `(kG)^*`: the group ring `ZG`
/// with basis the group elements, all degrees 1 and duality the inverse.
pub fn dual_group_algebra_ring(g: &FiniteGroup) -> FusionRing {
    let n = g.order();
    // relabel so that the identity is basis element 0
    let id = g.identity();
    let relabel = |x: usize| if x == id { 0 } else if x == 0 { id } else { x };
    let mut coeffs = vec![vec![vec![0u64; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            coeffs[relabel(a)][relabel(b)][relabel(g.mul(a, b))] = 1;
        }
    }
    let dual = (0..n).map(|x| relabel(g.inv(relabel(x)))).collect();
    let labels = (0..n).map(|x| format!("g{}", relabel(x))).collect();
    FusionRing::new(vec![1; n], dual, coeffs, Some(labels), g.is_abelian())
        .expect("group ring shapes are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_generator_text("(0 1)\n(0 1 2)\n", DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("(0 1 2)(3 4)", 6).unwrap(), vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(parse_cycles("(0,2)", 3).unwrap(), vec![2, 1, 0]);
        assert!(parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(parse_cycles("(0 1", 3).is_err());
    }

    #[test]
    fn closures() {
        let c2 = FiniteGroup::from_generator_text("(0 1)", 100).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(s3().order(), 6);
        let d4 = FiniteGroup::from_generator_text("(0 1 2 3)\n(0 2)", 100).unwrap();
        assert_eq!(d4.order(), 8);
        let err = FiniteGroup::from_generator_text("(0 1)\n(0 1 2 3 4 5 6)", 100);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn generated_table_is_a_group() {
        let g = s3();
        let rows: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| g.mul(a, b)).collect()).collect();
        assert_eq!(FiniteGroup::from_table(rows).unwrap(), g);
    }

    #[test]
    fn bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let cc = conjugacy_classes(&g);
        let mut sizes = cc.sizes();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(cc.dual().iter().enumerate().all(|(i, &d)| i == d));
    }

    #[test]
    fn s3_structure_constants() {
        let g = s3();
        let cc = conjugacy_classes(&g);
        let q = class_structure_constants(&g, &cc);
        let t = (0..3).find(|&c| cc.members(c).len() == 3).unwrap();
        let r = (0..3).find(|&c| cc.members(c).len() == 2).unwrap();
        assert_eq!(q.q(t, t, 0), &rat(1, 3));
        assert_eq!(q.q(t, t, t), &rat(0, 1));
        assert_eq!(q.q(t, t, r), &rat(2, 3));
        for j in 0..3 {
            assert_eq!(q.product(0, j), (0..3).map(|k| rat(i64::from(j == k), 1)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn s3_brute_gamma_one() {
        let g = s3();
        let cc = conjugacy_classes(&g);
        let g1 = brute_gamma(&g, 1).unwrap();
        assert_eq!(g1[g.identity()], rat(1, 2));
        for x in 0..6 {
            match cc.members(cc.class_of(x)).len() {
                3 => assert_eq!(g1[x], rat(0, 1)),
                2 => assert_eq!(g1[x], rat(1, 4)),
                _ => {}
            }
        }
    }

    #[test]
    fn projected_and_naive_gamma_agree() {
        let g = FiniteGroup::from_generator_text("(0 1)\n(0 1 2 3)", DEFAULT_MAX_ORDER).unwrap();
        for m in 0..5 {
            assert_eq!(brute_gamma(&g, m).unwrap(), brute_gamma_naive(&g, m));
        }
    }

    #[test]
    fn commutator_counts() {
        let g = s3();
        let cc = conjugacy_classes(&g);
        assert_eq!(commutator_count(&g, g.identity()), 18);
        let t = (0..3).find(|&c| cc.members(c).len() == 3).unwrap();
        assert_eq!(commutator_count(&g, cc.representative(t)), 0);
        let c4 = FiniteGroup::from_generator_text("(0 1 2 3)", 100).unwrap();
        assert_eq!(commutator_count(&c4, 0), 16);
    }

    #[test]
    fn roots() {
        let g = s3();
        let cc = conjugacy_classes(&g);
        let d = mth_root_distribution(&g, &cc, 2).unwrap();
        let r = (0..3).find(|&c| cc.members(c).len() == 2).unwrap();
        let t = (0..3).find(|&c| cc.members(c).len() == 3).unwrap();
        assert_eq!(d.counts[0], 4);
        assert_eq!(d.counts[r], 2);
        assert_eq!(d.counts[t], 0);
        assert_eq!(d.eta_coefficients[0], rat(2, 3));
        let one = mth_root_distribution(&g, &cc, 1).unwrap();
        assert_eq!(one.counts, cc.sizes());
        let e = mth_root_distribution(&g, &cc, g.exponent() as u32).unwrap();
        assert_eq!(e.counts[0], 6);
        assert!(fs_positivity_probe(&g, &cc, 3).unwrap());
        assert!(mth_root_distribution(&g, &cc, 13).is_err());
        assert!(mth_root_distribution(&g, &cc, 0).is_err());
    }

    #[test]
    fn lower_central_series() {
        assert_eq!(lower_central_series_class(&s3()), None);
        let c4 = FiniteGroup::from_generator_text("(0 1 2 3)", 100).unwrap();
        assert_eq!(lower_central_series_class(&c4), Some(1));
        let d4 = FiniteGroup::from_generator_text("(0 1 2 3)\n(0 2)", 100).unwrap();
        assert_eq!(lower_central_series_class(&d4), Some(2));
        let trivial = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(lower_central_series_class(&trivial), Some(0));
    }

    #[test]
    fn dual_group_ring() {
        let ring = dual_group_algebra_ring(&s3());
        assert!(ring.validate().is_valid());
        assert!(!ring.is_commutative());
        assert!(ring.is_self_dual_symmetric());
        assert!(ring.check_centrality());
        assert!(!ring.is_quasitriangular());
    }
}
