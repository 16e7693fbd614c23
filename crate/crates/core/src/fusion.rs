//! Fusion rings (Grothendieck rings of semisimple Hopf algebras) and the
//! character tables they are ingested from.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{from_u64, Rational};

/// Absolute tolerance for floating-point checks on character tables.
pub const TABLE_TOLERANCE: f64 = 1e-6;

/// A based ring with basis `chi_0 .. chi_{n-1}`, `chi_0` the unit.
///
/// `N(i, j, k)` is the multiplicity of `chi_k` in `chi_i * chi_j`. Construction
/// only checks shapes; call [`FusionRing::validate`] for the ring axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    degrees: Vec<u64>,
    dual: Vec<usize>,
    coefficients: Vec<u64>,
    labels: Option<Vec<String>>,
    quasitriangular: bool,
}

impl FusionRing {
    pub fn new(
        degrees: Vec<u64>,
        dual: Vec<usize>,
        coefficients: Vec<Vec<Vec<u64>>>,
        labels: Option<Vec<String>>,
        quasitriangular: bool,
    ) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::Parse("fusion ring must have rank >= 1".into()));
        }
        if dual.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: dual.len() });
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= n) {
            return Err(Error::IndexOutOfRange { index: bad, rank: n });
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: labels.len() });
            }
        }
        if coefficients.len() != n
            || coefficients
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::Parse(format!("fusion coefficients must be {n}x{n}x{n}")));
        }
        Ok(Self {
            degrees,
            dual,
            coefficients: coefficients.into_iter().flatten().flatten().collect(),
            labels,
            quasitriangular,
        })
    }

    /// The one-dimensional ring `Z` (Grothendieck ring of the trivial Hopf algebra).
    pub fn trivial() -> Self {
        Self::new(vec![1], vec![0], vec![vec![vec![1]]], None, true).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("chi{i}"),
        }
    }

    pub fn is_quasitriangular(&self) -> bool {
        self.quasitriangular
    }

    /// `N_{ij}^k`.
    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.coefficients[(i * r + j) * r + k]
    }

    pub fn coefficient_array(&self) -> Vec<Vec<Vec<u64>>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.n(i, j, k)).collect()).collect())
            .collect()
    }

    /// `dim H = sum_i d_i^2`.
    pub fn dimension(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Coefficient vector of `chi_i * chi_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<u64> {
        (0..self.rank()).map(|k| self.n(i, j, k)).collect()
    }

    /// Checks every fusion-ring axiom and reports each violation with its indices.
    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let mut v = Vec::new();
        let mut push = |axiom, indices: &[usize]| {
            v.push(Violation { axiom, indices: indices.to_vec() });
        };

        if self.degrees[0] != 1 {
            push(Axiom::UnitDegree, &[0]);
        }
        if self.dual[0] != 0 {
            push(Axiom::UnitSelfDual, &[0]);
        }
        for i in 0..n {
            if self.degrees[i] == 0 {
                push(Axiom::PositiveDegree, &[i]);
            }
            if self.dual[self.dual[i]] != i {
                push(Axiom::DualInvolution, &[i]);
            }
            if self.degrees[self.dual[i]] != self.degrees[i] {
                push(Axiom::DualDegree, &[i]);
            }
        }
        for j in 0..n {
            for k in 0..n {
                let delta = u64::from(j == k);
                if self.n(0, j, k) != delta {
                    push(Axiom::Unit, &[0, j, k]);
                }
                if j != 0 && self.n(j, 0, k) != delta {
                    push(Axiom::Unit, &[j, 0, k]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.n(i, j, 0) != u64::from(j == self.dual[i]) {
                    push(Axiom::Duality, &[i, j, 0]);
                }
                let weighted: u128 = (0..n)
                    .map(|k| u128::from(self.n(i, j, k)) * u128::from(self.degrees[k]))
                    .sum();
                if weighted != u128::from(self.degrees[i]) * u128::from(self.degrees[j]) {
                    push(Axiom::Dimension, &[i, j]);
                }
            }
        }
        // reciprocity indexes through the dual map, skip it if that map is broken
        let dual_ok = (0..n).all(|i| self.dual[self.dual[i]] == i);
        if dual_ok {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let x = self.n(i, j, k);
                        if x != self.n(self.dual[i], k, j) || x != self.n(k, self.dual[j], i) {
                            push(Axiom::FrobeniusReciprocity, &[i, j, k]);
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let left: u128 = (0..n)
                            .map(|m| u128::from(self.n(i, j, m)) * u128::from(self.n(m, k, l)))
                            .sum();
                        let right: u128 = (0..n)
                            .map(|m| u128::from(self.n(j, k, m)) * u128::from(self.n(i, m, l)))
                            .sum();
                        if left != right {
                            push(Axiom::Associativity, &[i, j, k, l]);
                        }
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Returns `self` if it validates, otherwise the report as an error.
    pub fn validated(&self) -> Result<&Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidRing(report))
        }
    }

    /// Grothendieck-ring product of coefficient vectors.
    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.rank();
        for v in [a, b] {
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: v.len() });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai * bj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.n(i, j, k);
                    if c != 0 {
                        *slot += &ab * from_u64(c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.n(i, j, k) == self.n(j, i, k))))
    }

    /// `chi_i chi_{i*} = chi_{i*} chi_i` for every `i`.
    pub fn is_self_dual_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            let d = self.dual[i];
            (0..n).all(|k| self.n(i, d, k) == self.n(d, i, k))
        })
    }

    /// Whether every `chi_i chi_{i*}` lies in the center of the ring.
    pub fn check_centrality(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            let v = self.product_of_basis(i, self.dual[i]);
            (0..n).all(|j| {
                (0..n).all(|l| {
                    let left: u128 = (0..n)
                        .map(|k| u128::from(v[k]) * u128::from(self.n(k, j, l)))
                        .sum();
                    let right: u128 = (0..n)
                        .map(|k| u128::from(v[k]) * u128::from(self.n(j, k, l)))
                        .sum();
                    left == right
                })
            })
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: RingFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if file.rank != file.degrees.len() {
            return Err(Error::LengthMismatch { expected: file.rank, found: file.degrees.len() });
        }
        Self::new(file.degrees, file.dual, file.n, file.labels, file.quasitriangular)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let file = RingFile {
            rank: self.rank(),
            degrees: self.degrees.clone(),
            dual: self.dual.clone(),
            n: self.coefficient_array(),
            labels: self.labels.clone(),
            quasitriangular: self.quasitriangular,
        };
        serde_json::to_string_pretty(&file).expect("ring serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct RingFile {
    rank: usize,
    degrees: Vec<u64>,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default)]
    quasitriangular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    UnitDegree,
    UnitSelfDual,
    PositiveDegree,
    DualInvolution,
    DualDegree,
    Unit,
    Duality,
    Dimension,
    Associativity,
    FrobeniusReciprocity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::UnitDegree => "d_0 = 1",
            Axiom::UnitSelfDual => "dual(0) = 0",
            Axiom::PositiveDegree => "d_i > 0",
            Axiom::DualInvolution => "dual(dual(i)) = i",
            Axiom::DualDegree => "d_{i*} = d_i",
            Axiom::Unit => "unit axiom",
            Axiom::Duality => "duality axiom",
            Axiom::Dimension => "dimension axiom",
            Axiom::Associativity => "associativity",
            Axiom::FrobeniusReciprocity => "Frobenius reciprocity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, axiom: Axiom, indices: &[usize]) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom && v.indices == indices)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "  {} violated at {:?}", v.axiom, v.indices)?;
        }
        Ok(())
    }
}

/// Character table of a finite group (or generalized table of a Hopf algebra).
///
/// `entries[i][j]` is `chi_i` on class `j`. Row 0 is the trivial character and
/// column 0 is the identity class.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    order: u64,
    class_sizes: Vec<u64>,
    entries: Vec<Vec<Complex64>>,
    power_maps: BTreeMap<u32, Vec<usize>>,
}

impl CharacterTable {
    /// Builds and checks a table (squareness, class sizes, row 0, column 0, row orthogonality).
    pub fn new(
        order: u64,
        class_sizes: Vec<u64>,
        entries: Vec<Vec<Complex64>>,
        power_maps: BTreeMap<u32, Vec<usize>>,
    ) -> Result<Self> {
        let ct = Self { order, class_sizes, entries, power_maps };
        ct.check()?;
        Ok(ct)
    }

    fn check(&self) -> Result<()> {
        let n = self.class_sizes.len();
        let bad = |msg: String| Err(Error::InvalidTable(msg));
        if n == 0 {
            return bad("empty table".into());
        }
        if self.entries.len() != n || self.entries.iter().any(|r| r.len() != n) {
            return bad(format!("entries must be {n}x{n}"));
        }
        if self.class_sizes.contains(&0) {
            return bad("class sizes must be positive".into());
        }
        if self.class_sizes.iter().sum::<u64>() != self.order {
            return bad("class sizes do not sum to the order".into());
        }
        if self.class_sizes[0] != 1 {
            return bad("class 0 must be the identity class".into());
        }
        let tol = TABLE_TOLERANCE;
        if self.entries[0].iter().any(|z| (z - Complex64::new(1.0, 0.0)).norm() > tol) {
            return bad("row 0 must be the trivial character".into());
        }
        for (i, row) in self.entries.iter().enumerate() {
            let d = row[0];
            if d.im.abs() > tol || d.re < 1.0 - tol || (d.re - d.re.round()).abs() > tol {
                return bad(format!("degree of character {i} is not a positive integer"));
            }
        }
        let order = self.order as f64;
        for i in 0..n {
            for k in 0..n {
                let s: Complex64 = (0..n)
                    .map(|j| self.entries[i][j] * self.entries[k][j].conj() * self.class_sizes[j] as f64)
                    .sum();
                let expected = if i == k { order } else { 0.0 };
                if (s - Complex64::new(expected, 0.0)).norm() > tol * order.max(1.0) {
                    return bad(format!("rows {i} and {k} fail orthogonality"));
                }
            }
        }
        for (m, map) in &self.power_maps {
            if map.len() != n || map.iter().any(|&c| c >= n) || map[0] != 0 {
                return bad(format!("power map {m} is malformed"));
            }
        }
        Ok(())
    }

    pub fn n_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn power_maps(&self) -> &BTreeMap<u32, Vec<usize>> {
        &self.power_maps
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r[0].re.round() as u64).collect()
    }

    /// Same characters with classes reordered: new column `j` is old column `perm[j]`.
    pub fn permute_classes(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_classes();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidTable("class permutation is not a bijection".into()));
        }
        let mut inverse = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let power_maps = self
            .power_maps
            .iter()
            .map(|(&m, map)| (m, perm.iter().map(|&old| inverse[map[old]]).collect()))
            .collect();
        Self::new(
            self.order,
            perm.iter().map(|&p| self.class_sizes[p]).collect(),
            self.entries.iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect(),
            power_maps,
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = file
            .entries
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let mut power_maps = BTreeMap::new();
        for (k, v) in file.power_maps {
            let m: u32 = k.parse().map_err(|_| Error::Parse(format!("bad power map key {k:?}")))?;
            power_maps.insert(m, v);
        }
        Self::new(file.order, file.class_sizes, entries, power_maps)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let file = TableFile {
            order: self.order,
            class_sizes: self.class_sizes.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
            power_maps: self.power_maps.iter().map(|(m, v)| (m.to_string(), v.clone())).collect(),
        };
        serde_json::to_string_pretty(&file).expect("table serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: u64,
    class_sizes: Vec<u64>,
    entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    power_maps: BTreeMap<String, Vec<usize>>,
}

fn near_integer(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    ((z.re - r).abs() <= TABLE_TOLERANCE && z.im.abs() <= TABLE_TOLERANCE).then_some(r as i64)
}

/// Fusion ring of a character table via the orthogonality sum
/// `N_{ij}^k = (1/d) sum_t |C_t| chi_i(t) chi_j(t) conj(chi_k(t))`, rounded and verified.
pub fn ring_from_character_table(ct: &CharacterTable) -> Result<FusionRing> {
    ct.check()?;
    let n = ct.n_classes();
    let order = ct.order as f64;
    let e = &ct.entries;
    let mut coeffs = vec![vec![vec![0u64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s: Complex64 = (0..n)
                    .map(|t| e[i][t] * e[j][t] * e[k][t].conj() * ct.class_sizes[t] as f64)
                    .sum::<Complex64>()
                    / order;
                match near_integer(s) {
                    Some(v) if v >= 0 => coeffs[i][j][k] = v as u64,
                    _ => return Err(Error::NonIntegralCoefficient { i, j, k, value: s.re }),
                }
            }
        }
    }
    let mut dual = Vec::with_capacity(n);
    for i in 0..n {
        let matches: Vec<usize> = (0..n)
            .filter(|&k| (0..n).all(|t| (e[k][t] - e[i][t].conj()).norm() <= TABLE_TOLERANCE))
            .collect();
        match matches.as_slice() {
            [k] => dual.push(*k),
            _ => return Err(Error::InvalidTable(format!("no unique dual for character {i}"))),
        }
    }
    FusionRing::new(ct.degrees(), dual, coeffs, None, true)
}
