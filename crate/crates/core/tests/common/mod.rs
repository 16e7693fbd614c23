#![allow(dead_code)]

use hopfnil::class_algebra::ClassData;
use hopfnil::fixtures;
use hopfnil::fusion::{ring_from_character_table, CharacterTable, FusionRing};
use hopfnil::group::{self, parse_generators, ConjugacyClasses, FiniteGroup, Permutation};
use hopfnil::rational::{RatMatrix, Rational};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub const GROUPS: &[&str] = &["c2", "c4", "c2xc2", "s3", "d4", "q8", "a4", "d6", "s4"];

pub fn shipped_ring(name: &str) -> FusionRing {
    FusionRing::from_json_str(fixtures::ring(name).expect("shipped ring")).unwrap()
}

pub fn shipped_rings() -> Vec<(&'static str, FusionRing)> {
    fixtures::ring_names().map(|n| (n, shipped_ring(n))).collect()
}

pub fn shipped_table(name: &str) -> CharacterTable {
    CharacterTable::from_json_str(fixtures::table(name).expect("shipped table")).unwrap()
}

pub fn shipped_gens(name: &str) -> Vec<Permutation> {
    parse_generators(fixtures::generators(name).expect("shipped generators")).unwrap()
}

pub fn shipped_group(name: &str) -> FiniteGroup {
    FiniteGroup::from_generators(&shipped_gens(name), group::DEFAULT_MAX_ORDER).unwrap()
}

/// Group, classes, aligned table, class data and table ring for a shipped group.
pub struct GroupCase {
    pub name: &'static str,
    pub group: FiniteGroup,
    pub classes: ConjugacyClasses,
    pub table: CharacterTable,
    pub class_data: ClassData,
    pub ring: FusionRing,
}

pub fn group_case(name: &'static str) -> GroupCase {
    let group = shipped_group(name);
    group_case_from(name, group, &shipped_table(name))
}

pub fn group_case_from(name: &'static str, group: FiniteGroup, table: &CharacterTable) -> GroupCase {
    let classes = group::conjugacy_classes(&group);
    let table = group::align_character_table(&group, &classes, table).unwrap();
    let class_data = group::class_data(&group, &classes, Some(&table)).unwrap();
    let ring = ring_from_character_table(&table).unwrap();
    GroupCase { name, group, classes, table, class_data, ring }
}

/// `R (x) R'` with basis pairs `(i, i')` at index `i * n' + i'`.
pub fn tensor_ring(a: &FusionRing, b: &FusionRing) -> FusionRing {
    let (n, m) = (a.rank(), b.rank());
    let idx = |i: usize, j: usize| i * m + j;
    let mut coeffs = vec![vec![vec![0u64; n * m]; n * m]; n * m];
    for i in 0..n {
        for i2 in 0..m {
            for j in 0..n {
                for j2 in 0..m {
                    for k in 0..n {
                        for k2 in 0..m {
                            coeffs[idx(i, i2)][idx(j, j2)][idx(k, k2)] = a.n(i, j, k) * b.n(i2, j2, k2);
                        }
                    }
                }
            }
        }
    }
    let degrees = (0..n * m).map(|x| a.degree(x / m) * b.degree(x % m)).collect();
    let dual = (0..n * m).map(|x| idx(a.dual(x / m), b.dual(x % m))).collect();
    FusionRing::new(degrees, dual, coeffs, None, a.is_quasitriangular() && b.is_quasitriangular()).unwrap()
}

/// Character table of `G x H` from those of `G` and `H`.
pub fn tensor_table(a: &CharacterTable, b: &CharacterTable) -> CharacterTable {
    let (n, m) = (a.n_classes(), b.n_classes());
    let sizes = (0..n * m).map(|x| a.class_sizes()[x / m] * b.class_sizes()[x % m]).collect();
    let entries = (0..n * m)
        .map(|r| (0..n * m).map(|c| a.entry(r / m, c / m) * b.entry(r % m, c % m)).collect())
        .collect();
    CharacterTable::new(a.order() * b.order(), sizes, entries, BTreeMap::new()).unwrap()
}

/// Generators of `G x H` acting on disjoint point sets.
pub fn product_generators(a: &[Permutation], b: &[Permutation]) -> Vec<Permutation> {
    let da = a.iter().map(Vec::len).max().unwrap_or(0);
    let db = b.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::new();
    for g in a {
        let mut p: Permutation = (0..da + db).collect();
        p[..g.len()].copy_from_slice(g);
        out.push(p);
    }
    for h in b {
        let mut p: Permutation = (0..da + db).collect();
        for (x, &y) in h.iter().enumerate() {
            p[da + x] = da + y;
        }
        out.push(p);
    }
    out
}

/// `det(M)` by fraction-field Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

/// Coefficients (low to high) of `det(x I - A)`, by evaluating at `x = 0..=n`
/// and Lagrange interpolation.
pub fn char_poly_by_interpolation(a: &RatMatrix) -> Vec<Rational> {
    let n = a.rows();
    let xs: Vec<Rational> = (0..=n as i64).map(|x| Rational::from_integer(x.into())).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = if i == j { x.clone() } else { Rational::zero() };
                            d - &a[(i, j)]
                        })
                        .collect()
                })
                .collect();
            determinant(rows)
        })
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (i, xi) in xs.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &ys[i] / &denom;
        }
    }
    coeffs
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
