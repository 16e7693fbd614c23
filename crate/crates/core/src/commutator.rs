//! The commutator operator `T(z) = {z, Lambda}` on the center, its matrix
//! in the scaled-idempotent basis `E_i / d_i^2`, and the iterated
//! commutators `gamma_m = T^m(Lambda)`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::rational::{from_u64, RatMatrix, Rational};
use crate::spectral;

/// Default number of iterations used by symmetry checks and reports.
pub const DEFAULT_DEPTH: usize = 20;

/// Which basis of the center a coefficient vector refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    /// `E_i / d_i^2`, `E_i` the central primitive idempotents.
    ScaledIdempotent,
    /// `eta_i = C_i / dim(class_i)`.
    NormalizedClassSum,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::ScaledIdempotent => "scaled-idempotent",
            Basis::NormalizedClassSum => "normalized-class-sum",
        }
    }
}

/// Coefficients of a central element in a tagged basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralVector<T> {
    pub basis: Basis,
    pub coefficients: Vec<T>,
}

impl<T> CentralVector<T> {
    pub fn new(basis: Basis, coefficients: Vec<T>) -> Self {
        Self { basis, coefficients }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(Error::WrongBasis { expected: basis.name() })
        }
    }
}

impl CentralVector<Rational> {
    /// The counit `<epsilon, z>`: `<epsilon, E_i/d_i^2> = delta_{i0}` and `<epsilon, eta_i> = 1`.
    pub fn counit(&self) -> Rational {
        match self.basis {
            Basis::ScaledIdempotent => self.coefficients[0].clone(),
            Basis::NormalizedClassSum => self.coefficients.iter().sum(),
        }
    }

    /// `Lambda = E_0` in the scaled-idempotent basis.
    pub fn integral(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[0] = Rational::one();
        Self::new(Basis::ScaledIdempotent, c)
    }

    /// The unit `1 = sum_i d_i^2 (E_i / d_i^2)`.
    pub fn unit(degrees: &[u64]) -> Self {
        Self::new(
            Basis::ScaledIdempotent,
            degrees.iter().map(|&d| from_u64(d * d)).collect(),
        )
    }
}

/// `A_{ij} = N_{i,i*}^j / d_j`: the matrix of `T` with column `j` the image of `E_j / d_j^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorMatrix {
    matrix: RatMatrix,
    degrees: Vec<u64>,
    dual: Vec<usize>,
    quasitriangular: bool,
}

impl CommutatorMatrix {
    pub fn build(ring: &FusionRing) -> Result<Self> {
        ring.validated()?;
        Ok(Self::build_unchecked(ring))
    }

    fn build_unchecked(ring: &FusionRing) -> Self {
        let n = ring.rank();
        let matrix = RatMatrix::from_fn(n, n, |i, j| {
            Rational::new(ring.n(i, ring.dual(i), j).into(), ring.degree(j).into())
        });
        Self {
            matrix,
            degrees: ring.degrees().to_vec(),
            dual: ring.dual_map().to_vec(),
            quasitriangular: ring.is_quasitriangular(),
        }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[(i, j)]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    pub fn is_quasitriangular(&self) -> bool {
        self.quasitriangular
    }

    /// `A^m`, exact.
    pub fn power(&self, m: u32) -> RatMatrix {
        self.matrix.pow(m)
    }

    /// `u_i = d_i^2`, the coordinates of the unit. `A u = u`.
    pub fn fixed_vector(&self) -> Vec<Rational> {
        self.degrees.iter().map(|&d| from_u64(d * d)).collect()
    }

    /// `gamma_0, gamma_1, ...` as scaled-idempotent coefficient vectors,
    /// each obtained from the previous one by a single matrix-vector product.
    pub fn gammas(&self) -> Gammas<'_> {
        Gammas {
            matrix: &self.matrix,
            next: CentralVector::integral(self.rank()).coefficients,
        }
    }

    pub fn gamma(&self, m: usize) -> CentralVector<Rational> {
        let c = self.gammas().nth(m).expect("gamma iterator is infinite");
        CentralVector::new(Basis::ScaledIdempotent, c)
    }

    pub fn is_unit(&self, gamma: &[Rational]) -> bool {
        gamma.iter().zip(&self.degrees).all(|(g, &d)| *g == from_u64(d * d))
    }

    /// `{ i : <gamma, chi_i> = d_i }`, i.e. coefficient `i` equals `d_i^2`.
    pub fn support_of(&self, gamma: &[Rational]) -> BTreeSet<usize> {
        gamma
            .iter()
            .zip(&self.degrees)
            .enumerate()
            .filter(|(_, (g, &d))| **g == from_u64(d * d))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Infinite iterator over the iterated commutators.
pub struct Gammas<'a> {
    matrix: &'a RatMatrix,
    next: Vec<Rational>,
}

impl Iterator for Gammas<'_> {
    type Item = Vec<Rational>;

    fn next(&mut self) -> Option<Self::Item> {
        let following = self.matrix.mul_vec(&self.next).expect("square matrix");
        Some(std::mem::replace(&mut self.next, following))
    }
}

pub fn build_commutator_matrix(ring: &FusionRing) -> Result<CommutatorMatrix> {
    CommutatorMatrix::build(ring)
}

pub fn matrix_power(a: &CommutatorMatrix, m: u32) -> RatMatrix {
    a.power(m)
}

/// `gamma_m` in the scaled-idempotent basis (the first column of `A^m`).
pub fn gamma(ring: &FusionRing, m: usize) -> Result<CentralVector<Rational>> {
    Ok(CommutatorMatrix::build(ring)?.gamma(m))
}

/// `<gamma_m, chi_i> = (A^m)_{i0} / d_i`, always in `[0, d_i]`.
pub fn gamma_pairing(ring: &FusionRing, m: usize, i: usize) -> Result<Rational> {
    let n = ring.rank();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let g = gamma(ring, m)?;
    Ok(&g.coefficients[i] / from_u64(ring.degree(i)))
}

/// `S_m = { i : <gamma_m, chi_i> = d_i }`.
pub fn support(ring: &FusionRing, m: usize) -> Result<BTreeSet<usize>> {
    let a = CommutatorMatrix::build(ring)?;
    Ok(a.support_of(&a.gamma(m).coefficients))
}

/// Whether `subset` is closed under taking constituents of products.
pub fn is_based_subring(ring: &FusionRing, subset: &BTreeSet<usize>) -> bool {
    let n = ring.rank();
    subset.iter().all(|&i| {
        subset.iter().all(|&j| (0..n).all(|k| ring.n(i, j, k) == 0 || subset.contains(&k)))
    })
}

/// Outcome of the nilpotency decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyVerdict {
    /// Least `m` with `gamma_m = 1`, if one exists.
    pub index: Option<usize>,
    /// Whether the characteristic polynomial of `A` is `x^{n-1}(x - 1)`.
    pub spectral_accepts: bool,
    /// Largest `m` examined.
    pub searched_to: usize,
    /// `S_0, ..., S_{searched_to}`.
    pub support_chain: Vec<Vec<usize>>,
}

impl NilpotencyVerdict {
    pub fn is_nilpotent(&self) -> bool {
        self.index.is_some()
    }
}

/// Least `m <= n` with `gamma_m = 1`, cross-checked against the spectral criterion.
///
/// Requires every `chi_i chi_{i*}` to be central; otherwise the verdict is
/// undefined and `HypothesisNotMet` is returned.
pub fn nilpotency_index(ring: &FusionRing) -> Result<NilpotencyVerdict> {
    let a = CommutatorMatrix::build(ring)?;
    if !ring.check_centrality() {
        return Err(Error::HypothesisNotMet(
            "chi_i chi_{i*} is not central in the fusion ring".into(),
        ));
    }
    let n = a.rank();
    let mut index = None;
    let mut chain = Vec::new();
    for (m, g) in a.gammas().take(n + 1).enumerate() {
        chain.push(a.support_of(&g).into_iter().collect());
        if a.is_unit(&g) {
            index = Some(m);
            break;
        }
    }
    let spectral_accepts = spectral::spectral_nilpotency_test(a.matrix());
    if index.is_some() != spectral_accepts {
        return Err(Error::ContractViolated(format!(
            "fixed-point search ({index:?}) disagrees with spectral test ({spectral_accepts})"
        )));
    }
    Ok(NilpotencyVerdict {
        index,
        spectral_accepts,
        searched_to: chain.len() - 1,
        support_chain: chain,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSymmetryReport {
    /// `A_{ij} = A_{i*j}` for all `i, j`.
    pub matrix_symmetric: bool,
    /// Coefficient `i` of `gamma_m` equals coefficient `i*` for every `m` checked.
    pub gamma_symmetric: bool,
    pub gamma_symmetric_checked_to: usize,
}

/// Checks the duality symmetry of `A` and of `gamma_0 ..= gamma_{m_max}`.
/// Requires `chi_i chi_{i*} = chi_{i*} chi_i`.
pub fn dual_symmetry_report(ring: &FusionRing, m_max: usize) -> Result<DualSymmetryReport> {
    let a = CommutatorMatrix::build(ring)?;
    if !ring.is_self_dual_symmetric() {
        return Err(Error::HypothesisNotMet(
            "chi_i chi_{i*} differs from chi_{i*} chi_i".into(),
        ));
    }
    let n = a.rank();
    let dual = a.dual_map();
    let matrix_symmetric =
        (0..n).all(|i| (0..n).all(|j| a.entry(i, j) == a.entry(dual[i], j)));
    let gamma_symmetric = a
        .gammas()
        .take(m_max + 1)
        .all(|g| (0..n).all(|i| g[i] == g[dual[i]]));
    Ok(DualSymmetryReport {
        matrix_symmetric,
        gamma_symmetric,
        gamma_symmetric_checked_to: m_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn s3_ring() -> FusionRing {
        let mut n = vec![vec![vec![0; 3]; 3]; 3];
        for j in 0..3 {
            n[0][j][j] = 1;
            n[j][0][j] = 1;
        }
        n[1][1][0] = 1;
        n[1][2][2] = 1;
        n[2][1][2] = 1;
        n[2][2] = vec![1, 1, 1];
        FusionRing::new(vec![1, 1, 2], vec![0, 1, 2], n, None, true).unwrap()
    }

    /// Group ring of the cyclic group of order `k`, all degrees 1.
    fn cyclic(k: usize) -> FusionRing {
        let mut n = vec![vec![vec![0; k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                n[i][j][(i + j) % k] = 1;
            }
        }
        let dual = (0..k).map(|i| (k - i) % k).collect();
        FusionRing::new(vec![1; k], dual, n, None, true).unwrap()
    }

    #[test]
    fn trivial_ring_matrix() {
        let a = build_commutator_matrix(&FusionRing::trivial()).unwrap();
        assert_eq!(a.matrix(), &RatMatrix::identity(1));
    }

    #[test]
    fn s3_matrix() {
        let a = build_commutator_matrix(&s3_ring()).unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(1), int(1), rat(1, 2)],
        ])
        .unwrap();
        assert_eq!(a.matrix(), &expected);
        assert_eq!(a.power(2)[(2, 0)], rat(5, 2));
        assert_eq!(a.power(0), RatMatrix::identity(3));
    }

    #[test]
    fn degree_one_ring_matrix() {
        let a = build_commutator_matrix(&cyclic(5)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(*a.entry(i, j), int(i64::from(j == 0)));
            }
        }
    }

    #[test]
    fn invalid_ring_is_rejected() {
        let mut n = s3_ring().coefficient_array();
        n[2][2][0] = 2;
        let bad = FusionRing::new(vec![1, 1, 2], vec![0, 1, 2], n, None, true).unwrap();
        assert!(matches!(build_commutator_matrix(&bad), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn s3_gammas() {
        let ring = s3_ring();
        assert_eq!(gamma(&ring, 0).unwrap().coefficients, vec![int(1), int(0), int(0)]);
        assert_eq!(gamma(&ring, 1).unwrap().coefficients, vec![int(1); 3]);
        assert_eq!(gamma(&ring, 3).unwrap().coefficients, vec![int(1), int(1), rat(13, 4)]);
        assert_eq!(gamma_pairing(&ring, 2, 2).unwrap(), rat(5, 4));
        assert_eq!(gamma_pairing(&ring, 1, 2).unwrap(), rat(1, 2));
        assert_eq!(gamma_pairing(&ring, 0, 0).unwrap(), int(1));
        assert_eq!(gamma_pairing(&ring, 0, 1).unwrap(), int(0));
        assert!(matches!(gamma_pairing(&ring, 0, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn based_subrings_of_s3() {
        let ring = s3_ring();
        assert!(is_based_subring(&ring, &BTreeSet::from([0])));
        assert!(is_based_subring(&ring, &BTreeSet::from([0, 1])));
        assert!(!is_based_subring(&ring, &BTreeSet::from([0, 2])));
        assert_eq!(support(&ring, 0).unwrap(), BTreeSet::from([0]));
        assert_eq!(support(&ring, 1).unwrap(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn verdicts() {
        assert_eq!(nilpotency_index(&s3_ring()).unwrap().index, None);
        assert_eq!(nilpotency_index(&cyclic(4)).unwrap().index, Some(1));
        assert_eq!(nilpotency_index(&FusionRing::trivial()).unwrap().index, Some(0));
    }

    #[test]
    fn cyclic_dual_symmetry() {
        let ring = cyclic(4);
        assert_eq!(ring.dual(1), 3);
        let a = build_commutator_matrix(&ring).unwrap();
        assert_eq!(a.matrix().row(1), a.matrix().row(3));
        let r = dual_symmetry_report(&ring, DEFAULT_DEPTH).unwrap();
        assert!(r.matrix_symmetric && r.gamma_symmetric);
        assert_eq!(r.gamma_symmetric_checked_to, 20);
    }

    #[test]
    fn counit_of_gammas() {
        let a = build_commutator_matrix(&s3_ring()).unwrap();
        for m in 0..6 {
            assert_eq!(a.gamma(m).counit(), int(1));
        }
        assert!(a.is_unit(&CentralVector::unit(a.degrees()).coefficients));
    }
}
