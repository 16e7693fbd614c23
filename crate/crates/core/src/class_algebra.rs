//! The normalized-class-sum side: central distribution elements, distribution
//! functions, the commutator operator in the `eta` basis and the basis change
//! from scaled idempotents.
//!
//! The primitive idempotents `F_i` of the character ring are never built;
//! statements about them go through the pairing `<F_i, eta_j> = delta_ij`.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::commutator::{Basis, CentralVector, CommutatorMatrix};
use crate::error::{Error, Result};
use crate::fusion::{CharacterTable, FusionRing};
use crate::rational::{exact, format_rational, from_u64, is_non_negative, parse_rational, to_f64, RatMatrix, Rational};
use crate::spectral::{self, convergence_bound};

/// Tolerance for every comparison that goes through the character table.
pub const XI_TOLERANCE: f64 = 1e-9;

/// `eta_i eta_j = sum_k q(i, j, k) eta_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaStructure {
    n: usize,
    q: Vec<Rational>,
}

impl EtaStructure {
    pub fn new(q: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = q.len();
        if q.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidClassData(format!("eta structure must be {n}x{n}x{n}")));
        }
        Ok(Self { n, q: q.into_iter().flatten().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut q = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    q.push(f(i, j, k));
                }
            }
        }
        Self { n, q }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.q[(i * self.n + j) * self.n + k]
    }

    /// Coefficients of `eta_i eta_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.n).map(|k| self.q(i, j, k).clone()).collect()
    }

    fn to_strings(&self) -> Vec<Vec<Vec<String>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| (0..self.n).map(|k| format_rational(self.q(i, j, k))).collect())
                    .collect()
            })
            .collect()
    }
}

/// Conjugacy data of a semisimple Hopf algebra with commutative character ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassData {
    dims: Vec<u64>,
    total: u64,
    xi: Option<Vec<Vec<Complex64>>>,
    class_dual: Vec<usize>,
    eta_structure: Option<EtaStructure>,
}

impl ClassData {
    pub fn new(
        dims: Vec<u64>,
        total: u64,
        xi: Option<Vec<Vec<Complex64>>>,
        class_dual: Vec<usize>,
        eta_structure: Option<EtaStructure>,
    ) -> Result<Self> {
        let n = dims.len();
        let bad = |m: String| Err(Error::InvalidClassData(m));
        if n == 0 {
            return bad("no classes".into());
        }
        if dims[0] != 1 {
            return bad("class 0 must have dimension 1".into());
        }
        if dims.contains(&0) || dims.iter().sum::<u64>() != total {
            return bad("class dimensions must be positive and sum to the total".into());
        }
        if class_dual.len() != n
            || class_dual.iter().any(|&c| c >= n)
            || class_dual[0] != 0
            || (0..n).any(|i| class_dual[class_dual[i]] != i)
        {
            return bad("class duality must be an involution fixing 0".into());
        }
        if let Some(xi) = &xi {
            if xi.len() != n || xi.iter().any(|r| r.len() != n) {
                return bad(format!("xi must be {n}x{n}"));
            }
            if xi[0].iter().any(|z| (z - Complex64::one()).norm() > XI_TOLERANCE.sqrt()) {
                return bad("xi row 0 must be all ones".into());
            }
            let mut sum_sq = 0.0;
            for (i, row) in xi.iter().enumerate() {
                let d = row[0];
                if d.im.abs() > 1e-6 || d.re < 0.5 || (d.re - d.re.round()).abs() > 1e-6 {
                    return bad(format!("xi[{i}][0] is not a positive integer degree"));
                }
                sum_sq += d.re.round() * d.re.round();
            }
            if (sum_sq - total as f64).abs() > 0.5 {
                return bad("squared degrees do not sum to the total dimension".into());
            }
        }
        if let Some(q) = &eta_structure {
            if q.rank() != n {
                return bad("eta structure rank differs from the number of classes".into());
            }
            for j in 0..n {
                for k in 0..n {
                    let delta = Rational::from_integer(i64::from(j == k).into());
                    if *q.q(0, j, k) != delta {
                        return bad(format!("eta_0 * eta_{j} is not eta_{j}"));
                    }
                }
            }
        }
        Ok(Self { dims, total, xi, class_dual, eta_structure })
    }

    /// Class data of a group algebra read off its character table. Structure
    /// constants come from `q(i, j, k) = (|C_k| / |G|) sum_x chi_x(g_i) chi_x(g_j) conj(chi_x(g_k)) / chi_x(1)`,
    /// recovered exactly as `t / (|C_i| |C_j|)` with `t` a rounded integer.
    pub fn from_character_table(ct: &CharacterTable) -> Result<Self> {
        let n = ct.n_classes();
        let e = ct.entries();
        let sizes = ct.class_sizes();
        let degrees = ct.degrees();
        let class_dual = (0..n)
            .map(|j| {
                (0..n)
                    .find(|&k| (0..n).all(|x| (e[x][j].conj() - e[x][k]).norm() <= 1e-6))
                    .ok_or_else(|| Error::InvalidTable(format!("no inverse class for column {j}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut q = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s: Complex64 = (0..n)
                        .map(|x| e[x][i] * e[x][j] * e[x][k].conj() / degrees[x] as f64)
                        .sum();
                    let t = s * (sizes[k] * sizes[i] * sizes[j]) as f64 / ct.order() as f64;
                    let r = t.re.round();
                    if (t - Complex64::new(r, 0.0)).norm() > 1e-6 || r < 0.0 {
                        return Err(Error::InvalidTable(format!(
                            "class product count ({i}, {j}, {k}) = {t} is not a non-negative integer"
                        )));
                    }
                    q[i][j][k] = Rational::new((r as u64).into(), (sizes[i] * sizes[j]).into());
                }
            }
        }
        Self::new(
            sizes.to_vec(),
            ct.order(),
            Some(e.to_vec()),
            class_dual,
            Some(EtaStructure::new(q)?),
        )
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn xi(&self) -> Option<&[Vec<Complex64>]> {
        self.xi.as_deref()
    }

    pub fn class_dual(&self) -> &[usize] {
        &self.class_dual
    }

    pub fn eta_structure(&self) -> Option<&EtaStructure> {
        self.eta_structure.as_ref()
    }

    pub fn max_class_dim(&self) -> u64 {
        self.dims.iter().copied().max().unwrap_or(1)
    }

    fn require_xi(&self) -> Result<&[Vec<Complex64>]> {
        self.xi().ok_or(Error::MissingStructure("generalized character table xi"))
    }

    /// `d_j = xi_{j0}`.
    pub fn degrees(&self) -> Result<Vec<u64>> {
        Ok(self.require_xi()?.iter().map(|r| r[0].re.round() as u64).collect())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: ClassFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let xi = f.xi.map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                .collect()
        });
        let eta = match f.eta_structure {
            Some(q) => Some(EtaStructure::new(
                q.iter()
                    .map(|a| {
                        a.iter()
                            .map(|b| b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            )?),
            None => None,
        };
        Self::new(f.dims, f.total, xi, f.class_dual, eta)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let f = ClassFile {
            dims: self.dims.clone(),
            total: self.total,
            xi: self
                .xi
                .as_ref()
                .map(|x| x.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()),
            class_dual: self.class_dual.clone(),
            eta_structure: self.eta_structure.as_ref().map(EtaStructure::to_strings),
        };
        serde_json::to_string_pretty(&f).expect("class data serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct ClassFile {
    dims: Vec<u64>,
    total: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<Vec<[f64; 2]>>>,
    class_dual: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eta_structure: Option<Vec<Vec<Vec<String>>>>,
}

/// `Lambda = sum_i (dim C_i / d) eta_i`.
pub fn uniform_integral(cd: &ClassData) -> CentralVector<Rational> {
    let d = from_u64(cd.total);
    CentralVector::new(
        Basis::NormalizedClassSum,
        cd.dims.iter().map(|&c| from_u64(c) / &d).collect(),
    )
}

/// Non-negative `eta` coefficients summing to 1.
pub fn is_central_distribution(z: &CentralVector<Rational>) -> Result<bool> {
    z.expect_basis(Basis::NormalizedClassSum)?;
    Ok(z.coefficients.iter().all(is_non_negative) && z.counit().is_one())
}

/// [`is_central_distribution`] for coefficients obtained through `xi`.
pub fn is_central_distribution_approx(z: &CentralVector<Complex64>, tol: f64) -> Result<bool> {
    z.expect_basis(Basis::NormalizedClassSum)?;
    let sum: Complex64 = z.coefficients.iter().sum();
    Ok(z.coefficients.iter().all(|c| c.re >= -tol && c.im.abs() <= tol)
        && (sum - Complex64::one()).norm() <= tol)
}

/// Matrix of `T` in the `eta` basis: column `i` is `eta_i eta_{i*}`, i.e. `M_{ki} = q(i, i*, k)`.
pub fn eta_commutator_matrix(cd: &ClassData) -> Result<RatMatrix> {
    let q = cd.eta_structure().ok_or(Error::MissingStructure("eta structure constants"))?;
    let n = cd.n();
    Ok(RatMatrix::from_fn(n, n, |k, i| q.q(i, cd.class_dual[i], k).clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StochasticityReport {
    pub non_negative: bool,
    pub column_sums_one: bool,
    /// `M_{0i} = 1 / dim C_i` for every column.
    pub identity_entries: bool,
}

impl StochasticityReport {
    pub fn all(&self) -> bool {
        self.non_negative && self.column_sums_one && self.identity_entries
    }
}

pub fn stochasticity_report(m: &RatMatrix, cd: &ClassData) -> StochasticityReport {
    let n = m.rows();
    StochasticityReport {
        non_negative: m.entries().all(is_non_negative),
        column_sums_one: (0..n).all(|i| m.column(i).iter().sum::<Rational>().is_one()),
        identity_entries: (0..n)
            .all(|i| m[(0, i)] == Rational::new(1.into(), cd.dims[i].into())),
    }
}

/// Scaled-idempotent coordinates to `eta` coordinates:
/// `E_j / d_j^2 = (1 / (d d_j)) sum_i xi_{j,i*} dim(C_i) eta_i`.
pub fn change_basis_e_to_eta(
    cd: &ClassData,
    v: &CentralVector<Rational>,
) -> Result<CentralVector<Complex64>> {
    v.expect_basis(Basis::ScaledIdempotent)?;
    let xi = cd.require_xi()?;
    let n = cd.n();
    if v.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: v.len() });
    }
    let xm = DMatrix::from_fn(n, n, |i, j| xi[i][j]);
    if xm.clone().try_inverse().is_none() {
        return Err(Error::Singular("generalized character table"));
    }
    let degrees = cd.degrees()?;
    let d = cd.total as f64;
    let coefficients = (0..n)
        .map(|i| {
            let star = cd.class_dual[i];
            (0..n)
                .map(|j| {
                    xi[j][star] * (to_f64(&v.coefficients[j]) * cd.dims[i] as f64
                        / (d * degrees[j] as f64))
                })
                .sum()
        })
        .collect();
    Ok(CentralVector::new(Basis::NormalizedClassSum, coefficients))
}

/// Identity mass of a scaled-idempotent vector from the ring alone: the `eta_0` coefficient of `sum_j b_j E_j / d_j^2` is `sum_j b_j / dim H`.
pub fn identity_mass(ring: &FusionRing, v: &CentralVector<Rational>) -> Result<Rational> {
    v.expect_basis(Basis::ScaledIdempotent)?;
    Ok(v.coefficients.iter().sum::<Rational>() / from_u64(ring.dimension()))
}

/// `alpha_m`, the `eta_0` coefficient of `M^m z0`, for `m = 0 ..= steps`.
pub fn identity_mass_trajectory(
    m: &RatMatrix,
    z0: &CentralVector<Rational>,
    steps: usize,
) -> Result<Vec<Rational>> {
    z0.expect_basis(Basis::NormalizedClassSum)?;
    let mut z = z0.coefficients.clone();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(z[0].clone());
    for _ in 0..steps {
        z = m.mul_vec(&z)?;
        out.push(z[0].clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub m: usize,
    #[serde(with = "exact")]
    pub alpha: Rational,
    /// Upper bound on `1 - alpha`.
    #[serde(with = "exact")]
    pub bound: Rational,
}

impl ConvergenceRow {
    pub fn within_bound(&self) -> bool {
        Rational::one() - &self.alpha <= self.bound
    }
}

/// Identity masses of `T^m(z0)` next to their convergence bounds.
pub fn convergence_table(
    cd: &ClassData,
    m: &RatMatrix,
    z0: &CentralVector<Rational>,
    steps: usize,
) -> Result<Vec<ConvergenceRow>> {
    let alphas = identity_mass_trajectory(m, z0, steps)?;
    let alpha0 = alphas[0].clone();
    alphas
        .into_iter()
        .enumerate()
        .map(|(step, alpha)| {
            Ok(ConvergenceRow {
                m: step,
                alpha,
                bound: convergence_bound(cd.dims(), &alpha0, step as u32)?,
            })
        })
        .collect()
}

/// `f = sum_i c_i s(chi_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionFunction {
    #[serde(with = "exact::vec")]
    pub coefficients: Vec<Rational>,
    pub total_dim: u64,
}

impl DistributionFunction {
    /// `<f, Lambda>`; `<s(chi_i), Lambda> = delta_{i0}`.
    pub fn pairing_with_integral(&self) -> Rational {
        self.coefficients[0].clone()
    }

    /// `<f, eta_j> = sum_i c_i xi_{i,j*}`.
    pub fn eta_pairings(&self, cd: &ClassData) -> Result<Vec<Complex64>> {
        let xi = cd.require_xi()?;
        let n = cd.n();
        if self.coefficients.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: self.coefficients.len() });
        }
        Ok((0..n)
            .map(|j| {
                let star = cd.class_dual[j];
                (0..n).map(|i| xi[i][star] * to_f64(&self.coefficients[i])).sum()
            })
            .collect())
    }

    /// Both distribution-function conditions: `<f, Lambda> = 1/d` exactly, and
    /// every `<f, eta_j>` a non-negative real (to `tol`).
    pub fn satisfies_conditions(&self, cd: &ClassData, tol: f64) -> Result<bool> {
        let lambda_ok = self.pairing_with_integral() == Rational::new(1.into(), self.total_dim.into());
        let eta_ok = self
            .eta_pairings(cd)?
            .iter()
            .all(|z| z.re >= -tol && z.im.abs() <= tol);
        Ok(lambda_ok && eta_ok)
    }
}

/// `f_z = (1/d) sum_i <chi_i, z> s(chi_i)` with `<chi_i, E_j/d_j^2> = delta_ij / d_j`.
pub fn distribution_function(ring: &FusionRing, z: &CentralVector<Rational>) -> Result<DistributionFunction> {
    z.expect_basis(Basis::ScaledIdempotent)?;
    let n = ring.rank();
    if z.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: z.len() });
    }
    let d = ring.dimension();
    Ok(DistributionFunction {
        coefficients: z
            .coefficients
            .iter()
            .zip(ring.degrees())
            .map(|(b, &di)| b / from_u64(d * di))
            .collect(),
        total_dim: d,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiAdReport {
    /// `chi_ad = sum_i (d / dim C_i) F_i`.
    #[serde(with = "exact::vec")]
    pub chi_ad: Vec<Rational>,
    /// `F`-coefficients of the distribution function of `z_ad = (1/n) sum eta_i`.
    #[serde(with = "exact::vec")]
    pub f_zad: Vec<Rational>,
    /// `f_zad = chi_ad / (n d)`, exact.
    pub scaled_match: bool,
    /// Largest deviation of the same coefficients computed through `xi`, when `xi` is present.
    pub xi_route_deviation: Option<f64>,
}

pub fn chi_ad_report(cd: &ClassData) -> Result<ChiAdReport> {
    let n = cd.n();
    let d = from_u64(cd.total);
    let chi_ad: Vec<Rational> = cd.dims.iter().map(|&c| &d / from_u64(c)).collect();
    let f_zad: Vec<Rational> = cd
        .dims
        .iter()
        .map(|&c| Rational::new(1.into(), (n as u64 * c).into()))
        .collect();
    let scale = from_u64(n as u64) * &d;
    let scaled_match = chi_ad.iter().zip(&f_zad).all(|(a, f)| a / &scale == *f);

    let xi_route_deviation = match cd.xi() {
        None => None,
        Some(xi) => {
            // <chi_i, z_ad> = (1/n) sum_k xi_ik, then <f, eta_j> = (1/d) sum_i <chi_i, z> xi_{i,j*}
            let pair: Vec<Complex64> = xi
                .iter()
                .map(|row| row.iter().sum::<Complex64>() / n as f64)
                .collect();
            let dev = (0..n)
                .map(|j| {
                    let star = cd.class_dual[j];
                    let v: Complex64 =
                        (0..n).map(|i| pair[i] * xi[i][star]).sum::<Complex64>() / cd.total as f64;
                    (v - to_f64(&f_zad[j])).norm()
                })
                .fold(0.0, f64::max);
            Some(dev)
        }
    };
    Ok(ChiAdReport { chi_ad, f_zad, scaled_match, xi_route_deviation })
}

/// Similar matrices share a characteristic polynomial; compared exactly.
pub fn similarity_check(a: &RatMatrix, m: &RatMatrix) -> Result<bool> {
    if !a.is_square() || a.rows() != m.rows() || m.rows() != m.cols() {
        return Err(Error::LengthMismatch { expected: a.rows(), found: m.rows() });
    }
    Ok(spectral::char_poly(a) == spectral::char_poly(m))
}

/// `max |M P - P A|` for `P_{ij} = dim(C_i) xi_{j,i*} / d_j`, the change of basis
/// from scaled idempotents to normalized class sums (up to the scalar `1/d`).
pub fn conjugacy_residual(cd: &ClassData, a: &CommutatorMatrix, m: &RatMatrix) -> Result<f64> {
    let xi = cd.require_xi()?;
    let n = cd.n();
    if a.rank() != n || m.rows() != n {
        return Err(Error::LengthMismatch { expected: n, found: a.rank() });
    }
    let degrees = cd.degrees()?;
    let p = DMatrix::from_fn(n, n, |i, j| {
        xi[j][cd.class_dual[i]] * (cd.dims[i] as f64 / degrees[j] as f64)
    });
    let to_c = |r: &RatMatrix| DMatrix::from_fn(n, n, |i, j| Complex64::new(to_f64(&r[(i, j)]), 0.0));
    let diff = to_c(m) * &p - &p * to_c(a.matrix());
    Ok(diff.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// The point mass `eta_i`.
pub fn eta_point_mass(n: usize, i: usize) -> CentralVector<Rational> {
    let mut c = vec![Rational::zero(); n];
    c[i] = Rational::one();
    CentralVector::new(Basis::NormalizedClassSum, c)
}
