//! Characteristic polynomials, the exact spectral nilpotency test, numeric
//! spectra and the geometric convergence bound for the identity mass.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::commutator::CommutatorMatrix;
use crate::error::{Error, Result};
use crate::rational::{format_rational, from_u64, to_f64, RatMatrix, Rational};

/// Residual tolerance for numeric eigenvalues against the exact polynomial.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;
/// Margin by which the secondary radius must stay below 1 for quasitriangular input.
pub const RADIUS_MARGIN: f64 = 1e-9;

/// Monic polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    coefficients: Vec<Rational>,
}

impl CharPoly {
    pub fn from_coefficients(coefficients: Vec<Rational>) -> Result<Self> {
        match coefficients.last() {
            Some(c) if c.is_one() => Ok(Self { coefficients }),
            _ => Err(Error::Parse("characteristic polynomial must be monic".into())),
        }
    }

    /// `x^a (x - 1)^b`.
    pub fn zero_one(zeros: usize, ones: usize) -> Self {
        let mut p = vec![Rational::zero(); zeros];
        p.push(Rational::one());
        for _ in 0..ones {
            // multiply by (x - 1)
            let mut next = vec![Rational::zero(); p.len() + 1];
            for (k, c) in p.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c;
            }
            p = next;
        }
        Self { coefficients: p }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of `x^k`, constant term first.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + to_f64(c))
    }

    /// `P(A)` by Horner's rule, exact.
    pub fn eval_matrix(&self, a: &RatMatrix) -> RatMatrix {
        let n = a.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            acc = &acc * a;
            acc.add_scaled_identity(c);
        }
        acc
    }

    /// Multiplicity of `root`, by repeated exact division by `(x - root)`.
    pub fn root_multiplicity(&self, root: &Rational) -> usize {
        let mut p = self.coefficients.clone();
        let mut mult = 0;
        while p.len() > 1 {
            // synthetic division, highest coefficient first
            let mut quotient = vec![Rational::zero(); p.len() - 1];
            let mut carry = Rational::zero();
            for k in (1..p.len()).rev() {
                carry = &carry * root + &p[k];
                quotient[k - 1] = carry.clone();
            }
            let remainder = carry * root + &p[0];
            if !remainder.is_zero() {
                break;
            }
            mult += 1;
            p = quotient;
        }
        mult
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(format_rational).collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 || !abs.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            }
            f.write_str(&mono)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CharPoly", 2)?;
        st.serialize_field("coefficients_low_to_high", &self.coefficient_strings())?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// Exact `det(xI - A)` by the Faddeev–LeVerrier recursion over the rationals.
pub fn char_poly(a: &RatMatrix) -> CharPoly {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    // am = A * M_{k-1}, with M_0 = 0
    let mut am = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut m = am;
        m.add_scaled_identity(&c[n - k + 1]);
        am = a * &m;
        c[n - k] = -am.trace() / from_u64(k as u64);
    }
    CharPoly { coefficients: c }
}

/// Whether `char_poly(A) = x^{n-1}(x - 1)` exactly.
pub fn spectral_nilpotency_test(a: &RatMatrix) -> bool {
    let n = a.rows();
    n > 0 && char_poly(a) == CharPoly::zero_one(n - 1, 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub exact_poly: CharPoly,
    /// Sorted by decreasing modulus; exact roots 1 and 0 are reported exactly.
    pub numeric_eigenvalues: Vec<Complex64>,
    pub unit_multiplicity: usize,
    pub zero_multiplicity: usize,
    /// `max |c|` over eigenvalues other than the `unit_multiplicity` copies of 1; 0 if none.
    pub secondary_radius: f64,
    pub max_residual: f64,
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let eig: Vec<[f64; 2]> = self.numeric_eigenvalues.iter().map(|z| [z.re, z.im]).collect();
        let mut st = s.serialize_struct("SpectrumReport", 6)?;
        st.serialize_field("char_poly", &self.exact_poly)?;
        st.serialize_field("eigenvalues", &eig)?;
        st.serialize_field("unit_multiplicity", &self.unit_multiplicity)?;
        st.serialize_field("zero_multiplicity", &self.zero_multiplicity)?;
        st.serialize_field("secondary_radius", &self.secondary_radius)?;
        st.serialize_field("max_residual", &self.max_residual)?;
        st.end()
    }
}

fn take_nearest(values: &mut Vec<Complex64>, target: Complex64, count: usize) {
    for _ in 0..count {
        if let Some((idx, _)) = values
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_nan())
            .min_by(|(_, a), (_, b)| (**a - target).norm().total_cmp(&(**b - target).norm()))
        {
            values.swap_remove(idx);
        }
    }
}

/// Numeric spectrum of the float image of `a`, with the multiplicities of the
/// roots 0 and 1 taken from the exact characteristic polynomial.
pub fn numeric_spectrum(a: &RatMatrix) -> Result<SpectrumReport> {
    let poly = char_poly(a);
    let n = a.rows();
    let raw: Vec<Complex64> = if n == 0 {
        Vec::new()
    } else {
        a.to_f64().complex_eigenvalues().iter().copied().collect()
    };

    let mut max_residual = 0.0f64;
    for &z in &raw {
        let scale: f64 = poly
            .coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| to_f64(c).abs() * z.norm().powi(k as i32))
            .sum::<f64>()
            .max(1.0);
        let r = poly.eval_complex(z).norm() / scale;
        if !r.is_finite() {
            return Err(Error::NumericFailure(format!("non-finite eigenvalue {z}")));
        }
        max_residual = max_residual.max(r);
    }
    if max_residual > RESIDUAL_TOLERANCE {
        return Err(Error::NumericFailure(format!(
            "eigenvalue residual {max_residual:e} exceeds {RESIDUAL_TOLERANCE:e}"
        )));
    }

    let unit_multiplicity = poly.root_multiplicity(&Rational::one());
    let zero_multiplicity = poly.root_multiplicity(&Rational::zero());
    let mut rest = raw;
    take_nearest(&mut rest, Complex64::new(1.0, 0.0), unit_multiplicity);
    take_nearest(&mut rest, Complex64::zero(), zero_multiplicity);
    let secondary_radius = rest.iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut eigenvalues = rest;
    eigenvalues.extend(std::iter::repeat_n(Complex64::new(1.0, 0.0), unit_multiplicity));
    eigenvalues.extend(std::iter::repeat_n(Complex64::zero(), zero_multiplicity));
    eigenvalues.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });

    Ok(SpectrumReport {
        exact_poly: poly,
        numeric_eigenvalues: eigenvalues,
        unit_multiplicity,
        zero_multiplicity,
        secondary_radius,
        max_residual,
    })
}

/// [`numeric_spectrum`] of a commutator matrix; for quasitriangular input the
/// report must have `secondary_radius < 1 - 1e-9`.
pub fn commutator_spectrum(a: &CommutatorMatrix) -> Result<SpectrumReport> {
    let report = numeric_spectrum(a.matrix())?;
    if a.is_quasitriangular() && report.secondary_radius >= 1.0 - RADIUS_MARGIN {
        return Err(Error::ContractViolated(format!(
            "secondary radius {} is not below 1 for a quasitriangular ring",
            report.secondary_radius
        )));
    }
    Ok(report)
}

/// Upper bound `(1 - alpha_0)(1 - 1/c)^m` on the non-identity mass of `T^m(z)`,
/// `c` the largest class dimension and `alpha_0` the identity mass of `z`.
pub fn convergence_bound(class_sizes: &[u64], alpha0: &Rational, m: u32) -> Result<Rational> {
    let c = class_sizes.iter().copied().max().unwrap_or(0);
    if c == 0 || class_sizes.contains(&0) {
        return Err(Error::OutOfRange("class sizes must be positive".into()));
    }
    if alpha0.is_negative() || *alpha0 > Rational::one() {
        return Err(Error::OutOfRange(format!("identity mass {alpha0} is not in [0, 1]")));
    }
    let ratio = Rational::one() - Rational::new(1.into(), c.into());
    Ok((Rational::one() - alpha0) * num_traits::pow(ratio, m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn s3_a() -> RatMatrix {
        RatMatrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(1), int(1), rat(1, 2)],
        ])
        .unwrap()
    }

    #[test]
    fn trivial_and_s3_polys() {
        let one = RatMatrix::identity(1);
        assert_eq!(char_poly(&one).coefficients(), &[int(-1), int(1)]);
        let p = char_poly(&s3_a());
        assert_eq!(p.coefficients(), &[int(0), rat(1, 2), rat(-3, 2), int(1)]);
        assert_eq!(p.to_string(), "x^3 - 3/2x^2 + 1/2x");
        assert!(!spectral_nilpotency_test(&s3_a()));
        assert!(spectral_nilpotency_test(&one));
    }

    #[test]
    fn zero_one_polys() {
        assert_eq!(CharPoly::zero_one(4, 1).to_string(), "x^5 - x^4");
        assert_eq!(CharPoly::zero_one(0, 2).to_string(), "x^2 - 2x + 1");
        let p = CharPoly::zero_one(3, 2);
        assert_eq!(p.root_multiplicity(&int(0)), 3);
        assert_eq!(p.root_multiplicity(&int(1)), 2);
        assert_eq!(p.root_multiplicity(&rat(1, 2)), 0);
    }

    #[test]
    fn s3_numeric() {
        let r = numeric_spectrum(&s3_a()).unwrap();
        assert_eq!(r.unit_multiplicity, 1);
        assert!((r.secondary_radius - 0.5).abs() < 1e-12);
        let re: Vec<f64> = r.numeric_eigenvalues.iter().map(|z| z.re).collect();
        assert_eq!(re.len(), 3);
        assert!((re[0] - 1.0).abs() < 1e-12 && (re[1] - 0.5).abs() < 1e-12 && re[2].abs() < 1e-12);
    }

    #[test]
    fn trivial_numeric() {
        let r = numeric_spectrum(&RatMatrix::identity(1)).unwrap();
        assert_eq!(r.numeric_eigenvalues, vec![Complex64::new(1.0, 0.0)]);
        assert_eq!(r.secondary_radius, 0.0);
    }

    #[test]
    fn bounds() {
        assert_eq!(convergence_bound(&[1, 3, 2], &int(1), 7).unwrap(), int(0));
        assert_eq!(convergence_bound(&[1, 3, 2], &rat(1, 6), 1).unwrap(), rat(5, 9));
        assert_eq!(convergence_bound(&[1, 1, 1], &rat(1, 3), 1).unwrap(), int(0));
        assert_eq!(convergence_bound(&[1, 1, 1], &rat(1, 3), 0).unwrap(), rat(2, 3));
        assert!(convergence_bound(&[1, 0], &int(1), 1).is_err());
        assert!(convergence_bound(&[1, 2], &int(2), 1).is_err());
    }

    #[test]
    fn cayley_hamilton_s3() {
        let a = s3_a();
        assert_eq!(char_poly(&a).eval_matrix(&a), RatMatrix::zeros(3, 3));
    }
}
