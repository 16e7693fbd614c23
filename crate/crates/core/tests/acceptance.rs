//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use common::*;
use hopfnil::class_algebra::{self, stochasticity_report};
use hopfnil::commutator::{is_based_subring, nilpotency_index, CommutatorMatrix};
use hopfnil::group;
use hopfnil::rational::{from_u64, rat, to_f64, Rational};
use hopfnil::spectral::{char_poly, commutator_spectrum, spectral_nilpotency_test};
use num_traits::{One, Zero};

/// Largest power of `A` checked for the first-column identities.
const MAX_POWER: u32 = 20;
/// Secondary radius of S3 is 1/2 to this tolerance.
const S3_RADIUS_TOL: f64 = 1e-9;
/// Per-coefficient agreement of the brute-force and fusion routes.
const ORACLE_TOL: f64 = 1e-9;
/// Highest `m` in the oracle comparison.
const ORACLE_DEPTH: usize = 6;
/// Agreement of commutator counts with the character sum.
const FROBENIUS_TOL: f64 = 1e-6;
/// Secondary radius must stay below `1 - RADIUS_MARGIN`.
const RADIUS_MARGIN: f64 = 1e-9;
/// Steps of the convergence check.
const CONVERGENCE_STEPS: usize = 20;
/// `alpha_20` for S3 must exceed this.
const S3_ALPHA_20_FLOOR: f64 = 0.99;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn ac1_matrix_identities() -> Check {
    let rings = shipped_rings();
    for (name, ring) in &rings {
        let a = CommutatorMatrix::build(ring).map_err(|e| e.to_string())?;
        let n = a.rank();
        ensure((0..n).all(|i| a.entry(i, 0).is_one()), || format!("{name}: column 0 of A is not all ones"))?;
        let mut prev = a.power(0);
        for m in 0..=MAX_POWER {
            let p = if m == 0 { prev.clone() } else { a.matrix() * &prev };
            ensure(p[(0, 0)].is_one() && (1..n).all(|j| p[(0, j)].is_zero()), || {
                format!("{name}: row 0 of A^{m} is not (1, 0, ..., 0)")
            })?;
            if m >= 1 {
                for i in 0..n {
                    let s: Rational = prev.row(i).iter().sum();
                    ensure(p[(i, 0)] == s, || format!("{name}: (A^{m})_{{{i}0}} != row sum of A^{}", m - 1))?;
                }
            }
            prev = p;
        }
    }
    Ok(format!("{} rings, m <= {MAX_POWER}, exact", rings.len()))
}

fn ac2_fixed_vector() -> Check {
    let rings = shipped_rings();
    for (name, ring) in &rings {
        let a = CommutatorMatrix::build(ring).map_err(|e| e.to_string())?;
        let u: Vec<Rational> = ring.degrees().iter().map(|&d| from_u64(d * d)).collect();
        ensure(a.matrix().mul_vec(&u).map_err(|e| e.to_string())? == u, || format!("{name}: A u != u"))?;
    }
    Ok(format!("{} rings, exact", rings.len()))
}

fn ac3_verdicts() -> Check {
    let expected: [(&str, Option<usize>); 9] = [
        ("c2", Some(1)),
        ("c4", Some(1)),
        ("c2xc2", Some(1)),
        ("d4", Some(2)),
        ("q8", Some(2)),
        ("s3", None),
        ("a4", None),
        ("s4", None),
        ("d6", None),
    ];
    for (name, want) in expected {
        let ring = shipped_ring(name);
        let v = nilpotency_index(&ring).map_err(|e| format!("{name}: {e}"))?;
        let a = CommutatorMatrix::build(&ring).map_err(|e| e.to_string())?;
        let lcs = group::lower_central_series_class(&shipped_group(name));
        ensure(v.index == want, || format!("{name}: index {:?}, expected {want:?}", v.index))?;
        ensure(lcs == want, || format!("{name}: lower central class {lcs:?}, expected {want:?}"))?;
        ensure(spectral_nilpotency_test(a.matrix()) == want.is_some(), || format!("{name}: spectral test disagrees"))?;
    }
    Ok("9 groups agree with lower central series and spectral test".into())
}

fn ac4_spectra() -> Check {
    let s3 = CommutatorMatrix::build(&shipped_ring("s3")).map_err(|e| e.to_string())?;
    let p = char_poly(s3.matrix());
    let want = [rat(0, 1), rat(1, 2), rat(-3, 2), rat(1, 1)];
    ensure(p.coefficients() == want, || format!("S3 char poly is {p}"))?;
    let s = commutator_spectrum(&s3).map_err(|e| e.to_string())?;
    ensure((s.secondary_radius - 0.5).abs() <= S3_RADIUS_TOL, || format!("S3 radius {}", s.secondary_radius))?;
    let q8 = CommutatorMatrix::build(&shipped_ring("q8")).map_err(|e| e.to_string())?;
    let q = char_poly(q8.matrix());
    let want = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 1), rat(1, 1)];
    ensure(q.coefficients() == want, || format!("Q8 char poly is {q}"))?;
    Ok(format!("S3: {p}, radius {:.12}; Q8: {q}", s.secondary_radius))
}

fn ac5_oracle_equivalence() -> Check {
    let mut worst = 0.0f64;
    for name in GROUPS {
        let case = group_case(name);
        let a = CommutatorMatrix::build(&case.ring).map_err(|e| e.to_string())?;
        for m in 0..=ORACLE_DEPTH {
            let brute = group::brute_gamma(&case.group, m).map_err(|e| e.to_string())?;
            let coords = group::to_eta_coordinates(&case.classes, &brute);
            let via = class_algebra::change_basis_e_to_eta(&case.class_data, &a.gamma(m)).map_err(|e| e.to_string())?;
            for (k, (z, c)) in via.coefficients.iter().zip(&coords).enumerate() {
                let dev = (z - to_f64(c)).norm();
                worst = worst.max(dev);
                ensure(dev <= ORACLE_TOL, || format!("{name}: m={m} class {k} deviates by {dev:e}"))?;
            }
        }
    }
    Ok(format!("9 groups, m <= {ORACLE_DEPTH}, max deviation {worst:.1e} <= {ORACLE_TOL:e}"))
}

fn ac6_similarity() -> Check {
    for name in GROUPS {
        let case = group_case(name);
        let a = CommutatorMatrix::build(&case.ring).map_err(|e| e.to_string())?;
        let m = class_algebra::eta_commutator_matrix(&case.class_data).map_err(|e| e.to_string())?;
        ensure(char_poly(&m) == char_poly(a.matrix()), || format!("{name}: char polys differ"))?;
    }
    Ok("9 groups, exact".into())
}

fn ac7_probabilistic_nilpotency() -> Check {
    let mut s3_alpha_20 = Rational::zero();
    for name in ["s3", "a4", "s4"] {
        let case = group_case(name);
        let a = CommutatorMatrix::build(&case.ring).map_err(|e| e.to_string())?;
        let d = from_u64(case.class_data.total());
        let c = from_u64(case.class_data.max_class_dim());
        let one = Rational::one();
        let ratio = &one - &one / &c;
        let lead = &one - from_u64(case.class_data.dims()[0]) / &d;
        let m_eta = class_algebra::eta_commutator_matrix(&case.class_data).map_err(|e| e.to_string())?;
        let traj = class_algebra::identity_mass_trajectory(&m_eta, &class_algebra::uniform_integral(&case.class_data), CONVERGENCE_STEPS)
            .map_err(|e| e.to_string())?;
        let mut power = one.clone();
        for m in 0..=CONVERGENCE_STEPS {
            let alpha = class_algebra::identity_mass(&case.ring, &a.gamma(m)).map_err(|e| e.to_string())?;
            ensure(alpha == traj[m], || format!("{name}: two routes to alpha_{m} differ"))?;
            let floor = &one - &lead * &power;
            ensure(alpha >= floor, || format!("{name}: alpha_{m} = {alpha} below {floor}"))?;
            if name == "s3" && m == 1 {
                ensure(alpha == rat(1, 2), || format!("S3 alpha_1 = {alpha}"))?;
            }
            if name == "s3" && m == CONVERGENCE_STEPS {
                s3_alpha_20 = alpha;
            }
            power *= &ratio;
        }
    }
    ensure(to_f64(&s3_alpha_20) > S3_ALPHA_20_FLOOR, || format!("S3 alpha_20 = {s3_alpha_20}"))?;
    Ok(format!("S3, A4, S4 within bound for m <= {CONVERGENCE_STEPS}; S3 alpha_1 = 1/2, alpha_20 = {s3_alpha_20}"))
}

fn ac8_frobenius_counting() -> Check {
    let case = group_case("s3");
    let g = &case.group;
    let rep_of_order = |k: usize| (0..g.order()).find(|&x| g.element_order(x) == k).unwrap();
    let want = [(g.identity(), 18u64), (rep_of_order(2), 0), (rep_of_order(3), 9)];
    let check = group::frobenius_check(g, &case.classes, &case.table).map_err(|e| e.to_string())?;
    for (x, count) in want {
        let got = group::commutator_count(g, x);
        ensure(got == count, || format!("count({x}) = {got}, expected {count}"))?;
        let c = case.classes.class_of(x);
        let predicted = check.predicted[c];
        ensure((predicted - count as f64).abs() <= FROBENIUS_TOL, || format!("character sum {predicted} at {x}"))?;
    }
    let a = CommutatorMatrix::build(&case.ring).map_err(|e| e.to_string())?;
    let f = class_algebra::distribution_function(&case.ring, &a.gamma(1)).map_err(|e| e.to_string())?;
    let d = case.ring.dimension();
    for (i, (coef, &di)) in f.coefficients.iter().zip(case.ring.degrees()).enumerate() {
        ensure(*coef == Rational::new(1.into(), (d * di).into()), || format!("f_gamma1[{i}] = {coef}"))?;
    }
    Ok("S3 counts 18 / 0 / 9 match the character sum; f(gamma_1) = 1/(d d_i)".into())
}

fn ac9_stochasticity() -> Check {
    for name in GROUPS {
        let case = group_case(name);
        let m = class_algebra::eta_commutator_matrix(&case.class_data).map_err(|e| e.to_string())?;
        let r = stochasticity_report(&m, &case.class_data);
        ensure(r.non_negative, || format!("{name}: negative entry"))?;
        ensure(r.column_sums_one, || format!("{name}: column sum differs from 1"))?;
        for (i, &dim) in case.class_data.dims().iter().enumerate() {
            ensure(m[(0, i)] == Rational::new(1.into(), dim.into()), || format!("{name}: M[0][{i}] = {}", m[(0, i)]))?;
        }
    }
    Ok("9 groups, exact".into())
}

fn ac10_based_chain() -> Check {
    let ring = shipped_ring("q8");
    let a = CommutatorMatrix::build(&ring).map_err(|e| e.to_string())?;
    let want: [BTreeSet<usize>; 3] = [[0].into(), [0, 1, 2, 3].into(), (0..5).collect()];
    for (m, (g, w)) in a.gammas().zip(&want).enumerate() {
        let s = a.support_of(&g);
        ensure(s == *w, || format!("S_{m} = {s:?}"))?;
        ensure(is_based_subring(&ring, &s), || format!("S_{m} is not based"))?;
    }
    Ok("Q8: {0} < {0,1,2,3} < all, each based".into())
}

fn ac11_eigenvalues() -> Check {
    let mut worst = 0.0f64;
    for name in GROUPS {
        let a = CommutatorMatrix::build(&shipped_ring(name)).map_err(|e| e.to_string())?;
        let s = commutator_spectrum(&a).map_err(|e| format!("{name}: {e}"))?;
        let mult = s.exact_poly.root_multiplicity(&Rational::one());
        ensure(mult == 1, || format!("{name}: eigenvalue 1 has multiplicity {mult}"))?;
        ensure(s.secondary_radius < 1.0 - RADIUS_MARGIN, || format!("{name}: radius {}", s.secondary_radius))?;
        worst = worst.max(s.secondary_radius);
    }
    Ok(format!("9 rings, simple eigenvalue 1, largest secondary radius {worst:.6}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("AC1 commutator-matrix identities", ac1_matrix_identities),
        ("AC2 fixed vector", ac2_fixed_vector),
        ("AC3 nilpotency verdicts", ac3_verdicts),
        ("AC4 S3 and Q8 spectra", ac4_spectra),
        ("AC5 oracle gamma equivalence", ac5_oracle_equivalence),
        ("AC6 similarity", ac6_similarity),
        ("AC7 probabilistic nilpotency", ac7_probabilistic_nilpotency),
        ("AC8 Frobenius counting", ac8_frobenius_counting),
        ("AC9 column stochasticity", ac9_stochasticity),
        ("AC10 based-ring chain", ac10_based_chain),
        ("AC11 simple unit eigenvalue", ac11_eigenvalues),
    ];
    let mut failed = 0;
    for (label, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {label}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {label}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
