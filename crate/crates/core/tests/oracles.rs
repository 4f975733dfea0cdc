//! Reference values computed independently of the library: recurrences,
//! explicit products and a separate Gauss–Jordan inversion, all on plain
//! coefficient vectors.

use num::{BigInt, BigRational, Zero};
use umbra::exact::Poly;
use umbra::model::{
    build_bessel, build_heat, build_hermite, build_lower_factorial, build_upper_factorial,
    BesselParams,
};
use umbra::numeric::{little_bessel_j, poisson_transform, QuadratureSpec, ScalarFn};
use umbra::transform::{dual_functionals, expand_in_basis};
use umbra::UmbralModel;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn fact(n: usize) -> Q {
    (1..=n as i64).fold(q(1), |acc, k| acc * q(k))
}

/// `a(t) · (t + c)` on coefficient vectors.
fn times_linear(a: &[Q], c: &Q) -> Vec<Q> {
    let mut out = vec![q(0); a.len() + 1];
    for (j, x) in a.iter().enumerate() {
        out[j + 1] += x;
        out[j] += x * c;
    }
    out
}

fn padded(v: &[Q], cap: usize) -> Vec<Q> {
    let mut v = v.to_vec();
    v.resize(cap + 1, q(0));
    v
}

fn basis_coeffs(m: &UmbralModel, n: usize) -> Vec<Q> {
    m.p(n).coeffs().to_vec()
}

#[test]
fn hermite_three_term_recurrence() {
    // He_{n+1} = t He_n − n He_{n−1}, and the model's p_n = He_n / n!
    let n_max = 12;
    let m = build_hermite(n_max).unwrap();
    let mut he = vec![vec![q(1)], vec![q(0), q(1)]];
    for n in 1..n_max {
        let mut next = times_linear(&he[n], &q(0));
        for (j, c) in he[n - 1].iter().enumerate() {
            next[j] -= c * q(n as i64);
        }
        he.push(next);
    }
    for (n, h) in he.iter().enumerate() {
        let want: Vec<Q> = padded(h, n_max).into_iter().map(|c| c / fact(n)).collect();
        assert_eq!(basis_coeffs(&m, n), want, "n={n}");
    }
}

#[test]
fn factorial_bases_are_products() {
    let n_max = 10;
    let lower = build_lower_factorial(n_max).unwrap();
    let upper = build_upper_factorial(n_max).unwrap();
    let (mut falling, mut rising) = (vec![q(1)], vec![q(1)]);
    for n in 0..=n_max {
        let f: Vec<Q> = padded(&falling, n_max)
            .into_iter()
            .map(|c| c / fact(n))
            .collect();
        let r: Vec<Q> = padded(&rising, n_max)
            .into_iter()
            .map(|c| c / fact(n))
            .collect();
        assert_eq!(basis_coeffs(&lower, n), f, "falling n={n}");
        assert_eq!(basis_coeffs(&upper, n), r, "rising n={n}");
        falling = times_linear(&falling, &q(-(n as i64)));
        rising = times_linear(&rising, &q(n as i64));
    }
}

#[test]
fn stirling_expansion_of_powers() {
    // tⁿ = Σ S(n,k) (t)_k, and p_k = (t)_k / k!
    let n_max = 9;
    let m = build_lower_factorial(n_max).unwrap();
    let mut s = vec![vec![q(0); n_max + 1]; n_max + 1];
    s[0][0] = q(1);
    for n in 1..=n_max {
        for k in 1..=n {
            s[n][k] = q(k as i64) * &s[n - 1][k] + &s[n - 1][k - 1];
        }
    }
    for (n, row) in s.iter().enumerate() {
        let coords = expand_in_basis(&m, &Poly::monomial(n_max, n, q(1))).unwrap();
        for (k, stirling) in row.iter().enumerate() {
            assert_eq!(coords[k], stirling * fact(k), "n={n} k={k}");
        }
    }
}

#[test]
fn even_bases_closed_forms() {
    let n_max = 8;
    let heat = build_heat(n_max).unwrap();
    let nu = Q::new(BigInt::from(5), BigInt::from(2));
    let bessel = build_bessel(n_max, BesselParams::new(nu.clone()).unwrap()).unwrap();
    let mut c = q(1);
    for n in 0..=n_max {
        if n > 0 {
            let k = q(2 * n as i64);
            c *= &k * (&k + &nu - q(1));
        }
        let mut want = vec![q(0); 2 * n_max + 1];
        want[2 * n] = q(1) / fact(2 * n);
        assert_eq!(basis_coeffs(&heat, n), want, "heat n={n}");
        want[2 * n] = q(1) / &c;
        assert_eq!(basis_coeffs(&bessel, n), want, "bessel n={n}");
    }
}

/// Inverse of a square rational matrix by Gauss–Jordan with row pivoting.
fn invert(mut a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

#[test]
fn dual_rows_are_rows_of_the_inverse_basis_matrix() {
    let n_max = 7;
    for m in [
        build_hermite(n_max).unwrap(),
        build_lower_factorial(n_max).unwrap(),
        build_upper_factorial(n_max).unwrap(),
    ] {
        // column n of B holds the coefficients of p_n
        let b: Vec<Vec<Q>> = (0..=n_max)
            .map(|row| (0..=n_max).map(|n| m.p(n).coeff(row)).collect())
            .collect();
        let inv = invert(b);
        for (k, l) in dual_functionals(&m).iter().enumerate() {
            assert_eq!(l.row(), &inv[k][..], "{} row {k}", m.label());
        }
    }
}

#[test]
fn little_bessel_half_integer_closed_forms() {
    // ν = 4 ⇒ α = 3/2: j = 3(sin z − z cos z)/z³
    for &(lam, t) in &[(1.0, 0.3), (1.0, 2.0), (4.0, 3.7), (0.25, 9.5)] {
        let z = f64::sqrt(lam) * t;
        let want = 3.0 * (z.sin() - z * z.cos()) / (z * z * z);
        let got = little_bessel_j(4.0, lam, t).unwrap();
        assert!(
            (got - want).abs() < 1e-12,
            "lam={lam} t={t}: {got} vs {want}"
        );
    }
    // ν = 1 ⇒ J_0; compare with its own power series in f64 at small z
    let z = 0.7f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        term *= -(z * z) / (4.0 * (k * k) as f64);
        sum += term;
    }
    assert!((little_bessel_j(1.0, 1.0, z).unwrap() - sum).abs() < 1e-15);
}

#[test]
fn poisson_of_cos_matches_little_bessel() {
    let spec = QuadratureSpec::default();
    for nu in [1.0, 2.0, 3.0, 3.5] {
        for x in [0.5, 2.0, 4.5] {
            let p = poisson_transform(nu, &ScalarFn::cos(), x, &spec).unwrap();
            let j = little_bessel_j(nu, 1.0, x).unwrap();
            assert!((p - j).abs() < 1e-11, "nu={nu} x={x}");
        }
    }
}

#[test]
fn poisson_of_quadratic_is_beta_integral() {
    // P^ν t² = x² · C(ν) ∫ cos^{ν−1}θ sin²θ dθ = x² / (ν + 1)
    let t2 = ScalarFn::new("t^2", umbra::numeric::Decay::None, |t: f64| t * t);
    for nu in [1.0, 2.0, 3.0, 4.5] {
        let v = poisson_transform(nu, &t2, 1.5, &QuadratureSpec::default()).unwrap();
        assert!((v - 2.25 / (nu + 1.0)).abs() < 1e-12, "nu={nu}");
    }
}
