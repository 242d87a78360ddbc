use num_bigint::BigUint;
use num_rational::BigRational;
use ogq_core::counting::{count_float, expected_dim, max_iso_degree, ptilde_product_alpha};
use ogq_core::partitions::rho;
use ogq_core::{count, count_even, count_odd, n_tilde, AlphaPolynomial, Error, NQuery};

#[test]
fn maximal_degree_has_zero_expected_dimension() {
    for n in 2..=10i64 {
        for g in 2..=12i64 {
            for ell in -6..=6i64 {
                if let Ok(e0) = max_iso_degree(2 * n as u32, g, ell) {
                    assert_eq!(
                        expected_dim(n, ell, e0, g),
                        0,
                        "n = {n}, g = {g}, l = {ell}"
                    );
                }
            }
        }
    }
}

#[test]
fn odd_rank_degree_shifts_from_the_even_one() {
    for n in 1..=8u32 {
        for g in 2..=12i64 {
            for ell in (-6..=6i64).step_by(2) {
                if let Ok(e_odd) = max_iso_degree(2 * n + 1, g, ell) {
                    let e_even = max_iso_degree(2 * n + 2, g, ell).unwrap();
                    assert_eq!(e_odd + ell / 2, e_even);
                }
            }
        }
        assert!(matches!(
            max_iso_degree(2 * n + 1, 3, 1),
            Err(Error::NotApplicable(_))
        ));
    }
}

#[test]
fn rank_three_and_four_closed_forms() {
    // Rank 4 at l = 0 is 2 · 2^g, rank 3 is 2^g, whenever the count exists.
    for g in 2..=13i64 {
        if let Ok(r) = count(g, 4, 0) {
            assert_eq!(
                r.value.unwrap(),
                BigUint::from(2u32).pow(g as u32 + 1),
                "rank 4, g = {g}"
            );
        }
        if let Ok(r) = count(g, 3, 0) {
            assert_eq!(
                r.value.unwrap(),
                BigUint::from(2u32).pow(g as u32),
                "rank 3, g = {g}"
            );
        }
    }
}

#[test]
fn odd_rank_is_half_the_next_even_rank() {
    for n in [2u32, 3, 4] {
        for g in 2..=7i64 {
            for ell in [-2i64, 0, 2] {
                if let (Ok(odd), Ok(even)) = (count_odd(g, n, ell), count_even(g, n + 1, ell)) {
                    assert_eq!(
                        odd.value.unwrap() * 2u32,
                        even.value.unwrap(),
                        "n = {n}, g = {g}, l = {ell}"
                    );
                }
            }
        }
    }
}

#[test]
fn float_counts_agree_with_exact() {
    for rank in 3..=8u32 {
        for g in 2..=6i64 {
            for ell in -1..=2i64 {
                if let Ok(r) = count(g, rank, ell) {
                    let exact = r.value.unwrap();
                    let v = count_float(g, rank, ell).unwrap();
                    let rel = ogq_core::quantum::relative_error(v, &exact);
                    assert!(rel < 1e-9, "N({g}, {rank}, {ell}) float {v} vs {exact}");
                }
            }
        }
    }
}

#[test]
fn reports_carry_their_inputs() {
    let r = count(6, 6, 1).unwrap();
    assert_eq!((r.g, r.rank, r.ell), (6, 6, 1));
    assert!(r.applicable);
    let json = r.to_json();
    assert_eq!(json["N"], "4096");
    assert!(json["decomposition"]["variant"].is_string());
    assert!(matches!(count(1, 4, 0), Err(Error::GenusTooSmall(1))));
    assert!(matches!(count(3, 2, 0), Err(Error::UnsupportedRank(2))));
    assert!(matches!(
        count(3, 5, 1),
        Err(Error::OddEllUnsupported(1)) | Err(Error::NotApplicable(_))
    ));
}

#[test]
fn n_tilde_degree_mismatch_is_zero_with_a_reason() {
    let q = AlphaPolynomial::alpha(1);
    let out = n_tilde(&NQuery {
        g: 2,
        n: 3,
        ell: 0,
        e: 0,
        u: 0,
        q,
    })
    .unwrap();
    assert_eq!(out.value, BigRational::default());
    assert!(out.diagnostic.unwrap().contains("expected"));
    let nc = n_tilde(&NQuery {
        g: 2,
        n: 2,
        ell: 0,
        e: 1,
        u: 0,
        q: AlphaPolynomial::one(),
    });
    assert!(matches!(nc, Err(Error::NotCovered { e0: 1, .. })));
}

#[test]
fn n_tilde_reference_values() {
    let one = AlphaPolynomial::one();
    for (g, n, e, want) in [(3u32, 2u32, -2i64, 8i64), (5, 3, -6, 1024)] {
        let out = n_tilde(&NQuery {
            g,
            n,
            ell: 0,
            e,
            u: 0,
            q: one.clone(),
        })
        .unwrap();
        assert_eq!(
            out.value,
            BigRational::from_integer(want.into()),
            "g = {g}, n = {n}"
        );
    }
}

#[test]
fn point_classes_fold_into_q() {
    // Ñ(Q; u) = Ñ(Q · P̃_ρ^u; 0) at n = 4, where one point class costs one degree.
    let rho_poly = ptilde_product_alpha(&[rho(3)], 3).unwrap();
    for g in 1..=3u32 {
        for u in 1..=2u32 {
            let e = -2 * (g as i64 - 1) - 2 * u as i64;
            let q = AlphaPolynomial::one();
            let lifted = (0..u).fold(AlphaPolynomial::one(), |acc, _| acc.mul(&rho_poly));
            let a = n_tilde(&NQuery {
                g,
                n: 4,
                ell: 0,
                e,
                u,
                q,
            })
            .unwrap();
            let b = n_tilde(&NQuery {
                g,
                n: 4,
                ell: 0,
                e,
                u: 0,
                q: lifted,
            })
            .unwrap();
            assert!(
                a.diagnostic.is_none() && b.diagnostic.is_none(),
                "g = {g}, u = {u}: {a:?}"
            );
            assert_eq!(a.value, b.value, "g = {g}, u = {u}");
        }
    }
}
