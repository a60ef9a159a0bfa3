//! `sl(n)`: adjoint quotient, the transposed companion section and the
//! Slodowy slice through the minimal nilpotent `e = E12`.

use num_traits::{One, Zero};

use super::algebra::{centralizer_report, make_algebra, sl_triple, Family, LieAlgebra};
use super::qmat::{format_vec, intersection_dim, is_zero_vec, span_rank, QMatrix, Q};
use super::report::{CheckReport, NamedCheck, Sampler};
use super::LieError;

/// Row 0 is `(0, 1, 0, ...)`, row `i` in `1..n-1` has `a[n-1-i]` in column 0
/// and 1 in column `i+1`, the last row is `(a[0], 0, ...)`.
pub fn companion(n: usize, a: &[Q]) -> Result<QMatrix, LieError> {
    if n < 2 || a.len() != n - 1 {
        return Err(LieError::InvalidInput(format!(
            "companion point for n = {n} needs {} parameters, got {}",
            n.saturating_sub(1),
            a.len()
        )));
    }
    let mut m = QMatrix::zeros(n, n);
    m[(0, 1)] = Q::one();
    for i in 1..n - 1 {
        m[(i, 0)] = a[n - 1 - i].clone();
        m[(i, i + 1)] = Q::one();
    }
    m[(n - 1, 0)] = a[0].clone();
    Ok(m)
}

/// `(f_0, ..., f_{n-2})` with `det(tI - x) = t^n + f_{n-2} t^{n-2} + ... + f_0`.
pub fn char_coeffs(x: &QMatrix) -> Result<Vec<Q>, LieError> {
    if x.rows != x.cols || x.rows < 2 {
        return Err(LieError::InvalidInput("need a square matrix of size at least 2".into()));
    }
    if !x.trace().is_zero() {
        return Err(LieError::InvalidInput("matrix is not trace-free".into()));
    }
    let n = x.rows;
    let c = x.charpoly();
    Ok((0..n - 1).map(|k| c[n - k].clone()).collect())
}

/// `f(companion(a)) == -a`.
pub fn section_identity(n: usize, a: &[Q]) -> Result<bool, LieError> {
    let f = char_coeffs(&companion(n, a)?)?;
    Ok(f.iter().zip(a).all(|(x, y)| *x == -y.clone()))
}

fn algebra(n: usize) -> Result<LieAlgebra, LieError> {
    make_algebra(Family::Sl(n))
}

/// Section identity, regularity and abelian centralizers on random
/// companion points.
pub fn companion_checks(n: usize, trials: usize, seed: u64) -> Result<CheckReport, LieError> {
    let alg = algebra(n)?;
    let mut s = Sampler::new(seed);
    let mut section = NamedCheck::new("section-identity");
    let mut regular = NamedCheck::new("regular-abelian-centralizer");
    for _ in 0..trials {
        let a = s.vector(n - 1);
        let m = companion(n, &a)?;
        let f = char_coeffs(&m)?;
        let ok = f.iter().zip(&a).all(|(x, y)| *x == -y.clone());
        section.sample(&a, ok, || format!("f = {:?}", format_vec(&f)));
        let x = alg.coords(&m)?;
        let rep = centralizer_report(&alg, &alg.flat(&x).expect("trace form"));
        regular.sample(&a, rep.dimension == n - 1 && rep.abelian, || {
            format!("centralizer dimension {}, abelian {}", rep.dimension, rep.abelian)
        });
    }
    Ok(CheckReport::new(
        &Family::Sl(n).name(),
        "companion",
        seed,
        trials,
        vec![section, regular],
    ))
}

fn image(ad: &QMatrix) -> Vec<Vec<Q>> {
    (0..ad.cols).map(|j| ad.column(j)).collect()
}

/// Containment `T ⊂ e + g_f`, transversality of `g_f` to orbits along `T`
/// and leaf dimensions at regular points of the slice.
pub fn slodowy_checks(n: usize, samples: usize, seed: u64) -> Result<CheckReport, LieError> {
    if n < 3 || samples == 0 {
        return Err(LieError::InvalidInput(
            "Slodowy checks need n >= 3 and samples >= 1".into(),
        ));
    }
    let alg = algebra(n)?;
    let d = alg.dim();
    let (e, _, f) = sl_triple(&alg);
    let gf = alg.ad(&f).nullspace();
    let rank = n - 1;
    let mut s = Sampler::new(seed);

    let mut centralizer = NamedCheck::new("centralizer-of-f");
    centralizer.expect("dim g_f", gf.len(), (n - 1) * (n - 1));

    let mut contain = NamedCheck::new("containment");
    let mut transverse = NamedCheck::new("transversality");
    transverse.value("expected rank", d);
    for _ in 0..samples {
        let a = s.vector(n - 1);
        let t = alg.coords(&companion(n, &a)?)?;
        let shifted: Vec<Q> = t.iter().zip(&e).map(|(x, y)| x - y).collect();
        contain.sample(&a, is_zero_vec(&alg.bracket(&f, &shifted)), || {
            "[f, T(a) - e] != 0".into()
        });
        let mut vectors = gf.clone();
        vectors.extend(image(&alg.ad(&t)));
        let r = span_rank(&vectors, d);
        transverse.sample(&a, r == d, || format!("rank {r}"));
    }

    let mut leaf = NamedCheck::new("leaf-dimension");
    leaf.value("expected", gf.len() - rank);
    let mut skipped = 0usize;
    let mut found = 0usize;
    while found < samples {
        if skipped > 100 * samples {
            leaf.expect("regular samples", found, samples);
            break;
        }
        let coeffs = s.vector(gf.len());
        let mut x = e.clone();
        for (c, v) in coeffs.iter().zip(&gf) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += c * vi;
            }
        }
        let ad = alg.ad(&x);
        if ad.nullspace().len() != rank {
            skipped += 1;
            continue;
        }
        found += 1;
        let dim = intersection_dim(&image(&ad), &gf, d);
        leaf.sample(&coeffs, dim == gf.len() - rank, || {
            format!("intersection dimension {dim}")
        });
    }
    leaf.value("non-regular draws skipped", skipped);
    Ok(CheckReport::new(
        &Family::Sl(n).name(),
        "slodowy",
        seed,
        samples,
        vec![centralizer, contain, transverse, leaf],
    ))
}

/// Hartogs-slice conditions for the companion section: transversality to
/// orbits, regular abelian centralizers, and `f ∘ companion = -id`.
pub fn sl_slice_report(n: usize, trials: usize, seed: u64) -> Result<CheckReport, LieError> {
    let alg = algebra(n)?;
    let d = alg.dim();
    let mut s = Sampler::new(seed);
    let mut codim = NamedCheck::new("complement-codimension");
    codim.value("status", "not a coordinate locus; reported at sample level only");
    let mut transverse = NamedCheck::new("slice-transversality");
    let mut abelian = NamedCheck::new("abelian-stabilizer");
    let mut section = NamedCheck::new("section-identity");
    // tangent directions of T: unit changes in a_0..a_{n-2}
    let zero = vec![Q::zero(); n - 1];
    let base = alg.coords(&companion(n, &zero)?)?;
    let tangent: Vec<Vec<Q>> = (0..n - 1)
        .map(|k| {
            let mut a = zero.clone();
            a[k] = Q::one();
            let p = alg.coords(&companion(n, &a).expect("valid")).expect("in sl(n)");
            p.iter().zip(&base).map(|(x, y)| x - y).collect()
        })
        .collect();
    for _ in 0..trials {
        let a = s.vector(n - 1);
        let x = alg.coords(&companion(n, &a)?)?;
        let mut vectors = tangent.clone();
        vectors.extend(image(&alg.ad(&x)));
        let r = span_rank(&vectors, d);
        transverse.sample(&a, r == d, || format!("rank {r} < {d}"));
        let rep = centralizer_report(&alg, &alg.flat(&x).expect("trace form"));
        abelian.sample(&a, rep.regular && rep.abelian, || {
            format!("dimension {}, abelian {}", rep.dimension, rep.abelian)
        });
        section.sample(&a, section_identity(n, &a)?, || "f(companion(a)) != -a".into());
    }
    Ok(CheckReport::new(
        &Family::Sl(n).name(),
        "slice",
        seed,
        trials,
        vec![codim, transverse, abelian, section],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::qmat::q;

    #[test]
    fn companion_n3_matches_display() {
        let m = companion(3, &[q(2), q(3)]).unwrap();
        assert_eq!(m, QMatrix::from_i64(&[&[0, 1, 0], &[3, 0, 1], &[2, 0, 0]]));
        assert_eq!(char_coeffs(&m).unwrap(), vec![q(-2), q(-3)]);
    }

    #[test]
    fn companion_n2() {
        let m = companion(2, &[q(5)]).unwrap();
        assert_eq!(m.charpoly(), vec![q(1), q(0), q(-5)]);
        assert_eq!(char_coeffs(&m).unwrap(), vec![q(-5)]);
    }

    #[test]
    fn nilpotent_has_zero_coefficients() {
        let alg = algebra(3).unwrap();
        let (e, _, _) = sl_triple(&alg);
        assert_eq!(char_coeffs(&alg.element(&e)).unwrap(), vec![q(0), q(0)]);
    }

    #[test]
    fn trace_is_rejected() {
        assert!(char_coeffs(&QMatrix::identity(3)).is_err());
        assert!(companion(3, &[q(1)]).is_err());
    }

    #[test]
    fn slodowy_n3_numbers() {
        let rep = slodowy_checks(3, 4, 1).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.check("centralizer-of-f").unwrap().values["dim g_f"], "4");
        assert_eq!(rep.check("leaf-dimension").unwrap().values["expected"], "2");
    }

    #[test]
    fn transversality_rank_at_t11() {
        let alg = algebra(3).unwrap();
        let (_, _, f) = sl_triple(&alg);
        let gf = alg.ad(&f).nullspace();
        let t = alg.coords(&companion(3, &[q(1), q(1)]).unwrap()).unwrap();
        let mut v = gf;
        v.extend(image(&alg.ad(&t)));
        assert_eq!(span_rank(&v, 8), 8);
    }

    #[test]
    fn companion_point_centralizer_in_sl3() {
        let alg = algebra(3).unwrap();
        let x = alg.coords(&companion(3, &[q(2), q(3)]).unwrap()).unwrap();
        let rep = centralizer_report(&alg, &alg.flat(&x).unwrap());
        assert!(rep.dimension == 2 && rep.regular && rep.abelian);
    }

    #[test]
    fn slice_report_passes() {
        for n in 2..=4 {
            assert!(sl_slice_report(n, 5, 2).unwrap().passed);
        }
        assert!(companion_checks(5, 3, 9).unwrap().passed);
    }
}
