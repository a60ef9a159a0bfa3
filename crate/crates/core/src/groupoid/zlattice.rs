//! Integer lattices: Hermite and Smith normal forms, kernels of
//! homomorphisms between finite abelian groups given by cyclic factors.
//!
//! Matrices are row-major; a lattice is the row span of a matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> ZMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form with transform: returns `(h, u)` with
/// `u * a = h`, `u` unimodular. Nonzero rows of `h` come first, pivots are
/// positive and entries above a pivot lie in `[0, pivot)`.
pub fn hnf_with_transform(a: &ZMatrix, cols: usize) -> (ZMatrix, ZMatrix) {
    let rows = a.len();
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below prow moves to prow
            let mut best: Option<usize> = None;
            for r in prow..rows {
                if !h[r][c].is_zero() && best.is_none_or(|b| h[r][c].abs() < h[b][c].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap(prow, b);
            u.swap(prow, b);
            let mut done = true;
            for r in prow + 1..rows {
                if h[r][c].is_zero() {
                    continue;
                }
                let q = h[r][c].div_floor(&h[prow][c]);
                sub_row(&mut h, r, prow, &q);
                sub_row(&mut u, r, prow, &q);
                if !h[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[prow][c].is_zero() {
            continue;
        }
        if h[prow][c].is_negative() {
            negate_row(&mut h, prow);
            negate_row(&mut u, prow);
        }
        for r in 0..prow {
            let q = h[r][c].div_floor(&h[prow][c]);
            if !q.is_zero() {
                sub_row(&mut h, r, prow, &q);
                sub_row(&mut u, r, prow, &q);
            }
        }
        prow += 1;
    }
    (h, u)
}

fn sub_row(m: &mut ZMatrix, target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(src) {
        *x -= q * s;
    }
}

fn negate_row(m: &mut ZMatrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Hermite basis of the row lattice, zero rows dropped.
pub fn hnf(a: &ZMatrix, cols: usize) -> ZMatrix {
    let (mut h, _) = hnf_with_transform(a, cols);
    h.retain(|r| r.iter().any(|x| !x.is_zero()));
    h
}

/// Rows of `images` together with `moduli` on the diagonal.
pub fn with_moduli(images: &ZMatrix, moduli: &[u64]) -> ZMatrix {
    let s = moduli.len();
    let mut m = images.clone();
    for (i, &q) in moduli.iter().enumerate() {
        let mut row = vec![BigInt::zero(); s];
        row[i] = BigInt::from(q);
        m.push(row);
    }
    m
}

/// Canonical basis of the subgroup generated by `images` inside
/// `Z^s / diag(moduli)`, as the Hermite form of its full-rank preimage.
pub fn image_lattice(images: &ZMatrix, moduli: &[u64]) -> ZMatrix {
    hnf(&with_moduli(images, moduli), moduli.len())
}

/// Index of the subgroup generated by `images` in `Z^s / diag(moduli)`.
pub fn image_index(images: &ZMatrix, moduli: &[u64]) -> BigInt {
    let h = image_lattice(images, moduli);
    h.iter()
        .enumerate()
        .map(|(i, r)| r[i].clone())
        .fold(BigInt::one(), |a, b| a * b)
}

/// Smith normal form diagonal of `x` (square, full rank) together with
/// `vinv` such that the rows of `vinv * basis` realize the diagonal.
pub fn smith_with_vinv(x: &ZMatrix) -> (Vec<BigInt>, ZMatrix) {
    let n = x.len();
    let mut a = x.clone();
    let mut vinv = identity(n);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (diagonal(&a), vinv);
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                vinv.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                // col_j -= q col_t; inverse acts as row_t += q row_j
                for row in a.iter_mut() {
                    let v = row[t].clone();
                    row[j] -= &q * v;
                }
                let src = vinv[j].clone();
                for (x, s) in vinv[t].iter_mut().zip(src) {
                    *x += &q * s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t
            let mut offending = None;
            'scan: for i in t + 1..n {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offending = Some(i);
                        break 'scan;
                    }
                }
            }
            match offending {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for row in a.iter_mut() {
                row[t] = -row[t].clone();
            }
            negate_row(&mut vinv, t);
        }
    }
    (diagonal(&a), vinv)
}

fn diagonal(a: &ZMatrix) -> Vec<BigInt> {
    (0..a.len()).map(|i| a[i][i].clone()).collect()
}

/// Invariant factors `d1 | d2 | ...` (all > 1) of `⊕ Z/orders[i]`.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let n = orders.len();
    let x: ZMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(orders[i])
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let (d, _) = smith_with_vinv(&x);
    let mut out: Vec<u64> = d
        .iter()
        .map(|v| v.to_u64().expect("invariant factor fits in u64"))
        .filter(|&v| v != 1)
        .collect();
    out.sort_unstable();
    out
}

/// Kernel of a homomorphism `⊕ Z/orders[i] -> Z^s / diag(moduli)` given by
/// the image rows of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    /// Cyclic orders of the kernel generators (invariant factors, all > 1).
    pub orders: Vec<u64>,
    /// Generators as coefficient vectors over the source generators,
    /// reduced modulo `orders` of the source.
    pub generators: Vec<Vec<i64>>,
}

pub fn kernel(orders: &[u64], images: &ZMatrix, moduli: &[u64]) -> Kernel {
    let r = orders.len();
    let s = moduli.len();
    if r == 0 {
        return Kernel {
            orders: vec![],
            generators: vec![],
        };
    }
    // left kernel of [images; diag(moduli)], projected to the first r coordinates
    let stacked = with_moduli(images, moduli);
    let (h, u) = hnf_with_transform(&stacked, s);
    let mut basis: ZMatrix = Vec::new();
    for (row_h, row_u) in h.iter().zip(&u) {
        if row_h.iter().all(|x| x.is_zero()) {
            basis.push(row_u[..r].to_vec());
        }
    }
    debug_assert_eq!(basis.len(), r, "kernel lattice has full rank");
    let basis = hnf(&basis, r);
    // express diag(orders) in the basis; basis is upper triangular
    let mut x: ZMatrix = Vec::with_capacity(r);
    for i in 0..r {
        let mut target = vec![BigInt::zero(); r];
        target[i] = BigInt::from(orders[i]);
        let mut coeff = vec![BigInt::zero(); r];
        for j in 0..r {
            let mut rest = target[j].clone();
            for k in 0..j {
                rest -= &coeff[k] * &basis[k][j];
            }
            let (q, rem) = rest.div_rem(&basis[j][j]);
            assert!(rem.is_zero(), "source relations lie in the kernel lattice");
            coeff[j] = q;
        }
        x.push(coeff);
    }
    let (diag, vinv) = smith_with_vinv(&x);
    let mut out_orders = Vec::new();
    let mut gens = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let mut g = vec![BigInt::zero(); r];
        for (k, c) in vinv[i].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..r {
                g[j] += c * &basis[k][j];
            }
        }
        let g: Vec<i64> = g
            .iter()
            .zip(orders)
            .map(|(v, &o)| v.mod_floor(&BigInt::from(o)).to_i64().expect("small"))
            .collect();
        out_orders.push(d.to_u64().expect("kernel order fits in u64"));
        gens.push(g);
    }
    // smith diagonal is a divisibility chain already; keep ascending order
    let mut paired: Vec<(u64, Vec<i64>)> = out_orders.into_iter().zip(gens).collect();
    paired.sort_by_key(|p| p.0);
    Kernel {
        orders: paired.iter().map(|p| p.0).collect(),
        generators: paired.into_iter().map(|p| p.1).collect(),
    }
}

/// Order of the group `⊕ Z/orders[i]`.
pub fn group_order(orders: &[u64]) -> BigInt {
    orders.iter().map(|&o| BigInt::from(o)).product()
}

/// Invariant factors of a finite abelian group from element-order counts:
/// one entry per element, holding that element's order.
pub fn invariant_factors_from_orders(element_orders: &[u64]) -> Vec<u64> {
    let n = element_orders.len() as u64;
    if n <= 1 {
        return vec![];
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // per prime, partition exponents from |{x : p^j x = 0}|
    let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        let mut counts = vec![1u64];
        let mut pj = 1u64;
        loop {
            pj *= p;
            let c = element_orders.iter().filter(|&&o| pj.is_multiple_of(o)).count() as u64;
            if c == *counts.last().expect("non-empty") {
                break;
            }
            counts.push(c);
        }
        // #parts with exponent >= j is log_p(counts[j]/counts[j-1])
        let mut at_least: Vec<u32> = Vec::new();
        for w in counts.windows(2) {
            let mut ratio = w[1] / w[0];
            let mut e = 0;
            while ratio > 1 {
                ratio /= p;
                e += 1;
            }
            at_least.push(e);
        }
        // conjugate partition
        let rows = at_least.first().copied().unwrap_or(0) as usize;
        let mut exps = vec![0u32; rows];
        for &k in &at_least {
            for e in exps.iter_mut().take(k as usize) {
                *e += 1;
            }
        }
        parts.push((p, exps));
    }
    let len = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, exps) in &parts {
        // largest exponent goes to the largest factor
        for (i, &e) in exps.iter().enumerate() {
            factors[len - 1 - i] *= p.pow(e);
        }
    }
    factors.retain(|&f| f > 1);
    factors
}

/// Render a matrix as `[[a,b],[c,d]]`.
pub fn render(m: &ZMatrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        to_big(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = z(&[&[2, 4], &[0, 6], &[4, 2]]);
        let h = hnf(&a, 2);
        assert_eq!(render(&h), "[[2,4],[0,6]]");
        let (h2, u) = hnf_with_transform(&a, 2);
        // u * a = h
        for (i, row) in u.iter().enumerate() {
            for c in 0..2 {
                let v: BigInt = row.iter().zip(&a).map(|(x, r)| x * &r[c]).sum();
                assert_eq!(v, h2[i][c]);
            }
        }
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[2, 2, 3]), vec![2, 6]);
        assert_eq!(invariant_factors(&[4, 2]), vec![2, 4]);
        assert_eq!(invariant_factors(&[]), Vec::<u64>::new());
        assert_eq!(invariant_factors(&[6, 4]), vec![2, 12]);
    }

    fn brute_orders(orders: &[u64]) -> Vec<u64> {
        let mut out = vec![1u64];
        for &o in orders {
            let mut next = Vec::new();
            for &prev in &out {
                for a in 0..o {
                    let ord = o / num_integer::gcd(a, o);
                    next.push(num_integer::lcm(prev, ord));
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn order_counting_matches_smith() {
        let lists: [&[u64]; 8] = [&[], &[2], &[4], &[2, 2], &[2, 3], &[2, 4], &[3, 3, 2], &[4, 6]];
        for l in lists {
            assert_eq!(
                invariant_factors_from_orders(&brute_orders(l)),
                invariant_factors(l),
                "{l:?}"
            );
        }
    }

    #[test]
    fn kernel_of_sum_map() {
        // Z/2 x Z/2 -> Z/2, (a,b) -> a+b: kernel is the diagonal, order 2
        let k = kernel(&[2, 2], &z(&[&[1], &[1]]), &[2]);
        assert_eq!(k.orders, vec![2]);
        assert_eq!(k.generators, vec![vec![1, 1]]);
        // Z/4 -> Z/2 reduction: kernel 2Z/4, order 2
        let k = kernel(&[4], &z(&[&[1]]), &[2]);
        assert_eq!(k.orders, vec![2]);
        assert_eq!(k.generators, vec![vec![2]]);
        // injective map has trivial kernel
        let k = kernel(&[3], &z(&[&[1]]), &[3]);
        assert!(k.orders.is_empty());
    }

    #[test]
    fn kernel_generators_lie_in_kernel_and_have_right_order() {
        let orders = [2u64, 4, 3];
        let images = z(&[&[1, 0], &[1, 0], &[0, 1]]);
        let moduli = [2u64, 3];
        let k = kernel(&orders, &images, &moduli);
        let total: u64 = k.orders.iter().product();
        // brute force kernel size
        let mut count = 0;
        for a in 0..2 {
            for b in 0..4 {
                for c in 0..3 {
                    let x = (a + b) % 2;
                    let y = c % 3;
                    if x == 0 && y == 0 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(total, count);
        for g in &k.generators {
            for col in 0..2 {
                let v: i64 = g.iter().zip(&images).map(|(c, r)| c * r[col].to_i64().unwrap()).sum();
                assert_eq!(v.rem_euclid(moduli[col] as i64), 0);
            }
        }
    }

    #[test]
    fn index_of_image() {
        // image of Z/2 diagonal in Z/2 x Z/2 has index 2
        assert_eq!(image_index(&z(&[&[1, 1]]), &[2, 2]), BigInt::from(2));
        assert_eq!(image_index(&z(&[]), &[3]), BigInt::from(3));
        assert_eq!(image_index(&z(&[]), &[]), BigInt::from(1));
    }
}
