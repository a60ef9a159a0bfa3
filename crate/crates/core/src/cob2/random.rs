//! Seeded term generators and normal-form-preserving rewrites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::normal::SurfaceNormalForm;
use super::term::{CobordismTerm, Generator, Signature};

type T = CobordismTerm;

fn g(gen: Generator) -> T {
    T::Generator(gen)
}

fn comp(outer: T, inner: T) -> T {
    T::Compose(Box::new(outer), Box::new(inner))
}

fn tens(l: T, r: T) -> T {
    T::Tensor(Box::new(l), Box::new(r))
}

/// Random well-formed term with about `size` generator occurrences.
///
/// Deterministic in `seed`. Intermediate circle counts never exceed
/// `max_width` (at least 2). `size == 1` yields a single generator.
pub fn random_term(seed: u64, size: usize, max_width: usize) -> CobordismTerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_term_with(&mut rng, size.max(1), max_width.max(2))
}

pub(crate) fn random_term_with<R: Rng>(rng: &mut R, size: usize, max_width: usize) -> T {
    if size <= 1 {
        return g(*Generator::ALL.choose(rng).expect("non-empty"));
    }
    let start = rng.gen_range(0..=max_width.min(3));
    let mut budget = size;
    let mut width = start;
    let mut acc: Option<T> = None;
    let mut guard = 0;
    while budget > 0 && guard < 8 * size + 16 {
        guard += 1;
        let (layer, used, out) = random_layer(rng, width, max_width, budget);
        if used == 0 {
            continue;
        }
        budget -= used.min(budget);
        width = out;
        acc = Some(match acc {
            None => {
                if rng.gen_bool(0.3) && start > 0 {
                    comp(layer, T::Identity(start))
                } else {
                    layer
                }
            }
            Some(prev) => comp(layer, prev),
        });
    }
    acc.unwrap_or_else(|| g(Generator::Eta))
}

/// One tensor layer consuming `width` circles. Returns (layer, generators used, output width).
fn random_layer<R: Rng>(rng: &mut R, width: usize, max_width: usize, budget: usize) -> (T, usize, usize) {
    let mut blocks: Vec<T> = Vec::new();
    let mut remaining = width;
    let mut out = 0usize;
    let mut used = 0usize;
    let mut pending_id = 0usize;
    let flush = |blocks: &mut Vec<T>, pending: &mut usize| {
        if *pending > 0 {
            blocks.push(T::Identity(*pending));
            *pending = 0;
        }
    };
    loop {
        // room for outputs still to come from the remaining wires at width 1 each
        let room = max_width.saturating_sub(out + remaining);
        let mut options: Vec<(Generator, u32)> = Vec::new();
        if used < budget {
            if room >= 1 {
                options.push((Generator::Eta, 2));
            }
            if remaining >= 1 {
                options.push((Generator::Eps, 2));
                if room >= 1 {
                    options.push((Generator::Delta, 4));
                }
            }
            if remaining >= 2 {
                options.push((Generator::Mu, 4));
                options.push((Generator::Tau, 2));
            }
        }
        let pass_weight = if remaining > 0 { 3 } else { 0 };
        let total: u32 = options.iter().map(|o| o.1).sum::<u32>() + pass_weight;
        if total == 0 {
            break;
        }
        // stop appending units once all wires are consumed, with some probability
        if remaining == 0 && rng.gen_bool(0.6) {
            break;
        }
        let mut pick = rng.gen_range(0..total);
        let mut chosen = None;
        for (gen, w) in &options {
            if pick < *w {
                chosen = Some(*gen);
                break;
            }
            pick -= w;
        }
        match chosen {
            None => {
                pending_id += 1;
                remaining -= 1;
                out += 1;
            }
            Some(gen) => {
                flush(&mut blocks, &mut pending_id);
                let a = gen.arity();
                blocks.push(g(gen));
                remaining -= a.dom;
                out += a.cod;
                used += 1;
            }
        }
        if remaining == 0 && used >= budget {
            break;
        }
    }
    flush(&mut blocks, &mut pending_id);
    let layer = T::tensor_all(blocks);
    (layer, used, out)
}

/// Rewrites `term` by `steps` random local moves that preserve the normal form.
pub fn random_rewrite(term: &CobordismTerm, seed: u64, steps: usize) -> CobordismTerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = term.clone();
    for _ in 0..steps {
        let n = t.size();
        let target = rng.gen_range(0..n);
        let mut counter = 0;
        t = rewrite_at(t, target, &mut counter, &mut rng);
    }
    t
}

fn rewrite_at<R: Rng>(t: T, target: usize, counter: &mut usize, rng: &mut R) -> T {
    let here = *counter;
    *counter += 1;
    if here == target {
        return local_move(t, rng);
    }
    match t {
        T::Compose(a, b) => {
            let a = rewrite_at(*a, target, counter, rng);
            let b = rewrite_at(*b, target, counter, rng);
            comp(a, b)
        }
        T::Tensor(a, b) => {
            let a = rewrite_at(*a, target, counter, rng);
            let b = rewrite_at(*b, target, counter, rng);
            tens(a, b)
        }
        leaf => leaf,
    }
}

fn sig(t: &T) -> Signature {
    t.signature().expect("rewrites only see well-formed terms")
}

/// Block swap moving the first `p` circles past the next `q` circles.
pub fn block_swap(p: usize, q: usize) -> CobordismTerm {
    if p == 0 || q == 0 {
        return T::Identity(p + q);
    }
    // move each of the first p circles right, last one first
    let mut steps = Vec::new();
    for i in (0..p).rev() {
        for j in 0..q {
            let pos = i + j;
            steps.push(adjacent_swap(p + q, pos));
        }
    }
    T::chain(steps).expect("block swap layers compose")
}

/// `tau` acting on circles `pos, pos+1` of `width`.
fn adjacent_swap(width: usize, pos: usize) -> T {
    let mut parts = Vec::new();
    if pos > 0 {
        parts.push(T::Identity(pos));
    }
    parts.push(g(Generator::Tau));
    let rest = width - pos - 2;
    if rest > 0 {
        parts.push(T::Identity(rest));
    }
    T::tensor_all(parts)
}

fn local_move<R: Rng>(t: T, rng: &mut R) -> T {
    let s = sig(&t);
    let mut candidates: Vec<T> = Vec::new();
    candidates.push(comp(T::Identity(s.cod), t.clone()));
    candidates.push(comp(t.clone(), T::Identity(s.dom)));
    match &t {
        T::Identity(1) => {
            let id1 = || T::Identity(1);
            candidates.push(comp(g(Generator::Mu), tens(g(Generator::Eta), id1())));
            candidates.push(comp(g(Generator::Mu), tens(id1(), g(Generator::Eta))));
            candidates.push(comp(tens(g(Generator::Eps), id1()), g(Generator::Delta)));
            candidates.push(comp(tens(id1(), g(Generator::Eps)), g(Generator::Delta)));
        }
        T::Identity(n) if *n >= 2 => {
            let k = rng.gen_range(1..*n);
            candidates.push(tens(T::Identity(k), T::Identity(n - k)));
            if *n == 2 {
                candidates.push(comp(g(Generator::Tau), g(Generator::Tau)));
            }
        }
        T::Generator(Generator::Mu) => {
            candidates.push(comp(g(Generator::Mu), g(Generator::Tau)));
        }
        T::Generator(Generator::Delta) => {
            candidates.push(comp(g(Generator::Tau), g(Generator::Delta)));
        }
        T::Generator(Generator::Tau) => {
            candidates.push(block_swap(1, 1));
        }
        T::Compose(a, b) => {
            // Frobenius
            if **a == g(Generator::Delta) && **b == g(Generator::Mu) {
                candidates.push(comp(
                    tens(g(Generator::Mu), T::Identity(1)),
                    tens(T::Identity(1), g(Generator::Delta)),
                ));
                candidates.push(comp(
                    tens(T::Identity(1), g(Generator::Mu)),
                    tens(g(Generator::Delta), T::Identity(1)),
                ));
            }
            // associativity and coassociativity
            if **a == g(Generator::Mu) && **b == tens(g(Generator::Mu), T::Identity(1)) {
                candidates.push(comp(g(Generator::Mu), tens(T::Identity(1), g(Generator::Mu))));
            }
            if **a == g(Generator::Mu) && **b == tens(T::Identity(1), g(Generator::Mu)) {
                candidates.push(comp(g(Generator::Mu), tens(g(Generator::Mu), T::Identity(1))));
            }
            if **b == g(Generator::Delta) && **a == tens(g(Generator::Delta), T::Identity(1)) {
                candidates.push(comp(tens(T::Identity(1), g(Generator::Delta)), g(Generator::Delta)));
            }
            if **b == g(Generator::Delta) && **a == tens(T::Identity(1), g(Generator::Delta)) {
                candidates.push(comp(tens(g(Generator::Delta), T::Identity(1)), g(Generator::Delta)));
            }
            // reassociate
            if let T::Compose(b1, b2) = &**b {
                candidates.push(comp(comp((**a).clone(), (**b1).clone()), (**b2).clone()));
            }
            if let T::Compose(a1, a2) = &**a {
                candidates.push(comp((**a1).clone(), comp((**a2).clone(), (**b).clone())));
            }
            // interchange: (a1 * a2) . (b1 * b2) -> (a1 . b1) * (a2 . b2) when widths line up
            if let (T::Tensor(a1, a2), T::Tensor(b1, b2)) = (&**a, &**b) {
                if sig(a1).dom == sig(b1).cod {
                    candidates.push(tens(
                        comp((**a1).clone(), (**b1).clone()),
                        comp((**a2).clone(), (**b2).clone()),
                    ));
                }
            }
            // identity elimination
            if let T::Identity(_) = &**a {
                candidates.push((**b).clone());
            }
            if let T::Identity(_) = &**b {
                candidates.push((**a).clone());
            }
        }
        T::Tensor(l, r) => {
            let (ls, rs) = (sig(l), sig(r));
            // interchange: a * b -> (a * id) . (id * b)
            candidates.push(comp(
                tens((**l).clone(), T::Identity(rs.cod)),
                tens(T::Identity(ls.dom), (**r).clone()),
            ));
            candidates.push(comp(
                tens(T::Identity(ls.cod), (**r).clone()),
                tens((**l).clone(), T::Identity(rs.dom)),
            ));
            // symmetry: a * b -> swap . (b * a) . swap
            candidates.push(
                T::chain([
                    block_swap(ls.dom, rs.dom),
                    tens((**r).clone(), (**l).clone()),
                    block_swap(rs.cod, ls.cod),
                ])
                .expect("braided swap composes"),
            );
            if let T::Tensor(l1, l2) = &**l {
                candidates.push(tens((**l1).clone(), tens((**l2).clone(), (**r).clone())));
            }
            if let T::Tensor(r1, r2) = &**r {
                candidates.push(tens(tens((**l).clone(), (**r1).clone()), (**r2).clone()));
            }
            if **l == T::Identity(0) {
                candidates.push((**r).clone());
            }
            if **r == T::Identity(0) {
                candidates.push((**l).clone());
            }
        }
        _ => {}
    }
    let idx = rng.gen_range(0..candidates.len());
    candidates.swap_remove(idx)
}

/// Connected surface with `m` inputs, `n` outputs and the given genus:
/// merge the inputs, add handles, then split.
pub fn connected_term(m: usize, n: usize, genus: u64) -> CobordismTerm {
    let mut steps: Vec<T> = Vec::new();
    if m == 0 {
        steps.push(g(Generator::Eta));
    } else {
        steps.push(T::Identity(m));
        for k in (2..=m).rev() {
            let mut parts = vec![g(Generator::Mu)];
            if k > 2 {
                parts.push(T::Identity(k - 2));
            }
            steps.push(T::tensor_all(parts));
        }
    }
    for _ in 0..genus {
        steps.push(g(Generator::Delta));
        steps.push(g(Generator::Mu));
    }
    if n == 0 {
        steps.push(g(Generator::Eps));
    } else {
        for k in 1..n {
            let mut parts = vec![g(Generator::Delta)];
            if k > 1 {
                parts.push(T::Identity(k - 1));
            }
            steps.push(T::tensor_all(parts));
        }
    }
    chain_pruned(steps, m)
}

/// Chain in application order with bare identity steps dropped.
fn chain_pruned(steps: Vec<T>, width: usize) -> T {
    let kept: Vec<T> = steps.into_iter().filter(|s| !matches!(s, T::Identity(_))).collect();
    if kept.is_empty() {
        return T::Identity(width);
    }
    T::chain(kept).expect("steps compose")
}

/// Random genus-0 term from `m` to `n` circles, built from random merge and
/// split trees with random twists and then scrambled by local rewrites.
pub fn random_genus0_term(seed: u64, m: usize, n: usize, rewrite_steps: usize) -> CobordismTerm {
    assert!(m + n > 0, "genus-0 term needs at least one boundary circle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let merge = random_merge_tree(&mut rng, m);
    let split = random_split_tree(&mut rng, n);
    let base = match (m, n) {
        (0, _) => comp(split, g(Generator::Eta)),
        (_, 0) => comp(g(Generator::Eps), merge),
        _ => comp(split, merge),
    };
    let t = random_rewrite(&base, rng.gen(), rewrite_steps);
    debug_assert_eq!(sig(&t), Signature::new(m, n));
    t
}

fn random_merge_tree<R: Rng>(rng: &mut R, m: usize) -> T {
    if m == 0 {
        return T::Identity(0);
    }
    let mut width = m;
    let mut steps = vec![T::Identity(m)];
    if m >= 2 && rng.gen_bool(0.5) {
        let pos = rng.gen_range(0..m - 1);
        steps.push(adjacent_swap(m, pos));
    }
    while width > 1 {
        let pos = rng.gen_range(0..width - 1);
        let mut parts = Vec::new();
        if pos > 0 {
            parts.push(T::Identity(pos));
        }
        parts.push(g(Generator::Mu));
        if width - pos - 2 > 0 {
            parts.push(T::Identity(width - pos - 2));
        }
        steps.push(T::tensor_all(parts));
        width -= 1;
    }
    T::chain(steps).expect("merge tree composes")
}

fn random_split_tree<R: Rng>(rng: &mut R, n: usize) -> T {
    if n == 0 {
        return T::Identity(0);
    }
    let mut width = 1;
    let mut steps = vec![T::Identity(1)];
    while width < n {
        let pos = rng.gen_range(0..width);
        let mut parts = Vec::new();
        if pos > 0 {
            parts.push(T::Identity(pos));
        }
        parts.push(g(Generator::Delta));
        if width - pos - 1 > 0 {
            parts.push(T::Identity(width - pos - 1));
        }
        steps.push(T::tensor_all(parts));
        width += 1;
    }
    if n >= 2 && rng.gen_bool(0.5) {
        let pos = rng.gen_range(0..n - 1);
        steps.push(adjacent_swap(n, pos));
    }
    T::chain(steps).expect("split tree composes")
}

/// A term realizing the given normal form: one connected block per
/// component, wired to the right circles by twists.
pub fn canonical_term(nf: &SurfaceNormalForm) -> CobordismTerm {
    // order circles component by component
    let mut input_order: Vec<usize> = Vec::new();
    let mut output_order: Vec<usize> = Vec::new();
    let mut blocks: Vec<T> = Vec::new();
    for c in &nf.components {
        input_order.extend(c.inputs.iter().map(|i| i - 1));
        output_order.extend(c.outputs.iter().map(|j| j - 1));
        blocks.push(connected_term(c.inputs.len(), c.outputs.len(), c.genus));
    }
    // adjacent cylinders merge into one identity block
    let mut merged: Vec<T> = Vec::new();
    for b in blocks {
        match (merged.last_mut(), &b) {
            (Some(T::Identity(a)), T::Identity(k)) => *a += k,
            _ => merged.push(b),
        }
    }
    let body = T::tensor_all(merged);
    // input permutation: position k of body receives circle input_order[k]
    let pre = permutation_term(&input_order);
    // output: circle output_order[k] is body output k, so invert
    let mut inverse = vec![0; output_order.len()];
    for (k, &j) in output_order.iter().enumerate() {
        inverse[j] = k;
    }
    let post = permutation_term(&inverse);
    chain_pruned(vec![pre, body, post], nf.m)
}

/// Term that moves incoming circle `perm[k]` to outgoing position `k`.
pub fn permutation_term(perm: &[usize]) -> CobordismTerm {
    let n = perm.len();
    let mut current: Vec<usize> = (0..n).collect();
    let mut steps = vec![T::Identity(n)];
    // bubble sort current into perm, one adjacent swap at a time
    for k in 0..n {
        let at = current
            .iter()
            .position(|&c| c == perm[k])
            .expect("perm is a permutation");
        for pos in (k..at).rev() {
            current.swap(pos, pos + 1);
            steps.push(adjacent_swap(n, pos));
        }
    }
    chain_pruned(steps, n)
}

/// Embeds `hole` in a random context: `outer . (pre * hole * post) . inner`
/// where the context pieces are random terms of matching widths.
pub fn random_context(seed: u64, hole: &CobordismTerm, size: usize) -> CobordismTerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    plug(&mut rng, hole.clone(), size)
}

pub(crate) fn plug<R: Rng>(rng: &mut R, hole: T, size: usize) -> T {
    let s = sig(&hole);
    let left = rng.gen_range(0..=2usize);
    let right = rng.gen_range(0..=1usize);
    let mut parts = Vec::new();
    if left > 0 {
        parts.push(T::Identity(left));
    }
    parts.push(hole);
    if right > 0 {
        parts.push(T::Identity(right));
    }
    let middle = T::tensor_all(parts);
    let dom = s.dom + left + right;
    let cod = s.cod + left + right;
    let inner = random_term_to(rng, dom, size / 2 + 1);
    let outer = random_term_from(rng, cod, size / 2 + 1);
    T::chain([inner, middle, outer]).expect("context composes")
}

/// Random term whose codomain is `width`.
fn random_term_to<R: Rng>(rng: &mut R, width: usize, size: usize) -> T {
    // build from width using mirrored layers, then reverse arrows is not
    // available, so build forward from a random start and pad with splits/merges
    let mut t = random_term_from(rng, width, size);
    let cod = sig(&t).cod;
    // t: width -> cod; we need something ending at width, so adjust via a bridge
    t = comp(bridge(cod, width), t);
    // prefix to a fresh random domain
    let start = rng.gen_range(0..=2usize);
    comp(t, bridge(start, width))
}

/// Random term whose domain is `width`.
fn random_term_from<R: Rng>(rng: &mut R, width: usize, size: usize) -> T {
    let mut acc = T::Identity(width);
    let mut w = width;
    let mut budget = size;
    let mut guard = 0;
    while budget > 0 && guard < 4 * size + 8 {
        guard += 1;
        let (layer, used, out) = random_layer(rng, w, w + 2, budget);
        if used == 0 {
            continue;
        }
        budget -= used.min(budget);
        w = out;
        acc = comp(layer, acc);
    }
    acc
}

/// Some genus-0 connection from `a` circles to `b` circles.
fn bridge(a: usize, b: usize) -> T {
    if a == b {
        return T::Identity(a);
    }
    let common = a.min(b);
    let extra_in = a - common;
    let extra_out = b - common;
    let mut parts = vec![T::Identity(common)];
    if extra_in > 0 {
        parts.push(connected_term(extra_in, 0, 0));
    }
    if extra_out > 0 {
        parts.push(connected_term(0, extra_out, 0));
    }
    T::tensor_all(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cob2::{normalize, parse_and_check};

    #[test]
    fn size_one_is_a_generator() {
        for seed in 0..20 {
            assert!(matches!(random_term(seed, 1, 4), T::Generator(_)));
        }
    }

    #[test]
    fn deterministic_in_seed() {
        for seed in 0..20 {
            assert_eq!(random_term(seed, 8, 4), random_term(seed, 8, 4));
        }
    }

    #[test]
    fn rendered_random_terms_parse_back() {
        let t = random_term(7, 8, 4);
        let (back, s) = parse_and_check(&t.to_string()).unwrap();
        assert_eq!(back, t);
        assert_eq!(s, t.signature().unwrap());
    }

    #[test]
    fn width_bound_is_respected_and_terms_well_formed() {
        for seed in 0..200 {
            let t = random_term(seed, 12, 4);
            let s = t.signature().unwrap();
            assert!(s.dom <= 4 && s.cod <= 4, "{t}");
        }
    }

    #[test]
    fn connected_terms_have_requested_shape() {
        for m in 0..4 {
            for n in 0..4 {
                for genus in 0..3 {
                    if m + n == 0 && genus == 0 {
                        continue;
                    }
                    let f = normalize(&connected_term(m, n, genus)).unwrap();
                    assert_eq!(f.components.len(), 1);
                    assert_eq!(f.components[0].genus, genus);
                    assert_eq!(f.components[0].inputs, (1..=m).collect::<Vec<_>>());
                    assert_eq!(f.components[0].outputs, (1..=n).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn permutation_terms_route_circles() {
        let t = permutation_term(&[2, 0, 1]);
        let f = normalize(&t).unwrap();
        // output k carries input perm[k]
        assert_eq!(
            f.to_string(),
            "3->3: [in 1 | out 2 | g0] [in 2 | out 3 | g0] [in 3 | out 1 | g0]"
        );
    }

    #[test]
    fn canonical_term_round_trips() {
        for seed in 0..100 {
            let t = random_term(seed, 10, 4);
            let f = normalize(&t).unwrap();
            let c = canonical_term(&f);
            assert_eq!(normalize(&c).unwrap(), f, "{t}");
        }
    }

    #[test]
    fn canonical_terms_are_short() {
        let f = normalize(&parse_and_check("mu . (eta * id(1))").unwrap().0).unwrap();
        assert_eq!(canonical_term(&f).to_string(), "id(1)");
        let f = normalize(&parse_and_check("tau . tau").unwrap().0).unwrap();
        assert_eq!(canonical_term(&f).to_string(), "id(2)");
        let f = normalize(&parse_and_check("eps . mu . delta . eta").unwrap().0).unwrap();
        assert_eq!(canonical_term(&f).to_string(), "eps . mu . delta . eta");
    }

    #[test]
    fn rewrites_preserve_normal_form() {
        for seed in 0..150 {
            let t = random_term(seed, 8, 4);
            let r = random_rewrite(&t, seed ^ 0xabc, 12);
            assert_eq!(normalize(&r).unwrap(), normalize(&t).unwrap(), "{t}  vs  {r}");
        }
    }

    #[test]
    fn random_genus0_terms_are_genus0() {
        for m in 0..4 {
            for n in 0..4 {
                if m + n == 0 {
                    continue;
                }
                for seed in 0..10 {
                    let t = random_genus0_term(seed, m, n, 6);
                    assert_eq!(t.signature().unwrap(), Signature::new(m, n));
                    let f = normalize(&t).unwrap();
                    assert!(f.is_connected_genus0(), "{t}: {f}");
                }
            }
        }
    }

    #[test]
    fn contexts_are_well_formed() {
        for seed in 0..50 {
            let hole = random_term(seed, 4, 3);
            let t = random_context(seed + 1000, &hole, 6);
            assert!(t.signature().is_ok());
        }
    }
}
