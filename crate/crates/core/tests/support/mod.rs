//! Seeded random generators shared by the property tests and the CLI
//! acceptance suite.
#![allow(dead_code)]

use motivic_core::oracle::{pure_dimension, MPoly};
use motivic_core::{normalize, AtomMonomial, LPolynomial, MotivicClass, VarietyExpr as V};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Atom names, including ones that print quoted.
pub const ATOM_NAMES: [&str; 4] = ["C", "S", "L", "two words"];

pub fn lpoly(rng: &mut impl Rng, max_deg: u32, max_coeff: i64) -> LPolynomial {
    let deg = rng.gen_range(0..=max_deg);
    let dense: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
    LPolynomial::from_dense(&dense)
}

pub fn monomial(rng: &mut impl Rng) -> AtomMonomial {
    let n = rng.gen_range(0..=2);
    let factors: Vec<(&str, u32)> = ATOM_NAMES
        .choose_multiple(rng, n)
        .map(|name| (*name, rng.gen_range(1..=2)))
        .collect();
    AtomMonomial::from_factors(factors).expect("small exponents")
}

/// A class with up to three monomials, degree at most 3 and coefficients
/// bounded by 20, so triple products stay far from overflow.
pub fn class(rng: &mut impl Rng) -> MotivicClass {
    let n = rng.gen_range(0..=3);
    let terms: Vec<(AtomMonomial, LPolynomial)> = (0..n).map(|_| (monomial(rng), lpoly(rng, 3, 20))).collect();
    MotivicClass::from_terms(terms).expect("small coefficients")
}

pub fn atom_free_class(rng: &mut impl Rng) -> MotivicClass {
    lpoly(rng, 3, 20).into()
}

fn atom_leaf(rng: &mut impl Rng) -> V {
    // One fixed dimension per name keeps declarations consistent.
    let (name, dim) = [("C", 1), ("S", 2), ("L", 0), ("two words", 3)][rng.gen_range(0..4)];
    V::atom(name, rng.gen_bool(0.5).then_some(dim))
}

/// Any well-formed expression, atoms and fibrations included.
pub fn expr(rng: &mut impl Rng, depth: u32) -> V {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..6) {
            0 => V::Empty,
            1 => V::Point,
            2 => V::Affine(rng.gen_range(0..=3)),
            3 => V::Projective(rng.gen_range(0..=3)),
            _ => atom_leaf(rng),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => V::product(expr(rng, d), expr(rng, d)),
        1 => {
            let n = rng.gen_range(2..=3);
            V::Disjoint((0..n).map(|_| expr(rng, d)).collect())
        }
        2 => V::complement(expr(rng, d), expr(rng, d)),
        3 => V::fibration(expr(rng, d), expr(rng, d)),
        4 => V::blow_up(expr(rng, d), expr(rng, d), rng.gen_range(1..=3)),
        _ => V::scale(rng.gen_range(1..=5), expr(rng, d)),
    }
}

/// Largest dimension of any component, with `empty` counted as 0.
pub fn max_dim(e: &V) -> u32 {
    match e {
        V::Empty | V::Point => 0,
        V::Affine(n) | V::Projective(n) => *n,
        V::Product(a, b) | V::Fibration { base: a, fiber: b } => max_dim(a) + max_dim(b),
        V::Disjoint(parts) => parts.iter().map(max_dim).max().unwrap_or(0),
        V::Complement { total, .. } => max_dim(total),
        V::BlowUp { ambient, .. } => max_dim(ambient),
        V::Scale(_, inner) => max_dim(inner),
        V::Atom { dim, .. } => dim.unwrap_or(0),
    }
}

const PRIMES: [i64; 3] = [2, 3, 5];

/// Fewest rational points of `e` over the test primes.
fn min_count(e: &V) -> u64 {
    let c = normalize(e).expect("generated expressions normalize");
    PRIMES
        .iter()
        .map(|q| c.eval(*q).expect("atom-free").max(0) as u64)
        .min()
        .unwrap_or(0)
}

/// Largest count over `F_5` of `e` or any subexpression, a proxy for the
/// enumeration work the oracle will do.
fn max_work(e: &V) -> u64 {
    let own = normalize(e)
        .ok()
        .and_then(|c| c.eval(5).ok())
        .map_or(u64::MAX, |v| v.unsigned_abs());
    let children = match e {
        V::Product(a, b) | V::Fibration { base: a, fiber: b } => max_work(a).max(max_work(b)),
        V::Complement { total, closed } => max_work(total).max(max_work(closed)),
        V::BlowUp { ambient, center, .. } => max_work(ambient).max(max_work(center)),
        V::Disjoint(parts) => parts.iter().map(max_work).max().unwrap_or(0),
        V::Scale(_, inner) => max_work(inner),
        _ => 0,
    };
    own.max(children)
}

/// A closed subvariety of `x` that the oracle can locate: nothing, all of
/// `x`, some of its rational points, or a structural piece (a linear
/// subspace, a product of closed pieces, a piece of one component).
pub fn closed_sub(rng: &mut impl Rng, x: &V) -> V {
    let points = min_count(x).min(5);
    match rng.gen_range(0..5) {
        0 => return V::Empty,
        1 => return x.clone(),
        2 if points > 0 => return V::points(rng.gen_range(1..=points as u32)),
        _ => {}
    }
    match x {
        V::Affine(n) => V::Affine(rng.gen_range(0..=*n)),
        V::Projective(n) => V::Projective(rng.gen_range(0..=*n)),
        V::Product(a, b) => V::product(closed_sub(rng, a), closed_sub(rng, b)),
        V::Disjoint(parts) => {
            if rng.gen_bool(0.5) {
                V::Disjoint(parts.iter().map(|p| closed_sub(rng, p)).collect())
            } else {
                let part = parts.choose(rng).expect("nonempty");
                closed_sub(rng, part)
            }
        }
        V::Scale(l, inner) => {
            if rng.gen_bool(0.5) {
                V::scale(rng.gen_range(1..=*l), closed_sub(rng, inner))
            } else {
                closed_sub(rng, inner)
            }
        }
        _ if points > 0 => V::points(rng.gen_range(1..=points as u32)),
        _ => V::Empty,
    }
}

fn countable_leaf(rng: &mut impl Rng, cap: u32) -> V {
    let n = rng.gen_range(0..=cap.min(3));
    match rng.gen_range(0..7) {
        0 => V::Empty,
        1 | 2 => V::Point,
        3 | 4 => V::Affine(n),
        _ => V::Projective(n),
    }
}

fn countable_node(rng: &mut impl Rng, depth: u32, cap: u32) -> V {
    if depth == 0 || rng.gen_bool(0.25) {
        return countable_leaf(rng, cap);
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => {
            let a = countable_node(rng, d, cap);
            let b = countable_node(rng, d, cap.saturating_sub(max_dim(&a)));
            V::product(a, b)
        }
        1 => {
            let n = rng.gen_range(2..=3);
            V::Disjoint((0..n).map(|_| countable_node(rng, d, cap)).collect())
        }
        2 => V::scale(rng.gen_range(1..=5), countable_node(rng, d, cap)),
        3 => {
            let x = countable_node(rng, d, cap);
            let z = closed_sub(rng, &x);
            V::complement(x, z)
        }
        _ => blow_up(rng, d, cap),
    }
}

fn blow_up(rng: &mut impl Rng, depth: u32, cap: u32) -> V {
    if cap >= 1 && rng.gen_bool(0.5) {
        let y = countable_node(rng, depth, cap);
        if let Some(dy) = pure_dimension(&y).filter(|d| *d >= 1) {
            for _ in 0..4 {
                let z = closed_sub(rng, &y);
                if let Some(dz) = pure_dimension(&z).filter(|dz| *dz < dy) {
                    return V::blow_up(y, z, dy - dz);
                }
            }
        }
    }
    if cap == 0 {
        return countable_leaf(rng, cap);
    }
    // P^n at k <= 2^(n+1) - 1 = |P^n(F_2)| points.
    let n = rng.gen_range(1..=cap.min(3));
    let k = rng.gen_range(1..=(1u32 << (n + 1)) - 1);
    V::blow_up(V::Projective(n), V::points(k), n)
}

/// A random expression inside the oracle's countable fragment: depth at
/// most `depth`, leaf dimensions at most 3, scalars at most 5, complements
/// and blow-up centers built from closed subvarieties the oracle can embed,
/// and at most `max_points` points over `F_5` in any subexpression.
pub fn countable(rng: &mut impl Rng, depth: u32, max_points: u64) -> V {
    loop {
        let e = countable_node(rng, depth, 4);
        if max_work(&e) <= max_points {
            return e;
        }
    }
}

/// A homogeneous polynomial of degree `deg` in `nvars` variables.
pub fn homogeneous(rng: &mut impl Rng, nvars: usize, deg: u32) -> MPoly {
    let mut acc = MPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let mut mono = MPoly::constant(nvars, rng.gen_range(-3..=3));
        for _ in 0..deg {
            mono = mono.checked_mul(&MPoly::var(nvars, rng.gen_range(0..nvars))).unwrap();
        }
        acc = acc.checked_add(&mono).unwrap();
    }
    acc
}

/// A polynomial of bidegree (1, 1) in two blocks of two variables each.
pub fn bilinear(rng: &mut impl Rng) -> MPoly {
    let mut acc = MPoly::zero(4);
    for i in 0..2 {
        for j in 2..4 {
            let m = MPoly::constant(4, rng.gen_range(-2..=2))
                .checked_mul(&MPoly::var(4, i))
                .unwrap()
                .checked_mul(&MPoly::var(4, j))
                .unwrap();
            acc = acc.checked_add(&m).unwrap();
        }
    }
    acc
}
