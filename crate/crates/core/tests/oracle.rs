//! A deliberately naive model of the split octonions over a prime field:
//! plain `[i64; 8]` coordinates reduced mod p, no traits, no tables. The
//! library is checked against it and the derived counts are frozen here.

use std::collections::{BTreeMap, BTreeSet};

use paige::autos::doubling_triple_census;
use paige::{FiniteField, Gf, Octonion, PaigeLoop2, PaigeLoop3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type O = [i64; 8];

fn dot(p: i64, u: &[i64], v: &[i64]) -> i64 {
    u.iter()
        .zip(v)
        .map(|(x, y)| x * y)
        .sum::<i64>()
        .rem_euclid(p)
}

fn cross(u: &[i64], v: &[i64]) -> [i64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// Coordinates `[a, alpha, beta, b]`.
fn mul(p: i64, x: &O, y: &O) -> O {
    let (a, al, be, b) = (x[0], &x[1..4], &x[4..7], x[7]);
    let (c, ga, de, d) = (y[0], &y[1..4], &y[4..7], y[7]);
    let bd = cross(be, de);
    let ag = cross(al, ga);
    let mut out = [0; 8];
    out[0] = a * c + dot(p, al, de);
    for i in 0..3 {
        out[1 + i] = a * ga[i] + d * al[i] - bd[i];
        out[4 + i] = c * be[i] + b * de[i] + ag[i];
    }
    out[7] = dot(p, be, ga) + b * d;
    out.map(|v| v.rem_euclid(p))
}

fn norm(p: i64, x: &O) -> i64 {
    (x[0] * x[7] - dot(p, &x[1..4], &x[4..7])).rem_euclid(p)
}

fn add(p: i64, x: &O, y: &O) -> O {
    std::array::from_fn(|i| (x[i] + y[i]).rem_euclid(p))
}

fn form(p: i64, x: &O, y: &O) -> i64 {
    (norm(p, &add(p, x, y)) - norm(p, x) - norm(p, y)).rem_euclid(p)
}

const E: O = [1, 0, 0, 0, 0, 0, 0, 1];

fn all(p: i64) -> impl Iterator<Item = O> {
    (0..p.pow(8)).map(move |mut k| {
        let mut x = [0; 8];
        for slot in x.iter_mut().rev() {
            *slot = k % p;
            k /= p;
        }
        x
    })
}

fn units(p: i64) -> Vec<O> {
    all(p).filter(|x| norm(p, x) == 1).collect()
}

fn order(p: i64, x: &O, minus: bool) -> u64 {
    let neg_e = E.map(|v| (-v).rem_euclid(p));
    let (mut y, mut n) = (*x, 1);
    while y != E && !(minus && y == neg_e) {
        y = mul(p, &y, x);
        n += 1;
    }
    n
}

/// Gaussian elimination over GF(2) on bit rows.
fn rank2(rows: &[O]) -> usize {
    let mut bits: Vec<u8> = rows
        .iter()
        .map(|r| r.iter().fold(0u8, |acc, &c| acc << 1 | c as u8))
        .collect();
    let mut rank = 0;
    for col in (0..8).rev() {
        let Some(pivot) = (rank..bits.len()).find(|&i| bits[i] >> col & 1 == 1) else {
            continue;
        };
        bits.swap(rank, pivot);
        for i in 0..bits.len() {
            if i != rank && bits[i] >> col & 1 == 1 {
                bits[i] ^= bits[rank];
            }
        }
        rank += 1;
    }
    rank
}

fn to_lib<const Q: u8>(x: &O) -> Octonion<Gf<Q>> {
    Octonion::from_coords(x.map(|c| Gf::<Q>::new(c as u8)))
}

fn from_lib<const Q: u8>(x: &Octonion<Gf<Q>>) -> O {
    x.coords().map(|c| c.index() as i64)
}

fn products_agree<const Q: u8>() {
    let p = Q as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(Q as u64);
    for _ in 0..20_000 {
        let x: O = std::array::from_fn(|_| rng.gen_range(0..p));
        let y: O = std::array::from_fn(|_| rng.gen_range(0..p));
        let (lx, ly) = (to_lib::<Q>(&x), to_lib::<Q>(&y));
        assert_eq!(from_lib::<Q>(&(lx * ly)), mul(p, &x, &y), "{x:?} * {y:?}");
        assert_eq!(lx.norm().index() as i64, norm(p, &x));
        assert_eq!(lx.bilinear(&ly).index() as i64, form(p, &x, &y));
    }
}

#[test]
fn products_agree_over_prime_fields() {
    products_agree::<2>();
    products_agree::<3>();
    products_agree::<5>();
    products_agree::<7>();
}

#[test]
fn norm_is_multiplicative_in_the_oracle() {
    let p = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let x: O = std::array::from_fn(|_| rng.gen_range(0..p));
        let y: O = std::array::from_fn(|_| rng.gen_range(0..p));
        assert_eq!(norm(p, &mul(p, &x, &y)), norm(p, &x) * norm(p, &y) % p);
    }
}

#[test]
fn loop_at_q2() {
    let u = units(2);
    assert_eq!(u.len(), 120);
    let mut census = BTreeMap::new();
    for x in &u {
        *census.entry(order(2, x, false)).or_insert(0) += 1;
    }
    assert_eq!(census, BTreeMap::from([(1, 1), (2, 63), (3, 56)]));

    let t = PaigeLoop2::paige().unwrap();
    let lib: BTreeSet<O> = t.elements().iter().map(from_lib::<2>).collect();
    assert_eq!(lib, u.iter().copied().collect());
    assert_eq!(t.census(), census);
}

#[test]
fn loop_at_q3() {
    let u = units(3);
    assert_eq!(u.len(), 2160);
    let classes: BTreeSet<O> = u
        .iter()
        .map(|x| *x.min(&x.map(|c| (-c).rem_euclid(3))))
        .collect();
    assert_eq!(classes.len(), 1080);

    let mut census = BTreeMap::new();
    for x in &classes {
        *census.entry(order(3, x, true)).or_insert(0) += 1;
    }
    let t = PaigeLoop3::paige().unwrap();
    assert_eq!(t.len(), 1080);
    assert_eq!(t.census(), census);
}

/// Every ordered triple of unit elements is tested directly, without the
/// census's orders, involution pairs or dot-product shortcuts.
#[test]
fn doubling_triples_at_q2() {
    let p = 2;
    let u = units(p);
    let perp = |x: &O, y: &O| form(p, x, y) == 0;
    let mut found = BTreeSet::new();
    for a in u.iter().filter(|a| !perp(a, &E)) {
        for b in u.iter().filter(|b| perp(b, &E) && perp(b, a)) {
            let ab = mul(p, a, b);
            for c in &u {
                if !(perp(c, &E) && perp(c, a) && perp(c, b) && perp(c, &ab)) {
                    continue;
                }
                let basis = [
                    E,
                    *a,
                    *b,
                    ab,
                    *c,
                    mul(p, a, c),
                    mul(p, b, c),
                    mul(p, &ab, c),
                ];
                if rank2(&basis) == 8 {
                    found.insert([*a, *b, *c]);
                }
            }
        }
    }
    assert_eq!(found.len(), 12096);

    let t = PaigeLoop2::paige().unwrap();
    let lib: BTreeSet<[O; 3]> = doubling_triple_census::<Gf<2>>(&t)
        .unwrap()
        .iter()
        .map(|k| k.map(|i| from_lib::<2>(t.element(i))))
        .collect();
    assert_eq!(lib, found);
}
