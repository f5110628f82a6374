use charlab::arith::{gcd, units};
use charlab::cyclotomic::{sigma_alpha, CycNum, GaloisAut};
use proptest::prelude::*;

const ORDERS: [u32; 14] = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 20, 24, 27];

fn number(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-3i64..=3, order as usize)
        .prop_map(move |m| CycNum::from_root_multiplicities(order, &m))
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| (number(n), number(n), number(n)))
}

fn unit_of(n: u32) -> impl Strategy<Value = u64> {
    prop::sample::select(units(n as u64))
}

/// Least `m | n` such that every `t = 1 (mod m)` fixes `x`.
fn conductor_oracle(x: &CycNum) -> u32 {
    let n = x.order();
    (1..=n)
        .filter(|m| n.is_multiple_of(*m))
        .find(|&m| {
            units(n as u64)
                .into_iter()
                .filter(|t| t % m as u64 == 1 % m as u64)
                .all(|t| x.galois(&GaloisAut::new(n, t as i64).unwrap()).unwrap() == *x)
        })
        .unwrap()
}

proptest! {
    #[test]
    fn ring_laws((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycNum::one(a.order()), a.clone());
    }

    #[test]
    fn galois_is_a_ring_hom(
        (t, (a, b)) in prop::sample::select(ORDERS.to_vec())
            .prop_flat_map(|n| (unit_of(n), (number(n), number(n))))
    ) {
        let n = a.order();
        let tau = GaloisAut::new(n, t as i64).unwrap();
        let g = |x: &CycNum| x.galois(&tau).unwrap();
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(g(&a.conj()), g(&a).conj());
        let inv = GaloisAut::new(n, charlab::arith::mod_inverse(t, n as u64).unwrap() as i64).unwrap();
        prop_assert_eq!(g(&a).galois(&inv).unwrap(), a);
    }

    #[test]
    fn conductor_matches_oracle_and_is_stable(
        (a, k, t) in prop::sample::select(ORDERS.to_vec())
            .prop_flat_map(|n| (number(n), 1u32..=4, unit_of(n)))
    ) {
        let c = a.conductor();
        prop_assert_eq!(c, conductor_oracle(&a));
        let big = a.embed(a.order() * k).unwrap();
        prop_assert_eq!(big.conductor(), c);
        prop_assert_eq!(big.normalized(), a.normalized());
        let tau = GaloisAut::new(a.order(), t as i64).unwrap();
        prop_assert_eq!(a.galois(&tau).unwrap().conductor(), c);
    }

    #[test]
    fn encoding_round_trip(a in prop::sample::select(ORDERS.to_vec()).prop_flat_map(number)) {
        let back: CycNum = a.encode().parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.encode(), a.encode());
    }

    #[test]
    fn sigma_has_p_power_order(p in prop::sample::select(vec![2u64, 3, 5, 7]), a in 1u32..=4, alpha in 1u32..=5, m in 1u32..=6) {
        prop_assume!(gcd(m as u64, p) == 1);
        let pa = (p as u32).pow(a);
        let n = pa * m;
        let s = sigma_alpha(p, alpha, n);
        let mut ord = s.order();
        while ord.is_multiple_of(p) {
            ord /= p;
        }
        prop_assert_eq!(ord, 1);
        prop_assert_eq!(s.is_identity(), alpha >= a);
        // fixes p'-roots, raises p-power roots to the (1 + p^alpha)-th power
        let z = CycNum::root(n, pa as i64);
        prop_assert_eq!(z.galois(&s).unwrap(), z);
        let w = CycNum::root(n, m as i64);
        let e = 1 + (p as i64).pow(alpha);
        prop_assert_eq!(w.galois(&s).unwrap(), CycNum::root(n, m as i64 * e));
    }
}

#[test]
fn known_conductors() {
    let r = |n, k| CycNum::root(n, k);
    // sqrt(-3) = 2 zeta_3 + 1
    let s3 = &r(3, 1).scale_int(2) + &CycNum::one(3);
    assert_eq!(&s3 * &s3, CycNum::from_int(3, -3));
    assert_eq!(s3.embed(12).unwrap().conductor(), 3);
    // zeta_4 = i has conductor 4; zeta_6 = -zeta_3^2 has conductor 3
    assert_eq!(r(4, 1).conductor(), 4);
    assert_eq!(r(6, 1).conductor(), 3);
    // zeta_8 + zeta_8^3 = i sqrt(2) generates Q(sqrt(-2)), conductor 8
    assert_eq!((&r(8, 1) + &r(8, 3)).conductor(), 8);
    assert_eq!(CycNum::from_int(36, -7).conductor(), 1);
}
