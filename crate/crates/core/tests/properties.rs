//! Property suites: directed-rounding bracketing against the exact rational
//! oracle, interval enclosure and isotonicity, outward soundness of the
//! float modes, and enclosure soundness of interval matrix products.

mod common;

use common::rat;
use hyperinv::scalar::{BigF, Precision, Round, Scalar};
use hyperinv::{Interval, IntervalMatrix, PointMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    rat(rng.gen_range(-1000..=1000), rng.gen_range(1..=64))
}

/// Down/Up results of every arithmetic op bracket the exact rational value,
/// in both float modes, on 1000 seeded random pairs.
#[test]
fn directed_ops_bracket_the_exact_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p64 = Precision(64);
    for _ in 0..1000 {
        let (qa, qb) = (random_rational(&mut rng), random_rational(&mut rng));

        let fa = f64::from_rational(&(), &qa, Round::Nearest).unwrap();
        let fb = f64::from_rational(&(), &qb, Round::Nearest).unwrap();
        let ba = BigF::from_rational(&p64, &fa.to_rational(), Round::Nearest).unwrap();
        let bb = BigF::from_rational(&p64, &fb.to_rational(), Round::Nearest).unwrap();

        // the converted operands are the ground truth for the oracle
        let (qa, qb) = (fa.to_rational(), fb.to_rational());
        let exact: [(&str, Option<BigRational>); 4] = [
            ("add", Some(&qa + &qb)),
            ("sub", Some(&qa - &qb)),
            ("mul", Some(&qa * &qb)),
            ("div", (!num_traits::Zero::is_zero(&qb)).then(|| &qa / &qb)),
        ];
        for (op, want) in exact {
            let Some(want) = want else { continue };
            let (f_lo, f_hi, b_lo, b_hi) = match op {
                "add" => (
                    fa.dir_add(&fb, Round::Down),
                    fa.dir_add(&fb, Round::Up),
                    ba.dir_add(&bb, Round::Down),
                    ba.dir_add(&bb, Round::Up),
                ),
                "sub" => (
                    fa.dir_sub(&fb, Round::Down),
                    fa.dir_sub(&fb, Round::Up),
                    ba.dir_sub(&bb, Round::Down),
                    ba.dir_sub(&bb, Round::Up),
                ),
                "mul" => (
                    fa.dir_mul(&fb, Round::Down),
                    fa.dir_mul(&fb, Round::Up),
                    ba.dir_mul(&bb, Round::Down),
                    ba.dir_mul(&bb, Round::Up),
                ),
                _ => (
                    fa.dir_div(&fb, Round::Down),
                    fa.dir_div(&fb, Round::Up),
                    ba.dir_div(&bb, Round::Down),
                    ba.dir_div(&bb, Round::Up),
                ),
            };
            let (f_lo, f_hi) = (f_lo.unwrap(), f_hi.unwrap());
            let (b_lo, b_hi) = (b_lo.unwrap(), b_hi.unwrap());
            assert!(f_lo <= f_hi, "{op}: f64 bracket inverted");
            assert!(
                f_lo.to_rational() <= want && want <= f_hi.to_rational(),
                "{op}: f64 bracket misses exact value for {qa} {qb}"
            );
            assert!(
                b_lo.to_rational() <= want && want <= b_hi.to_rational(),
                "{op}: bigfloat bracket misses exact value for {qa} {qb}"
            );
        }
    }
}

/// Exact-rational arithmetic agrees with an independent naive fraction
/// implementation on 500 random fractions.
#[test]
fn rational_mode_matches_naive_fractions() {
    #[derive(Clone, Copy)]
    struct Frac {
        num: i128,
        den: i128,
    }
    impl Frac {
        fn reduce(self) -> Self {
            fn gcd(a: i128, b: i128) -> i128 {
                if b == 0 {
                    a.abs()
                } else {
                    gcd(b, a % b)
                }
            }
            let g = gcd(self.num, self.den).max(1);
            let sign = if self.den < 0 { -1 } else { 1 };
            Frac {
                num: sign * self.num / g,
                den: sign * self.den / g,
            }
        }
        fn add(self, o: Frac) -> Frac {
            Frac {
                num: self.num * o.den + o.num * self.den,
                den: self.den * o.den,
            }
            .reduce()
        }
        fn mul(self, o: Frac) -> Frac {
            Frac {
                num: self.num * o.num,
                den: self.den * o.den,
            }
            .reduce()
        }
        fn to_rat(self) -> BigRational {
            BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let a = Frac {
            num: rng.gen_range(-99..=99),
            den: rng.gen_range(1..=99),
        };
        let b = Frac {
            num: rng.gen_range(-99..=99),
            den: rng.gen_range(1..=99),
        };
        let (qa, qb) = (a.to_rat(), b.to_rat());
        assert_eq!(qa.dir_add(&qb, Round::Down).unwrap(), a.add(b).to_rat());
        assert_eq!(qa.dir_mul(&qb, Round::Up).unwrap(), a.mul(b).to_rat());
        let neg_b = Frac { num: -b.num, den: b.den };
        assert_eq!(qa.dir_sub(&qb, Round::Nearest).unwrap(), a.add(neg_b).to_rat());
        if b.num != 0 {
            let inv_b = Frac { num: b.den, den: b.num }.reduce();
            assert_eq!(qa.dir_div(&qb, Round::Down).unwrap(), a.mul(inv_b).to_rat());
        }
    }
}

fn rational_interval() -> impl Strategy<Value = Interval<BigRational>> {
    ((-400i64..=400, 1i64..=40), (-400i64..=400, 1i64..=40)).prop_map(|(a, b)| {
        let x = rat(a.0, a.1);
        let y = rat(b.0, b.1);
        if x <= y {
            Interval::new(x, y).unwrap()
        } else {
            Interval::new(y, x).unwrap()
        }
    })
}

/// A random interval together with a random subinterval.
fn nested_intervals() -> impl Strategy<Value = (Interval<BigRational>, Interval<BigRational>)> {
    (rational_interval(), 0u32..=8, 0u32..=8).prop_map(|(outer, s, t)| {
        let w = outer.hi() - outer.lo();
        let lo = outer.lo() + &w * rat(s as i64, 16);
        let hi = outer.hi() - &w * rat(t as i64, 16);
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        (outer.clone(), Interval::new(lo, hi).unwrap())
    })
}

proptest! {
    /// a' ⊆ a, b' ⊆ b implies a' ∘ b' ⊆ a ∘ b for + - *.
    #[test]
    fn inclusion_isotonicity((a, a_sub) in nested_intervals(), (b, b_sub) in nested_intervals()) {
        prop_assert!(a.add(&b).unwrap().encloses(&a_sub.add(&b_sub).unwrap()));
        prop_assert!(a.sub(&b).unwrap().encloses(&a_sub.sub(&b_sub).unwrap()));
        prop_assert!(a.mul(&b).unwrap().encloses(&a_sub.mul(&b_sub).unwrap()));
    }

    /// Sampled member sums and products always land inside the result.
    #[test]
    fn sampling_containment(a in rational_interval(), b in rational_interval(), steps in 1usize..=10) {
        let sum = a.add(&b).unwrap();
        let prod = a.mul(&b).unwrap();
        for i in 0..=steps {
            let t = rat(i as i64, steps as i64);
            let x = a.lo() + (a.hi() - a.lo()) * &t;
            for j in 0..=steps {
                let u = rat(j as i64, steps as i64);
                let y = b.lo() + (b.hi() - b.lo()) * &u;
                prop_assert!(sum.contains_rational(&(&x + &y)));
                prop_assert!(prod.contains_rational(&(&x * &y)));
            }
        }
    }

    /// The exact-rational result is contained in the hardware-float result
    /// on identical inputs (outward soundness of the float mode).
    #[test]
    fn outward_soundness_f64((a, _) in nested_intervals(), (b, _) in nested_intervals()) {
        let fa = Interval::<f64>::from_rationals(&(), &a.lo().to_rational(), &a.hi().to_rational()).unwrap();
        let fb = Interval::<f64>::from_rationals(&(), &b.lo().to_rational(), &b.hi().to_rational()).unwrap();
        // the float intervals enclose the rational ones, so every exact
        // endpoint of the rational result must lie inside the float result
        for (exact, float) in [
            (a.add(&b).unwrap(), fa.add(&fb).unwrap()),
            (a.sub(&b).unwrap(), fa.sub(&fb).unwrap()),
            (a.mul(&b).unwrap(), fa.mul(&fb).unwrap()),
        ] {
            prop_assert!(float.contains_rational(&exact.lo().to_rational()));
            prop_assert!(float.contains_rational(&exact.hi().to_rational()));
        }
    }

    /// Subdistributivity: X(Y+Z) ⊆ XY + XZ entrywise on random 3x3 inputs.
    #[test]
    fn subdistributivity(seed in 0u64..1u64 << 48) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mk = |_: usize| {
            IntervalMatrix::from_fn(3, 3, |_, _| {
                let c = random_rational(&mut rng);
                let w = rat(rng.gen_range(0..=20), 7);
                Interval::new(&c - &w, c + w)
            })
            .unwrap()
        };
        let (x, y, z) = (mk(0), mk(1), mk(2));
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert!(rhs.encloses(&lhs));
    }
}

/// Sampled member matrices multiply into the interval matrix product:
/// 100 trials at sizes 1 through 5.
#[test]
fn interval_matrix_product_encloses_member_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..100 {
        let n = trial % 5 + 1;
        let mut make = |n: usize| {
            IntervalMatrix::from_fn(n, n, |_, _| {
                let c = random_rational(&mut rng);
                let w = rat(rng.gen_range(0..=12), 5);
                Interval::new(&c - &w, c + w)
            })
            .unwrap()
        };
        let x = make(n);
        let y = make(n);
        let prod = x.mul(&y).unwrap();

        // sample a member of an interval matrix through convex combinations
        let member = |m: &IntervalMatrix<BigRational>, rng: &mut ChaCha8Rng| {
            PointMatrix::from_fn(n, n, |i, j| {
                let t = rat(rng.gen_range(0..=16), 16);
                let iv = m.get(i, j);
                Ok(iv.lo() + (iv.hi() - iv.lo()) * &t)
            })
            .unwrap()
        };
        for _ in 0..3 {
            let p = member(&x, &mut rng);
            let q = member(&y, &mut rng);
            let pq = common::naive_mul(&p, &q);
            assert!(
                prod.contains_rationals(&pq),
                "member product escaped at n={n}, trial {trial}"
            );
        }
    }
}

/// Widths after a hardware-float interval product are never narrower than
/// the exact rational widths (soundness of the full product kernel).
#[test]
fn float_matrix_product_is_outward() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..25 {
        let n = rng.gen_range(1..=4);
        let rational = |rng: &mut ChaCha8Rng| {
            IntervalMatrix::from_fn(n, n, |_, _| {
                let c = random_rational(rng);
                let w = rat(rng.gen_range(0..=8), 9);
                Interval::new(&c - &w, c + w)
            })
            .unwrap()
        };
        let xq = rational(&mut rng);
        let yq = rational(&mut rng);
        let to_f = |m: &IntervalMatrix<BigRational>| {
            IntervalMatrix::from_fn(n, n, |i, j| {
                Interval::<f64>::from_rationals(
                    &(),
                    &m.get(i, j).lo().to_rational(),
                    &m.get(i, j).hi().to_rational(),
                )
            })
            .unwrap()
        };
        let exact = xq.mul(&yq).unwrap();
        let float = to_f(&xq).mul(&to_f(&yq)).unwrap();
        for i in 0..n {
            for j in 0..n {
                let e = exact.get(i, j);
                let f = float.get(i, j);
                assert!(f.contains_rational(&e.lo().to_rational()));
                assert!(f.contains_rational(&e.hi().to_rational()));
            }
        }
    }
}

/// Point products in exact mode equal an independently written naive
/// triple-loop oracle.
#[test]
fn pm_mul_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let a = PointMatrix::from_fn(4, 4, |_, _| Ok(random_rational(&mut rng))).unwrap();
        let b = PointMatrix::from_fn(4, 4, |_, _| Ok(random_rational(&mut rng))).unwrap();
        assert_eq!(a.mul(&b).unwrap(), common::naive_mul(&a, &b));
    }
}

/// Directed square roots bracket the true root in both float modes.
#[test]
fn directed_sqrt_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let p = Precision(96);
    for _ in 0..200 {
        let q = rat(rng.gen_range(0..=10_000), rng.gen_range(1..=64));
        let f = f64::from_rational(&(), &q, Round::Nearest).unwrap();
        let b = BigF::from_rational(&p, &q, Round::Nearest).unwrap();
        // lo^2 <= x <= hi^2 certifies lo <= sqrt(x) <= hi for the operand
        // each mode actually rounded to
        let fq = f.to_rational();
        let flo = f.dir_sqrt(Round::Down).unwrap().to_rational();
        let fhi = f.dir_sqrt(Round::Up).unwrap().to_rational();
        assert!(&flo * &flo <= fq && fq <= &fhi * &fhi);
        let bq = b.to_rational();
        let blo = b.dir_sqrt(Round::Down).unwrap().to_rational();
        let bhi = b.dir_sqrt(Round::Up).unwrap().to_rational();
        assert!(&blo * &blo <= bq && bq <= &bhi * &bhi);
    }
}
