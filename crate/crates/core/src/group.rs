//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is stored as a free rank plus a chain of cyclic orders in which
//! each order divides the next. `canonicalize` accepts any multiset of
//! cyclic orders, splits them into prime-power elementary divisors, and
//! reassembles the invariant factors, so two decompositions describe the
//! same group exactly when their canonical forms are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    /// Construct from factors already in invariant-factor form (each > 1,
    /// each dividing the next), as produced by Smith normal form.
    pub fn from_invariant_factors(factors: Vec<BigInt>, free_rank: usize) -> Self {
        debug_assert!(factors.iter().all(|f| *f > BigInt::one()));
        debug_assert!(factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        AbelianGroup {
            invariant_factors: factors,
            free_rank,
        }
    }

    /// Canonicalize an arbitrary multiset of cyclic orders (>= 1; trivial
    /// factors are dropped). The result is independent of input order.
    pub fn canonicalize(orders: &[BigInt], free_rank: usize) -> Result<Self> {
        // For each prime, the exponents sorted descending; the j-th largest
        // exponents across all primes combine into the j-th largest factor.
        let mut prime_exponents: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for order in orders {
            if order <= &BigInt::zero() {
                return Err(Error::NonPositiveOrder(order.to_string()));
            }
            for (p, e) in factorize(order) {
                prime_exponents.entry(p).or_default().push(e);
            }
        }
        for exps in prime_exponents.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let count = prime_exponents
            .values()
            .map(|e| e.len())
            .max()
            .unwrap_or(0);
        let mut factors = vec![BigInt::one(); count];
        for (p, exps) in &prime_exponents {
            for (j, &e) in exps.iter().enumerate() {
                // j-th largest goes into the j-th factor from the end
                let slot = count - 1 - j;
                factors[slot] *= p.pow(e);
            }
        }
        Ok(AbelianGroup {
            invariant_factors: factors,
            free_rank,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Prime-power factors of the invariant factors, sorted ascending.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for f in &self.invariant_factors {
            for (p, e) in factorize(f) {
                out.push(p.pow(e));
            }
        }
        out.sort();
        out
    }

    /// Order of the group; an error if the free rank is positive.
    pub fn order(&self) -> Result<BigInt> {
        if self.free_rank > 0 {
            return Err(Error::InfiniteGroup(self.free_rank));
        }
        Ok(self.invariant_factors.iter().product())
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self == other
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "invariant_factors": self.invariant_factors.iter()
                .map(|f| json_number(f))
                .collect::<Vec<Value>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            line: 1,
            message: message.to_string(),
        };
        let free_rank = v
            .get("free_rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing free_rank"))? as usize;
        let factors = v
            .get("invariant_factors")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing invariant_factors"))?
            .iter()
            .map(|f| match f {
                Value::Number(n) => {
                    BigInt::from_str(&n.to_string()).map_err(|_| bad("bad factor"))
                }
                _ => Err(bad("factor is not a number")),
            })
            .collect::<Result<Vec<BigInt>>>()?;
        Self::canonicalize(&factors, free_rank)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect();
        for _ in 0..self.free_rank {
            parts.push("Z".into());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Arithmetic hypotheses of the base lemma used by the theorem checks:
/// the claimed cyclic orders must multiply to the group order, and each
/// generator's actual order must divide its claimed order. (Spanning is
/// certified separately.)
pub fn lemma_base_check(
    group_order: &BigInt,
    claimed_orders: &[BigInt],
    element_orders: &[BigInt],
) -> bool {
    if claimed_orders.len() != element_orders.len() {
        return false;
    }
    let product: BigInt = claimed_orders.iter().product();
    if product != *group_order {
        return false;
    }
    claimed_orders
        .iter()
        .zip(element_orders)
        .all(|(claimed, actual)| !actual.is_zero() && (claimed % actual).is_zero())
}

/// Render a big integer as an arbitrary-precision JSON number.
pub(crate) fn json_number(v: &BigInt) -> Value {
    Value::Number(
        serde_json::Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"),
    )
}

/// Trial division; adequate for the small orders this toolkit meets.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let mut e = 0u32;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn group(orders: &[i64]) -> AbelianGroup {
        let orders: Vec<BigInt> = orders.iter().map(|&v| big(v)).collect();
        AbelianGroup::canonicalize(&orders, 0).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(group(&[2, 3]).invariant_factors(), &[big(6)]);
        assert_eq!(group(&[6, 4]).invariant_factors(), &[big(2), big(12)]);
        assert_eq!(group(&[1, 1, 5]).invariant_factors(), &[big(5)]);
        assert!(group(&[]).is_trivial());
    }

    #[test]
    fn canonicalize_rejects_nonpositive() {
        assert!(matches!(
            AbelianGroup::canonicalize(&[big(0)], 0),
            Err(Error::NonPositiveOrder(_))
        ));
        assert!(matches!(
            AbelianGroup::canonicalize(&[big(-4)], 0),
            Err(Error::NonPositiveOrder(_))
        ));
    }

    #[test]
    fn refactored_complement_decomposition_matches_stated_form() {
        // n = 4: {8 x4, 3, 24, 96 x4} and {8 x3, 24 x2, 96 x4} are the same
        // group: a Z_24 splits as Z_8 + Z_3.
        let refactored = group(&[8, 8, 8, 8, 3, 24, 96, 96, 96, 96]);
        let stated = group(&[8, 8, 8, 24, 24, 96, 96, 96, 96]);
        assert_eq!(refactored, stated);
        assert!(refactored.is_isomorphic(&stated));
    }

    #[test]
    fn order_examples() {
        assert_eq!(AbelianGroup::trivial().order().unwrap(), big(1));
        assert_eq!(group(&[6, 6, 18, 18]).order().unwrap(), big(11664));
        assert_eq!(group(&[3, 3, 3, 3, 3, 3, 9]).order().unwrap(), big(6561));
        let free = AbelianGroup::canonicalize(&[big(2)], 1).unwrap();
        assert!(matches!(free.order(), Err(Error::InfiniteGroup(1))));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(group(&[6]).is_isomorphic(&group(&[2, 3])));
        assert!(!group(&[4]).is_isomorphic(&group(&[2, 2])));
        let a = AbelianGroup::canonicalize(&[big(2)], 1).unwrap();
        let b = AbelianGroup::canonicalize(&[big(2)], 0).unwrap();
        assert!(!a.is_isomorphic(&b));
    }

    #[test]
    fn elementary_divisors_round_trip() {
        let g = group(&[2, 12]);
        assert_eq!(g.elementary_divisors(), vec![big(2), big(3), big(4)]);
        let back = AbelianGroup::canonicalize(&g.elementary_divisors(), 0).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn lemma_base_check_examples() {
        assert!(lemma_base_check(&big(6), &[big(6)], &[big(6)]));
        // 2 does not divide 3
        assert!(!lemma_base_check(&big(6), &[big(2), big(3)], &[big(2), big(2)]));
        assert!(lemma_base_check(&big(6), &[big(2), big(3)], &[big(2), big(3)]));
        assert!(!lemma_base_check(&big(5), &[big(6)], &[big(6)]));
        assert!(!lemma_base_check(&big(6), &[big(6)], &[]));
    }

    #[test]
    fn json_round_trip() {
        let g = group(&[6, 6, 18, 18]);
        let v = g.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"free_rank":0,"invariant_factors":[6,6,18,18]}"#
        );
        assert_eq!(AbelianGroup::from_json(&v).unwrap(), g);
    }

    proptest! {
        #[test]
        fn canonicalize_is_permutation_invariant_and_idempotent(
            orders in proptest::collection::vec(1i64..=60, 0..6),
            shift in 0usize..6,
        ) {
            let a: Vec<BigInt> = orders.iter().map(|&v| big(v)).collect();
            let mut b = a.clone();
            if !b.is_empty() {
                b.rotate_left(shift % b.len());
            }
            let ga = AbelianGroup::canonicalize(&a, 0).unwrap();
            let gb = AbelianGroup::canonicalize(&b, 0).unwrap();
            prop_assert_eq!(&ga, &gb);
            // idempotent: canonicalizing the canonical factors changes nothing
            let again = AbelianGroup::canonicalize(ga.invariant_factors(), 0).unwrap();
            prop_assert_eq!(&again, &ga);
            // the divisibility chain holds
            let f = ga.invariant_factors();
            prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
            // and the order is preserved
            let expect: BigInt = a.iter().product();
            prop_assert_eq!(ga.order().unwrap(), expect);
        }

        #[test]
        fn isomorphic_is_an_equivalence(
            x in proptest::collection::vec(1i64..=24, 0..4),
            y in proptest::collection::vec(1i64..=24, 0..4),
        ) {
            let gx = group(&x);
            let gy = group(&y);
            prop_assert!(gx.is_isomorphic(&gx));
            prop_assert_eq!(gx.is_isomorphic(&gy), gy.is_isomorphic(&gx));
        }
    }
}
