//! The k-SED value and the independent routes that compute it.

use rayon::prelude::*;

use crate::coalition::{next_permutation, Coalition};
use crate::error::{Error, Result};
use crate::game::TuGame;
use crate::scalar::{factorial, Scalar};

use super::sums::{equal_division, ksed_closed_form, shapley};
use super::{Allocation, ProbabilityVector};

/// Largest `n` accepted by [`ksed_by_permutations`].
pub const KSED_PERMUTATION_LIMIT: usize = 9;

/// The k-SED value: the first `k` entrants split the worth of the size-`k`
/// prefix equally, later entrants receive their marginal contributions,
/// averaged over all orders of entry.
pub fn ksed<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    v.check_k(k)?;
    Ok(ksed_closed_form(v, k))
}

/// k-SED by walking all `n!` orders of entry.
///
/// The walk only tallies how often each prefix set and each
/// (player, predecessors) pair occurs; worths are touched once per distinct
/// event afterwards.
pub fn ksed_by_permutations<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    v.check_k(k)?;
    let n = v.n();
    if n > KSED_PERMUTATION_LIMIT {
        return Err(Error::TooManyPlayers {
            n,
            limit: KSED_PERMUTATION_LIMIT,
            what: "permutation enumeration",
        });
    }
    let size = 1usize << n;
    let (prefix_counts, marginal_counts) = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut prefix = vec![0u64; size];
            let mut marginal = vec![0u64; n * size];
            let mut order: Vec<usize> = std::iter::once(first)
                .chain((0..n).filter(|&p| p != first))
                .collect();
            loop {
                let mut mask = 0usize;
                for (rank, &player) in order.iter().enumerate() {
                    if rank >= k {
                        marginal[player * size + mask] += 1;
                    }
                    mask |= 1 << player;
                    if rank + 1 == k {
                        prefix[mask] += 1;
                    }
                }
                if !next_permutation(&mut order[1..]) {
                    break;
                }
            }
            (prefix, marginal)
        })
        .reduce(
            || (vec![0u64; size], vec![0u64; n * size]),
            |(mut pa, mut ma), (pb, mb)| {
                pa.iter_mut().zip(pb).for_each(|(a, b)| *a += b);
                ma.iter_mut().zip(mb).for_each(|(a, b)| *a += b);
                (pa, ma)
            },
        );

    let mut out = Allocation::zeros(n);
    let share = T::from_ratio(1, k as u64);
    for (bits, &count) in prefix_counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let coalition = Coalition::from_bits(bits as u32);
        let mut each = v.worth(coalition).clone();
        each *= &share;
        each *= &T::from_int(count as i64);
        for i in coalition.members() {
            *out.get_mut(i) += &each;
        }
    }
    for i in 0..n {
        for (bits, &count) in marginal_counts[i * size..(i + 1) * size].iter().enumerate() {
            if count > 0 {
                let mut m = v.marginal(i, Coalition::from_bits(bits as u32));
                m *= &T::from_int(count as i64);
                *out.get_mut(i) += &m;
            }
        }
    }
    Ok(out.scaled(&T::from_ratio(1, factorial(n))))
}

/// k-SED as the Shapley value of the game with every coalition below size
/// `k` zeroed.
pub fn ksed_by_truncation<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    Ok(shapley(&v.truncate_below(k)?))
}

/// The two parts of the split route: equal division of `v_{<k}` and the
/// Shapley value of `v_{≥k}`. The first part is always zero since
/// `v_{<k}(N) = 0`.
pub fn ksed_split_components<T: Scalar>(
    v: &TuGame<T>,
    k: usize,
) -> Result<(Allocation<T>, Allocation<T>)> {
    let (lower, upper) = v.split_at(k)?;
    Ok((equal_division(&lower), shapley(&upper)))
}

pub fn ksed_by_split<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    let (ed, sh) = ksed_split_components(v, k)?;
    Ok(&ed + &sh)
}

/// k-SED from hybrid-basis coordinates: `Φ_i = Σ_{S∋i, s≥k} λ^k_S / s`.
pub fn ksed_by_basis<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    basis_sum(v, k, k)
}

/// The basis formula summed over every `S ∋ i`, small coalitions included.
/// This is not the k-SED value: on `e_{1}` with `k = 2` it pays player 1
/// the whole unit although `e_{1}(N) = 0`. Kept so the discrepancy stays
/// pinned by tests.
pub fn ksed_literal_basis_formula<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    basis_sum(v, k, 1)
}

fn basis_sum<T: Scalar>(v: &TuGame<T>, k: usize, min_size: usize) -> Result<Allocation<T>> {
    let lambda = v.lambda_coefficients(k)?;
    let mut out = Allocation::zeros(v.n());
    for c in v.coalitions().filter(|c| c.size() >= min_size) {
        let coord = &lambda[c.index()];
        if coord.is_zero() {
            continue;
        }
        let mut share = coord.clone();
        share *= &T::from_ratio(1, c.size() as u64);
        for i in c.members() {
            *out.get_mut(i) += &share;
        }
    }
    Ok(out)
}

/// `Σ_k α_k Φ^{k-SED}`, with `α` indexed by `k ∈ 1..=n`.
pub fn alpha_sed<T: Scalar>(v: &TuGame<T>, alpha: &ProbabilityVector<T>) -> Result<Allocation<T>> {
    check_shape(alpha, 1, v.n(), "α over k = 1..n")?;
    let mut out = Allocation::zeros(v.n());
    for (k, a) in alpha.support() {
        out.add_scaled(&ksed_closed_form(v, k), a);
    }
    Ok(out)
}

pub(crate) fn check_shape<T: Scalar>(
    weights: &ProbabilityVector<T>,
    offset: usize,
    n: usize,
    what: &str,
) -> Result<()> {
    if weights.offset() != offset || weights.len() != n {
        return Err(Error::InvalidWeights(format!(
            "expected {what} ({n} weights starting at {offset}), got {} starting at {}",
            weights.len(),
            weights.offset()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, u12, v0, v2};
    use crate::scalar::rat;
    use crate::Rational;

    fn alloc(xs: &[(i64, i64)]) -> Allocation<Rational> {
        Allocation::new(xs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ksed(&v0(), 2).unwrap(), alloc(&[(9, 1), (6, 1), (3, 1)]));
        assert_eq!(ksed(&v0(), 1).unwrap(), alloc(&[(11, 1), (5, 1), (2, 1)]));
        assert_eq!(ksed(&v0(), 3).unwrap(), alloc(&[(6, 1); 3]));
        assert!(ksed(&v0(), 0).is_err());
        assert!(ksed(&v0(), 4).is_err());
    }

    #[test]
    fn permutation_route_examples() {
        assert_eq!(
            ksed_by_permutations(&v0(), 2).unwrap(),
            alloc(&[(9, 1), (6, 1), (3, 1)])
        );
        assert_eq!(
            ksed_by_permutations(&v2(), 1).unwrap(),
            alloc(&[(1, 1), (0, 1)])
        );
        assert_eq!(
            ksed_by_permutations(&u12(), 3).unwrap(),
            alloc(&[(1, 3); 3])
        );
        let big = TuGame::<Rational>::null(10).unwrap();
        assert!(matches!(
            ksed_by_permutations(&big, 2),
            Err(Error::TooManyPlayers { .. })
        ));
    }

    #[test]
    fn truncation_and_split_routes() {
        assert_eq!(
            ksed_by_truncation(&v0(), 2).unwrap(),
            alloc(&[(9, 1), (6, 1), (3, 1)])
        );
        assert_eq!(ksed_by_truncation(&v0(), 1).unwrap(), shapley(&v0()));
        let (ed, sh) = ksed_split_components(&v0(), 2).unwrap();
        assert_eq!(ed, alloc(&[(0, 1); 3]));
        assert_eq!(&ed + &sh, alloc(&[(9, 1), (6, 1), (3, 1)]));
        assert_eq!(
            ksed_by_split(&v0(), 2).unwrap(),
            alloc(&[(9, 1), (6, 1), (3, 1)])
        );
    }

    #[test]
    fn basis_route_and_literal_formula() {
        assert_eq!(
            ksed_by_basis(&v0(), 2).unwrap(),
            alloc(&[(9, 1), (6, 1), (3, 1)])
        );
        assert_eq!(ksed_by_basis(&e1(), 2).unwrap(), alloc(&[(0, 1); 3]));
        assert_eq!(
            ksed_by_basis(&u12(), 2).unwrap(),
            alloc(&[(1, 2), (1, 2), (0, 1)])
        );
        let literal = ksed_literal_basis_formula(&e1(), 2).unwrap();
        assert_eq!(literal, alloc(&[(1, 1), (0, 1), (0, 1)]));
        assert_ne!(&literal.total(), e1().grand_worth());
    }

    #[test]
    fn alpha_mixtures() {
        let point = |k| ProbabilityVector::point_mass(3, 1, k).unwrap();
        assert_eq!(
            alpha_sed(&v0(), &point(1)).unwrap(),
            alloc(&[(11, 1), (5, 1), (2, 1)])
        );
        assert_eq!(alpha_sed(&v0(), &point(3)).unwrap(), alloc(&[(6, 1); 3]));
        let mid =
            ProbabilityVector::over_thresholds(vec![rat(1, 2), rat(0, 1), rat(1, 2)]).unwrap();
        assert_eq!(
            alpha_sed(&v0(), &mid).unwrap(),
            alloc(&[(17, 2), (11, 2), (4, 1)])
        );
        let wrong = ProbabilityVector::over_thresholds(vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert!(alpha_sed(&v0(), &wrong).is_err());
    }
}
