//! Elementary symmetric functions.
//!
//! `e_k(v)` is the sum of all `k`-fold products of entries of `v`, with
//! `e_0 = 1`. All of them are produced in one pass by multiplying out
//! `Π (1 + t·v_i)` one factor at a time, which costs `O(len · k)` and never
//! enumerates subsets.

use nalgebra::ComplexField;

use crate::error::{Error, Result};

/// Returns `[e_0, e_1, …, e_top]` of the values yielded by `values`.
pub(crate) fn elem_sym_upto<T, I>(values: I, top: usize) -> Vec<T>
where
    T: ComplexField,
    I: IntoIterator<Item = T>,
{
    let mut e = vec![T::zero(); top + 1];
    e[0] = T::one();
    let mut seen = 0usize;
    for v in values {
        seen += 1;
        let hi = seen.min(top);
        for k in (1..=hi).rev() {
            let prev = e[k - 1].clone();
            e[k] += v.clone() * prev;
        }
    }
    e
}

/// `e_k` of `values` with the positions listed in `skip` left out.
pub(crate) fn elem_sym_skipping<T: ComplexField>(values: &[T], k: usize, skip: &[usize]) -> T {
    let kept = values
        .iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, v)| v.clone());
    elem_sym_upto(kept, k)[k].clone()
}

/// The `k`th elementary symmetric function of `values`.
///
/// ```
/// use ratiovec::elem_sym;
/// assert_eq!(elem_sym(&[1.0, 2.0, 3.0], 2).unwrap(), 11.0);
/// ```
pub fn elem_sym(values: &[f64], k: usize) -> Result<f64> {
    if k > values.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: values.len(),
        });
    }
    Ok(elem_sym_upto(values.iter().copied(), k)[k])
}

/// `e_k` of `values` with entry `j` (0-based) removed.
pub fn elem_sym_deleted(values: &[f64], k: usize, j: usize) -> Result<f64> {
    if j >= values.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            limit: values.len(),
        });
    }
    if k + 1 > values.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: values.len() - 1,
        });
    }
    Ok(elem_sym_skipping(values, k, &[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Subset enumeration, independent of the recurrence.
    fn brute(values: &[f64], k: usize) -> f64 {
        let n = values.len();
        (0u32..(1 << n))
            .filter(|mask| mask.count_ones() as usize == k)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| values[i])
                    .product::<f64>()
            })
            .sum()
    }

    #[test]
    fn small_values() {
        let v = [1.0, 2.0, 3.0];
        assert_eq!(elem_sym(&v, 0).unwrap(), 1.0);
        assert_eq!(elem_sym(&v, 1).unwrap(), 6.0);
        assert_eq!(elem_sym(&v, 2).unwrap(), brute(&v, 2));
        assert_eq!(elem_sym(&v, 2).unwrap(), 11.0);
        assert_eq!(elem_sym(&v, 3).unwrap(), 6.0);
        assert!(matches!(
            elem_sym(&v, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn deleted() {
        let v = [1.0, 2.0, 3.0];
        assert_eq!(elem_sym_deleted(&v, 1, 1).unwrap(), 4.0);
        assert_eq!(elem_sym_deleted(&v, 2, 0).unwrap(), 6.0);
        for j in 0..3 {
            assert_eq!(elem_sym_deleted(&v, 0, j).unwrap(), 1.0);
        }
        assert!(elem_sym_deleted(&v, 3, 0).is_err());
        assert!(elem_sym_deleted(&v, 1, 3).is_err());
    }

    #[test]
    fn empty_list() {
        assert_eq!(elem_sym(&[], 0).unwrap(), 1.0);
    }

    proptest! {
        #[test]
        fn matches_subset_enumeration(v in prop::collection::vec(-3.0f64..3.0, 0..9)) {
            for k in 0..=v.len() {
                let want = brute(&v, k);
                let got = elem_sym(&v, k).unwrap();
                prop_assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()));
            }
        }

        #[test]
        fn generating_function(v in prop::collection::vec(-2.0f64..2.0, 0..9)) {
            for t in [1.0, -1.0, 0.5] {
                let series: f64 = (0..=v.len())
                    .map(|k| elem_sym(&v, k).unwrap() * f64::powi(t, k as i32))
                    .sum();
                let product: f64 = v.iter().map(|x| 1.0 + t * x).product();
                let scale: f64 = v.iter().map(|x| 1.0 + (t * x).abs()).product();
                prop_assert!((series - product).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn deletion_identity(v in prop::collection::vec(-3.0f64..3.0, 1..9)) {
            for j in 0..v.len() {
                for k in 1..v.len() {
                    let whole = elem_sym(&v, k).unwrap();
                    let split = elem_sym_deleted(&v, k, j).unwrap()
                        + v[j] * elem_sym_deleted(&v, k - 1, j).unwrap();
                    prop_assert!((whole - split).abs() <= 1e-11 * (1.0 + whole.abs()));
                }
            }
        }
    }
}
