//! Mixed-radix counting over coefficient spaces.

/// Calls `visit` once for every digit vector `d` with `d[i] < radices[i]`,
/// in lexicographic order with the last digit running fastest. An empty
/// radix list yields the single empty vector; a zero radix yields nothing.
pub fn for_each_digits(radices: &[u64], mut visit: impl FnMut(&[u64])) {
    if radices.contains(&0) {
        return;
    }
    let mut digits = alloc::vec![0u64; radices.len()];
    loop {
        visit(&digits);
        let mut i = radices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Product of the radices, or `None` on overflow.
pub fn space_size(radices: &[u64]) -> Option<u128> {
    radices.iter().try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    #[test]
    fn visits_everything_once_in_order() {
        let mut seen = Vec::new();
        for_each_digits(&[2, 3], |d| seen.push((d[0], d[1])));
        assert_eq!(seen, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
        let mut n = 0;
        for_each_digits(&[], |_| n += 1);
        assert_eq!(n, 1);
        for_each_digits(&[3, 0], |_| n += 1);
        assert_eq!(n, 1);
        assert_eq!(space_size(&[4, 4, 4]), Some(64));
    }
}
