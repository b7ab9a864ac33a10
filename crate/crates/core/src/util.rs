//! Small enumeration and sampling helpers shared by the checkers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mixed-radix counter over `0..sizes[i]` in each position, last digit fastest.
pub struct Odometer {
    sizes: Vec<usize>,
    cur: Option<Vec<usize>>,
}

pub fn odometer(sizes: &[usize]) -> Odometer {
    let cur = if sizes.contains(&0) { None } else { Some(vec![0; sizes.len()]) };
    Odometer { sizes: sizes.to_vec(), cur }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.sizes[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Product of sizes, saturating.
pub fn product(sizes: impl IntoIterator<Item = usize>) -> u128 {
    sizes.into_iter().fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

/// Non-decreasing sequences of length `len` over `0..n`: the arrays of a
/// universe set up to relabelling.
pub fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, len, 0, &mut Vec::new(), &mut out);
    out
}

/// A stable 64-bit FNV-1a hash, used to derive per-check seeds.
pub fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// A generator seeded from the run seed and a check name, so that each check
/// draws the same points regardless of which other checks run.
pub fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_counts() {
        assert_eq!(odometer(&[2, 3]).count(), 6);
        assert_eq!(odometer(&[]).count(), 1);
        assert_eq!(odometer(&[2, 0]).count(), 0);
        assert_eq!(odometer(&[2, 2]).last(), Some(vec![1, 1]));
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(2, 2).len(), 3);
        assert_eq!(multisets(4, 3).len(), 20);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
    }
}
