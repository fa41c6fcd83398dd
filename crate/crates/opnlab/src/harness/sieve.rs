//! Bulk σ tables and supporting sieves.
//!
//! `sigma_sieve` fills `table[m] = sigma(m)` by adding every divisor to its
//! multiples, with no per-entry factorization. The segmented variant splits
//! the table into disjoint ranges that can be filled in parallel; each entry
//! depends only on its own index, so the output is identical byte for byte.

use super::HarnessError;
use rayon::prelude::*;
use std::io::{Read, Write};

/// Memory budget: 8 bytes per entry, capped near 1.6 GB.
pub const MAX_SIEVE_LIMIT: u64 = 200_000_000;

/// Magic header of the persisted table format.
pub const SIGMA_TABLE_MAGIC: &[u8; 8] = b"SIGTAB01";

/// `table[m] = sigma(m)` for `1 <= m <= limit`; index 0 is 0.
pub fn sigma_sieve(limit: u64) -> Result<Vec<u64>, HarnessError> {
    check_limit(limit)?;
    let len = limit as usize + 1;
    let mut table = vec![0u64; len];
    for d in 1..len {
        for m in (d..len).step_by(d) {
            table[m] += d as u64;
        }
    }
    Ok(table)
}

/// Segmented parallel variant; produces output identical to [`sigma_sieve`].
pub fn sigma_sieve_parallel(limit: u64, threads: usize) -> Result<Vec<u64>, HarnessError> {
    check_limit(limit)?;
    let threads = threads.max(1);
    let len = limit as usize + 1;
    let mut table = vec![0u64; len];
    let segment = len.div_ceil(threads).max(1);
    table
        .par_chunks_mut(segment)
        .enumerate()
        .for_each(|(chunk_idx, chunk)| {
            let lo = chunk_idx * segment; // global index of chunk[0]
            let hi = lo + chunk.len(); // exclusive
            for d in 1..hi {
                let first = lo.div_ceil(d).max(1) * d;
                let mut m = first;
                while m < hi {
                    chunk[m - lo] += d as u64;
                    m += d;
                }
            }
        });
    Ok(table)
}

fn check_limit(limit: u64) -> Result<(), HarnessError> {
    if limit < 1 {
        return Err(HarnessError::BadConfig("sieve limit must be >= 1".into()));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(HarnessError::MemoryBudget {
            requested: limit,
            max_feasible: MAX_SIEVE_LIMIT,
        });
    }
    Ok(())
}

/// Smallest-prime-factor table; `spf[m]` is the least prime dividing `m`
/// (0 for m < 2). Limit must fit the u32 entries.
pub fn spf_sieve(limit: u64) -> Result<Vec<u32>, HarnessError> {
    if limit > u32::MAX as u64 {
        return Err(HarnessError::MemoryBudget {
            requested: limit,
            max_feasible: u32::MAX as u64,
        });
    }
    check_limit(limit)?;
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    for i in 2..len {
        if spf[i] == 0 {
            let mut m = i;
            while m < len {
                if spf[m] == 0 {
                    spf[m] = i as u32;
                }
                m += i;
            }
        }
        if i as u64 * i as u64 > limit {
            // remaining unmarked entries are prime; finish marking them
            for (j, slot) in spf.iter_mut().enumerate().skip(i + 1) {
                if *slot == 0 {
                    *slot = j as u32;
                }
            }
            break;
        }
    }
    Ok(spf)
}

/// Odd primes congruent to 1 mod 4, ascending, up to `limit` inclusive.
pub fn primes_one_mod_four(limit: u64) -> Result<Vec<u64>, HarnessError> {
    check_limit(limit.max(2))?;
    let len = limit as usize + 1;
    let mut composite = vec![false; len];
    let mut out = Vec::new();
    for p in 2..len {
        if !composite[p] {
            if p % 4 == 1 {
                out.push(p as u64);
            }
            let mut m = p * p;
            while m < len {
                composite[m] = true;
                m += p;
            }
        }
    }
    Ok(out)
}

/// Persists `table[1..]` as the magic header followed by little-endian u64s.
pub fn write_sigma_table<W: Write>(mut w: W, table: &[u64]) -> std::io::Result<()> {
    w.write_all(SIGMA_TABLE_MAGIC)?;
    for &v in &table[1..] {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a table persisted by [`write_sigma_table`]; restores the 0 slot.
pub fn read_sigma_table<R: Read>(mut r: R) -> Result<Vec<u64>, HarnessError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)
        .map_err(|e| HarnessError::BadTable(e.to_string()))?;
    if &magic != SIGMA_TABLE_MAGIC {
        return Err(HarnessError::BadTable("bad magic header".into()));
    }
    let mut table = vec![0u64];
    let mut buf = [0u8; 8];
    loop {
        match r.read_exact(&mut buf) {
            Ok(()) => table.push(u64::from_le_bytes(buf)),
            Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(HarnessError::BadTable(e.to_string())),
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_brute(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).sum()
    }

    #[test]
    fn first_ten_sigma_values() {
        // Oracle: brute-force divisor sums.
        let expected: Vec<u64> = (1..=10).map(sigma_brute).collect();
        assert_eq!(expected, vec![1, 3, 4, 7, 6, 12, 8, 15, 13, 18]);
        let table = sigma_sieve(10).unwrap();
        assert_eq!(&table[1..], expected.as_slice());
        assert_eq!(table[6], 12);
    }

    #[test]
    fn sigma_of_primes_is_p_plus_one() {
        let table = sigma_sieve(100_000).unwrap();
        for p in 2..=100_000u64 {
            if crate::arith::is_prime(&crate::arith::nat(p)) {
                assert_eq!(table[p as usize], p + 1, "sigma({p})");
            } else {
                assert_ne!(table[p as usize], p + 1, "sigma({p})");
            }
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let limit = 12_345;
        let serial = sigma_sieve(limit).unwrap();
        for threads in [1, 2, 8, 13] {
            assert_eq!(serial, sigma_sieve_parallel(limit, threads).unwrap());
        }
    }

    #[test]
    fn limit_errors() {
        assert!(matches!(
            sigma_sieve(0),
            Err(HarnessError::BadConfig(_))
        ));
        match sigma_sieve(MAX_SIEVE_LIMIT + 1) {
            Err(HarnessError::MemoryBudget { max_feasible, .. }) => {
                assert_eq!(max_feasible, MAX_SIEVE_LIMIT);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spf_factors_correctly() {
        let spf = spf_sieve(10_000).unwrap();
        for n in 2..=10_000usize {
            let p = spf[n] as usize;
            assert!(n % p == 0);
            assert!((2..p).all(|d| n % d != 0), "spf({n}) = {p} not least");
        }
    }

    #[test]
    fn prime_counts_one_mod_four() {
        // 609 primes congruent to 1 mod 4 below 10^4.
        let ps = primes_one_mod_four(10_000).unwrap();
        assert_eq!(ps.len(), 609);
        assert_eq!(ps[0], 5);
        assert!(ps.iter().all(|p| p % 4 == 1));
    }

    #[test]
    fn table_file_round_trip() {
        let table = sigma_sieve(1000).unwrap();
        let mut buf = Vec::new();
        write_sigma_table(&mut buf, &table).unwrap();
        assert_eq!(&buf[..8], SIGMA_TABLE_MAGIC);
        let back = read_sigma_table(&buf[..]).unwrap();
        assert_eq!(table, back);
        assert!(read_sigma_table(&b"NOTMAGIC"[..]).is_err());
    }
}
