use rayon::prelude::*;
use serde::Serialize;

use super::{
    eval_with_harmonic, sequence_with_harmonic, theta_with_harmonic, EvalReport, FormulaId,
    SequenceId, SequencePoint,
};
use crate::error::Result;
use crate::exact::{HarmonicSequence, Rational};
use crate::precision::{Enclosure, PrecisionConfig};

const CHUNK: usize = 64;
const MAX_STEP: u64 = 256;

/// `H_n` for each `n` in order, stepping incrementally where the gaps are
/// small and restarting from scratch otherwise.
pub(crate) fn harmonics_for(ns: &[u64]) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(ns.len());
    let mut seq: Option<(u64, HarmonicSequence, Rational)> = None;
    for &n in ns {
        let h = match seq.take() {
            Some((at, mut it, h)) if n >= at && n - at <= MAX_STEP => {
                let mut cur = (at, h);
                while cur.0 < n {
                    cur = it.next().expect("unbounded sequence");
                }
                seq = Some((cur.0, it, cur.1.clone()));
                cur.1
            }
            _ => {
                let mut it = HarmonicSequence::starting_at(n)?;
                let (_, h) = it.next().expect("unbounded sequence");
                seq = Some((n, it, h.clone()));
                h
            }
        };
        out.push(h);
    }
    Ok(out)
}

fn chunked<T, F>(ns: &[u64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &Rational) -> Result<Vec<T>> + Sync,
{
    let parts: Vec<Vec<T>> = ns
        .par_chunks(CHUNK)
        .map(|chunk| {
            let hs = harmonics_for(chunk)?;
            let mut out = Vec::new();
            for (&n, h) in chunk.iter().zip(&hs) {
                out.extend(f(n, h)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Evaluates every formula at every `n`, ordered by `n` then formula.
/// Distinct `n` run in parallel; the output does not depend on scheduling.
/// `f(n, H_n)` for every `n`, in input order.
pub(crate) fn map_with_harmonic<T, F>(ns: &[u64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &Rational) -> T + Sync,
{
    chunked(ns, |n, h| Ok(vec![f(n, h)]))
}

pub fn eval_range(ids: &[FormulaId], ns: &[u64], cfg: &PrecisionConfig) -> Result<Vec<EvalReport>> {
    chunked(ns, |n, h| {
        ids.iter()
            .map(|&id| eval_with_harmonic(id, n, h, cfg))
            .collect()
    })
}

pub fn sequence_range(
    which: SequenceId,
    ns: &[u64],
    cfg: &PrecisionConfig,
) -> Result<Vec<SequencePoint>> {
    chunked(ns, |n, h| Ok(vec![sequence_with_harmonic(which, n, h, cfg)?]))
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaCell {
    pub n: u64,
    pub r: u32,
    pub value: Enclosure,
}

/// `Theta_r` for every pair in `ns x rs`, ordered by `n` then `r`.
pub fn theta_grid(ns: &[u64], rs: &[u32], cfg: &PrecisionConfig) -> Result<Vec<ThetaCell>> {
    chunked(ns, |n, h| {
        rs.iter()
            .map(|&r| {
                Ok(ThetaCell {
                    n,
                    r,
                    value: theta_with_harmonic(n, r, h, cfg)?,
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::harmonic_exact;

    #[test]
    fn harmonics_follow_gaps_and_restarts() {
        let ns = [1, 2, 3, 10, 500, 499, 2000, 2001];
        let hs = harmonics_for(&ns).unwrap();
        for (&n, h) in ns.iter().zip(&hs) {
            assert_eq!(h, &harmonic_exact(n).unwrap(), "n = {n}");
        }
    }
}
