//! Compression-based distances between bit strings.
//!
//! * NID estimate: `max(L(a|b), L(b|a)) / max(L(a), L(b))`
//! * NCD: `(L(a,b) − min(L(a), L(b))) / max(L(a), L(b))` with the
//!   canonical (order-free) joint
//! * information distance: `max(L(a|b), L(b|a))`, in bits
//!
//! All three are exactly symmetric as implemented. The metric axioms hold
//! for true complexities only; [`triangle_violations`] and [`kraft_sum`]
//! measure how far an approximation strays.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::BitString;
use crate::codelength::{joint_code_len_canonical, Backend};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Nid,
    Ncd,
    Info,
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nid" => Ok(Measure::Nid),
            "ncd" => Ok(Measure::Ncd),
            "info" => Ok(Measure::Info),
            other => Err(Error::InvalidParameter(format!("unknown measure {other:?}"))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Nid => "nid",
            Measure::Ncd => "ncd",
            Measure::Info => "info",
        })
    }
}

fn require_nonempty(a: &BitString, b: &BitString) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter("distances need nonempty strings".into()));
    }
    Ok(())
}

/// `(L(a), L(b), L(a|b), L(b|a))`.
fn lengths(backend: &Backend, a: &BitString, b: &BitString) -> Result<(f64, f64, f64, f64)> {
    let pa = backend.prepare(a)?;
    let pb = backend.prepare(b)?;
    Ok((
        pa.code_len().bits(),
        pb.code_len().bits(),
        pb.cond(a)?,
        pa.cond(b)?,
    ))
}

pub fn nid_estimate(backend: &Backend, a: &BitString, b: &BitString) -> Result<f64> {
    require_nonempty(a, b)?;
    let (la, lb, a_given_b, b_given_a) = lengths(backend, a, b)?;
    let denom = la.max(lb);
    if denom <= 0.0 {
        return Err(Error::UndefinedDistance);
    }
    Ok(a_given_b.max(b_given_a) / denom)
}

pub fn ncd(backend: &Backend, a: &BitString, b: &BitString) -> Result<f64> {
    require_nonempty(a, b)?;
    let la = crate::codelength::code_len(backend, a)?.bits();
    let lb = crate::codelength::code_len(backend, b)?.bits();
    let denom = la.max(lb);
    if denom <= 0.0 {
        return Err(Error::UndefinedDistance);
    }
    let joint = joint_code_len_canonical(backend, a, b)?.bits();
    Ok((joint - la.min(lb)) / denom)
}

/// Unnormalized information distance in bits.
pub fn info_dist(backend: &Backend, a: &BitString, b: &BitString) -> Result<f64> {
    require_nonempty(a, b)?;
    let (_, _, a_given_b, b_given_a) = lengths(backend, a, b)?;
    Ok(a_given_b.max(b_given_a))
}

pub fn distance(backend: &Backend, measure: Measure, a: &BitString, b: &BitString) -> Result<f64> {
    match measure {
        Measure::Nid => nid_estimate(backend, a, b),
        Measure::Ncd => ncd(backend, a, b),
        Measure::Info => info_dist(backend, a, b),
    }
}

/// Square, exactly symmetric matrix of pairwise distances.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub measure: Measure,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.len() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.len();
        &self.values[row * n..(row + 1) * n]
    }
}

/// Pairwise `measure` over `items`, labelled by index.
pub fn distance_matrix(backend: &Backend, items: &[BitString], measure: Measure) -> Result<DistanceMatrix> {
    let labels = (0..items.len()).map(|i| i.to_string()).collect();
    distance_matrix_labeled(backend, items, labels, measure)
}

/// Each unordered pair is computed once and mirrored; the diagonal holds
/// `measure(a, a)`, which need not be zero for an approximation.
pub fn distance_matrix_labeled(
    backend: &Backend,
    items: &[BitString],
    labels: Vec<String>,
    measure: Measure,
) -> Result<DistanceMatrix> {
    let n = items.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 items, got {n}")));
    }
    if labels.len() != n {
        return Err(Error::InvalidParameter(format!("{} labels for {n} items", labels.len())));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let computed: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            distance(backend, measure, &items[i], &items[j]).map_err(|e| Error::Pair {
                row: i,
                col: j,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let mut values = vec![0.0; n * n];
    for (&(i, j), d) in pairs.iter().zip(computed) {
        values[i * n + j] = d;
        values[j * n + i] = d;
    }
    Ok(DistanceMatrix {
        labels,
        measure,
        values,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TriangleReport {
    pub triples: usize,
    pub violations: usize,
}

impl TriangleReport {
    pub fn rate(&self) -> f64 {
        if self.triples == 0 {
            0.0
        } else {
            self.violations as f64 / self.triples as f64
        }
    }
}

/// Counts ordered triples of distinct indices with `d(a,c) > d(a,b) + d(b,c)`.
pub fn triangle_violations(m: &DistanceMatrix) -> TriangleReport {
    let n = m.len();
    let mut report = TriangleReport::default();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                report.triples += 1;
                if m.get(a, c) > m.get(a, b) + m.get(b, c) {
                    report.violations += 1;
                }
            }
        }
    }
    report
}

/// `Σ_{y ≠ x} 2^(−d(x, y))` over a finite neighborhood. Diagnostic only.
pub fn kraft_sum(backend: &Backend, measure: Measure, x: &BitString, neighborhood: &[BitString]) -> Result<f64> {
    let mut sum = 0.0;
    for y in neighborhood.iter().filter(|y| *y != x) {
        sum += (-distance(backend, measure, x, y)?).exp2();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::Xorshift64Star;

    const KT0: Backend = Backend::Kt { order: 0 };

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn self_distance_of_constant_string() {
        let a = BitString::zeros(16);
        let n = nid_estimate(&KT0, &a, &a).unwrap();
        let c = ncd(&KT0, &a, &a).unwrap();
        assert!((n - 0.174).abs() < 1e-3, "{n}");
        assert!((c - 0.174).abs() < 1e-3, "{c}");
        let i = info_dist(&KT0, &a, &a).unwrap();
        assert!(i >= 0.0 && i < 0.25 * crate::codelength::code_len(&KT0, &a).unwrap().bits());
    }

    #[test]
    fn unrelated_random_strings_are_far() {
        let mut rng = Xorshift64Star::new(64);
        let a = rng.bits(64);
        let b = rng.bits(64);
        let d = nid_estimate(&KT0, &a, &b).unwrap();
        assert!((0.6..=1.1).contains(&d), "{d}");
    }

    #[test]
    fn single_bits() {
        let (a, b) = (bs("0"), bs("1"));
        let d = info_dist(&KT0, &a, &b).unwrap();
        // L("10") - L("1") = L("01") - L("0") = 3 - 1 = 2.
        assert!((d - 2.0).abs() < 1e-12);
        assert_eq!(d, info_dist(&KT0, &b, &a).unwrap());
    }

    #[test]
    fn errors() {
        assert!(ncd(&KT0, &BitString::new(), &bs("1")).is_err());
        assert!(distance_matrix(&KT0, &[bs("1")], Measure::Ncd).is_err());
        assert!("cosine".parse::<Measure>().is_err());
    }

    #[test]
    fn matrix_of_identical_items() {
        let a = bs("0110100110");
        let m = distance_matrix(&KT0, &[a.clone(), a], Measure::Ncd).unwrap();
        assert_eq!(m.get(0, 1), m.get(0, 0));
        assert_eq!(m.get(1, 0), m.get(1, 1));
    }

    #[test]
    fn triangle_counting() {
        let items: Vec<BitString> = ["0", "01", "0110", "01101001"].iter().map(|s| bs(s)).collect();
        let m = distance_matrix(&KT0, &items, Measure::Info).unwrap();
        let r = triangle_violations(&m);
        assert_eq!(r.triples, 24);
        assert!(r.rate() <= 1.0);
    }

    #[test]
    fn kraft_excludes_self() {
        let x = bs("0101");
        assert_eq!(kraft_sum(&KT0, Measure::Info, &x, std::slice::from_ref(&x)).unwrap(), 0.0);
        assert!(kraft_sum(&KT0, Measure::Info, &x, &[bs("1111")]).unwrap() > 0.0);
    }
}
