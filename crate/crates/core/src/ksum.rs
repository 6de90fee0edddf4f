//! k-SUM in the form `a_1 + ... + a_{k-1} = a_k`, with `a_i` drawn from
//! list `A_i`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::num::{self, ExactInt};
use crate::rng::{self, Rng};

/// Largest `n` for which non-planted instances are certified by brute force.
pub const BRUTE_CERTIFY_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSumInstance<T> {
    pub k: usize,
    pub n: usize,
    pub lists: Vec<Vec<T>>,
}

/// One chosen `(index, value)` per list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSumWitness<T> {
    pub choices: Vec<(usize, T)>,
}

impl<T: ExactInt> KSumWitness<T> {
    pub fn values(&self) -> Vec<T> {
        self.choices.iter().map(|(_, v)| v.clone()).collect()
    }

    /// Checks the indices against the instance and the equation exactly.
    pub fn verify(&self, inst: &KSumInstance<T>) -> Result<bool> {
        if self.choices.len() != inst.k {
            return Ok(false);
        }
        for (list, (i, v)) in inst.lists.iter().zip(&self.choices) {
            if list.get(*i) != Some(v) {
                return Ok(false);
            }
        }
        let (last, rest) = self.choices.split_last().expect("k >= 2");
        let mut sum = T::zero();
        for (_, v) in rest {
            sum = num::add(&sum, v)?;
        }
        Ok(sum == last.1)
    }
}

/// `n^(2k)` as a big integer.
pub fn value_range(n: usize, k: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), 2 * k)
}

impl<T: ExactInt> KSumInstance<T> {
    /// Validates shape and per-list distinctness. The value range is checked
    /// separately by [`KSumInstance::check_range`], so small hand-written
    /// instances can be solved directly.
    pub fn new(k: usize, lists: Vec<Vec<T>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInstance(format!("k = {k} must be at least 2")));
        }
        if lists.len() != k {
            return Err(Error::InvalidInstance(format!("expected {k} lists, got {}", lists.len())));
        }
        let n = lists[0].len();
        if n == 0 {
            return Err(Error::InvalidInstance("lists must be non-empty".into()));
        }
        for (j, list) in lists.iter().enumerate() {
            if list.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "list {j} has {} values, expected {n}",
                    list.len()
                )));
            }
            let mut seen = HashSet::new();
            if let Some(v) = list.iter().find(|v| !seen.insert(*v)) {
                return Err(Error::InvalidInstance(format!("list {j} repeats {v}")));
            }
        }
        Ok(KSumInstance { k, n, lists })
    }

    /// Fails unless every value lies in `[-n^(2k), n^(2k)]`.
    pub fn check_range(&self) -> Result<()> {
        let range = value_range(self.n, self.k);
        for (j, list) in self.lists.iter().enumerate() {
            if let Some(v) = list.iter().find(|v| v.to_bigint().magnitude() > range.magnitude()) {
                return Err(Error::InvalidInstance(format!(
                    "value {v} in list {j} is outside [-{range}, {range}]"
                )));
            }
        }
        Ok(())
    }

    fn witness(&self, indices: &[usize]) -> KSumWitness<T> {
        KSumWitness {
            choices: indices
                .iter()
                .zip(&self.lists)
                .map(|(&i, list)| (i, list[i].clone()))
                .collect(),
        }
    }
}

/// Full enumeration in lexicographic index order; returns the first witness.
pub fn solve_brute<T: ExactInt>(inst: &KSumInstance<T>) -> Result<Option<KSumWitness<T>>> {
    let k = inst.k;
    let mut idx = vec![0usize; k - 1];
    // prefix[j] = sum of the chosen values in lists 0..j
    let mut prefix = vec![T::zero(); k];
    for j in 0..k - 1 {
        prefix[j + 1] = num::add(&prefix[j], &inst.lists[j][0])?;
    }
    loop {
        let target = &prefix[k - 1];
        if let Some(last) = inst.lists[k - 1].iter().position(|v| v == target) {
            let mut indices = idx.clone();
            indices.push(last);
            return Ok(Some(inst.witness(&indices)));
        }
        // Odometer over the first k-1 lists, last position fastest.
        let mut j = k - 1;
        loop {
            if j == 0 {
                return Ok(None);
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < inst.n {
                break;
            }
            idx[j] = 0;
        }
        for t in j..k - 1 {
            prefix[t + 1] = num::add(&prefix[t], &inst.lists[t][idx[t]])?;
        }
    }
}

/// Sums over a group of lists in ascending order, without materializing the
/// full product: all sums of the first lists are stored, and the last list is
/// merged in lazily through a heap of one cursor per last-list value.
struct SumStream<T> {
    /// Sums of all but the last list, ascending, with their index tuples.
    base: Vec<(T, Vec<usize>)>,
    /// Last list sorted ascending, with original indices.
    last: Vec<(T, usize)>,
    heap: BinaryHeap<Reverse<(T, usize, usize)>>,
}

impl<T: ExactInt> SumStream<T> {
    fn new(lists: &[Vec<T>]) -> Result<Self> {
        let (last_list, rest) = lists.split_last().expect("non-empty group");
        let mut base = vec![(T::zero(), Vec::new())];
        for list in rest {
            let mut next = Vec::with_capacity(base.len() * list.len());
            for (s, ix) in &base {
                for (i, v) in list.iter().enumerate() {
                    let mut ix = ix.clone();
                    ix.push(i);
                    next.push((num::add(s, v)?, ix));
                }
            }
            base = next;
        }
        base.sort();
        let mut last: Vec<(T, usize)> =
            last_list.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        last.sort();
        let mut heap = BinaryHeap::with_capacity(last.len());
        for (j, (v, _)) in last.iter().enumerate() {
            heap.push(Reverse((num::add(&base[0].0, v)?, j, 0)));
        }
        Ok(SumStream { base, last, heap })
    }

    fn peek(&self) -> Option<&T> {
        self.heap.peek().map(|Reverse((s, _, _))| s)
    }

    fn pop(&mut self) -> Result<Option<(T, usize, usize)>> {
        let Some(Reverse((s, j, b))) = self.heap.pop() else {
            return Ok(None);
        };
        if b + 1 < self.base.len() {
            let next = num::add(&self.base[b + 1].0, &self.last[j].0)?;
            self.heap.push(Reverse((next, j, b + 1)));
        }
        Ok(Some((s, j, b)))
    }

    fn indices(&self, j: usize, b: usize) -> Vec<usize> {
        let mut ix = self.base[b].1.clone();
        ix.push(self.last[j].1);
        ix
    }
}

/// Meet in the middle over `{A_1, ..., A_{k-1}, -A_k}`: the first `k/2`
/// lists against the rest, both as ascending sum streams, intersected with a
/// merge scan. `O(n^ceil(k/2) log n)` time.
pub fn solve_mitm<T: ExactInt>(inst: &KSumInstance<T>) -> Result<Option<KSumWitness<T>>> {
    let k = inst.k;
    let h = k / 2;
    // Left: A_1..A_h. Right, negated: -A_{h+1}, ..., -A_{k-1}, A_k. A match of
    // equal values means sum(left) = a_k - sum(middle).
    let left_lists = inst.lists[..h].to_vec();
    let right_lists: Vec<Vec<T>> = inst.lists[h..]
        .iter()
        .enumerate()
        .map(|(j, list)| {
            if h + j == k - 1 {
                Ok(list.clone())
            } else {
                list.iter().map(num::neg).collect::<Result<Vec<T>, _>>()
            }
        })
        .collect::<Result<_, _>>()?;
    let mut left = SumStream::new(&left_lists)?;
    let mut right = SumStream::new(&right_lists)?;
    loop {
        let (Some(a), Some(b)) = (left.peek(), right.peek()) else {
            return Ok(None);
        };
        match a.cmp(b) {
            std::cmp::Ordering::Less => {
                left.pop()?;
            }
            std::cmp::Ordering::Greater => {
                right.pop()?;
            }
            std::cmp::Ordering::Equal => {
                let (_, lj, lb) = left.pop()?.expect("peeked");
                let (_, rj, rb) = right.pop()?.expect("peeked");
                let mut indices = left.indices(lj, lb);
                indices.extend(right.indices(rj, rb));
                let w = inst.witness(&indices);
                if !w.verify(inst)? {
                    return Err(Error::Invariant("meet-in-the-middle witness fails".into()));
                }
                return Ok(Some(w));
            }
        }
    }
}

/// Random instance with values uniform in `[-n^(2k), n^(2k)]`, distinct per
/// list. A planted instance contains a witness by construction; a
/// non-planted one is resampled until a solver certifies it has none.
pub fn gen_instance<T: ExactInt>(
    n: usize,
    k: usize,
    planted: bool,
    seed: u64,
) -> Result<KSumInstance<T>> {
    if k < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    let range_big = value_range(n, k);
    // Every partial sum of k-1 values must fit the scalar.
    let worst = &range_big * BigInt::from(k);
    T::from_bigint(&worst).map_err(|_| {
        Error::InvalidParameter(format!("n^(2k) = {range_big} exceeds the integer bound for k={k}"))
    })?;
    let range: i128 = range_big
        .try_into()
        .map_err(|_| Error::InvalidParameter("value range exceeds 128 bits".into()))?;
    let mut rng = rng::seeded(seed);
    const MAX_ATTEMPTS: usize = 10_000;
    for _ in 0..MAX_ATTEMPTS {
        let inst = if planted {
            match planted_lists(n, k, range, &mut rng)? {
                Some(lists) => KSumInstance::new(k, lists)?,
                None => continue,
            }
        } else {
            let lists = (0..k)
                .map(|_| distinct_values(n, range, None, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let inst = KSumInstance::new(k, lists)?;
            inst.check_range()?;
            let found = if n <= BRUTE_CERTIFY_MAX_N {
                solve_brute(&inst)?
            } else {
                solve_mitm(&inst)?
            };
            if found.is_some() {
                continue;
            }
            inst
        };
        return Ok(inst);
    }
    Err(Error::InvalidParameter(format!(
        "no {} instance found for n={n}, k={k} after {MAX_ATTEMPTS} attempts",
        if planted { "planted" } else { "NO" }
    )))
}

fn planted_lists<T: ExactInt>(
    n: usize,
    k: usize,
    range: i128,
    rng: &mut Rng,
) -> Result<Option<Vec<Vec<T>>>> {
    let mut lists = (0..k - 1)
        .map(|_| distinct_values(n, range, None, rng))
        .collect::<Result<Vec<Vec<T>>>>()?;
    let mut target = T::zero();
    for list in &lists {
        let v = &list[rng.random_range(0..n)];
        target = num::add(&target, v)?;
    }
    let bound = T::from_i128(range).ok_or(num::ArithError::Overflow)?;
    if target > bound || target < -bound {
        return Ok(None);
    }
    let mut last = distinct_values(n - 1, range, Some(&target), rng)?;
    last.insert(rng.random_range(0..n), target);
    lists.push(last);
    Ok(Some(lists))
}

fn distinct_values<T: ExactInt>(
    count: usize,
    range: i128,
    exclude: Option<&T>,
    rng: &mut Rng,
) -> Result<Vec<T>> {
    let mut seen: HashSet<i128> = HashSet::with_capacity(count);
    let excluded = exclude.map(|t| t.to_i128().expect("target within range"));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng.random_range(-range..=range);
        if Some(v) == excluded || !seen.insert(v) {
            continue;
        }
        out.push(T::from_i128(v).ok_or(num::ArithError::Overflow)?);
    }
    Ok(out)
}

/// Shuffles each list in place; solvers must be order-agnostic.
pub fn shuffled<T: ExactInt>(inst: &KSumInstance<T>, seed: u64) -> KSumInstance<T> {
    let mut rng = rng::seeded(seed);
    let mut out = inst.clone();
    for list in &mut out.lists {
        list.shuffle(&mut rng);
    }
    out
}
