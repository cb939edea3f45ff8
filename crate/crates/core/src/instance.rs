use crate::cost::{Cost, MAX_FINITE};
use crate::error::{Error, Result};

/// Largest supported city count. Vertex subsets are stored as 64-bit masks.
pub const MAX_CITIES: usize = 64;

/// An MV-TSP instance: a (possibly asymmetric) cost matrix and the number of
/// times each city must be visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    cost: Vec<Cost>,
    k: Vec<u64>,
}

impl Instance {
    /// `cost` is row-major, `n * n` entries.
    pub fn new(cost: Vec<Cost>, k: Vec<u64>) -> Result<Self> {
        let n = k.len();
        if n == 0 {
            return Err(Error::InvalidInstance("at least one city is required".into()));
        }
        if n > MAX_CITIES {
            return Err(Error::InvalidInstance(format!(
                "{n} cities exceeds the supported maximum of {MAX_CITIES}"
            )));
        }
        if cost.len() != n * n {
            return Err(Error::InvalidInstance(format!(
                "cost matrix has {} entries, expected {}",
                cost.len(),
                n * n
            )));
        }
        if let Some(i) = k.iter().position(|&ki| ki == 0) {
            return Err(Error::InvalidInstance(format!("multiplicity of city {i} is zero")));
        }
        if k.iter().any(|&ki| ki > MAX_FINITE) {
            return Err(Error::InvalidInstance("multiplicity exceeds 2^63-1".into()));
        }
        if cost.iter().any(|c| matches!(c, Cost::Finite(v) if *v > MAX_FINITE)) {
            return Err(Error::InvalidInstance("cost exceeds 2^63-1".into()));
        }
        Ok(Instance { n, cost, k })
    }

    pub fn from_rows(rows: Vec<Vec<Cost>>, k: Vec<u64>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != k.len()) {
            return Err(Error::InvalidInstance("cost matrix is not square".into()));
        }
        Instance::new(rows.into_iter().flatten().collect(), k)
    }

    /// Every pair costs `c`.
    pub fn uniform(n: usize, c: u64, k: Vec<u64>) -> Result<Self> {
        assert_eq!(n, k.len());
        Instance::new(vec![Cost::finite(c)?; n * n], k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Cost {
        self.cost[i * self.n + j]
    }

    pub fn multiplicity(&self, i: usize) -> u64 {
        self.k[i]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.k
    }

    /// Total tour length, Σ k_i.
    pub fn tour_length(&self) -> Result<u64> {
        self.k
            .iter()
            .try_fold(0u64, |acc, &k| acc.checked_add(k))
            .filter(|&s| s <= MAX_FINITE)
            .ok_or(Error::Overflow("total tour length"))
    }

    /// Row-major cost matrix.
    pub fn costs(&self) -> &[Cost] {
        &self.cost
    }

    pub fn row(&self, i: usize) -> &[Cost] {
        &self.cost[i * self.n..(i + 1) * self.n]
    }

    /// Copy with a single entry replaced.
    pub fn with_cost(&self, i: usize, j: usize, c: Cost) -> Instance {
        let mut next = self.clone();
        next.cost[i * self.n + j] = c;
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_multiplicity() {
        let err = Instance::new(vec![Cost::ZERO; 4], vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(Instance::new(vec![Cost::ZERO; 3], vec![1, 1]).is_err());
        assert!(Instance::new(vec![], vec![]).is_err());
    }

    #[test]
    fn indexing_is_row_major() {
        let inst = Instance::from_rows(
            vec![vec![Cost::Finite(0), Cost::Finite(1)], vec![Cost::Finite(2), Cost::Infinite]],
            vec![1, 2],
        )
        .unwrap();
        assert_eq!(inst.d(0, 1), Cost::Finite(1));
        assert_eq!(inst.d(1, 0), Cost::Finite(2));
        assert_eq!(inst.d(1, 1), Cost::Infinite);
        assert_eq!(inst.tour_length(), Ok(3));
    }
}
