use std::cmp::Ordering;

/// Exponent vector of a monomial, ordered by graded lexicographic order:
/// higher total degree first, ties broken by the leftmost differing exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn constant(dim: usize) -> Monomial {
        Monomial(vec![0; dim].into_boxed_slice())
    }

    pub fn coordinate(dim: usize, i: usize) -> Monomial {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out.into_boxed_slice()))
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.to_vec();
        v[i] = e;
        Monomial(v.into_boxed_slice())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::from_exponents(vec![2, 0]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let x = Monomial::from_exponents(vec![1, 0]);
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y2 > x);
    }
}
