use alloc::vec::Vec;

use super::PointedSimplicialSet;

/// The `l`-fold smash power `X^{∧l}`, with simplices the `l`-tuples of
/// non-basepoint simplices of a common degree. `X^{∧0} = S⁰`, whose
/// non-basepoint simplex in degree `n` is the empty tuple.
#[derive(Clone, Debug)]
pub struct SmashPower<X> {
    factor: X,
    power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerSimplex<S> {
    pub degree: usize,
    pub factors: Vec<S>,
}

impl<X: PointedSimplicialSet> SmashPower<X> {
    pub fn new(factor: X, power: usize) -> Self {
        Self { factor, power }
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn factor(&self) -> &X {
        &self.factor
    }

    /// Concatenation `X^{∧l} ∧ X^{∧l′} → X^{∧(l+l′)}`.
    pub fn concat(a: &PowerSimplex<X::Simplex>, b: &PowerSimplex<X::Simplex>) -> PowerSimplex<X::Simplex> {
        assert_eq!(a.degree, b.degree, "concatenating simplices of different degrees");
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        PowerSimplex {
            degree: a.degree,
            factors,
        }
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (1u64 << n) - 1
    }
}

impl<X: PointedSimplicialSet> PointedSimplicialSet for SmashPower<X> {
    type Simplex = PowerSimplex<X::Simplex>;

    fn dimension(&self) -> usize {
        self.power * self.factor.dimension()
    }

    fn degree(&self, x: &Self::Simplex) -> usize {
        x.degree
    }

    fn face(&self, x: &Self::Simplex, i: usize) -> Option<Self::Simplex> {
        let factors = x
            .factors
            .iter()
            .map(|s| self.factor.face(s, i))
            .collect::<Option<Vec<_>>>()?;
        Some(PowerSimplex {
            degree: x.degree - 1,
            factors,
        })
    }

    fn degeneracy(&self, x: &Self::Simplex, i: usize) -> Self::Simplex {
        PowerSimplex {
            degree: x.degree + 1,
            factors: x.factors.iter().map(|s| self.factor.degeneracy(s, i)).collect(),
        }
    }

    fn simplices(&self, n: usize) -> Vec<Self::Simplex> {
        let level = self.factor.simplices(n);
        let mut out = alloc::vec![Vec::new()];
        for _ in 0..self.power {
            let mut next = Vec::with_capacity(out.len() * level.len());
            for t in &out {
                for s in &level {
                    let mut t2: Vec<X::Simplex> = t.clone();
                    t2.push(s.clone());
                    next.push(t2);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|factors| PowerSimplex { degree: n, factors })
            .collect()
    }

    fn nondegenerate_within(&self, n: usize, limit: usize) -> Option<Vec<Self::Simplex>> {
        let level: Vec<(X::Simplex, u64)> = self
            .factor
            .simplices(n)
            .into_iter()
            .map(|s| {
                let m = self.factor.degeneracy_mask(&s);
                (s, m)
            })
            .collect();
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn rec<S: Clone>(
            level: &[(S, u64)],
            power: usize,
            n: usize,
            mask: u64,
            stack: &mut Vec<usize>,
            out: &mut Vec<PowerSimplex<S>>,
            limit: usize,
        ) -> bool {
            if stack.len() == power {
                if mask == 0 {
                    if out.len() == limit {
                        return false;
                    }
                    out.push(PowerSimplex {
                        degree: n,
                        factors: stack.iter().map(|&k| level[k].0.clone()).collect(),
                    });
                }
                return true;
            }
            for (k, (_, m)) in level.iter().enumerate() {
                stack.push(k);
                let ok = rec(level, power, n, mask & m, stack, out, limit);
                stack.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(&level, self.power, n, full_mask(n), &mut stack, &mut out, limit).then_some(out)
    }

    fn degeneracy_mask(&self, x: &Self::Simplex) -> u64 {
        x.factors
            .iter()
            .fold(full_mask(x.degree), |m, s| m & self.factor.degeneracy_mask(s))
    }
}
