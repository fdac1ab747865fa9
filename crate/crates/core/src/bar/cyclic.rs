use alloc::vec::Vec;

use crate::simplicial::{PointedSimplicialSet, SmashPower};

/// A bisimplex of the weight-`m` cyclic bar construction on the free monoid
/// on `X`: a point of the wedge summand `A(n_0) ∧ … ∧ A(n_s)` indexed by the
/// composition `comp = (n_0, …, n_s)` of `m`, given by `m` non-basepoint
/// simplices of `X` of vertical degree `vdeg`, listed block after block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarSimplex<S> {
    pub comp: Vec<usize>,
    pub vdeg: usize,
    pub factors: Vec<S>,
}

impl<S> BarSimplex<S> {
    /// Horizontal (cyclic) degree `s`.
    pub fn level(&self) -> usize {
        self.comp.len() - 1
    }

    pub fn weight(&self) -> usize {
        self.comp.iter().sum()
    }
}

/// Compositions of `total` into `parts` non-negative parts, in decreasing
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(parts);
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(left - k, parts, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, &mut cur, &mut out);
    out
}

/// Applies the cyclic-bar structure map along a monotone `θ : [t] → [s]`
/// (given by its values). New block `j ≥ 1` is the product of the old
/// blocks in `(θ(j−1), θ(j)]`; new block 0 wraps around, collecting blocks
/// `θ(t)+1, …, s` and then `0, …, θ(0)`.
pub fn regroup<S: Clone>(y: &BarSimplex<S>, theta: &[usize]) -> BarSimplex<S> {
    let s = y.level();
    let mut starts = Vec::with_capacity(s + 2);
    let mut acc = 0;
    for &c in &y.comp {
        starts.push(acc);
        acc += c;
    }
    starts.push(acc);
    let block = |i: usize| &y.factors[starts[i]..starts[i + 1]];
    let t = theta.len() - 1;
    let mut comp = Vec::with_capacity(t + 1);
    let mut factors = Vec::with_capacity(y.factors.len());
    let first: Vec<usize> = (theta[t] + 1..=s).chain(0..=theta[0]).collect();
    comp.push(first.iter().map(|&i| y.comp[i]).sum());
    for &i in &first {
        factors.extend_from_slice(block(i));
    }
    for j in 1..=t {
        debug_assert!(theta[j - 1] <= theta[j] && theta[j] <= s);
        comp.push((theta[j - 1] + 1..=theta[j]).map(|i| y.comp[i]).sum());
        for i in theta[j - 1] + 1..=theta[j] {
            factors.extend_from_slice(block(i));
        }
    }
    BarSimplex {
        comp,
        vdeg: y.vdeg,
        factors,
    }
}

/// `δ_i : [n−1] → [n]` repeated `p` times, `[p·n − 1] → [p(n+1) − 1]`.
pub(crate) fn coface_theta(n: usize, i: usize, p: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(p * n);
    for c in 0..p {
        for j in 0..n {
            out.push(c * (n + 1) + if j < i { j } else { j + 1 });
        }
    }
    out
}

/// `σ_i : [n+1] → [n]` repeated `p` times.
pub(crate) fn codegeneracy_theta(n: usize, i: usize, p: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(p * (n + 2));
    for c in 0..p {
        for j in 0..n + 2 {
            out.push(c * (n + 1) + if j <= i { j } else { j - 1 });
        }
    }
    out
}

/// The weight-`m` piece `b′(m)` of the pointed cyclic bar construction on
/// the free monoid on `X`.
#[derive(Clone, Debug)]
pub struct CyclicBarComplex<X> {
    x: X,
    m: usize,
}

impl<X: PointedSimplicialSet + Clone> CyclicBarComplex<X> {
    pub fn new(x: X, m: usize) -> Self {
        Self { x, m }
    }

    pub fn weight(&self) -> usize {
        self.m
    }

    pub fn generator_space(&self) -> &X {
        &self.x
    }

    /// Wedge summands of `b′(m)_s`: the compositions `n_0 + … + n_s = m`.
    pub fn bar_level(&self, s: usize) -> Vec<Vec<usize>> {
        compositions(self.m, s + 1)
    }

    /// Non-basepoint bisimplices in bidegree `(s, q)`.
    pub fn simplices(&self, s: usize, q: usize) -> Vec<BarSimplex<X::Simplex>> {
        let tuples = SmashPower::new(self.x.clone(), self.m).simplices(q);
        let mut out = Vec::new();
        for comp in self.bar_level(s) {
            for t in &tuples {
                out.push(BarSimplex {
                    comp: comp.clone(),
                    vdeg: q,
                    factors: t.factors.clone(),
                });
            }
        }
        out
    }

    /// Hochschild face: `d_i` multiplies blocks `i` and `i+1`; `d_s` moves
    /// the last block in front of the first and multiplies.
    pub fn face_h(&self, y: &BarSimplex<X::Simplex>, i: usize) -> BarSimplex<X::Simplex> {
        let s = y.level();
        assert!(s >= 1 && i <= s, "horizontal face index out of range");
        regroup(y, &coface_theta(s, i, 1))
    }

    /// `s_i` inserts the unit as block `i + 1`.
    pub fn degeneracy_h(&self, y: &BarSimplex<X::Simplex>, i: usize) -> BarSimplex<X::Simplex> {
        regroup(y, &codegeneracy_theta(y.level(), i, 1))
    }

    /// `t_s (a_0, …, a_s) = (a_s, a_0, …, a_{s−1})`.
    pub fn rotate(&self, y: &BarSimplex<X::Simplex>) -> BarSimplex<X::Simplex> {
        rotate_blocks(y, 1)
    }

    pub fn face_v(&self, y: &BarSimplex<X::Simplex>, j: usize) -> Option<BarSimplex<X::Simplex>> {
        let factors = y
            .factors
            .iter()
            .map(|f| self.x.face(f, j))
            .collect::<Option<Vec<_>>>()?;
        Some(BarSimplex {
            comp: y.comp.clone(),
            vdeg: y.vdeg - 1,
            factors,
        })
    }

    pub fn degeneracy_v(&self, y: &BarSimplex<X::Simplex>, j: usize) -> BarSimplex<X::Simplex> {
        BarSimplex {
            comp: y.comp.clone(),
            vdeg: y.vdeg + 1,
            factors: y.factors.iter().map(|f| self.x.degeneracy(f, j)).collect(),
        }
    }

    /// The diagonal simplicial set of `b′(m)`.
    pub fn diagonal_realization(&self) -> BarDiagonal<X> {
        BarDiagonal::new(self.x.clone(), self.m, 1)
    }

    /// The `p`-fold edgewise subdivision.
    pub fn subdivide(&self, p: usize) -> SubdividedComplex<X> {
        assert!(p >= 1, "subdivision index must be positive");
        SubdividedComplex {
            bar: self.clone(),
            p,
        }
    }
}

/// Moves the last `k` blocks to the front (`t^k`), carrying factors along.
pub fn rotate_blocks<S: Clone>(y: &BarSimplex<S>, k: usize) -> BarSimplex<S> {
    let n = y.comp.len();
    let k = k % n;
    if k == 0 {
        return y.clone();
    }
    let split = n - k;
    let moved: usize = y.comp[split..].iter().sum();
    let fsplit = y.factors.len() - moved;
    let mut comp = y.comp[split..].to_vec();
    comp.extend_from_slice(&y.comp[..split]);
    let mut factors = y.factors[fsplit..].to_vec();
    factors.extend_from_slice(&y.factors[..fsplit]);
    BarSimplex {
        comp,
        vdeg: y.vdeg,
        factors,
    }
}

/// `sd_p b′(m)`: level `k` is `b′(m)_{p(k+1)−1}`, structure maps along
/// `θ ⊔ … ⊔ θ`, and the generator of `C_p` rotates blocks by `k + 1`.
#[derive(Clone, Debug)]
pub struct SubdividedComplex<X> {
    bar: CyclicBarComplex<X>,
    p: usize,
}

impl<X: PointedSimplicialSet + Clone> SubdividedComplex<X> {
    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn bar(&self) -> &CyclicBarComplex<X> {
        &self.bar
    }

    /// The cyclic-bar level that serves as level `k`.
    pub fn bar_index(&self, k: usize) -> usize {
        self.p * (k + 1) - 1
    }

    pub fn level(&self, k: usize) -> Vec<Vec<usize>> {
        self.bar.bar_level(self.bar_index(k))
    }

    pub fn simplices(&self, k: usize, q: usize) -> Vec<BarSimplex<X::Simplex>> {
        self.bar.simplices(self.bar_index(k), q)
    }

    fn sd_level(&self, y: &BarSimplex<X::Simplex>) -> usize {
        let len = y.comp.len();
        debug_assert_eq!(len % self.p, 0);
        len / self.p - 1
    }

    pub fn face_h(&self, y: &BarSimplex<X::Simplex>, i: usize) -> BarSimplex<X::Simplex> {
        let k = self.sd_level(y);
        assert!(k >= 1 && i <= k, "horizontal face index out of range");
        regroup(y, &coface_theta(k, i, self.p))
    }

    pub fn degeneracy_h(&self, y: &BarSimplex<X::Simplex>, i: usize) -> BarSimplex<X::Simplex> {
        regroup(y, &codegeneracy_theta(self.sd_level(y), i, self.p))
    }

    /// Generator of the `C_p`-action.
    pub fn act(&self, y: &BarSimplex<X::Simplex>) -> BarSimplex<X::Simplex> {
        rotate_blocks(y, self.sd_level(y) + 1)
    }

    pub fn diagonal(&self) -> BarDiagonal<X> {
        BarDiagonal::new(self.bar.x.clone(), self.bar.m, self.p)
    }
}

/// Diagonal of `sd_p b′(m)` (with `p = 1` the diagonal of `b′(m)` itself):
/// simplices of degree `n` are bisimplices of bidegree `(p(n+1)−1, n)`,
/// with `d_i = d^h_i d^v_i` and `s_i = s^h_i s^v_i`.
#[derive(Clone, Debug)]
pub struct BarDiagonal<X> {
    x: X,
    m: usize,
    p: usize,
}

impl<X: PointedSimplicialSet + Clone> BarDiagonal<X> {
    pub fn new(x: X, m: usize, p: usize) -> Self {
        assert!(p >= 1, "subdivision index must be positive");
        Self { x, m, p }
    }

    pub fn weight(&self) -> usize {
        self.m
    }

    /// Bit `i` set when every block `c(n+1) + i + 1` is the unit, i.e. the
    /// simplex is a horizontal degeneracy `s_i`.
    fn horizontal_mask(&self, comp: &[usize], n: usize) -> u64 {
        let mut mask = 0;
        for i in 0..n {
            if (0..self.p).all(|c| comp[c * (n + 1) + i + 1] == 0) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Non-basepoint nondegenerate simplices per degree, stopping with the
    /// first degree that exceeds `limit`.
    pub fn cell_counts(&self, limit: usize) -> Result<Vec<usize>, usize> {
        (0..=self.dimension())
            .map(|n| self.nondegenerate_within(n, limit).map(|v| v.len()).ok_or(n))
            .collect()
    }
}

impl<X: PointedSimplicialSet + Clone> PointedSimplicialSet for BarDiagonal<X> {
    type Simplex = BarSimplex<X::Simplex>;

    /// Upper bound `m (dim X + 1)`: each horizontal gap that is not filled
    /// by a block needs a factor to be vertically nondegenerate there.
    fn dimension(&self) -> usize {
        self.m * (self.x.dimension() + 1)
    }

    fn degree(&self, y: &Self::Simplex) -> usize {
        y.vdeg
    }

    fn face(&self, y: &Self::Simplex, i: usize) -> Option<Self::Simplex> {
        let n = y.vdeg;
        let h = regroup(y, &coface_theta(n, i, self.p));
        let factors = h
            .factors
            .iter()
            .map(|f| self.x.face(f, i))
            .collect::<Option<Vec<_>>>()?;
        Some(BarSimplex {
            comp: h.comp,
            vdeg: n - 1,
            factors,
        })
    }

    fn degeneracy(&self, y: &Self::Simplex, i: usize) -> Self::Simplex {
        let n = y.vdeg;
        let h = regroup(y, &codegeneracy_theta(n, i, self.p));
        BarSimplex {
            comp: h.comp,
            vdeg: n + 1,
            factors: h.factors.iter().map(|f| self.x.degeneracy(f, i)).collect(),
        }
    }

    fn simplices(&self, n: usize) -> Vec<Self::Simplex> {
        let tuples = SmashPower::new(self.x.clone(), self.m).simplices(n);
        let mut out = Vec::new();
        for comp in compositions(self.m, self.p * (n + 1)) {
            for t in &tuples {
                out.push(BarSimplex {
                    comp: comp.clone(),
                    vdeg: n,
                    factors: t.factors.clone(),
                });
            }
        }
        out
    }

    fn nondegenerate_within(&self, n: usize, limit: usize) -> Option<Vec<Self::Simplex>> {
        let level: Vec<(X::Simplex, u64)> = self
            .x
            .simplices(n)
            .into_iter()
            .map(|s| {
                let mask = self.x.degeneracy_mask(&s);
                (s, mask)
            })
            .collect();
        let jumps = self.x.dimension() as u32;
        let parts = self.p * (n + 1);
        let mut search = DiagonalSearch {
            level: &level,
            m: self.m,
            n,
            p: self.p,
            parts,
            jumps,
            limit,
            out: Vec::new(),
            comp: Vec::with_capacity(parts),
            tuple: Vec::with_capacity(self.m),
        };
        search.compositions(self.m).then_some(search.out)
    }

    fn degeneracy_mask(&self, y: &Self::Simplex) -> u64 {
        let n = y.vdeg;
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let v = y.factors.iter().fold(full, |m, f| m & self.x.degeneracy_mask(f));
        v & self.horizontal_mask(&y.comp, n)
    }
}

/// Depth-first enumeration of nondegenerate diagonal simplices: first the
/// composition (pruned by the number of unfilled gaps the factors could
/// still cover), then the factor tuple.
struct DiagonalSearch<'a, S> {
    level: &'a [(S, u64)],
    m: usize,
    n: usize,
    p: usize,
    parts: usize,
    jumps: u32,
    limit: usize,
    out: Vec<BarSimplex<S>>,
    comp: Vec<usize>,
    tuple: Vec<usize>,
}

impl<S: Clone> DiagonalSearch<'_, S> {
    /// Unfilled gaps among those whose last copy is already placed.
    fn settled_unfilled(&self) -> (u64, usize) {
        let n = self.n;
        let mut mask = 0u64;
        let mut count = 0;
        for i in 0..n {
            let last = (self.p - 1) * (n + 1) + i + 1;
            if last >= self.comp.len() {
                break;
            }
            if (0..self.p).all(|c| self.comp[c * (n + 1) + i + 1] == 0) {
                mask |= 1 << i;
                count += 1;
            }
        }
        (mask, count)
    }

    fn compositions(&mut self, left: usize) -> bool {
        let (_, unfilled) = self.settled_unfilled();
        if unfilled > self.m * self.jumps as usize {
            return true;
        }
        if self.comp.len() + 1 == self.parts {
            self.comp.push(left);
            let (mask, unfilled) = self.settled_unfilled();
            let ok = unfilled > self.m * self.jumps as usize || self.tuples(mask, u64::MAX);
            self.comp.pop();
            return ok;
        }
        for k in (0..=left).rev() {
            self.comp.push(k);
            let ok = self.compositions(left - k);
            self.comp.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// `need`: gaps that must be vertically nondegenerate; `acc`: gaps
    /// where every chosen factor so far is degenerate.
    fn tuples(&mut self, need: u64, acc: u64) -> bool {
        let open = (acc & need).count_ones();
        let remaining = (self.m - self.tuple.len()) as u32;
        if open > remaining * self.jumps {
            return true;
        }
        if self.tuple.len() == self.m {
            if acc & need != 0 {
                return true;
            }
            if self.out.len() == self.limit {
                return false;
            }
            self.out.push(BarSimplex {
                comp: self.comp.clone(),
                vdeg: self.n,
                factors: self.tuple.iter().map(|&k| self.level[k].0.clone()).collect(),
            });
            return true;
        }
        for k in 0..self.level.len() {
            let mask = self.level[k].1;
            self.tuple.push(k);
            let ok = self.tuples(need, acc & mask);
            self.tuple.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}
