use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{PointedSimplicialSet, SimplicialError};

/// A simplex `op^*(g)`: generator `g` pulled back along the monotone
/// surjection `op : [n] → [dim g]`, stored as its list of values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub generator: usize,
    pub op: Vec<u8>,
}

impl Simplex {
    pub fn degree(&self) -> usize {
        self.op.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.op.iter().enumerate().all(|(i, &v)| v as usize == i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Generator {
    dim: usize,
    faces: Vec<Option<Simplex>>,
}

/// Pointed simplicial set presented by its nondegenerate non-basepoint
/// simplices ("generators") and their faces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinitePointedSimplicialSet {
    generators: Vec<Generator>,
}

/// All monotone surjections `[n] → [k]`, lexicographically.
pub fn monotone_surjections(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur = alloc::vec![0u8];
    fn rec(n: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n + 1 {
            if *cur.last().unwrap() as usize == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let remaining = n + 1 - cur.len();
        for step in 0..=1u8 {
            let v = last + step;
            if (v as usize) <= k && k - (v as usize) < remaining {
                cur.push(v);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

impl FinitePointedSimplicialSet {
    /// Only the basepoint.
    pub fn point() -> Self {
        Self::default()
    }

    /// `S⁰`: the basepoint and one further vertex.
    pub fn s0() -> Self {
        let mut x = Self::default();
        x.add_generator(0, Vec::new()).expect("vertex");
        x
    }

    /// Adds a nondegenerate simplex of dimension `dim` with the given faces
    /// `d_0, …, d_dim`, each a simplex of dimension `dim − 1` (or the
    /// basepoint). Faces must already exist and satisfy the face identities.
    pub fn add_generator(&mut self, dim: usize, faces: Vec<Option<Simplex>>) -> Result<usize, SimplicialError> {
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(SimplicialError::MalformedGenerator("wrong number of faces"));
        }
        for f in faces.iter().flatten() {
            if f.generator >= self.generators.len()
                || f.degree() != dim - 1
                || f.op.last().copied().map(usize::from) != Some(self.generators[f.generator].dim)
            {
                return Err(SimplicialError::MalformedGenerator("face is not a valid simplex"));
            }
        }
        if dim >= 2 {
            for j in 0..=dim {
                for i in 0..j {
                    let lhs = faces[j].as_ref().and_then(|t| self.face(t, i));
                    let rhs = faces[i].as_ref().and_then(|t| self.face(t, j - 1));
                    if lhs != rhs {
                        return Err(SimplicialError::MalformedGenerator("face identities"));
                    }
                }
            }
        }
        self.generators.push(Generator { dim, faces });
        Ok(self.generators.len() - 1)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_dim(&self, g: usize) -> usize {
        self.generators[g].dim
    }

    /// The nondegenerate simplex of generator `g`.
    pub fn cell(&self, g: usize) -> Simplex {
        Simplex {
            generator: g,
            op: (0..=self.generators[g].dim as u8).collect(),
        }
    }

    /// Number of nondegenerate non-basepoint simplices per degree.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.dimension() + 1];
        for g in &self.generators {
            counts[g.dim] += 1;
        }
        counts
    }
}

impl PointedSimplicialSet for FinitePointedSimplicialSet {
    type Simplex = Simplex;

    fn dimension(&self) -> usize {
        self.generators.iter().map(|g| g.dim).max().unwrap_or(0)
    }

    fn degree(&self, x: &Simplex) -> usize {
        x.degree()
    }

    fn face(&self, x: &Simplex, i: usize) -> Option<Simplex> {
        let n = x.degree();
        assert!(n >= 1 && i <= n, "face index out of range");
        let v = x.op[i];
        let mut op: Vec<u8> = x.op.clone();
        op.remove(i);
        if op.contains(&v) {
            return Some(Simplex {
                generator: x.generator,
                op,
            });
        }
        // value v lost: factor through the v-th face of the generator
        for w in op.iter_mut() {
            if *w > v {
                *w -= 1;
            }
        }
        let f = self.generators[x.generator].faces[v as usize].as_ref()?;
        Some(Simplex {
            generator: f.generator,
            op: op.iter().map(|&w| f.op[w as usize]).collect(),
        })
    }

    fn degeneracy(&self, x: &Simplex, i: usize) -> Simplex {
        let mut op = x.op.clone();
        op.insert(i, op[i]);
        Simplex {
            generator: x.generator,
            op,
        }
    }

    fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (g, gen) in self.generators.iter().enumerate() {
            for op in monotone_surjections(n, gen.dim) {
                out.push(Simplex { generator: g, op });
            }
        }
        out
    }

    fn nondegenerate_within(&self, n: usize, limit: usize) -> Option<Vec<Simplex>> {
        let out: Vec<Simplex> = (0..self.generators.len())
            .filter(|&g| self.generators[g].dim == n)
            .map(|g| self.cell(g))
            .collect();
        (out.len() <= limit).then_some(out)
    }

    fn degeneracy_mask(&self, x: &Simplex) -> u64 {
        let mut mask = 0;
        for i in 0..x.degree() {
            if x.op[i] == x.op[i + 1] {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// `Δ²/∂Δ²`: the basepoint and a single 2-cell whose faces all collapse.
pub fn sphere_model() -> FinitePointedSimplicialSet {
    let mut x = FinitePointedSimplicialSet::default();
    x.add_generator(2, alloc::vec![None, None, None]).expect("2-cell");
    x
}

/// Collapses the pair `(u, v)` of equal degree to `op^*(u', v')` with
/// `(u', v')` jointly nondegenerate. Returns `(u', v', op)`.
fn pair_normal_form(u: &Simplex, v: &Simplex) -> (Simplex, Simplex, Vec<u8>) {
    let n = u.degree();
    let mut keep = alloc::vec![0usize];
    let mut op = alloc::vec![0u8];
    for i in 1..=n {
        if u.op[i] == u.op[i - 1] && v.op[i] == v.op[i - 1] {
            op.push(*op.last().unwrap());
        } else {
            keep.push(i);
            op.push(op.last().unwrap() + 1);
        }
    }
    let u2 = Simplex {
        generator: u.generator,
        op: keep.iter().map(|&i| u.op[i]).collect(),
    };
    let v2 = Simplex {
        generator: v.generator,
        op: keep.iter().map(|&i| v.op[i]).collect(),
    };
    (u2, v2, op)
}

/// Levelwise smash product `X ∧ Y`, presented by its jointly
/// nondegenerate pairs of non-basepoint simplices.
pub fn smash(x: &FinitePointedSimplicialSet, y: &FinitePointedSimplicialSet) -> FinitePointedSimplicialSet {
    let mut out = FinitePointedSimplicialSet::default();
    let mut index: BTreeMap<(Simplex, Simplex), usize> = BTreeMap::new();
    let top = x.dimension() + y.dimension();
    for n in 0..=top {
        // pairs in degree n, generated in a fixed order
        let mut cells = Vec::new();
        for (gx, ex) in x.generators.iter().enumerate() {
            for (gy, ey) in y.generators.iter().enumerate() {
                if n < ex.dim.max(ey.dim) || n > ex.dim + ey.dim {
                    continue;
                }
                for ox in monotone_surjections(n, ex.dim) {
                    for oy in monotone_surjections(n, ey.dim) {
                        let joint = (0..n).all(|i| ox[i] != ox[i + 1] || oy[i] != oy[i + 1]);
                        if joint {
                            cells.push((
                                Simplex { generator: gx, op: ox.clone() },
                                Simplex { generator: gy, op: oy },
                            ));
                        }
                    }
                }
            }
        }
        for (u, v) in cells {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let fu = x.face(&u, i)?;
                        let fv = y.face(&v, i)?;
                        let (u2, v2, op) = pair_normal_form(&fu, &fv);
                        let g = index[&(u2, v2)];
                        Some(Simplex { generator: g, op })
                    })
                    .collect()
            };
            let g = out.add_generator(n, faces).expect("faces of a smash cell");
            index.insert((u, v), g);
        }
    }
    out
}
