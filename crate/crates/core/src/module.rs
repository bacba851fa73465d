//! Finite dimensional right modules as quiver representations.
//!
//! A right module assigns to each vertex a finite dimensional space and to
//! each arrow `a: i -> j` a matrix of shape `dims[j] x dims[i]` (right
//! multiplication by `a` maps the vertex-`i` component into the vertex-`j`
//! component). Relations of the algebra must evaluate to zero.

use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::error::ComputeError;
use crate::field::{FieldKind, Scalar};
use crate::matrix::Matrix;
use crate::quiver::Path;

pub type ModRef = Arc<FDModule>;

#[derive(Clone)]
pub struct FDModule {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    offsets: Vec<usize>,
}

impl FDModule {
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, ComputeError> {
        let q = algebra.quiver();
        assert_eq!(dims.len(), q.vertex_count());
        assert_eq!(maps.len(), q.arrow_count());
        for (ai, a) in q.arrows().iter().enumerate() {
            if maps[ai].rows() != dims[a.dst] || maps[ai].cols() != dims[a.src] {
                return Err(ComputeError::LinAlg(
                    crate::error::LinAlgError::DimensionMismatch(format!(
                        "map for `{}` must be {}x{}",
                        a.label, dims[a.dst], dims[a.src]
                    )),
                ));
            }
        }
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        let m = FDModule {
            algebra,
            dims,
            maps,
            offsets,
        };
        m.check_relations()?;
        Ok(m)
    }

    fn check_relations(&self) -> Result<(), ComputeError> {
        let q = self.algebra.quiver();
        for r in self.algebra.relations() {
            let (src, tgt) = {
                let p = &r.terms[0].1;
                (p.source, p.target(q))
            };
            let mut acc = Matrix::zeros(self.kind(), self.dims[tgt], self.dims[src]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(ComputeError::Unsupported(
                    "module does not satisfy the algebra's relations".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn kind(&self) -> FieldKind {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The matrix of right multiplication along a path, from the source
    /// vertex space to the target vertex space.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let q = self.algebra.quiver();
        let mut acc = Matrix::identity(self.kind(), self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        debug_assert_eq!(acc.rows(), self.dims[p.target(q)]);
        acc
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let q = algebra.quiver();
        let kind = algebra.field();
        let dims = vec![0; q.vertex_count()];
        let maps = q
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(kind, 0, 0))
            .collect();
        FDModule::new(algebra, dims, maps).expect("zero module is always valid")
    }

    pub fn simple(algebra: Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        let q = algebra.quiver();
        let kind = algebra.field();
        let dims: Vec<usize> = (0..q.vertex_count()).map(|w| usize::from(w == v)).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(kind, dims[a.dst], dims[a.src]))
            .collect();
        FDModule::new(algebra, dims, maps).expect("simple module is always valid")
    }

    /// Indecomposable projective `P_v = e_v A`: the space at vertex `w` has
    /// the basis paths `v -> w`, and an arrow acts by right concatenation
    /// followed by reduction.
    pub fn projective(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        let q = algebra.quiver();
        let kind = algebra.field();
        let n = q.vertex_count();
        // local ordering of basis paths per target vertex
        let local: Vec<Vec<usize>> = (0..n).map(|w| algebra.paths_between(v, w).to_vec()).collect();
        let pos_of: std::collections::HashMap<usize, (usize, usize)> = local
            .iter()
            .enumerate()
            .flat_map(|(w, list)| {
                list.iter()
                    .enumerate()
                    .map(move |(k, &b)| (b, (w, k)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let dims: Vec<usize> = local.iter().map(|l| l.len()).collect();
        let mut maps: Vec<Matrix> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(kind, dims[a.dst], dims[a.src]))
            .collect();
        for (ai, a) in q.arrows().iter().enumerate() {
            let arrow_idx = algebra
                .path_index(&Path::of_arrow(q, ai))
                .expect("arrows are basis paths");
            for (col, &p) in local[a.src].iter().enumerate() {
                for (bidx, coeff) in algebra.mult_basis(p, arrow_idx) {
                    let (w, row) = pos_of[bidx];
                    debug_assert_eq!(w, a.dst);
                    let cur = maps[ai].at(row, col).clone();
                    maps[ai].set(row, col, &cur + coeff);
                }
            }
        }
        FDModule::new(algebra.clone(), dims, maps).expect("projective satisfies relations")
    }

    /// Indecomposable injective `I_v = D(A e_v)`: the space at `w` is the
    /// dual of the span of paths `w -> v`; an arrow `a: i -> j` acts by the
    /// transpose of left concatenation `a * -`.
    pub fn injective(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        let q = algebra.quiver();
        let kind = algebra.field();
        let n = q.vertex_count();
        let local: Vec<Vec<usize>> = (0..n).map(|w| algebra.paths_between(w, v).to_vec()).collect();
        let pos_of: std::collections::HashMap<usize, (usize, usize)> = local
            .iter()
            .enumerate()
            .flat_map(|(w, list)| {
                list.iter()
                    .enumerate()
                    .map(move |(k, &b)| (b, (w, k)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let dims: Vec<usize> = local.iter().map(|l| l.len()).collect();
        let mut maps: Vec<Matrix> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(kind, dims[a.dst], dims[a.src]))
            .collect();
        for (ai, a) in q.arrows().iter().enumerate() {
            let arrow_idx = algebra
                .path_index(&Path::of_arrow(q, ai))
                .expect("arrows are basis paths");
            // left multiplication: paths j -> v get a prefixed, landing in i -> v
            for (col, &p) in local[a.dst].iter().enumerate() {
                for (bidx, coeff) in algebra.mult_basis(arrow_idx, p) {
                    if let Some(&(w, row)) = pos_of.get(bidx) {
                        debug_assert_eq!(w, a.src);
                        // transpose: entry (col-in-dst, row-in-src)
                        let cur = maps[ai].at(col, row).clone();
                        maps[ai].set(col, row, &cur + coeff);
                    }
                }
            }
        }
        FDModule::new(algebra.clone(), dims, maps).expect("injective satisfies relations")
    }

    /// The regular module `A_A = ⊕ P_v`.
    pub fn regular(algebra: &Arc<BoundQuiverAlgebra>) -> Self {
        let parts: Vec<FDModule> = (0..algebra.quiver().vertex_count())
            .map(|v| FDModule::projective(algebra, v))
            .collect();
        FDModule::direct_sum(algebra, &parts)
    }

    pub fn direct_sum(algebra: &Arc<BoundQuiverAlgebra>, parts: &[FDModule]) -> Self {
        let q = algebra.quiver();
        let kind = algebra.field();
        let n = q.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let maps: Vec<Matrix> = (0..q.arrow_count())
            .map(|ai| {
                let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.maps[ai]).collect();
                Matrix::block_diag(kind, &blocks)
            })
            .collect();
        FDModule::new(algebra.clone(), dims, maps).expect("direct sum satisfies relations")
    }

    /// Canonical injection of `parts[k]` into the direct sum.
    pub fn sum_injection(sum: &FDModule, parts: &[FDModule], k: usize) -> ModuleMorphism {
        let kind = sum.kind();
        let blocks = (0..sum.dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(kind, sum.dims[v], parts[k].dims[v]);
                let before: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
                m.paste(before, 0, &Matrix::identity(kind, parts[k].dims[v]));
                m
            })
            .collect();
        ModuleMorphism {
            source: Arc::new(parts[k].clone()),
            target: Arc::new(sum.clone()),
            blocks,
        }
    }

    pub fn sum_projection(sum: &FDModule, parts: &[FDModule], k: usize) -> ModuleMorphism {
        let kind = sum.kind();
        let blocks = (0..sum.dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(kind, parts[k].dims[v], sum.dims[v]);
                let before: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
                m.paste(0, before, &Matrix::identity(kind, parts[k].dims[v]));
                m
            })
            .collect();
        ModuleMorphism {
            source: Arc::new(sum.clone()),
            target: Arc::new(parts[k].clone()),
            blocks,
        }
    }

    /// Submodule spanned by per-vertex column bases. The spans must be closed
    /// under the arrow maps; this is checked exactly.
    pub fn submodule(&self, spans: &[Matrix]) -> Result<(FDModule, ModuleMorphism), ComputeError> {
        let q = self.algebra.quiver();
        let kind = self.kind();
        let dims: Vec<usize> = spans.iter().map(|s| s.cols()).collect();
        let mut maps = Vec::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            let mapped = self.maps[ai].mul(&spans[a.src]);
            // express columns of `mapped` in the basis spans[a.dst]
            let mut induced = Matrix::zeros(kind, dims[a.dst], dims[a.src]);
            for c in 0..mapped.cols() {
                let col = mapped.column(c);
                match spans[a.dst].solve(&col)? {
                    Some((x, _)) => {
                        for (r, v) in x.into_iter().enumerate() {
                            induced.set(r, c, v);
                        }
                    }
                    None => {
                        return Err(ComputeError::Unsupported(
                            "spans are not closed under the arrow maps".into(),
                        ))
                    }
                }
            }
            maps.push(induced);
        }
        let sub = FDModule::new(self.algebra.clone(), dims, maps)?;
        let incl = ModuleMorphism {
            source: Arc::new(sub.clone()),
            target: Arc::new(self.clone()),
            blocks: spans.to_vec(),
        };
        debug_assert!(incl.is_valid());
        Ok((sub, incl))
    }

    /// Quotient by the submodule spanned by per-vertex columns; returns the
    /// quotient and the projection.
    pub fn quotient(&self, spans: &[Matrix]) -> Result<(FDModule, ModuleMorphism), ComputeError> {
        let q = self.algebra.quiver();
        let kind = self.kind();
        // projection per vertex: cokernel of the span inclusion
        let projs: Vec<Matrix> = spans.iter().map(|s| s.cokernel_projection()).collect();
        let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
        let mut maps = Vec::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            // induced: m' with m' ∘ proj_src = proj_dst ∘ map
            let rhs = projs[a.dst].mul(&self.maps[ai]);
            // solve m' * proj_src = rhs via the transposed system
            let pt = projs[a.src].transpose();
            let rt = rhs.transpose();
            let mut cols = Vec::new();
            for c in 0..rt.cols() {
                let col = rt.column(c);
                let sol = pt
                    .solve(&col)?
                    .ok_or_else(|| {
                        ComputeError::Unsupported("spans are not closed under arrow maps".into())
                    })?
                    .0;
                cols.push(sol);
            }
            let induced_t = Matrix::from_columns(kind, projs[a.src].rows(), &cols);
            maps.push(induced_t.transpose());
        }
        let quot = FDModule::new(self.algebra.clone(), dims, maps)?;
        let proj = ModuleMorphism {
            source: Arc::new(self.clone()),
            target: Arc::new(quot.clone()),
            blocks: projs,
        };
        debug_assert!(proj.is_valid());
        Ok((quot, proj))
    }

    /// Radical: the sum of the images of all arrow maps, as per-vertex spans.
    pub fn radical_spans(&self) -> Vec<Matrix> {
        let q = self.algebra.quiver();
        let kind = self.kind();
        (0..q.vertex_count())
            .map(|v| {
                let mut span = crate::matrix::RowSpan::new(kind, self.dims[v]);
                for (ai, _) in q.arrows_into(v) {
                    let im = self.maps[ai].image();
                    for c in 0..im.cols() {
                        span.insert(im.column(c));
                    }
                }
                rowspan_to_columns(kind, self.dims[v], &span)
            })
            .collect()
    }

    /// Socle: the joint kernel of all arrow maps out of each vertex.
    pub fn socle_spans(&self) -> Vec<Matrix> {
        let q = self.algebra.quiver();
        let kind = self.kind();
        (0..q.vertex_count())
            .map(|v| {
                let arrows: Vec<usize> = q.arrows_from(v).map(|(ai, _)| ai).collect();
                if arrows.is_empty() {
                    return Matrix::identity(kind, self.dims[v]);
                }
                let mut stacked: Option<Matrix> = None;
                for ai in arrows {
                    stacked = Some(match stacked {
                        None => self.maps[ai].clone(),
                        Some(s) => s.vstack(&self.maps[ai]),
                    });
                }
                stacked.unwrap().kernel()
            })
            .collect()
    }
}

pub(crate) fn rowspan_to_columns(
    kind: FieldKind,
    dim: usize,
    span: &crate::matrix::RowSpan,
) -> Matrix {
    // the span rows, written as columns of a dim x rank matrix
    let mut m = Matrix::zeros(kind, dim, span.rank());
    for (j, (_, row)) in span_rows(span).iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

// RowSpan keeps its internals private; expose what we need crate-side.
fn span_rows(span: &crate::matrix::RowSpan) -> Vec<(usize, Vec<Scalar>)> {
    span.rows_cloned()
}

impl std::fmt::Debug for FDModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FDModule(dims {:?})", self.dims)
    }
}

/// A module morphism: one matrix per vertex, commuting with arrow maps.
#[derive(Clone)]
pub struct ModuleMorphism {
    pub source: ModRef,
    pub target: ModRef,
    pub blocks: Vec<Matrix>,
}

impl ModuleMorphism {
    pub fn zero(source: ModRef, target: ModRef) -> Self {
        let kind = source.kind();
        let blocks = (0..source.dims.len())
            .map(|v| Matrix::zeros(kind, target.dims[v], source.dims[v]))
            .collect();
        ModuleMorphism {
            source,
            target,
            blocks,
        }
    }

    pub fn identity(m: &ModRef) -> Self {
        let kind = m.kind();
        let blocks = (0..m.dims.len())
            .map(|v| Matrix::identity(kind, m.dims[v]))
            .collect();
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            blocks,
        }
    }

    /// Exact check of the commutation condition on every arrow.
    pub fn is_valid(&self) -> bool {
        let q = self.source.algebra.quiver();
        q.arrows().iter().enumerate().all(|(ai, a)| {
            let lhs = self.target.maps[ai].mul(&self.blocks[a.src]);
            let rhs = self.blocks[a.dst].mul(&self.source.maps[ai]);
            lhs == rhs
        })
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &ModuleMorphism) -> ModuleMorphism {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(f, g)| g.mul(f))
            .collect();
        ModuleMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            blocks,
        }
    }

    pub fn add(&self, other: &ModuleMorphism) -> ModuleMorphism {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(f, g)| f.add(g))
            .collect();
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.kernel().cols() == 0)
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    /// Kernel as a module with its inclusion.
    pub fn kernel(&self) -> (FDModule, ModuleMorphism) {
        let spans: Vec<Matrix> = self.blocks.iter().map(|b| b.kernel()).collect();
        self.source
            .submodule(&spans)
            .expect("kernel spans are arrow-closed")
    }

    /// Image as a submodule of the target with its inclusion.
    pub fn image(&self) -> (FDModule, ModuleMorphism) {
        let spans: Vec<Matrix> = self.blocks.iter().map(|b| b.image()).collect();
        self.target
            .submodule(&spans)
            .expect("image spans are arrow-closed")
    }

    /// Coker as a quotient of the target with its projection.
    pub fn cokernel(&self) -> (FDModule, ModuleMorphism) {
        let spans: Vec<Matrix> = self.blocks.iter().map(|b| b.image()).collect();
        self.target
            .quotient(&spans)
            .expect("image spans are arrow-closed")
    }
}

impl std::fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ModuleMorphism({:?} -> {:?})",
            self.source.dims(),
            self.target.dims()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::dsl;

    fn algebra(text: &str) -> Arc<BoundQuiverAlgebra> {
        let doc = dsl::parse_document(text).unwrap();
        let (q, rels) = dsl::build_quiver(doc.algebra.as_ref().unwrap(), FieldKind::Rationals)
            .unwrap();
        BoundQuiverAlgebra::new(
            q,
            rels,
            FieldKind::Rationals,
            &crate::algebra::AlgebraOptions::default(),
        )
        .unwrap()
    }

    fn example1() -> Arc<BoundQuiverAlgebra> {
        algebra("quiver { 1 2 3 4 5 ; a:1->3, b:2->3, c:3->4, d:4->5 }")
    }

    #[test]
    fn projective_and_injective_dimension_vectors() {
        let a = example1();
        // oracle: dims of P_v / I_v are path counts out of / into v
        let p1 = FDModule::projective(&a, 0);
        assert_eq!(p1.dims(), &[1, 0, 1, 1, 1]);
        let p5 = FDModule::projective(&a, 4);
        assert_eq!(p5.dims(), &[0, 0, 0, 0, 1]); // vertex 5 is a sink
        let i5 = FDModule::injective(&a, 4);
        assert_eq!(i5.dims(), &[1, 1, 1, 1, 1]);
        let i3 = FDModule::injective(&a, 2);
        assert_eq!(i3.dims(), &[1, 1, 1, 0, 0]);
        let s2 = FDModule::simple(a.clone(), 1);
        assert_eq!(s2.dims(), &[0, 1, 0, 0, 0]);
    }

    #[test]
    fn regular_module_has_algebra_dimension() {
        let a = example1();
        let reg = FDModule::regular(&a);
        assert_eq!(reg.total_dim(), a.dim());
    }

    #[test]
    fn radical_and_socle_of_injective() {
        let a = example1();
        let i5 = FDModule::injective(&a, 4);
        let rad = i5.radical_spans();
        let rad_dims: Vec<usize> = rad.iter().map(|m| m.cols()).collect();
        assert_eq!(rad_dims, vec![0, 0, 1, 1, 1]); // top = S1 + S2
        let soc = i5.socle_spans();
        let soc_dims: Vec<usize> = soc.iter().map(|m| m.cols()).collect();
        assert_eq!(soc_dims, vec![0, 0, 0, 0, 1]); // socle = S5
    }

    #[test]
    fn quotient_of_injective_by_socle() {
        let a = example1();
        let i5 = FDModule::injective(&a, 4);
        let (q, proj) = i5.quotient(&i5.socle_spans()).unwrap();
        assert_eq!(q.dims(), &[1, 1, 1, 1, 0]); // I4
        assert!(proj.is_valid());
        assert!(proj.is_surjective());
    }

    #[test]
    fn monomial_relations_constrain_modules() {
        let a = algebra("quiver {1 2 3; x:1->2, y:2->3} relations { x*y }");
        let kind = FieldKind::Rationals;
        // a module violating x*y = 0 must be rejected
        let m = FDModule::new(
            a.clone(),
            vec![1, 1, 1],
            vec![
                Matrix::identity(kind, 1),
                Matrix::identity(kind, 1),
            ],
        );
        assert!(m.is_err());
        // the zigzag with y = 0 is fine
        let m = FDModule::new(
            a,
            vec![1, 1, 1],
            vec![Matrix::identity(kind, 1), Matrix::zeros(kind, 1, 1)],
        )
        .unwrap();
        assert_eq!(m.total_dim(), 3);
    }
}
