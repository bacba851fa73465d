//! Projective covers, presentations, and morphisms between sums of
//! indecomposable projectives stored as matrices of algebra elements.

use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::error::ComputeError;
use crate::field::Scalar;
use crate::matrix::{Matrix, RowSpan};
use crate::module::{FDModule, ModRef, ModuleMorphism};
use crate::quiver::Path;

/// A finite direct sum of indecomposable projectives with bookkeeping for
/// its summand structure.
#[derive(Clone)]
pub struct ProjSum {
    pub algebra: Arc<BoundQuiverAlgebra>,
    pub vertices: Vec<usize>,
    pub parts: Vec<FDModule>,
    pub module: ModRef,
}

impl ProjSum {
    pub fn new(algebra: &Arc<BoundQuiverAlgebra>, vertices: Vec<usize>) -> Self {
        let parts: Vec<FDModule> = vertices
            .iter()
            .map(|&v| FDModule::projective(algebra, v))
            .collect();
        let module = Arc::new(FDModule::direct_sum(algebra, &parts));
        ProjSum {
            algebra: algebra.clone(),
            vertices,
            parts,
            module,
        }
    }

    /// Column offset of summand `k` inside the vertex-`w` space.
    pub fn offset(&self, k: usize, w: usize) -> usize {
        self.parts[..k].iter().map(|p| p.dim_at(w)).sum()
    }

    /// Position of the generator `e_v` of summand `k` in the total space at
    /// its own vertex.
    pub fn generator_position(&self, k: usize) -> usize {
        let v = self.vertices[k];
        let local = self
            .algebra
            .paths_between(v, v)
            .iter()
            .position(|&b| self.algebra.basis_path(b).is_trivial())
            .expect("trivial path present");
        self.offset(k, v) + local
    }

    /// The morphism `P_{vertices[k]} -> M` sending the generator to `m0`.
    pub fn hom_from_part(
        &self,
        k: usize,
        m: &ModRef,
        m0: &[Scalar],
    ) -> ModuleMorphism {
        proj_to_module(&self.algebra, self.vertices[k], m, m0)
    }
}

/// The morphism `P_v -> M` determined by the image `m0 ∈ M_v` of the
/// generator: a path `p: v -> w` maps to `m0 · p`.
pub fn proj_to_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    v: usize,
    m: &ModRef,
    m0: &[Scalar],
) -> ModuleMorphism {
    let q = algebra.quiver();
    let kind = algebra.field();
    let pv = Arc::new(FDModule::projective(algebra, v));
    let blocks: Vec<Matrix> = (0..q.vertex_count())
        .map(|w| {
            let paths = algebra.paths_between(v, w);
            let mut b = Matrix::zeros(kind, m.dim_at(w), paths.len());
            for (col, &pidx) in paths.iter().enumerate() {
                let pm = m.path_matrix(algebra.basis_path(pidx));
                let img = pm.apply(m0);
                for (r, val) in img.into_iter().enumerate() {
                    b.set(r, col, val);
                }
            }
            b
        })
        .collect();
    ModuleMorphism {
        source: pv,
        target: m.clone(),
        blocks,
    }
}

/// Assembles one morphism `⊕_k P_{v_k} -> M` from per-summand morphisms.
pub fn assemble_from_parts(
    sum: &ProjSum,
    m: &ModRef,
    parts: &[ModuleMorphism],
) -> ModuleMorphism {
    let kind = sum.algebra.field();
    let q = sum.algebra.quiver();
    let blocks: Vec<Matrix> = (0..q.vertex_count())
        .map(|w| {
            let mut b = Matrix::zeros(kind, m.dim_at(w), sum.module.dim_at(w));
            for (k, f) in parts.iter().enumerate() {
                b.paste(0, sum.offset(k, w), &f.blocks[w]);
            }
            b
        })
        .collect();
    ModuleMorphism {
        source: sum.module.clone(),
        target: m.clone(),
        blocks,
    }
}

/// Projective cover `P(M) -> M`: one summand `P_v` per top basis vector.
pub fn projective_cover(m: &ModRef) -> (ProjSum, ModuleMorphism) {
    let algebra = m.algebra().clone();
    let q = algebra.quiver();
    let kind = algebra.field();
    let rad = m.radical_spans();
    let mut vertices = Vec::new();
    let mut lifts: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..q.vertex_count() {
        let mut span = RowSpan::new(kind, m.dim_at(v));
        for c in 0..rad[v].cols() {
            span.insert(rad[v].column(c));
        }
        for k in 0..m.dim_at(v) {
            let mut e = vec![kind.zero(); m.dim_at(v)];
            e[k] = kind.one();
            if span.insert(e.clone()) {
                vertices.push(v);
                lifts.push(e);
            }
        }
    }
    let sum = ProjSum::new(&algebra, vertices);
    let parts: Vec<ModuleMorphism> = lifts
        .iter()
        .enumerate()
        .map(|(k, m0)| sum.hom_from_part(k, m, m0))
        .collect();
    let eps = assemble_from_parts(&sum, m, &parts);
    debug_assert!(eps.is_valid());
    debug_assert!(eps.is_surjective());
    (sum, eps)
}

pub fn is_projective(m: &ModRef) -> bool {
    let (sum, _) = projective_cover(m);
    sum.module.total_dim() == m.total_dim()
}

pub fn is_injective(m: &ModRef) -> bool {
    // M is injective iff D(M) is projective over the opposite algebra
    let op = m.algebra().opposite();
    let dm = Arc::new(dual_to(m, &op));
    is_projective(&dm)
}

/// A minimal projective presentation `P1 -d-> P0 -eps-> M -> 0` together with
/// the kernel `K = ker eps` (for hereditary algebras `P1 ≅ K` and `d` is
/// injective, so `0 -> P1 -> P0 -> M -> 0` is exact).
pub struct ProjectivePresentation {
    pub module: ModRef,
    pub p0: ProjSum,
    pub eps: ModuleMorphism,
    pub kernel: ModRef,
    pub kernel_incl: ModuleMorphism,
    pub p1: ProjSum,
    pub p1_onto_kernel: ModuleMorphism,
    pub d: ModuleMorphism,
}

pub fn presentation(m: &ModRef) -> ProjectivePresentation {
    let (p0, eps) = projective_cover(m);
    let (kernel, kernel_incl) = eps.kernel();
    let kernel = Arc::new(kernel);
    let kernel_incl = ModuleMorphism {
        source: kernel.clone(),
        target: p0.module.clone(),
        blocks: kernel_incl.blocks,
    };
    let (p1, p1_onto_kernel) = projective_cover(&kernel);
    let d = p1_onto_kernel.then(&kernel_incl);
    ProjectivePresentation {
        module: m.clone(),
        p0,
        eps,
        kernel,
        kernel_incl,
        p1,
        p1_onto_kernel,
        d,
    }
}

/// The matrix of algebra elements describing a morphism between projective
/// sums: entry `(t, s)` lies in `e_{tgt[t]} A e_{src[s]}` and acts by left
/// multiplication.
pub struct ProjMatrix {
    pub algebra: Arc<BoundQuiverAlgebra>,
    pub src_vertices: Vec<usize>,
    pub tgt_vertices: Vec<usize>,
    pub entries: Vec<Vec<Vec<Scalar>>>,
}

/// Reads off algebra-element entries from a realized morphism of projective
/// sums by evaluating it on each generator.
pub fn proj_matrix_of(src: &ProjSum, tgt: &ProjSum, f: &ModuleMorphism) -> ProjMatrix {
    let algebra = src.algebra.clone();
    let n = algebra.dim();
    let kind = algebra.field();
    let mut entries = vec![vec![vec![kind.zero(); n]; src.vertices.len()]; tgt.vertices.len()];
    for (s, &vs) in src.vertices.iter().enumerate() {
        let pos = src.generator_position(s);
        // image of the generator in the vertex-vs space of the target sum
        let img = f.blocks[vs].column(pos);
        for (t, &vt) in tgt.vertices.iter().enumerate() {
            let off = tgt.offset(t, vs);
            let paths = algebra.paths_between(vt, vs);
            for (local, &pidx) in paths.iter().enumerate() {
                let val = img[off + local].clone();
                if !val.is_zero() {
                    entries[t][s][pidx] = val;
                }
            }
        }
    }
    ProjMatrix {
        algebra,
        src_vertices: src.vertices.clone(),
        tgt_vertices: tgt.vertices.clone(),
        entries,
    }
}

impl ProjMatrix {
    /// Realizes the morphism on modules.
    pub fn realize(&self) -> (ProjSum, ProjSum, ModuleMorphism) {
        let src = ProjSum::new(&self.algebra, self.src_vertices.clone());
        let tgt = ProjSum::new(&self.algebra, self.tgt_vertices.clone());
        let q = self.algebra.quiver();
        let kind = self.algebra.field();
        let blocks: Vec<Matrix> = (0..q.vertex_count())
            .map(|w| {
                let mut b = Matrix::zeros(kind, tgt.module.dim_at(w), src.module.dim_at(w));
                for (s, &vs) in self.src_vertices.iter().enumerate() {
                    let spaths = self.algebra.paths_between(vs, w);
                    for (t, &vt) in self.tgt_vertices.iter().enumerate() {
                        let elem = &self.entries[t][s];
                        if elem.iter().all(|c| c.is_zero()) {
                            continue;
                        }
                        let tpaths = self.algebra.paths_between(vt, w);
                        // left multiplication: p (vs -> w) maps to elem * p
                        for (col, &pidx) in spaths.iter().enumerate() {
                            for (ei, c) in elem.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                for (ridx, coeff) in self.algebra.mult_basis(ei, pidx) {
                                    if let Some(row) =
                                        tpaths.iter().position(|b| b == ridx)
                                    {
                                        let r = tgt.offset(t, w) + row;
                                        let cc = src.offset(s, w) + col;
                                        let cur = b.at(r, cc).clone();
                                        b.set(r, cc, &cur + &(c * coeff));
                                    }
                                }
                            }
                        }
                    }
                }
                b
            })
            .collect();
        let f = ModuleMorphism {
            source: src.module.clone(),
            target: tgt.module.clone(),
            blocks,
        };
        debug_assert!(f.is_valid());
        (src, tgt, f)
    }

    /// The dual matrix over a structurally-opposite algebra: transposed, with
    /// every entry path reversed.
    pub fn dual_over(&self, op: &Arc<BoundQuiverAlgebra>) -> ProjMatrix {
        let kind = self.algebra.field();
        let mut entries =
            vec![vec![vec![kind.zero(); op.dim()]; self.tgt_vertices.len()]; self.src_vertices.len()];
        for (t, row) in self.entries.iter().enumerate() {
            for (s, elem) in row.iter().enumerate() {
                let terms: Vec<(Scalar, Path)> = elem
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (c.clone(), self.algebra.reverse_path(self.algebra.basis_path(i))))
                    .collect();
                entries[s][t] = op.reduce_terms(&terms);
            }
        }
        ProjMatrix {
            algebra: op.clone(),
            src_vertices: self.tgt_vertices.clone(),
            tgt_vertices: self.src_vertices.clone(),
            entries,
        }
    }
}

/// Vector-space dual: a module over `source`'s structural opposite. Arrow
/// maps are transposed; the vertex spaces keep their dimensions.
pub fn dual_to(m: &ModRef, target: &Arc<BoundQuiverAlgebra>) -> FDModule {
    let q = m.algebra().quiver();
    let tq = target.quiver();
    assert_eq!(q.vertex_count(), tq.vertex_count());
    let dims = m.dims().to_vec();
    let maps: Vec<Matrix> = tq
        .arrows()
        .iter()
        .map(|a| {
            let orig = q
                .arrow(&a.label)
                .expect("opposite algebra shares arrow labels");
            m.map(orig).transpose()
        })
        .collect();
    FDModule::new(target.clone(), dims, maps).expect("dual satisfies opposite relations")
}

/// Transpose along the minimal presentation: the cokernel of the dualized
/// presentation matrix, as a module over `op` (the structural opposite).
pub fn transpose_to(m: &ModRef, op: &Arc<BoundQuiverAlgebra>) -> FDModule {
    let pres = presentation(m);
    let d = proj_matrix_of(&pres.p1, &pres.p0, &pres.d);
    let dd = d.dual_over(op);
    let (_, _, f) = dd.realize();
    let (coker, _) = f.cokernel();
    coker
}

/// The Auslander–Reiten translate `τ M = D Tr M`. Projective summands
/// contribute nothing.
pub fn tau(m: &ModRef) -> FDModule {
    let op = m.algebra().opposite();
    let tr = Arc::new(transpose_to(m, &op));
    dual_to(&tr, m.algebra())
}

/// The inverse translate `τ^{-1} M = Tr D M`. Injective summands contribute
/// nothing.
pub fn tau_inv(m: &ModRef) -> FDModule {
    let op = m.algebra().opposite();
    let dm = Arc::new(dual_to(m, &op));
    transpose_to(&dm, m.algebra())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::field::FieldKind;

    fn ka2() -> Arc<BoundQuiverAlgebra> {
        let doc = crate::dsl::parse_document("quiver {1 2; a:1->2}").unwrap();
        let (q, r) = crate::dsl::build_quiver(doc.algebra.as_ref().unwrap(), FieldKind::Rationals)
            .unwrap();
        BoundQuiverAlgebra::new(q, r, FieldKind::Rationals, &Default::default()).unwrap()
    }

    #[test]
    fn cover_of_simple_is_projective_at_vertex() {
        let a = ka2();
        let s1 = Arc::new(FDModule::simple(a.clone(), 0));
        let (p0, eps) = projective_cover(&s1);
        assert_eq!(p0.vertices, vec![0]);
        assert!(eps.is_surjective());
        let (k, _) = eps.kernel();
        assert_eq!(k.dims(), &[0, 1]); // P2
    }

    #[test]
    fn presentation_of_projective_has_zero_p1() {
        let a = ka2();
        let p1 = Arc::new(FDModule::projective(&a, 0));
        let pres = presentation(&p1);
        assert_eq!(pres.p1.vertices.len(), 0);
        assert!(is_projective(&p1));
        let s1 = Arc::new(FDModule::simple(a, 0));
        assert!(!is_projective(&s1));
    }

    #[test]
    fn tau_of_projective_vanishes() {
        let a = ka2();
        let p = Arc::new(FDModule::projective(&a, 0));
        assert_eq!(tau(&p).total_dim(), 0);
    }

    #[test]
    fn tau_s1_is_p2_over_a2() {
        // oracle: knit the A2 AR quiver by hand: P2 -> P1 -> S1, tau S1 = P2
        let a = ka2();
        let s1 = Arc::new(FDModule::simple(a.clone(), 0));
        let t = tau(&s1);
        assert_eq!(t.dims(), &[0, 1]);
        let p2 = Arc::new(FDModule::projective(&a, 1));
        let back = tau_inv(&p2);
        assert_eq!(back.dims(), &[1, 0]);
    }

    #[test]
    fn injectivity_detection() {
        let a = ka2();
        let i1 = Arc::new(FDModule::injective(&a, 0));
        let i2 = Arc::new(FDModule::injective(&a, 1));
        let p2 = Arc::new(FDModule::projective(&a, 1));
        assert!(is_injective(&i1));
        assert!(is_injective(&i2));
        assert!(!is_injective(&p2));
    }

    #[test]
    fn proj_matrix_round_trip() {
        let a = ka2();
        let s1 = Arc::new(FDModule::simple(a.clone(), 0));
        let pres = presentation(&s1);
        let pm = proj_matrix_of(&pres.p1, &pres.p0, &pres.d);
        let (_, _, realized) = pm.realize();
        for (b1, b2) in realized.blocks.iter().zip(&pres.d.blocks) {
            assert_eq!(b1, b2);
        }
    }
}
