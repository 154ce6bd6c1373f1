//! A functor into finite-dimensional vector spaces, carried as matrices, with
//! laxator/oplaxator components and the five functor-axiom checkers.

use std::collections::HashMap;

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::exactlin::{kronecker, Matrix};
use crate::fincat::{DualData, FinMonCat};
use crate::report::{AxiomReport, ValidationReport};

#[derive(Debug, Clone)]
pub struct RepFunctor {
    /// dim[x] = dim F(x)
    pub dim: Vec<usize>,
    /// mor_mat[f] = F(f), shape dim(dst) × dim(src)
    pub mor_mat: Vec<Matrix>,
    /// lax2[(x, y)] = m2_{x,y}: Fx ⊗ Fy → F(x⊗y)
    pub lax2: HashMap<(usize, usize), Matrix>,
    /// m0: k → Fe
    pub lax0: Matrix,
    /// oplax2[(x, y)] = w2_{x,y}: F(x⊗y) → Fx ⊗ Fy
    pub oplax2: HashMap<(usize, usize), Matrix>,
    /// w0: Fe → k
    pub oplax0: Matrix,
}

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("F does not preserve the dual of {object}: triangle residual is nonzero")]
    TriangleFailure { object: String, residual: Matrix },
}

impl RepFunctor {
    pub fn m2(&self, x: usize, y: usize) -> &Matrix {
        &self.lax2[&(x, y)]
    }

    pub fn w2(&self, x: usize, y: usize) -> &Matrix {
        &self.oplax2[&(x, y)]
    }

    pub fn apply(&self, f: usize) -> &Matrix {
        &self.mor_mat[f]
    }
}

/// Functoriality, laxator naturality and all matrix shapes.
pub fn validate_functor(c: &FinMonCat, rf: &RepFunctor) -> ValidationReport {
    let mut report = ValidationReport::new("functor");
    let obj = |x: usize| c.objects[x].as_str();
    let mor = |f: usize| c.morphisms[f].name.as_str();
    let n = c.n_objects();

    for (f, m) in c.morphisms.iter().enumerate() {
        let mat = &rf.mor_mat[f];
        if mat.rows() != rf.dim[m.dst] || mat.cols() != rf.dim[m.src] {
            report.violation(
                "morphism-shape",
                format!("F({}) is {}x{}, expected {}x{}", mor(f), mat.rows(), mat.cols(), rf.dim[m.dst], rf.dim[m.src]),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = c.tensor(x, y);
            let m2 = rf.m2(x, y);
            if m2.rows() != rf.dim[xy] || m2.cols() != rf.dim[x] * rf.dim[y] {
                report.violation("lax2-shape", format!("m2_{{{},{}}}", obj(x), obj(y)));
            }
            let w2 = rf.w2(x, y);
            if w2.rows() != rf.dim[x] * rf.dim[y] || w2.cols() != rf.dim[xy] {
                report.violation("oplax2-shape", format!("w2_{{{},{}}}", obj(x), obj(y)));
            }
        }
    }
    if rf.lax0.rows() != rf.dim[c.unit] || rf.lax0.cols() != 1 {
        report.violation("lax0-shape", format!("m0 is {}x{}", rf.lax0.rows(), rf.lax0.cols()));
    }
    if rf.oplax0.rows() != 1 || rf.oplax0.cols() != rf.dim[c.unit] {
        report.violation("oplax0-shape", format!("w0 is {}x{}", rf.oplax0.rows(), rf.oplax0.cols()));
    }
    if !report.ok() {
        return report; // shapes are wrong; the equations below would panic
    }

    for (x, &i) in c.identities.iter().enumerate() {
        if !rf.mor_mat[i].is_identity() {
            report.violation("functoriality-identity", format!("F(id_{}) ≠ I", obj(x)));
        }
    }
    for ((g, f), &h) in c.comp.iter().map(|(k, v)| (*k, v)) {
        if rf.mor_mat[h] != rf.mor_mat[g].dot(&rf.mor_mat[f]) {
            report.violation("functoriality-composition", format!("F({} ∘ {})", mor(g), mor(f)));
        }
    }

    // naturality of m2 and w2 in both arguments
    for (f, mf) in c.morphisms.iter().enumerate() {
        for (g, mg) in c.morphisms.iter().enumerate() {
            let Some(&fg) = c.tensor_mor.get(&(f, g)) else { continue };
            let ff_fg = kronecker(&rf.mor_mat[f], &rf.mor_mat[g]);
            let lhs = rf.mor_mat[fg].dot(rf.m2(mf.src, mg.src));
            let rhs = rf.m2(mf.dst, mg.dst).dot(&ff_fg);
            if lhs != rhs {
                report.violation("lax2-naturality", format!("({}, {})", mor(f), mor(g)));
            }
            let lhs = rf.w2(mf.dst, mg.dst).dot(&rf.mor_mat[fg]);
            let rhs = ff_fg.dot(rf.w2(mf.src, mg.src));
            if lhs != rhs {
                report.violation("oplax2-naturality", format!("({}, {})", mor(f), mor(g)));
            }
        }
    }

    report
}

fn all_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                v.push((x, y, z));
            }
        }
    }
    v
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            v.push((x, y));
        }
    }
    v
}

#[cfg(feature = "parallel")]
fn map_cells<T: Send, R: Send>(cells: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    cells.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_cells<T, R>(cells: Vec<T>, f: impl Fn(T) -> R) -> Vec<R> {
    cells.into_iter().map(f).collect()
}

/// Associativity and the two unit laws of (m2, m0). A is strict, so no
/// associator or unitor matrices appear.
pub fn check_monoidal(c: &FinMonCat, rf: &RepFunctor) -> AxiomReport {
    let mut report = AxiomReport::new("monoidal");
    let obj = |x: usize| c.objects[x].as_str();

    let cells = map_cells(all_triples(c.n_objects()), |(x, y, z)| {
        let lhs = rf.m2(c.tensor(x, y), z).dot(&kronecker(rf.m2(x, y), &Matrix::identity(rf.dim[z])));
        let rhs = rf.m2(x, c.tensor(y, z)).dot(&kronecker(&Matrix::identity(rf.dim[x]), rf.m2(y, z)));
        ((x, y, z), lhs, rhs)
    });
    for ((x, y, z), lhs, rhs) in cells {
        report.equation(format!("associativity({},{},{})", obj(x), obj(y), obj(z)), &lhs, &rhs);
    }
    for x in 0..c.n_objects() {
        let id_fx = Matrix::identity(rf.dim[x]);
        let left = rf.m2(c.unit, x).dot(&kronecker(&rf.lax0, &id_fx));
        report.equation(format!("left-unit({})", obj(x)), &left, &id_fx);
        let right = rf.m2(x, c.unit).dot(&kronecker(&id_fx, &rf.lax0));
        report.equation(format!("right-unit({})", obj(x)), &right, &id_fx);
    }
    report
}

/// Mirror of [`check_monoidal`] for (w2, w0).
pub fn check_comonoidal(c: &FinMonCat, rf: &RepFunctor) -> AxiomReport {
    let mut report = AxiomReport::new("comonoidal");
    let obj = |x: usize| c.objects[x].as_str();

    let cells = map_cells(all_triples(c.n_objects()), |(x, y, z)| {
        let lhs = kronecker(rf.w2(x, y), &Matrix::identity(rf.dim[z])).dot(rf.w2(c.tensor(x, y), z));
        let rhs = kronecker(&Matrix::identity(rf.dim[x]), rf.w2(y, z)).dot(rf.w2(x, c.tensor(y, z)));
        ((x, y, z), lhs, rhs)
    });
    for ((x, y, z), lhs, rhs) in cells {
        report.equation(format!("coassociativity({},{},{})", obj(x), obj(y), obj(z)), &lhs, &rhs);
    }
    for x in 0..c.n_objects() {
        let id_fx = Matrix::identity(rf.dim[x]);
        let left = kronecker(&rf.oplax0, &id_fx).dot(rf.w2(c.unit, x));
        report.equation(format!("left-counit({})", obj(x)), &left, &id_fx);
        let right = kronecker(&id_fx, &rf.oplax0).dot(rf.w2(x, c.unit));
        report.equation(format!("right-counit({})", obj(x)), &right, &id_fx);
    }
    report
}

/// The two Frobenius compatibility squares between m2 and w2, per object triple.
pub fn check_frobenius(c: &FinMonCat, rf: &RepFunctor) -> AxiomReport {
    let mut report = AxiomReport::new("frobenius");
    let obj = |x: usize| c.objects[x].as_str();

    let cells = map_cells(all_triples(c.n_objects()), |(x, y, z)| {
        // (id_Fx ⊗ m2_{y,z}) ∘ (w2_{x,y} ⊗ id_Fz) = w2_{x,y⊗z} ∘ m2_{x⊗y,z}
        let left_lhs = kronecker(&Matrix::identity(rf.dim[x]), rf.m2(y, z))
            .dot(&kronecker(rf.w2(x, y), &Matrix::identity(rf.dim[z])));
        let left_rhs = rf.w2(x, c.tensor(y, z)).dot(rf.m2(c.tensor(x, y), z));
        // (m2_{x,y} ⊗ id_Fz) ∘ (id_Fx ⊗ w2_{y,z}) = w2_{x⊗y,z} ∘ m2_{x,y⊗z}
        let right_lhs = kronecker(rf.m2(x, y), &Matrix::identity(rf.dim[z]))
            .dot(&kronecker(&Matrix::identity(rf.dim[x]), rf.w2(y, z)));
        let right_rhs = rf.w2(c.tensor(x, y), z).dot(rf.m2(x, c.tensor(y, z)));
        ((x, y, z), left_lhs, left_rhs, right_lhs, right_rhs)
    });
    for ((x, y, z), ll, lr, rl, rr) in cells {
        report.equation(format!("frobenius-left({},{},{})", obj(x), obj(y), obj(z)), &ll, &lr);
        report.equation(format!("frobenius-right({},{},{})", obj(x), obj(y), obj(z)), &rl, &rr);
    }
    report
}

/// m2_{x,y} ∘ w2_{x,y} = id_{F(x⊗y)} for every pair.
pub fn check_separable(c: &FinMonCat, rf: &RepFunctor) -> AxiomReport {
    let mut report = AxiomReport::new("separable");
    let obj = |x: usize| c.objects[x].as_str();
    let cells = map_cells(all_pairs(c.n_objects()), |(x, y)| {
        ((x, y), rf.m2(x, y).dot(rf.w2(x, y)))
    });
    for ((x, y), composite) in cells {
        let id = Matrix::identity(rf.dim[c.tensor(x, y)]);
        report.equation(format!("separable({},{})", obj(x), obj(y)), &composite, &id);
    }
    report
}

/// The four strong-functor conditions, reported separately because the weak
/// development hinges on exactly which ones fail.
pub fn check_strong(c: &FinMonCat, rf: &RepFunctor) -> AxiomReport {
    let mut report = AxiomReport::new("strong");
    let n = c.n_objects();

    let mut m2w2_lhs = Vec::new();
    let mut m2w2_rhs = Vec::new();
    let mut w2m2_lhs = Vec::new();
    let mut w2m2_rhs = Vec::new();
    for (x, y) in all_pairs(n) {
        m2w2_lhs.push(rf.m2(x, y).dot(rf.w2(x, y)).vectorize());
        m2w2_rhs.push(Matrix::identity(rf.dim[c.tensor(x, y)]).vectorize());
        w2m2_lhs.push(rf.w2(x, y).dot(rf.m2(x, y)).vectorize());
        w2m2_rhs.push(Matrix::identity(rf.dim[x] * rf.dim[y]).vectorize());
    }
    report.equation("m2-w2-identity", &Matrix::vstack(&m2w2_lhs), &Matrix::vstack(&m2w2_rhs));
    report.equation("w2-m2-identity", &Matrix::vstack(&w2m2_lhs), &Matrix::vstack(&w2m2_rhs));
    report.equation("w0-m0-identity", &rf.oplax0.dot(&rf.lax0), &Matrix::identity(1));
    report.equation("m0-w0-identity", &rf.lax0.dot(&rf.oplax0), &Matrix::identity(rf.dim[c.unit]));
    report
}

/// Evaluation and coevaluation that F induces on the image of a dual pair:
/// `evF = w0 ∘ F(ev_x) ∘ m2_{Lx,x}` and `coevF = w2_{x,Lx} ∘ F(coev_x) ∘ m0`.
/// The snake equations are verified before returning.
pub fn induced_duality(
    c: &FinMonCat,
    rf: &RepFunctor,
    d: &DualData,
    x: usize,
) -> Result<(Matrix, Matrix), DualityError> {
    let lx = d.left_dual[x];
    let ev_f = rf.oplax0.dot(&rf.mor_mat[d.ev[x]]).dot(rf.m2(lx, x));
    let coev_f = rf.w2(x, lx).dot(&rf.mor_mat[d.coev[x]]).dot(&rf.lax0);

    let dx = rf.dim[x];
    let dlx = rf.dim[lx];
    let id_x = Matrix::identity(dx);
    let id_lx = Matrix::identity(dlx);
    // (id_Fx ⊗ evF) ∘ (coevF ⊗ id_Fx) = id_Fx
    let snake1 = kronecker(&id_x, &ev_f).dot(&kronecker(&coev_f, &id_x));
    if snake1 != id_x {
        return Err(DualityError::TriangleFailure {
            object: c.objects[x].clone(),
            residual: snake1.sub(&id_x),
        });
    }
    // (evF ⊗ id_FLx) ∘ (id_FLx ⊗ coevF) = id_FLx
    let snake2 = kronecker(&ev_f, &id_lx).dot(&kronecker(&id_lx, &coev_f));
    if snake2 != id_lx {
        return Err(DualityError::TriangleFailure {
            object: c.objects[x].clone(),
            residual: snake2.sub(&id_lx),
        });
    }
    Ok((ev_f, coev_f))
}
