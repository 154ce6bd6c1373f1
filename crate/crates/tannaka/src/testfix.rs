//! In-memory fixture builders shared by the unit tests.

use std::collections::HashMap;

use crate::exactlin::Matrix;
use crate::fincat::{group_category, DualData, FinMonCat};
use crate::repfun::RepFunctor;

/// Fixture S: A = C(Z/2), F strong, all data 1×1 identities.
pub fn fixture_s() -> (FinMonCat, RepFunctor, DualData) {
    let c = group_category(&["e", "g"], "e", |x, y| x ^ y);
    let rf = trivial_functor(&c);
    let d = group_duals(&c, |x| x); // every element of Z/2 is its own inverse
    (c, rf, d)
}

/// Fixture W: trivial group, F(e) = k² with the pointwise-product laxator and
/// diagonal-coproduct oplaxator (a separable Frobenius structure, not strong).
pub fn fixture_w() -> (FinMonCat, RepFunctor, DualData) {
    let c = group_category(&["e"], "e", |_, _| 0);
    let rf = frobenius_k2_functor(&c);
    let d = group_duals(&c, |_| 0);
    (c, rf, d)
}

/// All objects one-dimensional, every structure matrix [[1]].
pub fn trivial_functor(c: &FinMonCat) -> RepFunctor {
    let one = Matrix::identity(1);
    let n = c.n_objects();
    let mut lax2 = HashMap::new();
    let mut oplax2 = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            lax2.insert((x, y), one.clone());
            oplax2.insert((x, y), one.clone());
        }
    }
    RepFunctor {
        dim: vec![1; n],
        mor_mat: vec![one.clone(); c.morphisms.len()],
        lax2,
        lax0: one.clone(),
        oplax2,
        oplax0: one,
    }
}

/// Every object sent to k² with the separable Frobenius laxators of the
/// pointwise-product algebra.
pub fn frobenius_k2_functor(c: &FinMonCat) -> RepFunctor {
    let m2 = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
    let w2 = Matrix::from_ints(&[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]);
    let n = c.n_objects();
    let mut lax2 = HashMap::new();
    let mut oplax2 = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            lax2.insert((x, y), m2.clone());
            oplax2.insert((x, y), w2.clone());
        }
    }
    RepFunctor {
        dim: vec![2; n],
        mor_mat: vec![Matrix::identity(2); c.morphisms.len()],
        lax2,
        lax0: Matrix::from_ints(&[&[1], &[1]]),
        oplax2,
        oplax0: Matrix::from_ints(&[&[1, 1]]),
    }
}

/// Dual data for a group category, given the inverse map on object indices.
pub fn group_duals(c: &FinMonCat, inverse: impl Fn(usize) -> usize) -> DualData {
    let n = c.n_objects();
    DualData {
        left_dual: (0..n).map(&inverse).collect(),
        ev: vec![c.identities[c.unit]; n],
        coev: vec![c.identities[c.unit]; n],
    }
}
