//! Finite strict monoidal categories presented by tables, with optional
//! left-dual data.
//!
//! Objects and morphisms are kept as index tables; identity morphisms are
//! synthesized at construction so input files never have to spell them out.

use std::collections::HashMap;

use crate::report::ValidationReport;

#[derive(Debug, Clone)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone)]
pub struct FinMonCat {
    pub objects: Vec<String>,
    pub unit: usize,
    /// tensor_ob[x][y] = x ⊗ y
    pub tensor_ob: Vec<Vec<usize>>,
    /// All morphisms, identities included.
    pub morphisms: Vec<Morphism>,
    /// identities[x] = index of id_x
    pub identities: Vec<usize>,
    /// comp[(g, f)] = g ∘ f, defined iff dst(f) = src(g)
    pub comp: HashMap<(usize, usize), usize>,
    /// tensor_mor[(f, g)] = f ⊗ g
    pub tensor_mor: HashMap<(usize, usize), usize>,
}

/// Left-dual data: `L`, evaluations `ev_x: Lx ⊗ x → e` and coevaluations
/// `coev_x: e → x ⊗ Lx`, all referenced by index into the category's tables.
#[derive(Debug, Clone)]
pub struct DualData {
    pub left_dual: Vec<usize>,
    pub ev: Vec<usize>,
    pub coev: Vec<usize>,
}

impl FinMonCat {
    /// Assemble a category from raw tables. `declared` lists the non-identity
    /// morphisms; identities are synthesized here, and composition/tensor
    /// entries involving identities are filled in automatically.
    pub fn assemble(
        objects: Vec<String>,
        unit: usize,
        tensor_ob: Vec<Vec<usize>>,
        declared: Vec<Morphism>,
        declared_comp: HashMap<(usize, usize), usize>,
        declared_tensor: HashMap<(usize, usize), usize>,
    ) -> FinMonCat {
        let n_declared = declared.len();
        let mut morphisms = declared;
        let mut identities = Vec::with_capacity(objects.len());
        for (x, name) in objects.iter().enumerate() {
            identities.push(morphisms.len());
            morphisms.push(Morphism {
                name: format!("id_{name}"),
                src: x,
                dst: x,
            });
        }

        let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
        let mut tensor_mor: HashMap<(usize, usize), usize> = HashMap::new();
        for ((g, f), h) in declared_comp {
            comp.insert((g, f), h);
        }
        for ((f, g), h) in declared_tensor {
            tensor_mor.insert((f, g), h);
        }
        // unit laws of composition
        for (i, m) in morphisms.iter().enumerate() {
            comp.insert((identities[m.dst], i), i);
            comp.insert((i, identities[m.src]), i);
        }
        // id_x ⊗ id_y = id_{x⊗y}
        for x in 0..objects.len() {
            for y in 0..objects.len() {
                tensor_mor.insert((identities[x], identities[y]), identities[tensor_ob[x][y]]);
            }
        }
        // f ⊗ id and id ⊗ f for declared f default to f when a unit strand is
        // tensored on (the strict unit makes these literally equal).
        for i in 0..n_declared {
            tensor_mor.entry((i, identities[unit])).or_insert(i);
            tensor_mor.entry((identities[unit], i)).or_insert(i);
        }

        FinMonCat {
            objects,
            unit,
            tensor_ob,
            morphisms,
            identities,
            comp,
            tensor_mor,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn tensor(&self, x: usize, y: usize) -> usize {
        self.tensor_ob[x][y]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn compose_mor(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }
}

pub fn validate_category(c: &FinMonCat) -> ValidationReport {
    let mut report = ValidationReport::new("category");
    let n = c.n_objects();
    let obj = |x: usize| c.objects[x].as_str();
    let mor = |f: usize| c.morphisms[f].name.as_str();

    // strict monoidal structure on objects
    for x in 0..n {
        if c.tensor(c.unit, x) != x {
            report.violation("tensor-left-unit", format!("e ⊗ {} ≠ {}", obj(x), obj(x)));
        }
        if c.tensor(x, c.unit) != x {
            report.violation("tensor-right-unit", format!("{} ⊗ e ≠ {}", obj(x), obj(x)));
        }
        for y in 0..n {
            for z in 0..n {
                if c.tensor(c.tensor(x, y), z) != c.tensor(x, c.tensor(y, z)) {
                    report.violation(
                        "tensor-associativity",
                        format!("({} ⊗ {}) ⊗ {} ≠ {} ⊗ ({} ⊗ {})", obj(x), obj(y), obj(z), obj(x), obj(y), obj(z)),
                    );
                }
            }
        }
    }

    // identity typing
    for (x, &i) in c.identities.iter().enumerate() {
        let m = &c.morphisms[i];
        if m.src != x || m.dst != x {
            report.violation("identity-typing", format!("id_{} has boundary {} → {}", obj(x), obj(m.src), obj(m.dst)));
        }
    }

    let nm = c.morphisms.len();
    // composition: definedness, typing
    for g in 0..nm {
        for f in 0..nm {
            let composable = c.morphisms[f].dst == c.morphisms[g].src;
            match c.comp.get(&(g, f)) {
                Some(&h) => {
                    if !composable {
                        report.violation("comp-defined-on-noncomposable", format!("{} ∘ {}", mor(g), mor(f)));
                    } else if c.morphisms[h].src != c.morphisms[f].src || c.morphisms[h].dst != c.morphisms[g].dst {
                        report.violation("comp-typing", format!("{} ∘ {} = {}", mor(g), mor(f), mor(h)));
                    }
                }
                None => {
                    if composable {
                        report.violation("comp-missing", format!("{} ∘ {}", mor(g), mor(f)));
                    }
                }
            }
        }
    }

    // composition: unit laws and associativity where defined
    for f in 0..nm {
        let m = &c.morphisms[f];
        if c.comp.get(&(c.identities[m.dst], f)) != Some(&f) {
            report.violation("comp-left-unit", format!("id ∘ {} ≠ {}", mor(f), mor(f)));
        }
        if c.comp.get(&(f, c.identities[m.src])) != Some(&f) {
            report.violation("comp-right-unit", format!("{} ∘ id ≠ {}", mor(f), mor(f)));
        }
    }
    for h in 0..nm {
        for g in 0..nm {
            let Some(&hg) = c.comp.get(&(h, g)) else { continue };
            for f in 0..nm {
                let Some(&gf) = c.comp.get(&(g, f)) else { continue };
                if c.comp.get(&(h, gf)) != c.comp.get(&(hg, f)) {
                    report.violation("comp-associativity", format!("{} ∘ {} ∘ {}", mor(h), mor(g), mor(f)));
                }
            }
        }
    }

    // tensor of morphisms: totality, typing, identities, interchange
    for f in 0..nm {
        for g in 0..nm {
            match c.tensor_mor.get(&(f, g)) {
                None => report.violation("tensor-mor-missing", format!("{} ⊗ {}", mor(f), mor(g))),
                Some(&h) => {
                    let want_src = c.tensor(c.morphisms[f].src, c.morphisms[g].src);
                    let want_dst = c.tensor(c.morphisms[f].dst, c.morphisms[g].dst);
                    if c.morphisms[h].src != want_src || c.morphisms[h].dst != want_dst {
                        report.violation("tensor-mor-typing", format!("{} ⊗ {} = {}", mor(f), mor(g), mor(h)));
                    }
                }
            }
        }
    }
    for (x, &ix) in c.identities.iter().enumerate() {
        for (y, &iy) in c.identities.iter().enumerate() {
            if c.tensor_mor.get(&(ix, iy)) != Some(&c.identities[c.tensor(x, y)]) {
                report.violation("tensor-mor-identities", format!("id_{} ⊗ id_{}", obj(x), obj(y)));
            }
        }
    }
    for g in 0..nm {
        for f in 0..nm {
            let Some(&gf) = c.comp.get(&(g, f)) else { continue };
            for g2 in 0..nm {
                for f2 in 0..nm {
                    let Some(&gf2) = c.comp.get(&(g2, f2)) else { continue };
                    let (Some(&gg2), Some(&ff2)) = (c.tensor_mor.get(&(g, g2)), c.tensor_mor.get(&(f, f2))) else {
                        continue;
                    };
                    let lhs = c.comp.get(&(gg2, ff2));
                    let rhs = c.tensor_mor.get(&(gf, gf2));
                    if lhs.copied() != rhs.copied() {
                        report.violation(
                            "interchange",
                            format!("({} ⊗ {}) ∘ ({} ⊗ {})", mor(g), mor(g2), mor(f), mor(f2)),
                        );
                    }
                }
            }
        }
    }

    report
}

pub fn validate_duals(c: &FinMonCat, d: &DualData) -> ValidationReport {
    let mut report = ValidationReport::new("duals");
    let obj = |x: usize| c.objects[x].as_str();
    for x in 0..c.n_objects() {
        let lx = d.left_dual[x];
        let ev = d.ev[x];
        let coev = d.coev[x];
        let ev_m = &c.morphisms[ev];
        let coev_m = &c.morphisms[coev];
        let mut typed = true;
        if ev_m.src != c.tensor(lx, x) || ev_m.dst != c.unit {
            report.violation(
                "ev-typing",
                format!("ev_{}: expected L{} ⊗ {} → e, got {} → {}", obj(x), obj(x), obj(x), obj(ev_m.src), obj(ev_m.dst)),
            );
            typed = false;
        }
        if coev_m.src != c.unit || coev_m.dst != c.tensor(x, lx) {
            report.violation(
                "coev-typing",
                format!("coev_{}: expected e → {} ⊗ L{}, got {} → {}", obj(x), obj(x), obj(x), obj(coev_m.src), obj(coev_m.dst)),
            );
            typed = false;
        }
        if !typed {
            continue;
        }
        // (id_x ⊗ ev_x) ∘ (coev_x ⊗ id_x) = id_x
        let first_triangle = c
            .tensor_mor
            .get(&(coev, c.identities[x]))
            .and_then(|&a| c.tensor_mor.get(&(c.identities[x], ev)).map(|&b| (b, a)))
            .and_then(|(b, a)| c.comp.get(&(b, a)));
        if first_triangle != Some(&c.identities[x]) {
            report.violation("triangle-left", format!("(id ⊗ ev) ∘ (coev ⊗ id) ≠ id_{}", obj(x)));
        }
        // (ev_x ⊗ id_Lx) ∘ (id_Lx ⊗ coev_x) = id_Lx
        let second_triangle = c
            .tensor_mor
            .get(&(c.identities[lx], coev))
            .and_then(|&a| c.tensor_mor.get(&(ev, c.identities[lx])).map(|&b| (b, a)))
            .and_then(|(b, a)| c.comp.get(&(b, a)));
        if second_triangle != Some(&c.identities[lx]) {
            report.violation("triangle-right", format!("(ev ⊗ id) ∘ (id ⊗ coev) ≠ id_L{}", obj(x)));
        }
    }
    report
}

/// A group presented as a one-morphism-per-nothing discrete monoidal category:
/// objects are group elements, tensor is multiplication, morphisms are only
/// identities. Used by fixtures and tests.
pub fn group_category(names: &[&str], unit: &str, mult: impl Fn(usize, usize) -> usize) -> FinMonCat {
    let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let unit = objects.iter().position(|o| o == unit).expect("unit not listed");
    let n = objects.len();
    let tensor_ob = (0..n).map(|x| (0..n).map(|y| mult(x, y)).collect()).collect();
    FinMonCat::assemble(objects, unit, tensor_ob, Vec::new(), HashMap::new(), HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinMonCat {
        group_category(&["e", "g"], "e", |x, y| x ^ y)
    }

    #[test]
    fn z2_category_validates() {
        let c = z2();
        let report = validate_category(&c);
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn broken_tensor_table_is_reported() {
        let mut c = z2();
        c.tensor_ob[1][1] = 1; // g ⊗ g = g
        let report = validate_category(&c);
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| v.law.starts_with("tensor")));
    }

    #[test]
    fn one_object_category_validates() {
        let c = group_category(&["e"], "e", |_, _| 0);
        assert!(validate_category(&c).ok());
    }

    #[test]
    fn group_duals_validate() {
        // Z/3 with L(g) = g^{-1}
        let c = group_category(&["e", "g", "g2"], "e", |x, y| (x + y) % 3);
        let d = DualData {
            left_dual: vec![0, 2, 1],
            ev: vec![c.identities[0]; 3],
            coev: vec![c.identities[0]; 3],
        };
        assert!(validate_duals(&c, &d).ok());
    }

    #[test]
    fn wrong_dual_reports_typing_failure() {
        let c = group_category(&["e", "g", "g2"], "e", |x, y| (x + y) % 3);
        let d = DualData {
            left_dual: vec![0, 1, 2], // L(g) = g is wrong in Z/3
            ev: vec![c.identities[0]; 3],
            coev: vec![c.identities[0]; 3],
        };
        let report = validate_duals(&c, &d);
        assert!(report.violations.iter().any(|v| v.law == "ev-typing"));
    }

    #[test]
    fn trivial_group_duals_validate() {
        let c = group_category(&["e"], "e", |_, _| 0);
        let d = DualData {
            left_dual: vec![0],
            ev: vec![c.identities[0]],
            coev: vec![c.identities[0]],
        };
        assert!(validate_duals(&c, &d).ok());
    }
}
