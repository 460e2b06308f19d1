//! Built-in models.
//!
//! Named models are addressed by [`by_name`]; besides the fixed names in
//! [`NAMES`] it understands the families `torus<2m>` (e.g. `torus6`) and
//! `surface_g<g>` (e.g. `surface_g2`).

use crate::error::{Error, Result};
use crate::model::{int_terms, make_ce_model, make_ring_model, product as fold_product, GradedModel, Terms};
use crate::scalar::Scalar;

/// Fixed catalog names with a one-line description.
pub const NAMES: &[(&str, &str)] = &[
    ("point", "a point: Q in degree 0, omega = 0"),
    ("sphere2", "S^2 as its cohomology ring {1, x}, omega = x"),
    ("surface_g1", "genus-1 surface ring"),
    ("surface_g2", "genus-2 surface ring"),
    ("surface_g3", "genus-3 surface ring"),
    ("torus2", "T^2, abelian CE model on e1, e2"),
    ("torus4", "T^4, abelian CE model on e1..e4"),
    ("torus6", "T^6, abelian CE model on e1..e6"),
    (
        "kodaira_thurston",
        "Kodaira-Thurston nilmanifold, d(e4) = e2^e3, omega = e1^e2 + e3^e4",
    ),
    ("s2xs2", "S^2 x S^2"),
    ("s2xs2xs2", "S^2 x S^2 x S^2"),
    ("kt_x_s2", "Kodaira-Thurston x S^2"),
    ("kt_x_torus2", "Kodaira-Thurston x T^2"),
];

fn gens(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// Abelian CE model of the torus `T^{2m}`, `ω = Σ e_{2i-1} ∧ e_{2i}`.
pub fn torus<T: Scalar>(m: usize) -> Result<GradedModel<T>> {
    if m == 0 {
        return Err(Error::InvalidModel("torus(m) needs m >= 1".into()));
    }
    let omega: Terms<T> = (0..m)
        .map(|i| (format!("e{}^e{}", 2 * i + 1, 2 * i + 2), T::one()))
        .collect();
    make_ce_model(&format!("torus{}", 2 * m), &gens(2 * m), &[], &omega)
}

/// CE model of the Kodaira-Thurston manifold.
///
/// With `e4 = dx4 + x2 dx3` one gets `d e4 = dx2 ∧ dx3`, so `d(e4) = e2^e3` and
/// `ω = e1^e2 + e3^e4`.
pub fn kodaira_thurston<T: Scalar>() -> GradedModel<T> {
    make_ce_model(
        "kodaira_thurston",
        &gens(4),
        &[("e4".to_string(), int_terms(&[("e2^e3", 1)]))],
        &int_terms(&[("e1^e2", 1), ("e3^e4", 1)]),
    )
    .expect("Kodaira-Thurston model is well formed")
}

pub fn point<T: Scalar>() -> GradedModel<T> {
    make_ring_model("point", Some(0), &[], &[], &Vec::new()).expect("point model is well formed")
}

pub fn sphere2<T: Scalar>() -> GradedModel<T> {
    make_ring_model("sphere2", None, &[("x".to_string(), 2)], &[], &int_terms(&[("x", 1)]))
        .expect("sphere model is well formed")
}

/// Cohomology ring of the genus-`g` surface with `a_i · b_i = vol`; `surface(0)` is [`sphere2`].
pub fn surface<T: Scalar>(g: usize) -> GradedModel<T> {
    if g == 0 {
        return sphere2();
    }
    let mut basis = Vec::new();
    for i in 1..=g {
        basis.push((format!("a{i}"), 1));
    }
    for i in 1..=g {
        basis.push((format!("b{i}"), 1));
    }
    basis.push(("vol".to_string(), 2));
    let products: Vec<(String, String, Terms<T>)> = (1..=g)
        .map(|i| (format!("a{i}"), format!("b{i}"), int_terms(&[("vol", 1)])))
        .collect();
    make_ring_model(
        &format!("surface_g{g}"),
        Some(2),
        &basis,
        &products,
        &int_terms(&[("vol", 1)]),
    )
    .expect("surface model is well formed")
}

/// The torus `T^{2m}` as its own cohomology ring (exterior algebra, `d = 0`).
pub fn torus_ring<T: Scalar>(m: usize) -> Result<GradedModel<T>> {
    let ce = torus::<T>(m)?;
    let basis: Vec<(String, usize)> = ce.basis()[1..].iter().map(|b| (b.label.clone(), b.degree)).collect();
    let mut products = Vec::new();
    for i in 1..ce.dim() {
        for j in 1..ce.dim() {
            let p = ce.wedge(&ce.basis_element(i), &ce.basis_element(j))?;
            let terms: Terms<T> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (ce.label(k).to_string(), c.clone()))
                .collect();
            if !terms.is_empty() {
                products.push((ce.label(i).to_string(), ce.label(j).to_string(), terms));
            }
        }
    }
    let omega: Terms<T> = (0..m)
        .map(|i| (format!("e{}^e{}", 2 * i + 1, 2 * i + 2), T::one()))
        .collect();
    make_ring_model(&format!("torus{}_ring", 2 * m), Some(2 * m), &basis, &products, &omega)
}

/// Left-to-right tensor product of `factors`.
pub fn product<T: Scalar>(factors: &[GradedModel<T>]) -> Result<GradedModel<T>> {
    fold_product(factors)
}

/// Looks up a catalog model by name.
pub fn by_name<T: Scalar>(name: &str) -> Result<GradedModel<T>> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    let m = match name {
        "point" => point(),
        "sphere2" => sphere2(),
        "kodaira_thurston" => kodaira_thurston(),
        "s2xs2" => product(&[sphere2(), sphere2()])?.renamed(name),
        "s2xs2xs2" => product(&[sphere2(), sphere2(), sphere2()])?.renamed(name),
        "kt_x_s2" => product(&[kodaira_thurston(), sphere2()])?.renamed(name),
        "kt_x_torus2" => product(&[kodaira_thurston(), torus(1)?])?.renamed(name),
        _ => {
            if let Some(rest) = name.strip_prefix("surface_g") {
                let g: usize = rest.parse().map_err(|_| unknown())?;
                surface(g)
            } else if let Some(rest) = name.strip_prefix("torus") {
                let d: usize = rest.parse().map_err(|_| unknown())?;
                if d == 0 || d % 2 == 1 {
                    return Err(unknown());
                }
                torus(d / 2)?
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(m)
}

/// All fixed catalog models, in [`NAMES`] order.
pub fn all<T: Scalar>() -> Vec<GradedModel<T>> {
    NAMES
        .iter()
        .map(|(n, _)| by_name(n).expect("catalog names resolve"))
        .collect()
}
