//! Instances shared by the benchmarks.

use logtk_core::{Field, FinMonoid, IntMat, Poly, PrelogRing, PresentedRing, RingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_matrices(n: usize, size: usize, seed: u64) -> Vec<IntMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let e: Vec<i64> = (0..size * size).map(|_| rng.gen_range(-9..=9)).collect();
            IntMat::from_i64(size, size, &e)
        })
        .collect()
}

/// Dense random polynomials of degree at most 2 in three variables.
pub fn random_ideal(field: Field, gens: usize, seed: u64) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let monos = ["x^2", "x*y", "y^2", "y*z", "z^2", "x*z", "x", "y", "z"];
    (0..gens)
        .map(|_| {
            let mut terms = Vec::new();
            for m in monos {
                if rng.gen_bool(0.5) {
                    terms.push(format!("({})*{m}", rng.gen_range(-3..=3)));
                }
            }
            let text = if terms.is_empty() { "x*y*z".to_string() } else { terms.join(" + ") };
            Poly::parse(&text, &vars, field).expect("well formed")
        })
        .collect()
}

pub fn prelog(vars: &[&str], field: Field, ideal: &[&str], monoid: FinMonoid, alpha: &[&str]) -> PrelogRing {
    let ring = PresentedRing::parse(vars, field, ideal, RingMode::Local).expect("well formed");
    PrelogRing::parse(ring, monoid, alpha).expect("well formed")
}

pub fn node(field: Field) -> PrelogRing {
    prelog(&["x", "y"], field, &["x*y"], FinMonoid::free(&["a", "b"]), &["x", "y"])
}

pub fn cone(field: Field) -> PrelogRing {
    let m = FinMonoid::parse(&["a", "b", "c"], &["a+c = 2*b"], &[]).expect("well formed");
    prelog(&["u", "v", "w"], field, &["u*w - v^2"], m, &["u", "v", "w"])
}

pub fn log_point(k: usize, field: Field) -> PrelogRing {
    let vars: Vec<String> = (1..=k).map(|i| format!("t{i}")).collect();
    let names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    let n: Vec<&str> = names.iter().map(String::as_str).collect();
    prelog(&v, field, &[], FinMonoid::free(&n), &v)
}
