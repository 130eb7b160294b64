#![allow(dead_code)]

use logtk_core::logdiff::free_prelog_algebra;
use logtk_core::monoids::Elem;
use logtk_core::prelog::{base_point, from_base};
use logtk_core::{Field, FinMonoid, Poly, PrelogHom, PrelogRing, PresentedRing, RingMode};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FIELDS: [Field; 4] = [Field::Rational, Field::Prime(2), Field::Prime(3), Field::Prime(5)];

pub fn local(vars: &[&str], field: Field, ideal: &[&str]) -> PresentedRing {
    PresentedRing::parse(vars, field, ideal, RingMode::Local).unwrap()
}

pub fn prelog(vars: &[&str], field: Field, ideal: &[&str], monoid: FinMonoid, alpha: &[&str]) -> PrelogRing {
    PrelogRing::parse(local(vars, field, ideal), monoid, alpha).unwrap()
}

pub fn node(field: Field) -> PrelogRing {
    prelog(&["x", "y"], field, &["x*y"], FinMonoid::free(&["a", "b"]), &["x", "y"])
}

pub fn log_point(k: usize, field: Field) -> PrelogRing {
    let vars: Vec<String> = (1..=k).map(|i| format!("t{i}")).collect();
    let names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    let n: Vec<&str> = names.iter().map(String::as_str).collect();
    prelog(&v, field, &[], FinMonoid::free(&n), &v)
}

pub fn cone(field: Field) -> PrelogRing {
    let m = FinMonoid::parse(&["a", "b", "c"], &["a+c = 2*b"], &[]).unwrap();
    prelog(&["u", "v", "w"], field, &["u*w - v^2"], m, &["u", "v", "w"])
}

/// Named instances for the regularity oracles, over one field.
pub fn regularity_suite(field: Field, rng: &mut ChaCha8Rng, random: usize) -> Vec<(String, PrelogRing)> {
    let mut out = vec![
        ("logpoint1".to_string(), log_point(1, field)),
        ("logpoint2".into(), log_point(2, field)),
        ("logpoint3".into(), log_point(3, field)),
        (
            "log line with a free variable".into(),
            prelog(&["s", "t"], field, &[], FinMonoid::free(&["a"]), &["s"]),
        ),
        ("node".into(), node(field)),
        (
            "half node".into(),
            prelog(&["x", "y"], field, &["x*y"], FinMonoid::free(&["a"]), &["x"]),
        ),
        (
            "cusp".into(),
            prelog(&["x", "y"], field, &["y^2 - x^3"], FinMonoid::free(&["a"]), &["x"]),
        ),
        (
            "cusp with its own chart".into(),
            prelog(
                &["x", "y"],
                field,
                &["y^2 - x^3"],
                FinMonoid::parse(&["a", "b"], &["3*a = 2*b"], &[]).unwrap(),
                &["x", "y"],
            ),
        ),
        ("cone".into(), cone(field)),
        (
            "trivial chart".into(),
            PrelogRing::new(local(&["x"], field, &[]), FinMonoid::trivial(), vec![]).unwrap(),
        ),
    ];
    for i in 0..random {
        out.push((format!("random binomial {i}"), random_binomial(field, rng)));
    }
    out
}

/// `K[x_1..x_g (, z)]_0 / (x^u - x^v, extra)` with the chart `e_i -> x_i`
/// of `<e_1..e_g | u = v>`.
pub fn random_binomial(field: Field, rng: &mut ChaCha8Rng) -> PrelogRing {
    let g = rng.gen_range(2..=3usize);
    let split = rng.gen_range(1..g);
    let mut idx: Vec<usize> = (0..g).collect();
    idx.shuffle(rng);
    let mut u = vec![0u32; g];
    let mut v = vec![0u32; g];
    for (k, &i) in idx.iter().enumerate() {
        let e = rng.gen_range(1..=3);
        if k < split {
            u[i] = e;
        } else if k == split || rng.gen_bool(0.5) {
            v[i] = e;
        }
    }
    let names: Vec<String> = (0..g).map(|i| format!("e{i}")).collect();
    let vars: Vec<String> = (0..g).map(|i| format!("x{i}")).collect();
    let show = |e: &[u32]| -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| format!("{k}*{}", names[i]))
            .collect();
        parts.join("+")
    };
    let mono = |e: &[u32]| -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| format!("{}^{k}", vars[i]))
            .collect();
        parts.join("*")
    };
    let n: Vec<&str> = names.iter().map(String::as_str).collect();
    let rel = format!("{} = {}", show(&u), show(&v));
    let m = FinMonoid::parse(&n, &[rel.as_str()], &[]).unwrap();
    let mut all_vars = vars.clone();
    let mut ideal = vec![format!("{} - {}", mono(&u), mono(&v))];
    match rng.gen_range(0..4) {
        0 => {}
        1 => {
            all_vars.push("z".into());
        }
        2 => {
            all_vars.push("z".into());
            ideal.push("z^2 - x0".into());
        }
        _ => {
            ideal.push(format!("{}*{}", vars[0], vars[g - 1]));
        }
    }
    let av: Vec<&str> = all_vars.iter().map(String::as_str).collect();
    let iv: Vec<&str> = ideal.iter().map(String::as_str).collect();
    let alpha: Vec<&str> = vars.iter().map(String::as_str).collect();
    prelog(&av, field, &iv, m, &alpha)
}

/// A random nonconstant polynomial with at most two terms in the given
/// variables, written as a string.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[String]) -> String {
    let terms = rng.gen_range(1..=2);
    let mut out = Vec::new();
    for _ in 0..terms {
        let c = [1, -1, 2][rng.gen_range(0..3)];
        let deg = rng.gen_range(1..=2);
        let mut m = Vec::new();
        for _ in 0..deg {
            m.push(vars[rng.gen_range(0..vars.len())].clone());
        }
        out.push(format!("({c})*{}", m.join("*")));
    }
    out.join(" + ")
}

/// `(K[..], M)` with 0 to 2 variables, all carrying log structure.
pub fn random_base(field: Field, rng: &mut ChaCha8Rng) -> PrelogRing {
    match rng.gen_range(0..3) {
        0 => base_point(field),
        1 => log_point(1, field),
        _ => log_point(2, field),
    }
}

/// A random free prelog algebra over `a`, optionally cut by one random
/// relation; at most three variables and two monoid generators overall.
pub fn random_extension(a: &PrelogRing, rng: &mut ChaCha8Rng, tag: &str) -> Option<PrelogHom> {
    let n = a.ring.nvars();
    let g = a.monoid.num_generators();
    if n >= 3 {
        return None;
    }
    let room = 3 - n;
    let ys = if g < 2 { rng.gen_range(0..=(2 - g).min(room)) } else { 0 };
    let xs = rng.gen_range(0..=(room - ys)).min(1);
    if xs + ys == 0 {
        return None;
    }
    let xn: Vec<String> = (0..xs).map(|i| format!("x{tag}{i}")).collect();
    let yn: Vec<String> = (0..ys).map(|i| format!("y{tag}{i}")).collect();
    let xr: Vec<&str> = xn.iter().map(String::as_str).collect();
    let yr: Vec<&str> = yn.iter().map(String::as_str).collect();
    let h = free_prelog_algebra(a, &xr, &yr).ok()?;
    if rng.gen_bool(0.5) {
        let b = &h.target;
        let rel = random_poly(rng, b.ring.vars());
        let p = b.ring.parse_poly(&rel).ok()?;
        let target = PrelogRing::new(b.ring.quotient(&[p]), b.monoid.clone(), b.alpha.clone()).ok()?;
        let ring_map: Vec<Poly> = h.ring_map.iter().map(|q| target.ring.simplify(q)).collect();
        PrelogHom::new(a.clone(), target, ring_map, h.monoid_map.images.clone()).ok()
    } else {
        Some(h)
    }
}

/// The quotient of `b` by a random ideal, either keeping the monoid or
/// passing to the induced pointed quotient.
pub fn random_quotient(b: &PrelogRing, rng: &mut ChaCha8Rng) -> Option<PrelogHom> {
    let rel = random_poly(rng, b.ring.vars());
    let j = vec![b.ring.parse_poly(&rel).ok()?];
    let target = if rng.gen_bool(0.5) {
        b.quotient_prelog(&j, 8).ok()?
    } else {
        PrelogRing::new(b.ring.quotient(&j), b.monoid.clone(), b.alpha.clone()).ok()?
    };
    let ring_map = (0..b.ring.nvars()).map(|i| target.ring.var(i)).collect();
    let images: Vec<Elem> = (0..b.monoid.num_generators())
        .map(|i| (0..b.monoid.num_generators()).map(|k| (k == i) as u32).collect())
        .collect();
    PrelogHom::new(b.clone(), target, ring_map, images).ok()
}

pub fn structure_map(p: &PrelogRing) -> PrelogHom {
    from_base(p)
}
