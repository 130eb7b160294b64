//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p logtk-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use logtk_core::abgroups::smith_normal_form;
use logtk_core::groebner::{audit_counts, enable_audit, ideal_basis, MonoOrder};
use logtk_core::localalg::{koszul_h1_vanishes, minimal_generators};
use logtk_core::logdiff::{base_change_check, check_conormal_sequence, check_first_sequence, free_prelog_algebra, log_differentials};
use logtk_core::monoids::Elem;
use logtk_core::prelog::{base_point, from_base};
use logtk_core::regcheck::{
    fundamental_sequence_low_degree, fundamental_verdict, gamma_dims, is_log_regular, is_log_smooth_sufficient,
    kato_criterion, log_ci_direct, log_ci_presentation,
};
use logtk_core::{
    replay, Certificate, CheckOptions, Field, FinMonoid, IntMat, MonoidHom, Poly, PrelogHom, PrelogRing, Status,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const SEED: u64 = 0x10c_2024;
const C1_TIME_LIMIT: Duration = Duration::from_secs(60);
const C2_TIME_LIMIT: Duration = Duration::from_secs(5);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

/// Kato and the Tor route agree wherever both apply.
fn criterion_1(certs: &mut Vec<Certificate>, regular_over_q: &mut Vec<PrelogRing>) -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    let mut disagreements = Vec::new();
    let mut instances = 0;
    let mut tally = std::collections::BTreeMap::new();
    for field in FIELDS {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for (name, p) in regularity_suite(field, &mut rng, 12) {
            instances += 1;
            let lr = is_log_regular(&p, &opts());
            let kato = kato_criterion(&p, &opts());
            if lr.preconditions_ok() && kato.preconditions_ok() {
                compared += 1;
                *tally.entry(lr.status).or_insert(0) += 1;
                if lr.status != kato.status {
                    disagreements.push(format!("{name} over {field}: {} vs {}", lr.status, kato.status));
                }
            }
            if field == Field::Rational && lr.holds() {
                regular_over_q.push(p);
            }
            certs.push(lr.certificate);
            certs.push(kato.certificate);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        disagreements.is_empty() && compared >= 20 && elapsed < C1_TIME_LIMIT,
        format!(
            "{compared} of {instances} instance/field pairs compared {tally:?}, {} disagreements {:?}, {:.1}s",
            disagreements.len(),
            disagreements,
            elapsed.as_secs_f64()
        ),
    )
}

fn det_is_unit(m: &IntMat) -> bool {
    m.determinant().abs().is_one()
}

/// Smith forms of random small matrices.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut bad = 0;
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
        let a = IntMat::from_i64(r, c, &entries);
        let s = smith_normal_form(&a);
        let product_ok = s.u.mul(&a).mul(&s.v) == s.d;
        let mut diag_ok = true;
        for i in 0..r {
            for j in 0..c {
                let x = s.d.get(i, j);
                if i != j && !x.is_zero() || i == j && x.is_negative() {
                    diag_ok = false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..r.min(c)).map(|i| s.d.get(i, i).clone()).collect();
        let chain_ok = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        });
        if !(product_ok && diag_ok && chain_ok && det_is_unit(&s.u) && det_is_unit(&s.v)) {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed < C2_TIME_LIMIT,
        format!("1000 matrices, {bad} failures, {:.2}s", elapsed.as_secs_f64()),
    )
}

/// Audit totals plus run-to-run identity of reduced bases.
fn criterion_3() -> Outcome {
    let (audited, _) = audit_counts();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let mut differing = 0;
    for i in 0..30 {
        let field = FIELDS[i % 4];
        let gens: Vec<Poly> = (0..rng.gen_range(1..=3))
            .map(|_| Poly::parse(&random_poly(&mut rng, &vars), &vars, field).unwrap())
            .collect();
        for order in [MonoOrder::DegRevLex, MonoOrder::Lex, MonoOrder::NegDegRevLex] {
            let first = ideal_basis(&gens, 3, field, order);
            let second = ideal_basis(&gens, 3, field, order);
            if first != second {
                differing += 1;
            }
        }
    }
    let (audited_after, failed_after) = audit_counts();
    outcome(
        failed_after == 0 && differing == 0 && audited > 0,
        format!(
            "{audited_after} bases audited ({audited} before the rerun check), {failed_after} failing, {differing} differing reruns"
        ),
    )
}

/// The pushout of `h1 = (A1 -> A1[X,Y]/J)` along `u: A1 -> A2`.
fn pushout(u: &PrelogHom, xs: &[&str], ys: &[&str], rel: Option<&str>) -> (PrelogHom, PrelogHom, PrelogHom) {
    let f1 = free_prelog_algebra(&u.source, xs, ys).unwrap();
    let f2 = free_prelog_algebra(&u.target, xs, ys).unwrap();
    let n1 = u.source.ring.nvars();
    let n2 = u.target.ring.nvars();
    let extra = xs.len() + ys.len();
    let positions: Vec<usize> = (0..n2).collect();
    let mut images: Vec<Poly> = u.ring_map.iter().map(|p| p.embed(n2 + extra, &positions)).collect();
    images.extend((0..extra).map(|k| f2.target.ring.var(n2 + k)));
    let (j1, j2) = match rel {
        Some(r) => {
            let p = f1.target.ring.parse_poly(r).unwrap();
            let q = p.compose(&images);
            (vec![p], vec![q])
        }
        None => (vec![], vec![]),
    };
    let cut = |h: &PrelogHom, j: &[Poly]| -> PrelogHom {
        let t = &h.target;
        let target = PrelogRing::new(t.ring.quotient(j), t.monoid.clone(), t.alpha.clone()).unwrap();
        let ring_map = h.ring_map.iter().map(|p| target.ring.simplify(p)).collect();
        PrelogHom::new(h.source.clone(), target, ring_map, h.monoid_map.images.clone()).unwrap()
    };
    let h1 = cut(&f1, &j1);
    let h2 = cut(&f2, &j2);
    let g2 = u.target.monoid.num_generators();
    let mut monoid_images: Vec<Elem> = u
        .monoid_map
        .images
        .iter()
        .map(|e| {
            let mut v = e.clone();
            v.extend(std::iter::repeat_n(0, ys.len()));
            v
        })
        .collect();
    for k in 0..ys.len() {
        let mut v = vec![0; g2 + ys.len()];
        v[g2 + k] = 1;
        monoid_images.push(v);
    }
    let _ = n1;
    let ring_map = images.iter().map(|p| h2.target.ring.simplify(p)).collect();
    let q = PrelogHom::new(h1.target.clone(), h2.target.clone(), ring_map, monoid_images).unwrap();
    (h1, h2, q)
}

fn pushout_instances() -> Vec<(PrelogHom, PrelogHom, PrelogHom)> {
    let q = Field::Rational;
    let line = prelog(&["s"], q, &[], FinMonoid::free(&["e"]), &["s"]);
    let plane = log_point(2, q);
    let fat = prelog(&["s"], q, &["s^2"], FinMonoid::free(&["e"]), &["s"]);
    let square = prelog(&["t"], q, &[], FinMonoid::free(&["e"]), &["t"]);
    let to_plane = PrelogHom::parse(line.clone(), plane.clone(), &["t1"], vec![vec![1, 0]]).unwrap();
    let to_fat = PrelogHom::parse(line.clone(), fat, &["s"], vec![vec![1]]).unwrap();
    let to_square = PrelogHom::parse(line.clone(), square, &["t^2"], vec![vec![2]]).unwrap();
    let from_k = from_base(&plane);
    let f3 = Field::Prime(3);
    let line3 = prelog(&["s"], f3, &[], FinMonoid::free(&["e"]), &["s"]);
    let to_line3 = from_base(&line3);
    vec![
        pushout(&to_plane, &["x"], &[], None),
        pushout(&to_plane, &[], &["y"], None),
        pushout(&to_plane, &["x"], &[], Some("x^2 - s")),
        pushout(&to_fat, &["x"], &["y"], None),
        pushout(&to_fat, &["x"], &[], Some("x*s")),
        pushout(&to_square, &["x"], &[], None),
        pushout(&to_square, &[], &["y"], Some("y^2 - s")),
        pushout(&from_k, &["x"], &["y"], None),
        pushout(&from_k, &["x"], &[], Some("x^3")),
        pushout(&to_line3, &["x"], &["y"], Some("x*y - x^2")),
    ]
}

/// Right exactness of the first and conormal sequences on random towers,
/// and base change along pushouts.
fn criterion_4(certs: &mut Vec<Certificate>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut towers = 0;
    let mut failures = Vec::new();
    let mut attempts = 0;
    while towers < 25 && attempts < 1000 {
        attempts += 1;
        let field = FIELDS[attempts % 4];
        let a = random_base(field, &mut rng);
        let Some(f) = random_extension(&a, &mut rng, "b") else { continue };
        let g = if rng.gen_bool(0.5) {
            random_quotient(&f.target, &mut rng)
        } else {
            random_extension(&f.target, &mut rng, "c")
        };
        let (Some(g), Some(s)) = (g, random_quotient(&f.target, &mut rng)) else {
            continue;
        };
        towers += 1;
        let first = check_first_sequence(&f, &g).unwrap();
        let conormal = check_conormal_sequence(&f, &s).unwrap();
        if !first.holds() {
            failures.push(format!("first sequence on tower {towers}: {}", first.certificate.reason));
        }
        if !conormal.holds() {
            failures.push(format!("conormal sequence on tower {towers}: {}", conormal.certificate.reason));
        }
        certs.push(first.certificate);
        certs.push(conormal.certificate);
    }
    let mut pushouts = 0;
    for (h1, h2, q) in pushout_instances() {
        pushouts += 1;
        let v = base_change_check(&h1, &h2, &q);
        if !v.holds() {
            failures.push(format!("base change {pushouts}: {}", v.certificate.reason));
        }
        certs.push(v.certificate);
    }
    outcome(
        towers == 25 && pushouts == 10 && failures.is_empty(),
        format!("{towers} towers, {pushouts} pushouts, failures {failures:?}"),
    )
}

/// Kummer maps `N -(p)-> N`: the group criterion holds iff char != p.
fn criterion_5(certs: &mut Vec<Certificate>) -> Outcome {
    let n = FinMonoid::free(&["e"]);
    let mut wrong = Vec::new();
    let mut count = 0;
    for p in [2u32, 3, 5] {
        let h = MonoidHom::new(n.clone(), n.clone(), vec![vec![p]]).unwrap();
        for field in FIELDS {
            count += 1;
            let v = is_log_smooth_sufficient(&h, field).unwrap();
            // Ext^1(Z/p, K) = K/pK
            let expected = Status::from_bool(field.characteristic() != p);
            if v.status != expected {
                wrong.push(format!("p = {p} over {field}: {}", v.status));
            }
            certs.push(v.certificate);
        }
    }
    outcome(wrong.is_empty() && count == 12, format!("{count} verdicts, wrong {wrong:?}"))
}

/// The node: Tor_1 of dimension 1 and Kato's pair (1, 2).
fn criterion_6(certs: &mut Vec<Certificate>) -> Outcome {
    let p = node(Field::Rational);
    let lr = is_log_regular(&p, &opts());
    let kato = kato_criterion(&p, &opts());
    let tor = lr.certificate.number("tor1_dim");
    let c = &kato.certificate;
    let pair = (
        c.number("dim_a"),
        c.number("dim_quotient").zip(c.number("rank")).map(|(a, b)| a + b),
    );
    let pass = lr.status == Status::Fails && tor == Some(1) && kato.status == Status::Fails && pair == (Some(1), Some(2));
    let detail = format!(
        "log regular {} with Tor_1 dim {:?}; kato {} with (dim A, dim A/I + rank) = ({:?}, {:?})",
        lr.status, tor, kato.status, pair.0, pair.1
    );
    certs.push(lr.certificate);
    certs.push(kato.certificate);
    outcome(pass, detail)
}

fn ci_instances() -> Vec<(PrelogRing, Vec<&'static str>)> {
    let fields = FIELDS;
    let two_plus_z = |f: Field| prelog(&["s", "t", "z"], f, &[], FinMonoid::free(&["a", "b"]), &["s", "t"]);
    let line_plus = |f: Field| prelog(&["s", "t"], f, &[], FinMonoid::free(&["a"]), &["s"]);
    vec![
        (two_plus_z(fields[0]), vec!["z - s*t"]),
        (two_plus_z(fields[1]), vec!["s"]),
        (log_point(2, fields[2]), vec!["t1 - t2"]),
        (line_plus(fields[3]), vec!["s - t^2"]),
        (log_point(2, fields[0]), vec!["t1"]),
        (two_plus_z(fields[1]), vec!["z - s", "z - t"]),
        (log_point(3, fields[2]), vec!["t1 - t2*t3"]),
        (log_point(3, fields[3]), vec!["t3"]),
        (two_plus_z(fields[0]), vec!["z^2 - s"]),
        (line_plus(fields[1]), vec!["t - s^3"]),
    ]
}

/// Direct and presentation routes for log complete intersections.
fn criterion_7(certs: &mut Vec<Certificate>) -> Outcome {
    let mut agree = 0;
    let mut tally = std::collections::BTreeMap::new();
    let mut problems = Vec::new();
    let instances = ci_instances();
    for (i, (q, j)) in instances.iter().enumerate() {
        let jp: Vec<Poly> = j.iter().map(|s| q.ring.parse_poly(s).unwrap()).collect();
        let base = is_log_regular(q, &opts());
        let mins = minimal_generators(&q.ring, &jp);
        let regular_sequence = koszul_h1_vanishes(&q.ring, &mins).unwrap();
        if !base.holds() || !regular_sequence.holds() {
            problems.push(format!("instance {i} is not a quotient of a log regular ring by a regular sequence"));
            continue;
        }
        let p = q.quotient_prelog(&jp, opts().degree_bound).unwrap();
        let direct = log_ci_direct(&p);
        let presentation = log_ci_presentation(q, &jp, &opts());
        if !direct.preconditions_ok() {
            problems.push(format!("instance {i}: direct route refused: {}", direct.certificate.reason));
        } else if direct.status == presentation.status {
            agree += 1;
            *tally.entry(direct.status).or_insert(0) += 1;
        } else {
            problems.push(format!("instance {i}: direct {} vs presentation {}", direct.status, presentation.status));
        }
        certs.push(direct.certificate);
        certs.push(presentation.certificate);
    }
    outcome(
        agree == instances.len() && instances.len() == 10,
        format!("{agree} of {} agree {tally:?}, problems {problems:?}", instances.len()),
    )
}

fn torsion_maps() -> Vec<MonoidHom> {
    let free = |n: usize| -> FinMonoid {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let r: Vec<&str> = names.iter().map(String::as_str).collect();
        FinMonoid::free(&r)
    };
    let twisted = |k: u32| FinMonoid::parse(&["x", "y"], &[&format!("{k}*x = {k}*y")], &[]).unwrap();
    let hom = |m: FinMonoid, n: FinMonoid, images: Vec<Vec<u32>>| MonoidHom::new(m, n, images).unwrap();
    vec![
        hom(free(1), free(1), vec![vec![2]]),
        hom(free(1), free(1), vec![vec![4]]),
        hom(free(1), free(1), vec![vec![6]]),
        hom(free(2), free(2), vec![vec![2, 0], vec![0, 6]]),
        hom(free(2), free(2), vec![vec![4, 0], vec![4, 0]]),
        hom(free(1), free(2), vec![vec![2, 4]]),
        hom(free(2), free(1), vec![vec![1], vec![1]]),
        hom(free(2), free(1), vec![vec![2], vec![4]]),
        hom(free(2), twisted(2), vec![vec![1, 0], vec![0, 1]]),
        hom(free(2), twisted(4), vec![vec![1, 0], vec![0, 1]]),
        hom(free(2), twisted(6), vec![vec![2, 0], vec![0, 2]]),
        hom(twisted(2), free(1), vec![vec![1], vec![1]]),
        hom(twisted(6), free(1), vec![vec![3], vec![3]]),
        hom(twisted(4), twisted(2), vec![vec![1, 0], vec![0, 1]]),
        hom(free(3), twisted(6), vec![vec![1, 0], vec![0, 1], vec![6, 0]]),
    ]
}

/// `(K, M, 0) -> (K, N, 0)` over `h`.
fn point_map(h: &MonoidHom, field: Field) -> PrelogHom {
    let k = base_point(field);
    let at = |m: &FinMonoid| {
        let zeros = vec![k.ring.zero(); m.num_generators()];
        PrelogRing::new(k.ring.clone(), m.clone(), zeros).unwrap()
    };
    PrelogHom::new(at(&h.source), at(&h.target), vec![], h.images.clone()).unwrap()
}

/// `dim Γ = dim ker ⊗ k + dim Tor_1(coker, k)` on maps with torsion.
fn criterion_8(certs: &mut Vec<Certificate>) -> Outcome {
    let maps = torsion_maps();
    let mut checked = 0;
    let mut wrong = Vec::new();
    for (i, h) in maps.iter().enumerate() {
        for field in FIELDS {
            checked += 1;
            let f = point_map(h, field);
            let report = fundamental_sequence_low_degree(&f).unwrap();
            let direct = gamma_dims(h, field).unwrap();
            let g = report.gamma;
            if g.gamma != g.ker_tensor + g.coker_tor1 || g != direct || !report.consistent {
                wrong.push(format!("map {i} over {field}: {g:?}"));
            }
            certs.push(fundamental_verdict(&f).unwrap().certificate);
        }
    }
    outcome(
        wrong.is_empty() && maps.len() == 15,
        format!("{} maps, {checked} map/field pairs, wrong {wrong:?}", maps.len()),
    )
}

/// Log differentials of log regular instances over Q are free.
fn criterion_9(regular: &[PrelogRing]) -> Outcome {
    let not_free: Vec<String> = regular
        .iter()
        .filter(|p| !log_differentials(&from_base(p)).is_free())
        .map(|p| {
            let gens: Vec<String> = p.ring.ideal().iter().map(|q| p.ring.show(q)).collect();
            format!("({})", gens.join(", "))
        })
        .collect();
    outcome(
        not_free.is_empty() && !regular.is_empty(),
        format!("{} log regular instances, non-free {not_free:?}", regular.len()),
    )
}

/// Every certificate, sent through JSON, replays to its recorded status
/// without computing a standard basis.
fn criterion_10(certs: &[Certificate]) -> Outcome {
    let (before, _) = audit_counts();
    let mut bad = Vec::new();
    for c in certs {
        let text = serde_json::to_string(c).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        let rep = replay(&back);
        if !rep.ok() {
            bad.push(format!("{}: {:?}", c.procedure, rep.failures));
        }
    }
    let (after, _) = audit_counts();
    outcome(
        bad.is_empty() && after == before && !certs.is_empty(),
        format!(
            "{} certificates, {} mismatches, {} standard bases computed during replay {bad:?}",
            certs.len(),
            bad.len(),
            after - before
        ),
    )
}

fn main() -> ExitCode {
    enable_audit();
    let mut certs = Vec::new();
    let mut regular = Vec::new();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "regularity oracle agreement", criterion_1(&mut certs, &mut regular)));
    results.push((2, "SNF soundness", criterion_2()));
    results.push((4, "exact-sequence suite", criterion_4(&mut certs)));
    results.push((5, "Kummer sharpness", criterion_5(&mut certs)));
    results.push((6, "node witness", criterion_6(&mut certs)));
    results.push((7, "log-CI routes agree", criterion_7(&mut certs)));
    results.push((8, "Gamma rank identity", criterion_8(&mut certs)));
    results.push((9, "freeness spot check", criterion_9(&regular)));
    results.push((3, "Groebner soundness", criterion_3()));
    results.push((10, "certificate replay", criterion_10(&certs)));
    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (n, name, o) in &results {
        all &= o.pass;
        println!(
            "criterion {n:>2} [{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
