//! Manifests: named monoids, rings, prelog rings, maps and tasks in a TOML
//! document.
//!
//! ```toml
//! field = "Q"
//!
//! [monoid.M]
//! generators = ["a", "b"]
//! relations = ["a + b = 2*b"]
//!
//! [ring.A]
//! vars = ["x", "y"]
//! ideal = ["x*y"]
//! mode = "local"
//!
//! [prelog.P]
//! ring = "A"
//! monoid = "M"
//! alpha = { a = "x", b = "y" }
//!
//! [task.regular]
//! procedure = "log-regular"
//! prelog = "P"
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use indexmap::IndexMap;
use logtk_core::monoids::{element_string, parse_element};
use logtk_core::{Field, FinMonoid, MonoidHom, Poly, PrelogHom, PrelogRing, PresentedRing, RingMode};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifestError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}unresolved reference to {kind} `{name}` in {context}", at(line))]
    UnresolvedReference {
        kind: &'static str,
        name: String,
        context: String,
        line: Option<usize>,
    },
    #[error("{}duplicate name `{name}` in {context}", at(line))]
    DuplicateName {
        name: String,
        context: String,
        line: Option<usize>,
    },
    #[error("{}invalid {context}: {message}", at(line))]
    Invalid {
        context: String,
        message: String,
        line: Option<usize>,
    },
}

fn at(line: &Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

/// Overrides applied while building a manifest.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Replaces the manifest's field.
    pub field: Option<Field>,
    /// Mode for rings that do not declare one; local if unset.
    pub mode: Option<RingMode>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Procedure {
    Validate,
    RegularLocal,
    Integral,
    Saturated,
    LogRegular,
    LogRegularIdeal,
    Kato,
    LogCi,
    LogSmooth,
    Crosscheck,
    Fundamental,
    FirstSequence,
    ConormalSequence,
    BaseChange,
}

pub const PROCEDURES: [Procedure; 14] = [
    Procedure::Validate,
    Procedure::RegularLocal,
    Procedure::Integral,
    Procedure::Saturated,
    Procedure::LogRegular,
    Procedure::LogRegularIdeal,
    Procedure::Kato,
    Procedure::LogCi,
    Procedure::LogSmooth,
    Procedure::Crosscheck,
    Procedure::Fundamental,
    Procedure::FirstSequence,
    Procedure::ConormalSequence,
    Procedure::BaseChange,
];

impl Procedure {
    pub fn name(&self) -> &'static str {
        match self {
            Procedure::Validate => "validate",
            Procedure::RegularLocal => "regular-local",
            Procedure::Integral => "integral",
            Procedure::Saturated => "saturated",
            Procedure::LogRegular => "log-regular",
            Procedure::LogRegularIdeal => "log-regular-ideal",
            Procedure::Kato => "kato",
            Procedure::LogCi => "log-ci",
            Procedure::LogSmooth => "log-smooth",
            Procedure::Crosscheck => "crosscheck",
            Procedure::Fundamental => "fundamental",
            Procedure::FirstSequence => "first-sequence",
            Procedure::ConormalSequence => "conormal-sequence",
            Procedure::BaseChange => "base-change",
        }
    }

    /// Number of entries expected in `maps`.
    fn map_count(&self) -> usize {
        match self {
            Procedure::FirstSequence | Procedure::ConormalSequence => 2,
            Procedure::BaseChange => 3,
            _ => 0,
        }
    }
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PROCEDURES.iter().copied().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<&str> = PROCEDURES.iter().map(|p| p.name()).collect();
            format!("unknown procedure `{s}`, expected one of {}", names.join(", "))
        })
    }
}

impl std::fmt::Display for Procedure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct PrelogDecl {
    pub ring: String,
    pub monoid: String,
    pub value: PrelogRing,
}

#[derive(Clone, Debug)]
pub enum MapValue {
    Prelog(PrelogHom),
    Monoid(MonoidHom),
}

#[derive(Clone, Debug)]
pub struct MapDecl {
    pub source: String,
    pub target: String,
    pub value: MapValue,
}

impl MapDecl {
    pub fn prelog(&self) -> Option<&PrelogHom> {
        match &self.value {
            MapValue::Prelog(h) => Some(h),
            MapValue::Monoid(_) => None,
        }
    }

    pub fn monoid(&self) -> Option<&MonoidHom> {
        match &self.value {
            MapValue::Monoid(h) => Some(h),
            MapValue::Prelog(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub prelog: String,
    pub ideal: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub procedure: Procedure,
    pub prelog: Option<String>,
    pub ring: Option<String>,
    pub monoid: Option<String>,
    pub map: Option<String>,
    pub maps: Vec<String>,
    /// Polynomials of the ring of `prelog`.
    pub ideal: Vec<Poly>,
    pub presentation: Option<Presentation>,
}

impl Task {
    pub fn new(procedure: Procedure) -> Task {
        Task {
            procedure,
            prelog: None,
            ring: None,
            monoid: None,
            map: None,
            maps: Vec::new(),
            ideal: Vec::new(),
            presentation: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub field: Field,
    pub monoids: IndexMap<String, FinMonoid>,
    pub rings: IndexMap<String, PresentedRing>,
    pub prelogs: IndexMap<String, PrelogDecl>,
    pub maps: IndexMap<String, MapDecl>,
    pub tasks: IndexMap<String, Task>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    field: Option<RawField>,
    #[serde(default)]
    monoid: IndexMap<String, RawMonoid>,
    #[serde(default)]
    ring: IndexMap<String, RawRing>,
    #[serde(default)]
    prelog: IndexMap<String, RawPrelog>,
    #[serde(default)]
    map: IndexMap<String, RawMap>,
    #[serde(default)]
    task: IndexMap<String, RawTask>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Table { name: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoid {
    generators: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    ideal: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    vars: Vec<String>,
    #[serde(default)]
    ideal: Vec<String>,
    mode: Option<RingMode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrelog {
    ring: String,
    monoid: String,
    #[serde(default)]
    alpha: IndexMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    source: String,
    target: String,
    #[serde(default)]
    ring: IndexMap<String, String>,
    #[serde(default)]
    monoid: IndexMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    procedure: String,
    prelog: Option<String>,
    ring: Option<String>,
    monoid: Option<String>,
    map: Option<String>,
    maps: Option<Vec<String>>,
    ideal: Option<Vec<String>>,
    presentation: Option<RawPresentation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    prelog: String,
    ideal: Vec<String>,
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Builder<'a> {
    text: &'a str,
}

impl Builder<'_> {
    /// Line of the `[kind.name]` header, if written that way.
    fn line(&self, kind: &str, name: &str) -> Option<usize> {
        let plain = format!("[{kind}.{name}]");
        let quoted = format!("[{kind}.\"{name}\"]");
        self.text
            .lines()
            .position(|l| {
                let t: String = l.chars().filter(|c| !c.is_whitespace()).collect();
                t == plain || t == quoted
            })
            .map(|i| i + 1)
    }

    fn unresolved(&self, kind: &'static str, name: &str, section: (&str, &str)) -> ManifestError {
        ManifestError::UnresolvedReference {
            kind,
            name: name.to_string(),
            context: format!("{}.{}", section.0, section.1),
            line: self.line(section.0, section.1),
        }
    }

    fn duplicate(&self, name: &str, section: (&str, &str)) -> ManifestError {
        ManifestError::DuplicateName {
            name: name.to_string(),
            context: format!("{}.{}", section.0, section.1),
            line: self.line(section.0, section.1),
        }
    }

    fn invalid(&self, message: impl std::fmt::Display, section: (&str, &str)) -> ManifestError {
        ManifestError::Invalid {
            context: format!("{}.{}", section.0, section.1),
            message: message.to_string(),
            line: self.line(section.0, section.1),
        }
    }

    fn distinct(&self, names: &[String], section: (&str, &str)) -> Result<(), ManifestError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(self.duplicate(n, section));
            }
        }
        Ok(())
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    parse_manifest_with(text, &ParseOptions::default())
}

pub fn parse_manifest_with(text: &str, opts: &ParseOptions) -> Result<Manifest, ManifestError> {
    let raw: Raw = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        let message = e.message().trim().to_string();
        if message.starts_with("duplicate key") {
            let name = e
                .span()
                .map(|s| text[s].trim().trim_matches('"').to_string())
                .unwrap_or_default();
            ManifestError::DuplicateName {
                name,
                context: "the document".into(),
                line: Some(line),
            }
        } else {
            ManifestError::Syntax { line, column, message }
        }
    })?;
    let b = Builder { text };

    let field = match (opts.field, &raw.field) {
        (Some(f), _) => f,
        (None, None) => Field::Rational,
        (None, Some(RawField::Name(s) | RawField::Table { name: s })) => {
            s.parse().map_err(|e| ManifestError::Invalid {
                context: "field".into(),
                message: format!("{e}"),
                line: None,
            })?
        }
    };

    // object names share one namespace so that maps can refer to either kind
    let mut seen: Vec<(String, &str)> = Vec::new();
    let objects = raw
        .monoid
        .keys()
        .map(|k| (k, "monoid"))
        .chain(raw.ring.keys().map(|k| (k, "ring")))
        .chain(raw.prelog.keys().map(|k| (k, "prelog")))
        .chain(raw.map.keys().map(|k| (k, "map")));
    for (name, kind) in objects {
        if seen.iter().any(|(n, _)| n == name) {
            return Err(b.duplicate(name, (kind, name)));
        }
        seen.push((name.clone(), kind));
    }

    let mut monoids = IndexMap::new();
    for (name, r) in &raw.monoid {
        let sec = ("monoid", name.as_str());
        b.distinct(&r.generators, sec)?;
        let g: Vec<&str> = r.generators.iter().map(String::as_str).collect();
        let rel: Vec<&str> = r.relations.iter().map(String::as_str).collect();
        let ideal: Vec<&str> = r.ideal.iter().map(String::as_str).collect();
        let m = FinMonoid::parse(&g, &rel, &ideal).map_err(|e| b.invalid(e, sec))?;
        monoids.insert(name.clone(), m);
    }

    let mut rings = IndexMap::new();
    for (name, r) in &raw.ring {
        let sec = ("ring", name.as_str());
        b.distinct(&r.vars, sec)?;
        let v: Vec<&str> = r.vars.iter().map(String::as_str).collect();
        let ideal: Vec<&str> = r.ideal.iter().map(String::as_str).collect();
        let mode = r.mode.or(opts.mode).unwrap_or(RingMode::Local);
        let ring = PresentedRing::parse(&v, field, &ideal, mode).map_err(|e| b.invalid(e, sec))?;
        rings.insert(name.clone(), ring);
    }

    let mut prelogs = IndexMap::new();
    for (name, r) in &raw.prelog {
        let sec = ("prelog", name.as_str());
        let ring = rings.get(&r.ring).ok_or_else(|| b.unresolved("ring", &r.ring, sec))?;
        let monoid = monoids.get(&r.monoid).ok_or_else(|| b.unresolved("monoid", &r.monoid, sec))?;
        if let Some(k) = r.alpha.keys().find(|k| !monoid.names.contains(k)) {
            return Err(b.unresolved("monoid generator", k, sec));
        }
        let mut alpha = Vec::new();
        for g in &monoid.names {
            let s = r
                .alpha
                .get(g)
                .ok_or_else(|| b.invalid(format!("alpha has no image for generator `{g}`"), sec))?;
            alpha.push(ring.parse_poly(s).map_err(|e| b.invalid(e, sec))?);
        }
        let value = PrelogRing::new(ring.clone(), monoid.clone(), alpha).map_err(|e| b.invalid(e, sec))?;
        prelogs.insert(
            name.clone(),
            PrelogDecl {
                ring: r.ring.clone(),
                monoid: r.monoid.clone(),
                value,
            },
        );
    }

    let mut maps = IndexMap::new();
    for (name, r) in &raw.map {
        let sec = ("map", name.as_str());
        let value = match (prelogs.get(&r.source), prelogs.get(&r.target)) {
            (Some(s), Some(t)) => {
                let (s, t) = (&s.value, &t.value);
                if let Some(k) = r.ring.keys().find(|k| !s.ring.vars().contains(k)) {
                    return Err(b.unresolved("variable", k, sec));
                }
                let mut images = Vec::new();
                for v in s.ring.vars() {
                    let img = r
                        .ring
                        .get(v)
                        .ok_or_else(|| b.invalid(format!("ring has no image for variable `{v}`"), sec))?;
                    images.push(t.ring.parse_poly(img).map_err(|e| b.invalid(e, sec))?);
                }
                let rows = monoid_images(&b, &r.monoid, &s.monoid, &t.monoid, sec)?;
                MapValue::Prelog(PrelogHom::new(s.clone(), t.clone(), images, rows).map_err(|e| b.invalid(e, sec))?)
            }
            _ => match (monoids.get(&r.source), monoids.get(&r.target)) {
                (Some(s), Some(t)) => {
                    if !r.ring.is_empty() {
                        return Err(b.invalid("a map of monoids takes no ring images", sec));
                    }
                    let rows = monoid_images(&b, &r.monoid, s, t, sec)?;
                    MapValue::Monoid(MonoidHom::new(s.clone(), t.clone(), rows).map_err(|e| b.invalid(e, sec))?)
                }
                _ => {
                    let known = |n: &String| prelogs.contains_key(n) || monoids.contains_key(n);
                    let missing = if known(&r.source) { &r.target } else { &r.source };
                    if known(missing) {
                        return Err(b.invalid("source and target must both be prelog rings or both monoids", sec));
                    }
                    return Err(b.unresolved("prelog ring or monoid", missing, sec));
                }
            },
        };
        maps.insert(
            name.clone(),
            MapDecl {
                source: r.source.clone(),
                target: r.target.clone(),
                value,
            },
        );
    }

    let mut m = Manifest {
        field,
        monoids,
        rings,
        prelogs,
        maps,
        tasks: IndexMap::new(),
    };
    for (name, r) in &raw.task {
        let task = build_task(&b, &m, name, r)?;
        m.tasks.insert(name.clone(), task);
    }
    Ok(m)
}

fn monoid_images(
    b: &Builder,
    raw: &IndexMap<String, String>,
    s: &FinMonoid,
    t: &FinMonoid,
    sec: (&str, &str),
) -> Result<Vec<Vec<u32>>, ManifestError> {
    if let Some(k) = raw.keys().find(|k| !s.names.contains(k)) {
        return Err(b.unresolved("monoid generator", k, sec));
    }
    s.names
        .iter()
        .map(|g| {
            let e = raw
                .get(g)
                .ok_or_else(|| b.invalid(format!("monoid has no image for generator `{g}`"), sec))?;
            parse_element(e, &t.names).map_err(|e| b.invalid(e, sec))
        })
        .collect()
}

fn build_task(b: &Builder, m: &Manifest, name: &str, r: &RawTask) -> Result<Task, ManifestError> {
    use Procedure::*;
    let sec = ("task", name);
    let procedure: Procedure = r.procedure.parse().map_err(|e| b.invalid(e, sec))?;
    let mut t = Task::new(procedure);

    let prelog_ref = |n: &String| -> Result<&PrelogDecl, ManifestError> {
        m.prelogs.get(n).ok_or_else(|| b.unresolved("prelog ring", n, sec))
    };
    let map_ref = |n: &String| -> Result<&MapDecl, ManifestError> {
        m.maps.get(n).ok_or_else(|| b.unresolved("map", n, sec))
    };
    let parse_ideal = |p: &PrelogDecl, gens: &[String]| -> Result<Vec<Poly>, ManifestError> {
        gens.iter()
            .map(|s| p.value.ring.parse_poly(s).map_err(|e| b.invalid(e, sec)))
            .collect()
    };

    if let Some(n) = &r.prelog {
        let p = prelog_ref(n)?;
        t.prelog = Some(n.clone());
        if let Some(gens) = &r.ideal {
            t.ideal = parse_ideal(p, gens)?;
        }
    } else if r.ideal.is_some() {
        return Err(b.invalid("`ideal` needs a `prelog` to live in", sec));
    }
    if let Some(n) = &r.ring {
        if !m.rings.contains_key(n) {
            return Err(b.unresolved("ring", n, sec));
        }
        t.ring = Some(n.clone());
    }
    if let Some(n) = &r.monoid {
        if !m.monoids.contains_key(n) {
            return Err(b.unresolved("monoid", n, sec));
        }
        t.monoid = Some(n.clone());
    }
    if let Some(n) = &r.map {
        map_ref(n)?;
        t.map = Some(n.clone());
    }
    for n in r.maps.iter().flatten() {
        map_ref(n)?;
        t.maps.push(n.clone());
    }
    if let Some(pr) = &r.presentation {
        let q = prelog_ref(&pr.prelog)?;
        t.presentation = Some(Presentation {
            prelog: pr.prelog.clone(),
            ideal: parse_ideal(q, &pr.ideal)?,
        });
    }

    // arguments each procedure reads; everything else must be absent
    let (needs, allows): (&[&str], &[&str]) = match procedure {
        Validate | LogRegular | Kato | Crosscheck => (&["prelog"], &[]),
        LogRegularIdeal => (&["prelog", "ideal"], &[]),
        LogCi => (&["prelog"], &["presentation"]),
        RegularLocal => (&[], &["ring", "prelog"]),
        Integral | Saturated => (&["monoid"], &[]),
        LogSmooth => (&[], &["prelog", "map"]),
        Fundamental => (&["map"], &[]),
        FirstSequence | ConormalSequence | BaseChange => (&["maps"], &[]),
    };
    let given: Vec<&str> = [
        ("prelog", r.prelog.is_some()),
        ("ring", r.ring.is_some()),
        ("monoid", r.monoid.is_some()),
        ("map", r.map.is_some()),
        ("maps", r.maps.is_some()),
        ("ideal", r.ideal.is_some()),
        ("presentation", r.presentation.is_some()),
    ]
    .iter()
    .filter(|(_, g)| *g)
    .map(|(k, _)| *k)
    .collect();
    if let Some(k) = needs.iter().find(|k| !given.contains(k)) {
        return Err(b.invalid(format!("{procedure} needs `{k}`"), sec));
    }
    if let Some(k) = given.iter().find(|k| !needs.contains(k) && !allows.contains(k)) {
        return Err(b.invalid(format!("{procedure} does not take `{k}`"), sec));
    }

    match procedure {
        RegularLocal if (t.ring.is_some()) == (t.prelog.is_some()) => {
            return Err(b.invalid("regular-local takes exactly one of `ring` and `prelog`", sec));
        }
        LogSmooth => match &t.map {
            Some(n) if m.maps[n].monoid().is_none() => {
                return Err(b.invalid(format!("log-smooth needs a map of monoids, `{n}` is a map of prelog rings"), sec));
            }
            None if t.prelog.is_none() => return Err(b.invalid("log-smooth needs `prelog` or `map`", sec)),
            _ => {}
        },
        Fundamental => {
            let n = t.map.as_ref().expect("checked");
            if m.maps[n].prelog().is_none() {
                return Err(b.invalid(format!("fundamental needs a map of prelog rings, `{n}` is a map of monoids"), sec));
            }
        }
        FirstSequence | ConormalSequence | BaseChange => {
            if t.maps.len() != procedure.map_count() {
                return Err(b.invalid(
                    format!("{procedure} takes {} maps, got {}", procedure.map_count(), t.maps.len()),
                    sec,
                ));
            }
            if let Some(n) = t.maps.iter().find(|n| m.maps[*n].prelog().is_none()) {
                return Err(b.invalid(format!("`{n}` is not a map of prelog rings"), sec));
            }
            if procedure != BaseChange && m.maps[&t.maps[0]].target != m.maps[&t.maps[1]].source {
                return Err(b.invalid(
                    format!("`{}` does not end where `{}` starts", t.maps[0], t.maps[1]),
                    sec,
                ));
            }
        }
        _ => {}
    }
    Ok(t)
}

fn key(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        s.to_string()
    } else {
        quote(s)
    }
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn list<S: AsRef<str>>(items: &[S]) -> String {
    let q: Vec<String> = items.iter().map(|s| quote(s.as_ref())).collect();
    format!("[{}]", q.join(", "))
}

fn inline(pairs: &[(String, String)]) -> String {
    if pairs.is_empty() {
        return "{}".into();
    }
    let q: Vec<String> = pairs.iter().map(|(k, v)| format!("{} = {}", key(k), quote(v))).collect();
    format!("{{ {} }}", q.join(", "))
}

fn show_ideal(ring: &PresentedRing, gens: &[Poly]) -> Vec<String> {
    gens.iter().map(|p| ring.show(p)).collect()
}

impl Manifest {
    /// The normalized manifest text: every section in declaration order,
    /// polynomials in declared variable order, relations and images in
    /// canonical spelling.
    pub fn print(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field = {}", quote(&self.field.to_string()));
        for (name, m) in &self.monoids {
            let _ = writeln!(out, "\n[monoid.{}]", key(name));
            let _ = writeln!(out, "generators = {}", list(&m.names));
            if !m.relations.is_empty() {
                let rel: Vec<String> = m
                    .relations
                    .iter()
                    .map(|(a, b)| format!("{} = {}", element_string(a, &m.names), element_string(b, &m.names)))
                    .collect();
                let _ = writeln!(out, "relations = {}", list(&rel));
            }
            if !m.ideal.is_empty() {
                let ideal: Vec<String> = m.ideal.iter().map(|e| element_string(e, &m.names)).collect();
                let _ = writeln!(out, "ideal = {}", list(&ideal));
            }
        }
        for (name, r) in &self.rings {
            let _ = writeln!(out, "\n[ring.{}]", key(name));
            let _ = writeln!(out, "vars = {}", list(r.vars()));
            if !r.ideal().is_empty() {
                let _ = writeln!(out, "ideal = {}", list(&show_ideal(r, r.ideal())));
            }
            let _ = writeln!(out, "mode = {}", quote(&r.mode().to_string()));
        }
        for (name, p) in &self.prelogs {
            let _ = writeln!(out, "\n[prelog.{}]", key(name));
            let _ = writeln!(out, "ring = {}", quote(&p.ring));
            let _ = writeln!(out, "monoid = {}", quote(&p.monoid));
            let v = &p.value;
            let alpha: Vec<(String, String)> = v
                .monoid
                .names
                .iter()
                .zip(&v.alpha)
                .map(|(g, a)| (g.clone(), v.ring.show(a)))
                .collect();
            let _ = writeln!(out, "alpha = {}", inline(&alpha));
        }
        for (name, d) in &self.maps {
            let _ = writeln!(out, "\n[map.{}]", key(name));
            let _ = writeln!(out, "source = {}", quote(&d.source));
            let _ = writeln!(out, "target = {}", quote(&d.target));
            let h = match &d.value {
                MapValue::Prelog(h) => {
                    let images: Vec<(String, String)> = h
                        .source
                        .ring
                        .vars()
                        .iter()
                        .zip(&h.ring_map)
                        .map(|(v, p)| (v.clone(), h.target.ring.show(p)))
                        .collect();
                    let _ = writeln!(out, "ring = {}", inline(&images));
                    &h.monoid_map
                }
                MapValue::Monoid(h) => h,
            };
            let images: Vec<(String, String)> = h
                .source
                .names
                .iter()
                .zip(&h.images)
                .map(|(g, e)| (g.clone(), element_string(e, &h.target.names)))
                .collect();
            let _ = writeln!(out, "monoid = {}", inline(&images));
        }
        for (name, t) in &self.tasks {
            let _ = writeln!(out, "\n[task.{}]", key(name));
            let _ = writeln!(out, "procedure = {}", quote(t.procedure.name()));
            for (k, v) in [("prelog", &t.prelog), ("ring", &t.ring), ("monoid", &t.monoid), ("map", &t.map)] {
                if let Some(v) = v {
                    let _ = writeln!(out, "{k} = {}", quote(v));
                }
            }
            if !t.maps.is_empty() {
                let _ = writeln!(out, "maps = {}", list(&t.maps));
            }
            if let Some(p) = &t.prelog {
                if !t.ideal.is_empty() || t.procedure == Procedure::LogRegularIdeal {
                    let ring = &self.prelogs[p].value.ring;
                    let _ = writeln!(out, "ideal = {}", list(&show_ideal(ring, &t.ideal)));
                }
            }
            if let Some(pr) = &t.presentation {
                let ring = &self.prelogs[&pr.prelog].value.ring;
                let _ = writeln!(
                    out,
                    "presentation = {{ prelog = {}, ideal = {} }}",
                    quote(&pr.prelog),
                    list(&show_ideal(ring, &pr.ideal))
                );
            }
        }
        out
    }
}
