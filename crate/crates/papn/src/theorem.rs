//! Recorded elimination scripts and their replay.
//!
//! Each family ships a versioned script stating, in closed form over a
//! parameter k: the exponent, the field dimension, the multiplier powers,
//! the equation system (as literal term lists), the substitution plan that
//! regenerates each equation from another, the elimination order, and the
//! expected factorizations of every intermediate and final resultant.
//!
//! Replay re-derives everything from the base criterion polynomial and
//! checks each stage: transcription identities, substitution derivations,
//! eliminations (with a direct-determinant cross-check where feasible), and
//! factor-for-factor expectation matches including irreducibility.

use crate::error::{Error, Result};
use crate::expr::eval_in_k;
use crate::field::{Exponent, FieldContext, FieldElement};
use crate::gf2poly::{
    count_roots_in_field, factor, is_irreducible, resultant_y, resultant_y_direct, sylvester_det,
    Factorization, Gf2Bivariate, Gf2Poly, SubsetRing,
};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

/// Built-in verification scripts, embedded at compile time:
/// (family id, theorem id, script text).
pub const BUILTIN_ARTIFACTS: [(&str, &str, &str); 7] = [
    ("T1", "TH6", include_str!("../data/t1.artifact")),
    ("T2", "TH4", include_str!("../data/t2.artifact")),
    ("T3", "TH2", include_str!("../data/t3.artifact")),
    ("T4", "TH7", include_str!("../data/t4.artifact")),
    ("T5", "TH3", include_str!("../data/t5.artifact")),
    ("T6", "TH5", include_str!("../data/t6.artifact")),
    ("T7", "TH1", include_str!("../data/t7.artifact")),
];

/// A trivariate polynomial over GF(2); the common carrier for equation
/// systems (univariate and bivariate objects embed with zero exponents).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gf2Trivariate {
    terms: BTreeSet<(u32, u32, u32)>,
}

impl Gf2Trivariate {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(0, 0, 0)])
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, u32)>>(terms: I) -> Self {
        let mut set = BTreeSet::new();
        for t in terms {
            if !set.insert(t) {
                set.remove(&t);
            }
        }
        Gf2Trivariate { terms: set }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.terms.iter().copied()
    }

    pub fn degree_of(&self, var: char) -> Option<u32> {
        self.terms
            .iter()
            .map(|&(i, j, l)| match var {
                'x' => i,
                'y' => j,
                _ => l,
            })
            .max()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Gf2Trivariate {
            terms: self
                .terms
                .symmetric_difference(&rhs.terms)
                .copied()
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc = BTreeSet::new();
        for &(a, b, c) in &self.terms {
            for &(d, e, f) in &rhs.terms {
                let t = (a + d, b + e, c + f);
                if !acc.insert(t) {
                    acc.remove(&t);
                }
            }
        }
        Gf2Trivariate { terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Substitutes a monomial for each variable. The images are exponent
    /// triples: x -> x^a y^b z^c etc.
    pub fn substitute_monomials(
        &self,
        x_to: (u32, u32, u32),
        y_to: (u32, u32, u32),
        z_to: (u32, u32, u32),
    ) -> Result<Self> {
        let mut out = BTreeSet::new();
        for &(i, j, l) in &self.terms {
            let (i, j, l) = (i as u64, j as u64, l as u64);
            let combine = |a: u32, b: u32, c: u32| -> Result<u32> {
                let v = i * a as u64 + j * b as u64 + l * c as u64;
                u32::try_from(v)
                    .map_err(|_| Error::Parse("exponent overflow in substitution".into()))
            };
            let t = (
                combine(x_to.0, y_to.0, z_to.0)?,
                combine(x_to.1, y_to.1, z_to.1)?,
                combine(x_to.2, y_to.2, z_to.2)?,
            );
            if !out.insert(t) {
                out.remove(&t);
            }
        }
        Ok(Gf2Trivariate { terms: out })
    }

    /// Coefficients with respect to z, as bivariate polynomials in (x, y).
    pub fn coeffs_wrt_z(&self) -> Result<Vec<Gf2Bivariate>> {
        let dz = self
            .degree_of('z')
            .ok_or(Error::ZeroPolynomial("coeffs_wrt_z"))? as usize;
        let mut buckets: Vec<Vec<(u32, u32)>> = vec![Vec::new(); dz + 1];
        for &(i, j, l) in &self.terms {
            buckets[l as usize].push((i, j));
        }
        Ok(buckets
            .into_iter()
            .map(Gf2Bivariate::from_terms)
            .collect())
    }

    /// Views the polynomial as bivariate in (x, y); errors if z occurs.
    pub fn to_bivariate(&self) -> Result<Gf2Bivariate> {
        if self.terms.iter().any(|&(_, _, l)| l != 0) {
            return Err(Error::DegenerateElimination(
                "object still involves z; eliminate z first".into(),
            ));
        }
        Ok(Gf2Bivariate::from_terms(
            self.terms.iter().map(|&(i, j, _)| (i, j)),
        ))
    }

    pub fn from_bivariate(b: &Gf2Bivariate) -> Self {
        Self::from_terms(b.terms().map(|(i, j)| (i, j, 0)))
    }

    /// Views the polynomial as univariate in x; errors if y or z occurs.
    pub fn to_univariate(&self) -> Result<Gf2Poly> {
        if self.terms.iter().any(|&(_, j, l)| j != 0 || l != 0) {
            return Err(Error::DegenerateElimination(
                "object is not univariate in x".into(),
            ));
        }
        Ok(Gf2Poly::from_exponents(
            self.terms.iter().map(|&(i, _, _)| i as usize),
        ))
    }

    pub fn from_univariate(p: &Gf2Poly) -> Self {
        Self::from_terms(p.exponents().into_iter().map(|e| (e as u32, 0, 0)))
    }

    /// Parses a monomial sum over the given variable subset of {x, y, z}.
    pub fn parse(text: &str, vars: &[char]) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial text".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for term in compact.split('+') {
            let factors = crate::gf2poly::parse_term_factors(term, vars)?;
            let mut m = (0u32, 0u32, 0u32);
            for (var, e) in factors {
                match var {
                    'x' => m.0 = e,
                    'y' => m.1 = e,
                    'z' => m.2 = e,
                    _ => unreachable!(),
                }
            }
            terms.push(m);
        }
        Ok(Self::from_terms(terms))
    }
}

impl SubsetRing for Gf2Trivariate {
    fn ring_zero() -> Self {
        Self::zero()
    }
    fn ring_one() -> Self {
        Self::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}

impl fmt::Display for Gf2Trivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(i, j, l) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if i == 0 && j == 0 && l == 0 {
                write!(f, "1")?;
                continue;
            }
            for (v, e) in [('x', i), ('y', j), ('z', l)] {
                match e {
                    0 => {}
                    1 => write!(f, "{v}")?,
                    _ => write!(f, "{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ArtifactEquation {
    pub name: String,
    /// The squaring count j: the equation is the image of the base
    /// polynomial under x -> x^(2^j), stated as an expression in k.
    pub power_expr: String,
    pub poly: Gf2Trivariate,
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub target: String,
    pub source: String,
    pub map: Vec<(char, (u32, u32, u32))>,
}

#[derive(Clone, Debug)]
pub struct Elimination {
    pub var: char,
    pub lhs: String,
    pub rhs: String,
    pub out: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectKind {
    /// Complete factorization into irreducibles (univariate targets).
    Irreducible,
    /// Partial factored shape (bivariate intermediates).
    Factored,
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub target: String,
    pub kind: ExpectKind,
    pub factors: Vec<(Gf2Trivariate, u32)>,
}

/// A parsed verification script.
#[derive(Clone, Debug)]
pub struct ProofArtifact {
    pub theorem: String,
    pub family: String,
    pub vars: Vec<char>,
    pub ref_k: Option<i64>,
    pub exponent_expr: String,
    pub field_expr: Option<String>,
    pub multiplier_exprs: (String, String),
    pub iff_divisor: Option<u64>,
    pub substs: Vec<(char, String)>,
    pub equations: Vec<ArtifactEquation>,
    pub derivations: Vec<Derivation>,
    pub eliminations: Vec<Elimination>,
    pub expectations: Vec<Expectation>,
}

impl ProofArtifact {
    pub fn parse(text: &str) -> Result<ProofArtifact> {
        let lines: Vec<&str> = text.lines().map(str::trim).collect();
        let mut pos = 0usize;
        let bad = |msg: &str, line: &str| Error::Artifact(format!("{msg}: {line:?}"));

        let mut theorem = None;
        let mut family = None;
        let mut vars: Vec<char> = Vec::new();
        let mut ref_k = None;
        let mut exponent_expr = None;
        let mut field_expr = None;
        let mut multiplier_exprs = None;
        let mut iff_divisor = None;
        let mut substs = Vec::new();
        let mut equations: Vec<ArtifactEquation> = Vec::new();
        let mut derivations = Vec::new();
        let mut eliminations = Vec::new();
        let mut expectations = Vec::new();

        while pos < lines.len() {
            let line = lines[pos];
            pos += 1;
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "version" => {
                    if words.get(1) != Some(&"1") {
                        return Err(bad("unsupported script version", line));
                    }
                }
                "theorem" => theorem = Some(words[1].to_string()),
                "family" => family = Some(words[1].to_string()),
                "vars" => {
                    vars = words[1..]
                        .iter()
                        .map(|w| w.chars().next().unwrap())
                        .collect();
                    if vars.iter().any(|v| !"xyz".contains(*v)) {
                        return Err(bad("variables must be drawn from x, y, z", line));
                    }
                }
                "ref" => {
                    if words.len() != 3 || words[1] != "k" {
                        return Err(bad("expected `ref k <value>`", line));
                    }
                    ref_k = Some(
                        words[2]
                            .parse()
                            .map_err(|_| bad("bad reference k", line))?,
                    );
                }
                "exponent" => exponent_expr = Some(words[1..].join("")),
                "field" => field_expr = Some(words[1..].join("")),
                "multiplier" => {
                    if words.len() != 3 {
                        return Err(bad("expected `multiplier <a> <b>`", line));
                    }
                    multiplier_exprs = Some((words[1].to_string(), words[2].to_string()));
                }
                "iff-divisor" => {
                    iff_divisor = Some(
                        words[1]
                            .parse()
                            .map_err(|_| bad("bad iff divisor", line))?,
                    );
                }
                "subst" => {
                    if words.len() != 3 {
                        return Err(bad("expected `subst <var> <expr>`", line));
                    }
                    substs.push((words[1].chars().next().unwrap(), words[2].to_string()));
                }
                "equation" => {
                    if words.len() < 4 || words[2] != "power" {
                        return Err(bad("expected `equation <name> power <expr>`", line));
                    }
                    let name = words[1].to_string();
                    let power_expr = words[3..].join("");
                    let poly_line = lines
                        .get(pos)
                        .ok_or_else(|| bad("equation body missing", line))?;
                    pos += 1;
                    let poly = Gf2Trivariate::parse(poly_line, &vars)?;
                    equations.push(ArtifactEquation {
                        name,
                        power_expr,
                        poly,
                    });
                }
                "derive" => {
                    if words.len() != 4 || words[2] != "from" {
                        return Err(bad("expected `derive <target> from <source>`", line));
                    }
                    let mut map = Vec::new();
                    for _ in 0..vars.len() {
                        let m = lines
                            .get(pos)
                            .ok_or_else(|| bad("substitution map line missing", line))?;
                        pos += 1;
                        let (lhs, rhs) = m
                            .split_once("->")
                            .ok_or_else(|| bad("expected `<var> -> <monomial>`", m))?;
                        let var = lhs.trim().chars().next().unwrap();
                        let image = Gf2Trivariate::parse(rhs.trim(), &vars)?;
                        let mut terms = image.terms();
                        let (mono, extra) = (terms.next(), terms.next());
                        if extra.is_some() || mono.is_none() {
                            return Err(bad("substitution image must be one monomial", m));
                        }
                        map.push((var, mono.unwrap()));
                    }
                    derivations.push(Derivation {
                        target: words[1].to_string(),
                        source: words[3].to_string(),
                        map,
                    });
                }
                "eliminate" => {
                    // eliminate <var> <lhs> <rhs> -> <out>
                    if words.len() != 6 || words[4] != "->" {
                        return Err(bad("expected `eliminate <var> <a> <b> -> <out>`", line));
                    }
                    eliminations.push(Elimination {
                        var: words[1].chars().next().unwrap(),
                        lhs: words[2].to_string(),
                        rhs: words[3].to_string(),
                        out: words[5].to_string(),
                    });
                }
                "expect" => {
                    if words.len() != 3 {
                        return Err(bad("expected `expect <name> <kind>`", line));
                    }
                    let kind = match words[2] {
                        "irreducible" => ExpectKind::Irreducible,
                        "factored" => ExpectKind::Factored,
                        _ => return Err(bad("unknown expectation kind", line)),
                    };
                    let mut factors = Vec::new();
                    loop {
                        let fl = lines
                            .get(pos)
                            .ok_or_else(|| bad("unterminated expect block", line))?;
                        pos += 1;
                        if *fl == "end" {
                            break;
                        }
                        if fl.is_empty() {
                            continue;
                        }
                        let (poly_text, mult_text) = match fl.rsplit_once(" ^ ") {
                            Some((p, m)) => (p, m),
                            None => (*fl, "1"),
                        };
                        let mult: u32 = mult_text
                            .trim()
                            .parse()
                            .map_err(|_| bad("bad factor multiplicity", fl))?;
                        factors.push((Gf2Trivariate::parse(poly_text, &vars)?, mult));
                    }
                    expectations.push(Expectation {
                        target: words[1].to_string(),
                        kind,
                        factors,
                    });
                }
                other => return Err(bad(&format!("unknown directive {other:?}"), line)),
            }
        }

        Ok(ProofArtifact {
            theorem: theorem.ok_or_else(|| Error::Artifact("missing theorem id".into()))?,
            family: family.ok_or_else(|| Error::Artifact("missing family id".into()))?,
            vars,
            ref_k,
            exponent_expr: exponent_expr
                .ok_or_else(|| Error::Artifact("missing exponent".into()))?,
            field_expr,
            multiplier_exprs: multiplier_exprs
                .ok_or_else(|| Error::Artifact("missing multiplier".into()))?,
            iff_divisor,
            substs,
            equations,
            derivations,
            eliminations,
            expectations,
        })
    }

    /// Loads an embedded script by family id ("T3") or theorem id ("TH2"),
    /// case-insensitively.
    pub fn builtin(id: &str) -> Result<ProofArtifact> {
        let want = id.to_ascii_uppercase();
        for (fam, thm, text) in BUILTIN_ARTIFACTS {
            if fam == want || thm == want {
                return Self::parse(text);
            }
        }
        Err(Error::Artifact(format!(
            "no built-in verification script named {id:?}"
        )))
    }
}

/// The three-term multiplier-augmented criterion polynomial
/// x^a (x+1)^b ((x+1)^d + x^d + 1), with negative d cleared through the
/// multiplier powers.
pub fn base_polynomial(d: i64, a: u32, b: u32) -> Result<Gf2Poly> {
    let term = |xa: u32, xb: u32| Gf2Poly::monomial(xa as usize).mul(&Gf2Poly::x_plus_one_pow(xb));
    if d >= 0 {
        let d = u32::try_from(d).map_err(|_| Error::Artifact("exponent too large".into()))?;
        Ok(&(&term(a, b + d) + &term(a + d, b)) + &term(a, b))
    } else {
        let e = u32::try_from(-d).map_err(|_| Error::Artifact("exponent too large".into()))?;
        if a < e || b < e {
            return Err(Error::Artifact(format!(
                "multiplier powers ({a}, {b}) cannot clear x^({d})"
            )));
        }
        Ok(&(&term(a - e, b) + &term(a, b - e)) + &term(a, b))
    }
}

#[derive(Clone, Debug)]
pub struct ReplayStage {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug)]
pub struct ReplayReport {
    pub theorem: String,
    pub family: String,
    pub k: Option<i64>,
    pub n: Option<u32>,
    pub d_raw: i64,
    pub stages: Vec<ReplayStage>,
    pub final_name: String,
    pub final_poly: Gf2Poly,
    pub final_factors: Factorization,
}

impl ReplayReport {
    pub fn all_ok(&self) -> bool {
        self.stages.iter().all(|s| s.ok)
    }
}

fn fold_exponent(e: u64, n: Option<u32>) -> u64 {
    match n {
        Some(n) if e >= 1 => 1 + (e - 1) % ((1u64 << n) - 1),
        _ => e,
    }
}

/// Collapses an equation to a univariate polynomial through the recorded
/// variable substitutions (y and z as powers of x), folding exponents into
/// the functional ring of the field when a dimension is given.
fn collapse_to_univariate(
    eq: &Gf2Trivariate,
    subst: &HashMap<char, u64>,
    n: Option<u32>,
) -> Result<Gf2Poly> {
    let sy = subst.get(&'y').copied();
    let sz = subst.get(&'z').copied();
    let mut exps: Vec<usize> = Vec::new();
    let mut folded = BTreeSet::new();
    for (i, j, l) in eq.terms() {
        if j > 0 && sy.is_none() || l > 0 && sz.is_none() {
            return Err(Error::Artifact(
                "equation uses a variable without a recorded substitution".into(),
            ));
        }
        let e = i as u64
            + j as u64 * sy.unwrap_or(0)
            + l as u64 * sz.unwrap_or(0);
        let e = fold_exponent(e, n);
        if !folded.insert(e) {
            folded.remove(&e);
        }
    }
    exps.extend(folded.iter().map(|&e| e as usize));
    Ok(Gf2Poly::from_exponents(exps))
}

/// Replays a verification script end to end at its reference parameter.
pub fn replay_elimination(artifact: &ProofArtifact) -> Result<ReplayReport> {
    let k = artifact.ref_k.unwrap_or(0);
    let d_raw = eval_in_k(&artifact.exponent_expr, k)?;
    let n = match &artifact.field_expr {
        Some(e) => Some(u32::try_from(eval_in_k(e, k)?).map_err(|_| {
            Error::Artifact("field dimension expression is negative".into())
        })?),
        None => None,
    };
    let a = u32::try_from(eval_in_k(&artifact.multiplier_exprs.0, k)?)
        .map_err(|_| Error::Artifact("negative multiplier power".into()))?;
    let b = u32::try_from(eval_in_k(&artifact.multiplier_exprs.1, k)?)
        .map_err(|_| Error::Artifact("negative multiplier power".into()))?;
    let mut subst: HashMap<char, u64> = HashMap::new();
    for (var, expr) in &artifact.substs {
        let v = eval_in_k(expr, k)?;
        subst.insert(
            *var,
            u64::try_from(v).map_err(|_| Error::Artifact("negative substitution power".into()))?,
        );
    }

    let base = base_polynomial(d_raw, a, b)?;
    let mut stages: Vec<ReplayStage> = Vec::new();
    let mut store: HashMap<String, Gf2Trivariate> = HashMap::new();

    // Stage family 1: every stated equation is the base polynomial composed
    // with x -> x^(2^j), read through the variable substitutions.
    for eq in &artifact.equations {
        let j = u32::try_from(eval_in_k(&eq.power_expr, k)?)
            .map_err(|_| Error::Artifact("negative squaring count".into()))?;
        let mut expect = match n {
            Some(n) => base.reduce_exponents_mod_field(n),
            None => base.clone(),
        };
        for _ in 0..j {
            expect = expect.square();
            if let Some(n) = n {
                expect = expect.reduce_exponents_mod_field(n);
            }
        }
        let got = collapse_to_univariate(&eq.poly, &subst, n)?;
        let ok = got == expect;
        stages.push(ReplayStage {
            label: format!("identity:{}", eq.name),
            ok,
            detail: if ok {
                format!(
                    "equation {} is the base criterion composed with x -> x^(2^{j})",
                    eq.name
                )
            } else {
                format!("collapsed form {got} differs from expected {expect}")
            },
        });
        store.insert(eq.name.clone(), eq.poly.clone());
    }

    // Stage family 2: each recorded derivation regenerates its target
    // equation from its source by monomial substitution, exactly.
    for der in &artifact.derivations {
        let source = store
            .get(&der.source)
            .ok_or_else(|| Error::Artifact(format!("unknown equation {:?}", der.source)))?;
        let mut images: HashMap<char, (u32, u32, u32)> = HashMap::new();
        for (v, m) in &der.map {
            images.insert(*v, *m);
        }
        let identity = |v: char| match v {
            'x' => (1, 0, 0),
            'y' => (0, 1, 0),
            _ => (0, 0, 1),
        };
        let got = source.substitute_monomials(
            images.get(&'x').copied().unwrap_or(identity('x')),
            images.get(&'y').copied().unwrap_or(identity('y')),
            images.get(&'z').copied().unwrap_or(identity('z')),
        )?;
        let target = store
            .get(&der.target)
            .ok_or_else(|| Error::Artifact(format!("unknown equation {:?}", der.target)))?;
        let ok = &got == target;
        stages.push(ReplayStage {
            label: format!("derive:{}<-{}", der.target, der.source),
            ok,
            detail: if ok {
                format!(
                    "{} regenerates from {} by the recorded substitution",
                    der.target, der.source
                )
            } else {
                format!("substitution image has {} terms, target {}", got.term_count(), target.term_count())
            },
        });
    }

    // Stage family 3: eliminations, in script order.
    let mut final_name = artifact
        .equations
        .first()
        .map(|e| e.name.clone())
        .unwrap_or_default();
    for elim in &artifact.eliminations {
        let lhs = store
            .get(&elim.lhs)
            .ok_or_else(|| Error::Artifact(format!("unknown object {:?}", elim.lhs)))?
            .clone();
        let rhs = store
            .get(&elim.rhs)
            .ok_or_else(|| Error::Artifact(format!("unknown object {:?}", elim.rhs)))?
            .clone();
        let result = match elim.var {
            'z' => {
                let fc = lhs.coeffs_wrt_z()?;
                let gc = rhs.coeffs_wrt_z()?;
                if fc.len() < 2 || gc.len() < 2 {
                    return Err(Error::DegenerateElimination(format!(
                        "eliminate z: {} and {} must both involve z",
                        elim.lhs, elim.rhs
                    )));
                }
                let det = sylvester_det(&sylvester_matrix_generic(&fc, &gc))?;
                stages.push(ReplayStage {
                    label: format!("eliminate:{}", elim.out),
                    ok: true,
                    detail: format!(
                        "res_z({}, {}): {} terms, degree {} in x, {} in y",
                        elim.lhs,
                        elim.rhs,
                        det.term_count(),
                        det.deg_x().unwrap_or(0),
                        det.deg_y().unwrap_or(0)
                    ),
                });
                Gf2Trivariate::from_bivariate(&det)
            }
            'y' => {
                let f = lhs.to_bivariate()?;
                let g = rhs.to_bivariate()?;
                let via_interp = resultant_y(&f, &g)?;
                stages.push(ReplayStage {
                    label: format!("eliminate:{}", elim.out),
                    ok: true,
                    detail: format!(
                        "res_y({}, {}): degree {}, {} terms (evaluation-interpolation)",
                        elim.lhs,
                        elim.rhs,
                        via_interp.degree().unwrap_or(0),
                        via_interp.term_count()
                    ),
                });
                let order = (f.deg_y().unwrap_or(0) + g.deg_y().unwrap_or(0)) as usize;
                if order <= 16 {
                    let direct = resultant_y_direct(&f, &g)?;
                    let ok = direct == via_interp;
                    stages.push(ReplayStage {
                        label: format!("cross-check:{}", elim.out),
                        ok,
                        detail: if ok {
                            "direct determinant expansion agrees with interpolation".into()
                        } else {
                            "direct determinant expansion DISAGREES with interpolation".into()
                        },
                    });
                }
                Gf2Trivariate::from_univariate(&via_interp)
            }
            other => {
                return Err(Error::Artifact(format!(
                    "cannot eliminate variable {other:?}"
                )))
            }
        };
        store.insert(elim.out.clone(), result);
        final_name = elim.out.clone();
    }

    // Stage family 4: expectations — recorded factor lists match the
    // computed objects exactly, with irreducibility where claimed.
    for exp in &artifact.expectations {
        let target = store
            .get(&exp.target)
            .ok_or_else(|| Error::Artifact(format!("unknown object {:?}", exp.target)))?;
        let mut product = Gf2Trivariate::one();
        for (f, m) in &exp.factors {
            product = product.mul(&f.pow(*m));
        }
        let product_ok = &product == target;
        match exp.kind {
            ExpectKind::Factored => {
                stages.push(ReplayStage {
                    label: format!("expect:{}", exp.target),
                    ok: product_ok,
                    detail: if product_ok {
                        format!(
                            "{} equals the recorded {}-factor product",
                            exp.target,
                            exp.factors.len()
                        )
                    } else {
                        format!("recorded product differs from computed {}", exp.target)
                    },
                });
            }
            ExpectKind::Irreducible => {
                let poly = target.to_univariate()?;
                let computed = factor(&poly)?;
                let mut expected_pairs = Vec::new();
                let mut all_irreducible = true;
                for (f, m) in &exp.factors {
                    let u = f.to_univariate()?;
                    if u.degree().map_or(true, |d| d >= 1) && !is_irreducible(&u)? {
                        all_irreducible = false;
                    }
                    expected_pairs.push((u, *m));
                }
                let expected = Factorization::from_pairs(expected_pairs);
                let factors_ok = computed == expected;
                let ok = product_ok && factors_ok && all_irreducible;
                stages.push(ReplayStage {
                    label: format!("expect:{}", exp.target),
                    ok,
                    detail: if ok {
                        format!(
                            "{} factors exactly as recorded ({} distinct irreducibles)",
                            exp.target,
                            expected.factors.len()
                        )
                    } else {
                        format!(
                            "product match: {product_ok}; factor multiset match: {factors_ok}; all recorded factors irreducible: {all_irreducible}"
                        )
                    },
                });
            }
        }
    }

    let final_obj = store
        .get(&final_name)
        .ok_or_else(|| Error::Artifact("empty script".into()))?;
    let final_poly = final_obj.to_univariate()?;
    let final_factors = factor(&final_poly)?;

    Ok(ReplayReport {
        theorem: artifact.theorem.clone(),
        family: artifact.family.clone(),
        k: artifact.ref_k,
        n,
        d_raw,
        stages,
        final_name,
        final_poly,
        final_factors,
    })
}

fn sylvester_matrix_generic<T: SubsetRing>(fc: &[T], gc: &[T]) -> Vec<Vec<T>> {
    let df = fc.len() - 1;
    let dg = gc.len() - 1;
    let size = df + dg;
    let mut m: Vec<Vec<T>> = (0..size).map(|_| vec![T::ring_zero(); size]).collect();
    for r in 0..dg {
        for i in 0..=df {
            m[r][r + i] = fc[df - i].clone();
        }
    }
    for r in 0..df {
        for i in 0..=dg {
            m[dg + r][r + i] = gc[dg - i].clone();
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct FactorExclusionRow {
    pub factor: Gf2Poly,
    pub multiplicity: u32,
    /// x and x+1 carry the forced solutions x0 in GF(2); they are exempt.
    pub trivial: bool,
    pub roots_in_field: usize,
    /// Roots that actually satisfy the original criterion — any such root
    /// is a genuine counterexample.
    pub violating_roots: usize,
}

#[derive(Debug)]
pub struct SubfieldExclusionReport {
    pub theorem: String,
    pub family: String,
    pub n: u32,
    pub d: Exponent,
    pub rows: Vec<FactorExclusionRow>,
    pub ok: bool,
}

/// Numerically re-checks the subfield step of a replayed elimination at a
/// concrete dimension: every nontrivial irreducible factor of the final
/// resultant must either have no roots in GF(2^n) at all, or every root it
/// does have must fail the criterion (x+1)^d + x^d + 1 = 0 — such roots are
/// artifacts of the elimination, not solutions.
pub fn verify_subfield_exclusion(
    artifact: &ProofArtifact,
    report: &ReplayReport,
    n: u32,
) -> Result<SubfieldExclusionReport> {
    let d = Exponent::new(report.d_raw, n)?;
    let ctx = FieldContext::make_context(n)?;
    let x_poly = Gf2Poly::x();
    let x1_poly: Gf2Poly = &x_poly + &Gf2Poly::one();
    let mut rows = Vec::new();
    for (q, m) in &report.final_factors.factors {
        let trivial = *q == x_poly || *q == x1_poly;
        if trivial {
            rows.push(FactorExclusionRow {
                factor: q.clone(),
                multiplicity: *m,
                trivial,
                roots_in_field: 0,
                violating_roots: 0,
            });
            continue;
        }
        let roots_in_field = count_roots_in_field(q, n)?;
        let mut violating_roots = 0;
        if roots_in_field > 0 {
            let mut found = 0;
            for e in ctx.elements() {
                if ctx.eval_poly(q, e) == FieldElement(0) {
                    found += 1;
                    let criterion = ctx.fe_add(
                        ctx.fe_add(
                            ctx.fe_pow(ctx.fe_add(e, FieldElement(1)), d.normalized()),
                            ctx.fe_pow(e, d.normalized()),
                        ),
                        FieldElement(1),
                    );
                    if criterion == FieldElement(0) {
                        violating_roots += 1;
                    }
                    if found == roots_in_field {
                        break;
                    }
                }
            }
        }
        rows.push(FactorExclusionRow {
            factor: q.clone(),
            multiplicity: *m,
            trivial,
            roots_in_field,
            violating_roots,
        });
    }
    let ok = rows.iter().all(|r| r.trivial || r.violating_roots == 0);
    Ok(SubfieldExclusionReport {
        theorem: artifact.theorem.clone(),
        family: artifact.family.clone(),
        n,
        d,
        rows,
        ok,
    })
}

impl FromStr for Gf2Trivariate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, &['x', 'y', 'z'])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_all_builtin_scripts() {
        for (fam, thm, _) in BUILTIN_ARTIFACTS {
            let a = ProofArtifact::builtin(fam).unwrap();
            assert_eq!(a.family, fam);
            assert_eq!(a.theorem, thm);
            let b = ProofArtifact::builtin(thm).unwrap();
            assert_eq!(b.family, fam);
        }
        assert!(ProofArtifact::builtin("T9").is_err());
    }

    #[test]
    fn base_polynomial_negative_exponent() {
        // d = -9 with multipliers (9, 9): (x+1)^9 + x^9 + x^9 (x+1)^9.
        let p = base_polynomial(-9, 9, 9).unwrap();
        let expect: Gf2Poly = "x^18+x^17+x^10+x^9+x^8+x+1".parse().unwrap();
        assert_eq!(p, expect);
        assert!(base_polynomial(-9, 8, 9).is_err());
    }

    #[test]
    fn direct_factor_script_replays() {
        let artifact = ProofArtifact::builtin("T7").unwrap();
        let report = replay_elimination(&artifact).unwrap();
        assert!(report.all_ok(), "stages: {:?}", report.stages);
        assert_eq!(report.d_raw, -9);
        assert_eq!(report.final_factors.factors.len(), 2);
        let degs: Vec<usize> = report
            .final_factors
            .factors
            .iter()
            .map(|(q, _)| q.degree().unwrap())
            .collect();
        assert_eq!(degs, vec![9, 9]);
    }

    #[test]
    fn bivariate_elimination_script_replays() {
        let artifact = ProofArtifact::builtin("T3").unwrap();
        let report = replay_elimination(&artifact).unwrap();
        assert!(report.all_ok(), "stages: {:?}", report.stages);
        assert_eq!(report.n, Some(10));
        assert_eq!(report.d_raw, 93);
        assert_eq!(report.final_poly.degree(), Some(36));
        // x^9, (x+1)^9, and three degree-6 irreducibles.
        assert_eq!(report.final_factors.factors.len(), 5);
        // The cross-check stage must have run for this small system.
        assert!(report
            .stages
            .iter()
            .any(|s| s.label.starts_with("cross-check")));
    }

    #[test]
    fn elimination_is_symmetric_in_its_inputs() {
        let artifact = ProofArtifact::builtin("T3").unwrap();
        let eq1 = artifact.equations[0].poly.to_bivariate().unwrap();
        let eq2 = artifact.equations[1].poly.to_bivariate().unwrap();
        assert_eq!(
            resultant_y(&eq1, &eq2).unwrap(),
            resultant_y(&eq2, &eq1).unwrap()
        );
    }

    #[test]
    fn subfield_exclusion_at_reference_dimension() {
        let artifact = ProofArtifact::builtin("T3").unwrap();
        let report = replay_elimination(&artifact).unwrap();
        let excl = verify_subfield_exclusion(&artifact, &report, 10).unwrap();
        assert!(excl.ok);
        // Degree-6 factors have no roots in GF(2^10): gcd(6,10)=2 and they
        // have no GF(4) roots.
        for row in &excl.rows {
            if !row.trivial {
                assert_eq!(row.roots_in_field, 0, "factor {}", row.factor);
            }
        }
    }

    #[test]
    fn iff_boundary_detected_by_exclusion() {
        let artifact = ProofArtifact::builtin("T7").unwrap();
        let report = replay_elimination(&artifact).unwrap();
        // 9 divides 9: the degree-9 factors split completely and their
        // roots genuinely solve the criterion.
        let at9 = verify_subfield_exclusion(&artifact, &report, 9).unwrap();
        assert!(!at9.ok);
        assert!(at9.rows.iter().any(|r| r.violating_roots > 0));
        // 9 does not divide 10: no roots at all.
        let at10 = verify_subfield_exclusion(&artifact, &report, 10).unwrap();
        assert!(at10.ok);
        assert!(at10
            .rows
            .iter()
            .all(|r| r.trivial || r.roots_in_field == 0));
    }

    #[test]
    fn trivariate_arithmetic_and_parsing() {
        let p: Gf2Trivariate = "x^2y+z^3+1".parse().unwrap();
        assert_eq!(p.term_count(), 3);
        assert_eq!(p.degree_of('z'), Some(3));
        assert_eq!(p.to_string().parse::<Gf2Trivariate>().unwrap(), p);
        assert!(Gf2Trivariate::parse("x^2w", &['x', 'y', 'z']).is_err());
        assert!(Gf2Trivariate::parse("z", &['x', 'y']).is_err());
        let q: Gf2Trivariate = "x+y".parse().unwrap();
        assert_eq!(q.pow(2), "x^2+y^2".parse().unwrap());
        assert!(q.to_univariate().is_err());
        assert!("x^3+x".parse::<Gf2Trivariate>().unwrap().to_univariate().is_ok());
    }
}
