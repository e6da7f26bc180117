//! Subcommand implementations. Each returns a payload value; `main`
//! wraps it into the report envelope with timing and version.

use std::path::{Path, PathBuf};

use ringlab_core::deciders::{
    classify_matrix_ring, m2_criteria, one_sum_two_units, DecisionMethod, RingProperty,
};
use ringlab_core::idem::{
    anti_commutator, bott_duffin_bits, check_kato, check_koliha_rakocevic, commutator,
    jacobson_lemma_check, pair_report, SimilarityPath,
};
use ringlab_core::recognizer::{
    henriksen_two_units, idempotent_witness_to_squarezero, involution_witness_to_matrix_units,
    m2_isomorphism, matrix_units_from_f_witness, not_m2_certificate, transform_witness, Witness,
    WitnessKind,
};
use ringlab_core::{Caps, Element, FiniteRing, RingBuilder, RingError, RingExpr};
use serde_json::{json, Value};

use crate::parallel;
use crate::parse::{parse_elem, parse_ring, split_elems, ParseError};
use crate::report::{ring_summary, verdict_json};
use crate::table_file;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input text (ring expression, literal, table file): exit 2.
    Parse(ParseError),
    /// Engine errors; caps map to exit 3, internal verification failures
    /// to exit 4, the rest to exit 1.
    Ring(RingError),
    /// Well-formed input that does not fit the request: exit 1.
    Input(String),
    /// A sweep found violations of an identity that must always hold:
    /// exit 4.
    Violations(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Ring(RingError::CapExceeded { .. }) => 3,
            CliError::Ring(RingError::ConsistencyViolation(_))
            | CliError::Ring(RingError::VerificationFailed(_))
            | CliError::Ring(RingError::SearchFailed(_)) => 4,
            CliError::Ring(_) => 1,
            CliError::Input(_) => 1,
            CliError::Violations(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Ring(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Violations(m) => write!(f, "identity violations detected: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Ring(e)
    }
}

pub type CmdResult = Result<(Option<Value>, Value), CliError>;

fn build_expr(expr: &RingExpr, caps: Caps) -> Result<FiniteRing, CliError> {
    let mut builder = RingBuilder::new().with_caps(caps);
    for source in expr.table_sources() {
        let table = table_file::read_table(Path::new(&source))?;
        builder = builder.with_table(source, table);
    }
    Ok(builder.build(expr)?)
}

pub fn build_from_text(src: &str, caps: Caps) -> Result<FiniteRing, CliError> {
    let expr = parse_ring(src)?;
    build_expr(&expr, caps)
}

fn render(ring: &FiniteRing, x: Element) -> Value {
    Value::String(ring.render(x).unwrap_or_default())
}

// ---------------------------------------------------------------------------

pub fn describe(ring_src: &str, caps: Caps) -> CmdResult {
    let ring = build_from_text(ring_src, caps)?;
    let pair = one_sum_two_units(&ring).map(|(a, b)| json!([render(&ring, a), render(&ring, b)]));
    let obstruction = not_m2_certificate(&ring).map(|o| {
        json!({"cardinality": o.cardinality, "floor_fourth_root": o.floor_root})
    });
    let payload = json!({
        "zero_ring": ring.cardinality() == 1,
        "one_sum_two_units": pair,
        "not_m2_obstruction": obstruction,
    });
    Ok((Some(ring_summary(&ring)), payload))
}

pub enum MethodChoice {
    Brute,
    Units,
    Theorem,
    Both,
    All,
}

pub fn decide(
    ring_src: &str,
    prop: RingProperty,
    method: MethodChoice,
    jobs: usize,
    caps: Caps,
) -> CmdResult {
    let expr = parse_ring(ring_src)?;
    let mut results = serde_json::Map::new();
    let mut verdicts: Vec<bool> = Vec::new();

    let searches: &[DecisionMethod] = match method {
        MethodChoice::Brute => &[DecisionMethod::Brute],
        MethodChoice::Units => &[DecisionMethod::UnitSearch],
        MethodChoice::Theorem => &[],
        MethodChoice::Both | MethodChoice::All => {
            &[DecisionMethod::Brute, DecisionMethod::UnitSearch]
        }
    };
    let ring = if searches.is_empty() {
        None
    } else {
        Some(build_expr(&expr, caps)?)
    };
    if let Some(ring) = &ring {
        for &m in searches {
            let v = parallel::decide(ring, prop, m, jobs)?;
            verdicts.push(v.holds);
            results.insert(
                crate::report::method_name(m).to_string(),
                verdict_json(ring, &v),
            );
        }
    }

    let want_theorem = matches!(method, MethodChoice::Theorem | MethodChoice::All);
    if want_theorem {
        if let RingExpr::Mat { size, base } = &expr {
            let base_ring = build_expr(base, caps)?;
            match classify_matrix_ring(*size, &base_ring) {
                Ok((k, kbar)) => {
                    let v = match prop {
                        RingProperty::K => k,
                        RingProperty::KBar => kbar,
                    };
                    verdicts.push(v.holds);
                    results.insert(
                        "theorem".into(),
                        json!({
                            "property": crate::report::property_name(prop),
                            "holds": v.holds,
                            "method": "theorem",
                        }),
                    );
                }
                Err(RingError::NotApplicable(reason)) => {
                    if matches!(method, MethodChoice::Theorem) {
                        return Err(CliError::Input(reason));
                    }
                    results.insert(
                        "theorem".into(),
                        json!({"applicable": false, "reason": reason}),
                    );
                }
                Err(e) => return Err(e.into()),
            }
        } else if matches!(method, MethodChoice::Theorem) {
            return Err(CliError::Input(
                "the classification method needs a M(n, ..) expression".into(),
            ));
        } else {
            results.insert(
                "theorem".into(),
                json!({"applicable": false, "reason": "not a matrix-ring expression"}),
            );
        }
    }

    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    if !agree {
        return Err(CliError::Ring(RingError::ConsistencyViolation(
            "decision methods disagree".into(),
        )));
    }
    let payload = json!({
        "property": crate::report::property_name(prop),
        "holds": verdicts.first().copied(),
        "agree": agree,
        "results": Value::Object(results),
    });
    Ok((ring.as_ref().map(ring_summary), payload))
}

pub fn pair(ring_src: &str, elems: &str, caps: Caps) -> CmdResult {
    let ring = build_from_text(ring_src, caps)?;
    let parts = split_elems(elems);
    if parts.len() != 2 {
        return Err(CliError::Input(format!(
            "expected two element literals, got {}",
            parts.len()
        )));
    }
    let e = ring.resolve_literal(&parse_elem(parts[0])?)?;
    let ep = ring.resolve_literal(&parse_elem(parts[1])?)?;
    let rep = pair_report(&ring, e, ep)?;
    let sims = rep.similarities.as_ref().map(|sims| {
        Value::Array(
            sims.iter()
                .map(|s| {
                    json!({
                        "from": render(&ring, s.from),
                        "to": render(&ring, s.to),
                        "conjugator": render(&ring, s.conjugator),
                        "path": match s.path {
                            SimilarityPath::Direct => "direct",
                            SimilarityPath::Composed => "composed",
                            SimilarityPath::Search => "search",
                        },
                    })
                })
                .collect(),
        )
    });
    let ds = rep.direct_sum.map(|d| {
        json!({
            "right_spans": d.right_spans,
            "right_trivial_intersection": d.right_trivial_intersection,
            "left_spans": d.left_spans,
            "left_trivial_intersection": d.left_trivial_intersection,
            "holds": d.holds(),
        })
    });
    let payload = json!({
        "e": render(&ring, rep.e),
        "e_prime": render(&ring, rep.e_prime),
        "comm": render(&ring, rep.comm),
        "anti": render(&ring, rep.anti),
        "comm_unit": rep.comm_unit,
        "anti_unit": rep.anti_unit,
        "diff_unit": rep.diff_unit,
        "sum_unit": rep.sum_unit,
        "fdiff_unit": rep.fdiff_unit,
        "one_minus_sum_unit": rep.one_minus_sum_unit,
        "similarities": sims,
        "direct_sum": ds,
    });
    Ok((Some(ring_summary(&ring)), payload))
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn identities(ring_src: &str, exhaustive: bool, caps: Caps) -> CmdResult {
    let ring = build_from_text(ring_src, caps)?;
    let idems: Vec<Element> = ring.idempotents().collect();
    let card = ring.cardinality();
    let n = idems.len() as u64;
    let sample_cap = 10_000u64;
    let mut violations = 0u64;

    // Kato and factorization identities over idempotent pairs.
    let mut idem_pairs = 0u64;
    let mut check_idem_pair = |e: Element, ep: Element| -> Result<(), CliError> {
        idem_pairs += 1;
        if !check_kato(&ring, e, ep)?.all_hold() {
            violations += 1;
        }
        if !check_koliha_rakocevic(&ring, e, ep)?.all_hold() {
            violations += 1;
        }
        Ok(())
    };
    if exhaustive || n * n <= sample_cap {
        for &e in &idems {
            for &ep in &idems {
                check_idem_pair(e, ep)?;
            }
        }
    } else {
        let mut state = caps.seed ^ 0x1d5;
        for _ in 0..caps.axiom_samples {
            let e = idems[(splitmix64(&mut state) % n) as usize];
            let ep = idems[(splitmix64(&mut state) % n) as usize];
            check_idem_pair(e, ep)?;
        }
    }

    // Four-condition agreement over (a, e) pairs.
    let mut bd_pairs = 0u64;
    let mut bd_disagreements = 0u64;
    let mut check_bd = |a: Element, e: Element| -> Result<(), CliError> {
        bd_pairs += 1;
        let bits = bott_duffin_bits(&ring, a, e)?;
        if bits.iter().any(|&b| b != bits[0]) {
            bd_disagreements += 1;
        }
        Ok(())
    };
    if exhaustive || card * n <= sample_cap {
        for a in ring.elements() {
            for &e in &idems {
                check_bd(a, e)?;
            }
        }
    } else {
        let mut state = caps.seed ^ 0x2bd;
        for _ in 0..caps.axiom_samples {
            let a = ring.element(splitmix64(&mut state) % card).unwrap();
            let e = idems[(splitmix64(&mut state) % n) as usize];
            check_bd(a, e)?;
        }
    }

    // Jacobson's lemma over all (x, y).
    let mut jacobson_pairs = 0u64;
    let mut jacobson_violations = 0u64;
    let mut check_jl = |x: Element, y: Element| -> Result<(), CliError> {
        jacobson_pairs += 1;
        if !jacobson_lemma_check(&ring, x, y)? {
            jacobson_violations += 1;
        }
        Ok(())
    };
    if exhaustive || card * card <= sample_cap {
        for x in ring.elements() {
            for y in ring.elements() {
                check_jl(x, y)?;
            }
        }
    } else {
        let mut state = caps.seed ^ 0x3a1;
        for _ in 0..caps.axiom_samples {
            let x = ring.element(splitmix64(&mut state) % card).unwrap();
            let y = ring.element(splitmix64(&mut state) % card).unwrap();
            check_jl(x, y)?;
        }
    }

    let total_violations = violations + bd_disagreements + jacobson_violations;
    let payload = json!({
        "exhaustive": exhaustive || (n * n <= sample_cap && card * card <= sample_cap),
        "idempotent_pairs": idem_pairs,
        "identity_violations": violations,
        "bott_duffin_pairs": bd_pairs,
        "bott_duffin_disagreements": bd_disagreements,
        "jacobson_pairs": jacobson_pairs,
        "jacobson_violations": jacobson_violations,
    });
    if total_violations > 0 {
        return Err(CliError::Violations(format!(
            "{total_violations} violations in {ring}"
        )));
    }
    Ok((Some(ring_summary(&ring)), payload))
}

pub fn recognize(
    ring_src: &str,
    witness_kind: &str,
    elems: Option<&str>,
    emit_corner: Option<&PathBuf>,
    jobs: usize,
    caps: Caps,
) -> CmdResult {
    // Validate the witness request before any construction work.
    let explicit_kind = if witness_kind.eq_ignore_ascii_case("auto") {
        None
    } else {
        let kind = WitnessKind::parse(witness_kind)
            .ok_or_else(|| CliError::Input(format!("unknown witness kind '{witness_kind}'")))?;
        if elems.is_none() {
            return Err(CliError::Input(
                "--elems is required for an explicit witness kind".into(),
            ));
        }
        Some(kind)
    };
    let ring = build_from_text(ring_src, caps)?;
    let (mus, kind_used) = if explicit_kind.is_none() {
        let verdict = parallel::decide(&ring, RingProperty::K, DecisionMethod::Brute, jobs)?;
        let Some((e, ep)) = verdict.witness else {
            let obstruction = not_m2_certificate(&ring).map(|o| {
                json!({"cardinality": o.cardinality, "floor_fourth_root": o.floor_root})
            });
            let payload = json!({
                "recognized": false,
                "reason": "no idempotent pair with an invertible commutator",
                "not_m2_obstruction": obstruction,
            });
            return Ok((Some(ring_summary(&ring)), payload));
        };
        let completer = ring.sub(e, ep)?;
        let h = idempotent_witness_to_squarezero(&ring, e, completer)?;
        let f = transform_witness(&ring, &h, WitnessKind::F)?;
        (
            matrix_units_from_f_witness(&ring, f.elements[0], f.elements[1])?,
            "auto".to_string(),
        )
    } else {
        let kind = explicit_kind.unwrap();
        let elems = elems.expect("validated above");
        let parts = split_elems(elems);
        if parts.len() != 2 {
            return Err(CliError::Input(format!(
                "witness kind {} takes two elements, got {}",
                kind.name(),
                parts.len()
            )));
        }
        let x = ring.resolve_literal(&parse_elem(parts[0])?)?;
        let y = ring.resolve_literal(&parse_elem(parts[1])?)?;
        let witness = Witness::new(&ring, kind, vec![x, y]).map_err(|e| match e {
            RingError::VerificationFailed(msg) => CliError::Input(msg),
            other => CliError::Ring(other),
        })?;
        let mus = if kind == WitnessKind::Invol {
            involution_witness_to_matrix_units(&ring, x, y)?
        } else {
            let f = transform_witness(&ring, &witness, WitnessKind::F)?;
            matrix_units_from_f_witness(&ring, f.elements[0], f.elements[1])?
        };
        (mus, kind.name().to_string())
    };
    let cert = m2_isomorphism(&ring, &mus)?;
    let corner_table = if let Some(path) = emit_corner {
        table_file::write_table(&cert.corner, path).map_err(|e| {
            CliError::Input(format!("cannot write corner table {}: {e}", path.display()))
        })?;
        Some(path.display().to_string())
    } else {
        None
    };
    let payload = json!({
        "recognized": true,
        "witness_kind": kind_used,
        "matrix_units": {
            "e11": render(&ring, mus.e11),
            "e12": render(&ring, mus.e12),
            "e21": render(&ring, mus.e21),
            "e22": render(&ring, mus.e22),
        },
        "corner": {
            "cardinality": cert.corner.cardinality(),
            "expr": cert.corner.expr().to_string(),
        },
        "bijection_verified": cert.bijection_verified,
        "homomorphism_verified": cert.homomorphism_verified,
        "homomorphism_exhaustive": cert.homomorphism_exhaustive,
        "corner_table": corner_table,
    });
    Ok((Some(ring_summary(&ring)), payload))
}

pub fn sum2units(ring_src: &str, caps: Caps) -> CmdResult {
    let ring = build_from_text(ring_src, caps)?;
    let pair = one_sum_two_units(&ring);
    let payload = json!({
        "found": pair.is_some(),
        "pair": pair.map(|(a, b)| json!([render(&ring, a), render(&ring, b)])),
    });
    Ok((Some(ring_summary(&ring)), payload))
}

pub fn henriksen(ring_src: &str, m: usize, caps: Caps) -> CmdResult {
    let base = build_from_text(ring_src, caps)?;
    let d = henriksen_two_units(m, &base)?;
    let payload = json!({
        "m": d.size,
        "det_u_over_z": d.det_u_int.to_string(),
        "det_v_over_z": d.det_v_int.to_string(),
        "u": d.u.render(),
        "v": d.v.render(),
        "u_inv": d.u_inv.render(),
        "v_inv": d.v_inv.render(),
        "verified": true,
    });
    Ok((Some(ring_summary(&base)), payload))
}

// ---------------------------------------------------------------------------
// Fixture battery
// ---------------------------------------------------------------------------

fn fixture_rings(caps: Caps) -> Result<(FiniteRing, FiniteRing, FiniteRing), CliError> {
    Ok((
        build_from_text("M(2,Z(2))", caps)?,
        build_from_text("M(3,Z(2))", caps)?,
        build_from_text("M(3,Z(3))", caps)?,
    ))
}

pub fn fixtures(recheck: bool, caps: Caps) -> CmdResult {
    let (m2f2, m3f2, m3f3) = fixture_rings(caps)?;
    let mut results = Vec::new();
    let mut push = |name: &str, pass: bool| results.push((name.to_string(), pass));

    // Invertible commutator with a zero corner product.
    {
        let e = m2f2.resolve_literal(&parse_elem("[[1,0],[0,0]]")?)?;
        let s = m2f2.resolve_literal(&parse_elem("[[0,1],[1,0]]")?)?;
        let comm_unit = m2f2.is_unit(commutator(&m2f2, e, s)?)?;
        let ere = m2f2.mul(m2f2.mul(e, s)?, e)?;
        push(
            "invertible-commutator-with-zero-corner-product",
            comm_unit && ere == m2f2.zero(),
        );
    }
    // One-sided Bott-Duffin invertibility.
    {
        let e = m2f2.resolve_literal(&parse_elem("[[1,0],[0,0]]")?)?;
        let one = m2f2.one();
        let fwd = bott_duffin_bits(&m2f2, one, e)?[0];
        let back = bott_duffin_bits(&m2f2, e, one)?[0];
        let oms = m2f2.neg(e)?;
        push(
            "one-sided-bott-duffin",
            fwd && !back && !m2f2.is_unit(oms)?,
        );
    }
    // Sum of idempotents invertible without the difference invertible.
    {
        let z5 = build_from_text("Z(5)", caps)?;
        let rep = pair_report(&z5, z5.one(), z5.one())?;
        push(
            "sum-unit-without-difference-unit",
            rep.sum_unit && !rep.diff_unit,
        );
    }
    // Completable w with w^3 = w, and the nilpotent variant, in 3x3 rings.
    for (label, r) in [("mod-2", &m3f2), ("mod-3", &m3f3)] {
        let w = r.resolve_literal(&parse_elem("[[1,1,0],[0,0,1],[0,0,-1]]")?)?;
        let w1 = r.resolve_literal(&parse_elem("[[1,0,0],[0,0,0],[1,1,0]]")?)?;
        let cubic = r.pow(w, 3)? == w && r.is_unit(commutator(r, w, w1)?)?;
        let wn = r.resolve_literal(&parse_elem("[[0,1,0],[0,0,1],[0,0,0]]")?)?;
        let w2 = r.resolve_literal(&parse_elem("[[0,0,0],[1,0,1],[1,0,0]]")?)?;
        let nilpotent = r.pow(wn, 3)? == r.zero() && r.is_unit(commutator(r, wn, w2)?)?;
        push(
            &format!("completable-cubic-and-nilpotent-{label}"),
            cubic && nilpotent,
        );
    }
    // Cardinality obstruction on the 3x3 ring.
    push(
        "fourth-power-obstruction",
        not_m2_certificate(&m3f2).is_some() && not_m2_certificate(&m2f2).is_none(),
    );
    // Trace obstruction over small commutative bases: commutators have
    // zero trace, so [p,q] = 1 with square-zero p, q needs 2 = 0.
    {
        let mut ok = true;
        for base_src in ["Z(2)", "Z(3)", "Z(4)", "GF(2,[1,1,1])", "Prod(Z(2),Z(2))"] {
            let base = build_from_text(base_src, caps)?;
            let r = base.matrix_ring_over(2)?;
            let squarezero: Vec<Element> = r
                .elements()
                .filter(|&x| r.mul(x, x).unwrap() == r.zero())
                .collect();
            let mut found = false;
            for &p in &squarezero {
                for &q in &squarezero {
                    if commutator(&r, p, q)? == r.one() {
                        found = true;
                    }
                }
            }
            let zero_trace = r
                .elements()
                .take(256)
                .all(|x| r.elements().take(64).all(|y| {
                    r.trace(commutator(&r, x, y).unwrap()).unwrap() == base.zero()
                }));
            ok &= zero_trace && (found == (base.scalar(2) == base.zero()));
        }
        push("trace-obstruction", ok);
    }
    // Identity sweeps never fail (spot fixture).
    {
        let m2f3 = build_from_text("M(2,Z(3))", caps)?;
        let mut ok = true;
        for e in m2f3.idempotents() {
            for ep in m2f3.idempotents() {
                ok &= check_kato(&m2f3, e, ep)?.all_hold()
                    && check_koliha_rakocevic(&m2f3, e, ep)?.all_hold();
            }
        }
        push("identity-sweep-m2f3", ok);
    }
    // Anti-commutator of any witness pair is invertible too.
    {
        let m2f3 = build_from_text("M(2,Z(3))", caps)?;
        let mut ok = true;
        for e in m2f3.idempotents() {
            for ep in m2f3.idempotents() {
                if m2f3.is_unit(commutator(&m2f3, e, ep)?)? {
                    ok &= m2f3.is_unit(anti_commutator(&m2f3, e, ep)?)?;
                }
            }
        }
        push("commutator-implies-anti-commutator", ok);
    }
    // Four-way criteria agreement on the fixture bases.
    {
        let mut ok = true;
        for base_src in ["Z(2)", "Z(3)", "Z(6)"] {
            let base = build_from_text(base_src, caps)?;
            ok &= m2_criteria(&base)?.all_agree();
        }
        push("four-way-criteria", ok);
    }

    let mut recheck_result = None;
    if recheck {
        // Emit the corner of a recognized ring as a table file, re-ingest
        // it, and demand the exact same Cayley tables back.
        let ring = build_from_text("M(2,Z(3))", caps)?;
        let verdict = parallel::decide(&ring, RingProperty::K, DecisionMethod::Brute, 1)?;
        let (e, ep) = verdict.witness.expect("M(2,Z(3)) has the property");
        let completer = ring.sub(e, ep)?;
        let h = idempotent_witness_to_squarezero(&ring, e, completer)?;
        let f = transform_witness(&ring, &h, WitnessKind::F)?;
        let mus = matrix_units_from_f_witness(&ring, f.elements[0], f.elements[1])?;
        let cert = m2_isomorphism(&ring, &mus)?;
        let rendered = table_file::render_table(&cert.corner);
        let raw = table_file::parse_table(&rendered)?;
        let rebuilt = RingBuilder::new()
            .with_caps(caps)
            .with_table("recheck", raw)
            .build(&RingExpr::Table {
                source: "recheck".into(),
            })?;
        let pass = table_file::render_table(&rebuilt) == rendered
            && rebuilt.cardinality() == cert.corner.cardinality();
        push("certificate-reingestion", pass);
        recheck_result = Some(pass);
    }

    let all_pass = results.iter().all(|(_, p)| *p);
    let payload = json!({
        "fixtures": results
            .iter()
            .map(|(name, pass)| json!({"name": name, "pass": pass}))
            .collect::<Vec<_>>(),
        "all_pass": all_pass,
        "recheck": recheck_result,
    });
    if !all_pass {
        return Err(CliError::Violations("fixture battery failed".into()));
    }
    Ok((None, payload))
}
