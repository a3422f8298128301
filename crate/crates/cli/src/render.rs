use std::io::Write;

use h2knot_core::{self as core, berge::WitnessReport, obstruction::Failure, ExactRational, Sign, TwoBridgeLink};
use serde::Serialize;

use crate::{CliError, CliResult, Format};

fn no_csv(cmd: &str) -> CliError {
    CliError::Usage(format!("--format csv is not available for `{cmd}`"))
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn fraction(v: &ExactRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

fn seq(values: &[ExactRational]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn csv_classification_header(out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "p,q,lower,upper,exact")?;
    Ok(())
}

fn csv_classification(out: &mut dyn Write, c: &core::U2Classification) -> CliResult<()> {
    let exact = c.exact.map(|e| e.to_string()).unwrap_or_default();
    writeln!(out, "{},{},{},{},{}", c.p, c.q, c.lower, c.upper, exact)?;
    Ok(())
}

pub fn u2(link: &TwoBridgeLink, kmax: Option<u64>, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let c = core::composite::u2_classify_with(link, kmax);
    match fmt {
        Format::Json => json_line(out, &c),
        Format::Csv => {
            csv_classification_header(out)?;
            csv_classification(out, &c)
        }
        Format::Text => {
            writeln!(out, "link: {link}  (double branched cover L({}, {}))", link.p(), link.q())?;
            writeln!(out, "continued fraction: {}", core::cf_expand(link)?)?;
            if !link.is_unknot() {
                let (_, ws) = core::u2_is_one_2bridge(link, kmax)?;
                match ws.first() {
                    Some(w) => writeln!(out, "berge witness: {w}")?,
                    None => writeln!(out, "berge witness: none with k <= {}", kmax.unwrap_or(link.p()))?,
                }
            }
            writeln!(out, "lower bound: {}", c.lower)?;
            writeln!(out, "upper bound: {}", c.upper)?;
            writeln!(out, "provenance: {}", c.provenance.join(", "))?;
            writeln!(out, "{c}")?;
            Ok(())
        }
    }
}

pub fn berge(alpha: u64, beta: i64, kmax: Option<u64>, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let witnesses = core::find_berge_witnesses(alpha, beta, kmax)?;
    let report = WitnessReport {
        alpha,
        beta: beta.rem_euclid(alpha as i64) as u64,
        k_max: kmax.unwrap_or(alpha),
        witnesses,
    };
    match fmt {
        Format::Json => json_line(out, &report),
        Format::Csv => Err(no_csv("berge")),
        Format::Text => {
            writeln!(out, "L({}, {}), k <= {}: {} witness(es)", report.alpha, report.beta, report.k_max, report.witnesses.len())?;
            for w in &report.witnesses {
                writeln!(out, "  {w}")?;
            }
            Ok(())
        }
    }
}

pub fn dtable(link: &TwoBridgeLink, raw: bool, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let table = if raw {
        let values = core::d_lens_raw(link.p(), link.q())?;
        core::CorrectionTable::from_values(link.p(), link.q(), false, values)?
    } else {
        core::d_lens(link)?
    };
    match fmt {
        Format::Json => json_line(out, &table),
        Format::Csv => {
            write!(out, "{}", table.to_csv())?;
            Ok(())
        }
        Format::Text => {
            let label = if table.is_labeled() { "i" } else { "j" };
            writeln!(out, "d(L({}, {}), {label})", table.p(), table.q())?;
            for (i, v) in table.values().iter().enumerate() {
                writeln!(out, "{i:>4}  {}", fraction(v))?;
            }
            Ok(())
        }
    }
}

fn failure_text(f: Failure) -> &'static str {
    match f {
        Failure::NonInteger => "non-integer",
        Failure::OddInteger => "odd",
        Failure::Negative => "negative",
        Failure::None => "ok",
    }
}

pub fn matching(link: &TwoBridgeLink, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let table = core::d_lens(link)?;
    let report = core::matching_exists(&table)?;
    match fmt {
        Format::Json => json_line(out, &report),
        Format::Csv => {
            writeln!(out, "epsilon,u,first_failure,failure_at")?;
            for d in &report.diagnostics {
                let at: Vec<String> = d.failure_at.iter().map(|i| i.to_string()).collect();
                writeln!(out, "{},{},{:?},{}", d.epsilon.value(), d.u, d.first_failure, at.join(" "))?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "L({}, {}): {} (epsilon, u) pairs tried", report.p, report.q, report.diagnostics.len())?;
            let passing: Vec<_> = report.parity_passing().collect();
            if passing.is_empty() {
                writeln!(out, "no pair passes the parity test")?;
            }
            for d in passing {
                let at: Vec<String> = d.failure_at.iter().map(|i| i.to_string()).collect();
                let tail = if d.first_failure == Failure::None {
                    String::new()
                } else {
                    format!("  {} at i = {}", failure_text(d.first_failure), at.join(", "))
                };
                writeln!(out, "epsilon={} u={}: I = {}{tail}", d.epsilon, d.u, seq(&d.values))?;
            }
            if report.feasible {
                let pairs: Vec<String> = report.feasible_pairs.iter().map(|(e, u)| format!("({e}, {u})")).collect();
                writeln!(out, "feasible: even nonnegative matching for {}; u2 = 1 not obstructed", pairs.join(", "))?;
            } else {
                writeln!(out, "infeasible: no even nonnegative matching; u2 > 1")?;
            }
            Ok(())
        }
    }
}

pub fn transfer(link: &TwoBridgeLink, assumption: core::TransferAssumption, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let r = core::transfer_obstruction(link, assumption)?;
    match fmt {
        Format::Json => json_line(out, &r),
        Format::Csv => Err(no_csv("transfer")),
        Format::Text => {
            let what = match assumption {
                core::TransferAssumption::NegToPos => "d(Sigma(K)) - d(L) nonnegative and even",
                core::TransferAssumption::Amphicheiral => "d(Sigma(K)) = d(L)",
            };
            writeln!(out, "K with Sigma(K) = S^3_{{{}/{}}}(C), assuming {what}", r.p, r.q)?;
            let plus_parity = r.certificate.iter().filter(|c| c.epsilon == Sign::Plus && c.failure.is_parity()).count();
            let minus: Vec<_> = r.certificate.iter().filter(|c| c.epsilon == Sign::Minus).collect();
            let minus_parity = minus.iter().filter(|c| c.failure.is_parity()).count();
            writeln!(out, "epsilon=+1: {plus_parity} of {} pairs fail parity", r.certificate.len() - minus.len())?;
            writeln!(out, "epsilon=-1: {minus_parity} of {} pairs fail parity", minus.len())?;
            for c in r.certificate.iter().filter(|c| !c.failure.is_parity()) {
                let status = if c.persists { "persists" } else { "may be lifted" };
                writeln!(out, "  epsilon={} u={}: {} ({status})", c.epsilon, c.u, failure_text(c.failure))?;
            }
            writeln!(out, "upper bound: u2(K) <= {}", r.upper_bound)?;
            match r.exact {
                Some(v) => writeln!(out, "u2(K) = {v}")?,
                None => writeln!(out, "conclusion: {}", r.conclusion)?,
            }
            Ok(())
        }
    }
}

pub fn composite(l1: &TwoBridgeLink, l2: &TwoBridgeLink, mirror: bool, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let v = core::composite_u2_one(l1, l2, mirror)?;
    match fmt {
        Format::Json => json_line(out, &v),
        Format::Csv => Err(no_csv("composite")),
        Format::Text => {
            writeln!(out, "{l1} # {l2}{}", if mirror { " (up to mirror)" } else { "" })?;
            for w in v.witness.iter().chain(&v.alternatives) {
                match *w {
                    core::CompositeWitness::CaseA { swapped, inverse, mirrored } => writeln!(
                        out,
                        "  case A: swapped={swapped} inverse={inverse} mirrored={mirrored}"
                    )?,
                    core::CompositeWitness::CaseB { swapped, inverse, mirrored, v, epsilon, a, b } => writeln!(
                        out,
                        "  case B: v={v} epsilon={epsilon} a={a} b={b} swapped={swapped} inverse={inverse} mirrored={mirrored}"
                    )?,
                }
            }
            writeln!(out, "{v}")?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BoundRecord {
    p: u64,
    q: u64,
    upper: u64,
}

pub fn bound(link: &TwoBridgeLink, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let upper = core::u2_upper_bound(link);
    match fmt {
        Format::Json => json_line(out, &BoundRecord { p: link.p(), q: link.q(), upper }),
        Format::Csv => {
            writeln!(out, "p,q,upper")?;
            writeln!(out, "{},{},{upper}", link.p(), link.q())?;
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{link} = C{}", core::cf_expand(link)?)?;
            writeln!(out, "u2 <= {upper}")?;
            Ok(())
        }
    }
}

pub fn enumeration(records: &[core::U2Classification], fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    match fmt {
        Format::Json => records.iter().try_for_each(|r| json_line(out, r)),
        Format::Csv => {
            csv_classification_header(out)?;
            records.iter().try_for_each(|r| csv_classification(out, r))
        }
        Format::Text => {
            for r in records {
                writeln!(out, "S({}, {})  {r}", r.p, r.q)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
pub(crate) struct CatalogCheck {
    pub name: &'static str,
    p: u64,
    q: u64,
    expected_u2: u64,
    u2: Option<u64>,
    witness: Option<core::BergeWitness>,
    pub ok: bool,
}

pub(crate) fn check_catalog() -> CliResult<Vec<CatalogCheck>> {
    core::CATALOG
        .iter()
        .map(|e| {
            let l = core::normalize(e.p, e.q)?;
            let c = core::u2_classify(&l);
            let ws = if l.is_unknot() { Vec::new() } else { core::u2_is_one_2bridge(&l, None)?.1 };
            let witness = match e.expected_witness {
                Some(x) => ws.iter().find(|w| w.family() == x.family && w.k == x.k && w.params.d() == Some(x.d)).copied(),
                None => None,
            };
            let ok = c.exact == Some(e.expected_u2) && (e.expected_witness.is_none() || witness.is_some());
            Ok(CatalogCheck { name: e.name, p: l.p(), q: l.q(), expected_u2: e.expected_u2, u2: c.exact, witness, ok })
        })
        .collect()
}

pub fn catalog(fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let checks = check_catalog()?;
    match fmt {
        Format::Json => json_line(out, &checks)?,
        Format::Csv => {
            writeln!(out, "name,p,q,expected_u2,u2,ok")?;
            for c in &checks {
                let u2 = c.u2.map(|v| v.to_string()).unwrap_or_default();
                writeln!(out, "{},{},{},{},{u2},{}", c.name, c.p, c.q, c.expected_u2, c.ok)?;
            }
        }
        Format::Text => {
            for c in &checks {
                let got = c.u2.map(|v| v.to_string()).unwrap_or_else(|| "?".into());
                let wit = c.witness.map(|w| format!("  [{w}]")).unwrap_or_default();
                let mark = if c.ok { "ok" } else { "MISMATCH" };
                writeln!(out, "{:<8} S({}, {})  u2 = {got} (expected {}){wit}  {mark}", c.name, c.p, c.q, c.expected_u2)?;
            }
        }
    }
    Ok(if checks.iter().all(|c| c.ok) { 0 } else { 3 })
}
