//! Command-line front end: parse groups and polynomials, dispatch to the
//! computation modules, and print text or JSON. Exit codes: 0 on success,
//! 1 on domain errors, 2 on usage errors.

use clap::{Parser, Subcommand};
use num_rational::Ratio;
use serde_json::{json, Map, Value};
use std::process::ExitCode;
use std::sync::Arc;

use tamelocal::badprimes::{bad_prime_set, bad_residues_sampled};
use tamelocal::group::parse::parse_group_text;
use tamelocal::group::FiniteGroup;
use tamelocal::idpairs::{count_tame_epimorphism_classes, enumerate_id_pairs, IdPair};
use tamelocal::locdim::classify;
use tamelocal::poly::parse_poly;
use tamelocal::qform::{decide, DiagonalQuadraticForm, Place};
use tamelocal::squares::{parametrize_multiquadratic, DEFAULT_TRIAL_CAP};
use tamelocal::textio::{parse_rational_csv, rational_string};
use tamelocal::{Error, Result};

#[derive(Parser)]
#[command(
    name = "tamelocal",
    version,
    about = "Exact tame local Galois data of finite groups over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the ID pairs of a group with their realizable residues.
    Idpairs {
        /// Group spec ('name: Q8', 'perm: ...', 'cayley: ...') or @file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Per-pair local realizability of one prime, decided both by the
    /// congruence classes and by the brute-force tame presentation search.
    Localext {
        #[arg(long)]
        group: String,
        /// The residue characteristic q.
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Count tame epimorphism classes onto the group at q.
    Countext {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Bad primes of a monic separable polynomial in Z[t][x].
    Badprimes {
        /// Polynomial text (grammar: integers, s/t/x, + - * ^) or @file.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Sampled bad residue classes of the parameter s at p, with the
    /// uniform bound constants.
    Badresidues {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u64,
        /// Lifts sampled per residue class.
        #[arg(long, default_value_t = 3)]
        lifts: u64,
        #[arg(long)]
        json: bool,
    },
    /// Cover a (Z/2)^5-extension by one of the eight parametrizing
    /// extensions.
    Parametrize {
        /// Five comma-separated rationals with independent square classes.
        #[arg(long)]
        a: String,
        /// Witness search box cap.
        #[arg(long, default_value_t = 128)]
        budget: i64,
        #[arg(long)]
        json: bool,
    },
    /// Isotropy of a diagonal quadratic form with witness or obstruction.
    Qform {
        /// 1 to 5 comma-separated nonzero rationals.
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value_t = 128)]
        budget: i64,
        #[arg(long)]
        json: bool,
    },
    /// Local-dimension report for a group.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = wants_json(&cli.command);
    match run(cli.command) {
        Ok(output) => {
            // A closed pipe downstream is not an error worth panicking over.
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json_mode {
                use std::io::Write;
                let _ = writeln!(std::io::stdout(), "{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}

fn wants_json(c: &Command) -> bool {
    match c {
        Command::Idpairs { json, .. }
        | Command::Localext { json, .. }
        | Command::Countext { json, .. }
        | Command::Badprimes { json, .. }
        | Command::Badresidues { json, .. }
        | Command::Parametrize { json, .. }
        | Command::Qform { json, .. }
        | Command::Classify { json, .. } => *json,
    }
}

/// Arguments may be '@file' to read from a file.
fn read_arg(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!(
            "cannot read {path}: {e}"
        )))
    } else {
        Ok(arg.to_string())
    }
}

fn load_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(parse_group_text(&read_arg(spec)?)?))
}

fn density_string(d: &Ratio<u64>) -> String {
    format!("{}/{}", d.numer(), d.denom())
}

fn pair_json(p: &IdPair) -> Value {
    let r = p.realizable_residues();
    json!({
        "I": p.inertia().elements(),
        "D": p.decomposition().elements(),
        "e": p.ramification_index(),
        "V_generators": p.image_generator().map(|g| vec![g]).unwrap_or_default(),
        "residues_mod_e": r.residues,
        "density": density_string(&r.density),
    })
}

fn pair_text(p: &IdPair) -> String {
    let r = p.realizable_residues();
    format!(
        "I = {:?}, D = {:?}, e = {}, residues mod {} = {:?}, density {}",
        p.inertia().elements(),
        p.decomposition().elements(),
        p.ramification_index(),
        r.modulus,
        r.residues,
        density_string(&r.density)
    )
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Idpairs { group, json } => {
            let g = load_group(&group)?;
            let pairs = enumerate_id_pairs(&g)?;
            if json {
                let v: Vec<Value> = pairs.iter().map(pair_json).collect();
                Ok(serde_json::to_string(&v).expect("serializable"))
            } else {
                let mut out = vec![format!(
                    "{} ID pair(s) of {} up to conjugacy:",
                    pairs.len(),
                    g.name().unwrap_or("the group")
                )];
                out.extend(pairs.iter().map(pair_text));
                Ok(out.join("\n"))
            }
        }
        Command::Localext { group, prime, json } => {
            let g = load_group(&group)?;
            let pairs = enumerate_id_pairs(&g)?;
            let mut rows = Vec::new();
            for p in &pairs {
                let brute = p.local_realizable_bruteforce(prime);
                let congruence = {
                    let r = p.realizable_residues();
                    let residue = if r.modulus == 1 { 0 } else { prime % r.modulus };
                    r.residues.contains(&residue)
                };
                match brute {
                    Ok(b) => rows.push((p, Some(b), congruence)),
                    Err(Error::WildPrime { .. }) => rows.push((p, None, congruence)),
                    Err(e) => return Err(e),
                }
            }
            if json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(p, brute, cong)| {
                        let mut m = pair_json(p);
                        let obj = m.as_object_mut().expect("object");
                        obj.insert(
                            "q".into(),
                            Value::Number(serde_json::Number::from(prime)),
                        );
                        obj.insert(
                            "realizable_bruteforce".into(),
                            brute.map(Value::Bool).unwrap_or(Value::String("wild".into())),
                        );
                        obj.insert("realizable_congruence".into(), Value::Bool(*cong));
                        m
                    })
                    .collect();
                Ok(serde_json::to_string(&v).expect("serializable"))
            } else {
                let mut out = vec![format!("local realizability at q = {prime}:")];
                for (p, brute, cong) in rows {
                    let b = match brute {
                        Some(true) => "realizable (brute force)",
                        Some(false) => "not realizable (brute force)",
                        None => "wild (q divides e)",
                    };
                    out.push(format!(
                        "{} | congruence: {} | {}",
                        pair_text(p),
                        cong,
                        b
                    ));
                }
                Ok(out.join("\n"))
            }
        }
        Command::Countext { group, prime, json } => {
            let g = load_group(&group)?;
            let classes = count_tame_epimorphism_classes(&g, prime)?;
            if json {
                Ok(json!({
                    "group": g.name().unwrap_or("?"),
                    "q": prime,
                    "classes": classes,
                })
                .to_string())
            } else {
                Ok(format!(
                    "{} tame epimorphism class(es) onto {} at q = {}",
                    classes,
                    g.name().unwrap_or("the group"),
                    prime
                ))
            }
        }
        Command::Badprimes { poly, json } => {
            let p = parse_poly(&read_arg(&poly)?)?;
            let report = bad_prime_set(&p)?;
            if json {
                let mut reasons = Map::new();
                for (prime, reason) in &report.reasons {
                    reasons.insert(prime.to_string(), Value::String(reason.as_str().into()));
                }
                Ok(json!({
                    "poly": report.poly.to_string(),
                    "discriminant": report.discriminant.to_string(),
                    "primes": report.primes,
                    "reasons": reasons,
                })
                .to_string())
            } else {
                let mut out = vec![format!(
                    "disc_x = {}",
                    report.discriminant
                )];
                if report.primes.is_empty() {
                    out.push("primes: none".into());
                } else {
                    out.push(format!(
                        "primes: {}",
                        report
                            .primes
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                    for (prime, reason) in &report.reasons {
                        out.push(format!("  {prime}: {}", reason.as_str()));
                    }
                }
                Ok(out.join("\n"))
            }
        }
        Command::Badresidues {
            poly,
            prime,
            lifts,
            json,
        } => {
            let p = parse_poly(&read_arg(&poly)?)?;
            let report = bad_residues_sampled(&p, prime, lifts)?;
            if json {
                let mut reasons = Map::new();
                for (residue, s0) in &report.witnesses {
                    reasons.insert(
                        residue.to_string(),
                        json!({ "s0": s0.to_string() }),
                    );
                }
                Ok(json!({
                    "poly": p.to_string(),
                    "p": report.p,
                    "a_P": report.constants.a_p,
                    "b_P": report.constants.b_p,
                    "d_P": report.constants.d_p,
                    "S_P": report.constants.s_p,
                    "p_in_S_P": report.p_in_s_p,
                    "bad_residues": report.bad_residues,
                    "reasons": reasons,
                })
                .to_string())
            } else {
                Ok(format!(
                    "p = {} | d_P = {} (a_P = {}, b_P = {}) | S_P = {:?}{} | bad residues: {:?}",
                    report.p,
                    report.constants.d_p,
                    report.constants.a_p,
                    report.constants.b_p,
                    report.constants.s_p,
                    if report.p_in_s_p {
                        " (p in S_P: bound not claimed)"
                    } else {
                        ""
                    },
                    report.bad_residues
                ))
            }
        }
        Command::Parametrize { a, budget, json } => {
            let values = parse_rational_csv(&read_arg(&a)?)?;
            if values.len() != 5 {
                return Err(Error::Precondition(format!(
                    "expected 5 rationals, got {}",
                    values.len()
                )));
            }
            let arr: [num_rational::BigRational; 5] =
                values.try_into().expect("length checked");
            let r = parametrize_multiquadratic(&arr, budget, DEFAULT_TRIAL_CAP)?;
            if json {
                Ok(json!({
                    "a": r.a.iter().map(rational_string).collect::<Vec<_>>(),
                    "i": r.i,
                    "sign": r.sign,
                    "permutation": r.permutation,
                    "t": r.t_values.iter().map(rational_string).collect::<Vec<_>>(),
                    "witness": r.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "verified": true,
                })
                .to_string())
            } else {
                Ok(format!(
                    "E(i = {}, sign = {}) covers the field: permutation {:?}, t = [{}], witness = {:?} (verified)",
                    r.i,
                    r.sign,
                    r.permutation,
                    r.t_values
                        .iter()
                        .map(rational_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                    r.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                ))
            }
        }
        Command::Qform { coeffs, budget, json } => {
            let values = parse_rational_csv(&read_arg(&coeffs)?)?;
            let form = DiagonalQuadraticForm::new(values)?;
            let cert = decide(&form, budget)?;
            if json {
                let mut m = Map::new();
                m.insert(
                    "coefficients".into(),
                    Value::Array(
                        form.coefficients()
                            .iter()
                            .map(|c| Value::String(rational_string(c)))
                            .collect(),
                    ),
                );
                m.insert("isotropic".into(), Value::Bool(cert.isotropic));
                if let Some(w) = &cert.witness {
                    m.insert(
                        "witness".into(),
                        Value::Array(
                            w.iter().map(|x| Value::String(x.to_string())).collect(),
                        ),
                    );
                }
                if let Some(place) = cert.obstruction_place {
                    let v = match place {
                        Place::Infinity => Value::String("infinity".into()),
                        Place::Finite(p) => {
                            Value::Number(serde_json::Number::from(p))
                        }
                    };
                    m.insert("obstruction".into(), v);
                }
                Ok(Value::Object(m).to_string())
            } else if cert.isotropic {
                Ok(format!(
                    "isotropic, witness {:?}",
                    cert.witness
                        .expect("witness accompanies isotropy")
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                ))
            } else {
                Ok(format!(
                    "anisotropic (obstruction at {})",
                    cert.obstruction_place.expect("obstruction accompanies anisotropy")
                ))
            }
        }
        Command::Classify { group, json } => {
            let g = load_group(&group)?;
            let report = classify(&g)?;
            if json {
                let mut profile = Map::new();
                for (p, kind) in &report.sylow_profile {
                    profile.insert(p.to_string(), Value::String(kind.as_str().into()));
                }
                Ok(json!({
                    "group_name": report.group_name,
                    "has_noncyclic_abelian": report.has_noncyclic_abelian,
                    "sylow_profile": profile,
                    "lower_bound": report.lower_bound.as_str(),
                    "matches_locdim1_classification": report.matches_locdim1_classification,
                })
                .to_string())
            } else {
                let profile = report
                    .sylow_profile
                    .iter()
                    .map(|(p, k)| format!("{p}: {}", k.as_str()))
                    .collect::<Vec<_>>()
                    .join(", ");
                Ok(format!(
                    "{} | noncyclic abelian subgroup: {} | local dimension: {} | sylow {{{}}} | matches locdim-1 shape: {}",
                    report.group_name,
                    report.has_noncyclic_abelian,
                    report.lower_bound.as_str(),
                    profile,
                    report.matches_locdim1_classification
                ))
            }
        }
    }
}
