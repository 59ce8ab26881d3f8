//! Problem files, result documents, and command dispatch.
//!
//! A problem file is a single JSON document naming the prime, the variables,
//! and the generators as expression strings, plus the per-command optional
//! fields. All exact values serialize as strings (rationals as `a/b`,
//! polynomials in canonical expression form), so no consumer ever sees a
//! float. Sets are sorted canonically before emission, which makes outputs
//! byte-stable across runs.
//!
//! For `wnf` the first generator is the polynomial to reduce and the rest
//! are the divisors; `terms-p` reads just the first generator.

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational, ValuedField};
use crate::error::{Error, Result};
use crate::fan::{groebner_fan, tropical_scan, GroebnerCone};
use crate::gb::local_gb;
use crate::order::{leading_term, LogRadii, TieBreak};
use crate::parse::{parse_polynomial, print_polynomial};
use crate::poly::{Polynomial, Ring};
use crate::polyhedral::{
    mora_wnf, terms_p_principal, PolyhedralDomain, WnfStatus,
};
use crate::uagb::{test_uagb, uagb};

#[derive(Debug, Clone, Deserialize)]
pub struct ProblemFile {
    pub prime: i64,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub log_radii: Option<Vec<String>>,
    #[serde(default)]
    pub polyhedron_vertices: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub weight: Option<Vec<String>>,
    #[serde(default)]
    pub cap: Option<String>,
    #[serde(default)]
    pub tie_break: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gb,
    Uagb,
    TestUagb,
    Fan,
    Tropical,
    Wnf,
    TermsP,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Uagb => "uagb",
            Command::TestUagb => "test-uagb",
            Command::Fan => "fan",
            Command::Tropical => "tropical",
            Command::Wnf => "wnf",
            Command::TermsP => "terms-p",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        match s {
            "gb" => Some(Command::Gb),
            "uagb" => Some(Command::Uagb),
            "test-uagb" => Some(Command::TestUagb),
            "fan" => Some(Command::Fan),
            "tropical" => Some(Command::Tropical),
            "wnf" => Some(Command::Wnf),
            "terms-p" => Some(Command::TermsP),
            _ => None,
        }
    }
}

/// Flag overrides; a flag wins over the corresponding file field.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub cap: Option<String>,
    pub tie_break: Option<String>,
    pub emit_certificates: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeDoc {
    pub equalities: Vec<Vec<String>>,
    pub inequalities: Vec<Vec<String>>,
    pub sample: Vec<String>,
    pub initial_forms: Vec<String>,
    pub monomial_free: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexCheckDoc {
    pub vertex: Vec<String>,
    pub direction: Vec<String>,
    pub log_radii: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WnfCertificateDoc {
    pub multiplier: String,
    pub cofactors: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Gb {
        log_radii: Vec<String>,
        generators: Vec<String>,
        leading_terms: Vec<String>,
        reduced: bool,
    },
    Uagb {
        generators: Vec<String>,
        growth_rounds: usize,
        vertex_count: usize,
    },
    TestUagb {
        verdict: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Vec<String>>,
        vertex_count: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        checks: Option<Vec<VertexCheckDoc>>,
    },
    Fan {
        cones: Vec<ConeDoc>,
    },
    Tropical {
        cones: Vec<ConeDoc>,
        monomial_free_count: usize,
    },
    Wnf {
        status: String,
        remainder: String,
        steps: usize,
        cap: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        certificate: Option<WnfCertificateDoc>,
    },
    TermsP {
        terms: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResultDocument {
    pub command: String,
    pub prime: String,
    pub variables: Vec<String>,
    pub tie_break: String,
    pub result: CommandResult,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize")
    }
}

fn rationals(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn parse_rational_vec(values: &[String], expected: usize, what: &str) -> Result<Vec<Rational>> {
    if values.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: values.len() });
    }
    values
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset,
                message: format!("{what}: {message}"),
            },
            other => other,
        })
}

fn cone_doc(cone: &GroebnerCone, monomial_free: bool) -> ConeDoc {
    ConeDoc {
        equalities: cone.equalities.iter().map(|h| rationals(h)).collect(),
        inequalities: cone.strict.iter().map(|h| rationals(h)).collect(),
        sample: rationals(&cone.sample.0),
        initial_forms: cone.initial_forms.iter().map(print_polynomial).collect(),
        monomial_free,
    }
}

struct Context {
    ring: Ring,
    generators: Vec<Polynomial>,
    tie: TieBreak,
    log_radii: Option<LogRadii>,
    domain: Option<PolyhedralDomain>,
    cap: Rational,
}

fn build_context(file: &ProblemFile, opts: &RunOptions) -> Result<Context> {
    let field = ValuedField::new(file.prime)?;
    let ring = Ring::new(file.variables.clone(), field)?;
    if file.generators.is_empty() {
        return Err(Error::Problem("at least one generator required".into()));
    }
    let generators = file
        .generators
        .iter()
        .map(|src| parse_polynomial(src, &ring))
        .collect::<Result<Vec<_>>>()?;
    let tie_name = opts
        .tie_break
        .as_deref()
        .or(file.tie_break.as_deref())
        .unwrap_or("grevlex");
    let tie = TieBreak::from_name(tie_name)
        .ok_or_else(|| Error::Problem(format!("unknown tie-break {tie_name:?}")))?;
    let log_radii = match &file.log_radii {
        Some(values) => Some(LogRadii(parse_rational_vec(
            values,
            ring.n_vars(),
            "log_radii",
        )?)),
        // a system of weights determines compatible log-radii
        None => match &file.weight {
            None => None,
            Some(values) => {
                let w = crate::fan::WeightVector::new(parse_rational_vec(
                    values,
                    ring.n_vars() + 1,
                    "weight",
                )?)?;
                Some(crate::fan::compatible_radii(&w))
            }
        },
    };
    let domain = match &file.polyhedron_vertices {
        None => None,
        Some(rows) => {
            let vertices = rows
                .iter()
                .map(|row| parse_rational_vec(row, ring.n_vars(), "polyhedron_vertices"))
                .collect::<Result<Vec<_>>>()?;
            Some(PolyhedralDomain::new(vertices)?)
        }
    };
    let cap = match opts.cap.as_deref().or(file.cap.as_deref()) {
        None => Rational::from_integer(50.into()),
        Some(s) => parse_rational(s)?,
    };
    Ok(Context { ring, generators, tie, log_radii, domain, cap })
}

/// Runs one command against a problem file and produces the result document.
/// Deterministic for fixed inputs; every set is canonically sorted.
pub fn run(command: Command, file: &ProblemFile, opts: &RunOptions) -> Result<ResultDocument> {
    let ctx = build_context(file, opts)?;
    let result = match command {
        Command::Gb => run_gb(&ctx)?,
        Command::Uagb => run_uagb(&ctx)?,
        Command::TestUagb => run_test_uagb(&ctx, opts)?,
        Command::Fan => run_fan(&ctx)?,
        Command::Tropical => run_tropical(&ctx)?,
        Command::Wnf => run_wnf(&ctx, opts)?,
        Command::TermsP => run_terms_p(&ctx)?,
    };
    Ok(ResultDocument {
        command: command.name().to_string(),
        prime: ctx.ring.field().prime().to_string(),
        variables: ctx.ring.variables().to_vec(),
        tie_break: ctx.tie.name().to_string(),
        result,
    })
}

fn require_radii(ctx: &Context) -> Result<&LogRadii> {
    ctx.log_radii
        .as_ref()
        .ok_or_else(|| Error::Problem("this command needs the log_radii or weight field".into()))
}

fn require_domain(ctx: &Context) -> Result<&PolyhedralDomain> {
    ctx.domain
        .as_ref()
        .ok_or_else(|| Error::Problem("this command needs the polyhedron_vertices field".into()))
}

fn run_gb(ctx: &Context) -> Result<CommandResult> {
    let radii = require_radii(ctx)?;
    let basis = local_gb(&ctx.generators, radii, ctx.tie)?;
    let leading_terms = basis
        .generators
        .iter()
        .map(|g| {
            leading_term(g, &basis.order)
                .map(|t| print_polynomial(&Polynomial::from_terms(&ctx.ring, vec![t])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CommandResult::Gb {
        log_radii: rationals(&radii.0),
        generators: basis.generators.iter().map(print_polynomial).collect(),
        leading_terms,
        reduced: basis.reduced,
    })
}

fn run_uagb(ctx: &Context) -> Result<CommandResult> {
    let field = ctx.ring.field().clone();
    let res = uagb(&ctx.generators, &field, ctx.tie)?;
    Ok(CommandResult::Uagb {
        generators: res.generators.iter().map(print_polynomial).collect(),
        growth_rounds: res.rounds.len(),
        vertex_count: res.final_vertex_count,
    })
}

fn run_test_uagb(ctx: &Context, opts: &RunOptions) -> Result<CommandResult> {
    let field = ctx.ring.field().clone();
    let report = test_uagb(&ctx.generators, &field, ctx.tie)?;
    let checks = opts.emit_certificates.then(|| {
        report
            .checks
            .iter()
            .map(|c| VertexCheckDoc {
                vertex: rationals(&c.certificate.vertex),
                direction: rationals(&c.certificate.direction),
                log_radii: rationals(&c.radii.0),
                passed: c.passed,
            })
            .collect()
    });
    Ok(CommandResult::TestUagb {
        verdict: report.verdict,
        witness: report.witness.as_ref().map(|r| rationals(&r.0)),
        vertex_count: report.vertex_count,
        checks,
    })
}

fn run_fan(ctx: &Context) -> Result<CommandResult> {
    let cones = groebner_fan(&ctx.generators, ctx.tie)?;
    // weights defining a monomial order always carry a monomial initial ideal
    Ok(CommandResult::Fan {
        cones: cones.iter().map(|c| cone_doc(c, false)).collect(),
    })
}

fn run_tropical(ctx: &Context) -> Result<CommandResult> {
    let flagged = tropical_scan(&ctx.generators, ctx.tie)?;
    let monomial_free_count = flagged.iter().filter(|(_, free)| *free).count();
    Ok(CommandResult::Tropical {
        cones: flagged
            .iter()
            .map(|(c, free)| cone_doc(c, *free))
            .collect(),
        monomial_free_count,
    })
}

fn run_wnf(ctx: &Context, opts: &RunOptions) -> Result<CommandResult> {
    let domain = require_domain(ctx)?;
    let radii = require_radii(ctx)?;
    let target = &ctx.generators[0];
    let divisors = &ctx.generators[1..];
    let res = mora_wnf(target, divisors, domain, radii, &ctx.cap, ctx.tie)?;
    let status = match res.status {
        WnfStatus::Exact => "exact",
        WnfStatus::ConvergedToZeroAtCap => "converged_to_zero_at_cap",
    };
    let certificate = opts.emit_certificates.then(|| WnfCertificateDoc {
        multiplier: print_polynomial(&res.multiplier),
        cofactors: res.cofactors.iter().map(print_polynomial).collect(),
    });
    Ok(CommandResult::Wnf {
        status: status.to_string(),
        remainder: print_polynomial(&res.remainder),
        steps: res.steps,
        cap: format_rational(&res.cap),
        certificate,
    })
}

fn run_terms_p(ctx: &Context) -> Result<CommandResult> {
    let domain = require_domain(ctx)?;
    let field = ctx.ring.field().clone();
    let target = &ctx.generators[0];
    let terms = terms_p_principal(target, domain, &field)?;
    let polys = crate::polyhedral::terms_as_polynomials(&ctx.ring, &terms);
    Ok(CommandResult::TermsP {
        terms: polys.iter().map(print_polynomial).collect(),
    })
}
