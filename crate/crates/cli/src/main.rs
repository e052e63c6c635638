use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use dynnorm_core::cert::{leaf_certificates, tate_formula_certificate, tate_lemma_certificate, tree_json, Certificate};
use dynnorm_core::etale::{rf_normality_witness, QuotientAlg};
use dynnorm_core::kronecker::kronecker_cert;
use dynnorm_core::normality::{membership_witness_domain, membership_witness_nzd, membership_witness_pf};
use dynnorm_core::poly::{Poly, PolyRing};
use dynnorm_core::tree::{gcd_tree, show_frac, GcdTree, LeafData, NodeRing};
use dynnorm_core::verify::verify;
use dynnorm_core::{Elem, Error, IntegralRelation, Limits, Ring};

/// Constructive normality witnesses with checkable certificates.
#[derive(Parser)]
#[command(name = "dynnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dynamic gcd tree of P and Q, as JSON or DOT.
    Gcdtree {
        #[command(flatten)]
        input: Input,
        /// Emit Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// H1 with P = Q·H1 by the gcd-tree route (rings without zero divisors).
    Witness(Input),
    /// H1 with P = Q·H1 over a pf-ring, with the comaximal gluing data.
    WitnessPf(Input),
    /// H1 with P = Q·H1 by division over the fraction field (domains).
    WitnessDomain(Input),
    /// Integrality certificates for the coefficients of g from f = g·h.
    Kronecker(Input),
    /// Tate's trace identity for v in R[X]/⟨f⟩; with --a, divides by a.
    Tate(Input),
    /// Witness w with f′ᴺ·p = q·w in R[X]/⟨f⟩.
    RfWitness(Input),
    /// Checks certificates; reads one certificate or an array of them.
    Verify {
        /// Certificate file; stdin when absent or `-`.
        file: Option<String>,
    },
    /// Runs the gcd tree of X² and aX + b over Q[a,b] and prints its leaves.
    Selftest,
}

/// Problem data. Every field is a JSON value given inline or as `@path`;
/// `--input` supplies an object with the same keys, flags take precedence.
#[derive(Args, Default)]
struct Input {
    /// JSON object with any of: ring, p, q, rel, f, g, h, v, a, extra.
    #[arg(long)]
    input: Option<String>,
    /// Ring spec, e.g. '{"ring":"Int"}'.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Integral relation coefficients [A₁, …, Aₙ] as polynomials.
    #[arg(long)]
    rel: Option<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    a: Option<String>,
    /// Extra denominators for rf-witness, as polynomials.
    #[arg(long)]
    extra: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

enum Failure {
    Core(Error),
    Verify(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Io(_) => 2,
            Failure::Core(e) => match e {
                Error::Parse(_) => 2,
                Error::UnsupportedCapability(_) => 3,
                Error::ResourceLimit(_) | Error::OrbitTooLarge { .. } => 4,
                _ => 1,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(Error::RelationInvalid) => format!("RelationInvalid: {}", Error::RelationInvalid),
            Failure::Core(e) => e.to_string(),
            Failure::Verify(m) | Failure::Io(m) => m.clone(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_source(src: &str) -> Run<String> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(|e| Failure::Io(format!("{src}: {e}")))
    }
}

fn parse_json(text: &str, what: &str) -> Run<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")).into())
}

struct Problem {
    fields: Map<String, Value>,
    out: Option<String>,
}

impl Problem {
    fn load(input: &Input) -> Run<Self> {
        let mut fields = match &input.input {
            Some(src) => match parse_json(&read_source(src)?, "--input")? {
                Value::Object(m) => m,
                _ => return Err(Error::Parse("--input must hold a JSON object".into()).into()),
            },
            None => Map::new(),
        };
        let flags = [
            ("ring", &input.ring),
            ("p", &input.p),
            ("q", &input.q),
            ("rel", &input.rel),
            ("f", &input.f),
            ("g", &input.g),
            ("h", &input.h),
            ("v", &input.v),
            ("a", &input.a),
            ("extra", &input.extra),
        ];
        for (key, flag) in flags {
            if let Some(text) = flag {
                let text = match text.strip_prefix('@') {
                    Some(path) => read_source(path)?,
                    None => text.clone(),
                };
                // bare element strings such as --a 2 or --a 1+w are allowed
                let value = serde_json::from_str(&text).unwrap_or(Value::String(text));
                fields.insert(key.to_string(), value);
            }
        }
        Ok(Problem { fields, out: input.out.clone() })
    }

    fn get(&self, key: &str) -> Run<&Value> {
        self.fields.get(key).ok_or_else(|| Error::Parse(format!("missing `{key}`")).into())
    }

    fn ring(&self) -> Run<Ring> {
        Ok(Ring::from_json_value(self.get("ring")?)?)
    }

    fn poly(&self, r: &Ring, key: &str) -> Run<Poly<Elem>> {
        PolyRing::new(r.clone()).from_json(self.get(key)?).map_err(|e| Error::Parse(format!("`{key}`: {e}")).into())
    }

    fn polys(&self, r: &Ring, key: &str) -> Run<Vec<Poly<Elem>>> {
        let pr = PolyRing::new(r.clone());
        let Some(v) = self.fields.get(key) else { return Ok(Vec::new()) };
        let arr = v.as_array().ok_or_else(|| Error::Parse(format!("`{key}` must be an array of polynomials")))?;
        arr.iter()
            .map(|f| pr.from_json(f).map_err(|e| Error::Parse(format!("`{key}`: {e}")).into()))
            .collect()
    }

    fn emit(&self, text: &str) -> Run<()> {
        write_out(&self.out, text)
    }
}

fn write_out(out: &Option<String>, text: &str) -> Run<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Failure::Io(format!("{path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn certs_json(certs: &[Certificate]) -> String {
    serde_json::to_string_pretty(certs).expect("certificates serialize")
}

fn gcdtree(input: &Input, dot: bool, limits: &Limits) -> Run<()> {
    let pb = Problem::load(input)?;
    let r = pb.ring()?;
    let (p, q) = (pb.poly(&r, "p")?, pb.poly(&r, "q")?);
    let tree = gcd_tree(&p, &q, NodeRing::root(r.clone()), limits)?;
    if dot {
        pb.emit(tree.to_dot().trim_end())
    } else {
        pb.emit(&serde_json::to_string_pretty(&tree_json(&r, &tree, &p, &q)).expect("tree serializes"))
    }
}

fn witness(input: &Input, route: &str, limits: &Limits) -> Run<()> {
    let pb = Problem::load(input)?;
    let r = pb.ring()?;
    let (p, q) = (pb.poly(&r, "p")?, pb.poly(&r, "q")?);
    let rel = pb.polys(&r, "rel")?;
    let relation = IntegralRelation::new(rel.clone());
    let certs = match route {
        "nzd" => vec![Certificate::membership(&r, &p, &q, &rel, &membership_witness_nzd(&r, &p, &q, &relation, limits)?)],
        "domain" => vec![Certificate::membership(&r, &p, &q, &rel, &membership_witness_domain(&r, &p, &q, &relation)?)],
        _ => {
            let (w, cert) = membership_witness_pf(&r, &p, &q, &relation, limits)?;
            vec![Certificate::membership(&r, &p, &q, &rel, &w), Certificate::comaximal(&r, &p, &q, &cert)]
        }
    };
    pb.emit(&certs_json(&certs))
}

fn kronecker(input: &Input, limits: &Limits) -> Run<()> {
    let pb = Problem::load(input)?;
    let r = pb.ring()?;
    let (g, f, h) = (pb.poly(&r, "g")?, pb.poly(&r, "f")?, pb.poly(&r, "h")?);
    let certs: Vec<Certificate> = kronecker_cert(&r, &g, &f, &h, limits)?.iter().map(|c| Certificate::integral(&r, c)).collect();
    pb.emit(&certs_json(&certs))
}

fn tate(input: &Input) -> Run<()> {
    let pb = Problem::load(input)?;
    let r = pb.ring()?;
    let (f, v) = (pb.poly(&r, "f")?, pb.poly(&r, "v")?);
    let s = QuotientAlg::new(r.clone(), f)?;
    let v = s.reduce(&v);
    let cert = match pb.fields.get("a") {
        None => tate_formula_certificate(&s, &v),
        Some(a) => {
            let a = r.elem_from_json(a)?;
            let rel = pb.polys(&r, "rel")?;
            let w = s.tate_lemma_witness(&v, &a, &rel)?;
            tate_lemma_certificate(&s, &v, &a, &rel, &w)
        }
    };
    pb.emit(&cert.to_json_string())
}

fn rf_witness(input: &Input, limits: &Limits) -> Run<()> {
    let pb = Problem::load(input)?;
    let r = pb.ring()?;
    let (f, p, q) = (pb.poly(&r, "f")?, pb.poly(&r, "p")?, pb.poly(&r, "q")?);
    let rel = pb.polys(&r, "rel")?;
    let extra = pb.polys(&r, "extra")?;
    let w = rf_normality_witness(&r, &f, &p, &q, &rel, &extra, limits)?;
    pb.emit(&Certificate::rf(&r, &f, &p, &q, &rel, &extra, &w).to_json_string())
}

fn verify_cmd(file: &Option<String>) -> Run<()> {
    let text = read_source(file.as_deref().unwrap_or("-"))?;
    let certs: Vec<Certificate> = match parse_json(&text, "certificate")? {
        Value::Array(items) => items
            .into_iter()
            .map(|v| serde_json::from_value(v).map_err(|e| Error::Parse(format!("certificate: {e}"))))
            .collect::<Result<_, _>>()?,
        v => vec![serde_json::from_value(v).map_err(|e| Error::Parse(format!("certificate: {e}")))?],
    };
    let mut failed = 0;
    for cert in &certs {
        let report = verify(cert)?;
        println!("{}", report.to_string().trim_end());
        if !report.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} of {} certificates failed", certs.len())));
    }
    Ok(())
}

fn selftest(limits: &Limits) -> Run<()> {
    let r = Ring::from_json_value(&json!({"ring": "MPolyQ", "vars": ["a", "b"]}))?;
    let pr = PolyRing::new(r.clone());
    let p = pr.parse(&["0", "0", "1"])?;
    let q = pr.parse(&["b", "a"])?;
    let tree = gcd_tree(&p, &q, NodeRing::root(r.clone()), limits)?;
    println!("P = {}, Q = {} over {}", pr.show(&p), pr.show(&q), r.name());
    for leaf in tree.leaves() {
        match leaf {
            GcdTree::Leaf { node, data: LeafData::Cert(c) } => {
                let show = |f: &Poly<_>| -> String {
                    let cs: Vec<String> = f.coeffs().iter().map(|x| show_frac(&r, node, x)).collect();
                    format!("[{}]", cs.join(", "))
                };
                println!("S{}: G = {}  A = {}  B = {}", node.path, show(&c.g), show(&c.a), show(&c.b));
            }
            GcdTree::Leaf { node, .. } => println!("S{}: P = Q = 0", node.path),
            GcdTree::Trivial { node } => println!("S{}: trivial", node.path),
            GcdTree::Branch { .. } => unreachable!("leaves() yields no branches"),
        }
    }
    let certs = leaf_certificates(&r, &tree, &p, &q);
    for cert in &certs {
        let report = verify(cert)?;
        if !report.passed() {
            println!("{}", report.to_string().trim_end());
            return Err(Failure::Verify("a leaf certificate failed".into()));
        }
    }
    println!("{} leaf certificates verify", certs.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let result = match &cli.command {
        Command::Gcdtree { input, dot } => gcdtree(input, *dot, &limits),
        Command::Witness(input) => witness(input, "nzd", &limits),
        Command::WitnessPf(input) => witness(input, "pf", &limits),
        Command::WitnessDomain(input) => witness(input, "domain", &limits),
        Command::Kronecker(input) => kronecker(input, &limits),
        Command::Tate(input) => tate(input),
        Command::RfWitness(input) => rf_witness(input, &limits),
        Command::Verify { file } => verify_cmd(file),
        Command::Selftest => selftest(&limits),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dynnorm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
