//! Command-line front end. [`run`] returns the exit code and the text to print,
//! so tests can drive it without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure or engine error, 2 usage error.

use std::cmp::Ordering;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::amitsur::{
    self, def31_check, lemma34_offenders, leading_ideal_family, parse_r, prop32_extract, thm35_witness, IdealFamily,
    PidExtension, StartMode,
};
use crate::center::{center_upto, invariant_field};
use crate::error::{Error, Result};
use crate::leftideal::{
    eliminate, member_bruteforce, slice_basis, slice_intersection_dim, staircase, LeftIdeal, Membership,
};
use crate::module::{quotient_module, ENUMERATION_BOUND};
use crate::monomials::{order_sanity, MultiIndex, OrderKind, TermOrder};
use crate::orepoly::OreRing;
use crate::pipeline::{cor47_pipeline, prop43_demo, weyl_demo};
use crate::skewring::SkewRing;

const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug)]
#[command(name = "skewalg", about = "Skew polynomial rings, left ideals and simple modules")]
struct Cli {
    /// Print JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Ring descriptor validation.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Polynomial arithmetic in a skew ring.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Term order comparisons and sanity checks.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Left ideals: Groebner bases, membership, elimination.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Extension condition over F_p[y]: check, witness, extract, offenders.
    #[command(name = "as", subcommand)]
    As(AsCmd),
    /// Center and invariant field of a ring.
    #[command(subcommand)]
    Center(CenterCmd),
    /// Quotient modules `S / I` and their simplicity.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// End-to-end runs on fixed small rings.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Args, Debug)]
struct RingArg {
    /// Ring descriptor: a JSON file, inline JSON, `weyl`, or `frob:P:K:N`.
    #[arg(long)]
    ring: String,
}

#[derive(Args, Debug)]
struct IdealArg {
    #[command(flatten)]
    ring: RingArg,
    /// JSON list of generator strings, as a file or inline.
    #[arg(long)]
    ideal: String,
}

#[derive(Subcommand, Debug)]
enum RingCmd {
    /// Validate a descriptor and test its ring axioms on random samples.
    Check {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// Product `f g`.
    Mul {
        #[command(flatten)]
        ring: RingArg,
        f: String,
        g: String,
    },
    /// Univariate division: `f = q g + r` (right) or `f = g q + r` (left).
    Divmod {
        #[command(flatten)]
        ring: RingArg,
        f: String,
        g: String,
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// Leading exponent, coefficient and term.
    Lead {
        #[command(flatten)]
        ring: RingArg,
        f: String,
    },
    /// Normal form modulo a left ideal.
    Nf {
        #[command(flatten)]
        ideal: IdealArg,
        f: String,
    },
}

#[derive(Subcommand, Debug)]
enum OrderCmd {
    /// Compare two exponent vectors: LT, EQ or GT.
    Cmp {
        order: String,
        a: String,
        b: String,
    },
    /// Check the term order axioms on random triples.
    Sanity {
        order: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    /// Reduced left Groebner basis.
    Gb {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Decide `f ∈ I`.
    Member {
        #[command(flatten)]
        ideal: IdealArg,
        f: String,
        /// Also search for an explicit combination up to this degree.
        #[arg(long)]
        bruteforce: Option<u32>,
    },
    /// Groebner basis elements involving only the kept variables.
    Eliminate {
        #[command(flatten)]
        ideal: IdealArg,
        /// Comma-separated variables to keep.
        #[arg(long)]
        keep: String,
    },
    /// Dimension of `I ∩ F[keep]` in total degree at most `--degree`.
    Slice {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        keep: Option<String>,
    },
    /// Leading exponents and standard monomials of the quotient.
    Staircase {
        #[command(flatten)]
        ideal: IdealArg,
    },
}

#[derive(Args, Debug)]
struct ExtArg {
    /// Ring over an `fp_poly` domain; defaults to the commutative ring of the family's arity.
    #[arg(long)]
    ring: Option<String>,
}

#[derive(Subcommand, Debug)]
enum AsCmd {
    /// Test the transporter condition for `r` on a family of ideals.
    Check {
        /// Family JSON, as a file or inline.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        ext: ExtArg,
        r: String,
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Search for a non-unit `r` passing the transporter condition.
    Witness {
        /// Family JSON, as a file or inline.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        ext: ExtArg,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Ideal generators are read in `F_p[y, x1..xn]`.
    Extract {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        r0: Option<String>,
        /// `minimal` or `lift`.
        #[arg(long, default_value = "minimal")]
        mode: String,
        #[arg(long, default_value_t = 8)]
        window: u32,
        #[arg(long, default_value_t = 8)]
        ycap: u32,
    },
    /// Monic irreducibles `r` violating the condition for `R r0`.
    Offenders {
        #[arg(long)]
        p: u64,
        r0: String,
    },
}

#[derive(Subcommand, Debug)]
enum CenterCmd {
    /// Prime-field basis of the center up to a degree cap.
    Compute {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// Scalars fixed by every sigma and killed by every delta.
    InvariantField {
        #[command(flatten)]
        ring: RingArg,
    },
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    /// Operator matrices of `S / I`.
    Build {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Dimension of `S / I` over the coefficient field.
    Dim {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Decide simplicity by exhaustive generation.
    Simple {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = ENUMERATION_BOUND)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCmd {
    /// Maximal left ideals of GF(p^k)[x1..xn; Frob] from univariate seeds.
    Cor47 {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Negative control in the Weyl algebra: `S t` meets `Q[x]` trivially.
    Weyl {
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// Point ideals of F_p[y][x1..xn]: witness search and extraction.
    Prop43 {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// A command's result: JSON value, human text, and whether verification passed.
struct Outcome {
    value: Value,
    human: String,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value, human: impl Into<String>) -> Outcome {
        Outcome { value, human: human.into(), ok: true }
    }

    fn json(value: Value) -> Outcome {
        let human = serde_json::to_string_pretty(&value).expect("serializable");
        Outcome { value, human, ok: true }
    }
}

fn read_source(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(s.to_string());
    }
    std::fs::read_to_string(s).map_err(|e| Error::Malformed(format!("cannot read {s}: {e}")))
}

/// Resolves `--ring`: presets `weyl` and `frob:P:K:N`, inline JSON, or a file.
pub fn load_ring(s: &str) -> Result<SkewRing> {
    if s == "weyl" {
        return Ok(SkewRing::weyl(OrderKind::DegLex));
    }
    if let Some(rest) = s.strip_prefix("frob:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let num = |i: usize| -> Result<u64> {
            parts.get(i).and_then(|x| x.parse().ok()).ok_or_else(|| Error::Malformed(format!("bad preset {s}; expected frob:P:K:N")))
        };
        if parts.len() != 3 {
            return Err(Error::Malformed(format!("bad preset {s}; expected frob:P:K:N")));
        }
        return SkewRing::gf_frobenius(num(0)?, num(1)? as usize, num(2)? as usize, OrderKind::Lex);
    }
    SkewRing::from_json(&read_source(s)?)
}

fn load_ideal(ring: &SkewRing, s: &str) -> Result<LeftIdeal> {
    LeftIdeal::from_json(ring, &read_source(s)?)
}

fn var_list(ring: &SkewRing, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|v| ring.var_index(v.trim()).ok_or_else(|| Error::Malformed(format!("unknown variable {v}"))))
        .collect()
}

fn parse_order(name: &str, n: usize) -> Result<TermOrder> {
    match name {
        "lex" => Ok(TermOrder::lex(n)),
        "deglex" => Ok(TermOrder::deglex(n)),
        _ => Err(Error::Malformed(format!("unknown order {name}; expected lex or deglex"))),
    }
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "LT",
        Ordering::Equal => "EQ",
        Ordering::Greater => "GT",
    }
}

fn load_ext(ext: &ExtArg, p: u64, n: usize) -> Result<PidExtension> {
    match &ext.ring {
        Some(r) => PidExtension::from_ring(&load_ring(r)?),
        None => PidExtension::commutative(p, n),
    }
}

fn dispatch(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Ring(RingCmd::Check { ring, samples, seed }) => {
            let r = load_ring(&ring.ring)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let checks = r.check_descriptor(samples, &mut rng);
            let mut endos = Vec::new();
            for k in 0..r.nvars() {
                endos.push(match r.structural_endo(k) {
                    Ok(e) => json!({"var": r.var_names()[k], "sigma": e.format(r.domain())}),
                    Err(e) => json!({"var": r.var_names()[k], "error": e.to_string()}),
                });
            }
            let ok = checks.iter().all(|c| c.passed) && endos.iter().all(|e| e.get("error").is_none());
            let human = checks
                .iter()
                .map(|c| format!("{} {}{}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default()))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome { value: json!({"checks": checks, "structural": endos, "passed": ok}), human, ok })
        }
        Cmd::Poly(PolyCmd::Mul { ring, f, g }) => {
            let r = load_ring(&ring.ring)?;
            let h = r.try_mul(&r.parse(&f)?, &r.parse(&g)?)?;
            let s = r.format(&h);
            Ok(Outcome::ok(json!({"product": s}), s))
        }
        Cmd::Poly(PolyCmd::Divmod { ring, f, g, side }) => {
            let o = OreRing::from_skew(&load_ring(&ring.ring)?)?;
            let (fp, gp) = (o.parse(&f)?, o.parse(&g)?);
            let (q, rem) = match side.as_str() {
                "right" => o.right_divmod(&fp, &gp)?,
                "left" => o.left_divmod(&fp, &gp)?,
                _ => return Err(Error::Malformed(format!("side must be left or right, got {side}"))),
            };
            let back = if side == "right" { o.add(&o.mul(&q, &gp), &rem) } else { o.add(&o.mul(&gp, &q), &rem) };
            if back != fp {
                return Err(Error::Verification("re-multiplication does not reproduce f".into()));
            }
            let (qs, rs) = (o.format(&q), o.format(&rem));
            Ok(Outcome::ok(json!({"q": qs, "r": rs}), format!("q = {qs}\nr = {rs}")))
        }
        Cmd::Poly(PolyCmd::Lead { ring, f }) => {
            let r = load_ring(&ring.ring)?;
            let fp = r.parse(&f)?;
            let le = r.le(&fp).ok_or_else(|| Error::ZeroInput("leading term of zero".into()))?;
            let lc = r.lc(&fp).expect("nonzero");
            let (es, cs) = (le.to_string(), r.domain().format(&lc));
            Ok(Outcome::ok(json!({"le": es, "lc": cs, "lt": r.format_term(&le, &lc)}), format!("le = {es}\nlc = {cs}")))
        }
        Cmd::Poly(PolyCmd::Nf { ideal, f }) => {
            let r = load_ring(&ideal.ring.ring)?;
            let gb = load_ideal(&r, &ideal.ideal)?.groebner()?;
            let s = r.format(&gb.reduce(&r.parse(&f)?));
            Ok(Outcome::ok(json!({"nf": s}), s))
        }
        Cmd::Order(OrderCmd::Cmp { order, a, b }) => {
            let (a, b) = (MultiIndex::parse(&a)?, MultiIndex::parse(&b)?);
            if a.arity() != b.arity() {
                return Err(Error::ArityMismatch(a.arity(), b.arity()));
            }
            let s = ordering_name(parse_order(&order, a.arity())?.cmp(&a, &b));
            Ok(Outcome::ok(json!({"cmp": s}), s))
        }
        Cmd::Order(OrderCmd::Sanity { order, n, samples, seed }) => {
            let o = parse_order(&order, n)?;
            let rep = order_sanity(&o, samples, &mut ChaCha8Rng::seed_from_u64(seed));
            let human = if rep.passed { format!("ok ({} samples)", rep.checked) } else { format!("FAIL {:?}", rep.witness) };
            Ok(Outcome { value: serde_json::to_value(&rep)?, human, ok: rep.passed })
        }
        Cmd::Ideal(cmd) => ideal_cmd(cmd),
        Cmd::As(cmd) => as_cmd(cmd),
        Cmd::Center(CenterCmd::Compute { ring, cap }) => {
            let r = load_ring(&ring.ring)?;
            Ok(Outcome::json(center_upto(&r, cap)?.to_json(&r)))
        }
        Cmd::Center(CenterCmd::InvariantField { ring }) => {
            let f = invariant_field(&load_ring(&ring.ring)?)?;
            Ok(Outcome::ok(json!({"basis": f.format(), "dim": f.dim()}), f.format().join(", ")))
        }
        Cmd::Module(cmd) => module_cmd(cmd),
        Cmd::Demo(DemoCmd::Cor47 { p, k, n, bound }) => {
            let rep = cor47_pipeline(p, k, n, bound)?;
            let ok = rep.all_verified();
            let human = format!(
                "{} maximal left ideals from {} candidates; dims {:?}; all verified: {ok}",
                rep.ideals.len(),
                rep.candidates,
                rep.ideals.iter().map(|i| i.dim).collect::<Vec<_>>()
            );
            Ok(Outcome { value: serde_json::to_value(&rep)?, human, ok })
        }
        Cmd::Demo(DemoCmd::Weyl { max_degree, cap }) => {
            let rep = weyl_demo(max_degree, cap)?;
            let v = serde_json::to_value(&rep)?;
            Ok(Outcome { human: v.to_string(), value: v, ok: true })
        }
        Cmd::Demo(DemoCmd::Prop43 { p, n, count, seed }) => {
            let recs = prop43_demo(p, n, count, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let ok = recs.iter().all(|r| r.simple && r.consistent);
            let human = recs
                .iter()
                .map(|r| format!("<{}>: r0 = {}, extracted {} ({} descent steps)", r.generators.join(", "), r.r0, r.lifted.element, r.lifted.trace.len()))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome { value: serde_json::to_value(&recs)?, human, ok })
        }
    }
}

fn ideal_cmd(cmd: IdealCmd) -> Result<Outcome> {
    match cmd {
        IdealCmd::Gb { ideal } => {
            let r = load_ring(&ideal.ring.ring)?;
            let gb = load_ideal(&r, &ideal.ideal)?.groebner()?;
            let basis = gb.format();
            Ok(Outcome::ok(json!({"basis": basis, "stats": gb.stats}), basis.join("\n")))
        }
        IdealCmd::Member { ideal, f, bruteforce } => {
            let r = load_ring(&ideal.ring.ring)?;
            let i = load_ideal(&r, &ideal.ideal)?;
            let fp = r.parse(&f)?;
            let gb = i.groebner()?;
            let m = gb.member(&fp);
            let mut v = json!({"member": m});
            let mut ok = true;
            if let Some(cap) = bruteforce {
                let bf = member_bruteforce(&fp, &i, cap)?;
                v["bruteforce"] = json!(bf.is_yes());
                if let Membership::Yes(c) = &bf {
                    v["combination"] = c.terms.iter().map(|(u, j, c)| json!({"monomial": r.format_monomial(u), "generator": j, "coeff": r.domain().format(c)})).collect();
                }
                ok = !(bf.is_yes() && !m);
            }
            Ok(Outcome { human: m.to_string(), value: v, ok })
        }
        IdealCmd::Eliminate { ideal, keep } => {
            let r = load_ring(&ideal.ring.ring)?;
            let i = load_ideal(&r, &ideal.ideal)?;
            let els: Vec<String> = eliminate(&i, &var_list(&r, &keep)?)?.iter().map(|f| r.format(f)).collect();
            Ok(Outcome::ok(json!({"elements": els}), if els.is_empty() { "0".into() } else { els.join("\n") }))
        }
        IdealCmd::Slice { ideal, degree, keep } => {
            let r = load_ring(&ideal.ring.ring)?;
            let i = load_ideal(&r, &ideal.ideal)?;
            let basis: Vec<String> = slice_basis(&i, degree)?.iter().map(|f| r.format(f)).collect();
            let mut v = json!({"degree": degree, "dim": basis.len(), "basis": basis});
            let mut human = format!("dim {}", basis.len());
            if let Some(k) = keep {
                let d = slice_intersection_dim(&i, degree, &var_list(&r, &k)?)?;
                v["intersection_dim"] = json!(d);
                human.push_str(&format!("\nintersection dim {d}"));
            }
            Ok(Outcome::ok(v, human))
        }
        IdealCmd::Staircase { ideal } => {
            let r = load_ring(&ideal.ring.ring)?;
            let st = staircase(&load_ideal(&r, &ideal.ideal)?.groebner()?);
            let human = match (&st.dimension, st.witness_axis) {
                (Some(d), _) => format!("finite, dimension {d}"),
                (None, Some(k)) => format!("infinite along {}", r.var_names()[k]),
                _ => unreachable!("staircase is either finite or has an axis"),
            };
            Ok(Outcome::ok(serde_json::to_value(&st)?, human))
        }
    }
}

fn as_cmd(cmd: AsCmd) -> Result<Outcome> {
    match cmd {
        AsCmd::Check { family, ext, r, grid } => {
            let fam = IdealFamily::from_json(&read_source(&family)?)?;
            let e = load_ext(&ext, fam.p(), fam.arity())?;
            let rep = def31_check(&fam, &e, &parse_r(fam.p(), &r)?, grid)?;
            let human = if rep.passed { format!("pass ({} indices)", rep.checked_indices) } else { format!("fail: {}", serde_json::to_string(&rep)?) };
            Ok(Outcome { ok: rep.passed, value: serde_json::to_value(&rep)?, human })
        }
        AsCmd::Witness { family, ext, max_degree } => {
            let fam = IdealFamily::from_json(&read_source(&family)?)?;
            let e = load_ext(&ext, fam.p(), fam.arity())?;
            let w = thm35_witness(&fam, &e, max_degree)?;
            let mut v = serde_json::to_value(&w)?;
            v["r0"] = json!(amitsur::show(fam.p(), &w.r0));
            Ok(Outcome::ok(v, amitsur::show(fam.p(), &w.r0)))
        }
        AsCmd::Extract { ideal, r0, mode, window, ycap } => {
            let ext = PidExtension::from_ring(&load_ring(&ideal.ring.ring)?)?;
            let enc = ext.encode()?;
            let i = load_ideal(&enc, &ideal.ideal)?;
            let r0 = match r0 {
                Some(s) => parse_r(ext.p(), &s)?,
                None => thm35_witness(&leading_ideal_family(&i, &ext)?.0, &ext, 8)?.r0,
            };
            let mode = match mode.as_str() {
                "minimal" => StartMode::Minimal { window, ycap },
                "lift" => StartMode::Lift { window, ycap },
                _ => return Err(Error::Malformed(format!("mode must be minimal or lift, got {mode}"))),
            };
            let e = prop32_extract(&i, &ext, &r0, &mode)?;
            let mut lines: Vec<String> = e.trace.iter().map(|s| format!("le(Q)={} a={} b={} lt(P1)={}", s.le, s.a, s.b, s.lt_p1)).collect();
            lines.push(format!("element {}", e.element));
            Ok(Outcome::ok(serde_json::to_value(&e)?, lines.join("\n")))
        }
        AsCmd::Offenders { p, r0 } => {
            let offs: Vec<String> = lemma34_offenders(&parse_r(p, &r0)?, p)?.iter().map(|r| amitsur::show(p, r)).collect();
            Ok(Outcome::ok(json!({"offenders": offs}), offs.join("\n")))
        }
    }
}

fn module_cmd(cmd: ModuleCmd) -> Result<Outcome> {
    match cmd {
        ModuleCmd::Build { ideal } => {
            let r = load_ring(&ideal.ring.ring)?;
            let q = quotient_module(&load_ideal(&r, &ideal.ideal)?)?;
            Ok(Outcome::json(q.to_json()))
        }
        ModuleCmd::Dim { ideal } => {
            let r = load_ring(&ideal.ring.ring)?;
            let q = quotient_module(&load_ideal(&r, &ideal.ideal)?)?;
            let d = q.module.dim();
            Ok(Outcome::ok(json!({"dim": d}), d.to_string()))
        }
        ModuleCmd::Simple { ideal, bound } => {
            let r = load_ring(&ideal.ring.ring)?;
            let q = quotient_module(&load_ideal(&r, &ideal.ideal)?)?;
            let rep = q.module.is_simple(bound)?;
            Ok(Outcome::ok(serde_json::to_value(&rep)?, rep.simple.to_string()))
        }
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(e, Error::Parse { .. } | Error::Malformed(_) | Error::Json(_) | Error::ArityMismatch(..))
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let json_mode = cli.json;
    match dispatch(cli.cmd) {
        Ok(out) => {
            let text = if json_mode { out.value.to_string() } else { out.human };
            (if out.ok { 0 } else { 1 }, text)
        }
        Err(e) => {
            let code = if usage_error(&e) { 2 } else { 1 };
            (code, json!({"error": format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or(""), "witness": e.to_string()}).to_string())
        }
    }
}
