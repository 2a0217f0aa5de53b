use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use serde_json::{json, Value};

use gorlab_core::data;
use gorlab_core::field::{Field, Fp, Rational};
use gorlab_core::grading::{homogeneity_system, minimal_integral, solve_gradings};
use gorlab_core::lie::algebra::DEFAULT_CAP;
use gorlab_core::lie::{
    parse_expr_list, parse_presentation, BasisOrder, Element, LambdaTable, LieAlgebra, LieExpr, LiePresentation,
};
use gorlab_core::monomial::MonomialAlgebra;
use gorlab_core::presentation::{
    minimal_generator_count, parse_relations, quotient_dims, verify_kernel, verify_presentation, Binomial,
    WeightedRing, DEFAULT_MONOMIAL_CAP,
};
use gorlab_core::semigroup::NumericalSemigroup;
use gorlab_core::series::{
    assemble_poincare_series, koszul_dual_series, pbw_invert, pbw_product, PbwDims, PowerSeries, RationalFn, UniSeries,
};

use crate::config::PipelineConfig;
use crate::report::to_value;

/// What a subcommand prints, in both formats.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

// --- semigroup ------------------------------------------------------------

#[derive(Subcommand, Debug)]
pub enum SemigroupCmd {
    /// Frobenius number, gaps, pseudo-Frobenius numbers and symmetry
    Info {
        #[arg(long, value_delimiter = ',', default_value = "18,24,25,26,28,30,33")]
        gens: Vec<u64>,
    },
    /// The symmetric semigroup built from S and an odd g >= 3F(S)+1
    Symmetrize {
        #[arg(long, value_delimiter = ',', default_value = "18,24,25,26,28,30,33")]
        gens: Vec<u64>,
        #[arg(long)]
        gbar: u64,
    },
}

pub fn semigroup(cmd: SemigroupCmd) -> Result<Output> {
    match cmd {
        SemigroupCmd::Info { gens } => {
            let s = NumericalSemigroup::new(&gens)?;
            let g = s.gap_data();
            let text = format!(
                "generators {:?}\nmultiplicity {}\nFrobenius {}\ngenus {}\npseudo-Frobenius {:?} (type {})\nsymmetric {}\n",
                s.generators(),
                s.multiplicity(),
                g.frobenius,
                g.gaps.len(),
                g.pseudo_frobenius,
                g.semigroup_type,
                s.is_symmetric()
            );
            let json = json!({ "generators": s.generators(), "multiplicity": s.multiplicity(), "gap_data": g, "symmetric": s.is_symmetric() });
            Ok(Output::new(text, json))
        }
        SemigroupCmd::Symmetrize { gens, gbar } => {
            let s = NumericalSemigroup::new(&gens)?;
            let sym = s.symmetrize(gbar)?;
            let halves = sym.halve() == s;
            let text = format!(
                "symmetrized generators {:?}\nsymmetric {}\nFrobenius {}\nhalf equals S {}\n",
                sym.generators(),
                sym.is_symmetric(),
                sym.frobenius(),
                halves
            );
            let json = json!({ "generators": sym.generators(), "symmetric": sym.is_symmetric(), "frobenius": sym.frobenius(), "halves_to_original": halves });
            Ok(Output::new(text, json))
        }
    }
}

// --- presentation -----------------------------------------------------------

/// `j197`, `j199` and `i` name the shipped lists; anything else is a path.
fn load_relations(src: &str) -> Result<(Vec<Binomial>, Option<&'static [u64]>)> {
    let (text, weights): (String, Option<&'static [u64]>) = match src.to_ascii_lowercase().as_str() {
        "j197" => (data::J197.into(), Some(&data::S197)),
        "j199" => (data::J199.into(), Some(&data::S199)),
        "i" => (data::I.into(), Some(&data::I_WEIGHTS)),
        _ => (std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?, None),
    };
    Ok((parse_relations(&text)?, weights))
}

fn variables(rels: &[Binomial]) -> Vec<char> {
    let mut v: Vec<char> = rels
        .iter()
        .flat_map(|r| {
            let mut vs: Vec<char> = r.lhs.variables().map(|(c, _)| c).collect();
            if let Some(rhs) = &r.rhs {
                vs.extend(rhs.variables().map(|(c, _)| c));
            }
            vs
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Weighted ring: explicit weights over `names` (default: the variables
/// `a, b, ...` in order, or those of the shipped ideal).
fn ring_for(
    src: &str,
    rels: &[Binomial],
    default: Option<&[u64]>,
    weights: Option<Vec<u64>>,
    names: Option<String>,
) -> Result<WeightedRing> {
    let weights = match (weights, default) {
        (Some(w), _) => w,
        (None, Some(w)) => w.to_vec(),
        (None, None) => bail!("--weights is required for {src}"),
    };
    let names: Vec<char> = match names {
        Some(n) => n.chars().filter(|c| c.is_alphabetic()).collect(),
        None if src.eq_ignore_ascii_case("i") => data::I_VARIABLES.to_vec(),
        None => {
            let vars = variables(rels);
            if vars.len() == weights.len() {
                vars
            } else {
                gorlab_core::presentation::letters(weights.len())
            }
        }
    };
    Ok(WeightedRing::new(&names, &weights)?)
}

#[derive(Subcommand, Debug)]
pub enum PresentationCmd {
    /// Check that the binomials lie in the toric kernel and generate it
    Verify {
        /// j197, j199 or a relation file
        #[arg(long, default_value = "j197")]
        relations: String,
        /// semigroup generators; defaults to the shipped weights
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long, default_value_t = 300)]
        degree: u64,
    },
    /// Hilbert function of the quotient and minimal generator count
    Dims {
        /// j197, j199, i or a relation file
        #[arg(long, default_value = "i")]
        relations: String,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        /// variable names in weight order, e.g. bcdefghijkl
        #[arg(long)]
        names: Option<String>,
        #[arg(long, default_value_t = 6)]
        degree: u64,
    },
}

pub fn presentation(cmd: PresentationCmd) -> Result<Output> {
    match cmd {
        PresentationCmd::Verify { relations, weights, degree } => {
            let (rels, default) = load_relations(&relations)?;
            let ring = ring_for(&relations, &rels, default, weights, None)?;
            let s = NumericalSemigroup::new(ring.weights())?;
            verify_kernel(&rels, &ring)?;
            let res = verify_presentation(&rels, &ring, &s, degree, DEFAULT_MONOMIAL_CAP)?;
            let mut out = match &res {
                Ok(()) => Output::new(
                    format!("{} relations lie in the kernel and generate it up to degree {degree}\n", rels.len()),
                    json!({ "relations": rels.len(), "kernel": true, "generates": true, "degree": degree }),
                ),
                Err(m) => Output::new(
                    format!(
                        "{} relations lie in the kernel; degree {} has {} monomials left, expected {}\n",
                        rels.len(),
                        m.degree,
                        m.found,
                        m.expected
                    ),
                    json!({ "relations": rels.len(), "kernel": true, "generates": false, "mismatch": { "degree": m.degree, "found": m.found, "expected": m.expected } }),
                ),
            };
            out.ok = res.is_ok();
            Ok(out)
        }
        PresentationCmd::Dims { relations, weights, names, degree } => {
            let (rels, default) = load_relations(&relations)?;
            let ring = ring_for(&relations, &rels, default, weights, names)?;
            let dims = quotient_dims(&rels, &ring, degree, DEFAULT_MONOMIAL_CAP)?;
            let gens = minimal_generator_count(&rels, &ring, degree, DEFAULT_MONOMIAL_CAP)?;
            let text = format!(
                "dims {:?}\ntotal {}\nminimal generators up to degree {degree}: {gens}\n",
                dims,
                dims.iter().sum::<usize>()
            );
            Ok(Output::new(text, json!({ "dims": dims, "minimal_generators": gens })))
        }
    }
}

// --- grade --------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct GradeArgs {
    /// j197, j199, i or a relation file
    #[arg(long, default_value = "j197")]
    relations: String,
    /// variables to keep as parameters, e.g. b,d,h
    #[arg(long, value_delimiter = ',')]
    free: Option<Vec<char>>,
    /// integral values of the parameters to specialize to
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    at: Option<Vec<i64>>,
}

pub fn grade(args: GradeArgs) -> Result<Output> {
    let (rels, _) = load_relations(&args.relations)?;
    let vars = if args.relations.eq_ignore_ascii_case("i") { data::I_VARIABLES.to_vec() } else { variables(&rels) };
    let sys = homogeneity_system(&rels, &vars)?;
    let sol = solve_gradings(&sys, args.free.as_deref())?;
    let mut text = format!("{} equations, {} parameters ({:?})\n", sys.rows.len(), sol.nullity(), sol.free);
    for line in sol.describe() {
        let _ = writeln!(text, "  {line}");
    }
    let mut json = json!({ "variables": vars, "free": sol.free, "parametrization": sol.describe() });
    if sol.nullity() == 1 {
        let m = minimal_integral(&sol)?;
        let _ = writeln!(text, "minimal integral point {:?} at c1 = {}", m.weights, m.constant);
        json["minimal"] = to_value(&m);
    }
    if let Some(at) = args.at {
        let w = sol.specialize(&sys, &at)?;
        let _ = writeln!(text, "at {at:?}: {w:?}");
        json["specialized"] = to_value(&w);
    }
    Ok(Output::new(text, json))
}

// --- series -------------------------------------------------------------------

#[derive(Subcommand, Debug)]
pub enum SeriesCmd {
    /// Expand num/den, den with constant term ±1
    Expand {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        num: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        den: Vec<i64>,
        #[arg(short = 'N', long = "order", default_value_t = 20)]
        n: usize,
    },
    /// Assemble the Poincaré series and check both routes and the identities
    VerifyAssembly {
        #[arg(long)]
        max_x: Option<usize>,
        #[arg(long)]
        max_y: Option<usize>,
    },
    /// Enveloping algebra series of a Lie superalgebra with the given dims
    Pbw {
        #[arg(long, value_delimiter = ',')]
        dims: Vec<u64>,
        #[arg(short = 'N', long = "order", default_value_t = 10)]
        n: usize,
    },
    /// Recover Lie dims from an enveloping algebra series
    PbwInvert {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
}

pub fn series(cmd: SeriesCmd, cfg: &PipelineConfig) -> Result<Output> {
    match cmd {
        SeriesCmd::Expand { num, den, n } => {
            let s = RationalFn::new(num, den)?.expand(n);
            Ok(Output::new(format!("{s}\n"), to_value(&s)))
        }
        SeriesCmd::Pbw { dims, n } => {
            let s = pbw_product(&PbwDims(dims), n);
            Ok(Output::new(format!("{s}\n"), to_value(&s)))
        }
        SeriesCmd::PbwInvert { coeffs } => {
            let d = pbw_invert(&UniSeries::from_i64(coeffs))?;
            Ok(Output::new(format!("{:?}\n", d.0), to_value(&d)))
        }
        SeriesCmd::VerifyAssembly { max_x, max_y } => {
            let (nx, ny) = (max_x.unwrap_or(cfg.nx), max_y.unwrap_or(cfg.ny));
            let t = assemble_poincare_series(&koszul_dual_series(nx.max(ny) + 2), nx, ny)?;
            let one_minus_z = UniSeries::from_poly(&[1, -1], nx);
            let identity = t.p_rbar_uni.recip()?
                == one_minus_z.mul(&t.p_s_uni.recip()?).sub(&UniSeries::from_poly(&[0, 4, 4], nx));
            let checks = [
                ("two_routes", t.p_rbar == t.p_rbar_two_step),
                ("specialization", t.p_rbar.specialize_y1() == t.p_rbar_uni),
                ("univariate_identity", identity),
                ("nonzero_divisor", t.p_r_uni == UniSeries::from_poly(&[1, 1], nx).mul(&t.p_rbar_uni)),
                ("nonnegative", t.p_rbar.is_nonnegative() && t.p_s.is_nonnegative() && t.p_r_uni.is_nonnegative()),
                ("embedding_dimension", t.p_rbar_uni.coeff(1) == &11.into()),
            ];
            let mut text = format!("P_S(z)     {}\nP_Rbar(z)  {}\nP_R(z)     {}\n", t.p_s_uni, t.p_rbar_uni, t.p_r_uni);
            for (name, ok) in checks {
                let _ = writeln!(text, "{}  {name}", if ok { "PASS" } else { "FAIL" });
            }
            let mut out = Output::new(
                text,
                json!({ "series": t, "checks": checks.iter().map(|(n, ok)| json!({ "check": n, "pass": ok })).collect::<Vec<_>>() }),
            );
            out.ok = checks.iter().all(|(_, ok)| *ok);
            Ok(out)
        }
    }
}

// --- lie ------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct LieSource {
    /// presentation file; the shipped eta presentation by default
    #[arg(long)]
    file: Option<PathBuf>,
    /// extra relations, e.g. "lie[e,lie[b,b]], lie[f,lie[f,d]]"
    #[arg(long)]
    extra: Option<String>,
    /// compute over the prime field 2^31 - 1
    #[arg(long)]
    prime: bool,
}

#[derive(Subcommand, Debug)]
pub enum LieCmd {
    /// Ranks and enveloping algebra dimensions
    Dims {
        #[command(flatten)]
        src: LieSource,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Defining expressions of the labeled basis modbas[d, i]
    Def {
        #[command(flatten)]
        src: LieSource,
        #[arg(long)]
        degree: usize,
    },
    /// Degree-n part of the ideal generated by the given elements
    Ideal {
        #[command(flatten)]
        src: LieSource,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        degree: usize,
    },
    /// Elements of degree s whose brackets with all given elements vanish
    Ann {
        #[command(flatten)]
        src: LieSource,
        #[arg(long)]
        elems: String,
        #[arg(long)]
        degree: usize,
    },
    /// Bracket of two elements in labeled coordinates
    Mult {
        #[command(flatten)]
        src: LieSource,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Subalgebra generated by the given elements
    Suba {
        #[command(flatten)]
        src: LieSource,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        max: Option<usize>,
    },
    /// The lambda table
    Lambda {
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
}

fn lie_presentation(src: &LieSource) -> Result<LiePresentation> {
    let text = match &src.file {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => data::ETA.to_string(),
    };
    let p = parse_presentation(&text)?;
    match &src.extra {
        Some(extra) => Ok(p.with_relations(&parse_expr_list(extra, &p.generators)?)?),
        None => Ok(p),
    }
}

fn degree_of(exprs: &[LieExpr]) -> Result<usize> {
    let mut d = 0;
    for e in exprs {
        d = d.max(e.degree()?);
    }
    Ok(d)
}

fn coords<F: Field>(a: &LieAlgebra<F>, e: &Element<F>) -> Result<String> {
    let c = a.fed(e)?;
    let terms: Vec<String> = c
        .iter()
        .map(|(i, x)| {
            let label = format!("modbas[{}, {}]", e.degree, i + 1);
            if x.is_one() {
                label
            } else {
                format!("{x} {label}")
            }
        })
        .collect();
    Ok(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
}

fn lie_typed<F: Field>(cmd: LieCmd, src: LieSource, cfg: &PipelineConfig) -> Result<Output> {
    let p = lie_presentation(&src)?;
    let names = p.generators.clone();
    let build = |d: usize| LieAlgebra::<F>::new(&p, d, BasisOrder::Reverse, DEFAULT_CAP);
    let eval_all = |a: &LieAlgebra<F>, es: &[LieExpr]| -> Result<Vec<Element<F>>> {
        Ok(es.iter().map(|e| a.eval(e)).collect::<Result<_, _>>()?)
    };
    let basis_lines =
        |a: &LieAlgebra<F>, es: &[Element<F>]| -> Result<Vec<String>> { es.iter().map(|e| coords(a, e)).collect() };
    match cmd {
        LieCmd::Dims { max, .. } => {
            let a = build(max.unwrap_or(cfg.lie_max_degree))?;
            let text = format!("lie {:?}\nenveloping {:?}\n", a.dims(), a.enveloping().dims());
            Ok(Output::new(text, json!({ "dims": a.dims(), "enveloping": a.enveloping().dims() })))
        }
        LieCmd::Def { degree, .. } => {
            let a = build(degree)?;
            let defs: Vec<String> = (1..=a.dims()[degree - 1])
                .map(|i| a.def(degree, i).map(|e| e.display(&names).to_string()))
                .collect::<Result<_, _>>()?;
            let mut text = String::new();
            for (i, d) in defs.iter().enumerate() {
                let _ = writeln!(text, "modbas[{degree}, {}] = {d}", i + 1);
            }
            Ok(Output::new(text, json!({ "degree": degree, "defs": defs })))
        }
        LieCmd::Ideal { gens, degree, .. } => {
            let es = parse_expr_list(&gens, &names)?;
            let a = build(degree.max(degree_of(&es)?))?;
            let part = a.ideal(&eval_all(&a, &es)?, degree)?;
            let basis = basis_lines(&a, &part.basis)?;
            let text = format!("dim {}\n{}", part.dim(), basis.iter().map(|b| format!("  {b}\n")).collect::<String>());
            Ok(Output::new(text, json!({ "degree": degree, "dim": part.dim(), "basis": basis })))
        }
        LieCmd::Ann { elems, degree, .. } => {
            let es = parse_expr_list(&elems, &names)?;
            let a = build(degree + degree_of(&es)?)?;
            let part = a.ann(&eval_all(&a, &es)?, degree)?;
            let basis = basis_lines(&a, &part.basis)?;
            let text = format!("dim {}\n{}", part.dim(), basis.iter().map(|b| format!("  {b}\n")).collect::<String>());
            Ok(Output::new(text, json!({ "degree": degree, "dim": part.dim(), "basis": basis })))
        }
        LieCmd::Mult { left, right, .. } => {
            let l = parse_expr_list(&left, &names)?;
            let r = parse_expr_list(&right, &names)?;
            let a = build(degree_of(&l)? + degree_of(&r)?)?;
            let mut results = Vec::new();
            for x in eval_all(&a, &l)? {
                for y in eval_all(&a, &r)? {
                    results.push(coords(&a, &a.bracket(&x, &y)?)?);
                }
            }
            Ok(Output::new(format!("{{{}}}\n", results.join(", ")), json!(results)))
        }
        LieCmd::Suba { gens, max, .. } => {
            let es = parse_expr_list(&gens, &names)?;
            let d = max.unwrap_or(cfg.lie_max_degree);
            let a = build(d)?;
            let parts = a.suba(&eval_all(&a, &es)?, d)?;
            let dims: Vec<usize> = parts.iter().map(|s| s.dim()).collect();
            Ok(Output::new(format!("dims {dims:?}\n"), json!({ "dims": dims })))
        }
        LieCmd::Lambda { .. } => unreachable!("handled without a presentation"),
    }
}

pub fn lie(cmd: LieCmd, cfg: &PipelineConfig) -> Result<Output> {
    let src = match &cmd {
        LieCmd::Lambda { max } => {
            let t = LambdaTable::new(*max);
            let rows: Vec<Vec<String>> = t.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let mut text = String::new();
            for (m, r) in rows.iter().enumerate() {
                let _ = writeln!(text, "m={:<2} {}", m + 1, r.join(" "));
            }
            let ok = t.violation().is_none();
            let _ = writeln!(text, "conditions hold: {ok}");
            let mut out = Output::new(text, json!({ "max": t.max(), "rows": rows, "conditions_hold": ok }));
            out.ok = ok;
            return Ok(out);
        }
        LieCmd::Dims { src, .. }
        | LieCmd::Def { src, .. }
        | LieCmd::Ideal { src, .. }
        | LieCmd::Ann { src, .. }
        | LieCmd::Mult { src, .. }
        | LieCmd::Suba { src, .. } => src.clone(),
    };
    if src.prime {
        lie_typed::<Fp>(cmd, src, cfg)
    } else {
        lie_typed::<Rational>(cmd, src, cfg)
    }
}

// --- monomial -------------------------------------------------------------------

#[derive(Subcommand, Debug)]
pub enum MonomialCmd {
    /// Hilbert series of k<alphabet>/(forbidden words)
    Series {
        #[arg(long, value_delimiter = ',', default_value = "C,D,G")]
        alphabet: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "CC,CDG")]
        forbidden: Vec<String>,
        #[arg(short = 'N', long = "order", default_value_t = 20)]
        n: usize,
    },
}

pub fn monomial(cmd: MonomialCmd) -> Result<Output> {
    let MonomialCmd::Series { alphabet, forbidden, n } = cmd;
    let a: Vec<&str> = alphabet.iter().map(String::as_str).collect();
    let f: Vec<&str> = forbidden.iter().map(String::as_str).collect();
    let alg = MonomialAlgebra::parse(&a, &f)?;
    let s = alg.series(n);
    let r = alg.rational_function();
    let text = format!("series {s}\nrational numerator {:?} denominator {:?}\n", r.numerator, r.denominator);
    Ok(Output::new(text, json!({ "series": s, "numerator": r.numerator, "denominator": r.denominator })))
}
