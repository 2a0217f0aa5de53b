//! The end-to-end verification run behind `verify-all`.

use std::sync::OnceLock;

use anyhow::{anyhow, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use gorlab_core::data;
use gorlab_core::field::{Field, Fp, Rational};
use gorlab_core::grading::{homogeneity_system, minimal_integral, solve_gradings};
use gorlab_core::lie::algebra::DEFAULT_CAP;
use gorlab_core::lie::{parse_expr_list, parse_presentation, BasisOrder, LambdaTable, LieAlgebra, LiePresentation};
use gorlab_core::monomial::MonomialAlgebra;
use gorlab_core::presentation::{
    letters, minimal_generator_count, parse_relations, quotient_dims, verify_kernel, verify_presentation, Binomial,
    WeightedRing, DEFAULT_MONOMIAL_CAP,
};
use gorlab_core::semigroup::NumericalSemigroup;
use gorlab_core::series::{
    assemble_poincare_series, koszul_dual_series, koszul_dual_series_via_square, pbw_product, radical_quotient_series,
    PbwDims, PowerSeries, RationalFn, UniSeries,
};

use crate::config::PipelineConfig;
use crate::report::{to_value, Check, Report};

pub const RADICAL: &str = "lie[e,lie[b,b]], lie[f,lie[f,d]]";
const ETA_RANKS: [usize; 7] = [6, 11, 11, 18, 38, 79, 158];
const IDEAL_TABLE: [usize; 11] = [1, 53, 20, 15, 20, 15, 1, 52, 72, 52, 68];

type Run<F> = fn(&Ctx<F>) -> Result<Check>;

struct CheckDef<F> {
    name: &'static str,
    anchor: &'static str,
    /// Lie degree the check needs; skipped when the cap is lower.
    lie_degree: usize,
    run: Run<F>,
}

pub struct Ctx<F> {
    cfg: PipelineConfig,
    eta: OnceLock<Result<LieAlgebra<F>, String>>,
    eta_bar: OnceLock<Result<LieAlgebra<F>, String>>,
    eta_bar_c2: OnceLock<Result<LieAlgebra<F>, String>>,
}

fn lie_degree(cfg: &PipelineConfig) -> usize {
    cfg.lie_max_degree.min(7)
}

impl<F: Field> Ctx<F> {
    fn presentation(&self, extra: &str) -> Result<LiePresentation> {
        let p = parse_presentation(&self.cfg.eta.read(data::ETA)?)?;
        if extra.is_empty() {
            return Ok(p);
        }
        Ok(p.with_relations(&parse_expr_list(extra, &p.generators)?)?)
    }

    fn build<'a>(
        &'a self,
        cell: &'a OnceLock<Result<LieAlgebra<F>, String>>,
        extra: &str,
    ) -> Result<&'a LieAlgebra<F>> {
        let built = cell.get_or_init(|| {
            let p = self.presentation(extra).map_err(|e| e.to_string())?;
            LieAlgebra::new(&p, lie_degree(&self.cfg), BasisOrder::Reverse, DEFAULT_CAP).map_err(|e| e.to_string())
        });
        built.as_ref().map_err(|e| anyhow!("{e}"))
    }

    fn eta(&self) -> Result<&LieAlgebra<F>> {
        self.build(&self.eta, "")
    }

    fn eta_bar(&self) -> Result<&LieAlgebra<F>> {
        self.build(&self.eta_bar, RADICAL)
    }

    fn eta_bar_c2(&self) -> Result<&LieAlgebra<F>> {
        self.build(&self.eta_bar_c2, &format!("{RADICAL}, sq[c]"))
    }

    fn relations(&self, which: &str) -> Result<Vec<Binomial>> {
        let text = match which {
            "j197" => self.cfg.j197.read(data::J197)?,
            "j199" => self.cfg.j199.read(data::J199)?,
            _ => self.cfg.ideal.read(data::I)?,
        };
        Ok(parse_relations(&text)?)
    }
}

fn env_dims<F: Field>(a: &LieAlgebra<F>) -> Vec<i64> {
    a.enveloping().dims().iter().map(|&x| x as i64).collect()
}

fn base() -> NumericalSemigroup {
    NumericalSemigroup::new(&data::BASE_GENERATORS).expect("valid generators")
}

fn check_defs<F: Field>() -> Vec<CheckDef<F>> {
    macro_rules! def {
        ($name:expr, $anchor:expr, $deg:expr, $f:expr) => {
            CheckDef { name: $name, anchor: $anchor, lie_degree: $deg, run: $f }
        };
    }
    vec![
        def!("semigroup.frobenius", "F(S) for S = <18,24,25,26,28,30,33>", 0, |_| {
            Ok(Check::compare("", "", base().frobenius(), 65))
        }),
        def!("semigroup.pseudo_frobenius", "PF(S), type 5", 0, |_| {
            Ok(Check::compare("", "", base().pseudo_frobenius(), vec![65, 45, 38, 34, 31]))
        }),
        def!("semigroup.symmetrize_197", "symmetrization with g = 197", 0, |_| {
            let s = base().symmetrize(197)?;
            let ok = s.generators() == data::S197 && s.is_symmetric() && s.halve() == base();
            Ok(Check::holds("", "", ok, to_value(&s.generators()), to_value(&data::S197)))
        }),
        def!("semigroup.symmetrize_199", "symmetrization with g = 199", 0, |_| {
            let s = base().symmetrize(199)?;
            let ok = s.generators() == data::S199 && s.is_symmetric() && s.halve() == base();
            Ok(Check::holds("", "", ok, to_value(&s.generators()), to_value(&data::S199)))
        }),
        def!("presentation.kernel_j197", "binomials of J197 vanish on the monomial curve", 0, |c| {
            let rels = c.relations("j197")?;
            verify_kernel(&rels, &WeightedRing::new(&letters(12), &data::S197)?)?;
            Ok(Check::compare("", "", rels.len(), 54))
        }),
        def!("presentation.kernel_j199", "binomials of J199 vanish on the monomial curve", 0, |c| {
            let rels = c.relations("j199")?;
            verify_kernel(&rels, &WeightedRing::new(&letters(12), &data::S199)?)?;
            Ok(Check::compare("", "", rels.len(), 54))
        }),
        def!("presentation.generate_j197", "J197 generates the whole kernel", 0, |c| {
            let s = NumericalSemigroup::new(&data::S197)?;
            let d = c.cfg.presentation_max_degree;
            let res = verify_presentation(
                &c.relations("j197")?,
                &WeightedRing::for_semigroup(&s),
                &s,
                d,
                DEFAULT_MONOMIAL_CAP,
            )?;
            Ok(Check::holds("", "", res.is_ok(), json!(format!("{res:?}")), json!(format!("Ok(()) up to degree {d}"))))
        }),
        def!("presentation.generate_j199", "J199 generates the whole kernel", 0, |c| {
            let s = NumericalSemigroup::new(&data::S199)?;
            let d = c.cfg.presentation_max_degree;
            let res = verify_presentation(
                &c.relations("j199")?,
                &WeightedRing::for_semigroup(&s),
                &s,
                d,
                DEFAULT_MONOMIAL_CAP,
            )?;
            Ok(Check::holds("", "", res.is_ok(), json!(format!("{res:?}")), json!(format!("Ok(()) up to degree {d}"))))
        }),
        def!(
            "presentation.artinian_reduction",
            "JE/I2: Hilbert function 1,7,20,7,1 and 54 minimal relations",
            0,
            |c| {
                let ring = WeightedRing::new(&data::I_VARIABLES, &data::I_WEIGHTS)?;
                let rels = c.relations("ideal")?;
                let dims = quotient_dims(&rels, &ring, 5, DEFAULT_MONOMIAL_CAP)?;
                let gens = minimal_generator_count(&rels, &ring, 6, DEFAULT_MONOMIAL_CAP)?;
                Ok(Check::compare("", "", (dims, gens), (vec![1, 7, 20, 7, 1, 0], 54)))
            }
        ),
        def!("grading.j197", "one-parameter grading, minimal at c1 = 67", 0, |c| {
            let sys = homogeneity_system(&c.relations("j197")?, &letters(12))?;
            let m = minimal_integral(&solve_gradings(&sys, Some(&['h']))?)?;
            Ok(Check::compare("", "", (m.weights, m.constant), (data::S197.to_vec(), 67)))
        }),
        def!("grading.j199", "one-parameter grading, minimal at c1 = 69", 0, |c| {
            let sys = homogeneity_system(&c.relations("j199")?, &letters(12))?;
            let m = minimal_integral(&solve_gradings(&sys, Some(&['h']))?)?;
            Ok(Check::compare("", "", (m.weights, m.constant), (data::S199.to_vec(), 69)))
        }),
        def!("grading.ideal_family", "three-parameter gradings of I", 0, |c| {
            let sys = homogeneity_system(&c.relations("ideal")?, &data::I_VARIABLES)?;
            let sol = solve_gradings(&sys, Some(&['b', 'd', 'h']))?;
            let got = (sol.nullity(), sol.specialize(&sys, &[1, 1, 1])?, sol.specialize(&sys, &[48, 52, 67])?);
            let want = (3, data::I_WEIGHTS.to_vec(), data::S197[1..].to_vec());
            let mut check = Check::compare("", "", got, want);
            check.value = json!({ "parametrization": sol.describe(), "specializations": check.value });
            Ok(check)
        }),
        def!("lie.ranks", "ranks of eta in degrees 1..7", 1, |c| {
            let dims = c.eta()?.dims();
            Ok(Check::compare("", "", dims.clone(), ETA_RANKS[..dims.len()].to_vec()))
        }),
        def!("lie.ideal_table", "dimensions of ideal[7, {modbas[3,n]}]", 7, |c| {
            let a = c.eta()?;
            let mut dims = Vec::new();
            for n in 1..=11 {
                dims.push(a.ideal(&[a.basis_element(3, n)?.clone()], 7)?.dim());
            }
            Ok(Check::compare("", "", dims, IDEAL_TABLE.to_vec()))
        }),
        def!("lie.radical", "rad(eta) is abelian and two-dimensional in degrees 3..7", 7, |c| {
            let a = c.eta()?;
            let gens: Vec<_> = parse_expr_list(RADICAL, &a.presentation().generators)?
                .iter()
                .map(|e| a.eval(e))
                .collect::<Result<_, _>>()?;
            let parts: Vec<_> = (3..=7).map(|d| a.ideal(&gens, d)).collect::<Result<_, _>>()?;
            let mut abelian = true;
            for x in &parts {
                for y in parts.iter().filter(|y| x.degree + y.degree <= 7) {
                    for u in &x.basis {
                        for v in &y.basis {
                            abelian &= a.bracket(u, v)?.is_zero();
                        }
                    }
                }
            }
            let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
            Ok(Check::compare("", "", (dims, abelian), (vec![2; 5], true)))
        }),
        def!("lie.orthogonality", "ann[J2,3,3] = J11 + J12 and conversely", 6, |c| {
            let a = c.eta_bar()?;
            let parts = subalgebras(a, 3)?;
            let (j11, j12, j2) = (&parts[0][2], &parts[1][2], &parts[2][2]);
            let both = j11.sum(j12);
            let ok = a.ann(&j2.basis, 3)?.same_as(&both)
                && a.ann(&both.basis, 3)?.same_as(j2)
                && a.ann(&j11.basis, 3)?.same_as(&j12.sum(j2))
                && a.ann(&j12.basis, 3)?.same_as(&j11.sum(j2));
            Ok(Check::holds("", "", ok, json!([j11.dim(), j12.dim(), j2.dim()]), json!([2, 2, 5])))
        }),
        def!("lie.decomposition", "dim eta-bar_n = sum of the three subalgebras, n = 3..7", 7, |c| {
            let a = c.eta_bar()?;
            let parts = subalgebras(a, 7)?;
            let sums: Vec<usize> = (3..=7).map(|n| parts.iter().map(|p| p[n - 1].dim()).sum()).collect();
            let spans: Vec<usize> =
                (3..=7).map(|n| parts[0][n - 1].sum(&parts[1][n - 1]).sum(&parts[2][n - 1]).dim()).collect();
            let want = a.dims()[2..].to_vec();
            Ok(Check::holds("", "", sums == want && spans == want, to_value(&sums), to_value(&want)))
        }),
        def!("lie.pbw_cross_check", "PBW product of the ranks = enveloping algebra dims", 1, |c| {
            let a = c.eta()?;
            let d = a.max_degree();
            let lie = PbwDims(a.dims().iter().map(|&x| x as u64).collect());
            Ok(Check::compare("", "", pbw_product(&lie, d).coeffs_i64(), env_dims(a)))
        }),
        def!("lie.enveloping_is_the_dual", "U(eta) has the Koszul dual series", 1, |c| {
            let a = c.eta()?;
            Ok(Check::compare("", "", env_dims(a), koszul_dual_series(a.max_degree()).coeffs_i64()))
        }),
        def!("lie.enveloping_without_square", "U(eta-bar) = 1/((1+t)(1-2t)^2(1-3t+t^2))", 1, |c| {
            let a = c.eta_bar()?;
            Ok(Check::compare("", "", env_dims(a), radical_quotient_series(a.max_degree()).coeffs_i64()))
        }),
        def!("lie.enveloping_with_square", "with c^2 killed: (1-t)/((1-2t)^2(1-3t+t^2))", 1, |c| {
            let a = c.eta_bar_c2()?;
            let den = gorlab_core::series::poly_product(&[&[1, -2], &[1, -2], &[1, -3, 1]]);
            let want = RationalFn::new(vec![1, -1], den)?.expand(a.max_degree()).coeffs_i64();
            Ok(Check::compare("", "", env_dims(a), want))
        }),
        def!("lie.lambda_table", "lambda(2m,2n)=0, skew symmetry and the recursion, m+n <= 20", 0, |_| {
            let t = LambdaTable::new(20);
            Ok(Check::compare("", "", t.violation(), None))
        }),
        def!("monomial.series", "k<C,D,G>/<C^2, CDG> has series 1/(1-3t+t^2)", 0, |c| {
            let alg = MonomialAlgebra::parse(&["C", "D", "G"], &["CC", "CDG"])?;
            let want = RationalFn::new(vec![1], vec![1, -3, 1])?.expand(c.cfg.n);
            let ok = alg.series(c.cfg.n) == want && alg.rational_function().expand(c.cfg.n) == want;
            Ok(Check::holds("", "", ok, to_value(&alg.series(c.cfg.n)), to_value(&want)))
        }),
        def!("monomial.groebner", "<C^2, [C,[D,G]]> has the monomial algebra's series", 2, |c| {
            let p = parse_presentation("generators={C,D,G}\nrelations={sq[C], lie[C,lie[D,G]]}")?;
            let a = LieAlgebra::<F>::new(&p, lie_degree(&c.cfg), BasisOrder::Forward, DEFAULT_CAP)?;
            let alg = MonomialAlgebra::parse(&["C", "D", "G"], &["CC", "CDG"])?;
            Ok(Check::compare("", "", env_dims(&a), alg.series(a.max_degree()).coeffs_i64()))
        }),
        def!("series.dual_factorizations", "the two factorizations of the Koszul dual series agree", 0, |c| {
            let n = c.cfg.n.max(c.cfg.nx.max(c.cfg.ny) + 2);
            let (a, b) = (koszul_dual_series(n), koszul_dual_series_via_square(n));
            Ok(Check::holds("", "", a == b, to_value(&a.truncate(c.cfg.n)), to_value(&b.truncate(c.cfg.n))))
        }),
        def!("series.two_routes", "Gulliksen then Golod equals the closed bigraded formula", 0, |c| {
            let t = assemble_poincare_series(&koszul_dual_series(c.cfg.nx.max(c.cfg.ny) + 2), c.cfg.nx, c.cfg.ny)?;
            let ok = t.p_rbar == t.p_rbar_two_step && t.p_rbar.specialize_y1() == t.p_rbar_uni;
            Ok(Check::holds("", "", ok, json!(format!("({}, {})", c.cfg.nx, c.cfg.ny)), Value::Null))
        }),
        def!("series.specialization", "1/P(z) = (1-z)/P_S(z) - 4z - 4z^2 and P_R = (1+z) P_R-bar", 0, |c| {
            let t = assemble_poincare_series(&koszul_dual_series(c.cfg.nx.max(c.cfg.ny) + 2), c.cfg.nx, c.cfg.ny)?;
            let nx = c.cfg.nx;
            let rhs =
                UniSeries::from_poly(&[1, -1], nx).mul(&t.p_s_uni.recip()?).sub(&UniSeries::from_poly(&[0, 4, 4], nx));
            let ok = t.p_rbar_uni.recip()? == rhs && t.p_r_uni == UniSeries::from_poly(&[1, 1], nx).mul(&t.p_rbar_uni);
            Ok(Check::holds("", "", ok, to_value(&t.p_r_uni), Value::Null))
        }),
        def!("series.poincare_rbar", "P of R-bar 197: nonnegative, Tor_1 = 11, Tor_2 = 55 + 54", 0, |c| {
            let t = assemble_poincare_series(&koszul_dual_series(c.cfg.nx.max(c.cfg.ny) + 2), c.cfg.nx, c.cfg.ny)?;
            let nonneg = [&t.p_s, &t.p_rbar].iter().all(|s| s.is_nonnegative())
                && [&t.p_s_uni, &t.p_rbar_uni, &t.p_r_uni].iter().all(|s| s.is_nonnegative());
            let low = t.p_rbar_uni.truncate(2.min(t.p_rbar_uni.order())).coeffs_i64();
            let want: Vec<i64> = vec![1, 11, 109][..low.len()].to_vec();
            Ok(Check::holds("", "", nonneg && low == want, to_value(&t.p_rbar_uni), to_value(&want)))
        }),
    ]
}

/// `suba(b,f)`, `suba(d,e)` and `suba(c,d+e,g)` up to `d`.
fn subalgebras<F: Field>(a: &LieAlgebra<F>, d: usize) -> Result<Vec<Vec<gorlab_core::lie::Subspace<F>>>> {
    let names = &a.presentation().generators;
    ["b, f", "d, e", "c, d+e, g"]
        .iter()
        .map(|g| {
            let gens: Vec<_> = parse_expr_list(g, names)?.iter().map(|e| a.eval(e)).collect::<Result<_, _>>()?;
            Ok(a.suba(&gens, d)?)
        })
        .collect()
}

fn run_check<F: Field>(ctx: &Ctx<F>, s: &CheckDef<F>) -> Check {
    if s.lie_degree > ctx.cfg.lie_max_degree {
        return Check::skipped(
            s.name,
            s.anchor,
            format!("needs Lie degree {}, cap is {}", s.lie_degree, ctx.cfg.lie_max_degree),
        );
    }
    match (s.run)(ctx) {
        Ok(mut c) => {
            c.check = s.name;
            c.anchor = s.anchor;
            c
        }
        Err(e) => Check::failed(s.name, s.anchor, format!("{e:#}")),
    }
}

fn run<F: Field + Send + Sync>(cfg: &PipelineConfig) -> Report {
    let ctx =
        Ctx::<F> { cfg: cfg.clone(), eta: OnceLock::new(), eta_bar: OnceLock::new(), eta_bar_c2: OnceLock::new() };
    let all = check_defs::<F>();
    let checks = if cfg.parallel {
        all.par_iter().map(|s| run_check(&ctx, s)).collect()
    } else {
        all.iter().map(|s| run_check(&ctx, s)).collect()
    };
    Report::new(checks)
}

pub fn verify_all(cfg: &PipelineConfig) -> Report {
    if cfg.prime_field {
        run::<Fp>(cfg)
    } else {
        run::<Rational>(cfg)
    }
}
