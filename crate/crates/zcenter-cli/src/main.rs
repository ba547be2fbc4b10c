use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use zcenter::braided::{automorphism_group, morita_test, picard_group, Ambient};
use zcenter::center::CenterCategory;
use zcenter::export::{export_dual_category, multiset_distance};
use zcenter::formula::{verify_exactalg, verify_formula_case, verify_main_formula};
use zcenter::fullcenter::{full_center, full_center_checked, is_lagrangian};
use zcenter::linalg::tidy;
use zcenter::module::{module_residual, simple_bimodules, simple_modules, Side};
use zcenter::Category;
use zcenter_cli::io::{canonical_json, digest, load_algebra, load_category, InputError, LoadedCategory};
use zcenter_cli::report::Report;

/// Residual threshold for verdicts computed inside the library.
const SOLVE_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "zcenter", version, about = "Drinfeld centers, full centers and internal homs of fusion categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance override for the category file.
    #[arg(long, global = true, env = "ZCENTER_TOL", value_parser = positive)]
    tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Bi,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence residuals of a category file.
    Validate { category: String },
    /// Simples of the Drinfeld center with dimensions and twists.
    Center { category: String },
    /// Full center of an algebra and the Lagrangian test.
    FullCenter {
        category: String,
        #[arg(long, default_value = "trivial")]
        algebra: String,
    },
    /// Associativity, unitality and separability of an algebra.
    AlgebraCheck {
        category: String,
        #[arg(long)]
        algebra: String,
    },
    /// Simple modules or bimodules over an algebra.
    Modules {
        category: String,
        #[arg(long, default_value = "trivial")]
        algebra: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Picard group of invertible bimodules and its map to Aut of the full center.
    Picard {
        category: String,
        #[arg(long, default_value = "trivial")]
        algebra: String,
    },
    /// Automorphism group of the full center as an algebra in the center.
    AutCenter {
        category: String,
        #[arg(long, default_value = "trivial")]
        algebra: String,
    },
    /// Morita equivalence through an isomorphism of full centers.
    Morita {
        category: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        algebra2: String,
    },
    /// [x,x']⊗_{Z(1)}[y,y'] in the center for one tuple `x,x',y,y'`.
    Fuse {
        category: String,
        #[arg(long)]
        tuple: String,
    },
    /// The fusion formula for internal homs on the given tuples, all tuples when none are given.
    VerifyFormula {
        category: String,
        #[arg(long)]
        tuple: Vec<String>,
    },
    /// Coequalizer of the two full-center actions on L⊗x⊗L for every simple x.
    VerifyExactalg {
        category: String,
        #[arg(long, default_value = "trivial")]
        algebra: String,
    },
    /// Write the category of A-A-bimodules as a category file.
    ExportDualCategory {
        category: String,
        #[arg(long)]
        algebra: String,
        /// Destination of the category file.
        #[arg(long)]
        dest: PathBuf,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(_) => Err("tolerance must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Input(InputError),
    Compute(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

struct Ctx {
    seed: u64,
    tol: Option<f64>,
}

impl Ctx {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn center(&self, cat: &Category) -> Result<CenterCategory, Failure> {
        cat.drinfeld_center_seeded(self.seed).map_err(compute)
    }
}

fn start(name: &str, ctx: &Ctx, lc: &LoadedCategory, extra: &[(&str, &str, &str)]) -> Report {
    let cat_text = canonical_json(&lc.data);
    let mut inputs = vec![format!("category={}", lc.source)];
    let mut parts: Vec<&str> = vec![&cat_text];
    for (key, src, canon) in extra {
        inputs.push(format!("{}={}", key, src));
        parts.push(canon);
    }
    Report::new(name, inputs, digest(&parts), ctx.seed, lc.cat.tol)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tuple(cat: &Category, s: &str) -> Result<(usize, usize, usize, usize), InputError> {
    let idx: Vec<usize> = s
        .split(',')
        .map(|t| cat.index_of(t.trim()).ok_or_else(|| InputError(format!("--tuple {}: unknown simple {}", s, t.trim()))))
        .collect::<Result<_, _>>()?;
    match idx[..] {
        [a, b, c, d] => Ok((a, b, c, d)),
        _ => Err(InputError(format!("--tuple {}: expected four simples", s))),
    }
}

fn run(cmd: &Command, ctx: &Ctx) -> Result<Report, Failure> {
    match cmd {
        Command::Validate { category } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let mut r = start("validate", ctx, &lc, &[]);
            for c in cat.validate().checks {
                r.check(c.name, c.residual, c.pass);
            }
            r.put("name", &cat.name);
            r.put("simples", &cat.names);
            r.put("dual", &cat.dual);
            r.put("braided", cat.has_braiding());
            r.put("qdims", cat.qdims().iter().map(|d| (d.re, d.im)).collect::<Vec<_>>());
            r.put("fpdims", cat.fpdims());
            r.put("global_dim", cat.global_dim());
            Ok(r)
        }
        Command::Center { category } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let z = ctx.center(cat)?;
            let mut r = start("center", ctx, &lc, &[]);
            let summary = z.summary(cat);
            let sum: f64 = summary.iter().map(|s| s.qdim * s.qdim).sum();
            let d2 = cat.global_dim() * cat.global_dim();
            r.below("dimension_sum", (sum - d2).abs() / d2, 1e-6);
            r.flag("s_invertible", z.s_invertible());
            r.put("rank", z.rank());
            r.put("global_dim", cat.global_dim());
            r.put("simples", summary);
            let s: Vec<Vec<(f64, f64)>> =
                (0..z.rank()).map(|i| (0..z.rank()).map(|j| (tidy(z.s[(i, j)].re), tidy(z.s[(i, j)].im))).collect()).collect();
            r.put("s_matrix", s);
            Ok(r)
        }
        Command::FullCenter { category, algebra } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let z = ctx.center(cat)?;
            let mut rng = ctx.rng();
            let fc = full_center_checked(cat, &z, &la.algebra, &mut rng).map_err(compute)?;
            let mut r = start("full-center", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            r.below("commutativity", fc.commutativity, lc.cat.tol);
            r.below("central", fc.central, SOLVE_TOL);
            r.below("homomorphism", fc.homomorphism, SOLVE_TOL);
            r.below("terminality", fc.terminality, SOLVE_TOL);
            r.flag("terminality_unique", fc.unique);
            r.flag("end_carrier", fc.end_carrier.as_ref() == Some(&fc.algebra.carrier));
            let lag = is_lagrangian(cat, &z, &Arc::new(fc.algebra.clone()), &mut rng).map_err(compute)?;
            let s = fc.summary(cat, &z);
            r.put("carrier", &s.carrier);
            r.put("decomposition", &s.decomposition);
            let mut used = fc.summands.clone();
            used.dedup();
            let table = z.summary(cat);
            r.put("center_simples", used.iter().map(|&j| &table[j]).collect::<Vec<_>>());
            r.put("fpdim", s.fpdim);
            r.put("end_carrier", &s.end_carrier);
            r.put("lagrangian", yes(lag.lagrangian));
            r.put("lagrangian_details", &lag);
            Ok(r)
        }
        Command::AlgebraCheck { category, algebra } => {
            let lc = load_category(category, ctx.tol)?;
            let la = load_algebra(algebra, &lc.cat)?;
            let rep = lc.cat.check_algebra(&la.algebra);
            let mut r = start("algebra-check", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            r.below("associativity", rep.associativity, lc.cat.tol);
            r.below("unitality", rep.unitality, lc.cat.tol);
            r.check("separability", rep.separability_residual, rep.separable);
            r.flag("pass", rep.pass);
            r.put("carrier", lc.cat.fmt(&la.algebra.carrier));
            r.put("report", &rep);
            Ok(r)
        }
        Command::Modules { category, algebra, side } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let a = Arc::new(la.algebra.clone());
            let mut rng = ctx.rng();
            let ms = match side {
                SideArg::Left => simple_modules(cat, &a, Side::Left, &mut rng),
                SideArg::Right => simple_modules(cat, &a, Side::Right, &mut rng),
                SideArg::Bi => simple_bimodules(cat, &a, &a, &mut rng),
            }
            .map_err(compute)?;
            let mut r = start("modules", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            let mut rows = Vec::new();
            for m in &ms {
                r.below(format!("action {}", m.name), module_residual(cat, m), SOLVE_TOL);
                rows.push(json!({ "name": m.name, "carrier": cat.fmt(&m.carrier), "fpdim": zcenter::linalg::tidy(cat.fpdim(&m.carrier)) }));
            }
            r.put("count", ms.len());
            r.put("modules", rows);
            Ok(r)
        }
        Command::Picard { category, algebra } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let z = ctx.center(cat)?;
            let pic = picard_group(cat, &z, &la.algebra, &mut ctx.rng()).map_err(compute)?;
            let s = pic.summary(cat);
            let mut r = start("picard", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            r.flag("pic_is_group", s.pic.is_group());
            r.flag("same_order", s.pic.order() == s.aut.order());
            r.flag("bijective", s.bijective);
            r.check("homomorphism", s.map_residual, s.homomorphism);
            r.put("picard", s);
            Ok(r)
        }
        Command::AutCenter { category, algebra } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let z = ctx.center(cat)?;
            let fc = full_center(cat, &z, &la.algebra, None).map_err(compute)?;
            let aut = automorphism_group(Ambient::Center(cat, &z), &fc.algebra, &mut ctx.rng());
            let mut r = start("aut-center", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            r.flag("is_group", aut.table.is_group());
            r.put("full_center", fc.summary(cat, &z).decomposition);
            r.put("order", aut.table.order());
            r.put("group", aut.table.describe());
            r.put("exhaustive", aut.exhaustive);
            r.put("table", &aut.table);
            Ok(r)
        }
        Command::Morita { category, algebra, algebra2 } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let lb = load_algebra(algebra2, cat)?;
            let z = ctx.center(cat)?;
            let m = morita_test(cat, &z, &la.algebra, &lb.algebra, &mut ctx.rng()).map_err(compute)?;
            let mut r = start("morita", ctx, &lc, &[("algebra", &la.source, &la.canonical), ("algebra2", &lb.source, &lb.canonical)]);
            r.flag("decided", m.equivalent || m.certified);
            if m.witness.is_some() {
                r.below("witness", m.residual, SOLVE_TOL);
            }
            r.put("equivalent", yes(m.equivalent));
            r.put("method", m.method);
            r.put("full_center_a", m.za.summary(cat, &z).decomposition);
            r.put("full_center_b", m.zb.summary(cat, &z).decomposition);
            r.put(
                "witness",
                m.witness.as_ref().map(|w| w.to_vec().iter().map(|c| (zcenter::linalg::tidy(c.re), zcenter::linalg::tidy(c.im))).collect::<Vec<_>>()),
            );
            Ok(r)
        }
        Command::Fuse { category, tuple: t } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let tp = tuple(cat, t)?;
            let z = ctx.center(cat)?;
            let z1 = full_center(cat, &z, &zcenter::algebra::Algebra::trivial(cat), None).map_err(compute)?;
            let case = verify_formula_case(cat, &z, &z1, tp, &mut ctx.rng()).map_err(compute)?;
            let mut r = start("fuse", ctx, &lc, &[("tuple", t, t)]);
            r.flag("object_iso", case.object_iso);
            if let Some(b) = case.algebra_iso {
                r.flag("algebra_iso", b);
            }
            r.put("fused", &case.lhs_decomposition);
            r.put("case", &case);
            Ok(r)
        }
        Command::VerifyFormula { category, tuple: ts } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let tps: Vec<_> = ts.iter().map(|t| tuple(cat, t)).collect::<Result<_, _>>()?;
            let z = ctx.center(cat)?;
            let rep = verify_main_formula(cat, &z, &tps, &mut ctx.rng()).map_err(compute)?;
            let joined = ts.join(";");
            let mut r = start("verify-formula", ctx, &lc, &[("tuples", if ts.is_empty() { "all" } else { &joined }, &joined)]);
            for c in &rep.cases {
                r.check(format!("{},{},{},{}", c.x, c.x2, c.y, c.y2), c.residual, c.pass());
            }
            r.put("cases", &rep.cases);
            Ok(r)
        }
        Command::VerifyExactalg { category, algebra } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let z = ctx.center(cat)?;
            let rep = verify_exactalg(cat, &z, &la.algebra).map_err(compute)?;
            let mut r = start("verify-exactalg", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            for c in &rep.cases {
                r.flag(format!("coequalizer {}", c.x), c.pass);
            }
            r.check("algebra_match", rep.algebra_residual, rep.algebra_match);
            r.put("report", &rep);
            Ok(r)
        }
        Command::ExportDualCategory { category, algebra, dest } => {
            let lc = load_category(category, ctx.tol)?;
            let cat = &lc.cat;
            let la = load_algebra(algebra, cat)?;
            let d = export_dual_category(cat, &la.algebra, &mut ctx.rng()).map_err(compute)?;
            let text = canonical_json(&d.data);
            std::fs::write(dest, &text).map_err(|e| Failure::Compute(format!("{}: {}", dest.display(), e)))?;
            let mut r = start("export-dual-category", ctx, &lc, &[("algebra", &la.source, &la.canonical)]);
            r.below("associator", d.associator_residual, SOLVE_TOL);
            let e = Category::from_data(&d.data).map_err(compute)?;
            for c in e.validate().checks {
                r.check(format!("exported {}", c.name), c.residual, c.pass);
            }
            let ze = ctx.center(&e)?;
            let zc = ctx.center(cat)?;
            r.below("center_multiset", multiset_distance(&ze.modular_multiset(), &zc.modular_multiset()), 1e-6);
            r.put("dest", dest.display().to_string());
            r.put("output_digest", digest(&[&text]));
            r.put("bimodules", d.bimodules.iter().map(|m| cat.fmt(&m.carrier)).collect::<Vec<_>>());
            r.put("fusion", &d.data.fusion);
            r.put("dual", &d.data.dual);
            r.put("center_rank", ze.rank());
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let ctx = Ctx { seed: cli.seed, tol: cli.tol };
    let report = match run(&cli.command, &ctx) {
        Ok(r) => r,
        Err(Failure::Input(e)) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
        Err(Failure::Compute(e)) => {
            eprintln!("failure: {}", e);
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => canonical_json(&report),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {}: {}", p.display(), e);
                return ExitCode::from(2);
            }
        }
        None => print!("{}", text),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
