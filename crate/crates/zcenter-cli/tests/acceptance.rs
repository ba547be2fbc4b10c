//! Acceptance criteria, one line each. Runs without the libtest harness so the lines always print.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;
use zcenter::algebra::Algebra;
use zcenter::braided::{find_algebra_iso, morita_test, picard_group, Ambient};
use zcenter::export::{export_dual_category, multiset_distance};
use zcenter::formula::{verify_exactalg, verify_main_formula};
use zcenter::fullcenter::{coequ_lambda_rho, full_center, full_center_checked, unit_actions, unit_center_algebra};
use zcenter::ihom::{alpha_induction, ihom_center_bimodule};
use zcenter::module::{hom_mod, simple_bimodules, Module};
use zcenter::obj::Obj;
use zcenter::Category;
use zcenter_cli::io::{load_algebra, load_category};

const COHERENCE_TOL: f64 = 1e-9;
const CORRUPTED_MIN: f64 = 1e-2;
const CENTER_DIM_TOL: f64 = 1e-6;
const T_TOL: f64 = 1e-9;
const FPDIM_TOL: f64 = 1e-6;
const FULL_CENTER_TOL: f64 = 1e-8;
const EXACT_TOL: f64 = 1e-12;
const ADJUNCTION_PAIRS: usize = 20;
const MULTISET_TOL: f64 = 1e-6;
const SEED: u64 = 2024;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).to_str().unwrap().to_string()
}

fn cat(name: &str) -> Category {
    load_category(&data(name), None).unwrap().cat
}

fn alg(file: &str, c: &Category) -> Algebra {
    load_algebra(&data(file), c).unwrap().algebra
}

fn shipped() -> Vec<(&'static str, Category)> {
    ["vec.json", "vecz2.json", "fib.json", "ising.json"].iter().map(|f| (*f, cat(f))).collect()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn coherence() -> Outcome {
    let mut worst: f64 = 0.0;
    for (f, c) in shipped() {
        let rep = c.validate();
        for name in ["pentagon", "hexagon", "hexagon_inverse"] {
            if let Some(r) = rep.residual(name) {
                ensure(r < COHERENCE_TOL, format!("{} {} residual {:e}", f, name, r))?;
                worst = worst.max(r);
            }
        }
    }
    let bad = load_category(&data("fib_corrupted.json"), None).unwrap().cat.pentagon_residual();
    ensure(bad > CORRUPTED_MIN, format!("corrupted Fib pentagon only {:e}", bad))?;
    Ok(format!("worst residual {:.1e} < {:e}; corrupted Fib pentagon {:.3} > {:e}", worst, COHERENCE_TOL, bad, CORRUPTED_MIN))
}

fn center_completeness() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ranks = Vec::new();
    for (f, c) in shipped() {
        let z = c.drinfeld_center_seeded(SEED).map_err(|e| format!("{}: {}", f, e))?;
        let g2 = c.global_dim().powi(2);
        let sum: f64 = z.simples.iter().map(|s| s.qdim * s.qdim).sum();
        worst = worst.max((sum - g2).abs());
        ensure((sum - g2).abs() < CENTER_DIM_TOL, format!("{}: Σqdim² = {} vs {}", f, sum, g2))?;
        ranks.push(z.rank());
        if f == "vecz2.json" {
            ensure(z.rank() == 4, format!("Z(Vec_Z2) rank {}", z.rank()))?;
            let minus = z.t.iter().filter(|t| (*t + 1.0).norm() < T_TOL).count();
            let plus = z.t.iter().filter(|t| (*t - 1.0).norm() < T_TOL).count();
            ensure(minus == 1 && plus == 3, format!("Z(Vec_Z2) T multiset {:?}", z.t))?;
        }
        if f == "ising.json" {
            ensure(z.rank() == 9, format!("Z(Ising) rank {}", z.rank()))?;
        }
    }
    Ok(format!("ranks {:?}; worst |Σqdim² − dim²| {:.1e} < {:e}; T(Z(Vec_Z2)) = {{1,1,1,−1}}", ranks, worst, CENTER_DIM_TOL))
}

fn full_centers() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (f, c) in shipped() {
        let z = c.drinfeld_center_seeded(SEED).unwrap();
        let mut algs = vec![unit_center_algebra(&c)];
        match f {
            "vecz2.json" => algs.push(alg("vecz2_group.alg.json", &c)),
            "ising.json" => {
                algs.push(alg("ising_psi.alg.json", &c));
                algs.push(load_algebra("ihom:sigma", &c).unwrap().algebra);
            }
            _ => {}
        }
        for (k, a) in algs.iter().enumerate() {
            let fc = full_center_checked(&c, &z, a, &mut rng()).map_err(|e| format!("{} {}: {}", f, a.name, e))?;
            for (what, r) in
                [("commutativity", fc.commutativity), ("terminality", fc.terminality), ("central", fc.central), ("homomorphism", fc.homomorphism)]
            {
                ensure(r < FULL_CENTER_TOL, format!("{} Z({}) {} {:e}", f, a.name, what, r))?;
                worst = worst.max(r);
            }
            ensure(fc.end_carrier.as_ref() == Some(&fc.algebra.carrier), format!("{} Z({}) end carrier mismatch", f, a.name))?;
            count += 1;
            if k == 0 {
                let d = c.fpdim(&fc.algebra.carrier);
                ensure((d - c.global_dim()).abs() < FPDIM_TOL, format!("{}: FPdim Z(1) = {} vs {}", f, d, c.global_dim()))?;
                if f == "ising.json" {
                    ensure(fc.algebra.carrier == Obj::new(vec![3, 0, 1]), format!("Z(1_Ising) carrier {}", c.fmt(&fc.algebra.carrier)))?;
                }
            }
        }
    }
    // Z(1 ⊕ (1⊕g)) ≅ Z(1) ⊕ Z(1⊕g) in Vec_Z2.
    let c = cat("vecz2.json");
    let z = c.drinfeld_center_seeded(SEED).unwrap();
    let g = alg("vecz2_group.alg.json", &c);
    let sum = c.direct_sum_algebra(&Algebra::trivial(&c), &g);
    let zs = full_center(&c, &z, &sum, None).map_err(|e| e.to_string())?;
    let z1 = full_center(&c, &z, &Algebra::trivial(&c), None).unwrap();
    let zg = full_center(&c, &z, &g, None).unwrap();
    let split = c.direct_sum_algebra(&z1.algebra, &zg.algebra);
    let iso = find_algebra_iso(Ambient::Center(&c, &z), &zs.algebra, &split, &mut rng());
    ensure(iso.iso.is_some(), "Z(1⊕(1⊕g)) not isomorphic to Z(1)⊕Z(1⊕g)")?;
    ensure(zs.commutativity < FULL_CENTER_TOL && zs.terminality < FULL_CENTER_TOL, "Z(1⊕(1⊕g)) residuals")?;
    Ok(format!("{} full centers, worst residual {:.1e} < {:e}; Z(1_Ising) = 3·1⊕psi; center-sum iso ({})", count, worst, FULL_CENTER_TOL, iso.method))
}

fn coequalizer() -> Outcome {
    let mut n = 0;
    for (f, c) in shipped() {
        let z = c.drinfeld_center_seeded(SEED).unwrap();
        let z1 = full_center(&c, &z, &unit_center_algebra(&c), None).unwrap();
        let mut objs: Vec<Obj> = c.simples();
        objs.push(c.unit_obj().scaled(2));
        if f == "vecz2.json" {
            objs.push(Obj::new(vec![1, 1]));
        }
        for x in objs {
            let want = c.unit_obj().scaled(x.mult[c.unit]);
            let got = coequ_lambda_rho(&c, &z1, &x);
            ensure(got == want, format!("{} x = {}: coequalizer {} expected {}", f, c.fmt(&x), c.fmt(&got), c.fmt(&want)))?;
            let (l, r) = unit_actions(&c, &z1, &x);
            let multiple_of_unit = x.support().all(|a| a == c.unit);
            ensure((l.dist(&r) < EXACT_TOL) == multiple_of_unit, format!("{} x = {}: λ=ρ is {}", f, c.fmt(&x), l.dist(&r) < EXACT_TOL))?;
            n += 1;
        }
    }
    Ok(format!("{} objects; coequalizer = (mult of 1)·1 and λ = ρ exactly on multiples of 1 (|λ−ρ| < {:e})", n, EXACT_TOL))
}

fn adjunction() -> Outcome {
    let mut setups: Vec<(String, Category, Algebra)> = Vec::new();
    for (f, c) in shipped() {
        setups.push((format!("{} 1", f), c.clone(), Algebra::trivial(&c)));
        if f == "vecz2.json" {
            setups.push((format!("{} 1⊕g", f), c.clone(), alg("vecz2_group.alg.json", &c)));
        }
        if f == "ising.json" {
            setups.push((format!("{} 1⊕psi", f), c.clone(), alg("ising_psi.alg.json", &c)));
        }
    }
    let mut r = rng();
    let mut total = 0;
    for (label, c, a) in &setups {
        let z = c.drinfeld_center_seeded(SEED).unwrap();
        let arc = Arc::new(a.clone());
        let ws = simple_bimodules(c, &arc, &arc, &mut r).map_err(|e| e.to_string())?;
        let zs = z.objects();
        for _ in 0..ADJUNCTION_PAIRS {
            let parts: Vec<_> = (0..r.gen_range(1..=2)).map(|_| zs[r.gen_range(0..zs.len())].clone()).collect();
            let b = c.center_direct_sum(&parts).0;
            let wparts: Vec<Module> = (0..r.gen_range(1..=2)).map(|_| ws[r.gen_range(0..ws.len())].clone()).collect();
            let w = Module::sum(c, &wparts).0;
            let (iw, _) = ihom_center_bimodule(c, &z, &w);
            let lhs = c.center_hom(&b, &iw).len();
            let rhs = hom_mod(c, &alpha_induction(c, &b, &arc), &w).len();
            ensure(lhs == rhs, format!("{}: dim Hom_Z(b,[1,w]) = {} but dim Hom(b⊗A, w) = {}", label, lhs, rhs))?;
            total += 1;
        }
    }
    Ok(format!("{} pairs over {} (C, A) setups, exact integer match", total, setups.len()))
}

fn main_formula() -> Outcome {
    let mut parts = Vec::new();
    for f in ["vecz2.json", "fib.json"] {
        let c = cat(f);
        let z = c.drinfeld_center_seeded(SEED).unwrap();
        let t = Instant::now();
        let rep = verify_main_formula(&c, &z, &[], &mut rng()).map_err(|e| format!("{}: {}", f, e))?;
        let n = c.rank().pow(4);
        ensure(rep.cases.len() == n, format!("{}: {} cases", f, rep.cases.len()))?;
        for case in &rep.cases {
            ensure(case.object_iso, format!("{} ({},{},{},{}): {} vs {}", f, case.x, case.x2, case.y, case.y2, case.lhs_carrier, case.rhs_carrier))?;
            let diagonal = case.x == case.x2 && case.y == case.y2;
            if diagonal {
                ensure(case.algebra_iso == Some(true), format!("{} ({},{},{},{}): no algebra iso", f, case.x, case.x2, case.y, case.y2))?;
            }
        }
        ensure(rep.pass, format!("{}: report failed", f))?;
        parts.push(format!("{} {}/{} in {:.1}s", f, rep.cases.len(), n, t.elapsed().as_secs_f64()));
    }
    Ok(format!("object isos on all tuples, algebra isos on diagonals: {}", parts.join(", ")))
}

fn exactalg() -> Outcome {
    let mut n = 0;
    for (f, c) in shipped().into_iter().filter(|(f, _)| *f != "vec.json") {
        let z = c.drinfeld_center_seeded(SEED).unwrap();
        let mut algs = vec![Algebra::trivial(&c)];
        if f == "vecz2.json" {
            algs.push(alg("vecz2_group.alg.json", &c));
        }
        for a in algs {
            let rep = verify_exactalg(&c, &z, &a).map_err(|e| format!("{} {}: {}", f, a.name, e))?;
            for case in &rep.cases {
                ensure(case.pass, format!("{} L={} x={}: {} vs {}", f, a.name, case.x, case.coequalizer, case.expected))?;
            }
            ensure(rep.pass, format!("{} L={}: algebra match {}", f, a.name, rep.algebra_match))?;
            n += 1;
        }
    }
    Ok(format!("{} (C, L) pairs, per-simple carriers match", n))
}

fn pic_aut() -> Outcome {
    let mut parts = Vec::new();
    for (f, order) in [("vecz2.json", 2), ("fib.json", 1), ("ising.json", 2)] {
        let c = cat(f);
        let z = c.drinfeld_center_seeded(SEED).unwrap();
        let p = picard_group(&c, &z, &Algebra::trivial(&c), &mut rng()).map_err(|e| format!("{}: {}", f, e))?;
        ensure(
            p.table.order() == order && p.aut.table.order() == order,
            format!("{}: |Pic| = {}, |Aut| = {}", f, p.table.order(), p.aut.table.order()),
        )?;
        ensure(p.bijective && p.homomorphism, format!("{}: map {:?} not a bijective homomorphism", f, p.map))?;
        parts.push(format!("{} {}≅{}", f, p.table.describe(), p.aut.table.describe()));
    }
    Ok(parts.join(", "))
}

fn morita() -> Outcome {
    let c = cat("vecz2.json");
    let z = c.drinfeld_center_seeded(SEED).unwrap();
    let m = morita_test(&c, &z, &Algebra::trivial(&c), &alg("vecz2_group.alg.json", &c), &mut rng()).map_err(|e| e.to_string())?;
    ensure(!m.equivalent && m.certified, format!("Vec_Z2 1 vs 1⊕g: equivalent {} certified {}", m.equivalent, m.certified))?;
    let c = cat("ising.json");
    let z = c.drinfeld_center_seeded(SEED).unwrap();
    let ss = load_algebra("ihom:sigma", &c).unwrap().algebra;
    let m2 = morita_test(&c, &z, &Algebra::trivial(&c), &ss, &mut rng()).map_err(|e| e.to_string())?;
    let w = m2.witness.as_ref().ok_or("Ising 1 vs [σ,σ]: no witness")?;
    let res = zcenter::braided::algebra_map_residual(&c, &m2.za.algebra, &m2.zb.algebra, w);
    ensure(m2.equivalent && res < FULL_CENTER_TOL && w.inverse().is_some(), format!("Ising witness residual {:e}", res))?;
    Ok(format!("Vec_Z2 1 ≁ 1⊕g (certified, {}); Ising 1 ~ [σ,σ] with iso witness residual {:.1e} ({})", m.method, res, m2.method))
}

fn morita_invariance() -> Outcome {
    let c = cat("ising.json");
    let a = alg("ising_psi.alg.json", &c);
    let d = export_dual_category(&c, &a, &mut rng()).map_err(|e| e.to_string())?;
    let e = Category::from_data(&d.data).map_err(|e| e.to_string())?;
    let rep = e.validate();
    ensure(rep.pass, format!("exported category fails validation: {:?}", rep.checks))?;
    let ze = e.drinfeld_center_seeded(SEED).map_err(|e| e.to_string())?;
    let zc = c.drinfeld_center_seeded(SEED).unwrap();
    let dist = multiset_distance(&ze.modular_multiset(), &zc.modular_multiset());
    ensure(dist < MULTISET_TOL, format!("(qdim, T) multisets differ by {:e}", dist))?;
    Ok(format!("_A C_A rank {} validates; (qdim, T) distance {:.1e} < {:e}", e.rank(), dist, MULTISET_TOL))
}

fn determinism() -> Outcome {
    let tmp = std::env::temp_dir().join(format!("zcenter-acceptance-{}.json", std::process::id()));
    let dest = tmp.to_str().unwrap().to_string();
    let (fib, vz, is) = (data("fib.json"), data("vecz2.json"), data("ising.json"));
    let (grp, psi) = (data("vecz2_group.alg.json"), data("ising_psi.alg.json"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", &fib],
        vec!["center", &is],
        vec!["full-center", &vz, "--algebra", "trivial"],
        vec!["algebra-check", &vz, "--algebra", &grp],
        vec!["modules", &is, "--algebra", &psi, "--side", "bi"],
        vec!["picard", &is],
        vec!["aut-center", &vz, "--algebra", &grp],
        vec!["morita", &is, "--algebra", "trivial", "--algebra2", "ihom:sigma"],
        vec!["fuse", &vz, "--tuple", "1,g,1,g"],
        vec!["verify-formula", &vz],
        vec!["verify-exactalg", &vz, "--algebra", &grp],
        vec!["export-dual-category", &is, "--algebra", &psi, "--dest", &dest],
    ];
    for args in &runs {
        let go = || {
            let o = Command::new(env!("CARGO_BIN_EXE_zcenter"))
                .env_remove("ZCENTER_TOL")
                .args(args)
                .args(["--format", "json", "--seed", "11"])
                .output()
                .unwrap();
            let extra = if args[0] == "export-dual-category" { std::fs::read(&tmp).unwrap_or_default() } else { Vec::new() };
            (o.status.code(), o.stdout, extra)
        };
        let (a, b) = (go(), go());
        ensure(a.0 == Some(0), format!("{} exited {:?}", args[0], a.0))?;
        ensure(a == b, format!("{}: reports differ between runs", args[0]))?;
    }
    let _ = std::fs::remove_file(&tmp);
    Ok(format!("{} commands rerun with seed 11, byte-identical JSON", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("coherence", coherence),
        ("center completeness", center_completeness),
        ("full-center corollaries", full_centers),
        ("unit-action coequalizer", coequalizer),
        ("induction adjunction", adjunction),
        ("fusion formula", main_formula),
        ("exact algebras", exactalg),
        ("Pic = Aut", pic_aut),
        ("Morita tests", morita),
        ("Morita invariance of centers", morita_invariance),
        ("determinism", determinism),
    ];
    let t0 = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("acceptance {:>2} PASS {} ({:.1}s): {}", k + 1, name, secs, msg),
            Err(msg) => {
                failed += 1;
                println!("acceptance {:>2} FAIL {} ({:.1}s): {}", k + 1, name, secs, msg);
            }
        }
    }
    println!("acceptance: {}/{} passed in {:.1}s", criteria.len() - failed, criteria.len(), t0.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
