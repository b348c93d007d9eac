//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact (rational arithmetic, structural polynomial
//! equality); the only numeric bounds are wall-clock limits.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kohnsym::algebra::{jacobi_check, structure_constants};
use kohnsym::ansatz::{beta_kernel, classify, constant_shift, same_span, stability_scan};
use kohnsym::determining::{
    check_consequences, check_dependencies, derive_determining, fidelity_report,
    unexpected_jet_monomials,
};
use kohnsym::heisenberg::{
    commutator, group_mul, kohn_laplace, left_translate, t_field, x_field, x_tilde, y_field,
    y_tilde, HPoint,
};
use kohnsym::poly::{int, Poly, Rat};
use kohnsym::prolong::{closed_form_eta, prolong2};
use kohnsym::verify::{numeric_spot_check, symmetry_defect, verify_generator};
use kohnsym::{fixtures, FCase, GExpr, Mono, Param, VField, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let e = start.elapsed();
    ensure(
        e < limit,
        format!(
            "runtime {:.2}s exceeds {}s",
            e.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

fn sym() -> Param {
    Param::Symbol
}

fn val(n: i64) -> Param {
    Param::Value(int(n))
}

fn power(k: Param, p: Param) -> FCase {
    FCase::power(k, p).unwrap()
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(
        rng.random_range(-7i64..=7).into(),
        rng.random_range(1i64..=4).into(),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32, vars: &[Var]) -> Poly {
    let mut out = Poly::zero();
    for m in kohnsym::ansatz::coordinate_monomials(deg) {
        if vars.len() < 3 && m.exp(Var::T) > 0 {
            continue;
        }
        if rng.random_bool(0.4) {
            out.add_term(m, Rat::from_integer(rng.random_range(-5i64..=5).into()));
        }
    }
    out
}

fn random_field(rng: &mut ChaCha8Rng, deg: u32) -> VField {
    let xyz = [Var::X, Var::Y, Var::T];
    VField::from_components(std::array::from_fn(|_| random_poly(rng, deg, &xyz)))
}

fn c1_family_verification() -> Outcome {
    let start = Instant::now();
    let cases = [
        FCase::Arbitrary,
        FCase::Zero,
        FCase::constant(int(3)),
        FCase::linear(sym()).unwrap(),
        power(sym(), sym()),
        FCase::exp(sym()).unwrap(),
    ];
    let mut pairs: Vec<(String, VField, FCase)> = Vec::new();
    for fc in &cases {
        for (n, v) in fixtures::base_family() {
            pairs.push((n, v, fc.clone()));
        }
    }
    for n in ["Z1", "Z2", "V1", "V2", "V3"] {
        pairs.push((n.into(), fixtures::named(n).unwrap(), FCase::Zero));
    }
    pairs.push(("Z2".into(), fixtures::z2(), FCase::linear(sym()).unwrap()));
    pairs.push(("(1-p)Z".into(), fixtures::z_symbolic(), power(sym(), sym())));
    for n in ["Z:3", "V1", "V2", "V3"] {
        pairs.push((n.into(), fixtures::named(n).unwrap(), power(sym(), val(3))));
    }
    pairs.push(("Z3".into(), fixtures::z3(), FCase::exp(sym()).unwrap()));
    let bad: Vec<String> = pairs
        .iter()
        .filter(|(_, v, fc)| !symmetry_defect(v, fc).is_zero())
        .map(|(n, _, fc)| format!("{n} under {fc}"))
        .collect();
    ensure(
        bad.is_empty(),
        format!("nonzero defect: {}", bad.join(", ")),
    )?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{} (generator, case) pairs with zero defect",
        pairs.len()
    ))
}

fn c2_dimensions() -> Outcome {
    let start = Instant::now();
    let table = [
        (FCase::Arbitrary, 4),
        (FCase::exp(val(1)).unwrap(), 5),
        (power(val(1), val(5)), 5),
        (power(val(1), val(7)), 5),
        (power(val(1), val(-1)), 5),
        (power(val(1), val(3)), 8),
        (FCase::Zero, 9),
        (FCase::linear(val(1)).unwrap(), 5),
    ];
    let mut got = Vec::new();
    for (fc, want) in &table {
        let c = classify(fc, 4);
        let family: Vec<VField> = fixtures::reference_family(fc)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        ensure(
            c.dimension() == *want,
            format!("{fc}: dimension {} != {want}", c.dimension()),
        )?;
        ensure(
            same_span(&c.basis, &family),
            format!("{fc}: span differs from the listed family"),
        )?;
        ensure(
            c.verified.iter().all(|v| *v),
            format!("{fc}: a basis vector fails verification"),
        )?;
        let sc = structure_constants(&c.basis).map_err(|e| format!("{fc}: {e}"))?;
        ensure(sc.is_closed(), format!("{fc}: bracket leaves the span"))?;
        ensure(
            jacobi_check(&c.basis).map_err(|e| e.to_string())?,
            format!("{fc}: Jacobi fails"),
        )?;
        got.push(format!("{fc}={}", c.dimension()));
    }
    within(start, Duration::from_secs(60))?;
    Ok(got.join(" "))
}

fn c3_determining_fidelity() -> Outcome {
    let bad: Vec<String> = fidelity_report()
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(l, _)| l)
        .collect();
    ensure(
        bad.is_empty(),
        format!(
            "derived equations differ from the written form: {}",
            bad.join(", ")
        ),
    )?;
    ensure(
        unexpected_jet_monomials().is_empty(),
        "unexpected jet monomials in the collected condition",
    )?;
    let sys = derive_determining();
    let rep = check_dependencies(&sys);
    let corrected = rep
        .utt
        .as_ref()
        .map(|c| c.render())
        .unwrap_or_else(|| "none".into());
    let ut = rep
        .ut
        .as_ref()
        .map(|(d, c)| format!("degree {d}: {}", c.render()))
        .unwrap_or_else(|| "not found".into());
    let detail =
        format!(
        "nine equations reproduced; utt multipliers found: {corrected}; ut (with ux, uy) {ut}; \
         ut from uyy/uxy/uxt/uyt alone: {}",
        if rep.ut_restricted.is_some() { "found" } else { "impossible" }
    );
    ensure(rep.ut.is_some(), format!("no multipliers for ut; {detail}"))?;
    ensure(
        rep.literal_holds(),
        format!(
            "utt != y*uxt + x*uyt - x*uyy - y*uxy, residual {}; {detail}",
            rep.literal_residual
        ),
    )?;
    Ok(detail)
}

fn c4_prolongation_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..100 {
        let s = random_field(&mut rng, 3);
        let pr = prolong2(&s);
        ensure(
            pr == closed_form_eta(&s),
            format!("field #{i} differs: {s}"),
        )?;
        ensure(pr.is_jet_linear(), format!("field #{i} not jet-linear"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "100 seeded fields, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn c5_consequences() -> Outcome {
    let cases = [
        FCase::Arbitrary,
        FCase::exp(val(1)).unwrap(),
        power(val(1), val(5)),
        power(val(1), val(3)),
        FCase::Zero,
        FCase::linear(val(1)).unwrap(),
        FCase::constant(int(2)),
        power(sym(), sym()),
    ];
    let mut n = 0;
    for fc in &cases {
        let c = classify(fc, 4);
        let named: Vec<(String, VField)> = fixtures::reference_family(fc);
        let all = c.labelled().into_iter().chain(named);
        for (name, v) in all {
            for r in check_consequences(&v) {
                ensure(
                    r.holds(),
                    format!("{fc} {name}: {} ({}) fails", r.label, r.statement),
                )?;
            }
            n += 1;
        }
    }
    Ok(format!("6 identities on {n} generators"))
}

fn c6_geometry() -> Outcome {
    let four_t = t_field().scale(&int(4));
    let (x, y, t, xt, yt) = (x_field(), y_field(), t_field(), x_tilde(), y_tilde());
    let c = |a, b| commutator(a, b).map_err(|e| e.to_string());
    ensure(c(&x, &y)? == t.scale(&int(-4)), "[X,Y] != -4T")?;
    ensure(c(&x, &t)?.is_zero(), "[X,T] != 0")?;
    ensure(c(&y, &t)?.is_zero(), "[Y,T] != 0")?;
    ensure(c(&xt, &yt)? == four_t, "[Xt,Yt] != 4T")?;
    for l in [&x, &y] {
        for r in [&xt, &yt] {
            ensure(c(l, r)?.is_zero(), format!("[{l}, {r}] != 0"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let xyz = [Var::X, Var::Y, Var::T];
    for i in 0..20 {
        let a = HPoint::new(
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
        );
        let e = random_poly(&mut rng, 4, &xyz);
        for f in [x_field(), y_field(), t_field()] {
            ensure(
                f.apply(&left_translate(&e, &a)) == left_translate(&f.apply(&e), &a),
                format!("left invariance fails for translation #{i}"),
            )?;
        }
    }
    for i in 0..100 {
        let mut pt = || {
            HPoint::new(
                random_rat(&mut rng),
                random_rat(&mut rng),
                random_rat(&mut rng),
            )
        };
        let (p, q, r) = (pt(), pt(), pt());
        ensure(
            group_mul(&group_mul(&p, &q), &r) == group_mul(&p, &group_mul(&q, &r)),
            format!("associativity fails on triple #{i}"),
        )?;
    }
    Ok("Heisenberg relations, 20 translations x 3 fields, 100 triples".into())
}

fn c7_beta_kernels() -> Outcome {
    let b1 = beta_kernel(&FCase::Zero, 1).map_err(|e| e.to_string())?;
    let affine: Vec<Poly> = ["1", "x", "y", "t"]
        .iter()
        .map(|s| kohnsym::parse::parse_poly(s).unwrap())
        .collect();
    let as_fields = |bs: &[Poly]| -> Vec<VField> {
        bs.iter()
            .map(|b| {
                VField::new(
                    Poly::zero(),
                    Poly::zero(),
                    Poly::zero(),
                    Poly::zero(),
                    b.clone(),
                )
                .unwrap()
            })
            .collect()
    };
    ensure(
        b1.len() == 4,
        format!("dim beta_kernel(zero, 1) = {}", b1.len()),
    )?;
    ensure(
        same_span(&as_fields(&b1), &as_fields(&affine)),
        "beta_kernel(zero, 1) != span{1, x, y, t}",
    )?;
    let b2 = beta_kernel(&FCase::Zero, 2).map_err(|e| e.to_string())?;
    ensure(
        b2.len() == 6,
        format!("dim beta_kernel(zero, 2) = {}", b2.len()),
    )?;
    let b4 = beta_kernel(&FCase::Zero, 4).map_err(|e| e.to_string())?;
    for b in b2.iter().chain(&b4) {
        ensure(kohn_laplace(b).is_zero(), format!("Δβ != 0 for {b}"))?;
    }
    for w in as_fields(&b4) {
        ensure(
            verify_generator(&w, &FCase::Zero).is_symmetry,
            format!("W = ({})∂u fails under f = 0", w.beta),
        )?;
    }
    let lin = FCase::linear(val(1)).unwrap();
    let bl = beta_kernel(&lin, 4).map_err(|e| e.to_string())?;
    for b in &bl {
        ensure(
            (kohn_laplace(b) + b.clone()).is_zero(),
            format!("Δβ + β != 0 for {b}"),
        )?;
    }
    for w in as_fields(&bl) {
        ensure(
            verify_generator(&w, &lin).is_symmetry,
            "W fails under f = u",
        )?;
    }
    // the W condition itself: defect of β∂u under f = ku is exactly Δβ + kβ
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lin_k = FCase::linear(sym()).unwrap();
    for _ in 0..10 {
        let b = random_poly(&mut rng, 4, &[Var::X, Var::Y, Var::T]);
        let w = as_fields(std::slice::from_ref(&b)).remove(0);
        let want = GExpr::plain(kohn_laplace(&b) + &b * &Poly::var(Var::K));
        ensure(
            symmetry_defect(&w, &lin_k) == want,
            "defect of β∂u under f = ku is not Δβ + kβ",
        )?;
    }
    Ok(format!(
        "zero: dims 4, 6 (degree 4: {}); f = u: polynomial kernel dim {} up to degree 4",
        b4.len(),
        bl.len()
    ))
}

fn c8_numeric_oracle() -> Outcome {
    let cubic = power(val(1), val(3));
    let run =
        |v: &VField, fc: &FCase, n| numeric_spot_check(v, fc, n, 0).map_err(|e| e.to_string());
    let v2 = fixtures::v2();
    ensure(run(&v2, &cubic, 50)?, "V2 under u^3: numeric check false")?;
    ensure(
        verify_generator(&v2, &cubic).is_symmetry,
        "V2 under u^3: symbolic verdict false",
    )?;
    let t = fixtures::t();
    ensure(
        run(&t, &FCase::Zero, 10)?,
        "T under f = 0: numeric check false",
    )?;
    ensure(
        verify_generator(&t, &FCase::Zero).is_symmetry,
        "T under f = 0: symbolic verdict false",
    )?;
    let mut bent = v2.clone();
    bent.alpha = &bent.alpha + &Poly::one();
    ensure(!run(&bent, &cubic, 50)?, "perturbed V2: numeric check true")?;
    ensure(
        !verify_generator(&bent, &cubic).is_symmetry,
        "perturbed V2: symbolic verdict true",
    )?;
    Ok("V2/u^3 true, T/0 true, V2 with α+1 false; symbolic verdicts agree".into())
}

fn c9_constant_shift() -> Outcome {
    let mut notes = Vec::new();
    for c in [int(1), int(2), int(-3)] {
        let s = constant_shift(&c);
        let want = Poly::term(-c.clone() / int(2), Mono::pow_of(Var::X, 2));
        ensure(
            s.shift == want,
            format!("c = {c}: shift {} != {want}", s.shift),
        )?;
        ensure(
            num_traits::Zero::is_zero(&s.residual),
            format!("c = {c}: residual {}", s.residual),
        )?;
        ensure(s.discrepancy(), format!("c = {c}: +c x^2/2 not flagged"))?;
        notes.push(format!("c={c}: +c*x^2/2 leaves {}", s.plus_residual));
    }
    Ok(format!("shift -c/2*x^2, residual 0; {}", notes.join(", ")))
}

fn c10_stability() -> Outcome {
    let start = Instant::now();
    let mut got = Vec::new();
    for (fc, want) in [
        (FCase::Arbitrary, 4),
        (FCase::exp(val(1)).unwrap(), 5),
        (power(val(1), val(5)), 5),
        (power(val(1), val(3)), 8),
    ] {
        let scan = stability_scan(&fc, 5, 6);
        for (d, dim) in &scan {
            ensure(*dim == want, format!("{fc} at degree {d}: {dim} != {want}"))?;
        }
        got.push(format!("{fc}: {want},{want}"));
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{} ({:.1}s)",
        got.join("; "),
        start.elapsed().as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 family verification", c1_family_verification),
        ("2 classification dimensions", c2_dimensions),
        ("3 determining-system fidelity", c3_determining_fidelity),
        ("4 prolongation oracle", c4_prolongation_oracle),
        ("5 consequence identities", c5_consequences),
        ("6 geometry", c6_geometry),
        ("7 beta kernels", c7_beta_kernels),
        ("8 numeric oracle", c8_numeric_oracle),
        ("9 constant shift", c9_constant_shift),
        ("10 stability scan", c10_stability),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("PASS [{name}] {d} [{secs:.2}s]"),
            Err(e) => {
                failed += 1;
                println!("FAIL [{name}] {e} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
