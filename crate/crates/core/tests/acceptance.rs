//! Acceptance criteria 1-10. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any FAIL.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_rational::BigRational;
use polyreal::chartable::CharacterTable;
use polyreal::cyclotomic::{rational, Cyclo};
use polyreal::groups;
use polyreal::h4;
use polyreal::perm::{conjugacy_classes, enumerate_group, subgroup_generated, Group, Permutation, DEFAULT_CAP};
use polyreal::psl;
use polyreal::realization::{
    analyze_gset, cone_report, coset_action, psd_sqrt_commuting, spherical_function, GSetAnalysis,
    InvariantMatrix, ReportOptions,
};
use polyreal::wreath;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Time limits per criterion.
const LIMIT_TABLES: Duration = Duration::from_secs(10);
const LIMIT_PSL19: Duration = Duration::from_secs(60);
const LIMIT_WEIL: Duration = Duration::from_secs(120);
const LIMIT_P43: Duration = Duration::from_secs(600);
const LIMIT_600: Duration = Duration::from_secs(300);
const LIMIT_120: Duration = Duration::from_secs(600);
const LIMIT_UNTIMED: Duration = Duration::from_secs(3600);

// Numeric square roots.
const SQRT_SAMPLES: usize = 100;
const SQRT_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(gens: Vec<Permutation>) -> Arc<Group> {
    Arc::new(enumerate_group(&gens, DEFAULT_CAP).expect("small group"))
}

fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn elems(g: &Group, ps: &[Permutation]) -> Vec<u32> {
    ps.iter().map(|p| g.index_of(p).expect("element")).collect()
}

struct Pair {
    name: &'static str,
    group: Arc<Group>,
    stabilizer: Vec<u32>,
}

fn corpus() -> Vec<Pair> {
    let mut out = Vec::new();
    let mut add = |name, g: Arc<Group>, h: Vec<Permutation>| {
        let stabilizer = elems(&g, &h);
        out.push(Pair { name, group: g, stabilizer });
    };
    let s3 = group(groups::symmetric(3));
    add("S3 regular", s3.clone(), vec![]);
    add("S3 on 3 points", s3, vec![perm(3, &[&[0, 1]])]);
    let s4 = group(groups::symmetric(4));
    add("S4 on 4 points", s4.clone(), vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2]])]);
    add("S4 / <(01),(23)>", s4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]);
    let a5 = group(groups::alternating(5));
    add("A5 on 5 points", a5.clone(), vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 3]])]);
    add("A5 / C5", a5, vec![perm(5, &[&[0, 1, 2, 3, 4]])]);
    add("Q8 regular", group(groups::quaternion()), vec![]);
    add("C3 regular", group(groups::cyclic(3)), vec![]);
    add("C7 regular", group(groups::cyclic(7)), vec![]);
    add("D5 on 5 points", group(groups::dihedral(5)), vec![groups::dihedral(5)[1].clone()]);
    let cube = group(vec![
        perm(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]),
        perm(8, &[&[1, 2], &[5, 6]]),
        perm(8, &[&[2, 4], &[3, 5]]),
    ]);
    add("cube vertices", cube.clone(), vec![cube.perm(cube.generators()[1]), cube.perm(cube.generators()[2])]);
    let s5 = group(groups::symmetric(5));
    add(
        "S5 / S3 x S2",
        s5,
        vec![perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2]]), perm(5, &[&[3, 4]])],
    );
    let sl25 = h4::icosian_permutation_group().unwrap();
    let minus_one = sl25.perm(sl25.generators()[3]);
    add("SL(2,5) / center", sl25, vec![minus_one]);
    // PSL(2,7) from the matrix family, vertex stabilizer <s1, s2>
    let g7 = psl::psl_group(7).unwrap();
    let params = psl::PslParams::with_y(7, 2).unwrap();
    let s = psl::lemma_generators(&g7, 7, &params.matrices()).unwrap();
    add("PSL(2,7) / <s1,s2>", g7.clone(), vec![g7.perm(s[1]), g7.perm(s[2])]);
    out
}

fn analyze(pair: &Pair) -> GSetAnalysis {
    let cd = Arc::new(conjugacy_classes(&pair.group));
    let table = Arc::new(CharacterTable::compute(&cd).expect("table"));
    let h = subgroup_generated(&pair.group, &pair.stabilizer);
    analyze_gset(&table, &Arc::new(coset_action(&h))).expect("analysis")
}

/// Orbits of the group on unordered pairs of points, by union-find.
fn unordered_pair_orbits(a: &GSetAnalysis) -> usize {
    let gset = a.gset();
    let n = gset.len();
    let idx = |x: usize, y: usize| if x <= y { x * n + y } else { y * n + x };
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gset.generator_actions() {
        for x in 0..n {
            for y in x..n {
                let (u, v) = (find(&mut parent, idx(x, y)), find(&mut parent, idx(g[x] as usize, g[y] as usize)));
                parent[u] = v;
            }
        }
    }
    (0..n)
        .flat_map(|x| (x..n).map(move |y| (x, y)))
        .map(|(x, y)| find(&mut parent, idx(x, y)))
        .collect::<HashSet<_>>()
        .len()
}

fn sorted_degrees(t: &CharacterTable) -> Vec<i64> {
    let mut d = t.degrees();
    d.sort();
    d
}

fn criterion_1() -> Outcome {
    let cases: Vec<(&str, Arc<Group>, Vec<i64>)> = vec![
        ("S3", group(groups::symmetric(3)), vec![1, 1, 2]),
        ("S4", group(groups::symmetric(4)), vec![1, 1, 2, 3, 3]),
        ("A5", group(groups::alternating(5)), vec![1, 3, 3, 4, 5]),
        ("Q8", group(groups::quaternion()), vec![1, 1, 1, 1, 2]),
        ("SL(2,5)", h4::icosian_permutation_group().unwrap(), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]),
    ];
    for (name, g, degrees) in &cases {
        let cd = Arc::new(conjugacy_classes(g));
        let t = CharacterTable::compute(&cd).map_err(|e| e.to_string())?;
        ensure(t.check_orthogonality(), || format!("{name}: orthogonality"))?;
        ensure(&sorted_degrees(&t) == degrees, || format!("{name}: degrees {:?}", sorted_degrees(&t)))?;
        let sum: i64 = degrees.iter().map(|d| d * d).sum();
        ensure(sum == g.order() as i64, || format!("{name}: sum of squares"))?;
    }
    Ok("S3, S4, A5, Q8, SL(2,5)".into())
}

fn criterion_2() -> Outcome {
    let r = psl::example_pipeline(None, ReportOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.cone.group_order == 3420, || "order".into())?;
    ensure(r.string_c, || "string C-group".into())?;
    ensure(r.schlafli == [9, 3], || format!("type {:?}", r.schlafli))?;
    ensure(r.stabilizer_order == 6, || "|H|".into())?;
    ensure(r.weil.degree == 9 && r.weil.multiplicity == 2, || format!("{:?}", r.weil))?;
    let c_entry = r
        .cone
        .sigma
        .iter()
        .find(|s| s.kind == "C" && s.multiplicity == 2 && s.subcone_dim == 4)
        .ok_or("no type-C subcone with m = 2, dim 4")?;
    ensure(r.cone.checks.all_pass(), || format!("{:?}", r.cone.checks))?;
    Ok(format!("sigma {} of degree {}: m = 2, dim 4, type C", c_entry.index, c_entry.degree))
}

fn criterion_3() -> Outcome {
    let mut out = Vec::new();
    for p in [7u64, 11, 19, 23] {
        let g = psl::psl_group(p).map_err(|e| e.to_string())?;
        let cd = Arc::new(conjugacy_classes(&g));
        let t = CharacterTable::compute(&cd).map_err(|e| e.to_string())?;
        let w = psl::weil_constituent_check(&t, p).map_err(|e| e.to_string())?;
        ensure(w.unique(), || format!("p = {p}: {} pairs", w.pairs.len()))?;
        ensure(w.degree == (p as i64 - 1) / 2, || format!("p = {p}: degree"))?;
        // direct re-check of the pattern on the pair found
        let (i, j) = w.pairs[0];
        let chi = &t.irreducibles()[i];
        ensure(chi.conj() == t.irreducibles()[j] && !chi.is_real(), || format!("p = {p}: pair"))?;
        for c in 0..cd.len() {
            let v = chi.value(c);
            let o = cd.element_order(c) as u64;
            let ok = match o {
                1 => v.as_integer().is_some(),
                _ if o == p => !v.is_real(),
                _ => [-1i64, 0, 1].iter().any(|&k| *v == Cyclo::from_int(k)),
            };
            ensure(ok, || format!("p = {p}: class {c} value {v}"))?;
        }
        out.push(format!("p={p}"));
    }
    Ok(out.join(" "))
}

fn criterion_4() -> Outcome {
    let p = 43;
    let y = psl::element_of_order(p, 7).ok_or("no y")?;
    let r = psl::counterexample_pipeline(p, y, None, ReportOptions { products: false })
        .map_err(|e| e.to_string())?;
    ensure(r.string_c && r.generation.generates, || "string C-group".into())?;
    ensure(r.stabilizer_order == 14, || "|H|".into())?;
    let bound = BigRational::new(4.into(), 7.into());
    ensure(psl::wythoff_bound(p) == bound, || "bound".into())?;
    ensure(
        BigRational::from_integer(r.weil.multiplicity.into()) >= bound && r.weil.multiplicity >= 1,
        || format!("m = {}", r.weil.multiplicity),
    )?;
    ensure(r.cone.checks.all_pass(), || format!("{:?}", r.cone.checks))?;
    Ok(format!("y = {y}, m_sigma = {} >= 4/7 (type {})", r.weil.multiplicity, r.weil.kind))
}

fn criterion_5() -> Outcome {
    let (r, a) = wreath::sixhundred_cell_report(None, ReportOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.layer_count == 9, || "layers".into())?;
    ensure(r.pure_dimensions == [1, 4, 4, 9, 9, 16, 16, 25, 36], || format!("{:?}", r.pure_dimensions))?;
    ensure(r.pure_dimensions.iter().sum::<i64>() == 120, || "sum".into())?;
    ensure(r.cosines_match, || "cosines vs phi(u)/phi(1)".into())?;
    ensure(r.gelfand == "gelfand", || r.gelfand.clone())?;
    // spherical functions of the constituents against the wreath rows
    let table = a.table();
    let h = a.gset().stabilizer();
    let reps: Vec<u32> = a.layers().reps.iter().map(|&p| a.gset().rep(p)).collect();
    let mut spherical: Vec<Vec<Cyclo>> = a
        .constituents()
        .iter()
        .map(|&s| {
            let chi = &table.irreducibles()[a.real_irreducibles()[s].constituents[0]];
            reps.iter().map(|&g| spherical_function(table, h, chi, g)).collect()
        })
        .collect();
    let mut formula: Vec<Vec<Cyclo>> = r.cosine_table.rows.iter().map(|row| row.values.clone()).collect();
    let key = |v: &Vec<Cyclo>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    spherical.sort_by_key(key);
    formula.sort_by_key(key);
    ensure(spherical == formula, || "spherical functions vs wreath formula".into())?;
    let cross = h4::cross_check_600cell(None).map_err(|e| e.to_string())?;
    ensure(cross.passed(), || format!("{cross:?}"))?;
    Ok("9 layers, dims 1,4,4,9,9,16,16,25,36, gelfand".into())
}

fn criterion_6() -> Outcome {
    let r = h4::validate_120cell(None, ReportOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.multiplicity_one == 15, || "m = 1 count".into())?;
    ensure(r.multiplicity_two_degrees == [16, 16, 48], || "m = 2".into())?;
    ensure(r.multiplicity_three_degrees == [25, 36], || "m = 3".into())?;
    ensure(r.all_real, || "types".into())?;
    ensure(r.cone == "15 x half-line, 3 x PSD 2x2, 2 x PSD 3x3", || r.cone.clone())?;
    ensure(r.report.checks.layer_identity, || "layer identity".into())?;
    ensure(r.report.checks.all_pass(), || format!("{:?}", r.report.checks))?;
    Ok(format!("{}; r+1 = {}", r.cone, r.report.layer_count))
}

fn criterion_7(analyses: &[(String, GSetAnalysis)]) -> Outcome {
    for (name, a) in analyses {
        let r = cone_report(a, ReportOptions::default());
        ensure(r.checks.all_pass(), || format!("{name}: {:?}", r.checks))?;
        ensure(r.checks.idempotents == Some(true), || format!("{name}: products"))?;
        let orbits = unordered_pair_orbits(a);
        ensure(orbits == a.layers().len(), || format!("{name}: {orbits} pair orbits vs {} layers", a.layers().len()))?;
    }
    Ok(format!("{} pairs", analyses.len()))
}

fn criterion_8(analyses: &[(String, GSetAnalysis)]) -> Outcome {
    let mut checked = 0;
    for (name, a) in analyses {
        for s in a.constituents() {
            if a.m_sigma()[s] != 1 {
                continue;
            }
            let cert = a.integrality_certificate(s).map_err(|e| e.to_string())?;
            for (i, v, ok) in cert {
                ensure(ok, || format!("{name}: sigma {s} layer {i}: {v}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} entries"))
}

fn criterion_9(analyses: &[(String, GSetAnalysis)]) -> Outcome {
    let small: Vec<&GSetAnalysis> = analyses.iter().map(|(_, a)| a).filter(|a| a.omega() <= 60).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for k in 0..SQRT_SAMPLES {
        let a = small[k % small.len()];
        let layers = a.layers();
        let mut values = vec![Cyclo::zero(); layers.len()];
        for s in a.constituents() {
            let c = rational(rng.gen_range(0..10), rng.gen_range(1..10));
            let q = a.homogeneous_projection(s);
            for (v, x) in values.iter_mut().zip(q.values()) {
                *v = &*v + &x.scale(&c);
            }
        }
        let m = InvariantMatrix::new(a.omega(), values);
        let full = m.expand_f64(a.gset(), layers);
        let n = full.len();
        let q = DMatrix::from_fn(n, n, |i, j| full[i][j]);
        let gens = a.gset().generator_actions();
        let root = psd_sqrt_commuting(&q, &gens).map_err(|e| format!("sample {k}: {e}"))?;
        let residual = (&root.a * root.a.transpose() - &q).amax();
        let mut commutation = 0.0f64;
        for g in &gens {
            let p = DMatrix::from_fn(n, n, |i, j| if g[i] as usize == j { 1.0 } else { 0.0 });
            commutation = commutation.max((&p * &root.a - &root.a * &p).amax());
        }
        ensure(residual <= SQRT_TOL && commutation <= SQRT_TOL, || {
            format!("sample {k}: residual {residual:e}, commutation {commutation:e}")
        })?;
        worst = worst.max(residual).max(commutation);
    }
    Ok(format!("{SQRT_SAMPLES} samples, worst residual {worst:.1e} <= {SQRT_TOL:e}"))
}

fn criterion_10(pairs: &[Pair]) -> Outcome {
    let mut seen = HashSet::new();
    let mut names = Vec::new();
    for pair in pairs.iter().filter(|p| p.group.order() <= 24) {
        if !seen.insert(pair.group.order() * 1000 + pair.group.degree()) {
            continue;
        }
        let u = &pair.group;
        let u_cd = Arc::new(conjugacy_classes(u));
        let u_table = CharacterTable::compute(&u_cd).map_err(|e| e.to_string())?;
        let w = wreath::wreath_c2(u).map_err(|e| e.to_string())?;
        let cd = Arc::new(conjugacy_classes(w.group()));
        let built = wreath::wreath_irreducibles(&w, &cd, &u_table).map_err(|e| e.to_string())?;
        let dixon = CharacterTable::compute(&cd).map_err(|e| e.to_string())?;
        ensure(built.irreducibles() == dixon.irreducibles(), || format!("{}: tables differ", pair.name))?;
        names.push(format!("|U|={}", u.order()));
    }
    Ok(names.join(" "))
}

fn main() {
    let mut failures = 0;
    let mut run = |n: u32, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(_) if t > limit => ("FAIL", format!("took {:.1}s", t.as_secs_f64())),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {n:>2} {verdict} [{name}] {:.2}s (limit {}s): {detail}",
            t.as_secs_f64(),
            limit.as_secs()
        );
    };

    run(1, "character tables", LIMIT_TABLES, &mut criterion_1);
    run(2, "PSL(2,19) example", LIMIT_PSL19, &mut criterion_2);
    run(3, "Weil characters", LIMIT_WEIL, &mut criterion_3);
    run(4, "PSL(2,43), y of order 7", LIMIT_P43, &mut criterion_4);
    run(5, "600-cell", LIMIT_600, &mut criterion_5);
    run(6, "120-cell", LIMIT_120, &mut criterion_6);

    let pairs = corpus();
    let analyses: Vec<(String, GSetAnalysis)> = pairs.iter().map(|p| (p.name.to_string(), analyze(p))).collect();
    run(7, "structural identities", LIMIT_UNTIMED, &mut || criterion_7(&analyses));
    run(8, "integrality", LIMIT_UNTIMED, &mut || criterion_8(&analyses));
    run(9, "PSD square roots", LIMIT_UNTIMED, &mut || criterion_9(&analyses));
    run(10, "wreath oracle", LIMIT_UNTIMED, &mut || criterion_10(&pairs));

    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
