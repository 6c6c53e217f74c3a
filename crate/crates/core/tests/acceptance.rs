//! End-to-end acceptance suite.  Each test covers one acceptance
//! criterion and prints a single pass line (visible with --nocapture);
//! a failing assertion is the corresponding fail line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pbwdef::action::ModuleAction;
use pbwdef::coalgebra::{
    a1n_monoid, build_nilcoxeter, zero_hecke, AlgebraWithCoproduct, BuiltAlgebra, CoxeterData,
};
use pbwdef::deformation::{DeformationData, Instance, Method};
use pbwdef::io::{build_instance, cyclic_group_algebra, parse_str};
use pbwdef::linalg::Mat;
use pbwdef::poly::NCPoly;
use pbwdef::scalar::{Field, Scalar};
use pbwdef::theorems;
use pbwdef::word::{misordering_index, Generator, Word};

fn fixture(name: &str) -> Instance {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let text = std::fs::read_to_string(format!("{path}/{name}")).unwrap();
    build_instance(&parse_str(&text).unwrap()).unwrap()
}

fn mat(f: Field, n: usize, entries: &[(usize, usize, i64)]) -> Mat {
    let mut m = Mat::zero(f, n, n);
    for &(i, j, c) in entries {
        *m.at_mut(i, j) = f.from_i64(c);
    }
    m
}

fn identity(f: Field, n: usize) -> Mat {
    let mut m = Mat::zero(f, n, n);
    for i in 0..n {
        *m.at_mut(i, i) = f.one();
    }
    m
}

/// Extend matrices assigned to the presentation generators to every basis
/// element of a constructively built algebra, by multiplying along the
/// basis words.
fn ops_along_basis(built: &BuiltAlgebra, gen_mats: &[Mat], dv: usize) -> Vec<Mat> {
    let f = built.algebra.field;
    built.basis_words[1..]
        .iter()
        .map(|w| {
            let mut acc = identity(f, dv);
            for g in &w.0 {
                match g {
                    Generator::Algebra(j) => acc = acc.mul(&gen_mats[*j as usize - 1]),
                    Generator::Module(_) => unreachable!(),
                }
            }
            acc
        })
        .collect()
}

/// Candidate generator matrices of size `dv`; invalid ones are filtered
/// by the module axiom later.
fn candidate_mats(f: Field, dv: usize) -> Vec<Mat> {
    let mut out = vec![Mat::zero(f, dv, dv), identity(f, dv)];
    if dv >= 2 {
        out.push(mat(f, dv, &[(0, 1, 1)])); // nilpotent E12
        let mut d = identity(f, dv);
        *d.at_mut(1, 1) = f.from_i64(-1);
        out.push(d); // reflection diag(1,-1,...)
        out.push(identity(f, dv).scale(&f.from_i64(-1))); // -id
        // swap of the first two coordinates
        let mut s = identity(f, dv);
        *s.at_mut(0, 0) = f.zero();
        *s.at_mut(1, 1) = f.zero();
        *s.at_mut(0, 1) = f.one();
        *s.at_mut(1, 0) = f.one();
        out.push(s);
        // negated projection onto the first coordinate
        out.push(mat(f, dv, &[(0, 0, -1)]));
        // order-3 companion of x^2 + x + 1
        out.push(mat(f, dv, &[(0, 1, -1), (1, 0, 1), (1, 1, -1)]));
    }
    if dv >= 3 {
        out.push(mat(f, dv, &[(0, 1, 1), (1, 2, 1)])); // two-step nilpotent
        out.push(mat(f, dv, &[(0, 2, 1)]));
    }
    out
}

fn random_deformation(
    rng: &mut ChaCha8Rng,
    f: Field,
    da: usize,
    dv: usize,
    with_lambda: bool,
) -> DeformationData {
    let mut def = DeformationData::zero(f, da, dv);
    let entry = |rng: &mut ChaCha8Rng| -> Option<i64> {
        if rng.gen_bool(0.3) {
            Some(rng.gen_range(-2..=2))
        } else {
            None
        }
    };
    for j in 1..dv {
        for k in 0..j {
            for l in 0..da {
                if let Some(c) = entry(rng) {
                    def.set_v(j, k, l, f.from_i64(c));
                }
            }
            for h in 0..dv {
                if let Some(c) = entry(rng) {
                    def.set_w(j, k, h, f.from_i64(c));
                }
            }
        }
    }
    if with_lambda {
        for j in 1..da {
            for k in 0..dv {
                for l in 0..da {
                    if let Some(c) = entry(rng) {
                        def.set_q(j, k, l, f.from_i64(c));
                    }
                }
            }
        }
    }
    def
}

/// Coefficient algebras with compatible actions used by the random
/// suites: each entry is (algebra, list of valid actions on some V).
fn algebra_zoo(f: Field) -> Vec<(AlgebraWithCoproduct, Vec<ModuleAction>)> {
    let mut zoo: Vec<AlgebraWithCoproduct> = Vec::new();
    let mut gen_counts: Vec<usize> = Vec::new();
    let mut builts: Vec<Option<BuiltAlgebra>> = Vec::new();

    let trivial = pbwdef::coalgebra::trivial_algebra(f);
    zoo.push(trivial);
    gen_counts.push(0);
    builts.push(None);
    for d in [vec![2], vec![3], vec![2, 2]] {
        let b = build_nilcoxeter(f, &CoxeterData::a1n(d.clone()), 12, 100_000).unwrap();
        zoo.push(b.algebra.clone());
        gen_counts.push(d.len());
        builts.push(Some(b));
    }
    let b = zero_hecke(f, &CoxeterData::a1n(vec![2]), 12, 100_000).unwrap();
    zoo.push(b.algebra.clone());
    gen_counts.push(1);
    builts.push(Some(b));
    for n in [2usize, 3, 4] {
        zoo.push(cyclic_group_algebra(f, n).unwrap());
        gen_counts.push(1);
        builts.push(None);
    }

    let mut out = Vec::new();
    for ((alg, gens), built) in zoo.into_iter().zip(gen_counts).zip(builts) {
        let mut actions = Vec::new();
        for dv in 1..=3usize {
            let candidates = candidate_mats(f, dv);
            if gens == 0 {
                actions.push(ModuleAction::from_ops(f, 1, dv, &[]));
                continue;
            }
            for c in &candidates {
                let gen_mats = vec![c.clone(); gens];
                let ops = match &built {
                    Some(b) => ops_along_basis(b, &gen_mats, dv),
                    // cyclic group: basis element j is the j-th power.
                    None => (1..alg.dim)
                        .map(|j| {
                            let mut acc = identity(f, dv);
                            for _ in 0..j {
                                acc = acc.mul(c);
                            }
                            acc
                        })
                        .collect(),
                };
                let act = ModuleAction::from_ops(f, alg.dim, dv, &ops);
                if act.check_module_axiom(&alg) {
                    actions.push(act);
                }
            }
        }
        assert!(!actions.is_empty());
        out.push((alg, actions));
    }
    out
}

// ----------------------------------------------------------------------
// 1. Dimension table
// ----------------------------------------------------------------------

fn run_dimension_table(f: Field) {
    for d in 2..=5usize {
        let b = build_nilcoxeter(f, &CoxeterData::a1n(vec![d]), 12, 100_000).unwrap();
        assert_eq!(b.algebra.dim, d, "A1 nil algebra with exponent {d}");
    }
    let b = build_nilcoxeter(f, &CoxeterData::a2(), 10, 100_000).unwrap();
    assert_eq!(b.algebra.dim, 6, "type A2");
    let b = build_nilcoxeter(f, &CoxeterData::b2(), 12, 100_000).unwrap();
    assert_eq!(b.algebra.dim, 8, "type B2");
    for d in [
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![2, 4],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 3, 4],
        vec![4, 4, 4],
    ] {
        let expected: usize = d.iter().product();
        let b = build_nilcoxeter(f, &CoxeterData::a1n(d.clone()), 16, 200_000).unwrap();
        assert_eq!(b.algebra.dim, expected, "A1^n with exponents {d:?}");
        let monoid = a1n_monoid(&d).unwrap();
        assert_eq!(monoid.size(), expected + 1, "monoid for {d:?}");
        let alg = monoid.algebra(f).unwrap();
        assert_eq!(alg.dim, expected, "contracted monoid algebra for {d:?}");
    }
    let b = zero_hecke(f, &CoxeterData::a2(), 10, 100_000).unwrap();
    assert_eq!(b.algebra.dim, 6, "0-Hecke A2");
}

#[test]
fn criterion_1_dimension_table() {
    run_dimension_table(Field::Q);
    println!("criterion 1 (dimension table): PASS");
}

// ----------------------------------------------------------------------
// 2. Four-way PBW agreement
// ----------------------------------------------------------------------

fn run_four_way_agreement(f: Field, seed: u64, budget: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zoo = algebra_zoo(f);
    let mut count = 0usize;
    'outer: loop {
        for (alg, actions) in &zoo {
            for act in actions {
                let def = random_deformation(&mut rng, f, alg.dim, act.dim_v, true);
                let inst = Instance {
                    alg: alg.clone(),
                    act: act.clone(),
                    def,
                };
                // Any internal disagreement surfaces as an error here.
                inst.pbw_check(&Method::ALL, 4, 100_000)
                    .expect("four methods must agree");
                count += 1;
                if count >= budget {
                    break 'outer;
                }
            }
        }
    }
    count
}

#[test]
fn criterion_2_four_way_agreement() {
    // Named fixtures first.
    for name in ["weyl.alg", "usl2.alg", "nc_a2.alg"] {
        let inst = fixture(name);
        let rep = inst.pbw_check(&Method::ALL, 4, 100_000).unwrap();
        assert!(rep.pbw, "{name} must have the basis property");
    }
    // Rank-1 reflection data over the order-2 group algebra.
    let f = Field::Q;
    let alg = cyclic_group_algebra(f, 2).unwrap();
    let act = ModuleAction::from_ops(f, 2, 2, &[identity(f, 2).scale(&f.from_i64(-1))]);
    let mut def = DeformationData::zero(f, 2, 2);
    def.set_v(1, 0, 0, f.one());
    def.set_v(1, 0, 1, f.from_i64(-1));
    let inst = Instance { alg, act, def };
    let rep = inst.pbw_check(&Method::ALL, 4, 100_000).unwrap();
    assert!(rep.pbw, "reflection data must have the basis property");

    let n = run_four_way_agreement(Field::Q, 17, 200);
    assert!(n >= 200);
    println!("criterion 2 (four-way agreement, {n} random instances): PASS");
}

// ----------------------------------------------------------------------
// 3. Nilpotent-ideal PBW classification sweeps
// ----------------------------------------------------------------------

fn nil2_instance(f: Field, dv: usize, t: Mat) -> Instance {
    let built = build_nilcoxeter(f, &CoxeterData::a1n(vec![2]), 8, 10_000).unwrap();
    let act = ModuleAction::from_ops(f, 2, dv, &[t]);
    let def = DeformationData::zero(f, 2, dv);
    Instance {
        alg: built.algebra,
        act,
        def,
    }
}

fn run_nilcox_sweeps(f: Field) -> (usize, usize) {
    // dim V = 2, exhaustive kappa entries in {-1, 0, 1}: the basis
    // property holds iff im kappa_V is primitive in V and im kappa_A is
    // primitive in A.
    let vals = [-1i64, 0, 1];
    let mut count2 = 0usize;
    for w0 in vals {
        for w1 in vals {
            for v0 in vals {
                for v1 in vals {
                    let mut inst = nil2_instance(f, 2, mat(f, 2, &[(0, 1, 1)]));
                    inst.def.set_w(1, 0, 0, f.from_i64(w0));
                    inst.def.set_w(1, 0, 1, f.from_i64(w1));
                    inst.def.set_v(1, 0, 0, f.from_i64(v0));
                    inst.def.set_v(1, 0, 1, f.from_i64(v1));
                    let predicted = w1 == 0 && v0 == 0;
                    let cls = theorems::nilcox_pbw_classify(&inst).unwrap();
                    assert_eq!(cls.pbw_predicted, predicted, "{:?}", (w0, w1, v0, v1));
                    let rep = inst.pbw_check(&Method::ALL, 4, 100_000).unwrap();
                    assert_eq!(rep.pbw, predicted, "{:?}", (w0, w1, v0, v1));
                    count2 += 1;
                }
            }
        }
    }
    // dim V = 3, lambda = kappa_V = 0: the basis property holds iff
    // kappa_A vanishes.
    let mut count3 = 0usize;
    for c10 in vals {
        for d10 in vals {
            for c20 in vals {
                for d20 in vals {
                    for c21 in vals {
                        for d21 in vals {
                            let mut inst =
                                nil2_instance(f, 3, mat(f, 3, &[(0, 1, 1)]));
                            inst.def.set_v(1, 0, 0, f.from_i64(c10));
                            inst.def.set_v(1, 0, 1, f.from_i64(d10));
                            inst.def.set_v(2, 0, 0, f.from_i64(c20));
                            inst.def.set_v(2, 0, 1, f.from_i64(d20));
                            inst.def.set_v(2, 1, 0, f.from_i64(c21));
                            inst.def.set_v(2, 1, 1, f.from_i64(d21));
                            let predicted = [c10, d10, c20, d20, c21, d21]
                                .iter()
                                .all(|&c| c == 0);
                            let cls = theorems::nilcox_pbw_classify(&inst).unwrap();
                            assert_eq!(cls.pbw_predicted, predicted);
                            let rep =
                                inst.pbw_check(&Method::ALL, 3, 100_000).unwrap();
                            assert_eq!(
                                rep.pbw,
                                predicted,
                                "{:?}",
                                (c10, d10, c20, d20, c21, d21)
                            );
                            count3 += 1;
                        }
                    }
                }
            }
        }
    }
    (count2, count3)
}

#[test]
fn criterion_3_nilpotent_classification_sweeps() {
    let (c2, c3) = run_nilcox_sweeps(Field::Q);
    println!(
        "criterion 3 (classification sweeps, {c2} + {c3} instances): PASS"
    );
}

// ----------------------------------------------------------------------
// 4. Grouplike Jacobi classifier agreement
// ----------------------------------------------------------------------

fn run_grouplike_agreement(f: Field, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0usize;
    let mut algebras: Vec<(AlgebraWithCoproduct, Vec<ModuleAction>)> = Vec::new();
    for n in [2usize, 3] {
        let alg = cyclic_group_algebra(f, n).unwrap();
        let mut actions = Vec::new();
        for dv in 2..=3usize {
            for c in candidate_mats(f, dv) {
                let ops: Vec<Mat> = (1..alg.dim)
                    .map(|j| {
                        let mut acc = identity(f, dv);
                        for _ in 0..j {
                            acc = acc.mul(&c);
                        }
                        acc
                    })
                    .collect();
                let act = ModuleAction::from_ops(f, alg.dim, dv, &ops);
                if act.check_module_axiom(&alg) {
                    actions.push(act);
                }
            }
        }
        algebras.push((alg, actions));
    }
    // Nilpotent grouplike generator (exercises the invertible id - T
    // degeneration).
    let built = build_nilcoxeter(f, &CoxeterData::a1n(vec![2]), 8, 10_000).unwrap();
    let mut actions = Vec::new();
    for dv in 2..=3usize {
        for c in candidate_mats(f, dv) {
            let act = ModuleAction::from_ops(f, 2, dv, &[c.clone()]);
            if act.check_module_axiom(&built.algebra) {
                actions.push(act);
            }
        }
    }
    algebras.push((built.algebra, actions));

    for (alg, actions) in &algebras {
        for act in actions {
            for _ in 0..8 {
                let mut def = DeformationData::zero(f, alg.dim, act.dim_v);
                for j in 1..act.dim_v {
                    for k in 0..j {
                        for l in 0..alg.dim {
                            if rng.gen_bool(0.4) {
                                def.set_v(j, k, l, f.from_i64(rng.gen_range(-2..=2)));
                            }
                        }
                    }
                }
                let inst = Instance {
                    alg: alg.clone(),
                    act: act.clone(),
                    def,
                };
                let rep = theorems::jacobi_grouplike_classify(&inst).unwrap();
                assert!(
                    rep.agreement(),
                    "classifier disagrees with the direct identity"
                );
                count += 1;
            }
        }
    }
    count
}

#[test]
fn criterion_4_grouplike_classifier_agreement() {
    let n = run_grouplike_agreement(Field::Q, 23);
    assert!(n >= 100);
    println!("criterion 4 (grouplike classifier, {n} instances): PASS");
}

// ----------------------------------------------------------------------
// 5. Rewriting engine: termination measure and strategy independence
// ----------------------------------------------------------------------

fn confluent_suite_instances() -> Vec<Instance> {
    let f = Field::Q;
    let mut out = vec![fixture("weyl.alg"), fixture("usl2.alg")];
    // Nil generator with kappa_A = T.
    let mut inst = nil2_instance(f, 2, mat(f, 2, &[(0, 1, 1)]));
    inst.def.set_v(1, 0, 1, f.one());
    out.push(inst);
    // Order-2 group with the sign action and kappa_A = 1 - g.
    let alg = cyclic_group_algebra(f, 2).unwrap();
    let act = ModuleAction::from_ops(f, 2, 2, &[identity(f, 2).scale(&f.from_i64(-1))]);
    let mut def = DeformationData::zero(f, 2, 2);
    def.set_v(1, 0, 0, f.one());
    def.set_v(1, 0, 1, f.from_i64(-1));
    out.push(Instance { alg, act, def });
    out
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Generator], max_len: usize) -> Word {
    let len = rng.gen_range(2..=max_len);
    Word(
        (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect(),
    )
}

#[test]
fn criterion_5_rewriting_engine() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let instances = confluent_suite_instances();

    // Termination measure: a single rewrite of a word only produces words
    // of strictly smaller misordering index.
    let mut steps = 0usize;
    'measure: loop {
        for inst in &instances {
            let sys = inst.build_presentation().unwrap();
            let alphabet = inst.alphabet();
            let mut stack = vec![random_word(&mut rng, &alphabet, 6)];
            while let Some(w) = stack.pop() {
                let before = misordering_index(&w);
                let p = NCPoly::from_word(w, inst.field().one());
                let Some((q, _)) = sys.reduce_once(&p) else {
                    continue;
                };
                for (w2, _) in q.terms() {
                    assert!(
                        misordering_index(w2) < before,
                        "misordering index failed to decrease"
                    );
                    stack.push(w2.clone());
                }
                steps += 1;
                if steps >= 1000 {
                    break 'measure;
                }
            }
        }
    }

    // Strategy independence: a random reduction strategy reaches the
    // same normal form as the deterministic one on confluent systems.
    let mut polys = 0usize;
    'strategy: loop {
        for inst in &instances {
            let sys = inst.build_presentation().unwrap();
            assert!(inst.check_ambiguities(100_000).unwrap().pass());
            let alphabet = inst.alphabet();
            let f = inst.field();
            let mut p = NCPoly::zero();
            for _ in 0..rng.gen_range(1..=3) {
                p = p.add(&NCPoly::from_word(
                    random_word(&mut rng, &alphabet, 5),
                    f.from_i64(rng.gen_range(-2..=2)),
                ));
            }
            let deterministic = sys.normal_form(&p, 100_000).unwrap();
            // Random strategy: repeatedly pick any reducible term and any
            // match within it.
            let mut cur = p;
            for _ in 0..100_000 {
                let choices: Vec<(Word, Scalar, usize, usize)> = cur
                    .terms()
                    .flat_map(|(w, c)| {
                        sys.all_matches(w)
                            .into_iter()
                            .map(|(pos, rule)| (w.clone(), c.clone(), pos, rule))
                    })
                    .collect();
                if choices.is_empty() {
                    break;
                }
                let (w, c, pos, rule_idx) =
                    choices[rng.gen_range(0..choices.len())].clone();
                let rule = &sys.rules()[rule_idx];
                let prefix = Word(w.0[..pos].to_vec());
                let suffix = Word(w.0[pos + rule.lhs.len()..].to_vec());
                let replaced = rule.rhs.sandwich(&prefix, &suffix).scale(&c);
                cur = cur.sub(&NCPoly::from_word(w, c)).add(&replaced);
            }
            assert_eq!(
                cur, deterministic,
                "random strategy reached a different normal form"
            );
            polys += 1;
            if polys >= 1000 {
                break 'strategy;
            }
        }
    }
    println!("criterion 5 (rewriting engine, {steps} steps / {polys} polynomials): PASS");
}

// ----------------------------------------------------------------------
// 6. Truncated center and abelianization
// ----------------------------------------------------------------------

#[test]
fn criterion_6_center_and_abelianization() {
    let f = Field::Q;
    let mut inst = nil2_instance(f, 2, mat(f, 2, &[(0, 1, 1)]));
    inst.def.set_v(1, 0, 1, f.one());
    let center = theorems::center_truncated(&inst, 3, 100_000).unwrap();
    assert_eq!(center.dim, 1, "degree-3 centralizer must be the scalars");
    assert!(center.prim_two_sided && center.lambda_into_ideal);
    let ab = theorems::abelianization_truncated(&inst, 3, 100_000).unwrap();
    assert_eq!(ab.graded_dims, vec![1, 2, 3, 4]);
    assert!(ab.matches(), "closed-form prediction must match");
    println!("criterion 6 (center and abelianization): PASS");
}

// ----------------------------------------------------------------------
// 7. Characteristic-free smoke over F5
// ----------------------------------------------------------------------

#[test]
fn criterion_7_finite_field_smoke() {
    let f = Field::fp(5).unwrap();
    run_dimension_table(f);
    let n = run_four_way_agreement(f, 41, 200);
    assert!(n >= 200);
    let (c2, c3) = run_nilcox_sweeps(f);
    assert_eq!((c2, c3), (81, 729));
    let g = run_grouplike_agreement(f, 43);
    assert!(g >= 100);
    println!("criterion 7 (characteristic 5 smoke): PASS");
}

// ----------------------------------------------------------------------
// 8. Deformation maps from homogenization
// ----------------------------------------------------------------------

#[test]
fn criterion_8_mu_extraction() {
    for name in ["weyl.alg", "usl2.alg"] {
        let inst = fixture(name);
        let mu = inst.homogenize_and_extract_mu(100_000).unwrap();
        assert!(mu.all_ok(), "{name}: extracted maps must satisfy the identities");
    }
    println!("criterion 8 (deformation map extraction): PASS");
}
