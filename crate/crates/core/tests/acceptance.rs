//! One PASS/FAIL line per acceptance criterion. The long-running tier (AC11)
//! runs only with `--ignored`, `--include-ignored` or `GTPERM_EXTENDED=1`.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use gtperm::atlas::{construct, Group};
use gtperm::classes::ConjugacyClassTable;
use gtperm::dessins::{analyze_dessin, cyclic_structures, faithful_triple_classes, load_dessin};
use gtperm::gbar::{dihedral_closed_form, gt1_order, gt_full_order, GbarContext};
use gtperm::repro::run_table;
use gtperm::sg::{brute_force_sg, SgComputation, DEFAULT_BUDGET};
use gtperm::structure::FactoredOrder;
use gtperm::table::{ElementTable, FiniteGroup, DEFAULT_CAP};

type Outcome = Result<String, String>;

fn group(spec: &str) -> Result<Group, String> {
    let parsed = spec.parse().map_err(|e| format!("{spec}: {e}"))?;
    construct(&parsed).map_err(|e| format!("{spec}: {e}"))
}

fn sg(spec: &str) -> Result<SgComputation, String> {
    SgComputation::run(&group(spec)?, DEFAULT_CAP).map_err(|e| format!("{spec}: {e}"))
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::Integer::gcd(k, &n) == 1).count() as u64
}

fn ac1() -> Outcome {
    let c = sg("psl2:7")?;
    expect("pair classes", c.pc.len(), 114)?;
    let sizes = c.blocks.size_multiset();
    expect("block sizes", sizes, BTreeMap::from([(2, 4), (3, 8), (6, 9), (8, 1), (10, 2)]))?;
    Ok("114 pair classes, blocks 2x4 3x8 6x9 8x1 10x2".into())
}

fn ac2() -> Outcome {
    let r = sg("psl2:7")?.report().map_err(|e| e.to_string())?;
    expect("order", r.order.to_biguint(), BigUint::from(512u32))?;
    let fp = r.fingerprint.ok_or("no fingerprint")?;
    expect("center order", fp.center_order.clone(), BigUint::from(32u32))?;
    expect("center elementary abelian", fp.center_elementary_abelian(), true)?;
    expect("quotient order", fp.central_quotient_order.clone(), BigUint::from(16u32))?;
    expect("quotient elementary abelian", fp.central_quotient_elementary_abelian(), true)?;
    expect("shape", r.recognized, Some((3, 2)))?;
    Ok("order 512, center 32, quotient 16, C2^3 x D8^2".into())
}

fn ac3() -> Outcome {
    for spec in ["psl2:4", "psl2:8"] {
        let r = sg(spec)?.report().map_err(|e| e.to_string())?;
        expect(spec, r.order.is_one(), true)?;
    }
    Ok("trivial for psl2:4 and psl2:8".into())
}

fn ac4() -> Outcome {
    for (spec, exp, shape) in [("psl2:9", 15, (12, 1)), ("psl2:11", 48, (27, 7))] {
        let r = sg(spec)?.report().map_err(|e| e.to_string())?;
        expect(spec, r.order.clone(), FactoredOrder::from_map(BTreeMap::from([(2, exp)])))?;
        expect(spec, r.recognized, Some(shape))?;
    }
    Ok("2^15 (12,1) and 2^48 (27,7)".into())
}

fn ac5() -> Outcome {
    let want = [2, 1, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2, 2];
    for (n, &w) in (3u64..=15).zip(want.iter()) {
        let spec = format!("dihedral:{n}");
        let g = group(&spec)?;
        let ctx = GbarContext::new(&g, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let gbar = ctx.gbar(DEFAULT_CAP).map_err(|e| e.to_string())?;
        let k = gtperm::gbar::gt1(&gbar).order() as u64;
        expect(&spec, k, w)?;
        expect(&format!("{spec} closed form"), dihedral_closed_form(n), w)?;
        if n % 2 == 1 {
            expect(&format!("{spec} model order"), gbar.len() as u64, 4 * n * n * n)?;
        }
    }
    Ok("n = 3..15 match the closed form, model orders 4n^3".into())
}

fn ac6() -> Outcome {
    for n in 2u64..=12 {
        let spec = format!("cyclic:{n}");
        let g = group(&spec)?;
        let full = gt_full_order(&g, DEFAULT_CAP).map_err(|e| e.to_string())?.order() as u64;
        expect(&spec, full, euler_phi(n))?;
        let one = gt1_order(&g, DEFAULT_CAP).map_err(|e| e.to_string())?.order();
        expect(&spec, one, 1)?;
    }
    Ok("gt = phi(n), gt1 = 1 for n = 2..12".into())
}

fn ac7() -> Outcome {
    for spec in ["dihedral:4", "quaternion8"] {
        let k = gt1_order(&group(spec)?, DEFAULT_CAP).map_err(|e| e.to_string())?.order();
        expect(spec, k, 1)?;
    }
    let k = gt1_order(&group("dihedral:8")?, DEFAULT_CAP).map_err(|e| e.to_string())?.order();
    expect("dihedral:8 power of two", k.is_power_of_two(), true)?;
    Ok(format!("1, 1 and {k} for dihedral:8"))
}

fn ac8() -> Outcome {
    for spec in ["symmetric:3", "cyclic:5", "dihedral:5"] {
        let c = sg(spec)?;
        let brute = brute_force_sg(&c.h, &c.blocks, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        expect(spec, BigUint::from(brute.len()), c.decomposition.order().to_biguint())?;
    }
    Ok("brute force agrees on symmetric:3, cyclic:5, dihedral:5".into())
}

fn ac9() -> Outcome {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((1..=30).map(|n| format!("cyclic:{n}")));
    specs.extend((3..=30).map(|n| format!("dihedral:{n}")));
    specs.extend((1..=5).map(|n| format!("symmetric:{n}")));
    specs.extend((3..=5).map(|n| format!("alternating:{n}")));
    specs.extend(["quaternion8", "psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:9", "psl2:11"].map(String::from));
    specs.extend(["cyclic:3,dihedral:4", "cyclic:2,symmetric:3", "cyclic:5,symmetric:3"].map(String::from));
    let mut checked = 0;
    for spec in &specs {
        let g = group(spec)?;
        if *g.order() > BigUint::from(700u32) {
            continue;
        }
        let c = match SgComputation::run(&g, DEFAULT_CAP) {
            Ok(c) => c,
            // not 2-generated: no pair classes to act on
            Err(gtperm::error::Error::NotTwoGenerated) => continue,
            Err(e) => return Err(format!("{spec}: {e}")),
        };
        let rel = c.relations();
        if !rel.all() {
            return Err(format!("{spec}: {rel:?}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} groups of order <= 700"))
}

fn ac10() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/tetrahedron.txt");
    let d = load_dessin(&path).map_err(|e| e.to_string())?;
    let a = analyze_dessin(&d).map_err(|e| e.to_string())?;
    expect("monodromy order", a.monodromy_order, BigUint::from(12u32))?;
    expect("regular", a.regular, true)?;
    let t = ElementTable::from_generators(12, &[d.x.clone(), d.y.clone()], 1000).map_err(|e| e.to_string())?;
    let classes = ConjugacyClassTable::new(&t);
    let pair = (t.index_of(&d.x).unwrap(), t.index_of(&d.y).unwrap());
    let reps = cyclic_structures(&t, &classes, pair, 3).map_err(|e| e.to_string())?;
    let nontrivial = reps.iter().filter(|s| s.images[0] != t.identity()).count();
    expect("nontrivial C3 structures", nontrivial, 2)?;

    let s3 = sg("symmetric:3")?;
    let triples = faithful_triple_classes(&s3.table, &s3.classes).map_err(|e| e.to_string())?;
    expect("S3 triples vs pair classes", triples, s3.pc.len())?;
    Ok("tetrahedron regular of order 12, 2 nontrivial C3 structures, S3 bijection".into())
}

fn ac11() -> Outcome {
    let mut failed = Vec::new();
    let mut total = 0;
    for table in ["psl2", "simple"] {
        for c in run_table(table, true, DEFAULT_CAP).map_err(|e| e.to_string())? {
            total += 1;
            if !c.pass {
                failed.push(format!("{} {}: expected {}, computed {}", c.subject, c.quantity, c.expected, c.computed));
            }
        }
    }
    if failed.is_empty() {
        Ok(format!("{total} extended checks"))
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let extended = args.iter().any(|a| a == "--ignored" || a == "--include-ignored")
        || std::env::var("GTPERM_EXTENDED").is_ok_and(|v| v == "1");

    let secs = Duration::from_secs;
    let mut criteria: Vec<(&str, fn() -> Outcome, Duration)> = vec![
        ("AC1 pair classes of psl2:7", ac1, secs(10)),
        ("AC2 commuting group of psl2:7", ac2, secs(30)),
        ("AC3 trivial cases", ac3, secs(120)),
        ("AC4 psl2:9 and psl2:11", ac4, secs(600)),
        ("AC5 dihedral closed form", ac5, secs(300)),
        ("AC6 cyclic groups", ac6, secs(60)),
        ("AC7 2-groups", ac7, secs(60)),
        ("AC8 brute-force oracle", ac8, secs(60)),
        ("AC9 relation suite", ac9, secs(300)),
        ("AC10 dessins", ac10, secs(10)),
    ];
    if extended {
        criteria.push(("AC11 extended tier", ac11, Duration::MAX));
    }

    let mut all = true;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let line = match outcome {
            Ok(_) if took > limit => {
                all = false;
                format!("FAIL {name}: took {:.1}s, limit {}s", took.as_secs_f64(), limit.as_secs())
            }
            Ok(msg) => format!("PASS {name}: {msg} ({:.2}s)", took.as_secs_f64()),
            Err(msg) => {
                all = false;
                format!("FAIL {name}: {msg} ({:.2}s)", took.as_secs_f64())
            }
        };
        println!("{line}");
    }
    if !extended {
        println!("SKIP AC11 extended tier: run with --ignored or GTPERM_EXTENDED=1");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
