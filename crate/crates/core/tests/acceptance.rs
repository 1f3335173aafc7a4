//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use metrize::bns::{bns_metrizable, bns_verdict, build_metric};
use metrize::continuity::{all_maps, is_continuous_topologically, BallTable};
use metrize::omega::{enumerate_omega, flagg_space};
use metrize::quantale::{Axiom, CheckPolicy, Regime, Status};
use metrize::topology::{enumerate_preorders, enumerate_topologies, FiniteTopology};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn round_trip() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=4 {
        let all = enumerate_topologies(n).map_err(|e| e.to_string())?;
        let recount = common::brute_force_topology_count(n);
        let preorders = enumerate_preorders(n).map_err(|e| e.to_string())?.len();
        ensure!(
            all.len() == recount && all.len() == preorders,
            "n={n}: {} vs recount {recount} / {preorders}",
            all.len()
        );
        for t in &all {
            let back = flagg_space(t).and_then(|s| s.open_sets()).map_err(|e| e.to_string())?;
            ensure!(&back == t, "open_sets(flagg_space({t})) = {back}");
        }
        counts.push(all.len());
    }
    ensure!(counts == [1, 4, 29, 355], "counts {counts:?}");
    Ok(format!("counts {counts:?}, all 389 round trips equal"))
}

fn value_quantale() -> Outcome {
    let policy = CheckPolicy::default();
    ensure!(policy.exhaustive_limit == 12 && policy.samples >= 10_000, "policy {policy:?}");
    let mut checked = 0;
    let mut sampled = 0;
    for n in 0..=4 {
        for t in enumerate_topologies(n).map_err(|e| e.to_string())? {
            if t.opens().len() > 4 {
                continue;
            }
            let omega = enumerate_omega(&t).map_err(|e| e.to_string())?;
            let report = omega.quantale.check_value_quantale(&policy);
            ensure!(report.value_quantale, "Ω(τ) for {t}: {}", serde_json::to_string(&report).unwrap());
            let lattice = &report.lattice;
            ensure!(
                lattice.completely_distributive && lattice.top_well_above_bottom && lattice.positives_meet_closed,
                "lattice conditions for {t}"
            );
            if omega.size() > 12 {
                ensure!(report.axioms.regime == Regime::StructuredAndSampled, "regime for {t}");
                let md = report.axioms.get(Axiom::MeetDistribution);
                let size = omega.size() as u64;
                // every element against ∅, the full set, all singletons and pairs, then the samples
                let structured = size * (2 + size + size * (size - 1) / 2);
                ensure!(md.cases >= structured + size * policy.samples as u64, "only {} cases for {t}", md.cases);
                ensure!(md.status == Status::NotFalsified, "status for {t}");
                sampled += 1;
            } else {
                ensure!(report.axioms.regime == Regime::Exhaustive, "regime for {t}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} topologies with |τ| ≤ 4 ({sampled} in the structured+sampled regime), zero failures"))
}

fn well_above_oracle() -> Outcome {
    let mut lattices = 0;
    let mut pairs = 0;
    for (name, l) in common::small_lattices() {
        if l.size() > 12 {
            continue;
        }
        let brute = l.brute_force_well_above_table().map_err(|e| e.to_string())?;
        for (y, row) in brute.iter().enumerate() {
            for (x, &expected) in row.iter().enumerate() {
                let fast = l.is_well_above(y, x).map_err(|e| e.to_string())?;
                ensure!(fast == expected, "{name}: {} ≺ {}", l.name(x), l.name(y));
                pairs += 1;
            }
        }
        lattices += 1;
    }
    Ok(format!("{lattices} lattices, {pairs} pairs agree"))
}

struct Carrier {
    name: String,
    balls: BallTable,
    topology: FiniteTopology,
}

fn continuity_equivalence() -> Outcome {
    let mut corpus = Vec::new();
    for n in 1..=3 {
        for t in enumerate_topologies(n).map_err(|e| e.to_string())? {
            let s = flagg_space(&t).map_err(|e| e.to_string())?;
            corpus.push(Carrier {
                name: format!("flagg {t}"),
                balls: s.ball_table().map_err(|e| e.to_string())?,
                topology: t,
            });
        }
    }
    for (r, s) in common::preorder_spaces(3) {
        let t = r.alexandrov_topology().map_err(|e| e.to_string())?;
        corpus.push(Carrier {
            name: format!("preorder {:?}", r.rows()),
            balls: s.ball_table().map_err(|e| e.to_string())?,
            topology: t,
        });
    }
    for (name, s, t) in common::rational_spaces() {
        corpus.push(Carrier {
            name: format!("rational {name}"),
            balls: s.ball_table().map_err(|e| e.to_string())?,
            topology: t,
        });
    }
    for c in &corpus {
        let derived = c.balls.open_sets().map_err(|e| e.to_string())?;
        ensure!(derived == c.topology, "{}: ball topology {derived} vs {}", c.name, c.topology);
    }
    let mut maps = 0usize;
    let mut continuous = 0usize;
    for src in &corpus {
        for dst in &corpus {
            for f in all_maps(src.topology.points(), dst.topology.points()) {
                let eps = src.balls.is_continuous(&f, &dst.balls).map_err(|e| e.to_string())?;
                let top = is_continuous_topologically(&f, &src.topology, &dst.topology).map_err(|e| e.to_string())?;
                ensure!(eps == top, "{:?} from {} to {}: ε-δ {eps}, topological {top}", f.table(), src.name, dst.name);
                maps += 1;
                continuous += eps as usize;
            }
        }
    }
    Ok(format!("{} spaces, {maps} maps ({continuous} continuous), all agree", corpus.len()))
}

fn bns_finite() -> Outcome {
    let mut metrizable = 0;
    let mut total = 0;
    for n in 1..=4 {
        for t in enumerate_topologies(n).map_err(|e| e.to_string())? {
            let m = bns_metrizable(&t);
            ensure!(m == t.is_discrete(), "{t}: metrizable {m}");
            match build_metric(&t) {
                Ok(space) => {
                    ensure!(m, "{t}: metric built for a non-metrizable space");
                    ensure!(space.is_separated() && space.is_symmetric(), "{t}: metric axioms");
                    let back = space.open_sets().map_err(|e| e.to_string())?;
                    ensure!(back == t, "{t}: metric round trip gave {back}");
                    metrizable += 1;
                }
                Err(_) => ensure!(!m, "{t}: metrizable but build_metric refused"),
            }
            total += 1;
        }
    }
    let s = bns_verdict(&FiniteTopology::sierpinski());
    ensure!(s.t0 && !s.regular && s.sigma_discrete && !s.metrizable, "Sierpiński verdict {s:?}");
    let i = bns_verdict(&FiniteTopology::indiscrete(2).unwrap());
    ensure!(!i.t0 && i.regular && i.sigma_discrete && !i.metrizable, "indiscrete verdict {i:?}");
    Ok(format!("{total} topologies, {metrizable} metrizable = discrete, worked verdicts match"))
}

fn preorder_correspondence() -> Outcome {
    let mut count = 0;
    for (r, s) in common::preorder_spaces(3) {
        let t = s.open_sets().map_err(|e| e.to_string())?;
        let alexandrov = r.alexandrov_topology().map_err(|e| e.to_string())?;
        ensure!(t == alexandrov, "{:?}: {t} vs {alexandrov}", r.rows());
        ensure!(t.specialization_preorder() == r, "{:?}: specialization differs", r.rows());
        count += 1;
    }
    Ok(format!("{count} preorders on ≤ 3 points"))
}

fn cli(args: &[&str]) -> Result<(i32, serde_json::Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_metrize")).args(args).output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let v = serde_json::from_str(&text).map_err(|e| format!("{e}: {text}"))?;
    Ok((out.status.code().unwrap_or(-1), v))
}

fn golden() -> Outcome {
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/sierpinski.json");
    let file = file.to_str().unwrap();
    let (code, v) = cli(&["flagg", file, "--ball", "1", "--radius", "[[1]]", "--enumerate-quantale"])?;
    ensure!(code == 0, "flagg exit {code}");
    ensure!(v["distances"][0][1]["display"] == "0", "d(0,1) = {}", v["distances"][0][1]["display"]);
    ensure!(v["distances"][1][0]["display"] == "↓{∅,S}", "d(1,0) = {}", v["distances"][1][0]["display"]);
    ensure!(v["ball"]["members"] == serde_json::json!(["1"]), "ball {}", v["ball"]);
    ensure!(v["quantale"]["elements"] == 20, "|Ω| = {}", v["quantale"]["elements"]);
    ensure!(v["quantale"]["report"]["value_quantale"] == true, "Ω axioms failed");
    let (code, v) = cli(&["bns", file])?;
    ensure!(code == 1, "bns exit {code}");
    ensure!(v["regular"] == false && v["metrizable"] == false, "bns {v}");
    Ok("d(0,1)=0, d(1,0)=↓{∅,S}, B(1)={1}, |Ω|=20, not regular, not metrizable".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("round-trip metrization", round_trip),
        ("Ω(τ) is a value quantale", value_quantale),
        ("well-above oracle equivalence", well_above_oracle),
        ("continuity equivalence", continuity_equivalence),
        ("BNS at finite scale", bns_finite),
        ("preorder correspondence", preorder_correspondence),
        ("golden Sierpiński example", golden),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {took:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {took:.1?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
