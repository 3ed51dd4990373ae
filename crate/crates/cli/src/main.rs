use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use blockcalc::affine_labels::{
    atypical_blocks, block_chain, block_of, delta_collision_check, enumerate_blocks, ext1_simples, normalize,
    BlockId, Level, SimpleLabel,
};
use blockcalc::crosscheck::{align, diff_tables, table_affine, table_qg, table_zigzag, ExtTable, Inventory};
use blockcalc::ext_engine::{loewy_dot, loewy_dot_with, radical_filtration};
use blockcalc::quantum_group::{QGParams, QgInventory, QuantumGroup};
use blockcalc::zigzag::{Report, Window, Zigzag, ZigzagName};

#[derive(Parser)]
#[command(name = "blockcalc", version, about = "Exact Ext and Loewy computations for atypical blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unrolled small quantum group of sl2 at q = exp(πi/r).
    Qg(QgArgs),
    /// Label calculus for admissible-level weight modules.
    Affine(AffineArgs),
    /// The zigzag model of the atypical block.
    Zigzag(ZigzagArgs),
    /// Run a verification suite and report mismatches.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum QgTable {
    Ext1,
    Loewy,
}

#[derive(Args)]
struct QgArgs {
    #[arg(long)]
    r: u64,
    /// Index i of the simple S_i generating the block.
    #[arg(long, default_value_t = 0)]
    block: i64,
    /// Simples L_n with |n| <= window.
    #[arg(long, default_value_t = 4)]
    window: i64,
    #[arg(long, value_enum, default_value = "ext1")]
    table: QgTable,
    /// Weights are taken in (1/denominator)Z.
    #[arg(long, default_value_t = 2)]
    denominator: u64,
}

#[derive(Args)]
struct AffineArgs {
    #[arg(long)]
    u: i64,
    #[arg(long)]
    v: i64,
    #[command(subcommand)]
    command: AffineCommand,
}

#[derive(Subcommand)]
enum AffineCommand {
    /// Atypical block census with a partition check.
    Blocks {
        #[arg(long, default_value_t = 8)]
        ell: i64,
    },
    /// Canonical atypical simples with |ℓ| <= ell and their blocks.
    Simples {
        #[arg(long, default_value_t = 2)]
        ell: i64,
    },
    /// Simple objects L_j of the block σ^shift(C_r).
    Chain {
        #[arg(long)]
        r: i64,
        /// Index range `N0..N1`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// dim Ext¹(A, B) for labels like `L(1)`, `D+(1,1,0)`, `D-(2,1,-1)`, `E(1/3,1,1,0)`.
    Extpair {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Exhaustive Δ collision scan.
    DeltaCheck,
}

#[derive(Args)]
struct ZigzagArgs {
    /// Vertex window `LO..HI`.
    #[arg(long, allow_hyphen_values = true, default_value = "-8..8")]
    window: String,
    #[command(subcommand)]
    command: ZigzagCommand,
}

#[derive(Subcommand)]
enum ZigzagCommand {
    Ext1 {
        a: String,
        b: String,
    },
    Exts {
        a: String,
        b: String,
        s: usize,
    },
    /// Loewy diagram as DOT.
    Loewy {
        name: String,
    },
    /// Module matrices as JSON.
    Build {
        name: String,
    },
    VerifyMain,
    /// Extension table and middle terms.
    VerifyExtensions {
        #[arg(long, default_value_t = 3)]
        mmax: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Affine,
    Zigzag,
    Qg,
    Cross,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 3)]
    u: i64,
    #[arg(long, default_value_t = 2)]
    v: i64,
    #[arg(long, default_value_t = 2)]
    r: u64,
    #[arg(long, default_value_t = 8)]
    window: i64,
    /// Emit the JSON report.
    #[arg(long)]
    json: bool,
}

type Res<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run_qg(a: &QgArgs) -> Res<()> {
    let p = QGParams::new(a.r, a.denominator).map_err(err)?;
    let qg = QuantumGroup::new(p);
    match a.table {
        QgTable::Ext1 => {
            let table = qg.ext_table(a.block, a.window).map_err(err)?;
            let entries: Vec<Value> = table
                .iter()
                .map(|((n, m), d)| {
                    json!({
                        "n": n, "m": m,
                        "lhs": qg.block_label(a.block, *n).to_string(),
                        "rhs": qg.block_label(a.block, *m).to_string(),
                        "dim": d,
                    })
                })
                .collect();
            print_json(&json!({"r": a.r, "block": a.block, "window": a.window, "ext1": entries}));
        }
        QgTable::Loewy => {
            for n in -a.window..=a.window {
                let m = qg.block_projective(a.block, n).map_err(err)?;
                let layers = radical_filtration(qg.presentation(), &m, &QgInventory { qg: &qg }).map_err(err)?;
                print!("{}", loewy_dot(&format!("P_{n}"), &layers));
            }
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Res<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected N0..N1, got {s}"))?;
    Ok((a.trim().parse().map_err(err)?, b.trim().parse().map_err(err)?))
}

fn run_affine(a: &AffineArgs) -> Res<()> {
    let lv = Level::new(a.u, a.v).map_err(err)?;
    match &a.command {
        AffineCommand::Blocks { ell } => {
            let census = enumerate_blocks(&lv, *ell);
            print_json(&serde_json::to_value(&census).map_err(err)?);
            if !census.passed() {
                return Err("block census failed".into());
            }
        }
        AffineCommand::Simples { ell } => {
            let mut out = Vec::new();
            for r in 1..lv.u {
                for s in 1..lv.v {
                    for l in -ell..=*ell {
                        let x = SimpleLabel::dplus(r, s, l);
                        out.push(json!({"label": x.to_json(), "block": block_of(&lv, &x).map_err(err)?.to_json()}));
                    }
                }
            }
            print_json(&json!(out));
        }
        AffineCommand::Chain { r, n, shift } => {
            let (lo, hi) = parse_range(n)?;
            let b = BlockId::Atypical { r: *r, n: *shift };
            let chain = block_chain(&lv, &b, lo, hi).map_err(err)?;
            let items: Vec<Value> = chain.iter().map(|(j, x)| json!({"n": j, "label": x.to_json()})).collect();
            print_json(&json!({"block": b.to_json(), "chain": items}));
        }
        AffineCommand::Extpair { a: x, b: y } => {
            let x: SimpleLabel = x.parse().map_err(err)?;
            let y: SimpleLabel = y.parse().map_err(err)?;
            let d = ext1_simples(&lv, &x, &y).map_err(err)?;
            print_json(&json!({
                "lhs": normalize(&lv, &x).map_err(err)?.to_json(),
                "rhs": normalize(&lv, &y).map_err(err)?.to_json(),
                "dim": d,
            }));
        }
        AffineCommand::DeltaCheck => {
            let ok = delta_collision_check(&lv);
            print_json(&json!({"u": lv.u, "v": lv.v, "holds": ok}));
            if !ok {
                return Err("Δ collision check failed".into());
            }
        }
    }
    Ok(())
}

fn adjacent(a: &str, b: &str) -> bool {
    match (a.parse::<ZigzagName>(), b.parse::<ZigzagName>()) {
        (Ok(ZigzagName::L(x)), Ok(ZigzagName::L(y))) => (x - y).abs() == 1,
        _ => true,
    }
}

fn report_json(suite: &str, window: impl ToString, rep: &Report) -> Value {
    let mismatches: Vec<Value> = rep
        .mismatches
        .iter()
        .map(|m| json!({"item": m.item, "lhs": m.lhs, "rhs": m.rhs, "expected": m.expected, "got": m.got}))
        .collect();
    json!({"suite": suite, "window": window.to_string(), "checks": rep.checks, "mismatches": mismatches})
}

fn run_zigzag(a: &ZigzagArgs) -> Res<bool> {
    let window: Window = a.window.parse().map_err(err)?;
    let zz = Zigzag::new(window);
    let name = |s: &str| s.parse::<ZigzagName>().map_err(err);
    match &a.command {
        ZigzagCommand::Ext1 { a: x, b: y } => {
            let d = zz.ext1(name(x)?, name(y)?).map_err(err)?;
            print_json(&json!({"lhs": x, "rhs": y, "dim": d}));
        }
        ZigzagCommand::Exts { a: x, b: y, s } => {
            let d = zz.ext_s(name(x)?, name(y)?, *s).map_err(err)?;
            print_json(&json!({"lhs": x, "rhs": y, "s": s, "dim": d}));
        }
        ZigzagCommand::Loewy { name: x } => {
            let rep = zz.build(name(x)?).map_err(err)?;
            let layers = zz.loewy(&rep).map_err(err)?;
            print!("{}", loewy_dot_with(x, &layers, adjacent));
        }
        ZigzagCommand::Build { name: x } => {
            let rep = zz.build(name(x)?).map_err(err)?;
            print_json(&rep.to_json());
        }
        ZigzagCommand::VerifyMain => {
            let rep = zz.verify_main().map_err(err)?;
            print_json(&report_json("zigzag-main", window, &rep));
            return Ok(rep.passed());
        }
        ZigzagCommand::VerifyExtensions { mmax } => {
            let rep = zz.verify_extension_list(*mmax).map_err(err)?;
            print_json(&report_json("zigzag-extensions", window, &rep));
            return Ok(rep.passed());
        }
    }
    Ok(true)
}

fn affine_suite(lv: &Level) -> Report {
    let mut rep = Report::default();
    rep.record("delta collisions", lv, "scan", 1, usize::from(delta_collision_check(lv)));
    let census = enumerate_blocks(lv, 8);
    rep.record("block count", lv, "atypical", ((lv.u - 1) * lv.v) as usize, census.atypical_blocks.len());
    rep.record("partition", lv, "violations", 0, census.violations.len());
    for b in atypical_blocks(lv) {
        let chain = block_chain(lv, &b, -6, 6).expect("atypical block");
        for (i, x) in &chain {
            for (j, y) in &chain {
                let d = ext1_simples(lv, x, y).expect("canonical labels");
                rep.record("chain", x, y, usize::from((i - j).abs() == 1), d);
            }
        }
    }
    rep
}

fn cross_suite(lv: &Level, r: u64, w: i64) -> Res<Report> {
    let p = QGParams::new(r, 2).map_err(err)?;
    let mut tables: Vec<ExtTable> = vec![table_zigzag(w, Inventory::Simples).map_err(err)?];
    for b in atypical_blocks(lv) {
        tables.push(table_affine(lv, &b, w).map_err(err)?);
    }
    for i in 0..=(r as i64 - 2) {
        tables.push(table_qg(p, i, w, Inventory::Simples).map_err(err)?);
    }
    let mut rep = Report::default();
    for t in &tables[1..] {
        rep = rep.merge(diff_tables(&tables[0], t, align(&tables[0], t)));
    }
    Ok(rep)
}

fn run_verify(a: &VerifyArgs) -> Res<bool> {
    let lv = Level::new(a.u, a.v).map_err(err)?;
    let mut rep = Report::default();
    let w = a.window;
    if matches!(a.suite, Suite::All | Suite::Affine) {
        rep = rep.merge(affine_suite(&lv));
    }
    if matches!(a.suite, Suite::All | Suite::Zigzag) {
        let zz = Zigzag::new(Window::new(-w, w));
        rep = rep.merge(zz.verify_main().map_err(err)?);
        if w >= 8 {
            rep = rep.merge(zz.verify_ext_s((w - 3).min(5) as usize).map_err(err)?);
            rep = rep.merge(zz.verify_extension_list(((w - 8) / 2 + 1).min(3)).map_err(err)?);
        }
    }
    if matches!(a.suite, Suite::All | Suite::Qg) {
        let qg = QuantumGroup::new(QGParams::new(a.r, 2).map_err(err)?);
        for i in 0..=(a.r as i64 - 2) {
            rep = rep.merge(qg.verify_block(i, w).map_err(err)?);
        }
    }
    if matches!(a.suite, Suite::All | Suite::Cross) {
        rep = rep.merge(cross_suite(&lv, a.r, w)?);
    }
    let suite = match a.suite {
        Suite::All => "all",
        Suite::Affine => "affine",
        Suite::Zigzag => "zigzag",
        Suite::Qg => "qg",
        Suite::Cross => "cross",
    };
    if a.json {
        print_json(&report_json(suite, w, &rep));
    } else {
        println!("suite {suite}, window {w}: {} checks, {} mismatches", rep.checks, rep.mismatches.len());
        for m in &rep.mismatches {
            println!("  {} {} {}: expected {}, got {}", m.item, m.lhs, m.rhs, m.expected, m.got);
        }
    }
    Ok(rep.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Qg(a) => run_qg(a).map(|_| true),
        Command::Affine(a) => run_affine(a).map(|_| true),
        Command::Zigzag(a) => run_zigzag(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
