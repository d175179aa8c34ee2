//! Command-line surface: census queries, class tables, fixed-point queries,
//! self-checks and golden-table emission.
//!
//! All stdout output is byte-deterministic for fixed flags; worker count
//! changes nothing but wall time. Big integers are printed as decimal
//! strings in JSON and CSV; markdown adds thousands separators.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use so_census::census::{self, Census, TableGrid, DEFAULT_CHUNK};
use so_census::fix_engine::{fix_count, fix_count_bruteforce, solution_count, FixContext, TypeProfile};
use so_census::gl_classes::{brute_centralizer_order, enumerate_classes, gl_order};
use so_census::oracle;
use so_census::partition::{partitions, Partition};

#[derive(Parser)]
#[command(
    name = "so-census",
    version,
    about = "Exact census of inequivalent binary self-orthogonal codes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Print Psi_{k,n} (or Psi_{<=k,n} with --le)
    Psi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
        /// Count dimensions <= k instead of exactly k
        #[arg(long)]
        le: bool,
        /// Include the per-class contribution breakdown
        #[arg(long)]
        breakdown: bool,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Emit the Psi_{<=k,n} and Psi_{k,n} grids
    Table {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 40)]
        nmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Fixed-point data |Fix(A, P_lambda)| for one class and cycle type
    Fix {
        #[arg(long)]
        k: usize,
        /// Class label as printed by `classes`
        #[arg(long)]
        label: String,
        /// Comma-separated cycle lengths, e.g. "3,2,2"
        #[arg(long)]
        partition: String,
    },
    /// Conjugacy-class table of GL(k,2)
    Classes {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Run the internal cross-check suite
    Selfcheck {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Compare the census against brute-force orbit counting on a grid
    OracleCompare {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 8)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

/// Groups digits in threes: `497412483` -> `497,412,483`.
fn with_separators(value: &BigInt) -> String {
    let digits = value.to_string();
    let (sign, digits) = match digits.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", digits.as_str()),
    };
    let mut out = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    format!("{sign}{out}")
}

impl Cli {
    pub fn run(self) -> i32 {
        match self.command {
            Command::Psi {
                k,
                n,
                le,
                breakdown,
                format,
                threads,
            } => cmd_psi(k, n, le, breakdown, format, threads),
            Command::Table {
                kmax,
                nmax,
                format,
                out,
                threads,
            } => cmd_table(kmax, nmax, format, out, threads),
            Command::Fix { k, label, partition } => cmd_fix(k, &label, &partition),
            Command::Classes { k, format } => cmd_classes(k, format),
            Command::Selfcheck { level, threads } => cmd_selfcheck(level, threads),
            Command::OracleCompare { kmax, nmax, threads } => {
                cmd_oracle_compare(kmax, nmax, threads)
            }
        }
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn cmd_psi(k: usize, n: u64, le: bool, breakdown: bool, format: Format, threads: usize) -> i32 {
    if n < 1 {
        return usage_error("--n must be >= 1");
    }
    if !le && k < 1 {
        return usage_error("--k must be >= 1 without --le (use --le for k = 0)");
    }
    if k > 8 {
        return usage_error("--k must be <= 8");
    }
    let census_hi = match Census::new(k) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let result_hi = census_hi.psi_le_with(n, threads.max(1), DEFAULT_CHUNK);
    let (value, contributions) = if le {
        (result_hi.psi_le.clone(), result_hi.contributions.clone())
    } else {
        let lo = Census::new(k - 1)
            .expect("smaller k fits whenever k does")
            .psi_le_with(n, threads.max(1), DEFAULT_CHUNK);
        (&result_hi.psi_le - &lo.psi_le, result_hi.contributions.clone())
    };
    match format {
        Format::Markdown => {
            println!("{}", with_separators(&value));
            if breakdown {
                println!();
                println!("| class | contribution to Psi_<= |");
                println!("|---|---|");
                for (label, c) in &contributions {
                    println!("| {label} | {c} |");
                }
            }
        }
        Format::Csv => {
            println!("{value}");
            if breakdown {
                for (label, c) in &contributions {
                    println!("\"{label}\",{}/{}", c.numer(), c.denom());
                }
            }
        }
        Format::Json => {
            let mut obj = json!({
                "k": k,
                "n": n,
                "le": le,
                "value": value.to_string(),
            });
            if breakdown {
                obj["contributions"] = Value::Array(
                    contributions
                        .iter()
                        .map(|(label, c)| {
                            json!({
                                "class": label,
                                "numerator": c.numer().to_string(),
                                "denominator": c.denom().to_string(),
                            })
                        })
                        .collect(),
                );
            }
            println!("{obj}");
        }
    }
    0
}

fn render_grid(grid: &TableGrid, format: Format) -> String {
    let mut out = String::new();
    let header = |out: &mut String, name: &str| {
        match format {
            Format::Markdown => {
                out.push_str(&format!("### {name}\n\n"));
                out.push_str("| n \\ k |");
                for k in 0..=grid.k_max {
                    out.push_str(&format!(" {k} |"));
                }
                out.push('\n');
                out.push_str("|---|");
                for _ in 0..=grid.k_max {
                    out.push_str("---|");
                }
                out.push('\n');
            }
            Format::Csv => {
                out.push_str(name);
                out.push('\n');
                out.push('n');
                for k in 0..=grid.k_max {
                    out.push_str(&format!(",{k}"));
                }
                out.push('\n');
            }
            Format::Json => {}
        }
    };
    let body = |out: &mut String, rows: &[Vec<BigInt>]| {
        for (i, row) in rows.iter().enumerate() {
            let n = i + 1;
            match format {
                Format::Markdown => {
                    out.push_str(&format!("| {n} |"));
                    for cell in row {
                        out.push_str(&format!(" {} |", with_separators(cell)));
                    }
                    out.push('\n');
                }
                Format::Csv => {
                    out.push_str(&format!("{n}"));
                    for cell in row {
                        out.push_str(&format!(",{cell}"));
                    }
                    out.push('\n');
                }
                Format::Json => {}
            }
        }
    };
    match format {
        Format::Json => {
            let to_strings = |rows: &[Vec<BigInt>]| -> Value {
                Value::Array(
                    rows.iter()
                        .map(|row| {
                            Value::Array(
                                row.iter()
                                    .map(|c| Value::String(c.to_string()))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            };
            let obj = json!({
                "k_max": grid.k_max,
                "n_max": grid.n_max,
                "psi_le": to_strings(&grid.psi_le),
                "psi": to_strings(&grid.psi),
            });
            out.push_str(&obj.to_string());
            out.push('\n');
        }
        _ => {
            header(&mut out, "psi_le");
            body(&mut out, &grid.psi_le);
            out.push('\n');
            header(&mut out, "psi");
            body(&mut out, &grid.psi);
        }
    }
    out
}

fn cmd_table(
    kmax: usize,
    nmax: u64,
    format: Format,
    out: Option<std::path::PathBuf>,
    threads: usize,
) -> i32 {
    if nmax < 1 {
        return usage_error("--nmax must be >= 1");
    }
    if kmax > 8 {
        return usage_error("--kmax must be <= 8");
    }
    let grid = match census::table_grid(kmax, nmax, threads.max(1), DEFAULT_CHUNK) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let text = render_grid(&grid, format);
    match out {
        None => {
            print!("{text}");
            0
        }
        Some(path) => match std::fs::write(&path, text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                1
            }
        },
    }
}

fn cmd_fix(k: usize, label: &str, partition: &str) -> i32 {
    if k < 1 || k > 8 {
        return usage_error("--k must be in 1..=8");
    }
    let parts: std::result::Result<Vec<u32>, _> = partition
        .split(',')
        .filter(|s| !s.is_empty())
        .map(str::trim)
        .map(str::parse::<u32>)
        .collect();
    let parts = match parts {
        Ok(p) if p.iter().all(|&x| x > 0) => p,
        _ => return usage_error("--partition must be comma-separated positive integers"),
    };
    let lambda = Partition::from_parts(&parts);
    let Some(class) = enumerate_classes(k).into_iter().find(|c| c.label == label) else {
        eprintln!("error: no class labeled {label:?} in GL({k},2); see `classes --k {k}`");
        return 2;
    };
    let ctx = FixContext::build(&class.rep).expect("representative is invertible");
    let profile = match TypeProfile::build(&ctx) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let alpha = ctx.alpha_vector(&lambda);
    let theta = ctx.theta(&alpha);
    let n_of_a = solution_count(&ctx, &profile, &alpha);
    let fix = fix_count(&ctx, &profile, &lambda);
    let alpha_obj: serde_json::Map<String, Value> = ctx
        .divisors
        .iter()
        .zip(&alpha)
        .map(|(d, a)| (d.to_string(), Value::String(a.to_string())))
        .collect();
    let obj = json!({
        "k": k,
        "label": label,
        "n": lambda.n(),
        "partition": parts,
        "order": class.t,
        "alpha": alpha_obj,
        "theta": theta,
        "l": ctx.l,
        "solution_count": n_of_a.to_string(),
        "fix": fix.to_string(),
    });
    println!("{obj}");
    0
}

fn cmd_classes(k: usize, format: Format) -> i32 {
    if k < 1 || k > 8 {
        return usage_error("--k must be in 1..=8");
    }
    let classes = enumerate_classes(k);
    match format {
        Format::Markdown => {
            println!("| label | elementary divisors | centralizer order | order |");
            println!("|---|---|---|---|");
            for c in &classes {
                let divisors = c.label.splitn(2, ':').nth(1).unwrap_or("");
                println!(
                    "| {} | {} | {} | {} |",
                    c.label,
                    divisors,
                    with_separators(&c.cent_order),
                    c.t
                );
            }
        }
        Format::Csv => {
            println!("label,divisors,centralizer_order,order");
            for c in &classes {
                let divisors = c.label.splitn(2, ':').nth(1).unwrap_or("");
                println!("\"{}\",\"{}\",{},{}", c.label, divisors, c.cent_order, c.t);
            }
        }
        Format::Json => {
            let arr: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label,
                        "divisors": c.label.splitn(2, ':').nth(1).unwrap_or(""),
                        "centralizer_order": c.cent_order.to_string(),
                        "order": c.t,
                    })
                })
                .collect();
            println!("{}", Value::Array(arr));
        }
    }
    0
}

struct Checker {
    failures: usize,
}

impl Checker {
    fn new() -> Checker {
        Checker { failures: 0 }
    }

    fn report(&mut self, name: &str, ok: bool) {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn cmd_selfcheck(level: Level, threads: usize) -> i32 {
    let full = level == Level::Full;
    let threads = threads.max(1);
    let mut checker = Checker::new();

    // class equation of GL(k,2)
    let mut ok = true;
    for k in 1..=5usize {
        let g = gl_order(k);
        let total: BigInt = enumerate_classes(k)
            .iter()
            .map(|c| &g / &c.cent_order)
            .sum();
        ok &= total == g;
    }
    checker.report("class-equation(k<=5)", ok);

    // centralizer formula vs exhaustive centralizer
    let kmax_cent = if full { 4 } else { 3 };
    let mut ok = true;
    for k in 1..=kmax_cent {
        for c in enumerate_classes(k) {
            ok &= brute_centralizer_order(&c.rep).unwrap() == c.cent_order;
        }
    }
    checker.report(&format!("centralizer-brute-force(k<={kmax_cent})"), ok);

    // identity fixed points via the S-count closed form
    let mut ok = true;
    for k in 1..=4usize {
        let identity = so_census::gf2::GF2Matrix::identity(k);
        let ctx = FixContext::build(&identity).unwrap();
        let profile = TypeProfile::build(&ctx).unwrap();
        for n in 1..=8u64 {
            for lam in partitions(n) {
                let expected = census::s_count(k as u64, lam.slice(1, 2))
                    * (BigInt::one() << (k as u64 * lam.slice(0, 2)));
                ok &= fix_count(&ctx, &profile, &lam) == expected;
            }
        }
    }
    checker.report("identity-fix-vs-s-count(k<=4,n<=8)", ok);

    // two algebraic routes to |S_{k x n}|
    let mut ok = true;
    for k in 0..=5u64 {
        for n in 0..=40u64 {
            ok &= census::s_count(k, n) == census::s_count_alt(k, n);
        }
    }
    checker.report("s-count-routes(k<=5,n<=40)", ok);

    // closed form for Psi_{<=2,n}
    let nmax = if full { 60 } else { 24 };
    let census2 = Census::new(2).expect("k = 2 fits");
    let mut ok = true;
    for n in 1..=nmax {
        ok &= census2.psi_le_with(n, threads, DEFAULT_CHUNK).psi_le
            == census::psi_le2_closed(n);
    }
    checker.report(&format!("psi-le-2-closed-form(n<={nmax})"), ok);

    // multiplicativity across coprime-divisor splits
    let mut ok = true;
    {
        use so_census::gf2::GF2Poly;
        let pairs: Vec<(so_census::gf2::GF2Matrix, so_census::gf2::GF2Matrix)> = vec![
            (
                so_census::gf2::GF2Matrix::identity(1),
                GF2Poly(0b111).companion(),
            ),
            (
                GF2Poly::X_PLUS_1.pow(2).companion(),
                GF2Poly(0b111).companion(),
            ),
            (
                so_census::gf2::GF2Matrix::identity(1),
                GF2Poly(0b1011).companion(),
            ),
        ];
        for (a, b) in pairs {
            let combined = a.direct_sum(&b);
            let cx = FixContext::build(&combined).unwrap();
            let px = TypeProfile::build(&cx).unwrap();
            let ca = FixContext::build(&a).unwrap();
            let pa = TypeProfile::build(&ca).unwrap();
            let cb = FixContext::build(&b).unwrap();
            let pb = TypeProfile::build(&cb).unwrap();
            for n in 1..=8u64 {
                for lam in partitions(n) {
                    ok &= fix_count(&cx, &px, &lam)
                        == fix_count(&ca, &pa, &lam) * fix_count(&cb, &pb, &lam);
                }
            }
        }
    }
    checker.report("fix-multiplicativity(n<=8)", ok);

    // single-irreducible classes against the closed power formula
    let mut ok = true;
    {
        use so_census::gf2::GF2Poly;
        for (f, t) in [(GF2Poly(0b1011), 7u64), (GF2Poly(0b10011), 15u64)] {
            let c = f.companion();
            let ctx = FixContext::build(&c).unwrap();
            let profile = TypeProfile::build(&ctx).unwrap();
            for n in 1..=10u64 {
                for lam in partitions(n) {
                    let expected =
                        BigInt::one() << (f.degree() as u64 * lam.slice(0, t));
                    ok &= fix_count(&ctx, &profile, &lam) == expected;
                }
            }
        }
    }
    checker.report("fix-single-irreducible-closed-form(n<=10)", ok);

    // engine vs brute-force fixed points
    let (kmax_fix, nmax_fix) = if full { (3usize, 6u64) } else { (2usize, 5u64) };
    let mut ok = true;
    for k in 1..=kmax_fix {
        for class in enumerate_classes(k) {
            let ctx = FixContext::build(&class.rep).unwrap();
            let profile = TypeProfile::build(&ctx).unwrap();
            for n in 1..=nmax_fix {
                for lam in partitions(n) {
                    ok &= fix_count(&ctx, &profile, &lam)
                        == fix_count_bruteforce(&class.rep, &lam).unwrap();
                }
            }
        }
    }
    checker.report(&format!("fix-oracle(k<={kmax_fix},n<={nmax_fix})"), ok);

    // census vs brute-force orbit counting
    let (kmax_or, nmax_or) = if full { (5usize, 8u64) } else { (3usize, 6u64) };
    let mut ok = true;
    for k in 0..=kmax_or {
        let census_k = Census::new(k).expect("k <= 5 fits");
        for n in 1..=nmax_or {
            let exact = census_k.psi_le_with(n, threads, DEFAULT_CHUNK).psi_le;
            let brute = oracle::psi_le_bruteforce(k, n as usize).unwrap();
            ok &= exact == brute;
        }
    }
    checker.report(&format!("oracle-grid(k<={kmax_or},n<={nmax_or})"), ok);

    if checker.failures == 0 {
        0
    } else {
        1
    }
}

fn cmd_oracle_compare(kmax: usize, nmax: u64, threads: usize) -> i32 {
    if kmax > 8 {
        return usage_error("--kmax must be <= 8");
    }
    if nmax > 8 {
        return usage_error("--nmax must be <= 8 (brute-force guard)");
    }
    let mut failures = 0;
    println!("k\\n {}", (1..=nmax).map(|n| n.to_string()).collect::<Vec<_>>().join(" "));
    for k in 0..=kmax {
        let census_k = match Census::new(k) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        let mut row = format!("{k}  ");
        for n in 1..=nmax {
            let exact = census_k
                .psi_le_with(n, threads.max(1), DEFAULT_CHUNK)
                .psi_le;
            let brute = oracle::psi_le_bruteforce(k, n as usize).unwrap();
            if exact == brute {
                row.push_str(&format!(" {}", exact.to_u64().unwrap()));
            } else {
                row.push_str(&format!(" FAIL({exact}!={brute})"));
                failures += 1;
            }
        }
        println!("{row}");
    }
    if failures == 0 {
        println!("all cells agree");
        0
    } else {
        println!("{failures} cells disagree");
        1
    }
}
