//! The `cumulant-trees` command line.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use crate::bijections::{enumerate_p, enumerate_q};
use crate::cumulants::{moments_to_cumulants, CumulantKind, MomentFunctional, TreeMoments, WordTable};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_d, enumerate_partitions, PartitionClass};
use crate::peaks::{factors_from_plot, peaks, southeast_decomposition, Plot};
use crate::perm::Permutation;
use crate::ring::RingElem;
use crate::sequences::{named_sequence, NAMES};
use crate::series::{boolean_free_series_check, inverse_troupe_transform, troupe_transform, FormalPowerSeries};
use crate::trees::{enumerate, singleton_word, stack_sort, Color, TreeFamily};
use crate::troupes::WeightedTroupe;

#[derive(Debug, Parser)]
#[command(name = "cumulant-trees", version, about = "Cumulants as weighted sums over colored binary plane trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count objects of a family, or sum a troupe's weights over a tree family.
    Count(FamilyArgs),
    /// List objects of a family, one per line (bijection inputs are separated by blank lines).
    Enumerate(FamilyArgs),
    /// Troupe transform of a branch series: coefficients of t^1 .. t^(order-1).
    Transform(TransformArgs),
    /// Classical, free and Boolean cumulant tables of a moment table.
    Cumulants(CumulantArgs),
    /// Compare the three cumulant conditions with tree sums for a troupe.
    Verify(VerifyArgs),
    /// Peaks, southeast classes and insertion factors of a permutation.
    Peaks(PermArgs),
    /// West's stack-sorting map.
    Sort(PermArgs),
    /// Moments and cumulants of a named sequence.
    Examples(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Bpt,
    Branch,
    Dbpt,
    Partitions,
    Interval,
    Noncrossing,
    NcIrreducible,
    NcIrreducibleMin2,
    /// Permutations `σ` of `[n]` with `σ(1) = n` and no one-element descending run.
    D,
    /// Inputs of Ψ for the color word.
    P,
    /// Inputs of Φ for the color word.
    Q,
    Perms,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Tree size for tree kinds, ground set size otherwise.
    #[arg(long)]
    n: Option<usize>,
    /// A color word; a word of length n gives trees of size n - 1.
    #[arg(long, value_delimiter = ',')]
    colors: Option<Vec<u32>>,
    /// Sum the troupe's weights instead of counting (tree kinds only).
    #[arg(long)]
    troupe: Option<String>,
}

#[derive(Debug, Args)]
struct TransformArgs {
    /// Branch series coefficients of t^1, t^2, ...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<String>>,
    /// Use the enumerated branch sums of a troupe instead of --coeffs.
    #[arg(long)]
    troupe: Option<String>,
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Recover the branch series from a tree series.
    #[arg(long)]
    inverse: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CumulantArg {
    Classical,
    Free,
    Boolean,
}

impl From<CumulantArg> for CumulantKind {
    fn from(k: CumulantArg) -> Self {
        match k {
            CumulantArg::Classical => CumulantKind::Classical,
            CumulantArg::Free => CumulantKind::Free,
            CumulantArg::Boolean => CumulantKind::Boolean,
        }
    }
}

#[derive(Debug, Args)]
struct CumulantArgs {
    /// A moment table file, `-` for standard input.
    #[arg(long)]
    moments: Option<String>,
    /// Univariate moments m_1, m_2, ...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<String>>,
    #[arg(long, value_enum)]
    kind: Option<CumulantArg>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    troupe: String,
    /// Largest word length checked.
    #[arg(long, default_value_t = 7)]
    n: usize,
    /// Check this single word only.
    #[arg(long, value_delimiter = ',')]
    colors: Option<Vec<u32>>,
    /// Use a random branch-weight table instead of --troupe.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct PermArgs {
    /// One-line notation, e.g. `31524` or `10,3,1,...`.
    perm: Vec<String>,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    /// Sequence name; lists the names when omitted.
    name: Option<String>,
    #[arg(long, default_value_t = 10)]
    order: usize,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs one command. Returns 0 on success, 1 when a verification fails and
/// 2 on a usage error or malformed input.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let outcome = match cli.command {
        Command::Count(a) => count(&a, stdout),
        Command::Enumerate(a) => list(&a, stdout),
        Command::Transform(a) => transform(&a, stdout),
        Command::Cumulants(a) => cumulants(&a, stdin, stdout),
        Command::Verify(a) => verify(&a, stdout),
        Command::Peaks(a) => peaks_cmd(&a, stdout),
        Command::Sort(a) => sort(&a, stdout),
        Command::Examples(a) => examples(&a, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn to_colors(xs: &[u32]) -> Vec<Color> {
    xs.iter().map(|&x| Color(x)).collect()
}

fn parse_elems(xs: &[String]) -> Result<Vec<RingElem>> {
    xs.iter().map(|x| x.parse()).collect()
}

fn family(kind: Kind) -> Option<TreeFamily> {
    match kind {
        Kind::Bpt => Some(TreeFamily::Bpt),
        Kind::Branch => Some(TreeFamily::Branch),
        Kind::Dbpt => Some(TreeFamily::Dbpt),
        _ => None,
    }
}

fn partition_class(kind: Kind) -> Option<PartitionClass> {
    match kind {
        Kind::Partitions => Some(PartitionClass::All),
        Kind::Interval => Some(PartitionClass::Interval),
        Kind::Noncrossing => Some(PartitionClass::Noncrossing),
        Kind::NcIrreducible => Some(PartitionClass::NcIrreducible),
        Kind::NcIrreducibleMin2 => Some(PartitionClass::NcIrreducibleMin2),
        _ => None,
    }
}

/// The color word of a family request: `--colors` wins, otherwise a
/// singleton word sized by `--n`.
fn family_word(a: &FamilyArgs) -> std::result::Result<Vec<Color>, Failure> {
    match (&a.colors, a.n) {
        (Some(c), _) => Ok(to_colors(c)),
        (None, Some(n)) if family(a.kind).is_some() => Ok(singleton_word(n)),
        (None, Some(n)) => Ok(vec![Color(0); n]),
        (None, None) => Err(Failure::Usage("one of --n or --colors is required".into())),
    }
}

/// Items of a non-tree family, already formatted.
fn other_items(kind: Kind, n: usize, word: &[Color]) -> Result<Vec<String>> {
    if let Some(class) = partition_class(kind) {
        return Ok(enumerate_partitions(n, class).iter().map(ToString::to_string).collect());
    }
    Ok(match kind {
        Kind::D => enumerate_d(n).iter().map(ToString::to_string).collect(),
        Kind::Perms => Permutation::all(n).map(|p| p.to_string()).collect(),
        Kind::P => enumerate_p(word)?.iter().map(|x| x.to_string()).collect(),
        Kind::Q => enumerate_q(word)?.iter().map(|x| x.to_string()).collect(),
        _ => unreachable!("tree kinds are handled by the caller"),
    })
}

fn count(a: &FamilyArgs, out: &mut dyn Write) -> Outcome {
    let word = family_word(a)?;
    if let Some(fam) = family(a.kind) {
        let value = match &a.troupe {
            Some(name) => WeightedTroupe::builtin(name)?.weighted_sum(fam, &word)?,
            None => RingElem::int(enumerate(fam, &word)?.len() as i64),
        };
        writeln!(out, "{value}")?;
        return Ok(());
    }
    if a.troupe.is_some() {
        return Err(Failure::Usage("--troupe applies to tree kinds only".into()));
    }
    writeln!(out, "{}", other_items(a.kind, word.len(), &word)?.len())?;
    Ok(())
}

fn list(a: &FamilyArgs, out: &mut dyn Write) -> Outcome {
    let word = family_word(a)?;
    if let Some(fam) = family(a.kind) {
        for t in enumerate(fam, &word)? {
            if fam == TreeFamily::Dbpt {
                writeln!(out, "{}", t.encode())?;
            } else {
                writeln!(out, "{}", t.tree())?;
            }
        }
        return Ok(());
    }
    let items = other_items(a.kind, word.len(), &word)?;
    if matches!(a.kind, Kind::P | Kind::Q) {
        write!(out, "{}", items.join("\n"))?;
    } else {
        for x in items {
            writeln!(out, "{x}")?;
        }
    }
    Ok(())
}

/// Branch sums of a troupe over the singleton alphabet, sizes `1..order`.
fn branch_series(tau: &WeightedTroupe, order: usize) -> Result<FormalPowerSeries> {
    let mut coeffs = vec![RingElem::zero()];
    for n in 1..order {
        coeffs.push(tau.weighted_sum(TreeFamily::Branch, &singleton_word(n))?);
    }
    FormalPowerSeries::new(coeffs)
}

fn transform(a: &TransformArgs, out: &mut dyn Write) -> Outcome {
    if a.order < 2 {
        return Err(Failure::Usage("--order must be at least 2".into()));
    }
    let input = match (&a.coeffs, &a.troupe) {
        (Some(c), None) => {
            let mut coeffs = vec![RingElem::zero()];
            coeffs.extend(parse_elems(c)?);
            coeffs.resize(a.order.max(coeffs.len()), RingElem::zero());
            FormalPowerSeries::new(coeffs)?.truncate(a.order)
        }
        (None, Some(name)) => branch_series(&WeightedTroupe::builtin(name)?, a.order)?,
        _ => return Err(Failure::Usage("give exactly one of --coeffs or --troupe".into())),
    };
    let result = if a.inverse { inverse_troupe_transform(&input)? } else { troupe_transform(&input)? };
    writeln!(out, "{}", result.coeffs()[1..].iter().join(","))?;
    Ok(())
}

fn read_moments(a: &CumulantArgs, stdin: &mut dyn Read) -> std::result::Result<MomentFunctional, Failure> {
    match (&a.moments, &a.coeffs) {
        (Some(path), None) => {
            let mut text = String::new();
            if path == "-" {
                stdin.read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            }
            let table: WordTable = text.parse().map_err(|e: Error| Failure::Usage(format!("{path}: {e}")))?;
            Ok(MomentFunctional::new(table))
        }
        (None, Some(c)) => {
            let mut m = vec![RingElem::one()];
            m.extend(parse_elems(c)?);
            Ok(MomentFunctional::univariate(&m)?)
        }
        _ => Err(Failure::Usage("give exactly one of --moments or --coeffs".into())),
    }
}

fn cumulants(a: &CumulantArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let phi = read_moments(a, stdin)?;
    let kinds: Vec<CumulantKind> = match a.kind {
        Some(k) => vec![k.into()],
        None => CumulantKind::ALL.to_vec(),
    };
    for (i, kind) in kinds.into_iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "# {}", kind.name())?;
        write!(out, "{}", moments_to_cumulants(&phi, kind)?.table())?;
    }
    Ok(())
}

/// `1 - B(t/(1+R)) = 1/(1+R)` for the cumulants of each one-letter word.
fn series_checks(tm: &TreeMoments, alphabet: &[Color], out: &mut dyn Write) -> std::result::Result<bool, Failure> {
    let max_len = tm.boolean.table().max_len();
    let mut ok = true;
    for &c in alphabet {
        let coeffs = |t: &crate::cumulants::CumulantTable| -> Result<FormalPowerSeries> {
            let mut v = vec![RingElem::zero()];
            for n in 1..=max_len {
                v.push(t.get(&vec![c; n])?);
            }
            FormalPowerSeries::new(v)
        };
        let holds = boolean_free_series_check(&coeffs(&tm.boolean)?, &coeffs(&tm.free)?);
        writeln!(out, "series check color {c} order {}: {}", max_len + 1, if holds { "ok" } else { "MISMATCH" })?;
        ok &= holds;
    }
    Ok(ok)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let word = a.colors.as_ref().map(|c| to_colors(c));
    let alphabet: Vec<Color> = match &word {
        Some(w) => w.iter().copied().sorted().dedup().collect(),
        None if a.seed.is_some() => vec![Color(0), Color(1)],
        None => vec![Color(0)],
    };
    let max_len = word.as_ref().map_or(a.n, Vec::len);
    if max_len == 0 {
        return Err(Failure::Usage("words must have length at least 1".into()));
    }
    let tau = match a.seed {
        Some(seed) => WeightedTroupe::random_table(seed, &alphabet, max_len.saturating_sub(1), RingElem::zero()),
        None => WeightedTroupe::builtin(&a.troupe)?,
    };
    let tm = TreeMoments::new(&tau, &alphabet, max_len)?;
    let reports = match &word {
        Some(w) => vec![tm.check(&tau, w)?],
        None => tm.check_all(&tau)?,
    };
    let mut ok = true;
    for r in &reports {
        writeln!(out, "{r}")?;
        ok &= r.all_equal;
    }
    ok &= series_checks(&tm, &alphabet, out)?;
    writeln!(out, "{}", if ok { "pass" } else { "FAIL" })?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn read_perm(a: &PermArgs) -> std::result::Result<Permutation, Failure> {
    if a.perm.is_empty() {
        return Err(Failure::Usage("a permutation is required".into()));
    }
    Ok(a.perm.join(" ").parse()?)
}

fn peaks_cmd(a: &PermArgs, out: &mut dyn Write) -> Outcome {
    let w = Plot::from_perm(&read_perm(a)?);
    writeln!(out, "peaks {}", peaks(&w).iter().join(" "))?;
    for class in southeast_decomposition(&w) {
        let head = class.peak.map_or("rest".to_string(), |p| format!("peak {p}"));
        let pts = class.points.iter().map(|(i, v)| format!("({i},{v})")).join(" ");
        writeln!(out, "{head}: {pts}")?;
    }
    for f in factors_from_plot(&w)? {
        writeln!(out, "factor {f}")?;
    }
    Ok(())
}

fn sort(a: &PermArgs, out: &mut dyn Write) -> Outcome {
    writeln!(out, "{}", stack_sort(&read_perm(a)?))?;
    Ok(())
}

fn examples(a: &ExampleArgs, out: &mut dyn Write) -> Outcome {
    let Some(name) = &a.name else {
        for n in NAMES {
            writeln!(out, "{n}")?;
        }
        return Ok(());
    };
    let seq = named_sequence(name, a.order)?;
    write!(out, "{seq}")?;
    let agrees = seq.computed_classical()? == seq.classical;
    writeln!(out, "classical from moments: {}", if agrees { "ok" } else { "MISMATCH" })?;
    if agrees {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cumulant-trees").chain(args.iter().copied());
        let code = run(argv, &mut std::io::empty(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn documented_examples() {
        assert_eq!(call(&["count", "--kind", "bpt", "--n", "5"]), (0, "42\n".into(), String::new()));
        assert_eq!(call(&["transform", "--coeffs", "1,2,4,8,16", "--order", "6"]).1, "1,2,5,14,42\n");
        let (code, out, _) = call(&["verify", "--troupe", "all", "--n", "7"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("pass\n"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["count", "--kind", "nope", "--n", "3"]).0, 2);
        assert_eq!(call(&["count", "--kind", "bpt"]).0, 2);
        assert_eq!(call(&["transform", "--troupe", "bogus"]).0, 2);
        assert_eq!(call(&["sort", "1", "1"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn counts() {
        assert_eq!(call(&["count", "--kind", "dbpt", "--n", "4"]).1, "24\n");
        assert_eq!(call(&["count", "--kind", "noncrossing", "--n", "4"]).1, "14\n");
        assert_eq!(call(&["count", "--kind", "d", "--n", "4"]).1, "3\n");
        assert_eq!(call(&["count", "--kind", "bpt", "--n", "3", "--troupe", "full"]).1, "1\n");
        assert_eq!(call(&["count", "--kind", "p", "--colors", "0,0,0"]).1, "2\n");
    }

    #[test]
    fn verification_failure_exit() {
        let (code, out, _) = call(&["examples", "secant", "--order", "6"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["verify", "--seed", "3", "--n", "4"]);
        assert_eq!(code, 0, "{out}");
    }
}
