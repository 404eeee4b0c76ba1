//! `subdiv`: compute, print, verify and scan from the command line.
//!
//! Exit status: 0 on success, 1 on usage or domain errors, 2 when a
//! verification fails.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use subdiv::garnir::{brick_data, garnir_nodes, garnir_set, GarnirContext, GarnirSet};
use subdiv::partition_core::{abacus_of, beta_set, Multipartition, Node, Partition};
use subdiv::runner_fock::{
    canonical_basis, conjecture_scan, decomposition_number, epsilon_d, runner_add, Convention, FockVector, LaurentPoly, MultiRunner,
    RunnerData, ScanConfig, ScanMode, ScanReport,
};
use subdiv::subdivision::{
    canonical_datum, datum_for, k_count, split, subdivide_abacus, subdivide_multipartition, validate_datum, AbacusDatum, SubdivisionDatum,
};
use subdiv::tableaux::{degree, degree_row_standard, initial_tableau, permutation_of, residue_sequence, subdivide_tableau, Tableau};
use subdiv::verify::{run_suite, CriterionReport, Scale};

#[derive(Parser)]
#[command(name = "subdiv", version, about = "Subdivision maps, Garnir data and q-Fock space canonical bases")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subdivide a (multi)partition in the Young and abacus models.
    Subdivide(SubdivideArgs),
    /// Draw the abacus of a partition.
    Abacus(AbacusArgs),
    /// Split a multipartition into a k-horizontal one.
    Split(SplitArgs),
    /// Residue word, permutation, degree and subdivision of a tableau.
    Tableau(TableauArgs),
    /// Degree of a standard or row-standard tableau.
    Degree(TableauArgs),
    /// Garnir nodes, or the brick data and Garnir set of one node.
    Garnir(GarnirArgs),
    /// Runner addition of a multipartition.
    RunnerAdd(RunnerArgs),
    /// The statistic ε_d of each component.
    Epsilon(RunnerArgs),
    /// Canonical basis vector G(μ) of the charged Fock space.
    FockCanonical(FockArgs),
    /// Graded decomposition number d_{λμ}(q).
    Decomp(DecompArgs),
    /// Check the level-1 runner theorem on all blocks up to a size.
    RunnerCheck(RunnerCheckArgs),
    /// Scan level-2 blocks for runner-removal equalities; prints a JSON report.
    ConjectureScan(ScanArgs),
    /// Run the property suite.
    Verify(VerifyArgs),
}

fn parse_multi(s: &str) -> Result<Multipartition, String> {
    s.parse().map_err(|e: subdiv::Error| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: subdiv::Error| e.to_string())
}

fn parse_tableau(s: &str) -> Result<Tableau, String> {
    s.parse().map_err(|e: subdiv::Error| e.to_string())
}

fn parse_node(s: &str) -> Result<Node, String> {
    let v: Vec<usize> = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("node coordinate {t:?} is not a positive integer")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [m, r, c] if m > 0 && r > 0 && c > 0 => Ok(Node::new(m, r, c)),
        _ => Err("a node is m,r,c with all three coordinates positive".into()),
    }
}

#[derive(Args)]
struct SubdivideArgs {
    #[arg(long)]
    e: usize,
    #[arg(long)]
    k: usize,
    /// One vertex per component.
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    /// Components separated by `|`, parts by `,`, exponents as `11^7`.
    #[arg(long, visible_alias = "shape", value_parser = parse_multi)]
    partition: Multipartition,
    /// Abacus parameter `a` per component, replacing the canonical datum.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<usize>>,
}

#[derive(Args)]
struct AbacusArgs {
    #[arg(long)]
    e: usize,
    #[arg(long, visible_alias = "shape", value_parser = parse_partition)]
    partition: Partition,
    /// Number of beads; defaults to the length of the partition.
    #[arg(long)]
    beads: Option<usize>,
}

#[derive(Args)]
struct SplitArgs {
    #[arg(long)]
    e: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    #[arg(long, visible_alias = "partition", value_parser = parse_multi)]
    shape: Multipartition,
}

#[derive(Args)]
struct TableauArgs {
    #[arg(long)]
    e: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    /// Entries by spaces, rows by `/`, components by `|`.
    #[arg(long, value_parser = parse_tableau, conflicts_with = "shape", required_unless_present = "shape")]
    tableau: Option<Tableau>,
    /// Use the initial tableau of this shape.
    #[arg(long, visible_alias = "partition", value_parser = parse_multi)]
    shape: Option<Multipartition>,
    /// Accepted for readability; a bare `--shape` already means the initial tableau.
    #[arg(long, requires = "shape")]
    initial: bool,
    /// Also subdivide at this vertex.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct GarnirArgs {
    #[arg(long)]
    e: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    #[arg(long, visible_alias = "partition", value_parser = parse_multi)]
    shape: Multipartition,
    /// Garnir node as `m,r,c`; omit to list all Garnir nodes.
    #[arg(long, value_parser = parse_node)]
    node: Option<Node>,
}

#[derive(Args)]
struct RunnerArgs {
    #[arg(long)]
    e: usize,
    /// One shift per component; negative values allowed.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    d: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    #[arg(long, visible_alias = "partition", value_parser = parse_multi)]
    shape: Multipartition,
    /// Abacus parameter `a` per component; by default `a ≡ charge (mod e)`.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<usize>>,
}

#[derive(Args)]
struct FockArgs {
    #[arg(long)]
    e: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    #[arg(long, visible_aliases = ["shape", "partition"], value_parser = parse_multi)]
    mu: Multipartition,
}

#[derive(Args)]
struct DecompArgs {
    #[arg(long)]
    e: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    /// Row index λ.
    #[arg(long, visible_alias = "partition", value_parser = parse_multi)]
    shape: Multipartition,
    /// Canonical basis index μ.
    #[arg(long, value_parser = parse_multi)]
    mu: Multipartition,
}

#[derive(Args)]
struct RunnerCheckArgs {
    #[arg(long)]
    e: usize,
    /// Shifts to test; defaults to 0..e.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    d: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    charge: usize,
    #[arg(long, default_value_t = 8)]
    max_size: usize,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// ε_d equal componentwise.
    Componentwise,
    /// ε_d equal in total.
    Total,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    e: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    charge: Vec<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    d: Vec<i64>,
    #[arg(long, default_value_t = 8)]
    max_size: usize,
    /// Restrict λ to this multipartition.
    #[arg(long, visible_alias = "partition", value_parser = parse_multi)]
    shape: Option<Multipartition>,
    #[arg(long, value_enum, default_value_t = Mode::Componentwise)]
    mode: Mode,
    /// Include λ with e-singular components.
    #[arg(long)]
    all: bool,
    /// Exit with status 2 if a counterexample is found.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Cap every size bound of the suite.
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Run only criteria whose name contains one of these.
    only: Vec<String>,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Verification(String),
}

impl From<subdiv::Error> for Failure {
    fn from(e: subdiv::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Out {
    let json = cli.json;
    match cli.command {
        Command::Subdivide(a) => subdivide(a, json),
        Command::Abacus(a) => abacus(a, json),
        Command::Split(a) => split_cmd(a, json),
        Command::Tableau(a) => tableau(a, json, false),
        Command::Degree(a) => tableau(a, json, true),
        Command::Garnir(a) => garnir(a, json),
        Command::RunnerAdd(a) => runner(a, json, false),
        Command::Epsilon(a) => runner(a, json, true),
        Command::FockCanonical(a) => fock(a, json),
        Command::Decomp(a) => decomp(a, json),
        Command::RunnerCheck(a) => with_workers(a.workers, || runner_check(&a, json)),
        Command::ConjectureScan(a) => with_workers(a.workers, || scan(&a)),
        Command::Verify(a) => with_workers(a.workers, || verify(&a, json)),
    }
}

fn with_workers(workers: Option<usize>, f: impl FnOnce() -> Out + Send) -> Out {
    match workers {
        None => f(),
        Some(0) => Err(Failure::Domain("--workers must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Failure::Domain(e.to_string()))?;
            pool.install(f)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Out {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn check_level(charge: &[usize], shape: &Multipartition) -> Result<(), Failure> {
    if charge.len() != shape.level() {
        return Err(subdiv::Error::ChargeLength { charge: charge.len(), components: shape.level() }.into());
    }
    Ok(())
}

fn shape_text(m: &Multipartition) -> String {
    format!("({})", m.components().iter().map(Partition::compact).collect::<Vec<_>>().join("|"))
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SplitRecord {
    components: Multipartition,
    charge: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SubdivideRecord {
    input_partition: Multipartition,
    e: usize,
    k: usize,
    charge: Vec<usize>,
    young_image: Multipartition,
    abacus_image: Multipartition,
    datum: Vec<AbacusDatum>,
    new_beads: Vec<Vec<usize>>,
    k_count: Vec<usize>,
    k_horizontal: bool,
    split: SplitRecord,
}

fn subdivide(a: SubdivideArgs, json: bool) -> Out {
    check_level(&a.charge, &a.partition)?;
    let datum = SubdivisionDatum::new(a.e, a.k, a.charge.clone())?;
    if let Some(av) = &a.a {
        if av.len() != a.partition.level() {
            return Err(Failure::Domain(format!("--a needs {} values, one per component", a.partition.level())));
        }
    }
    let young = subdivide_multipartition(&a.partition, &datum)?;
    let mut data = Vec::new();
    let mut beads = Vec::new();
    let mut comps = Vec::new();
    let mut counts = Vec::new();
    for (m, (p, &x)) in a.partition.components().iter().zip(&a.charge).enumerate() {
        let ad = match &a.a {
            Some(av) => {
                let ad = datum_for(av[m], a.e, a.k);
                validate_datum(p, a.e, a.k, x, &ad)?;
                ad
            }
            None => canonical_datum(p, a.e, a.k, x)?,
        };
        let (img, t) = subdivide_abacus(p, a.e, a.k, x, &ad)?;
        data.push(ad);
        beads.push(t);
        comps.push(img);
        counts.push(k_count(p, a.e, a.k, x)?);
    }
    let (pieces, split_charge) = split(&a.partition, &datum)?;
    let rec = SubdivideRecord {
        input_partition: a.partition.clone(),
        e: a.e,
        k: a.k,
        charge: a.charge.clone(),
        young_image: young,
        abacus_image: Multipartition::new(comps),
        datum: data,
        new_beads: beads,
        k_horizontal: counts.iter().all(|&c| c == 0),
        k_count: counts,
        split: SplitRecord { components: pieces, charge: split_charge },
    };
    if json {
        return to_json(&rec);
    }
    let mut out = String::new();
    out += &format!("input:        {}  e={} k={} charge={}\n", shape_text(&rec.input_partition), rec.e, rec.k, list(&rec.charge));
    out += &format!("Young model:  {}\n", shape_text(&rec.young_image));
    out += &format!("abacus model: {}\n", shape_text(&rec.abacus_image));
    for (m, ad) in rec.datum.iter().enumerate() {
        out += &format!(
            "datum {}:      (a,c,d,a') = ({},{},{},{}), new beads {{{}}}\n",
            m + 1,
            ad.a,
            ad.c,
            ad.d,
            ad.a_prime,
            list(&rec.new_beads[m])
        );
    }
    out += &format!("k(λ):         {}  ({})\n", list(&rec.k_count), if rec.k_horizontal { "k-horizontal" } else { "not k-horizontal" });
    out += &format!("split:        {} with charge {}\n", shape_text(&rec.split.components), list(&rec.split.charge));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct AbacusRecord {
    partition: Partition,
    e: usize,
    beads: usize,
    beta_set: Vec<usize>,
    /// `(runner, row)` per bead.
    coordinates: Vec<(usize, usize)>,
}

fn abacus(a: AbacusArgs, json: bool) -> Out {
    if a.e < 2 {
        return Err(subdiv::Error::InvalidRank { e: a.e, min: 2 }.into());
    }
    let beads = a.beads.unwrap_or(a.partition.len());
    let ab = abacus_of(&a.partition, a.e, beads)?;
    let rec = AbacusRecord { partition: a.partition.clone(), e: a.e, beads, beta_set: beta_set(&a.partition, beads)?, coordinates: ab.coordinates() };
    if json {
        return to_json(&rec);
    }
    Ok(format!("{} on {} beads: β = {{{}}}\n{ab}", rec.partition, beads, list(&rec.beta_set)))
}

fn split_cmd(a: SplitArgs, json: bool) -> Out {
    check_level(&a.charge, &a.shape)?;
    let datum = SubdivisionDatum::new(a.e, a.k, a.charge.clone())?;
    let (components, charge) = split(&a.shape, &datum)?;
    let rec = SplitRecord { components, charge };
    if json {
        return to_json(&rec);
    }
    Ok(format!("{} with charge {}\n", shape_text(&rec.components), list(&rec.charge)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TableauRecord {
    tableau: Tableau,
    standard: bool,
    residue_word: Vec<usize>,
    reduced_word: Vec<usize>,
    length: usize,
    degree: i64,
    subdivided: Option<SubdividedTableau>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SubdividedTableau {
    k: usize,
    tableau: Tableau,
    charge: Vec<usize>,
    degree: i64,
}

fn tableau_degree(t: &Tableau, charge: &[usize], e: usize) -> Result<i64, Failure> {
    Ok(if t.is_standard() { degree(t, charge, e)? } else { degree_row_standard(t, charge, e)? })
}

fn tableau(a: TableauArgs, json: bool, degree_only: bool) -> Out {
    let t = match (&a.tableau, &a.shape) {
        (Some(t), _) => t.clone(),
        (None, Some(s)) => initial_tableau(s),
        (None, None) => return Err(Failure::Domain("give --tableau or --shape".into())),
    };
    check_level(&a.charge, t.shape())?;
    let deg = tableau_degree(&t, &a.charge, a.e)?;
    if degree_only {
        return if json { to_json(&deg) } else { Ok(format!("{deg}\n")) };
    }
    let word = residue_sequence(&t, &a.charge, a.e)?;
    let w = permutation_of(&t);
    let subdivided = match a.k {
        None => None,
        Some(k) => {
            let datum = SubdivisionDatum::new(a.e, k, a.charge.clone())?;
            let img = subdivide_tableau(&t, &datum)?;
            let charge = datum.image_charge();
            let degree = tableau_degree(&img, &charge, a.e + 1)?;
            Some(SubdividedTableau { k, tableau: img, charge, degree })
        }
    };
    let rec = TableauRecord {
        standard: t.is_standard(),
        residue_word: word.letters,
        reduced_word: w.reduced_word(),
        length: w.length(),
        degree: deg,
        tableau: t,
        subdivided,
    };
    if json {
        return to_json(&rec);
    }
    let mut out = format!("{}\n", rec.tableau.render());
    out += &format!("standard:      {}\n", if rec.standard { "yes" } else { "no (row-standard)" });
    out += &format!("residue word:  {}\n", rec.residue_word.iter().map(|x| x.to_string()).collect::<String>());
    out += &format!("w^T:           length {}, reduced word {}\n", rec.length, list(&rec.reduced_word));
    out += &format!("degree:        {}\n", rec.degree);
    if let Some(s) = &rec.subdivided {
        out += &format!("\nsubdivided at k={} (charge {}):\n{}\n", s.k, list(&s.charge), s.tableau.render());
        out += &format!("degree:        {}\n", s.degree);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct GarnirRecord {
    context: GarnirContext,
    set: GarnirSet,
}

fn garnir(a: GarnirArgs, json: bool) -> Out {
    check_level(&a.charge, &a.shape)?;
    let Some(node) = a.node else {
        let nodes = garnir_nodes(&a.shape);
        if json {
            return to_json(&nodes);
        }
        let text: Vec<String> = nodes.iter().map(Node::to_string).collect();
        return Ok(format!("{} Garnir nodes: {}\n", nodes.len(), text.join(" ")));
    };
    let context = brick_data(&a.shape, node, &a.charge, a.e)?;
    let set = garnir_set(&context);
    let rec = GarnirRecord { context, set };
    if json {
        return to_json(&rec);
    }
    let c = &rec.context;
    let mut out = format!("Garnir node {} of {}\n", c.node, shape_text(&c.shape));
    out += &format!("belt:   {} nodes\n", c.belt.len());
    out += &format!("bricks: k = {}, f = {}, first entries {}\n", c.k_a, c.f_a, list(&c.n_a));
    out += &format!("G^A:\n{}\n", rec.set.g_a.render());
    out += &format!("T^A:\n{}\n", rec.set.t_a.render());
    out += &format!("D^A ({} elements, words in the brick generators):\n", rec.set.d_a.len());
    for w in &rec.set.d_a_words {
        let word: Vec<String> = w.iter().map(|i| format!("w{i}")).collect();
        out += &format!("  {}\n", if word.is_empty() { "1".to_string() } else { word.join("") });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RunnerRecord {
    shape: Multipartition,
    e: usize,
    d: Vec<i64>,
    data: Vec<RunnerData>,
    image: Multipartition,
    image_charge: Vec<usize>,
    epsilon: Vec<usize>,
}

fn runner(a: RunnerArgs, json: bool, epsilon_only: bool) -> Out {
    check_level(&a.charge, &a.shape)?;
    if a.d.len() != a.shape.level() {
        return Err(Failure::Domain(format!("--d needs {} values, one per component", a.shape.level())));
    }
    let rec = match &a.a {
        None => {
            let r = MultiRunner::new(&a.shape, a.e, &a.charge, &a.d)?;
            RunnerRecord {
                shape: a.shape.clone(),
                e: a.e,
                d: a.d.clone(),
                image: r.apply(&a.shape)?,
                epsilon: r.epsilon(&a.shape)?,
                image_charge: r.image_charge.clone(),
                data: r.data,
            }
        }
        Some(av) => {
            if av.len() != a.shape.level() {
                return Err(Failure::Domain(format!("--a needs {} values, one per component", a.shape.level())));
            }
            let mut data = Vec::new();
            let mut comps = Vec::new();
            let mut eps = Vec::new();
            for ((p, &dm), &am) in a.shape.components().iter().zip(&a.d).zip(av) {
                let rd = RunnerData::new(p, a.e, dm, am)?;
                comps.push(runner_add(p, a.e, &rd)?);
                eps.push(epsilon_d(p, a.e, &rd)?);
                data.push(rd);
            }
            if data.iter().any(|rd| rd.k != data[0].k) {
                return Err(Failure::Domain(format!("a + d must be constant mod {}", a.e)));
            }
            RunnerRecord {
                shape: a.shape.clone(),
                e: a.e,
                d: a.d.clone(),
                image: Multipartition::new(comps),
                image_charge: data.iter().map(|rd| (rd.a + rd.c) % (a.e + 1)).collect(),
                epsilon: eps,
                data,
            }
        }
    };
    if epsilon_only {
        return if json { to_json(&rec.epsilon) } else { Ok(format!("{}\n", list(&rec.epsilon))) };
    }
    if json {
        return to_json(&rec);
    }
    let mut out = format!("image:  {}\n", shape_text(&rec.image));
    out += &format!("charge: {}\n", list(&rec.image_charge));
    out += &format!("ε_d:    {}\n", list(&rec.epsilon));
    for (m, rd) in rec.data.iter().enumerate() {
        out += &format!("component {}: a={} d={} c={} k={}\n", m + 1, rd.a, rd.d, rd.c, rd.k);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct FockRecord {
    e: usize,
    charge: Vec<usize>,
    convention: String,
    mu: Multipartition,
    expansion: FockVector,
}

fn fock(a: FockArgs, json: bool) -> Out {
    check_level(&a.charge, &a.mu)?;
    let conv = Convention::from_env()?;
    let g = canonical_basis(&a.mu, a.e, &a.charge, conv)?;
    if json {
        return to_json(&FockRecord { e: a.e, charge: a.charge, convention: conv.to_string(), mu: a.mu, expansion: g });
    }
    Ok(g.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct DecompRecord {
    lambda: Multipartition,
    mu: Multipartition,
    coefficient: LaurentPoly,
}

fn decomp(a: DecompArgs, json: bool) -> Out {
    check_level(&a.charge, &a.shape)?;
    check_level(&a.charge, &a.mu)?;
    let conv = Convention::from_env()?;
    let coefficient = decomposition_number(&a.shape, &a.mu, a.e, &a.charge, conv)?;
    if json {
        return to_json(&DecompRecord { lambda: a.shape, mu: a.mu, coefficient });
    }
    Ok(format!("{coefficient}\n"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RunnerCheckRecord {
    d: i64,
    report: ScanReport,
}

fn runner_check(a: &RunnerCheckArgs, json: bool) -> Out {
    let conv = Convention::from_env()?;
    let ds = a.d.clone().unwrap_or_else(|| (0..a.e as i64).collect());
    let mut recs = Vec::new();
    for d in ds {
        let cfg = ScanConfig {
            e: a.e,
            charge: vec![a.charge],
            d: vec![d],
            n_max: a.max_size,
            mode: ScanMode::ComponentwiseEq,
            focus: None,
            regular_only: true,
        };
        recs.push(RunnerCheckRecord { d, report: conjecture_scan(&cfg, conv)? });
    }
    let failed = recs.iter().any(|r| !r.report.counterexamples.is_empty() || !r.report.skipped_blocks.is_empty());
    let out = if json {
        to_json(&recs)?
    } else {
        recs.iter()
            .map(|r| {
                format!(
                    "d={}: {} pairs, {} confirmed, {} counterexamples, {} skipped\n",
                    r.d,
                    r.report.pairs_checked,
                    r.report.confirmed,
                    r.report.counterexamples.len(),
                    r.report.skipped_blocks.len()
                )
            })
            .collect()
    };
    if failed {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

fn scan(a: &ScanArgs) -> Out {
    let conv = Convention::from_env()?;
    if let Some(f) = &a.shape {
        check_level(&a.charge, f)?;
    }
    let cfg = ScanConfig {
        e: a.e,
        charge: a.charge.clone(),
        d: a.d.clone(),
        n_max: a.max_size,
        mode: match a.mode {
            Mode::Componentwise => ScanMode::ComponentwiseEq,
            Mode::Total => ScanMode::TotalEq,
        },
        focus: a.shape.clone(),
        regular_only: !a.all,
    };
    let report = conjecture_scan(&cfg, conv)?;
    let out = to_json(&report)?;
    if a.strict && !report.counterexamples.is_empty() {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

fn verify(a: &VerifyArgs, json: bool) -> Out {
    let scale = a.max_size.map_or(Scale::FULL, Scale::capped);
    let reports: Vec<CriterionReport> = run_suite(&a.only, &scale);
    if reports.is_empty() {
        return Err(Failure::Domain(format!("no criterion matches {:?}", a.only)));
    }
    let out = if json { to_json(&reports)? } else { reports.iter().map(|r| format!("{r}\n")).collect() };
    if reports.iter().all(|r| r.passed) {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(value: &T) {
        let s = serde_json::to_string(value).unwrap();
        assert_eq!(&serde_json::from_str::<T>(&s).unwrap(), value);
    }

    #[test]
    fn records_round_trip() {
        let lam: Multipartition = "11^7".parse().unwrap();
        let rec = SubdivideRecord {
            input_partition: lam.clone(),
            e: 5,
            k: 1,
            charge: vec![1],
            young_image: "14,13^5,12,2".parse().unwrap(),
            abacus_image: "14,13^5,12,2".parse().unwrap(),
            datum: vec![AbacusDatum { a: 11, c: 2, d: 0, a_prime: 13 }],
            new_beads: vec![vec![1, 7]],
            k_count: vec![1],
            k_horizontal: false,
            split: SplitRecord { components: "11^5|11^2".parse().unwrap(), charge: vec![1, 1] },
        };
        round_trip(&rec);
        let mu: Multipartition = "2,1|1".parse().unwrap();
        let g = canonical_basis(&mu, 2, &[0, 0], Convention::CALIBRATED).unwrap();
        round_trip(&FockRecord { e: 2, charge: vec![0, 0], convention: "above+".into(), mu, expansion: g });
        round_trip(&DecompRecord { lambda: lam.clone(), mu: lam, coefficient: "q^2+q^-1".parse().unwrap() });
    }

    #[test]
    fn node_parsing() {
        assert_eq!(parse_node("2,1,8").unwrap(), Node::new(2, 1, 8));
        assert_eq!(parse_node("(1,1,1)").unwrap(), Node::new(1, 1, 1));
        assert!(parse_node("0,1,1").is_err());
        assert!(parse_node("1,1").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
