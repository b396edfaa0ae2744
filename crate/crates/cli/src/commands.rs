use hyperrank::hypercore::{largest_connected_component, order_slice, stats as hstats, Hypergraph};
use hyperrank::methods::{self, MethodTag};
use hyperrank::numfmt::sig;
use hyperrank::rankcmp::{curve_filter, curves_csv, pairwise_heatmap, topk_curve, RankingTable};
use hyperrank::spectral::{
    self, z_via_uplift, CentralityResult, RootExponent, SolverOptions, SpectralError, Start, ZNorm,
};
use hyperrank::uniformize::multi_uplift;
use log::info;
use serde::Serialize;

use crate::error::CliError;
use crate::input::InputSpec;
use crate::manifest::{read_spec, write_manifest, RunSpec, RunSummary};
use crate::output::{csv_field, scores_csv, write_file};
use crate::{CentralityArgs, CompareArgs, MethodArg, NormArg, ReplayArgs, RootArg, SolverArgs, StatsArgs};

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Ec => "ec",
        MethodArg::Hec => "hec",
        MethodArg::Uhec => "uhec",
        MethodArg::Uphec => "uphec",
        MethodArg::Alt => "alt",
        MethodArg::ZecUplift => "zec-uplift",
    }
}

fn root_name(r: RootArg) -> &'static str {
    match r {
        RootArg::OrderMinusOne => "order-minus-one",
        RootArg::Order => "order",
    }
}

fn solver_options(tol: f64, max_iter: usize, shift: f64, seed: Option<u64>, root: &str) -> Result<SolverOptions, CliError> {
    let opts = SolverOptions {
        tol,
        max_iter,
        shift,
        start: seed.map_or(Start::Uniform, |seed| Start::Random { seed }),
        root: root.parse::<RootExponent>().map_err(CliError::Usage)?,
    };
    if tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || shift.partial_cmp(&0.0).is_none_or(|o| o.is_lt())
        || max_iter == 0
    {
        return Err(CliError::Usage(
            "--tol must be positive, --shift nonnegative and --max-iter at least 1".into(),
        ));
    }
    Ok(opts)
}

fn from_args(s: &SolverArgs) -> Result<SolverOptions, CliError> {
    solver_options(s.tol, s.max_iter, s.shift, s.seed, root_name(s.root))
}

pub fn centrality(a: &CentralityArgs) -> Result<(), CliError> {
    let spec = RunSpec {
        input: InputSpec::resolve(&a.input)?,
        method: method_name(a.method).to_string(),
        order: a.order,
        p: a.p,
        norm: match a.norm {
            NormArg::Z1 => "z1",
            NormArg::Z2 => "z2",
        }
        .to_string(),
        multiplicities: a.multiplicities.clone(),
        lcc: a.lcc,
        tol: a.solver.tol,
        max_iter: a.solver.max_iter,
        shift: a.solver.shift,
        seed: a.solver.seed,
        root: root_name(a.solver.root).to_string(),
        out: a.out.clone(),
    };
    run_spec(&spec)
}

pub fn replay(a: &ReplayArgs) -> Result<(), CliError> {
    let mut spec = read_spec(&a.manifest)?;
    if let Some(out) = &a.out {
        spec.out = out.clone();
    }
    run_spec(&spec)
}

fn need(value: Option<usize>, flag: &str, method: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {method}")))
}

fn maybe_lcc(h: Hypergraph, lcc: bool) -> Hypergraph {
    if !lcc {
        return h;
    }
    let g = largest_connected_component(&h);
    if g.n() < h.n() {
        eprintln!("largest connected component: {} of {} nodes", g.n(), h.n());
    }
    g
}

fn summary_of(r: &CentralityResult) -> RunSummary {
    RunSummary {
        method: r.method.to_string(),
        eigenvalue: r.eigenvalue,
        residual: Some(r.residual),
        iterations: Some(r.iterations),
        converged: r.converged,
        nodes: r.labels.len(),
        aux_scores: r.aux_scores.clone(),
        omega: None,
        graph_eigenvalue: None,
    }
}

fn run_spec(spec: &RunSpec) -> Result<(), CliError> {
    let ds = spec.input.load()?;
    let opts = solver_options(spec.tol, spec.max_iter, spec.shift, spec.seed, &spec.root)?;
    let h = ds.hypergraph;
    let method = spec.method.as_str();

    if method == "zec-uplift" {
        let norm: ZNorm = spec.norm.parse().map_err(CliError::Usage)?;
        let mut g = maybe_lcc(h, spec.lcc);
        if g.uniform_order() == Some(2) {
            let mults = if spec.multiplicities.is_empty() { vec![1] } else { spec.multiplicities.clone() };
            let l: u32 = mults.iter().sum();
            g = multi_uplift(&g, 2 + l as usize, &mults)?;
        } else if !spec.multiplicities.is_empty() {
            return Err(CliError::Usage("--multiplicities applies to pairwise input only".into()));
        }
        let z = z_via_uplift(&g, norm)?;
        write_file(&spec.out, &scores_csv(&z.labels, z.eigenvector.values()))?;
        let aux_scores = z
            .aux
            .ids()
            .map(|v| (z.labels[v.0].clone(), z.eigenvector.values()[v.0]))
            .collect();
        let summary = RunSummary {
            method: "ZEC-uplift".into(),
            eigenvalue: z.eigenvalue,
            residual: None,
            iterations: None,
            converged: true,
            nodes: z.labels.len(),
            aux_scores,
            omega: Some(z.omega),
            graph_eigenvalue: Some(z.graph_eigenvalue),
        };
        let m = write_manifest(spec, &summary, &ds.report)?;
        eprintln!("ZEC-uplift ({}): eigenvalue {}, omega {}; wrote {} and {}", norm, sig(z.eigenvalue, 12), z.omega, spec.out.display(), m.display());
        return Ok(());
    }

    let outcome = match method {
        "ec" => spectral::ec(&maybe_lcc(order_slice(&h, 2), spec.lcc), &opts),
        "hec" => {
            let m = need(spec.order, "order", method)?;
            spectral::hec(&maybe_lcc(order_slice(&h, m), spec.lcc), m, &opts)
        }
        "uhec" => spectral::uhec(&maybe_lcc(h, spec.lcc), need(spec.order, "order", method)?, &opts),
        "uphec" => spectral::uphec(&maybe_lcc(h, spec.lcc), need(spec.p, "p", method)?, &opts),
        "alt" => spectral::alt_centrality(&maybe_lcc(h, spec.lcc), need(spec.order, "order", method)?, &opts),
        other => return Err(CliError::Usage(format!("unknown method {other:?}"))),
    };
    let (result, failure) = match outcome {
        Ok(r) => (r, None),
        Err(SpectralError::CentralityNotConverged(r)) => {
            let msg = format!("{} did not converge in {} iterations", r.method, r.iterations);
            (*r, Some(CliError::Convergence(msg)))
        }
        Err(e) => return Err(e.into()),
    };
    write_file(&spec.out, &scores_csv(&result.labels, result.scores.values()))?;
    let m = write_manifest(spec, &summary_of(&result), &ds.report)?;
    eprintln!(
        "{}: eigenvalue {}, residual {:.3e}, {} iterations; wrote {} and {}",
        result.method,
        sig(result.eigenvalue, 12),
        result.residual,
        result.iterations,
        spec.out.display(),
        m.display()
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// 10, 20, 50, 100, ... below `size`, then `size` itself.
fn default_ks(size: usize) -> Vec<usize> {
    let mut ks = Vec::new();
    let mut base = 10usize;
    'outer: loop {
        for f in [1, 2, 5] {
            let k = base * f;
            if k >= size {
                break 'outer;
            }
            ks.push(k);
        }
        base *= 10;
    }
    if size >= 2 {
        ks.push(size);
    }
    ks
}

#[derive(Serialize)]
struct MethodRun {
    tag: String,
    method: String,
    nodes: usize,
    eigenvalue: f64,
    residual: f64,
    iterations: usize,
}

#[derive(Serialize)]
struct CompareManifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: &'a InputSpec,
    methods: Vec<String>,
    ks: &'a [usize],
    solver: &'a SolverOptions,
    lcc_nodes: usize,
    runs: Vec<MethodRun>,
    preprocessing: &'a hyperrank::hypercore::PreprocessReport,
}

pub fn compare(a: &CompareArgs) -> Result<(), CliError> {
    let tags: Vec<MethodTag> = a
        .methods
        .iter()
        .map(|s| s.parse::<MethodTag>().map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    if tags.is_empty() {
        return Err(CliError::Usage("--methods needs at least one tag".into()));
    }
    let input = InputSpec::resolve(&a.input)?;
    let opts = from_args(&a.solver)?;
    let ds = input.load()?;
    let h = maybe_lcc(ds.hypergraph, true);

    // repeated tags get a suffix so every column has its own name
    let mut names: Vec<String> = Vec::with_capacity(tags.len());
    for t in &tags {
        let base = t.to_string();
        let seen = names.iter().filter(|n| n.split('#').next() == Some(base.as_str())).count();
        names.push(if seen == 0 { base } else { format!("{base}#{}", seen + 1) });
    }

    let mut table = RankingTable::new();
    let mut runs = Vec::new();
    for (tag, name) in tags.iter().zip(&names) {
        info!("running {name}");
        let r = methods::run(&h, *tag, &opts)?;
        eprintln!("{name}: {} nodes, {} iterations, residual {:.3e}", r.labels.len(), r.iterations, r.residual);
        table.add_column(name, &r.labels, r.scores.values())?;
        runs.push(MethodRun {
            tag: name.clone(),
            method: r.method.to_string(),
            nodes: r.labels.len(),
            eigenvalue: r.eigenvalue,
            residual: r.residual,
            iterations: r.iterations,
        });
    }

    let dir = &a.out_dir;
    write_file(&dir.join("scores.csv"), &table_csv(&table))?;
    let ks = if a.ks.is_empty() { default_ks(table.len()) } else { a.ks.clone() };
    if let Some(&k) = ks.iter().find(|&&k| k > table.len()) {
        return Err(CliError::Usage(format!("K = {k} exceeds the {} ranked nodes", table.len())));
    }
    if ks.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError::Usage("--ks must be ascending".into()));
    }
    if names.len() >= 2 {
        let heat = pairwise_heatmap(&table)?;
        write_file(&dir.join("heatmap.csv"), &heat.to_csv())?;
        let mut curves = Vec::new();
        for x in &names {
            for y in &names {
                if x != y {
                    curves.push(topk_curve(&table, x, y, &ks)?);
                }
            }
        }
        write_file(&dir.join("topk.csv"), &curves_csv(&curves))?;
        write_file(&dir.join("topk_filtered.csv"), &curves_csv(&curve_filter(&curves)))?;
    } else {
        eprintln!("a single method has nothing to compare; wrote scores only");
    }
    let manifest = CompareManifest {
        tool: "hyperrank",
        version: env!("CARGO_PKG_VERSION"),
        command: "compare",
        input: &input,
        methods: names,
        ks: &ks,
        solver: &opts,
        lcc_nodes: h.n(),
        runs,
        preprocessing: &ds.report,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&dir.join("manifest.json"), &(text + "\n"))?;
    eprintln!("wrote comparison outputs to {}", dir.display());
    Ok(())
}

/// Wide table, one column per method; zero-filled entries are left empty.
fn table_csv(t: &RankingTable) -> String {
    let mut out = String::from("node");
    for c in t.columns() {
        out.push(',');
        out.push_str(&csv_field(&c.tag));
    }
    out.push('\n');
    for (i, label) in t.labels().iter().enumerate() {
        out.push_str(&csv_field(label));
        for c in t.columns() {
            out.push(',');
            if !c.filled[i] {
                out.push_str(&sig(c.scores[i], 12));
            }
        }
        out.push('\n');
    }
    out
}

pub fn stats(a: &StatsArgs) -> Result<(), CliError> {
    let ds = InputSpec::resolve(&a.input)?.load()?;
    let csv = stats_csv(&ds.hypergraph);
    match &a.out {
        Some(path) => write_file(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn stats_csv(h: &Hypergraph) -> String {
    let s = hstats(h);
    let mut out = String::from("order,nodes,edges,lcc_nodes,lcc_edges,lcc_fraction\n");
    for o in &s.per_order {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            o.order,
            o.nodes,
            o.edges,
            o.lcc_nodes,
            o.lcc_edges,
            sig(o.lcc_fraction, 12)
        ));
    }
    if !s.per_order.is_empty() {
        let lcc_edges = largest_connected_component(h).edges().len();
        out.push_str(&format!(
            "all,{},{},{},{},{}\n",
            s.nodes,
            s.edges,
            s.lcc_nodes,
            lcc_edges,
            sig(s.lcc_fraction, 12)
        ));
    }
    out
}
