use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use convskel::backbones::{edge_betweenness, edge_salience, select_edges, BackboneMode, SptMode};
use convskel::convexity::{
    ccore_profile_largest, convex_hull, measure_convexity, measure_corrected, CCoreOptions, ConvexityReport, NodeSet,
};
use convskel::ensembles::{
    generate, rewire_degree_preserving, rewire_full, GeneratorConfig, GeneratorKind, Reattach,
};
use convskel::graph::{distributions, largest_component, load_graph, stats, write_edgelist, Format, GraphBuilder};
use convskel::metrics::{
    compare_partitions, correlation_matrix, ged_matrix, inter_group_fraction, modularity, parse_partition, NmiNorm,
    PositionOptions,
};
use convskel::seed::derive;
use convskel::skeleton::{
    skeleton_ccentrality, skeleton_clustering, spanning_tree, CCentralityOptions, SkeletonOptions, SkeletonResult,
    StopPolicy, TieBreak,
};
use convskel::Graph;

use crate::args::*;
use crate::error::CliError;
use crate::manifest::{self, InputDigest};
use crate::output::{extension, render_report, Cell, OutDir, Table};

/// Seed streams for tasks the CLI fans out itself.
mod stream {
    pub const REWIRE: u64 = 16;
    pub const MEASURE: u64 = 17;
    pub const REALISATION: u64 = 18;
}

pub struct Ctx {
    pub global: Global,
    pub out: OutDir,
    pub inputs: Vec<InputDigest>,
    pub params: Map<String, Value>,
}

type Res<T = ()> = Result<T, CliError>;

impl Ctx {
    fn param<T: Serialize>(&mut self, key: &str, value: T) {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("parameters serialise"));
    }

    fn record(&mut self, path: &Path) -> Res {
        self.inputs.push(manifest::digest(path)?);
        Ok(())
    }

    fn read(&mut self, path: &Path) -> Res<String> {
        self.record(path)?;
        fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }

    fn load(&mut self, path: &Path) -> Res<Graph> {
        self.record(path)?;
        let (g, report) = load_graph(path, Format::from_path(path))?;
        if report.dropped() > 0 {
            let key = format!("simplified:{}", path.display());
            self.param(&key, report);
        }
        Ok(g)
    }

    fn format_or(&self, default: OutFormat) -> OutFormat {
        self.global.format.unwrap_or(default)
    }

    fn report(&self, stem: &str, value: &Value, print: bool) -> Res {
        let fmt = self.format_or(OutFormat::Json);
        let text = render_report(value, fmt);
        self.out.write(&format!("{stem}.{}", extension(fmt)), &text)?;
        if print {
            print!("{text}");
        }
        Ok(())
    }

    fn table(&self, stem: &str, table: &Table, print: bool) -> Res {
        let fmt = self.format_or(OutFormat::Tsv);
        let text = table.render(fmt);
        self.out.write(&format!("{stem}.{}", extension(fmt)), &text)?;
        if print {
            print!("{text}");
        }
        Ok(())
    }

    fn graph(&self, name: &str, g: &Graph, header: &[String]) -> Res {
        self.out.write_with(name, |w| {
            use std::io::Write;
            for h in header {
                writeln!(w, "# {h}")?;
            }
            write_edgelist(g, &mut *w)
        })
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serialises")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn graph_summary(g: &Graph) -> Value {
    let s = stats(g);
    json!({
        "n": s.n,
        "m": s.m,
        "avg_degree": s.avg_degree,
        "avg_clustering": s.avg_clustering,
        "avg_distance": s.avg_distance,
        "avg_geodesics": s.avg_geodesics,
        "lcc_fraction": s.lcc_fraction,
    })
}

fn convexity_summary(r: &ConvexityReport) -> Value {
    json!({ "X": r.x, "Xs": r.xs, "s": r.s, "ci99": r.ci99, "runs": r.runs })
}

pub fn dispatch(ctx: &mut Ctx, command: &Command) -> Res {
    match command {
        Command::Stats(a) => cmd_stats(ctx, a),
        Command::Convexity(a) => cmd_convexity(ctx, a),
        Command::Hull(a) => cmd_hull(ctx, a),
        Command::Expand(a) => cmd_expand(ctx, a),
        Command::Ccore(a) => cmd_ccore(ctx, a),
        Command::Skeleton(a) => cmd_skeleton(ctx, a),
        Command::SpanningTree(a) => cmd_spanning_tree(ctx, a),
        Command::Backbone(a) => cmd_backbone(ctx, a),
        Command::Rewire(a) => cmd_rewire(ctx, a),
        Command::Generate(a) => cmd_generate(ctx, a),
        Command::Ged(a) => cmd_ged(ctx, a),
        Command::ComparePartitions(a) => cmd_compare(ctx, a),
        Command::Modularity(a) => cmd_modularity(ctx, a),
        Command::Position(a) => cmd_position(ctx, a),
        Command::Pipeline(a) => cmd_pipeline(ctx, a),
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    }
}

fn cmd_stats(ctx: &mut Ctx, a: &Input) -> Res {
    let g = ctx.load(&a.input)?;
    ctx.report("stats", &to_value(&stats(&g)), true)?;
    let d = distributions(&g);
    let mut t = Table::new(&["kind", "value", "mass"]);
    for (name, dist) in [("degree", &d.degree), ("distance", &d.distance), ("weight", &d.weight)] {
        if dist.unavailable {
            t.push(vec![name.into(), Cell::Na, Cell::Na]);
        }
        for &(b, p) in &dist.bins {
            t.push(vec![name.into(), (b as usize).into(), p.into()]);
        }
    }
    ctx.table("distributions", &t, false)
}

fn cmd_convexity(ctx: &mut Ctx, a: &ConvexityArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let runs = ctx.global.runs();
    ctx.param("runs", runs);
    let report = measure_corrected(&g, runs, ctx.global.seed)?;
    if a.trace {
        let mut t = Table::new(&["t", "s"]);
        for (i, &s) in report.trace.iter().enumerate() {
            t.push(vec![i.into(), s.into()]);
        }
        ctx.table("trace", &t, false)?;
    }
    ctx.report("convexity", &to_value(&report.without_trace()), true)
}

fn node_index(g: &Graph, label: &str) -> Res<usize> {
    g.index_of(label).ok_or_else(|| CliError::new("unknown-node", format!("no node labelled {label:?}")))
}

fn cmd_hull(ctx: &mut Ctx, a: &HullArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let seed: Vec<usize> = a.nodes.iter().map(|l| node_index(&g, l)).collect::<Res<_>>()?;
    let set = NodeSet::new(&g, seed)?;
    let hull = convex_hull(&g, &set)?;
    let mut t = Table::new(&["node"]);
    for &u in hull.members() {
        t.push(vec![g.label(u).into()]);
    }
    ctx.table("hull", &t, false)?;
    let report = json!({
        "seed_size": set.len(),
        "hull_size": hull.len(),
        "fraction": hull.len() as f64 / g.n() as f64,
        "seed_is_convex": hull.len() == set.len(),
    });
    ctx.report("hull_summary", &report, true)
}

fn cmd_expand(ctx: &mut Ctx, a: &Input) -> Res {
    let g = ctx.load(&a.input)?;
    let runs = ctx.global.runs();
    ctx.param("runs", runs);
    let lcc = largest_component(&g);
    let report = measure_convexity(&lcc.graph, runs, ctx.global.seed)?;
    let mut t = Table::new(&["run", "t", "size", "s"]);
    for (r, tr) in report.traces.iter().enumerate() {
        for (step, &size) in tr.sizes.iter().enumerate() {
            t.push(vec![r.into(), step.into(), (size as usize).into(), tr.fraction(step).into()]);
        }
    }
    ctx.table("expansion", &t, false)?;
    let summary = merge(convexity_summary(&report), json!({ "mean_cover_step": report.mean_cover_step, "lcc_n": lcc.graph.n() }));
    ctx.report("expansion_summary", &summary, true)
}

fn cmd_ccore(ctx: &mut Ctx, a: &CcoreArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let opts = CCoreOptions { runs: ctx.global.runs(), steps: a.steps, majority: 0.5 };
    ctx.param("ccore", opts);
    let p = ccore_profile_largest(&g, &opts, ctx.global.seed)?;
    let mut t = Table::new(&["label", "p", "c", "core"]);
    for i in 0..g.n() {
        t.push(vec![g.label(i).into(), p.inclusion[i].into(), p.centrality[i].into(), (p.core[i] as usize).into()]);
    }
    ctx.table("ccore", &t, false)?;
    ctx.report("ccore_summary", &json!({ "n": g.n(), "core_size": p.core_size(), "steps": p.steps, "runs": p.runs }), true)
}

fn tie(arg: TieArg) -> TieBreak {
    match arg {
        TieArg::Random => TieBreak::Random,
        TieArg::Lexicographic => TieBreak::Lexicographic,
    }
}

fn skeleton_options(a: &SkeletonArgs, m: usize) -> Res<SkeletonOptions> {
    let stop = match a.stop {
        StopArg::DeltaC => StopPolicy::DeltaC,
        StopArg::XsPeak => StopPolicy::XsPeak { max_removed_fraction: a.max_removed },
        StopArg::Target => {
            let t = a.target_edges.ok_or_else(|| CliError::usage("--stop target needs --target-edges"))?;
            if t > m {
                return Err(CliError::usage(format!("--target-edges {t} exceeds the {m} input edges")));
            }
            StopPolicy::TargetEdges(t)
        }
    };
    Ok(SkeletonOptions { batch_fraction: a.batch, stop, tie_break: tie(a.tie_break), checkpoint_runs: a.checkpoint_runs })
}

fn write_skeleton(ctx: &Ctx, r: &SkeletonResult, header: &[String]) -> Res {
    ctx.graph("skeleton.edges", &r.graph, header)?;
    ctx.out.write_with("removals.tsv", |w| r.write_removals(w))?;
    ctx.out.write_with("checkpoints.tsv", |w| r.write_checkpoints(w))
}

fn cmd_skeleton(ctx: &mut Ctx, a: &SkeletonArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let seed = ctx.global.seed;
    let result = match a.method {
        SkeletonMethod::Clustering => {
            let opts = skeleton_options(a, g.m())?;
            ctx.param("skeleton", &opts);
            skeleton_clustering(&g, &opts, seed)?
        }
        SkeletonMethod::Ccentrality => {
            let opts = CCentralityOptions {
                runs: a.profile_runs,
                steps: convskel::convexity::DEFAULT_CORE_STEPS,
                refresh_stride: a.refresh_stride,
                checkpoint_stride: a.checkpoint_stride,
                checkpoint_runs: a.checkpoint_runs,
                max_removed_fraction: a.max_removed,
                keep_connected: a.keep_connected,
                tie_break: tie(a.tie_break),
            };
            ctx.param("skeleton", &opts);
            skeleton_ccentrality(&g, &opts, seed)?
        }
    };
    write_skeleton(ctx, &result, &[format!("convex skeleton method={:?} seed={seed}", a.method)])?;
    let runs = ctx.global.runs();
    ctx.param("runs", runs);
    let conv = measure_corrected(&result.graph, runs, derive(seed, stream::MEASURE, 0))?;
    let summary = json!({
        "stop": result.stop,
        "chosen_checkpoint": result.chosen,
        "original_edges": result.original_edges,
        "removed": result.removals.len(),
        "retention": result.retention(),
        "graph": graph_summary(&result.graph),
        "convexity": convexity_summary(&conv),
    });
    ctx.report("skeleton_summary", &summary, true)
}

fn cmd_spanning_tree(ctx: &mut Ctx, a: &Input) -> Res {
    let g = ctx.load(&a.input)?;
    let tree = spanning_tree(&g, ctx.global.seed)?;
    ctx.graph("tree.edges", &tree, &[format!("uniform spanning tree seed={}", ctx.global.seed)])?;
    ctx.report("tree_summary", &graph_summary(&tree), true)
}

fn cmd_backbone(ctx: &mut Ctx, a: &BackboneArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let spt = match a.spt {
        SptArg::All => SptMode::All,
        SptArg::Single => SptMode::Single,
    };
    let (scores, backbone) = match a.kind {
        BackboneKind::Betweenness => {
            let target = a.target_edges.ok_or_else(|| CliError::usage("betweenness backbone needs --target-edges"))?;
            let mode = match a.mode {
                ModeArg::High => BackboneMode::High,
                ModeArg::Low => BackboneMode::Low,
            };
            ctx.param("target_edges", target);
            ctx.param("mode", mode);
            let s = edge_betweenness(&g);
            let b = select_edges(&g, &s, target, mode)?;
            (s, b)
        }
        BackboneKind::Salience => {
            ctx.param("threshold", a.threshold);
            ctx.param("spt", spt);
            let s = edge_salience(&g, spt);
            let b = convskel::backbones::salience_skeleton(&g, a.threshold, spt)?;
            (s, b)
        }
    };
    ctx.out.write_with("scores.tsv", |w| scores.write_tsv(&g, w))?;
    ctx.graph("backbone.edges", &backbone, &[format!("{:?} backbone", a.kind)])?;
    ctx.report("backbone_summary", &graph_summary(&backbone), true)
}

fn cmd_rewire(ctx: &mut Ctx, a: &RewireArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let runs = ctx.global.runs();
    ctx.param("runs", runs);
    let seed = ctx.global.seed;
    let mut t = Table::new(&[
        "fraction", "requested", "achieved", "attempts", "X", "Xs", "s", "pendant_bound", "ci99",
    ]);
    let mut last = None;
    for (i, &f) in a.fraction.iter().enumerate() {
        let rs = derive(seed, stream::REWIRE, i as u64);
        let out = match a.mode {
            RewireMode::Degree => rewire_degree_preserving(&g, f, rs)?,
            RewireMode::Full => rewire_full(&g, f, rs)?,
        };
        let r = measure_corrected(&out.graph, runs, derive(seed, stream::MEASURE, i as u64))?;
        t.push(vec![
            f.into(),
            out.requested.into(),
            out.achieved.into(),
            out.attempts.into(),
            r.x.into(),
            r.xs.into(),
            r.s.into(),
            r.pendant_bound.into(),
            r.ci99.into(),
        ]);
        last = Some(out.graph);
    }
    if let (1, Some(graph)) = (a.fraction.len(), last) {
        ctx.graph("rewired.edges", &graph, &[format!("{:?} rewiring fraction={} seed={seed}", a.mode, a.fraction[0])])?;
    }
    ctx.table("rewire", &t, true)
}

fn cmd_generate(ctx: &mut Ctx, a: &GenerateArgs) -> Res {
    let kind = match a.kind {
        KindArg::Er => GeneratorKind::Er,
        KindArg::LatticeRect => GeneratorKind::LatticeRect,
        KindArg::LatticeTri => GeneratorKind::LatticeTri,
        KindArg::RandomTree => GeneratorKind::RandomTree,
        KindArg::UniformTree => GeneratorKind::UniformTree,
        KindArg::Convex => GeneratorKind::Convex,
        KindArg::CorePeriphery => GeneratorKind::CorePeriphery,
    };
    let cfg = GeneratorConfig {
        kind,
        n: a.n,
        avg_k: a.avg_k,
        side: a.side,
        t: a.t,
        core_fraction: a.core_fraction,
        density_core: a.density_core,
        density_cross: a.density_cross,
        density_periphery: a.density_periphery,
        reattach: match a.reattach {
            ReattachArg::Any => Reattach::Any,
            ReattachArg::Core => Reattach::Core,
        },
        seed: ctx.global.seed,
    };
    ctx.param("generator", &cfg);
    let g = generate(&cfg)?;
    let echo = serde_json::to_string(&cfg).expect("config serialises");
    ctx.graph("graph.edges", &g, &[format!("convskel generate {echo}")])?;
    ctx.report("graph_summary", &graph_summary(&g), true)
}

fn cmd_ged(ctx: &mut Ctx, a: &GedArgs) -> Res {
    let graphs: Vec<Graph> = a.inputs.iter().map(|p| ctx.load(p)).collect::<Res<_>>()?;
    let names: Vec<String> = a.inputs.iter().map(|p| p.display().to_string()).collect();
    let matrix = ged_matrix(&graphs)?;
    let mut cols = vec!["graph"];
    cols.extend(names.iter().map(String::as_str));
    let mut dist = Table::new(&cols);
    let mut frac = Table::new(&cols);
    for (i, row) in matrix.iter().enumerate() {
        let mut d = vec![Cell::from(names[i].as_str())];
        let mut f = d.clone();
        d.extend(row.iter().map(|x| Cell::from(x.distance)));
        f.extend(row.iter().map(|x| Cell::from(x.fraction)));
        dist.push(d);
        frac.push(f);
    }
    ctx.table("ged_fraction", &frac, false)?;
    ctx.table("ged", &dist, true)
}

/// Node set for partition-only comparisons: the labels of the first file.
fn label_graph(text: &str) -> Graph {
    let mut b = GraphBuilder::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if let Some(label) = line.split_whitespace().next() {
            b.node(label);
        }
    }
    b.build().0
}

fn cmd_compare(ctx: &mut Ctx, a: &CompareArgs) -> Res {
    let t1 = ctx.read(&a.p1)?;
    let t2 = ctx.read(&a.p2)?;
    let nodes = label_graph(&t1);
    let p1 = parse_partition(&nodes, &t1)?;
    let p2 = parse_partition(&nodes, &t2)?;
    let norm = match a.norm {
        NormArg::Arithmetic => NmiNorm::Arithmetic,
        NormArg::Max => NmiNorm::Max,
    };
    let c = compare_partitions(&p1, &p2, norm)?;
    let report = merge(to_value(&c), json!({ "n": nodes.n(), "communities_1": p1.count(), "communities_2": p2.count() }));
    ctx.report("partitions", &report, true)
}

fn cmd_modularity(ctx: &mut Ctx, a: &ModularityArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let text = ctx.read(&a.partition)?;
    let p = parse_partition(&g, &text)?;
    let report = json!({
        "Q": modularity(&g, &p)?,
        "inter_group_fraction": inter_group_fraction(&g, &p)?,
        "communities": p.count(),
        "n": g.n(),
        "m": g.m(),
    });
    ctx.report("modularity", &report, true)
}

fn cmd_position(ctx: &mut Ctx, a: &PositionArgs) -> Res {
    let g = ctx.load(&a.input.input)?;
    let opts = PositionOptions { damping: a.damping, runs: ctx.global.runs(), ..PositionOptions::default() };
    ctx.param("position", &opts);
    let p = convskel::metrics::position_vectors(&g, &opts, ctx.global.seed);
    ctx.out.write_with("position.tsv", |w| p.write_tsv(&g, w))?;
    let named = p.named();
    let matrix = correlation_matrix(&named);
    let mut cols = vec!["measure"];
    cols.extend(named.iter().map(|c| c.0));
    let mut t = Table::new(&cols);
    for (i, row) in matrix.iter().enumerate() {
        let mut cells = vec![Cell::from(named[i].0)];
        cells.extend(row.iter().map(|&r| Cell::from(r)));
        t.push(cells);
    }
    ctx.table("correlation", &t, true)
}

struct Row {
    n: f64,
    m: f64,
    avg_k: f64,
    avg_c: f64,
    avg_sigma: f64,
    xs: f64,
}

impl Row {
    fn of(g: &Graph, conv: &ConvexityReport) -> Row {
        let s = stats(g);
        Row { n: s.n as f64, m: s.m as f64, avg_k: s.avg_degree, avg_c: s.avg_clustering, avg_sigma: s.avg_geodesics, xs: conv.xs }
    }

    fn mean(rows: &[Row]) -> Row {
        let k = rows.len() as f64;
        let avg = |f: fn(&Row) -> f64| rows.iter().map(f).sum::<f64>() / k;
        Row {
            n: avg(|r| r.n),
            m: avg(|r| r.m),
            avg_k: avg(|r| r.avg_k),
            avg_c: avg(|r| r.avg_c),
            avg_sigma: avg(|r| r.avg_sigma),
            xs: avg(|r| r.xs),
        }
    }

    fn cells(&self, network: &str, structure: &str, realisations: usize) -> Vec<Cell> {
        vec![
            network.into(),
            structure.into(),
            self.n.into(),
            self.m.into(),
            self.avg_k.into(),
            self.avg_c.into(),
            self.avg_sigma.into(),
            self.xs.into(),
            realisations.into(),
        ]
    }
}

const TABLE1: [&str; 9] = ["network", "structure", "n", "m", "avg_k", "avg_C", "avg_sigma", "Xs", "realisations"];

fn cmd_pipeline(ctx: &mut Ctx, a: &PipelineArgs) -> Res {
    let realisations = ctx.global.realisations(a.realisations);
    let runs = ctx.global.runs();
    let seed = ctx.global.seed;
    ctx.param("realisations", realisations);
    ctx.param("runs", runs);
    if realisations == 0 {
        return Err(CliError::usage("--realisations must be positive"));
    }
    let opts = SkeletonOptions { batch_fraction: a.batch, ..SkeletonOptions::default() };
    ctx.param("skeleton", &opts);
    // Rows are appended as they complete so a failure keeps earlier rows.
    ctx.out.write("table1.tsv", &(TABLE1.join("\t") + "\n"))?;
    let mut table = Table::new(&TABLE1);
    let mut task = 0u64;
    let mut next_seed = |stream: u64| {
        task += 1;
        derive(seed, stream, task)
    };
    for path in &a.inputs {
        let g = largest_component(&ctx.load(path)?).graph;
        let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        let full = Row::of(&g, &measure_corrected(&g, runs, next_seed(stream::MEASURE))?);
        let mut cs = Vec::new();
        let mut st = Vec::new();
        for _ in 0..realisations {
            let sk = skeleton_clustering(&g, &opts, next_seed(stream::REALISATION))?;
            cs.push(Row::of(&sk.graph, &measure_corrected(&sk.graph, runs, next_seed(stream::MEASURE))?));
            let tree = spanning_tree(&g, next_seed(stream::REALISATION))?;
            st.push(Row::of(&tree, &measure_corrected(&tree, runs, next_seed(stream::MEASURE))?));
        }
        for (label, row, k) in [("N", full, 1), ("CS", Row::mean(&cs), realisations), ("ST", Row::mean(&st), realisations)] {
            let cells = row.cells(&name, label, k);
            let mut single = Table::new(&TABLE1);
            single.push(cells.clone());
            let line = single.render(OutFormat::Tsv);
            ctx.out.append("table1.tsv", line.split_once('\n').map_or("", |x| x.1))?;
            table.push(cells);
        }
    }
    if ctx.format_or(OutFormat::Tsv) == OutFormat::Json {
        ctx.out.write("table1.json", &table.render(OutFormat::Json))?;
    }
    print!("{}", table.render(ctx.format_or(OutFormat::Tsv)));
    Ok(())
}
