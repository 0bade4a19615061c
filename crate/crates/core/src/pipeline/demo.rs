use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bound::{covolume_bound, log_bound_c, BoundReport, Provenance};
use super::{PipelineConfig, PipelineError, Stage};
use crate::complex::{validate_good_triangulation, write_complex, GoodTriangulationReport, MarkedSingularSet, SimplicialComplex3};
use crate::embed::{
    gromov_guth_evaluate, thick_embed_detailed, tube_volume, EmbedError, EmbedOptions, Graph, GromovGuthReport, Layout,
    TubeEstimate,
};
use crate::hypgeom::{ball_volume, delaunay_with, epsilon_net, format_points, BallDomain, DelaunayOptions};
use crate::spectral::{lambda1, WeightedGraph};

/// Where the demo starts.
#[derive(Clone, Debug)]
pub enum DemoInput {
    /// Net and Delaunay triangulation of the configured hyperbolic ball.
    Generate,
    /// A given complex with its singular marking.
    Complex {
        complex: SimplicialComplex3,
        marking: MarkedSingularSet,
    },
    /// A given graph; the triangulation stages are skipped.
    Graph(Graph),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub stages: Vec<Stage>,
    pub good_triangulation: Option<GoodTriangulationReport>,
    pub layout: Layout,
    pub tube: TubeEstimate,
    pub gromov_guth: GromovGuthReport,
    pub bound: BoundReport,
}

impl DemoReport {
    /// Pretty JSON with keys in a fixed order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DemoOutput {
    pub report: DemoReport,
    /// File name to contents, including `report.json`.
    pub artifacts: BTreeMap<String, String>,
}

fn err(stage: Stage) -> impl Fn(String) -> PipelineError {
    move |m| PipelineError::precondition(stage, m)
}

fn embed_err(stage: Stage) -> impl Fn(EmbedError) -> PipelineError {
    move |e| match e {
        EmbedError::Construction(_) => PipelineError::nonconvergence(stage, e.to_string()),
        _ => PipelineError::precondition(stage, e.to_string()),
    }
}

/// Runs net, Delaunay, good-triangulation check, graph extraction, thick
/// embedding, tube volume, the Gromov–Guth evaluation and the bound chain.
/// Measured quantities are added to the bound report next to the configured
/// ones. Stage seeds derive from `config.seed`.
pub fn end_to_end_demo(config: &PipelineConfig, input: DemoInput) -> Result<DemoOutput, PipelineError> {
    config.validate()?;
    let mut stages = vec![Stage::Config];
    let mut artifacts = BTreeMap::new();
    artifacts.insert("config.txt".to_string(), config.to_text());

    let (complex, marking, given) = match input {
        DemoInput::Generate => {
            let domain = BallDomain::centered(config.domain_radius).map_err(|e| err(Stage::Net)(e.to_string()))?;
            let net = epsilon_net(&domain, config.net_epsilon, &[], config.seed)
                .map_err(|e| err(Stage::Net)(e.to_string()))?;
            artifacts.insert("net.txt".into(), format_points(&net.points));
            stages.push(Stage::Net);
            let options = DelaunayOptions {
                jitter_seed: config.seed.wrapping_add(1),
                ..DelaunayOptions::default()
            };
            let d = delaunay_with(&net.points, &options).map_err(|e| err(Stage::Delaunay)(e.to_string()))?;
            stages.push(Stage::Delaunay);
            (Some(d.complex), MarkedSingularSet::empty(), None)
        }
        DemoInput::Complex { complex, marking } => (Some(complex), marking, None),
        DemoInput::Graph(g) => (None, MarkedSingularSet::empty(), Some(g)),
    };

    let mut good_triangulation = None;
    let (graph, simplex_count) = match (complex, given) {
        (Some(k), _) => {
            artifacts.insert("complex.txt".into(), write_complex(&k));
            artifacts.insert("marking.txt".into(), marking.to_text());
            let report =
                validate_good_triangulation(&k, &marking).map_err(|e| err(Stage::GoodTriangulation)(e.to_string()))?;
            if !report.passed {
                return Err(err(Stage::GoodTriangulation)(format!(
                    "marked edges missing from the 1-skeleton: {:?}",
                    report.missing_edges
                )));
            }
            good_triangulation = Some(report);
            stages.push(Stage::GoodTriangulation);
            (Graph::from_complex(&k), k.simplex_total())
        }
        (None, Some(g)) => {
            let count = g.vertex_count() + g.edges().len();
            (g, count)
        }
        (None, None) => unreachable!("every input yields a complex or a graph"),
    };
    if graph.vertex_count() == 0 {
        return Err(err(Stage::Graph)("graph has no vertices".into()));
    }
    stages.push(Stage::Graph);

    let options = EmbedOptions {
        seed: config.seed.wrapping_add(2),
        ..EmbedOptions::default()
    };
    let embedded = thick_embed_detailed(&graph, config.n, &[], &options).map_err(embed_err(Stage::Embed))?;
    artifacts.insert("embedding.txt".into(), embedded.embedding.to_text());
    stages.push(Stage::Embed);

    let tube = tube_volume(
        &embedded.embedding,
        config.thickness,
        config.tube_samples,
        config.seed.wrapping_add(3),
    )
    .map_err(embed_err(Stage::Tube))?;
    stages.push(Stage::Tube);

    let lambda1_floor = config.constants.lambda1_floor;
    let v_hyp = ball_volume(config.domain_radius).map_err(|e| err(Stage::GromovGuth)(e.to_string()))?;
    let gg = gromov_guth_evaluate(lambda1_floor, v_hyp, config.thickness, tube.value, config.n, config.constants.cn)
        .map_err(embed_err(Stage::GromovGuth))?;
    let edges: Vec<(usize, usize)> = graph.edges().iter().map(|&[a, b]| (a, b)).collect();
    let graph_lambda1 = match graph.edges().len() {
        0 => None,
        _ => {
            let w = WeightedGraph::unweighted(graph.vertex_count(), &edges)
                .map_err(|e| err(Stage::GromovGuth)(e.to_string()))?;
            Some(lambda1(&w).map_err(|e| err(Stage::GromovGuth)(e.to_string()))?)
        }
    };
    stages.push(Stage::GromovGuth);

    let mut bound = covolume_bound(config)?;
    use Provenance::{Derived, Measured};
    bound.insert("demo_domain_volume", v_hyp, Derived, "hyperbolic volume of the domain ball");
    bound.insert("demo_simplex_count", simplex_count as f64, Measured, "simplices of the triangulation N");
    bound.insert("demo_graph_vertices", graph.vertex_count() as f64, Measured, "vertices of the embedded graph");
    bound.insert("demo_graph_edges", graph.edges().len() as f64, Measured, "edges of the embedded graph");
    bound.insert("demo_graph_max_degree", graph.max_degree() as f64, Measured, "largest vertex degree");
    if let Some(l) = graph_lambda1 {
        bound.insert("demo_graph_lambda1", l, Measured, "normalized Laplacian spectral gap of the graph");
    }
    bound.insert("demo_tube_volume", tube.value, Measured, "V_T of the embedding");
    bound.insert("demo_tube_half_width", tube.half_width, Measured, "95% half-width of V_T");
    let c_dn = tube.value / simplex_count as f64;
    bound.insert("demo_c_dn", c_dn, Measured, "V_T / N");
    bound.insert("demo_gg_lhs", gg.lhs, Derived, "(lambda1 V_hyp)^(n/(n-1))");
    bound.insert("demo_gg_rhs", gg.rhs, Derived, "c_n T^-n V_T");
    bound.checks.insert("demo_gg_holds".into(), gg.holds);
    let c = &config.constants;
    let log_c = log_bound_c(config.n, bound.exponent_gap, c.cn, c_dn, lambda1_floor, config.thickness);
    bound.insert(
        "demo_log10_bound_c",
        log_c / std::f64::consts::LN_10,
        Derived,
        "log10 C with c_dn replaced by the measured V_T / N",
    );
    stages.push(Stage::Bound);

    let report = DemoReport {
        stages,
        good_triangulation,
        layout: embedded.layout,
        tube,
        gromov_guth: gg,
        bound,
    };
    artifacts.insert("report.json".into(), report.to_json());
    Ok(DemoOutput { report, artifacts })
}
