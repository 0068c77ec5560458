use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refscore::experiment::{
    aggregate, compare, parse_csv, render_bar, render_radar, to_csv, write_report, AggregationSpec, ExperimentConfig,
    ScoreMatrix,
};
use refscore::{Payload, Registry};

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ScoreMatrix {
    ScoreMatrix::new(
        (0..rows).map(|r| format!("model {r}")).collect(),
        (0..cols).map(|c| format!("m{c}")).collect(),
        (0..cols).map(|_| rng.gen_range(0.0..=1.0)).collect(),
        (0..rows * cols).map(|_| rng.gen_range(0.0..=1.0)).collect(),
    )
    .unwrap()
}

fn elements<'a>(doc: &'a roxmltree::Document, tag: &str, class: &str) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants()
        .filter(|n| n.has_tag_name(tag) && n.attribute("class") == Some(class))
        .collect()
}

fn attr(node: &roxmltree::Node, name: &str) -> f64 {
    node.attribute(name).unwrap().parse().unwrap()
}

#[test]
fn bar_chart_structure() {
    let m = ScoreMatrix::new(strings(&["a", "b", "c"]), strings(&["x"]), vec![0.5], vec![1.0, 1.0, 1.0]).unwrap();
    let svg = render_bar(&m, "x").unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let bars = elements(&doc, "rect", "bar");
    assert_eq!(bars.len(), 3);
    let heights: Vec<f64> = bars.iter().map(|b| attr(b, "height")).collect();
    assert!(heights.iter().all(|&h| h == heights[0] && h > 0.0));
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("rect")).count(), 3);
    assert_eq!(elements(&doc, "line", "threshold").len(), 1);
    let labels: Vec<&str> = elements(&doc, "text", "axis-label").iter().filter_map(|n| n.text()).collect();
    assert_eq!(labels, ["score", "candidate"]);
}

#[test]
fn bar_heights_scale_with_score() {
    let m = ScoreMatrix::new(strings(&["a", "b"]), strings(&["x"]), vec![0.5], vec![1.0, 0.25]).unwrap();
    let svg = render_bar(&m, "x").unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let bars = elements(&doc, "rect", "bar");
    let (full, quarter) = (attr(&bars[0], "height"), attr(&bars[1], "height"));
    assert!((quarter / full - 0.25).abs() < 1e-3);
}

#[test]
fn radar_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = random_matrix(&mut rng, 3, 5);
    let svg = render_radar(&m).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(elements(&doc, "line", "axis").len(), 5);
    let series = elements(&doc, "polygon", "series");
    assert_eq!(series.len(), 3);
    for p in &series {
        assert_eq!(p.attribute("points").unwrap().split_whitespace().count(), 5);
    }
    let legend: Vec<&str> = elements(&doc, "text", "legend").iter().filter_map(|n| n.text()).collect();
    assert_eq!(legend, ["model 0", "model 1", "model 2"]);
    let axis_labels: Vec<&str> = elements(&doc, "text", "axis-label").iter().filter_map(|n| n.text()).collect();
    assert_eq!(axis_labels, ["m0", "m1", "m2", "m3", "m4"]);
}

#[test]
fn radar_half_scores_form_regular_polygon() {
    let m = ScoreMatrix::new(strings(&["only"]), strings(&["a", "b", "c", "d", "e", "f"]), vec![0.5; 6], vec![0.5; 6])
        .unwrap();
    let svg = render_radar(&m).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let axis = &elements(&doc, "line", "axis")[0];
    let (cx, cy) = (attr(axis, "x1"), attr(axis, "y1"));
    let full = (attr(axis, "x2") - cx).hypot(attr(axis, "y2") - cy);
    let points: Vec<(f64, f64)> = elements(&doc, "polygon", "series")[0]
        .attribute("points")
        .unwrap()
        .split_whitespace()
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    for (x, y) in &points {
        assert!(((x - cx).hypot(y - cy) - full / 2.0).abs() < 1e-2);
    }
    let side = |i: usize| {
        let (a, b) = (points[i], points[(i + 1) % points.len()]);
        (a.0 - b.0).hypot(a.1 - b.1)
    };
    assert!((0..6).all(|i| (side(i) - side(0)).abs() < 1e-2));
}

#[test]
fn csv_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let (rows, cols) = (rng.gen_range(1..5), rng.gen_range(1..5));
        let m = random_matrix(&mut rng, rows, cols);
        let back = parse_csv(&to_csv(&m)).unwrap();
        assert_eq!(back.candidates(), m.candidates());
        assert_eq!(back.metrics(), m.metrics());
        for (a, b) in back.scores().iter().zip(m.scores()) {
            assert!((a - b).abs() <= 5e-7);
        }
        assert_eq!(to_csv(&back), to_csv(&m));
    }
}

#[test]
fn aggregation_commutes_with_selection() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let base = random_matrix(&mut rng, 3, 4);
    let days: Vec<ScoreMatrix> = (0..3)
        .map(|_| {
            let scores = (0..12).map(|_| rng.gen_range(0.0..=1.0)).collect();
            ScoreMatrix::new(base.candidates().to_vec(), base.metrics().to_vec(), base.thresholds().to_vec(), scores)
                .unwrap()
        })
        .collect();
    let spec = AggregationSpec::mean(["d1", "d2", "d3"]);
    let pick = ["m3", "m1"];
    let a = aggregate(&days, &spec).unwrap().select_metrics(&pick).unwrap();
    let selected: Vec<ScoreMatrix> = days.iter().map(|d| d.select_metrics(&pick).unwrap()).collect();
    let b = aggregate(&selected, &spec).unwrap();
    assert_eq!(a.metrics(), b.metrics());
    for (x, y) in a.scores().iter().zip(b.scores()) {
        assert!((x - y).abs() <= 1e-12);
    }
    let mean = (days[0].score(1, 2) + days[1].score(1, 2) + days[2].score(1, 2)) / 3.0;
    assert!((aggregate(&days, &spec).unwrap().score(1, 2) - mean).abs() <= 1e-12);
}

fn text_config(order: &[(&str, &str)]) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(Payload::Text("visit the louvre and eat at a cafe".into()));
    for (id, text) in order {
        c = c.candidate(*id, Payload::Text(text.to_string()));
    }
    for m in ["bleu", "jaccard", "levenshtein", "bertscore"] {
        c = c.metric(m);
    }
    c
}

#[test]
fn compare_is_order_stable() {
    let registry = Registry::with_builtins();
    let items = [("a", "visit the louvre"), ("b", "eat at a cafe then visit"), ("c", "")];
    let forward = compare(&registry, &text_config(&items)).unwrap();
    let mut reversed_items = items;
    reversed_items.reverse();
    let reversed = compare(&registry, &text_config(&reversed_items)).unwrap();
    for (i, id) in forward.candidates().iter().enumerate() {
        let j = reversed.candidate_index(id).unwrap();
        assert_eq!(forward.row(i), reversed.row(items.len() - 1 - i));
        assert_eq!(j, items.len() - 1 - i);
    }
    assert_eq!(forward.metrics(), reversed.metrics());
    assert_eq!(to_csv(&forward), to_csv(&compare(&registry, &text_config(&items)).unwrap()));
}

#[test]
fn report_files() {
    let tmp = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = random_matrix(&mut rng, 2, 3);
    let paths = write_report(&m, tmp.path()).unwrap();
    let mut names: Vec<String> = std::fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["bar_m0.svg", "bar_m1.svg", "bar_m2.svg", "radar.svg", "report.csv"]);
    assert_eq!(paths.bars.len(), 3);

    let two = tempfile::tempdir().unwrap();
    let narrow = random_matrix(&mut rng, 2, 2);
    assert!(write_report(&narrow, two.path()).unwrap().radar.is_none());
    assert!(!two.path().join("radar.svg").exists());
}

#[test]
fn failed_decode_writes_nothing() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let registry = Registry::with_builtins();
    let mut config = ExperimentConfig::new(Payload::ImageFile(tmp.path().join("missing.png")))
        .candidate("m", Payload::ImageFile(tmp.path().join("missing.png")))
        .metric("ssim");
    config.output_dir = Some(out.clone());
    let err = refscore::experiment::run(&registry, &config).unwrap_err();
    assert!(err.to_string().contains("missing.png"), "{err}");
    assert!(!out.exists());
}
