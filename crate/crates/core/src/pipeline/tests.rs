use std::path::Path;

use super::*;
use crate::fixture;

fn demo(dir: &Path) -> RunConfig {
    RunConfig::load(fixture::materialize(dir).unwrap()).unwrap()
}

#[test]
fn config_defaults_and_validation() {
    let cfg = RunConfig::from_toml("", Path::new("/base")).unwrap();
    assert_eq!(cfg.out, Path::new("/base/out"));
    assert_eq!(cfg.taxonomy.filter, "F2+(F3>9)");
    assert_eq!(cfg.taxonomy.heuristics, vec!["MONOSEMOUS", "DISTANCE", "FIRST_SENSE"]);
    cfg.validate().unwrap();

    let bad = |text: &str| RunConfig::from_toml(text, Path::new(".")).and_then(|c| c.validate());
    assert!(matches!(bad("[merge]\nthreshold = 1.5"), Err(Error::Config(_))));
    assert!(matches!(bad("[link]\naccept_threshold = -0.1"), Err(Error::Config(_))));
    assert!(matches!(bad("[taxonomy]\nfilter = \"F9\""), Err(Error::Config(_))));
    assert!(matches!(bad("[taxonomy]\nheuristics = [\"GUESS\"]"), Err(Error::Config(_))));
    assert!(matches!(bad("nonsense = 1"), Err(Error::Config(_))));
    assert!(matches!(bad("[inputs]\nwordnet = \"/nope/missing.tsv\""), Err(Error::Io { .. })));
}

#[test]
fn config_round_trips_through_toml() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = demo(dir.path());
    let again = RunConfig::from_toml(&cfg.to_toml(), Path::new("/elsewhere")).unwrap();
    assert_eq!(again, cfg);
}

#[test]
fn stage_names() {
    for s in Stage::ALL {
        assert_eq!(s.name().parse::<Stage>().unwrap(), s);
    }
    assert!(matches!("bake".parse::<Stage>(), Err(Error::Config(_))));
}

#[test]
fn missing_prerequisite_is_dependency_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = demo(dir.path());
    match run_stage(Stage::Link, &cfg) {
        Err(Error::Dependency { stage, artifact, producer }) => {
            assert_eq!(stage, "link");
            assert!(artifact.ends_with(HOMOGENEOUS));
            assert_eq!(producer, "merge-bilinguals");
        }
        other => panic!("expected dependency error, got {other:?}"),
    }
    assert!(matches!(run_stage(Stage::Merge, &cfg), Err(Error::Dependency { .. })));
}

#[test]
fn demo_pipeline_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = demo(dir.path());
    let summaries = run_all(&cfg).unwrap();
    assert_eq!(summaries.len(), 9);
    for name in [HOMOGENEOUS, LINKS, LINK_REPORT, SEEDS, SALIENT, CLASS_TOTALS, LABELS, TOPS, TAXONOMY, GENUS, INFERRED, LEDGER, REPORT_TXT, REPORT_JSON] {
        assert!(cfg.out.join(name).is_file(), "{name} missing");
    }
    let report: BuildReport = serde_json::from_str(&std::fs::read_to_string(cfg.out.join(REPORT_JSON)).unwrap()).unwrap();
    assert_eq!(report, BuildReport::recount(&cfg.out, &cfg.inputs).unwrap());
    assert!(report.linked.connections > 0);
    assert!(report.taxonomies.iter().any(|t| t.edges > 0));
    assert!(report.link_accuracy.is_some() && report.tag_accuracy.is_some());

    // leche only reaches milk through a polysemous translation; the merge
    // promotes it below bebida.
    let inferred = std::fs::read_to_string(cfg.out.join(INFERRED)).unwrap();
    assert!(inferred.contains("leche\tn.milk\t"), "{inferred}");
}

#[test]
fn report_matches_hand_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = demo(dir.path());
    std::fs::create_dir_all(&cfg.out).unwrap();
    std::fs::write(
        cfg.out.join(LINKS),
        "zumo\tn.juice\t0.92\tMONO_MONO\nvino\tn.juice\t0.92\tMONO_MONO\nnuevo\tn.dog\t0.9\tMONO_MONO\n",
    )
    .unwrap();
    let r = BuildReport::recount(&cfg.out, &cfg.inputs).unwrap();
    let a = r.link_accuracy.unwrap();
    // zumo right, vino wrong, nuevo outside the gold words
    assert_eq!((a.counts.correct, a.counts.emitted, a.counts.covered, a.counts.domain), (1, 3, 2, 16));
    assert_eq!((a.precision.as_str(), a.coverage.as_str()), ("0.3333", "0.1250"));
    assert_eq!(r.linked, Volumes { words: 3, synsets: 2, connections: 3 });
}
