mod common;

use sciworld::{dataset, transcript};
use sciworld_core::catalog::Catalog;
use sciworld_core::export::{records, returns_to_go, Format, Record};

#[test]
fn transcripts_match_golden() {
    let ts = common::corpus();
    let mut text = Vec::new();
    transcript::write(&mut text, &ts).unwrap();
    common::check_golden("corpus.jsonl", &String::from_utf8(text).unwrap()).unwrap();
}

#[test]
fn golden_transcripts_replay() {
    let ts = transcript::read_file(&common::golden("corpus.jsonl")).unwrap();
    assert_eq!(ts.len(), 2);
    for t in &ts {
        transcript::replay(Catalog::builtin(), t).unwrap();
        assert_eq!(t.final_score, 1.0);
    }
}

#[test]
fn exports_match_goldens() {
    let ts = common::corpus();
    for f in [Format::Bc, Format::Tdt, Format::LmPrompt] {
        let (body, m) = dataset::export(&ts, f);
        common::check_golden(&format!("{}.jsonl", f.name()), &body).unwrap();
        common::check_golden(&format!("{}.manifest.json", f.name()), &dataset::manifest_text(&m)).unwrap();
        assert_eq!(m.records, ts.iter().map(|t| t.steps.len()).sum::<usize>());
        assert_eq!(body.lines().count(), m.records);
    }
}

#[test]
fn reexport_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let ts = common::corpus();
    let (p, _) = dataset::write_export(&ts, Format::Tdt, dir.path()).unwrap();
    let first = std::fs::read(&p).unwrap();
    let again = transcript::read_file(&common::golden("corpus.jsonl")).unwrap();
    dataset::write_export(&again, Format::Tdt, dir.path()).unwrap();
    assert_eq!(first, std::fs::read(&p).unwrap());
}

#[test]
fn tdt_returns_telescope() {
    for t in common::corpus() {
        let rewards = t.rewards();
        let rtg = returns_to_go(&rewards);
        assert!((rtg[0] - t.final_score).abs() < 1e-9);
        let rs = records(&t, Format::Tdt);
        for (i, r) in rs.iter().enumerate().skip(1) {
            let Record::Tdt { prev_rtg, rtg, .. } = r else { panic!() };
            assert!((prev_rtg - rtg - rewards[i - 1]).abs() < 1e-9);
        }
    }
}

#[test]
fn lm_prompt_layout() {
    let t = &common::corpus()[0];
    let rs = records(t, Format::LmPrompt);
    let Record::Lm { prompt, target, .. } = &rs[1] else { panic!() };
    let o1 = &t.steps[0].observation;
    let want = format!(
        "[CLS] {} [SEP] {} [SEP] {} [SEP] {} [SEP] {} [SEP] {} [SEP]",
        t.initial.task_description, o1.obs_text, o1.look_text, o1.inventory_text,
        t.initial.obs_text, t.steps[0].input
    );
    assert_eq!(prompt, &want);
    assert_eq!(target, &t.steps[1].input);
}
