use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const A: &str = "孫男二人：長應運，登丙戌進士第，儒林郎、兩浙轉運司物料官，即亨之也；次應龍，習舉子業。孫男五人：汝直、汝敦、汝平、汝功、汝能、皆業進士。";
const B: &str = "孫男六人：曰夷仲，曰虞仲，曰於仲，曰南仲，曰武仲，曰延仲。孔子曰：學而時習之。公早娶彭城縣君劉氏。";

fn epitag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epitag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus(dir: &Path) -> String {
    let c = dir.join("corpus");
    fs::create_dir_all(&c).unwrap();
    fs::write(c.join("a.txt"), A).unwrap();
    fs::write(c.join("b.txt"), B).unwrap();
    c.display().to_string()
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn missing_dictionary_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = epitag(&[
        "run",
        "--corpus",
        &corpus(dir.path()),
        "--dict-place",
        "/no/such/place.csv",
        "--out",
        &s(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("place dictionary"));
    assert!(!out.exists());
}

#[test]
fn empty_corpus_writes_headers_only() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("empty");
    fs::create_dir(&c).unwrap();
    let out = dir.path().join("out");
    let o = epitag(&["run", "--corpus", &s(&c), "--out", &s(&out)]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let review = fs::read_to_string(out.join("review.csv")).unwrap();
    assert_eq!(review.lines().count(), 1);
    assert!(review.starts_with("doc_id,sentence_index,relation"));
    assert_eq!(
        fs::read_to_string(out.join("rejected.csv"))
            .unwrap()
            .lines()
            .count(),
        1
    );
    assert!(fs::read_to_string(out.join("stats.txt"))
        .unwrap()
        .contains("agreement=n/a"));
}

#[test]
fn run_matches_stepwise_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let whole = dir.path().join("whole");
    let steps = dir.path().join("steps");
    assert!(epitag(&[
        "run",
        "--corpus",
        &c,
        "--out",
        &s(&whole),
        "--emit-compressed"
    ])
    .status
    .success());
    assert!(epitag(&["filter", "--corpus", &c, "--out", &s(&steps)])
        .status
        .success());
    assert!(epitag(&["compress", "--out", &s(&steps)]).status.success());
    assert!(epitag(&["extract", "--out", &s(&steps)]).status.success());
    for f in [
        "review.csv",
        "rejected.csv",
        "decisions.tsv",
        "compressed.tsv",
    ] {
        assert_eq!(
            fs::read(whole.join(f)).unwrap(),
            fs::read(steps.join(f)).unwrap(),
            "{f}"
        );
    }
    let decisions = fs::read_to_string(whole.join("decisions.tsv")).unwrap();
    assert!(
        decisions.contains("b\t1\tfalse\t\t子 neutralized by exclusion 孔子\n"),
        "{decisions}"
    );
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        format!("# fixture\ncorpus={c}\nout=from-config\nmax-name-len=3\nworkers=2\n"),
    )
    .unwrap();
    let out = dir.path().join("flag-out");
    let o = epitag(&["run", "--config", &s(&cfg), "--out", &s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!dir.path().join("from-config").exists());
    let review = fs::read_to_string(out.join("review.csv")).unwrap();
    // three-character names are allowed by the config file
    assert!(review.contains("即亨之"));

    fs::write(&cfg, "colour=blue\n").unwrap();
    assert_eq!(
        epitag(&["run", "--config", &s(&cfg)]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_numbers_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let o = epitag(&[
        "run",
        "--corpus",
        &c,
        "--max-name-len",
        "0",
        "--out",
        &s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = epitag(&[
        "run",
        "--corpus",
        &c,
        "--workers",
        "0",
        "--out",
        &s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strict_dictionaries_fail_with_dictionary_code() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let place = dir.path().join("place.csv");
    fs::write(&place, "眉州\n州\n").unwrap();
    let out = dir.path().join("out");
    let lenient = epitag(&[
        "run",
        "--corpus",
        &c,
        "--dict-place",
        &s(&place),
        "--out",
        &s(&out),
    ]);
    assert!(lenient.status.success());
    let strict = epitag(&[
        "run",
        "--corpus",
        &c,
        "--dict-place",
        &s(&place),
        "--strict-dicts",
        "--out",
        &s(&out),
    ]);
    assert_eq!(strict.status.code(), Some(3));

    let check = epitag(&["dict-check", "--dict-place", &s(&place)]);
    assert!(check.status.success());
    let text = String::from_utf8(check.stdout).unwrap();
    assert!(
        text.contains("[place] 1 issue(s)\nROW 2: single-character, not whitelisted: 州"),
        "{text}"
    );
}

#[test]
fn undecodable_corpus_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    fs::create_dir(&c).unwrap();
    fs::write(c.join("x.txt"), [0xff, 0xfe, 0x00]).unwrap();
    let o = epitag(&[
        "run",
        "--corpus",
        &s(&c),
        "--out",
        &s(&dir.path().join("o")),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("segment"));
}

#[test]
fn tsv_corpus_format() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("c.tsv");
    fs::write(&tsv, format!("a\t{A}\tvol.1\nb\t{B}\n")).unwrap();
    let out = dir.path().join("o");
    let o = epitag(&[
        "run",
        "--corpus",
        &s(&tsv),
        "--corpus-format",
        "tsv",
        "--out",
        &s(&out),
    ]);
    assert!(o.status.success());
    let review = fs::read_to_string(out.join("review.csv")).unwrap();
    assert_eq!(review.lines().count(), 5);
}
