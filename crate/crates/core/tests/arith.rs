use std::fs;
use std::sync::Arc;
use std::thread;

use lazard_witt::arith::{compute_q, q_to_json_string, Op, QKey, QTable};
use lazard_witt::Error;

fn keys() -> Vec<QKey> {
    let mut out = Vec::new();
    for op in [Op::Add, Op::Mul] {
        for t in [0, 1] {
            for n in 0..=3 {
                out.push(QKey::new(op, n, 2, 2, t).unwrap());
            }
            for n in 0..=2 {
                out.push(QKey::new(op, n, 3, 3, t).unwrap());
            }
        }
    }
    out
}

#[test]
fn concurrent_requests_agree() {
    let dir = tempfile::tempdir().unwrap();
    let table = Arc::new(QTable::with_cache_dir(dir.path()));
    let results: Vec<Vec<String>> = thread::scope(|s| {
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let table = table.clone();
                s.spawn(move || {
                    let mut ks = keys();
                    let len = ks.len();
                    ks.rotate_left(i * 3 % len);
                    let mut out: Vec<(QKey, String)> = ks
                        .into_iter()
                        .map(|k| (k, q_to_json_string(&table.get(k).unwrap().q)))
                        .collect();
                    out.sort_by_key(|(k, _)| k.relative_path());
                    out.into_iter().map(|(_, s)| s).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for r in &results[1..] {
        assert_eq!(r, &results[0]);
    }
    assert_eq!(table.len(), keys().len());

    // a cold table reading the cache agrees with direct computation
    let cold = QTable::with_cache_dir(dir.path());
    for k in keys() {
        let path = dir.path().join(k.relative_path());
        assert_eq!(
            fs::read_to_string(&path).unwrap(),
            q_to_json_string(&compute_q(k).unwrap())
        );
        assert_eq!(cold.get(k).unwrap().q, compute_q(k).unwrap());
    }
    let leftovers = walk(dir.path()).into_iter().filter(|p| p.ends_with(".tmp")).count();
    assert_eq!(leftovers, 0);
}

fn walk(dir: &std::path::Path) -> Vec<String> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let path = e.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path.display().to_string());
        }
    }
    out
}

#[test]
fn corrupt_cache_entries_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let k = QKey::new(Op::Add, 1, 2, 2, 0).unwrap();
    let path = dir.path().join(k.relative_path());
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(&path, "{ not json").unwrap();
    let err = QTable::with_cache_dir(dir.path()).get(k).unwrap_err();
    assert!(matches!(err, Error::Json(_)), "{err}");
}

#[test]
fn invalid_keys_are_rejected() {
    assert!(QKey::new(Op::Add, 1, 4, 4, 0).is_err());
    assert!(QKey::new(Op::Add, 1, 2, 6, 0).is_err());
    assert!(QKey::new(Op::Mul, 1, 3, 3, 0).is_ok());
}
