use std::sync::Arc;

use cyclobar::cache::{file_name, from_document, to_document};
use cyclobar::WittPolynomialCache;
use cyclobar_core::witt::{structure_polynomials, TruncationSet, WittOp};

#[test]
fn file_names_encode_set_and_op() {
    assert_eq!(file_name(&TruncationSet::big(2), WittOp::Add), "witt-add-S1_2.json");
    assert_eq!(file_name(&TruncationSet::p_typical(3, 3), WittOp::Mul), "witt-mul-S1_3_9.json");
}

#[test]
fn document_round_trip() {
    for set in [TruncationSet::big(6), TruncationSet::p_typical(2, 4)] {
        for op in [WittOp::Add, WittOp::Mul] {
            let sp = structure_polynomials(&set, op).unwrap();
            let doc = to_document(&sp);
            let text = serde_json::to_string(&doc).unwrap();
            let back = from_document(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, sp);
        }
    }
}

#[test]
fn persisted_entries_are_reused_and_verified() {
    let dir = tempfile::tempdir().unwrap();
    let set = TruncationSet::big(4);
    let first = WittPolynomialCache::new(Some(dir.path().to_path_buf()));
    let sp = first.get(&set, WittOp::Mul).unwrap();
    let path = dir.path().join("witt-mul-S1_2_3_4.json");
    assert!(path.exists());
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1, "temporary files are renamed away");

    let second = WittPolynomialCache::new(Some(dir.path().to_path_buf()));
    assert_eq!(*second.get(&set, WittOp::Mul).unwrap(), *sp);

    // a tampered coefficient fails the ghost check and is recomputed
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\"coefficient\": 2", "\"coefficient\": 3", 1);
    assert_ne!(tampered, text);
    std::fs::write(&path, &tampered).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&tampered).unwrap();
    assert!(from_document(&doc).is_err());
    let third = WittPolynomialCache::new(Some(dir.path().to_path_buf()));
    assert_eq!(*third.get(&set, WittOp::Mul).unwrap(), *sp);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn garbage_files_are_replaced() {
    let dir = tempfile::tempdir().unwrap();
    let set = TruncationSet::big(3);
    std::fs::write(dir.path().join(file_name(&set, WittOp::Add)), "{ not json").unwrap();
    let cache = WittPolynomialCache::new(Some(dir.path().to_path_buf()));
    assert_eq!(*cache.get(&set, WittOp::Add).unwrap(), structure_polynomials(&set, WittOp::Add).unwrap());
}

#[test]
fn concurrent_readers_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Arc::new(WittPolynomialCache::new(Some(dir.path().to_path_buf())));
    let sets = [TruncationSet::big(5), TruncationSet::p_typical(3, 3)];
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let cache = Arc::clone(&cache);
            let set = sets[i % 2].clone();
            std::thread::spawn(move || cache.get(&set, WittOp::Mul).unwrap())
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (i, r) in results.iter().enumerate() {
        assert_eq!(**r, *results[i % 2]);
    }
    assert_eq!(cache.len(), 2);
    for set in &sets {
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(file_name(set, WittOp::Mul))).unwrap()).unwrap();
        assert!(from_document(&doc).is_ok());
    }
}

#[test]
fn memory_only_without_directory() {
    let cache = WittPolynomialCache::new(None);
    assert!(cache.is_empty());
    let a = cache.get(&TruncationSet::big(2), WittOp::Add).unwrap();
    let b = cache.get(&TruncationSet::big(2), WittOp::Add).unwrap();
    assert!(Arc::ptr_eq(&a, &b));
}
