//! Frozen values from independent brute-force enumerations, plus file-format
//! round trips.

use fqgeom::simplices::{count_congruence_classes, CountOptions};
use fqgeom::{PointSet, PrimeField, QuadraticForm};
use proptest::prelude::*;

fn field(q: u64) -> PrimeField {
    PrimeField::new(q).unwrap()
}

fn fast_count(e: &PointSet, k: usize) -> usize {
    let form = QuadraticForm::dot(e.field(), e.dim());
    count_congruence_classes(e, k, &form, &CountOptions::default()).unwrap().total
}

#[test]
fn distance_matrix_counts_match_enumeration() {
    assert_eq!(fast_count(&PointSet::full(field(5), 2).unwrap(), 2), 85);
    assert_eq!(fast_count(&PointSet::full(field(7), 2).unwrap(), 2), 175);
    let pts: Vec<Vec<i64>> = (0..3).flat_map(|a| (0..3).map(move |b| vec![a, b])).collect();
    let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
    let grid = PointSet::from_points(field(13), 2, &refs).unwrap();
    assert_eq!(fast_count(&grid, 1), 6);
    assert_eq!(fast_count(&grid, 2), 55);
}

#[test]
fn text_format_details() {
    let e = PointSet::parse_text("# header comment\n5 2\n\n1 2  # trailing\n4 4\n").unwrap();
    assert_eq!(e.len(), 2);
    assert_eq!(e.to_text(), "5 2\n1 2\n4 4\n");
    assert!(PointSet::parse_text("5 2\n1 2 3\n").is_err());
    assert!(PointSet::parse_text("6 2\n1 2\n").is_err());
    assert!(PointSet::parse("{\"q\": 5, \"d\": 1, \"points\": [[3]]}").unwrap().contains_vector(&fqgeom::Vector(vec![3])));
}

proptest! {
    #[test]
    fn formats_round_trip(q in prop::sample::select(vec![3u64, 5, 7]), d in 1usize..4, picks in prop::collection::vec(any::<u32>(), 0..20)) {
        let n = (q as u32).pow(d as u32);
        let e = PointSet::from_indices(field(q), d, picks.iter().map(|p| (p % n) as usize)).unwrap();
        prop_assert_eq!(&PointSet::parse(&e.to_text()).unwrap(), &e);
        prop_assert_eq!(&PointSet::parse(&e.to_json()).unwrap(), &e);
    }
}
