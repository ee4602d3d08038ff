mod common;

use std::collections::HashSet;

use common::{choose, grid, path, valid_by_definition};
use latpath::bijection::{compose, decompose, factorize, phi, phi_inverse, phi_propositions_check, Case};
use latpath::enumeration::enumerate_valid;
use latpath::{LatticePath, Point, Step};

const ROUND_TRIP_SET: [(i64, i64); 5] = [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)];

#[test]
fn phi_inverse_undoes_phi() {
    for (r, n) in ROUND_TRIP_SET {
        let g = grid(r, 2, n);
        for p in enumerate_valid(g) {
            let image = phi(&p, g).unwrap();
            assert!(valid_by_definition(&image.q, g), "{p}");
            assert_eq!(image.p1.count(Step::N), 2);
            assert_eq!(image.p1.end(), Point::new(r, 2));
            assert_eq!(image.p1.leading_run(Step::E), p.leading_run(Step::E));
            assert_eq!(phi_inverse(&image.p1, &image.q, g).unwrap(), p);
        }
    }
}

#[test]
fn phi_undoes_phi_inverse_on_the_whole_product() {
    for (r, n) in ROUND_TRIP_SET {
        let g = grid(r, 2, n);
        let firsts: Vec<LatticePath> = enumerate_valid(grid(r, 2, 1)).collect();
        let rests: Vec<LatticePath> = enumerate_valid(grid(r, 2, n - 1))
            .map(|q| q.translate(Point::new(r, 2)))
            .collect();
        let mut preimages = HashSet::new();
        for p1 in &firsts {
            for q in &rests {
                let p = phi_inverse(p1, q, g).unwrap();
                assert!(valid_by_definition(&p, g), "{p1} {q}");
                let image = phi(&p, g).unwrap();
                assert_eq!((&image.p1, &image.q), (p1, q));
                preimages.insert(p);
            }
        }
        assert_eq!(preimages.len(), firsts.len() * rests.len());
        assert_eq!(preimages.len(), enumerate_valid(g).count());
    }
}

#[test]
fn propositions_hold_everywhere() {
    for (r, n) in ROUND_TRIP_SET {
        let g = grid(r, 2, n);
        for p in enumerate_valid(g) {
            assert!(phi_propositions_check(&p, g), "{p}");
            let d = decompose(&p, g).unwrap();
            assert!(d.a + d.b <= r as usize);
            match d.case {
                Case::Absorb => assert_eq!(d.a + d.b + d.c, r as usize),
                Case::Wrap => assert!(d.a + d.b + d.c < r as usize),
            }
        }
    }
}

#[test]
fn both_cases_occur() {
    let g = grid(2, 2, 3);
    let cases: HashSet<_> = enumerate_valid(g).map(|p| decompose(&p, g).unwrap().case).collect();
    assert_eq!(cases.len(), 2);
}

#[test]
fn factorization_is_injective_onto_the_product() {
    for (r, n) in [(3, 2), (2, 3), (1, 3), (3, 3)] {
        let g = grid(r, 2, n);
        let mut images = HashSet::new();
        let mut total = 0;
        for p in enumerate_valid(g) {
            let f = factorize(&p, g).unwrap();
            assert_eq!(f.factors.len(), n as usize);
            assert!(f
                .factors
                .iter()
                .all(|x| x.start() == Point::ORIGIN && x.end() == Point::new(r, 2)));
            assert_eq!(f.factors[0].leading_run(Step::E), p.leading_run(Step::E));
            assert_eq!(compose(&f, g).unwrap(), p);
            images.insert(f);
            total += 1;
        }
        assert_eq!(images.len(), total);
        assert_eq!(total as u128, choose(r as u64 + 2, 2).pow(n as u32));
    }
}

#[test]
fn golden_values() {
    let g = grid(2, 2, 3);
    let image = phi(&path("NENNNNEEENEE"), g).unwrap();
    assert_eq!(format!("{} {}", image.p1, image.q), "NENE 2,2:NNNEEENE");
    let image = phi(&path("NNNNNEEEEENE"), g).unwrap();
    assert_eq!(format!("{} {}", image.p1, image.q), "NENE 2,2:EENNNNEE");
}

#[test]
fn invalid_inputs_are_rejected() {
    let g = grid(2, 2, 3);
    assert!(matches!(
        phi(&path("EEENNNNNNEEE"), g),
        Err(latpath::Error::InvalidPath(_))
    ));
    assert!(matches!(
        phi(&path("NENE"), grid(2, 3, 2)),
        Err(latpath::Error::Domain(_))
    ));
    assert!(matches!(
        factorize(&path("EENNN"), grid(2, 3, 1)),
        Err(latpath::Error::Domain(_))
    ));
}
