//! Shared test fixtures. Expected cocircuit sets are frozen from the
//! determinant sign oracle exercised in the acceptance suite.

use crate::matroid::OrientedMatroid;
use crate::sign::SignVector;

pub(crate) fn sv(s: &str) -> SignVector {
    s.parse().unwrap()
}

/// Rank-2 matroid of the vectors (1,0), (0,1), (1,1).
pub(crate) fn l3() -> OrientedMatroid {
    OrientedMatroid::from_representatives(3, vec![sv("0++"), sv("+0+"), sv("+-0")]).unwrap()
}

/// Four points in general position in rank 3: e1, e2, e3, (1,1,1).
pub(crate) fn u34() -> OrientedMatroid {
    OrientedMatroid::from_representatives(
        4,
        vec![
            sv("00++"),
            sv("0+0+"),
            sv("0+-0"),
            sv("+00+"),
            sv("+0-0"),
            sv("+-00"),
        ],
    )
    .unwrap()
}

/// Five points in rank 3: e1, e2, e3, (1,1,1), (1,2,4). The four planes
/// through e1 are distinct, so the line of planes through it carries four
/// hyperplanes and has comodular pairs that are not conformal.
pub(crate) fn pencil5() -> OrientedMatroid {
    crate::ingest::om_from_vectors(&crate::ingest::VectorConfig::new(
        3,
        vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
            vec![1, 2, 4],
        ],
    ))
    .unwrap()
}

/// Five points in rank 3 with one coplanarity: e1, e2, e3, (1,1,1), (1,1,0).
pub(crate) fn fan5() -> OrientedMatroid {
    crate::ingest::om_from_vectors(&crate::ingest::VectorConfig::new(
        3,
        vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
            vec![1, 1, 0],
        ],
    ))
    .unwrap()
}
