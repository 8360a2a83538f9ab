//! JSON and CSV emission for the computed artifacts.

use serde::Serialize;

use crate::actions::CoinvariantsReport;
use crate::error::{Error, Result};
use crate::homology::HomologyResult;

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// One entry of a CSV batch.
#[derive(Clone, Debug)]
pub enum CsvRecord {
    Homology { complex: String, result: HomologyResult },
    Coinvariants(CoinvariantsReport),
}

pub const CSV_HEADER: [&str; 8] = [
    "complex",
    "record",
    "coeff",
    "degree",
    "betti",
    "torsion",
    "invariant_factors",
    "vanishes_over_ZHalf",
];

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

/// One row per (complex, degree) for homology records, degrees `0..=dim`
/// (degree `-1` only for the empty complex), and one row per coinvariant
/// report. Lists are `;`-separated.
pub fn emit_csv(records: &[CsvRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(CSV_HEADER).map_err(err)?;
    for r in records {
        match r {
            CsvRecord::Homology { complex, result } => {
                let only_empty = result.degrees.iter().all(|h| h.d < 0);
                for h in result.degrees.iter().filter(|h| h.d >= 0 || only_empty) {
                    w.write_record([
                        complex.clone(),
                        "homology".into(),
                        result.coeff.to_string(),
                        h.d.to_string(),
                        h.betti.to_string(),
                        join(&h.torsion),
                        String::new(),
                        String::new(),
                    ])
                    .map_err(err)?;
                }
            }
            CsvRecord::Coinvariants(c) => {
                w.write_record([
                    c.complex_ref.clone(),
                    "coinvariants".into(),
                    "Z".into(),
                    String::new(),
                    c.free_rank.to_string(),
                    String::new(),
                    join(&c.invariant_factors),
                    c.vanishes_over_zhalf.to_string(),
                ])
                .map_err(err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_b, SimplicialComplex};
    use crate::homology::reduced_homology;
    use crate::rings::CoeffRing;
    use crate::F2;

    fn rows(csv: &str) -> usize {
        csv.lines().count() - 1
    }

    #[test]
    fn triangle_gives_two_rows() {
        let h = reduced_homology(&SimplicialComplex::simplex_boundary(2), CoeffRing::Z).unwrap();
        let out = emit_csv(&[CsvRecord::Homology {
            complex: "triangle".into(),
            result: h,
        }])
        .unwrap();
        assert_eq!(rows(&out), 2);
        assert!(out.starts_with("complex,record,coeff,degree,betti,torsion,invariant_factors,vanishes_over_ZHalf\n"));
    }

    #[test]
    fn batch_and_empty_batch() {
        let batch: Vec<CsvRecord> = (1..=3)
            .map(|n| CsvRecord::Homology {
                complex: format!("B_{n}(F2)"),
                result: reduced_homology(&build_b::<F2>(n, 0, None).unwrap().complex, CoeffRing::Z).unwrap(),
            })
            .collect();
        assert_eq!(rows(&emit_csv(&batch).unwrap()), 6);
        assert_eq!(rows(&emit_csv(&[]).unwrap()), 0);
        let empty = reduced_homology(&SimplicialComplex::empty(), CoeffRing::Z).unwrap();
        let out = emit_csv(&[CsvRecord::Homology {
            complex: "empty".into(),
            result: empty,
        }])
        .unwrap();
        assert!(out.lines().nth(1).unwrap().contains(",-1,1,"));
    }
}
