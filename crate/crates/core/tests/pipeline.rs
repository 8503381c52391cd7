//! End-to-end library pipeline: construct, serialise, parse, balance,
//! serialise the balanced code, parse it back, and measure.

use qltc::balance::{bound_check, distance_balance, double_balance};
use qltc::constructions::{q_complex, rep_standard, CodeSpec};
use qltc::io::{balanced_to_json, parse_code, write_code, CodeFile};
use qltc::oracle::{
    analyze_classical, analyze_quantum, quantum_dimension, quantum_distances, Distance,
};
use qltc::{CssCode, DEFAULT_CAP};

fn quantum(file: CodeFile) -> CssCode {
    match file {
        CodeFile::Quantum(q) => q,
        CodeFile::Classical(_) => panic!("expected a quantum code"),
    }
}

#[test]
fn files_round_trip_through_balancing() {
    let rep3 = CodeFile::Classical(rep_standard(3).unwrap());
    let rep3_text = write_code(&rep3);
    assert_eq!(rep3_text, "2 3\n110\n011\n");
    let CodeFile::Classical(parsed) = parse_code(&rep3_text).unwrap() else {
        panic!("PCM parses as classical");
    };

    let q = q_complex(parsed.h()).unwrap();
    let q_text = write_code(&CodeFile::Quantum(q.clone()));
    let q = quantum(parse_code(&q_text).unwrap());

    let b = distance_balance(&q, &rep_standard(2).unwrap()).unwrap();
    let reparsed = quantum(parse_code(&balanced_to_json(&b)).unwrap());
    assert_eq!(reparsed, b.code);
    assert_eq!(quantum_dimension(&reparsed), 1);
    assert_eq!(
        quantum_distances(&reparsed, DEFAULT_CAP).unwrap(),
        (Distance::Finite(4), Distance::Finite(3))
    );
}

#[test]
fn reports_survive_serialisation() {
    let spec: CodeSpec = serde_json::from_str(
        r#"{"family":"random_css","params":{"n":6,"n_x":2,"n_z":2,"seed":4}}"#,
    )
    .unwrap();
    let CodeFile::Quantum(q) = spec.build().unwrap() else {
        panic!("random_css builds a quantum code");
    };
    let again = quantum(parse_code(&write_code(&CodeFile::Quantum(q.clone()))).unwrap());
    assert_eq!(
        analyze_quantum(&q, DEFAULT_CAP, "x").to_json(),
        analyze_quantum(&again, DEFAULT_CAP, "x").to_json()
    );
    // rep-5: 11000 has one violated check and sits at distance 2, so 5·1/(4·2)
    let r = rep_standard(5).unwrap();
    assert_eq!(
        analyze_classical(&r, DEFAULT_CAP, "rep").to_json(),
        r#"{"kind":"classical","n":5,"K":1,"d":5,"soundness":{"num":5,"den":8},"locality":2,"s":4,"provenance":"rep"}"#
    );
}

#[test]
fn block_layout_covers_every_index() {
    let q = q_complex(rep_standard(3).unwrap().h()).unwrap();
    let r = rep_standard(3).unwrap();
    for b in [
        distance_balance(&q, &r).unwrap(),
        double_balance(&q, &r).unwrap(),
    ] {
        for (blocks, total) in [
            (&b.block_layout.qubits, b.code.n()),
            (&b.block_layout.x_checks, b.code.n_x()),
            (&b.block_layout.z_checks, b.code.n_z()),
        ] {
            let mut next = 0;
            for block in blocks.iter() {
                assert_eq!(block.start, next, "{}", block.label);
                next = block.end;
            }
            assert_eq!(next, total);
        }
    }
}

#[test]
fn bound_check_on_a_longer_repetition_code() {
    let q = q_complex(rep_standard(3).unwrap().h()).unwrap();
    let report = bound_check(&q, &rep_standard(4).unwrap(), None, DEFAULT_CAP).unwrap();
    assert!(report.all_hold());
    assert!(report.x.measured >= report.x.bound);
    assert!(report.z.measured >= report.z.bound);
    assert!(report.hypothesis.holds);
}
