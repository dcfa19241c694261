//! Compares the crate against values computed independently with sympy
//! (`oracle/derive.py`, output checked in as `fixtures/derived.json`).

use serde_json::Value;
use trigonal::forms::Mat2;
use trigonal::linalg::{rank, rat};
use trigonal::schedule::moduli_dimension;
use trigonal::transvectants::monomial_transvectant;
use trigonal::verifier::verify_witness_set;
use trigonal::{
    bi_transvect, schedule_for, transvect, verify_generic, witnesses_for, BiForm, BiTransvectant,
    BinaryForm, GenericOptions, GroupElement, Rational, TransvectantSpec,
};

fn fixture() -> Value {
    serde_json::from_str(include_str!("fixtures/derived.json")).unwrap()
}

fn rationals(v: &Value) -> Vec<Rational> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().parse().unwrap())
        .collect()
}

fn biform(a: usize, b: usize, v: &Value) -> BiForm {
    BiForm::new(a, b, rationals(v)).unwrap()
}

fn usize_at(v: &Value, k: usize) -> usize {
    v[k].as_u64().unwrap() as usize
}

/// `X^p Y^q` as a binary form.
fn xy(p: usize, q: usize) -> BinaryForm {
    BinaryForm::monomial(p + q, q).unwrap()
}

#[test]
fn group_action_example() {
    let m: Mat2 = [[rat(1), rat(1)], [rat(0), rat(1)]];
    let id: Mat2 = [[rat(1), rat(0)], [rat(0), rat(1)]];
    let g = GroupElement::new(m, id).unwrap();
    let y = BiForm::monomial(1, 0, 1, 0).unwrap();
    assert_eq!(y.act(&g), biform(1, 0, &fixture()["act_y"]));
}

#[test]
fn transvectant_examples() {
    for case in fixture()["transvect"].as_array().unwrap() {
        let f = xy(usize_at(&case["f"], 0), usize_at(&case["f"], 1));
        let g = xy(usize_at(&case["g"], 0), usize_at(&case["g"], 1));
        let r = case["r"].as_u64().unwrap() as usize;
        let t = transvect(&f, &g, r).unwrap();
        assert_eq!(t.coeffs(), rationals(&case["out"]), "{case}");
    }
}

#[test]
fn transvectant_table() {
    let fx = fixture();
    let table = fx["transvect_table"].as_array().unwrap();
    assert!(table.len() > 1500);
    for row in table {
        let (d, p, e, q, r) = (
            usize_at(row, 0),
            usize_at(row, 1),
            usize_at(row, 2),
            usize_at(row, 3),
            usize_at(row, 4),
        );
        let expected = rationals(&row[5]);
        let t = transvect(&xy(p, d - p), &xy(q, e - q), r).unwrap();
        assert_eq!(t.coeffs(), expected, "{row}");
        // the closed monomial coefficient sits at X-exponent p + q - r
        let c = monomial_transvectant(d, p, e, q, r);
        let nonzero: Vec<usize> = (0..expected.len())
            .filter(|&k| expected[k] != rat(0))
            .collect();
        match nonzero.as_slice() {
            [] => assert_eq!(c, rat(0)),
            [k] => {
                assert_eq!(d + e - 2 * r - k, p + q - r);
                assert_eq!(c, expected[*k]);
            }
            _ => panic!("monomial transvectant with several terms: {row}"),
        }
    }
}

#[test]
fn bi_transvectant_example() {
    let spec = TransvectantSpec::new(1, 1, (2, 2), (2, 2)).unwrap();
    let p = BiForm::monomial(2, 2, 0, 0).unwrap();
    let q = BiForm::monomial(2, 2, 2, 2).unwrap();
    assert_eq!(
        bi_transvect(&p, &q, &spec).unwrap(),
        biform(2, 2, &fixture()["bi_transvect"])
    );
}

fn check_certificate(b: i64, key: &str) {
    let fx = fixture();
    let o = &fx[key];
    let sched = schedule_for(b).unwrap();
    let set = witnesses_for(b).unwrap();
    let (a2, b2) = sched.src2;
    // Transcriptions agree with the independently typed vectors.
    assert_eq!(set.v, biform(3, b as usize, &o["v"]));
    let ws: Vec<BiForm> = o["ws"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| biform(a2, b2, w))
        .collect();
    assert_eq!(set.ws, ws);

    let rep = verify_witness_set(&sched, &set).unwrap();
    assert_eq!(rep.cond_ii.pass, o["vanishing"].as_bool().unwrap());
    assert_eq!(rep.cond_i.rank, o["rank_w"].as_u64().unwrap() as usize);
    assert_eq!(rep.cond_iii.rank, o["rank_iii"].as_u64().unwrap() as usize);
    assert_eq!(rep.kernel_dim, o["kernel_dim"].as_u64().unwrap() as usize);
    assert_eq!(
        rep.kernel_equals_span,
        o["kernel_equals_span"].as_bool().unwrap()
    );
    assert_eq!(rep.cond_iv.rank, o["rank_iv"].as_u64().unwrap() as usize);
    assert!(rep.pass());

    let t = BiTransvectant::new(sched.spec());
    assert_eq!(
        rank(&t.right_slot_matrix(&set.v).unwrap()),
        rep.cond_iii.rank
    );
}

#[test]
fn b5_certificate() {
    check_certificate(5, "b5");
}

#[test]
fn b7_certificate() {
    check_certificate(7, "b7");
}

#[test]
fn b9_second_slot_vector() {
    let set = witnesses_for(9).unwrap();
    assert_eq!(set.ws, vec![biform(1, 7, &fixture()["b9_w"])]);
}

#[test]
fn b13_generic_kernel() {
    let expected = fixture()["b13_generic_kernel_dim"].as_u64().unwrap() as usize;
    let rep = verify_generic(13, &GenericOptions::default()).unwrap();
    assert_eq!(rep.kernel_dim, expected);
    assert!(rep.pass());
}

#[test]
fn moduli_dimensions() {
    let fx = fixture();
    for (b, d) in fx["moduli_dimension"].as_object().unwrap() {
        assert_eq!(
            moduli_dimension(b.parse().unwrap()),
            d.as_u64().unwrap() as usize
        );
    }
}
