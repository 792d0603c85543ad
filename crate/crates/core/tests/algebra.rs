use ccwg_core::algebra::{
    closure, comb_intertwiner, commutant_tower, k_equivalent, radical, radical_powers, summand_count_tower, Equivalence, FieldMode,
};
use ccwg_core::braid::tower;
use ccwg_core::catalog::{get, resolve};
use ccwg_core::field::P1;
use ccwg_core::FieldTag;

const Q: FieldTag = FieldTag::Rational;

#[test]
fn eight_vertex_matches_spectral_candidate() {
    for (p, q) in [(2i64, 1i64), (1, 3)] {
        let e = resolve(&format!("R_8vertex(p={p},q={q})"), Q).unwrap();
        let c = resolve(&format!("R_ag(p={},q={},k=0)", 2 * p * p, 2 * q * q), Q).unwrap();
        assert_eq!(e.minimal_polynomial().unwrap(), c.minimal_polynomial().unwrap());
        assert_eq!(k_equivalent(&e, &c, 3, 5).unwrap().verdict, Equivalence::Equivalent);
    }
}

#[test]
fn heart_is_separated_from_fi_early() {
    let fi = get("R_fI").unwrap().matrix;
    let heart = get("R_heart").unwrap().matrix;
    let rep = k_equivalent(&fi, &heart, 2, 1).unwrap();
    assert_eq!(rep.verdict, Equivalence::Inequivalent);
    assert_eq!(rep.levels.len(), 1);
}

#[test]
fn fi_and_diamond_agree_to_level_five() {
    let p = FieldTag::Prime(P1);
    let fi = get("R_fI").unwrap().matrix.to_field(p).unwrap();
    let dm = get("R_diamond").unwrap().matrix.to_field(p).unwrap();
    assert_eq!(k_equivalent(&fi, &dm, 5, 2).unwrap().verdict, Equivalence::Equivalent);
}

#[test]
fn decompositions() {
    let fi = get("R_fI").unwrap().matrix;
    let heart = get("R_heart").unwrap().matrix;
    for n in 3..=5 {
        let s = summand_count_tower(&fi, n, 9).unwrap();
        assert_eq!(s.count, Some(2), "fI n={n}");
        assert_eq!(s.summand_dims, Some(vec![1 << (n - 1); 2]));
        assert_eq!(summand_count_tower(&heart, n, 9).unwrap().count, Some(1), "heart n={n}");
    }
}

#[test]
fn radical_is_a_nilpotent_ideal() {
    for name in ["R_fI", "R_heart", "R_unipotent_glue"] {
        let r = get(name).unwrap().matrix;
        let a = closure(&tower(&r, 4).unwrap()).unwrap();
        let rad = radical(&a).unwrap();
        assert!(rad.is_ideal_of(a.subspace()).unwrap(), "{name}");
        let pows = radical_powers(&a, &rad, a.dim()).unwrap();
        assert_eq!(pows.last(), Some(&0), "{name}");
        assert!(pows.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn comb_conjugation_carries_commutants() {
    let fi = get("R_fI").unwrap().matrix;
    let dm = get("R_diamond").unwrap().matrix;
    let t = comb_intertwiner(4, Q).unwrap();
    let e_fi = commutant_tower(&fi, 4).unwrap();
    let e_dm = commutant_tower(&dm, 4).unwrap();
    assert_eq!(e_fi.dim(), e_dm.dim());
    for x in e_fi.subspace().basis().unwrap() {
        let y = t.compose(&x).unwrap().compose(&t).unwrap();
        assert!(e_dm.subspace().contains(&y).unwrap());
    }
}

#[test]
fn field_modes_agree() {
    let fi = get("R_fI").unwrap().matrix;
    let q = ccwg_core::tables::tower_dims(&fi, 4, FieldMode::Rational, 2).unwrap();
    let p = ccwg_core::tables::tower_dims(&fi, 4, FieldMode::DualPrime, 2).unwrap();
    assert_eq!(q, p);
    assert_eq!("Fp2".parse::<FieldMode>().unwrap(), FieldMode::DualPrime);
}
