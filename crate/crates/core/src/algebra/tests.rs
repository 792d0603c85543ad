use super::*;
use crate::braid::tower;
use crate::field::Scalar;

fn r2() -> Rank {
    Rank::new(2).unwrap()
}

fn m(rows: &[&[i64]], field: FieldTag) -> WordMatrix {
    WordMatrix::from_int_rows(r2(), 2, field, rows).unwrap()
}

fn fi(field: FieldTag) -> WordMatrix {
    m(&[&[1, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[0, 0, 0, 1]], field)
}

fn diamond(field: FieldTag) -> WordMatrix {
    m(&[&[1, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]], field)
}

fn heart(field: FieldTag) -> WordMatrix {
    m(&[&[1, 1, 0, 1], &[0, 0, 1, 1], &[0, 1, 0, 0], &[0, 0, 0, 1]], field)
}

fn swap(field: FieldTag) -> WordMatrix {
    m(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]], field)
}

const Q: FieldTag = FieldTag::Rational;
const FP: FieldTag = FieldTag::Prime(P1);

#[test]
fn identity_generates_scalars() {
    let a = closure(&[WordMatrix::identity(r2(), 3, Q).unwrap()]).unwrap();
    assert_eq!(a.dim(), 1);
    assert_eq!(radical_dim(&a).unwrap(), 0);
}

#[test]
fn fi_small_levels() {
    let a = closure(&tower(&fi(Q), 3).unwrap()).unwrap();
    assert_eq!(a.dim(), 10);
    assert!(a.is_closed().unwrap());
    let rad = radical(&a).unwrap();
    assert_eq!(a.dim() - rad.dim(), 5);
    assert!(rad.is_ideal_of(a.subspace()).unwrap());
    let a4 = closure(&tower(&fi(FP), 4).unwrap()).unwrap();
    assert_eq!(a4.dim(), 35);
    assert_eq!(radical_dim(&a4).unwrap(), 21);
    assert_eq!(radical_power(&a4, 2).unwrap(), 1);
}

#[test]
fn full_matrix_algebra_is_semisimple() {
    // Matrix units generate everything.
    let units: Vec<WordMatrix> = (0..4u64)
        .flat_map(|r| (0..4u64).map(move |c| (r, c)))
        .map(|(r, c)| WordMatrix::from_index_entries(r2(), 2, 2, Q, [(r, c, Scalar::one(Q))]).unwrap())
        .collect();
    let a = closure(&units).unwrap();
    assert_eq!(a.dim(), 16);
    assert_eq!(radical_dim(&a).unwrap(), 0);
    assert_eq!(commutant(&units).unwrap().dim(), 1);
}

#[test]
fn small_characteristic_is_rejected() {
    let a = closure(&tower(&fi(FieldTag::Prime(5)), 3).unwrap()).unwrap();
    assert!(matches!(radical(&a), Err(Error::FieldPrecondition(_))));
}

#[test]
fn commutants_at_three() {
    assert_eq!(commutant(&tower(&fi(Q), 3).unwrap()).unwrap().dim(), 8);
    assert_eq!(commutant(&tower(&heart(Q), 3).unwrap()).unwrap().dim(), 4);
    let dm = commutant(&tower(&diamond(Q), 3).unwrap()).unwrap();
    assert_eq!(dm.dim(), 8);
    assert_eq!(radical(&dm).unwrap().dim(), 6);
}

#[test]
fn tower_fast_path_matches_generic() {
    for r in [fi(Q), diamond(Q), heart(Q), swap(Q)] {
        for n in 2..=4 {
            let fast = intertwiner_space(&r, &r, n).unwrap();
            let slow = commutant(&tower(&r, n).unwrap()).unwrap();
            assert_eq!(fast.dim(), slow.dim(), "n={n}");
            assert!(slow.subspace().contains_subspace(&fast).unwrap());
        }
    }
    let fast = intertwiner_space(&fi(Q), &diamond(Q), 4).unwrap();
    let slow = intertwiner_space_generic(&tower(&fi(Q), 4).unwrap(), &tower(&diamond(Q), 4).unwrap()).unwrap();
    assert_eq!(fast.dim(), slow.dim());
    assert!(slow.contains_subspace(&fast).unwrap());
}

#[test]
fn summands_fi_and_heart() {
    let s = summand_count_tower(&fi(Q), 4, 1).unwrap();
    assert_eq!(s.count, Some(2));
    assert_eq!(s.summand_dims, Some(vec![8, 8]));
    let h = summand_count_tower(&heart(Q), 4, 1).unwrap();
    assert_eq!(h.count, Some(1));
    assert_eq!(h.summand_dims, Some(vec![16]));
}

#[test]
fn commutant_of_nothing_on_a_line() {
    let r1 = Rank::new(1).unwrap();
    let e = commutant_in(r1, 1, Q, &[]).unwrap();
    assert_eq!(summand_count(&e, 0).unwrap().count, Some(1));
    let e2 = commutant_in(r2(), 1, Q, &[]).unwrap();
    assert_eq!(e2.dim(), 4);
    assert_eq!(summand_count(&e2, 0).unwrap().count, None);
}

#[test]
fn intertwiners_fi_diamond() {
    let sp = intertwiner_space(&fi(Q), &diamond(Q), 3).unwrap();
    let t = comb_intertwiner(3, Q).unwrap();
    assert!(sp.contains(&t).unwrap());
    assert!(intertwiner_space(&diamond(Q), &fi(Q), 3).unwrap().contains(&t).unwrap());
    let none = intertwiner_space(&fi(Q), &heart(Q), 3).unwrap();
    let rep = k_equivalent(&fi(Q), &heart(Q), 3, 7).unwrap();
    assert_ne!(rep.verdict, Equivalence::Equivalent);
    assert!(none.dim() < sp.dim());
}

#[test]
fn k_equivalence() {
    assert_eq!(k_equivalent(&fi(Q), &fi(Q), 4, 3).unwrap().verdict, Equivalence::Equivalent);
    assert_eq!(k_equivalent(&fi(FP), &diamond(FP), 5, 3).unwrap().verdict, Equivalence::Equivalent);
    assert_eq!(k_equivalent(&fi(Q), &swap(Q), 3, 3).unwrap().verdict, Equivalence::Inequivalent);
}

#[test]
fn comb_words() {
    assert_eq!(comb_word(2).unwrap().to_string(), "BA");
    assert_eq!(comb_word(3).unwrap().to_string(), "ACBA");
    assert_eq!(comb_word(4).unwrap().to_string(), "BADBACBA");
    let ba: CombWord = "BA".parse().unwrap();
    assert_eq!(CombWord::decode(&ba.g_minus()).unwrap().to_string(), "AB");
    assert!(ba.well_combed());
    assert!(!"BB".parse::<CombWord>().unwrap().well_combed());
    assert!("C".parse::<CombWord>().unwrap().well_combed());
    for n in 1..=12 {
        assert!(comb_word(n).unwrap().well_combed(), "w_{n}");
    }
}

#[test]
fn comb_intertwines_towers() {
    for n in 2..=6 {
        let t = comb_intertwiner(n, Q).unwrap();
        assert_eq!(t.compose(&t).unwrap(), WordMatrix::identity(r2(), n, Q).unwrap());
        for (a, b) in tower(&fi(Q), n).unwrap().iter().zip(tower(&diamond(Q), n).unwrap()) {
            assert_eq!(a.compose(&t).unwrap(), t.compose(&b).unwrap(), "n={n}");
        }
    }
}

#[test]
fn dual_prime_agrees() {
    let dim = dual_prime(|f| Ok(closure(&tower(&fi(f), 4)?)?.dim())).unwrap();
    assert_eq!(dim, 35);
}
