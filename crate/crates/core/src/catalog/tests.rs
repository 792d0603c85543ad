use super::*;
use crate::braid::is_ybo;

const Q: FieldTag = FieldTag::Rational;

fn at(pairs: &[(&str, i64)]) -> Assignment {
    pairs.iter().map(|(k, v)| (k.to_string(), BigRational::from_integer((*v).into()))).collect()
}

#[test]
fn manifest_loads() {
    assert!(list().len() >= 30);
    for name in list() {
        let e = raw(name).unwrap();
        ParametricFamily::from_manifest(e).unwrap();
    }
    assert!(matches!(get("unknown"), Err(Error::UnknownName(_))));
}

#[test]
fn fixed_entries_are_ybos() {
    for name in fixed_names() {
        let e = get(name).unwrap();
        assert!(is_ybo(&e.matrix), "{name}");
        assert_eq!(e.matrix.is_ccwg(), name != "Ising", "{name}");
    }
}

#[test]
fn families_pass_at_twenty_points() {
    for name in family_names() {
        let f = family(name).unwrap();
        if f.kind == EntryKind::Ansatz {
            continue;
        }
        let rep = f.verify(20, 11);
        if name == "R_ag" {
            // Only a braid representation on p = ±q.
            assert!(!rep.all_pass());
            continue;
        }
        let bad: Vec<_> = rep.points.iter().filter(|p| !p.ybo).collect();
        assert!(rep.all_pass(), "{name}: {bad:?}");
    }
}

#[test]
fn a_glue_on_its_subvarieties() {
    let f = family("R_ag").unwrap();
    assert!(is_ybo(&f.evaluate(&at(&[("p", 3), ("q", 7), ("k", 0)]), Q).unwrap()));
    for seed in 0..20 {
        let mut a = f.sample(seed).unwrap();
        for sign in [1i64, -1] {
            let p = a["p"].clone();
            a.insert("q".into(), p * BigRational::from_integer(sign.into()));
            assert!(is_ybo(&f.evaluate(&a, Q).unwrap()), "{a:?}");
        }
    }
}

#[test]
fn fi_and_fff_glue_shapes() {
    let fi = get("R_fI").unwrap().matrix;
    assert_eq!(fi.get_index(0, 3), Scalar::one(Q));
    assert_eq!(fi.get_index(1, 2), Scalar::from_i64(Q, -1));
    assert_eq!(fi.get_index(2, 1), Scalar::from_i64(Q, -1));
    let g = get("R_fff_glue").unwrap().matrix;
    let cc = get("R_fff_0").unwrap().matrix;
    let diff = g.sub(&cc).unwrap();
    assert_eq!(diff.nnz(), 1);
    assert_eq!(diff.get_index(4, 8), Scalar::one(Q));
}

#[test]
fn named_specialisations() {
    let d = family("R_fII").unwrap().evaluate(&at(&[("k", 1), ("p", 0), ("q", 0), ("s", 1)]), Q).unwrap();
    assert_eq!(d, get("R_diamond").unwrap().matrix);
    let x = resolve("R_ag_x(a=1,b=-6,x=3,p=0,q=0,r=0,s=0,t=0)", Q).unwrap();
    assert_eq!(x, resolve("R_a(k=1,p=2,q=3)", Q).unwrap());
    let sl = resolve("R_backslash(k=1,p=1,q=1,s=1)", Q).unwrap();
    assert!(is_ybo(&sl));
}

#[test]
fn intersections() {
    for k in [1i64, 2, -3] {
        let f = resolve(&format!("R_f(k={k},p={k},q={k})"), Q).unwrap();
        let f2 = resolve(&format!("R_fII(k={k},p=0,q=0,s=0)"), Q).unwrap();
        assert!(f.gamma_equiv(&f2.scale(&Scalar::from_i64(Q, k)).unwrap()).unwrap());
        let f3 = resolve(&format!("R_fIII(k={k},p=1,q=1)"), Q).unwrap();
        assert_eq!(f, f3.deglue());
    }
    let f = resolve("R_f(k=1,p=-1,q=-1)", Q).unwrap();
    assert_eq!(f, get("R_fI").unwrap().matrix.deglue());
}

#[test]
fn deglue_of_ybos() {
    for name in fixed_names() {
        let m = get(name).unwrap().matrix;
        if m.is_ccwg() {
            assert!(is_ybo(&m.deglue()), "{name}");
        }
    }
    for name in family_names() {
        let f = family(name).unwrap();
        for seed in 0..3 {
            let m = f.evaluate(&f.sample(seed).unwrap(), Q).unwrap();
            if m.is_ccwg() && is_ybo(&m) {
                assert!(is_ybo(&m.deglue()), "{name} seed {seed}");
            }
        }
    }
}

#[test]
fn sign_flip_is_caught() {
    let f = family("R_ag_x_solved").unwrap();
    let flipped = f.with_entry(2, 3, Expr::parse("-p*(a*x-b)/(a*x+b)").unwrap());
    assert!(flipped.verify(20, 5).passed < 20);
}

#[test]
fn constraints_and_sampling() {
    let f = family("R_ag_x_solved").unwrap();
    let mut p = f.sample(42).unwrap();
    assert_eq!(p, f.sample(42).unwrap());
    for seed in 0..200 {
        assert_ne!(f.sample(seed).unwrap()["x"], BigRational::from_integer(1.into()));
    }
    p.insert("x".into(), BigRational::from_integer(1.into()));
    match f.evaluate(&p, Q) {
        Err(Error::ConstraintViolated(c)) => assert_eq!(c, "x-1"),
        other => panic!("{other:?}"),
    }
    p.remove("x");
    assert!(matches!(f.evaluate(&p, Q), Err(Error::MissingParameter(_))));
    let tight = ParametricFamily {
        constraints: vec![Constraint { poly: "0".into(), reason: String::new(), expr: Expr::parse("0").unwrap() }],
        ..f
    };
    assert!(matches!(tight.sample(0), Err(Error::RetryBudgetExhausted(_))));
}

#[test]
fn denominators_are_constrained() {
    for name in family_names() {
        assert!(family(name).unwrap().denominators_constrained().unwrap(), "{name}");
    }
}

#[test]
fn minimal_polynomials() {
    let show = |n: &str| get(n).unwrap().matrix.minimal_polynomial().unwrap().to_string();
    assert_eq!(show("R_fI"), "x^3 - x^2 - x + 1");
    assert_eq!(show("R_diamond"), "x^3 - x^2 - x + 1");
    assert_eq!(show("R_heart"), "x^4 - 2*x^3 + 2*x - 1");
    // The displayed spade point sits where (p + q)^2 != 0 on the f-glue-II line.
    assert_eq!(show("R_spade"), "x^4 - 2*x^3 + 2*x - 1");
    let quad = resolve("R_fII(k=1,q=1,p=-1,s=1)", Q).unwrap();
    assert_eq!(quad.minimal_polynomial().unwrap().to_string(), "x^3 - x^2 - x + 1");
}

#[test]
fn restricted_alphabets() {
    let a12 = resolve("aa0_restricted_12", Q).unwrap();
    let a13 = resolve("aa0_restricted_13", Q).unwrap();
    assert!(is_ybo(&a12));
    assert!(!crate::braid::anomaly(&a13).unwrap().is_zero());
}
