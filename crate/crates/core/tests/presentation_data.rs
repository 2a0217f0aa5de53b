use gorlab_core::data;
use gorlab_core::presentation::*;
use gorlab_core::semigroup::NumericalSemigroup;

const CAP: usize = DEFAULT_MONOMIAL_CAP;

fn setup(gens: &[u64], text: &str) -> (NumericalSemigroup, WeightedRing, Vec<Binomial>) {
    let s = NumericalSemigroup::new(gens).unwrap();
    let ring = WeightedRing::for_semigroup(&s);
    (s, ring, parse_relations(text).unwrap())
}

#[test]
fn shipped_lists_lie_in_the_kernel() {
    for (gens, text) in [(&data::S197, data::J197), (&data::S199, data::J199)] {
        let (_, ring, rels) = setup(gens, text);
        assert_eq!(rels.len(), 54);
        verify_kernel(&rels, &ring).unwrap();
    }
}

#[test]
fn j197_presents_the_semigroup_ring() {
    let (s, ring, rels) = setup(&data::S197, data::J197);
    let dims = quotient_dims(&rels, &ring, 300, CAP).unwrap();
    assert!(dims[1..36].iter().all(|&d| d == 0));
    assert_eq!(dims[36], 1);
    assert_eq!(dims[96], 1);
    for (d, &v) in dims.iter().enumerate() {
        assert_eq!(v, usize::from(s.contains(d as i64)), "degree {d}");
    }
}

#[test]
fn j199_presents_the_semigroup_ring() {
    let (s, ring, rels) = setup(&data::S199, data::J199);
    assert_eq!(verify_presentation(&rels, &ring, &s, 300, CAP).unwrap(), Ok(()));
}

#[test]
fn dropping_a_relation_breaks_the_presentation() {
    let (s, ring, rels) = setup(&data::S197, data::J197);
    for skip in [0, 10, 53] {
        let fewer: Vec<_> = rels.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r.clone()).collect();
        let res = verify_presentation(&fewer, &ring, &s, 300, CAP).unwrap();
        let bad = res.expect_err("a minimal generator was removed");
        assert!(bad.found > bad.expected);
    }
}

#[test]
fn j197_is_minimal_up_to_its_top_degree() {
    let (_, ring, rels) = setup(&data::S197, data::J197);
    let top = rels.iter().map(|r| relation_degree(r, &ring).unwrap()).max().unwrap();
    assert_eq!(minimal_generator_count(&rels, &ring, top, CAP).unwrap(), 54);
}

#[test]
fn regraded_quotient_by_a() {
    let ring = WeightedRing::new(&data::I_VARIABLES, &data::I_WEIGHTS).unwrap();
    let ideal = parse_relations(data::I).unwrap();
    assert_eq!(ideal.len(), 54);
    let dims = quotient_dims(&ideal, &ring, 6, CAP).unwrap();
    assert_eq!(dims, vec![1, 7, 20, 7, 1, 0, 0]);
    assert_eq!(dims.iter().sum::<usize>(), 36);
    assert_eq!(minimal_generator_count(&ideal, &ring, 6, CAP).unwrap(), 54);

    // bcl spans the top degree
    let with_bcl = [ideal.clone(), parse_relations("bcl").unwrap()].concat();
    assert_eq!(quotient_dims(&with_bcl, &ring, 4, CAP).unwrap()[4], 0);

    // Setting a = 0 in J197 gives the same ideal, compared in the original
    // weights where both lists are homogeneous.
    let (_, _, j) = setup(&data::S197, data::J197);
    let sub = substitute_zero(&j, 'a');
    assert!(sub.iter().any(Binomial::is_monomial));
    let orig = WeightedRing::new(&data::I_VARIABLES, &data::S197[1..]).unwrap();
    let a = quotient_dims(&sub, &orig, 300, CAP).unwrap();
    assert_eq!(a, quotient_dims(&ideal, &orig, 300, CAP).unwrap());
    assert_eq!(a.iter().sum::<usize>(), 36);
}
