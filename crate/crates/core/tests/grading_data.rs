use gorlab_core::data;
use gorlab_core::field::{Field, Rational};
use gorlab_core::grading::*;
use gorlab_core::presentation::{letters, parse_relations};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

#[test]
fn j197_and_j199_rays() {
    for (text, expect, c1) in [(data::J197, data::S197, 67), (data::J199, data::S199, 69)] {
        let rels = parse_relations(text).unwrap();
        let sys = homogeneity_system(&rels, &letters(12)).unwrap();
        assert_eq!(sys.rows.len(), 54);
        let sol = solve_gradings(&sys, Some(&['h'])).unwrap();
        assert_eq!(sol.nullity(), 1);
        let m = minimal_integral(&sol).unwrap();
        assert_eq!(m.weights, expect.to_vec());
        assert_eq!(m.constant, c1);
        // a = 36 c1 / c1_min
        assert_eq!(sol.coefficients[0][0], q(36, c1 as i64));
        // the default choice reaches the same point
        assert_eq!(minimal_integral(&solve_gradings(&sys, None).unwrap()).unwrap().weights, expect.to_vec());
    }
}

#[test]
fn ideal_family() {
    let rels = parse_relations(data::I).unwrap();
    let sys = homogeneity_system(&rels, &data::I_VARIABLES).unwrap();
    assert_eq!(sys.rows.len(), 14);
    let sol = solve_gradings(&sys, Some(&['b', 'd', 'h'])).unwrap();
    // (c1, c2, c3) coefficients of b..l
    let expect = [
        [q(1, 1), q(0, 1), q(0, 1)],
        [q(1, 2), q(1, 2), q(0, 1)],
        [q(0, 1), q(1, 1), q(0, 1)],
        [q(-1, 1), q(2, 1), q(0, 1)],
        [q(-2, 1), q(3, 1), q(0, 1)],
        [q(-7, 2), q(9, 2), q(0, 1)],
        [q(0, 1), q(0, 1), q(1, 1)],
        [q(3, 1), q(-2, 1), q(1, 1)],
        [q(-1, 2), q(3, 2), q(1, 1)],
        [q(-5, 2), q(7, 2), q(1, 1)],
        [q(-4, 1), q(5, 1), q(1, 1)],
    ];
    for (row, e) in sol.coefficients.iter().zip(expect.iter()) {
        assert_eq!(row.as_slice(), e.as_slice());
    }
    assert_eq!(sol.specialize(&sys, &[1, 1, 1]).unwrap(), data::I_WEIGHTS.to_vec());
    assert_eq!(sol.specialize(&sys, &[48, 52, 67]).unwrap(), data::S197[1..].to_vec());
    assert_eq!(sol.specialize(&sys, &[48, 52, 69]).unwrap(), data::S199[1..].to_vec());

    // any other parametrization spans the same space
    let default = solve_gradings(&sys, None).unwrap();
    assert_eq!(default.nullity(), 3);
    for v in sol.basis() {
        let w: Vec<Rational> =
            default.free.iter().map(|f| v[data::I_VARIABLES.iter().position(|x| x == f).unwrap()].clone()).collect();
        assert_eq!(default.evaluate(&w).unwrap(), v);
    }
}

#[test]
fn ray_invariant_under_row_shuffles() {
    let rels = parse_relations(data::J197).unwrap();
    let mut sys = homogeneity_system(&rels, &letters(12)).unwrap();
    let base = minimal_integral(&solve_gradings(&sys, None).unwrap()).unwrap();
    sys.rows.reverse();
    let dup = sys.rows[3].clone();
    sys.rows.push(dup);
    assert_eq!(minimal_integral(&solve_gradings(&sys, None).unwrap()).unwrap(), base);
}
