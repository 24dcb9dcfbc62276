use quiver_bn::dims::{dim_parabolic_full, fiber_dim_pminus, fiber_dim_pplus, ChainDims};
use quiver_bn::gallery::{hilb_corner_flag, hilb_fixed_point, Partition};
use quiver_bn::linalg::{span_eq, RMatrix};
use quiver_bn::rep::{
    block_form_check, fiber_dims_at, tangent_complex, FramedRep, ParabolicChainPoint, ParabolicPoint,
};
use quiver_bn::{DimVector, Quiver};

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn dv(x: &[i64]) -> DimVector {
    DimVector::new(x.to_vec()).unwrap()
}

fn corner_point(l: &str, corners: &[(usize, usize)]) -> ParabolicPoint {
    hilb_corner_flag(&part(l), corners).unwrap()
}

#[test]
fn tangent_ranks_at_two_one() {
    let pt = corner_point("2,1", &[(1, 0)]);
    let t = tangent_complex(&pt).unwrap();
    assert_eq!(t.rep_dim, 17);
    assert_eq!(t.lie_dim, 7);
    assert_eq!(t.rank_j, 7);
    assert_eq!(t.rank_dmu, 6);
    assert_eq!(t.h_dim, 4);
    assert_eq!(t.formula_dim, 4);
    assert!(t.ok());
}

#[test]
fn tangent_without_flag_is_hilbert_scheme() {
    let t = tangent_complex(&ParabolicPoint::unflagged(hilb_fixed_point(&part("3,1")))).unwrap();
    assert!(t.ok());
    assert_eq!(t.h_dim, 8);
}

#[test]
fn tangent_full_flags_small() {
    let lambda = part("3,1");
    let c = lambda.corners();
    for flag in [vec![c[0], c[1]], vec![c[1], c[0]]] {
        let pt = hilb_corner_flag(&lambda, &flag).unwrap();
        let t = tangent_complex(&pt).unwrap();
        let full = dim_parabolic_full(&Quiver::jordan(), &dv(&[4]), &dv(&[2]), &dv(&[1])).unwrap();
        assert!(t.ok(), "{t:?}");
        assert_eq!(t.h_dim, full);
    }
}

#[test]
fn valid_and_invalid_flags() {
    let pt = corner_point("2,1", &[(1, 0)]);
    assert!(pt.validate().unwrap().ok());

    // (0,0) is not killed by X
    let mut bad = pt.clone();
    bad.flags[0] = vec![RMatrix::unit_column(3, 0)];
    let val = bad.validate().unwrap();
    assert!(!val.ok());
    assert!(val.failures().iter().any(|c| c.name.contains("annihilated")));

    let mut repeated = corner_point("2,1", &[(1, 0), (0, 1)]);
    repeated.flags[0][1] = repeated.flags[0][0].clone();
    let val = repeated.validate().unwrap();
    assert!(val.failures().iter().any(|c| c.name.contains("nested")));
}

#[test]
fn quotient_by_corner() {
    let rep = hilb_fixed_point(&part("2,1"));
    for (corner, expect) in [((1, 0), "1,1"), ((0, 1), "2")] {
        let idx = part("2,1").cell_index(corner).unwrap();
        let q = rep.quotient_by_k(&[RMatrix::unit_column(3, idx)]).unwrap();
        assert!(q.flat && q.stable);
        assert_eq!(q.rep.d.dim(0), 2);
        let (r, _) = q.rep.bn_stratum_of().unwrap();
        let target = hilb_fixed_point(&part(expect));
        assert_eq!(r, target.bn_stratum_of().unwrap().0);
    }
    // (0,0) is not annihilated, so it cannot be divided out
    assert!(rep.quotient_by_k(&[RMatrix::unit_column(3, 0)]).is_err());
}

#[test]
fn projections_and_fibers() {
    let pt = corner_point("2,1", &[(1, 0)]);
    assert_eq!(pt.pminus().unwrap(), pt.rep);
    let plus = pt.pplus().unwrap();
    assert_eq!(plus.d.dim(0), 2);
    assert!(plus.is_stable().unwrap() && plus.is_flat().unwrap());

    let up = pt.flag_p_plus_v(0).unwrap();
    assert!(up.validate().unwrap().ok());
    assert_eq!(up.k().as_slice(), &[0]);
    let down = pt.flag_p_minus_v(0).unwrap();
    assert!(down.flags[0].is_empty());

    let fib = fiber_dims_at(&pt, 0).unwrap();
    assert_eq!(fib.pminus, 1);
    assert_eq!(fib.pminus_space, 2);
    assert_eq!(fib.pminus, fiber_dim_pminus(&dv(&[1]), &dv(&[2])).unwrap());
    let (r_hat, _) = plus.bn_stratum_of().unwrap();
    assert_eq!(r_hat.as_slice(), &[1]);
    let pplus = fiber_dim_pplus(&Quiver::jordan(), &dv(&[3]), &dv(&[1]), &dv(&[1]), &r_hat).unwrap();
    assert_eq!(fib.pplus, pplus);
    assert!(fiber_dims_at(&ParabolicPoint::unflagged(pt.rep.clone()), 0).is_err());
}

#[test]
fn chain_round_trip() {
    let pt = corner_point("2,1", &[(1, 0), (0, 1)]);
    let ch = ParabolicChainPoint::from_flag(&pt).unwrap();
    assert_eq!(ch.len(), 2);
    assert!(ch.validate().unwrap().ok());
    let dims: Vec<i64> = ch.levels.iter().map(|l| l.d.as_slice()[0]).collect();
    assert_eq!(dims, vec![3, 2, 1]);
    assert_eq!(
        ch.dims().unwrap(),
        ChainDims::new(vec![dv(&[3]), dv(&[2]), dv(&[1])], dv(&[1])).unwrap()
    );

    let back = ch.to_flag().unwrap();
    assert_eq!(back.steps(), pt.steps());
    for (a, b) in back.flags[0].iter().zip(&pt.flags[0]) {
        assert!(span_eq(a, b).unwrap());
    }

    let first = ch.forget_first().unwrap();
    let last = ch.forget_last().unwrap();
    assert_eq!(first.len(), 1);
    assert_eq!(last.len(), 1);
    assert!(first.validate().unwrap().ok());
    assert!(last.validate().unwrap().ok());
    assert!(first.forget_first().unwrap().forget_first().is_err());

    let back = ParabolicChainPoint::from_json(&ch.to_json()).unwrap();
    assert_eq!(back, ch);
    assert_eq!(ch.fiber_dims_at(0).unwrap(), fiber_dims_at(&pt, 0).unwrap());
}

#[test]
fn point_json_round_trip() {
    let pt = corner_point("3,1", &[(0, 1), (2, 0)]);
    let back = ParabolicPoint::from_json(&pt.to_json()).unwrap();
    assert_eq!(back, pt);
}

#[test]
fn block_form_holds_on_corner_chain() {
    let pt = corner_point("2,1", &[(0, 1), (1, 0)]);
    let ch = ParabolicChainPoint::from_flag(&pt).unwrap();
    let rep = block_form_check(&ch).unwrap();
    assert!(rep.passes(), "{:?}", rep.violations);
    assert!(block_form_check(&ch.forget_last().unwrap()).is_err());
}

#[test]
fn block_form_star_violation() {
    // Jordan (2) -> (1) -> 0: X sends the kernel complement into ker pi0
    let d0 = hilb_fixed_point(&part("2"));
    let d1 = hilb_fixed_point(&part("1"));
    let d2 = hilb_fixed_point(&part(""));
    let ch = ParabolicChainPoint::new(
        vec![d0, d1, d2],
        vec![vec![RMatrix::from_i64(&[&[1, 0]])], vec![RMatrix::zeros(0, 1)]],
    )
    .unwrap();
    let val = ch.validate().unwrap();
    assert!(val.failures().iter().all(|c| c.name == "composite kernel trivial"));
    let rep = block_form_check(&ch).unwrap();
    assert!(rep.zero_pattern_ok);
    assert!(!rep.star_zero);
    assert!(!rep.passes());
}

#[test]
fn chain_shape_errors() {
    let d0 = hilb_fixed_point(&part("1"));
    assert!(ParabolicChainPoint::new(vec![d0.clone()], vec![vec![RMatrix::zeros(1, 1)]]).is_err());
    let zero = FramedRep::zero(&Quiver::jordan(), &dv(&[0]), &dv(&[1])).unwrap();
    assert!(ParabolicChainPoint::new(vec![d0.clone(), zero.clone()], vec![vec![RMatrix::zeros(1, 1)]]).is_err());
    let ok = ParabolicChainPoint::new(vec![d0, zero], vec![vec![RMatrix::zeros(0, 1)]]).unwrap();
    assert_eq!(ok.len(), 1);
}
