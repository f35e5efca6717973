//! Property tests for the lattice invariants: bilinearity of the pairing,
//! reflection isometry/involution, degree invariance, Weyl stability of the
//! catalogs, and bit-exact JSON round-trips.

use proptest::prelude::*;

use gosset::catalog::{enumerate_lines, enumerate_roots};
use gosset::picard::{DivisorClass, SurfaceModel};

fn arb_rank() -> impl Strategy<Value = usize> {
    3usize..=8
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_bilinear(
        rank in arb_rank(),
        (a, b) in (-5i64..=5, -5i64..=5),
        c1 in prop::collection::vec(-9i64..=9, 9),
        c2 in prop::collection::vec(-9i64..=9, 9),
        c3 in prop::collection::vec(-9i64..=9, 9),
    ) {
        let d1 = DivisorClass::new(rank, &c1[..=rank]).unwrap();
        let d2 = DivisorClass::new(rank, &c2[..=rank]).unwrap();
        let e = DivisorClass::new(rank, &c3[..=rank]).unwrap();
        let lhs = (d1.scaled(a) + d2.scaled(b)).pairing(&e).unwrap();
        let rhs = a * d1.pairing(&e).unwrap() + b * d2.pairing(&e).unwrap();
        prop_assert_eq!(lhs, rhs);
        // symmetry
        prop_assert_eq!(d1.pairing(&d2).unwrap(), d2.pairing(&d1).unwrap());
    }

    #[test]
    fn reflections_are_isometric_involutions(
        rank in arb_rank(),
        root_pick in any::<prop::sample::Index>(),
        d in prop::collection::vec(-9i64..=9, 9),
        e in prop::collection::vec(-9i64..=9, 9),
    ) {
        let roots = enumerate_roots(rank).unwrap();
        let root = *roots.get(root_pick.index(roots.len()));
        let d = DivisorClass::new(rank, &d[..=rank]).unwrap();
        let e = DivisorClass::new(rank, &e[..=rank]).unwrap();
        let sd = d.reflect(&root).unwrap();
        let se = e.reflect(&root).unwrap();
        // isometry
        prop_assert_eq!(sd.pairing(&se).unwrap(), d.pairing(&e).unwrap());
        // involution
        prop_assert_eq!(sd.reflect(&root).unwrap(), d);
        // degree invariance (roots are orthogonal to K)
        prop_assert_eq!(sd.anticanonical_degree(), d.anticanonical_degree());
    }

    #[test]
    fn simple_reflections_permute_the_lines(
        rank in arb_rank(),
        which in any::<prop::sample::Index>(),
        line_pick in any::<prop::sample::Index>(),
    ) {
        let surface = SurfaceModel::new(rank).unwrap();
        let lines = enumerate_lines(rank).unwrap();
        let s = surface.simple_roots()[which.index(rank)];
        let l = lines.get(line_pick.index(lines.len()));
        let img = l.reflect(&s).unwrap();
        prop_assert!(lines.contains(&img));
        prop_assert_eq!(img.reflect(&s).unwrap(), *l);
    }

    #[test]
    fn json_roundtrip_is_bit_exact(
        rank in arb_rank(),
        coeffs in prop::collection::vec(-40i64..=40, 9),
    ) {
        let d = DivisorClass::new(rank, &coeffs[..=rank]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: DivisorClass = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, d);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
