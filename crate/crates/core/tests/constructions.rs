use rank3_etf_core::constructions::{build, fano_flags, golay_heptads, m22_blocks, Family, FamilySpec};
use rank3_etf_core::field::FieldSpec;
use rank3_etf_core::geometry::{enumerate, standard_space, FormKind, Selector, DEFAULT_MAX_AMBIENT};
use rank3_etf_core::graph::Graph;
use rank3_etf_core::iso::{is_isomorphism, isomorphic};
use rank3_etf_core::spectrum::{eigenmatrices, spectrum};
use rank3_etf_core::{ExactMatrix, SrgParams};

fn spec(family: Family, size: u32) -> FamilySpec {
    FamilySpec::new(family, size)
}

#[test]
fn every_default_instance_matches_its_closed_form() {
    // Sizes kept below a few hundred vertices; the 496-vertex instance is
    // covered by the acceptance suite.
    let cases = [
        (Family::NoPlus2n2, 4, (120, 63, 30, 36)),
        (Family::NoMinus2n2Comp, 3, (36, 20, 10, 12)),
        (Family::NoMinus2n2Comp, 4, (136, 72, 36, 40)),
        (Family::NoPlusOdd4, 2, (136, 75, 42, 40)),
        (Family::NoMinusOdd4Comp, 2, (120, 68, 40, 36)),
        (Family::VoPlus, 3, (64, 35, 18, 20)),
        (Family::VoMinusComp, 3, (64, 36, 20, 20)),
        (Family::M22Comp, 1, (176, 105, 68, 54)),
        (Family::Sp2n2, 3, (63, 30, 13, 15)),
        (Family::OPlus2n2, 3, (35, 18, 9, 9)),
        (Family::Triangular, 7, (21, 10, 5, 4)),
        (Family::Peisert, 49, (49, 24, 11, 12)),
    ];
    for (family, size, (v, k, l, m)) in cases {
        let g = build(spec(family, size)).unwrap();
        assert_eq!(g.srg_params().unwrap(), SrgParams::new(v, k, l, m), "{family} {size}");
    }
}

#[test]
fn complement_of_the_minus_type_orthogonality_graph() {
    let field = FieldSpec::new(2, 1).unwrap();
    let space = standard_space(&field, 6, FormKind::Minus).unwrap();
    let points = enumerate(&space, Selector::NonsingularPoints, DEFAULT_MAX_AMBIENT).unwrap();
    let orth = Graph::from_fn(points.len(), |i, j| space.polar(&points[i], &points[j]) == 0);
    assert_eq!(build(spec(Family::NoMinus2n2Comp, 3)).unwrap(), orth.complement());
}

#[test]
fn paley_and_peisert_share_parameters() {
    for q in [9, 49, 81] {
        let p = build(spec(Family::Paley, q)).unwrap().srg_params().unwrap();
        let s = build(spec(Family::Peisert, q)).unwrap().srg_params().unwrap();
        assert_eq!(p, s);
    }
}

#[test]
fn paley_graphs_are_self_complementary() {
    let g = build(spec(Family::Paley, 13)).unwrap();
    let map = isomorphic(&g, &g.complement()).unwrap();
    assert!(is_isomorphism(&g, &g.complement(), &map));
}

#[test]
fn out_of_range_sizes_are_rejected() {
    assert!(build(spec(Family::NoPlus2n2, 2)).is_err());
    assert!(build(spec(Family::NoMinusOdd4Comp, 1)).is_err());
    assert!(build(spec(Family::Paley, 11)).is_err());
    assert!(build(spec(Family::Peisert, 13)).is_err());
    assert!(build(spec(Family::OMinus2n2, 2)).is_err());
}

#[test]
fn sporadic_ingredients() {
    assert_eq!(fano_flags().flags.len(), 21);
    assert_eq!(golay_heptads().unwrap().len(), 253);
    let blocks = m22_blocks().unwrap();
    assert_eq!(blocks.len(), 176);
    assert!(blocks.iter().all(|b| b.count_ones() == 7 && b >> 22 == 0));
}

#[test]
fn spectral_identities_hold_for_built_graphs() {
    for (family, size) in [
        (Family::NoPlus2n2, 3),
        (Family::VoMinusComp, 2),
        (Family::G22Comp, 1),
        (Family::Paley, 13),
        (Family::Sp2n2, 3),
        (Family::OMinus2n2, 3),
    ] {
        let p = build(spec(family, size)).unwrap().srg_params().unwrap();
        let sp = spectrum(&p).unwrap();
        assert_eq!(sp.f + sp.g, p.v - 1);
        let e = eigenmatrices(&p).unwrap();
        let v_times_i = ExactMatrix::identity(3).scale(&(p.v as i64).into()).unwrap();
        assert_eq!(e.p.mat_mul(&e.q).unwrap(), v_times_i, "{family}");
    }
}

#[test]
fn g2_complement_eigenmatrices() {
    let p = build(FamilySpec::sporadic(Family::G22Comp)).unwrap().srg_params().unwrap();
    let e = eigenmatrices(&p).unwrap();
    assert_eq!(e.p, ExactMatrix::from_ints(3, 3, &[1, 21, 14, 1, 3, -4, 1, -3, 2]).unwrap());
    assert_eq!(e.q, ExactMatrix::from_ints(3, 3, &[1, 14, 21, 1, 2, -3, 1, -4, 3]).unwrap());
}

#[test]
fn graphs_carry_labels() {
    let g = build(spec(Family::NoPlus2n2, 3)).unwrap();
    assert_eq!(g.label(), Some("NOplus2n_2(n=3)"));
    assert_eq!(build(FamilySpec::sporadic(Family::M22Comp)).unwrap().label(), Some("M22_comp"));
}
