#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypercox/symmetry.hpp"

#include <random>

using namespace hypercox;

namespace {

FieldElement random_fe(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    FieldElement e;
    for (int i = 0; i < FieldElement::basis_size; ++i) e.coeff(i) = Rat(num(rng));
    return e;
}

} // namespace

TEST_CASE("automorphism group orders") {
    CHECK(automorphism_group(Polytope::builtin("kerckhoff_storm")).order() == 48);
    CHECK(automorphism_group(Polytope::builtin("rectified_5_cell")).order() == 120);

    // oracle for the tetrahedron: symmetric wall system realizes all 4! facet
    // permutations, and the search must find exactly those
    SymmetryGroup tet = automorphism_group(Polytope::builtin("ideal_regular_tetrahedron_3d"));
    CHECK(tet.order() == 24);
    std::set<std::vector<int>> perms;
    for (const auto& s : tet.elements) perms.insert(s.facet_perm);
    CHECK(perms.size() == 24);
}

TEST_CASE("named coordinate symmetries and their relations") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    SymmetryGroup g = automorphism_group(p);

    Symmetry a = named_symmetry(p, "a");
    Symmetry r = named_symmetry(p, "r");
    Symmetry l = named_symmetry(p, "l");
    Symmetry m = named_symmetry(p, "m");
    Symmetry n = named_symmetry(p, "n");

    for (const auto* s : {&a, &r, &l, &m, &n}) CHECK(g.find_by_map(s->map) != nullptr);

    CHECK(a.map.det_sign == 1);
    // a exchanges the two tetrahedral walls
    auto classes = classify_facets_P(p);
    for (int i = 0; i < 24; ++i)
        if (classes[i].type == FacetType::tetrahedral) CHECK(a.facet_perm[i] != i);

    // r = a o m o l o m o n o l o m, exactly
    Symmetry rhs = a.compose(m).compose(l).compose(m).compose(n).compose(l).compose(m);
    CHECK(rhs == r);

    // a is central
    for (const auto& s : g.elements) CHECK(s.compose(a) == a.compose(s));

    CHECK_THROWS_AS(named_symmetry(p, "z"), std::invalid_argument);
}

TEST_CASE("gram matrix preservation under every symmetry") {
    for (const char* name : {"kerckhoff_storm", "rectified_5_cell"}) {
        Polytope p = Polytope::builtin(name);
        SymmetryGroup g = automorphism_group(p);
        int checked = 0;
        for (const auto& s : g.elements) {
            for (int i = 0; i < p.facet_count(); ++i)
                for (int j = i + 1; j < p.facet_count(); ++j) {
                    int pi = s.facet_perm[i], pj = s.facet_perm[j];
                    FieldElement sij = minkowski_product(p.normal(i), p.normal(j));
                    FieldElement spij = minkowski_product(p.normal(pi), p.normal(pj));
                    // scale-free Gram comparison: sign and normalized square
                    CHECK(sij.sign() == spij.sign());
                    CHECK(sij * sij * minkowski_norm2(p.normal(pi)) * minkowski_norm2(p.normal(pj)) ==
                          spij * spij * minkowski_norm2(p.normal(i)) * minkowski_norm2(p.normal(j)));
                }
            if (++checked == 6) break;  // a sample of elements keeps the test quick
        }
    }
}

TEST_CASE("lorentz product preserved by all symmetries on random vectors") {
    std::mt19937 rng(31);
    for (const char* name : {"kerckhoff_storm", "rectified_5_cell"}) {
        Polytope p = Polytope::builtin(name);
        SymmetryGroup g = automorphism_group(p);
        LorentzVector u(p.ambient()), v(p.ambient());
        for (auto& c : u.x) c = random_fe(rng);
        for (auto& c : v.x) c = random_fe(rng);
        for (const auto& s : g.elements)
            CHECK(minkowski_product(s.map.apply(u), s.map.apply(v)) == minkowski_product(u, v));
    }
}

TEST_CASE("structure of the symmetry group of the Kerckhoff-Storm polytope") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    SymmetryGroup g = automorphism_group(p);
    StructureReportP rep = structure_check_P(p, g);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.passed());
    CHECK(rep.order == 48);
    CHECK(rep.order_orientation_preserving == 24);
    CHECK(rep.antipodal_central);
    CHECK(rep.equator_stabilizer_is_s4);
    CHECK(rep.plus_part_acts_even);
    CHECK(rep.facet_orbit_sizes == std::vector<int>{2, 6, 8, 8});
    CHECK(rep.vertex_orbit_sizes == std::vector<int>{8, 12, 24});
}

TEST_CASE("label permutations resolve to unique symmetries") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    SymmetryGroup g = automorphism_group(p);
    auto labeling = canonical_prfj_labeling(p);

    Symmetry phi_p = permutation_to_symmetry(g, p, labeling, true, parse_label_cycles("(JFR)"));
    Symmetry phi_r = permutation_to_symmetry(g, p, labeling, true, parse_label_cycles("(PFJ)"));
    Symmetry phi_f = permutation_to_symmetry(g, p, labeling, true, parse_label_cycles("(PRJ)"));
    Symmetry phi_j = permutation_to_symmetry(g, p, labeling, true, parse_label_cycles("(PFR)"));
    Symmetry gg = permutation_to_symmetry(g, p, labeling, true, parse_label_cycles("(PF)(JR)"));
    Symmetry ii = permutation_to_symmetry(g, p, labeling, false, parse_label_cycles("(PR)(FJ)"));

    // involutions with the expected orientation behavior
    CHECK(gg.compose(gg).is_identity());
    CHECK(ii.compose(ii).is_identity());
    CHECK(ii.map.det_sign == 1);

    // pairing-map relations
    CHECK(gg.compose(phi_p).compose(gg) == phi_f.inverse());
    CHECK(gg.compose(phi_r).compose(gg) == phi_j.inverse());
    CHECK(ii.compose(phi_p).compose(ii) == phi_r);
    CHECK(ii.compose(phi_f).compose(ii) == phi_j);

    // the edge-cycle identities behind the 4-step wall cycles
    CHECK(ii.compose(phi_p).compose(ii).compose(phi_r.inverse()).is_identity());
    CHECK(ii.compose(phi_f).compose(ii).compose(phi_j.inverse()).is_identity());

    // i preserves upper/lower but no positive facet
    auto classes = classify_facets_P(p);
    for (int f = 0; f < 24; ++f)
        if (classes[f].type == FacetType::positive) CHECK(ii.facet_perm[f] != f);

    // each phi maps the labeled upper facet to a lower positive facet
    for (auto [c, f] : labeling) {
        const Symmetry* phi = c == 'P' ? &phi_p : c == 'R' ? &phi_r : c == 'F' ? &phi_f : &phi_j;
        int image = phi->facet_perm[f];
        CHECK(classes[image].type == FacetType::positive);
        CHECK(classes[image].position == -1);
    }

    // a broken labeling (pointing at a non-positive wall) matches nothing
    auto broken = labeling;
    broken['P'] = 2;  // an equatorial wall
    CHECK_THROWS_AS(permutation_to_symmetry(g, p, broken, false, parse_label_cycles("(PR)(FJ)")),
                    std::domain_error);
}

TEST_CASE("label cycle parsing") {
    auto perm = parse_label_cycles("(PF)(JR)");
    CHECK(perm['P'] == 'F');
    CHECK(perm['F'] == 'P');
    CHECK(perm['J'] == 'R');
    CHECK(perm['R'] == 'J');
    CHECK(parse_label_cycles("id")['P'] == 'P');
    CHECK_THROWS_AS(parse_label_cycles("(PX)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_label_cycles("(PP)"), std::invalid_argument);
}
