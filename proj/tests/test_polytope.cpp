#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypercox/polytope.hpp"

#include <cmath>
#include <map>
#include <set>

using namespace hypercox;

namespace {

FieldElement fe(const std::string& s) { return *FieldElement::parse(s); }

LorentzVector vec(std::initializer_list<std::string> coords) {
    LorentzVector v;
    for (const auto& s : coords) v.x.push_back(fe(s));
    return v;
}

// Ideal hyperbolic triangle with three pairwise-tangent sides; unit normals.
Polytope ideal_triangle_2d() {
    return Polytope::from_normals({
        vec({"(1/3)*sqrt3", "(2/3)*sqrt3", "0"}),
        vec({"(1/3)*sqrt3", "-(1/3)*sqrt3", "1"}),
        vec({"(1/3)*sqrt3", "-(1/3)*sqrt3", "-1"}),
    });
}

} // namespace

TEST_CASE("kerckhoff_storm builtin matches the published wall list") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    CHECK(p.facet_count() == 24);
    CHECK(p.normal(0) == vec({"sqrt2", "1", "1", "1", "(1/3)*sqrt15"}));
    CHECK(minkowski_norm2(p.normal(0)) == fe("8/3"));
    CHECK_THROWS_AS(Polytope::builtin("no_such_polytope"), std::invalid_argument);
}

TEST_CASE("kerckhoff_storm vertex census and f-vector") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    const FaceLattice& lat = face_lattice(p);
    CHECK(lat.vertices.size() == 44);
    CHECK(lat.n_ideal == 20);
    CHECK(lat.f_vector() == std::vector<int>{44, 120, 100, 24});

    // vertex classes by the sign of the last coordinate
    int equatorial = 0, upper = 0, lower = 0, finite = 0;
    for (const auto& v : lat.vertices) {
        if (!v.ideal) { ++finite; continue; }
        Sign s = v.point.x[4].sign();
        if (s == Sign::zero) ++equatorial;
        else if (s == Sign::negative) ++upper;
        else ++lower;
    }
    CHECK(finite == 24);
    CHECK(equatorial == 12);
    CHECK(upper == 4);
    CHECK(lower == 4);

    // every finite vertex is normalized into the field
    for (const auto& v : lat.vertices)
        if (!v.ideal) CHECK(minkowski_norm2(v.point) == FieldElement(-1));
}

TEST_CASE("rectified 5-cell structure") {
    Polytope p = Polytope::builtin("rectified_5_cell");
    CHECK(p.facet_count() == 10);
    const FaceLattice& lat = face_lattice(p);
    CHECK(lat.vertices.size() == 10);
    CHECK(lat.n_ideal == 10);

    // the ideal vertex over simplex edge {1,2}, projectively
    LorentzVector expect = canonical_ideal(vec({"sqrt30", "0", "(5/3)*sqrt6", "(5/3)*sqrt3", "sqrt5"}));
    bool found = false;
    for (const auto& v : lat.vertices) found = found || v.point == expect;
    CHECK(found);

    // five tetrahedra (4 triangular 2-faces) and five octahedra (8)
    std::map<int, int> ridge_count;
    int k = p.dim();
    for (int rid : lat.by_dim[k - 2])
        for (int f : lat.faces[rid].facets) ++ridge_count[f];
    int tets = 0, octs = 0;
    for (int f = 0; f < 10; ++f) {
        if (ridge_count[f] == 4) ++tets;
        if (ridge_count[f] == 8) ++octs;
        bool is_tet = p.label(f).rfind("tet", 0) == 0;
        CHECK(ridge_count[f] == (is_tet ? 4 : 8));
    }
    CHECK(tets == 5);
    CHECK(octs == 5);

    // every vertex on 3 octahedra + 2 tetrahedra
    for (const auto& v : lat.vertices) {
        REQUIRE(v.facets.size() == 5);
        int t = 0, o = 0;
        for (int f : v.facets) (p.label(f).rfind("tet", 0) == 0 ? t : o)++;
        CHECK(t == 2);
        CHECK(o == 3);
    }

    // oct-oct ridges pi/3, tet-oct ridges pi/2
    for (int rid : lat.by_dim[k - 2]) {
        const auto& fs = lat.faces[rid].facets;
        bool tet_a = p.label(fs[0]).rfind("tet", 0) == 0;
        bool tet_b = p.label(fs[1]).rfind("tet", 0) == 0;
        AngleClass ac = dihedral_angle(p, fs[0], fs[1]);
        REQUIRE(ac.kind == AngleClass::submultiple);
        CHECK(ac.m == (tet_a || tet_b ? 2 : 3));
    }
}

TEST_CASE("ideal tetrahedron fixture") {
    Polytope p = Polytope::builtin("ideal_regular_tetrahedron_3d");
    const FaceLattice& lat = face_lattice(p);
    CHECK(lat.vertices.size() == 4);
    CHECK(lat.n_ideal == 4);
    CHECK(lat.f_vector() == std::vector<int>{4, 6, 4});
    for (int eid : lat.by_dim[1]) {
        const auto& fs = lat.faces[eid].facets;
        AngleClass ac = dihedral_angle(p, fs[0], fs[1]);
        REQUIRE(ac.kind == AngleClass::submultiple);
        CHECK(ac.m == 3);
    }
}

TEST_CASE("dihedral angle classification on wall pairs") {
    Polytope p = Polytope::builtin("kerckhoff_storm");

    // adjacent positive walls: cos = (4/3)/(8/3) = 1/2
    auto a = vec({"sqrt2", "1", "1", "1", "(1/3)*sqrt15"});
    auto b = vec({"sqrt2", "1", "-1", "-1", "(1/3)*sqrt15"});
    Polytope q = Polytope::from_normals({a, b});
    AngleClass ac = dihedral_angle(q, 0, 1);
    REQUIRE(ac.kind == AngleClass::submultiple);
    CHECK(ac.m == 3);

    auto n = vec({"sqrt2", "1", "1", "1", "-(1/5)*sqrt15"});
    AngleClass right = dihedral_angle(Polytope::from_normals({a, n}), 0, 1);
    REQUIRE(right.kind == AngleClass::submultiple);
    CHECK(right.m == 2);

    auto e1 = vec({"1", "sqrt2", "0", "0", "0"});
    auto e2 = vec({"1", "0", "sqrt2", "0", "0"});
    CHECK(dihedral_angle(Polytope::from_normals({e1, e2}), 0, 1).kind == AngleClass::tangent);

    // a cosine outside the recognition table reports as a general angle
    auto u = vec({"0", "1", "0", "0", "0"});
    auto w = vec({"0", "-1/4", "(1/4)*sqrt15", "0", "0"});
    AngleClass gen = dihedral_angle(Polytope::from_normals({u, w}), 0, 1);
    CHECK(gen.kind == AngleClass::general);
    CHECK(gen.cos2 == fe("1/16"));

    CHECK_THROWS_AS(dihedral_angle(p, 3, 3), std::invalid_argument);
}

TEST_CASE("facet classification of the Kerckhoff-Storm polytope") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    auto classes = classify_facets_P(p);
    int np = 0, nn = 0, ne = 0, nt = 0, up_p = 0, lo_p = 0, up_n = 0, lo_n = 0;
    for (const auto& c : classes) {
        switch (c.type) {
            case FacetType::positive: ++np; (c.position > 0 ? up_p : lo_p)++; break;
            case FacetType::negative: ++nn; (c.position > 0 ? up_n : lo_n)++; break;
            case FacetType::equatorial: ++ne; CHECK(c.position == 0); break;
            case FacetType::tetrahedral: ++nt; break;
        }
    }
    CHECK(np == 8);
    CHECK(nn == 8);
    CHECK(ne == 6);
    CHECK(nt == 2);
    CHECK(up_p == 4);
    CHECK(lo_p == 4);
    CHECK(up_n == 4);
    CHECK(lo_n == 4);

    CHECK(classes[0].type == FacetType::positive);
    CHECK(classes[2].type == FacetType::equatorial);
    // the wall sqrt5 e0 - sqrt6 e4 is the upper tetrahedral facet
    CHECK(p.normal(20) == vec({"sqrt5", "0", "0", "0", "-sqrt6"}));
    CHECK(classes[20].type == FacetType::tetrahedral);
    CHECK(classes[20].position == 1);
    CHECK(classes[23].position == -1);

    CHECK_THROWS_AS(classify_facets_P(Polytope::builtin("rectified_5_cell")), std::invalid_argument);
}

TEST_CASE("vertex links of the Kerckhoff-Storm polytope") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    auto classes = classify_facets_P(p);
    std::vector<std::string> labels;
    for (const auto& c : classes) labels.push_back(std::string(1, c.letter()));
    Polytope q = Polytope::from_normals(p.normals(), labels);

    const FaceLattice& lat = face_lattice(q);
    int cubes = 0, prisms = 0, sph = 0;
    for (size_t v = 0; v < lat.vertices.size(); ++v) {
        VertexLink link = vertex_link(q, int(v));
        std::string sig = link.label_signature();
        if (!lat.vertices[v].ideal) {
            CHECK_FALSE(link.euclidean);
            CHECK(sig == "ENPP");
            CHECK(link.faces.size() == 4);
            CHECK(link.edges.size() == 6);
            int m3 = 0, m2 = 0;
            std::set<char> pi3_pair;
            for (const auto& e : link.edges) {
                REQUIRE(e.angle.kind == AngleClass::submultiple);
                if (e.angle.m == 3) {
                    ++m3;
                    pi3_pair.insert(labels[e.facet_a][0]);
                    pi3_pair.insert(labels[e.facet_b][0]);
                } else {
                    CHECK(e.angle.m == 2);
                    ++m2;
                }
            }
            CHECK(m3 == 1);
            CHECK(m2 == 5);
            CHECK(pi3_pair == std::set<char>{'P'});
            ++sph;
            continue;
        }
        CHECK(link.euclidean);
        if (sig == "EENNPP") {
            // combinatorial cube, all right angles
            CHECK(link.faces.size() == 6);
            CHECK(link.edges.size() == 12);
            CHECK(link.vertices.size() == 8);
            for (const auto& f : link.faces) CHECK(f.polygon_size == 4);
            for (const auto& e : link.edges) CHECK(e.angle.m == 2);
            ++cubes;
        } else {
            CHECK(sig == "NPPPT");
            CHECK(link.faces.size() == 5);
            CHECK(link.edges.size() == 9);
            CHECK(link.vertices.size() == 6);
            int tri = 0, quad = 0;
            for (const auto& f : link.faces) {
                if (f.polygon_size == 3) ++tri;
                if (f.polygon_size == 4) ++quad;
                CHECK((f.label == "T" || f.label == "N") == (f.polygon_size == 3));
            }
            CHECK(tri == 2);
            CHECK(quad == 3);
            int m3 = 0;
            for (const auto& e : link.edges) m3 += e.angle.m == 3;
            CHECK(m3 == 3);  // the vertical prism edges (PP walls)
            // triangle cross sections are equilateral
            std::set<int> tri_faces;
            ++prisms;
        }
    }
    CHECK(cubes == 12);
    CHECK(prisms == 8);
    CHECK(sph == 24);
}

TEST_CASE("horospherical cross-sections of prism links are equilateral") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    auto classes = classify_facets_P(p);
    const FaceLattice& lat = face_lattice(p);
    for (size_t v = 0; v < lat.vertices.size(); ++v) {
        if (!lat.vertices[v].ideal) continue;
        if (lat.vertices[v].facets.size() != 5) continue;  // prism links only
        VertexLink link = vertex_link(p, int(v));
        // triangle face = the tetrahedral wall's section; its corners are the
        // sections of the polytope edges on that wall
        for (const auto& f : link.faces) {
            if (classes[f.facet].type != FacetType::tetrahedral &&
                classes[f.facet].type != FacetType::negative)
                continue;
            std::vector<LorentzVector> corners;
            for (const auto& lv : link.vertices) {
                const Face& edge = lat.faces[lv.edge_face];
                if (std::binary_search(edge.facets.begin(), edge.facets.end(), f.facet))
                    corners.push_back(*lv.section);
            }
            REQUIRE(corners.size() == 3);
            FieldElement d01 = horospherical_dist2(corners[0], corners[1]);
            CHECK(d01 == horospherical_dist2(corners[0], corners[2]));
            CHECK(d01 == horospherical_dist2(corners[1], corners[2]));
            CHECK(d01.sign() == Sign::positive);
        }
    }
}

TEST_CASE("coxeter check and angle multiset") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    auto cc = coxeter_check(p);
    CHECK(cc.is_coxeter);
    CHECK(cc.angle_multiset.size() == 2);
    CHECK(cc.angle_multiset.count(2) == 1);
    CHECK(cc.angle_multiset.count(3) == 1);
    CHECK(cc.angle_multiset[2] + cc.angle_multiset[3] == 100);

    auto ccr = coxeter_check(Polytope::builtin("rectified_5_cell"));
    CHECK(ccr.is_coxeter);
    CHECK(ccr.angle_multiset[3] == 10);
    CHECK(ccr.angle_multiset[2] == 20);

    // cosine 1/4 is not cos(pi/m): flagged, not an error
    auto u = vec({"0", "1", "0", "0"});
    auto w = vec({"0", "-1/4", "(1/4)*sqrt15", "0"});
    auto i1 = vec({"1", "sqrt2", "0", "0"});
    (void)i1;
    Polytope bad = Polytope::from_normals({u, w});
    AngleClass ac = bad.facet_relation(0, 1);
    CHECK(ac.kind == AngleClass::general);
}

TEST_CASE("PP ridges are exactly the pi/3 ridges") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    auto classes = classify_facets_P(p);
    const FaceLattice& lat = face_lattice(p);
    for (int rid : lat.by_dim[2]) {
        const auto& fs = lat.faces[rid].facets;
        AngleClass ac = p.facet_relation(fs[0], fs[1]);
        bool pp = classes[fs[0]].type == FacetType::positive && classes[fs[1]].type == FacetType::positive;
        REQUIRE(ac.kind == AngleClass::submultiple);
        CHECK(ac.m == (pp ? 3 : 2));
    }
}

TEST_CASE("wall-system invariants of the Kerckhoff-Storm polytope") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    auto classes = classify_facets_P(p);
    const FaceLattice& lat = face_lattice(p);

    // every ridge has at least one ideal vertex
    for (int rid : lat.by_dim[2]) {
        bool ideal = false;
        for (int v : lat.faces[rid].vertices) ideal = ideal || lat.vertices[v].ideal;
        CHECK(ideal);
    }

    // adjacency map on facets from ridges
    std::set<std::pair<int, int>> adjacent;
    for (int rid : lat.by_dim[2]) {
        const auto& fs = lat.faces[rid].facets;
        adjacent.insert({fs[0], fs[1]});
        adjacent.insert({fs[1], fs[0]});
    }

    // every upper positive facet is adjacent to exactly one lower negative facet
    for (int i = 0; i < 24; ++i) {
        if (classes[i].type != FacetType::positive) continue;
        int count = 0;
        for (int j = 0; j < 24; ++j)
            if (classes[j].type == FacetType::negative && classes[j].position == -classes[i].position &&
                adjacent.count({i, j}))
                ++count;
        CHECK(count == 1);
    }

    // tetrahedral and equatorial walls never meet: ultraparallel, no common ridge
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            if (classes[i].type != FacetType::tetrahedral || classes[j].type != FacetType::equatorial)
                continue;
            CHECK_FALSE(adjacent.count({i, j}));
            CHECK(p.facet_relation(i, j).kind == AngleClass::ultraparallel);
        }

    // every pair of positive facets on the same side shares exactly one
    // equatorial neighbor (6 pairs of upper facets <-> 6 equatorial walls)
    for (int i = 0; i < 24; ++i)
        for (int j = i + 1; j < 24; ++j) {
            if (classes[i].type != FacetType::positive || classes[j].type != FacetType::positive) continue;
            if (classes[i].position != classes[j].position) continue;
            int common_e = 0;
            for (int e = 0; e < 24; ++e)
                if (classes[e].type == FacetType::equatorial && adjacent.count({i, e}) && adjacent.count({j, e}))
                    ++common_e;
            CHECK(common_e == 1);
        }
}

TEST_CASE("orbifold Euler characteristics and Gauss-Bonnet volumes") {
    Polytope p = Polytope::builtin("kerckhoff_storm");
    CHECK(orbifold_euler_characteristic(p) == Rat(1));
    auto vol = gauss_bonnet_volume(p);
    CHECK(vol.coefficient == Rat(4, 3));
    CHECK(vol.pi_power == 2);

    Polytope r = Polytope::builtin("rectified_5_cell");
    CHECK(orbifold_euler_characteristic(r) == Rat(1, 6));
    CHECK(gauss_bonnet_volume(r).coefficient == Rat(2, 9));

    Polytope tri = ideal_triangle_2d();
    CHECK(orbifold_euler_characteristic(tri) == Rat(-1, 2));
    auto area = gauss_bonnet_volume(tri);
    CHECK(area.coefficient == Rat(1));  // area pi
    CHECK(area.pi_power == 1);

    // quadrature oracle for the ideal triangle area: integral of 1/sqrt(1-x^2)
    // over [-1,1] (hyperbolic area of the triangle with vertices -1, 1, infinity)
    double acc = 0;
    int steps = 4000000;
    for (int i = 0; i < steps; ++i) {
        double x = -1.0 + (2.0 * i + 1.0) / steps;
        acc += 2.0 / steps / std::sqrt(1.0 - x * x);
    }
    CHECK(std::abs(acc - M_PI) < 1e-3);
}

TEST_CASE("degenerate inputs are rejected") {
    auto a = vec({"1", "sqrt2", "0", "0", "0"});
    CHECK_THROWS_AS(Polytope::from_normals({a, a * fe("2")}), std::invalid_argument);
    CHECK_THROWS_AS(Polytope::from_normals({vec({"1", "0", "0", "0", "0"})}), std::invalid_argument);

    // nested half-spaces
    auto u = vec({"0", "1", "0", "0", "0"});
    auto nested = vec({"1", "sqrt2", "0", "0", "0"});
    Polytope p2 = Polytope::from_normals({u, nested});
    CHECK_THROWS_AS(p2.facet_relation(0, 1), std::domain_error);
}
