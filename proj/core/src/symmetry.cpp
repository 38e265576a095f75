#include "hypercox/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypercox {

namespace {

// Normals rescaled so that a symmetry maps matching normals to matching
// normals with scalar exactly 1: unit normals when the norm has an in-field
// square root, primitive representatives otherwise.
std::vector<LorentzVector> matching_normals(const Polytope& p) {
    std::vector<LorentzVector> out;
    out.reserve(p.facet_count());
    for (int i = 0; i < p.facet_count(); ++i) {
        const LorentzVector& n = p.normal(i);
        if (auto root = minkowski_norm2(n).sqrt()) {
            FieldElement inv = FieldElement(1) / *root;
            out.push_back(n * inv);
        } else {
            out.push_back(primitive_scale(n, /*keep_sign=*/true));
        }
    }
    return out;
}

struct GramIds {
    std::vector<std::vector<int>> pair_id;   // interned <u_i, u_j> values
    std::vector<int> self_id;                // interned <u_i, u_i>
    std::vector<std::vector<int>> row_profile;  // sorted pair ids per row
};

GramIds gram_invariants(const std::vector<LorentzVector>& u) {
    int n = int(u.size());
    GramIds g;
    g.pair_id.assign(n, std::vector<int>(n, -1));
    g.self_id.assign(n, -1);
    g.row_profile.assign(n, {});
    std::map<FieldElement, int> intern;
    auto id_of = [&](const FieldElement& e) {
        auto [it, fresh] = intern.emplace(e, int(intern.size()));
        (void)fresh;
        return it->second;
    };
    for (int i = 0; i < n; ++i) {
        g.self_id[i] = id_of(minkowski_norm2(u[i]));
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            g.pair_id[i][j] = id_of(minkowski_product(u[i], u[j]));
        }
    }
    for (int i = 0; i < n; ++i) {
        g.row_profile[i].push_back(g.self_id[i]);
        std::vector<int> row;
        for (int j = 0; j < n; ++j)
            if (j != i) row.push_back(g.pair_id[i][j]);
        std::sort(row.begin(), row.end());
        g.row_profile[i].insert(g.row_profile[i].end(), row.begin(), row.end());
    }
    return g;
}

std::vector<int> spanning_subset(const std::vector<LorentzVector>& u, int ambient) {
    std::vector<int> basis;
    std::vector<LorentzVector> chosen;
    for (int i = 0; i < int(u.size()) && int(basis.size()) < ambient; ++i) {
        chosen.push_back(u[i]);
        if (lorentz_rank(chosen) == int(chosen.size())) basis.push_back(i);
        else chosen.pop_back();
    }
    if (int(basis.size()) != ambient)
        throw std::domain_error("automorphism_group: normals do not span the ambient space");
    return basis;
}

} // namespace

Symmetry Symmetry::compose(const Symmetry& o) const {
    Symmetry r;
    r.map = map.compose(o.map);
    r.facet_perm.resize(facet_perm.size());
    for (size_t i = 0; i < facet_perm.size(); ++i) r.facet_perm[i] = facet_perm[o.facet_perm[i]];
    return r;
}

Symmetry Symmetry::inverse() const {
    Symmetry r;
    r.map = map.inverse();
    r.facet_perm.resize(facet_perm.size());
    for (size_t i = 0; i < facet_perm.size(); ++i) r.facet_perm[facet_perm[i]] = int(i);
    return r;
}

const Symmetry* SymmetryGroup::find_by_perm(const std::vector<int>& perm) const {
    for (const auto& s : elements)
        if (s.facet_perm == perm) return &s;
    return nullptr;
}

const Symmetry* SymmetryGroup::find_by_map(const LorentzMap& m) const {
    for (const auto& s : elements)
        if (s.map == m) return &s;
    return nullptr;
}

SymmetryGroup automorphism_group(const Polytope& p) {
    const int n = p.facet_count();
    std::vector<LorentzVector> u = matching_normals(p);
    GramIds gram = gram_invariants(u);

    // assign rare rows first
    std::map<std::vector<int>, int> profile_count;
    for (int i = 0; i < n; ++i) ++profile_count[gram.row_profile[i]];
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int ca = profile_count[gram.row_profile[a]], cb = profile_count[gram.row_profile[b]];
        if (ca != cb) return ca < cb;
        return a < b;
    });

    std::vector<int> basis = spanning_subset(u, p.ambient());
    std::vector<LorentzVector> basis_vecs;
    for (int b : basis) basis_vecs.push_back(u[b]);

    std::vector<Symmetry> found;
    std::vector<int> perm(n, -1);
    std::vector<bool> used(n, false);

    std::function<void(int)> extend = [&](int depth) {
        if (depth == n) {
            std::vector<LorentzVector> image;
            for (int b : basis) image.push_back(u[perm[b]]);
            LorentzMap g = solve_map(basis_vecs, image);
            if (!is_isometry(g)) return;
            for (int i = 0; i < n; ++i)
                if (!(g.apply(u[i]) == u[perm[i]])) return;
            Symmetry s;
            s.map = checked_isometry(std::move(g));
            s.facet_perm = perm;
            found.push_back(std::move(s));
            return;
        }
        int i = order[depth];
        for (int j = 0; j < n; ++j) {
            if (used[j] || gram.row_profile[i] != gram.row_profile[j]) continue;
            bool ok = gram.self_id[i] == gram.self_id[j];
            for (int d = 0; ok && d < depth; ++d) {
                int i2 = order[d];
                ok = gram.pair_id[i][i2] == gram.pair_id[j][perm[i2]];
            }
            if (!ok) continue;
            perm[i] = j;
            used[j] = true;
            extend(depth + 1);
            used[j] = false;
            perm[i] = -1;
        }
    };
    extend(0);

    std::sort(found.begin(), found.end(),
              [](const Symmetry& a, const Symmetry& b) { return a.facet_perm < b.facet_perm; });
    SymmetryGroup g;
    g.elements = std::move(found);
    return g;
}

Symmetry named_symmetry(const Polytope& ks, const std::string& label) {
    if (ks.facet_count() != 24 || ks.ambient() != 5)
        throw std::invalid_argument("named_symmetry: not the Kerckhoff-Storm polytope");
    auto row = [](std::initializer_list<int> entries) {
        std::vector<FieldElement> r;
        for (int e : entries) r.push_back(FieldElement(e));
        return r;
    };
    LorentzMap m;
    if (label == "a")
        m = LorentzMap::from_rows({row({1, 0, 0, 0, 0}), row({0, -1, 0, 0, 0}), row({0, 0, -1, 0, 0}),
                                   row({0, 0, 0, -1, 0}), row({0, 0, 0, 0, -1})});
    else if (label == "r")
        m = LorentzMap::from_rows({row({1, 0, 0, 0, 0}), row({0, 1, 0, 0, 0}), row({0, 0, 1, 0, 0}),
                                   row({0, 0, 0, -1, 0}), row({0, 0, 0, 0, -1})});
    else if (label == "l")
        m = LorentzMap::from_rows({row({1, 0, 0, 0, 0}), row({0, 0, 1, 0, 0}), row({0, 1, 0, 0, 0}),
                                   row({0, 0, 0, 1, 0}), row({0, 0, 0, 0, 1})});
    else if (label == "m")
        m = LorentzMap::from_rows({row({1, 0, 0, 0, 0}), row({0, 1, 0, 0, 0}), row({0, 0, 0, 1, 0}),
                                   row({0, 0, 1, 0, 0}), row({0, 0, 0, 0, 1})});
    else if (label == "n")
        m = LorentzMap::from_rows({row({1, 0, 0, 0, 0}), row({0, 1, 0, 0, 0}), row({0, 0, 0, -1, 0}),
                                   row({0, 0, -1, 0, 0}), row({0, 0, 0, 0, 1})});
    else
        throw std::invalid_argument("named_symmetry: unknown label " + label);

    Symmetry s;
    s.map = checked_isometry(std::move(m));
    s.label = label;

    std::vector<LorentzVector> u = matching_normals(ks);
    s.facet_perm.assign(u.size(), -1);
    for (size_t i = 0; i < u.size(); ++i) {
        LorentzVector im = s.map.apply(u[i]);
        for (size_t j = 0; j < u.size(); ++j)
            if (im == u[j]) { s.facet_perm[i] = int(j); break; }
        if (s.facet_perm[i] < 0)
            throw std::logic_error("named_symmetry: map does not preserve the wall system");
    }
    return s;
}

std::vector<int> vertex_permutation(const Polytope& p, const Symmetry& s) {
    const FaceLattice& lat = p.lattice();
    std::map<LorentzVector, int> index;
    for (size_t v = 0; v < lat.vertices.size(); ++v) index.emplace(lat.vertices[v].point, int(v));
    std::vector<int> perm(lat.vertices.size(), -1);
    for (size_t v = 0; v < lat.vertices.size(); ++v) {
        LorentzVector im = s.map.apply(lat.vertices[v].point);
        im = lat.vertices[v].ideal ? canonical_ideal(im) : canonical_finite(im);
        auto it = index.find(im);
        if (it == index.end()) throw std::logic_error("vertex_permutation: image is not a vertex");
        perm[v] = it->second;
    }
    return perm;
}

namespace {

// embedding-order lexicographic comparison of normal coordinate tuples
bool normal_coord_less(const LorentzVector& a, const LorentzVector& b) {
    for (int i = 0; i < a.ambient(); ++i) {
        Sign s = (a.x[i] - b.x[i]).sign();
        if (s == Sign::negative) return true;
        if (s == Sign::positive) return false;
    }
    return false;
}

} // namespace

std::map<char, int> canonical_prfj_labeling(const Polytope& ks) {
    auto classes = classify_facets_P(ks);
    std::vector<int> upper;
    for (int i = 0; i < ks.facet_count(); ++i)
        if (classes[i].type == FacetType::positive && classes[i].position > 0) upper.push_back(i);
    if (upper.size() != 4) throw std::logic_error("canonical_prfj_labeling: expected 4 upper positive facets");
    std::sort(upper.begin(), upper.end(),
              [&](int a, int b) { return normal_coord_less(ks.normal(a), ks.normal(b)); });
    return {{'P', upper[0]}, {'R', upper[1]}, {'F', upper[2]}, {'J', upper[3]}};
}

std::map<char, char> parse_label_cycles(const std::string& text) {
    std::map<char, char> perm = {{'P', 'P'}, {'R', 'R'}, {'F', 'F'}, {'J', 'J'}};
    if (text == "id" || text.empty()) return perm;
    size_t i = 0;
    std::set<char> used;
    auto is_label = [](char c) { return c == 'P' || c == 'R' || c == 'F' || c == 'J'; };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        if (text[i] != '(') throw std::invalid_argument("parse_label_cycles: expected '('");
        ++i;
        std::string cycle;
        while (i < text.size() && text[i] != ')') {
            if (!is_label(text[i])) throw std::invalid_argument("parse_label_cycles: bad label");
            cycle += text[i++];
        }
        if (i == text.size()) throw std::invalid_argument("parse_label_cycles: unclosed cycle");
        ++i;
        if (cycle.size() < 2) throw std::invalid_argument("parse_label_cycles: trivial cycle");
        for (size_t k = 0; k < cycle.size(); ++k) {
            char from = cycle[k], to = cycle[(k + 1) % cycle.size()];
            if (!used.insert(from).second) throw std::invalid_argument("parse_label_cycles: repeated label");
            perm[from] = to;
        }
    }
    return perm;
}

Symmetry permutation_to_symmetry(const SymmetryGroup& g, const Polytope& ks,
                                 const std::map<char, int>& labeling, bool with_antipodal,
                                 const std::map<char, char>& perm) {
    // e4 detects the Z/2 factor: an element preserves the half-space {x4 <= 0}
    // iff it fixes e4
    LorentzVector e4(5);
    e4.x[4] = FieldElement(1);

    std::vector<int> upper;        // facet of label
    std::map<int, char> label_of;  // facet -> label
    for (auto [c, f] : labeling) {
        upper.push_back(f);
        label_of[f] = c;
    }

    const Symmetry* match = nullptr;
    int matches = 0;
    for (const auto& s : g.elements) {
        LorentzVector im = s.map.apply(e4);
        bool preserves;
        if (im == e4) preserves = true;
        else if (im == e4 * FieldElement(-1)) preserves = false;
        else continue;
        if (preserves == with_antipodal) continue;

        // action on labels: upper facet X maps to s(X) (upper) or to the
        // antipode of the upper facet carrying the image label
        bool ok = true;
        for (auto [c, f] : labeling) {
            int image = s.facet_perm[f];
            char image_label = 0;
            if (preserves) {
                auto it = label_of.find(image);
                if (it == label_of.end()) { ok = false; break; }
                image_label = it->second;
            } else {
                // image is a lower positive facet: find it as a(upper)
                bool found = false;
                for (auto [c2, f2] : labeling) {
                    // antipode of upper facet f2 is the facet with negated spatial normal
                    LorentzVector anti = ks.normal(f2);
                    for (int k = 1; k < 5; ++k) anti.x[k] = -anti.x[k];
                    if (primitive_scale(ks.normal(image), true) == primitive_scale(anti, true)) {
                        image_label = c2;
                        found = true;
                        break;
                    }
                }
                if (!found) { ok = false; break; }
            }
            if (image_label != perm.at(c)) { ok = false; break; }
        }
        if (!ok) continue;
        ++matches;
        match = &s;
    }
    if (matches != 1)
        throw std::domain_error("permutation_to_symmetry: expected a unique match, found " +
                                std::to_string(matches));
    return *match;
}

StructureReportP structure_check_P(const Polytope& ks, const SymmetryGroup& g) {
    StructureReportP rep;
    rep.order = g.order();
    auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };
    if (rep.order != 48) fail("group order " + std::to_string(rep.order) + ", expected 48");

    for (const auto& s : g.elements)
        if (s.map.det_sign == 1) ++rep.order_orientation_preserving;
    if (rep.order_orientation_preserving != 24)
        fail("orientation-preserving subgroup has order " +
             std::to_string(rep.order_orientation_preserving) + ", expected 24");

    Symmetry a = named_symmetry(ks, "a");
    rep.antipodal_central = true;
    for (const auto& s : g.elements)
        if (!(s.compose(a) == a.compose(s))) { rep.antipodal_central = false; break; }
    if (!rep.antipodal_central) fail("antipodal map is not central");

    // the stabilizer of the half-space {x4 <= 0} acts as S4 on the upper
    // positive facets, and its orientation-preserving half as A4
    auto labeling = canonical_prfj_labeling(ks);
    std::vector<int> upper;
    for (auto [c, f] : labeling) upper.push_back(f);
    std::sort(upper.begin(), upper.end());
    LorentzVector e4(5);
    e4.x[4] = FieldElement(1);

    std::set<std::vector<int>> induced, induced_plus;
    bool faithful = true;
    for (const auto& s : g.elements) {
        if (!(s.map.apply(e4) == e4)) continue;
        std::vector<int> act;
        for (int f : upper) {
            int im = s.facet_perm[f];
            auto it = std::find(upper.begin(), upper.end(), im);
            if (it == upper.end()) { act.clear(); break; }
            act.push_back(int(it - upper.begin()));
        }
        if (act.empty()) { faithful = false; continue; }
        if (!induced.insert(act).second) faithful = false;  // kernel element
        if (s.map.det_sign == 1) induced_plus.insert(act);
    }
    rep.equator_stabilizer_is_s4 = faithful && induced.size() == 24;
    if (!rep.equator_stabilizer_is_s4) fail("equator stabilizer does not act as S4 on upper positive facets");

    auto parity = [](const std::vector<int>& perm) {
        int inv = 0;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
        return inv % 2;
    };
    rep.plus_part_acts_even = induced_plus.size() == 12;
    for (const auto& perm : induced_plus)
        if (parity(perm) != 0) rep.plus_part_acts_even = false;
    if (!rep.plus_part_acts_even) fail("orientation-preserving equator stabilizer is not A4");

    // transitivity on facet classes
    auto classes = classify_facets_P(ks);
    {
        std::vector<int> comp(ks.facet_count());
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> root = [&](int x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
        for (const auto& s : g.elements)
            for (int i = 0; i < ks.facet_count(); ++i) {
                int ra = root(i), rb = root(s.facet_perm[i]);
                if (ra != rb) comp[ra] = rb;
            }
        std::map<int, int> sizes;
        for (int i = 0; i < ks.facet_count(); ++i) ++sizes[root(i)];
        for (auto [r, sz] : sizes) rep.facet_orbit_sizes.push_back(sz);
        std::sort(rep.facet_orbit_sizes.begin(), rep.facet_orbit_sizes.end());
        if (rep.facet_orbit_sizes != std::vector<int>{2, 6, 8, 8})
            fail("facet orbits are not the four wall classes");
        // orbits must match the classes exactly
        for (int i = 0; i < ks.facet_count(); ++i)
            for (int j = 0; j < ks.facet_count(); ++j)
                if (root(i) == root(j) && classes[i].type != classes[j].type)
                    fail("facet orbit mixes wall classes");
    }

    // transitivity on vertex classes
    {
        const FaceLattice& lat = ks.lattice();
        int nv = int(lat.vertices.size());
        std::vector<int> comp(nv);
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> root = [&](int x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
        for (const auto& s : g.elements) {
            auto vp = vertex_permutation(ks, s);
            for (int v = 0; v < nv; ++v) {
                int ra = root(v), rb = root(vp[v]);
                if (ra != rb) comp[ra] = rb;
            }
        }
        std::map<int, int> sizes;
        for (int v = 0; v < nv; ++v) ++sizes[root(v)];
        for (auto [r, sz] : sizes) rep.vertex_orbit_sizes.push_back(sz);
        std::sort(rep.vertex_orbit_sizes.begin(), rep.vertex_orbit_sizes.end());
        if (rep.vertex_orbit_sizes != std::vector<int>{8, 12, 24})
            fail("vertex orbits are not the three vertex classes");
    }
    return rep;
}

} // namespace hypercox
