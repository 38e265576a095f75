#include "hypercox/gluing.hpp"

#include "hypercox/parallel.hpp"
#include "hypercox/sphere_volume.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypercox {

namespace {

std::shared_ptr<const Polytope> shared_builtin(const std::string& name) {
    return std::make_shared<Polytope>(Polytope::builtin(name));
}

// vertex index by canonical point, one per polytope instance
std::map<LorentzVector, int> vertex_index(const Polytope& p) {
    std::map<LorentzVector, int> ix;
    const FaceLattice& lat = p.lattice();
    for (size_t v = 0; v < lat.vertices.size(); ++v) ix.emplace(lat.vertices[v].point, int(v));
    return ix;
}

LorentzVector canonical_vertex_point(const LorentzVector& raw, bool ideal) {
    return ideal ? canonical_ideal(raw) : canonical_finite(raw);
}

// Image of a lattice face under an exact map into the target polytope;
// nullopt when some vertex or the assembled face is missing there.
std::optional<int> map_face_geometric(const LorentzMap& map, const Polytope& src, const Polytope& tgt,
                                      const std::map<LorentzVector, int>& tgt_vertex_ix, int face_id) {
    const FaceLattice& slat = src.lattice();
    const FaceLattice& tlat = tgt.lattice();
    const Face& f = slat.faces[face_id];
    std::vector<int> image;
    image.reserve(f.vertices.size());
    for (int v : f.vertices) {
        const VertexInfo& vi = slat.vertices[v];
        LorentzVector p = canonical_vertex_point(map.apply(vi.point), vi.ideal);
        auto it = tgt_vertex_ix.find(p);
        if (it == tgt_vertex_ix.end()) return std::nullopt;
        if (tlat.vertices[it->second].ideal != vi.ideal) return std::nullopt;
        image.push_back(it->second);
    }
    std::sort(image.begin(), image.end());
    int tid = tlat.find_face(image);
    if (tid < 0 || tlat.faces[tid].dim != f.dim) return std::nullopt;
    return tid;
}

bool face_on_facet(const Face& f, int facet) {
    return std::binary_search(f.facets.begin(), f.facets.end(), facet);
}

} // namespace

int GluingSchema::pairing_at(int copy, int facet) const {
    for (size_t i = 0; i < pairings.size(); ++i) {
        const Pairing& p = pairings[i];
        if ((p.copy_a == copy && p.facet_a == facet) || (p.copy_b == copy && p.facet_b == facet))
            return int(i);
    }
    return -1;
}

std::vector<std::pair<int, int>> GluingSchema::boundary_facets() const {
    std::vector<std::pair<int, int>> out;
    for (size_t c = 0; c < copies.size(); ++c)
        for (int f = 0; f < copies[c].polytope->facet_count(); ++f)
            if (pairing_at(int(c), f) < 0) out.push_back({int(c), f});
    return out;
}

void GluingSchema::validate() const {
    if (copies.empty()) throw std::domain_error("schema: no polytope copies");
    for (const auto& c : copies)
        if (c.polytope->dim() != dim()) throw std::domain_error("schema: mixed dimensions");

    std::set<std::pair<int, int>> covered;
    for (const Pairing& p : pairings) {
        if (p.copy_a < 0 || p.copy_a >= int(copies.size()) || p.copy_b < 0 ||
            p.copy_b >= int(copies.size()))
            throw std::domain_error("schema: pairing references a missing copy");
        const Polytope& pa = *copies[p.copy_a].polytope;
        const Polytope& pb = *copies[p.copy_b].polytope;
        if (p.facet_a < 0 || p.facet_a >= pa.facet_count() || p.facet_b < 0 ||
            p.facet_b >= pb.facet_count())
            throw std::domain_error("schema: pairing references a missing facet");
        if (!covered.insert({p.copy_a, p.facet_a}).second ||
            !covered.insert({p.copy_b, p.facet_b}).second)
            throw std::domain_error("schema: facet appears in more than one pairing");
        if (!is_isometry(p.map)) throw std::domain_error("schema: pairing map is not an isometry");

        // the map must send the source wall onto the target wall, outward side
        // to outward side
        LorentzVector im = p.map.apply(pa.normal(p.facet_a));
        if (!(primitive_scale(im, true) == primitive_scale(pb.normal(p.facet_b), true)))
            throw std::domain_error("schema: pairing map does not carry the facet hyperplane over");

        if (p.copy_a == p.copy_b && p.facet_a == p.facet_b) {
            // self-pairing: the identity on the facet is an immediate fold
            const FaceLattice& lat = pa.lattice();
            bool fixes_all = true;
            for (const VertexInfo& vi : lat.vertices) {
                if (!std::binary_search(vi.facets.begin(), vi.facets.end(), p.facet_a)) continue;
                if (!(canonical_vertex_point(p.map.apply(vi.point), vi.ideal) == vi.point)) {
                    fixes_all = false;
                    break;
                }
            }
            if (fixes_all)
                throw std::domain_error("schema: facet self-paired by the identity");
        }
    }
}

namespace {

// --------------------------------------------------------------------------
// builtin schemas

GluingSchema build_manifold_M() {
    GluingSchema s;
    s.name = "manifold_M";
    auto ks = shared_builtin("kerckhoff_storm");
    s.copies.push_back({ks, false});

    SymmetryGroup grp = automorphism_group(*ks);
    auto labeling = canonical_prfj_labeling(*ks);
    auto classes = classify_facets_P(*ks);

    auto sym = [&](bool antipodal, const char* cycles) {
        return permutation_to_symmetry(grp, *ks, labeling, antipodal, parse_label_cycles(cycles));
    };
    Symmetry phi[4] = {sym(true, "(JFR)"), sym(true, "(PFJ)"), sym(true, "(PRJ)"), sym(true, "(PFR)")};
    const char* phi_name[4] = {"phi_P", "phi_R", "phi_F", "phi_J"};
    const char label_of[4] = {'P', 'R', 'F', 'J'};
    Symmetry g = sym(true, "(PF)(JR)");
    Symmetry i = sym(false, "(PR)(FJ)");

    // upper positive facet X glued to phi_X(X) by phi_X
    for (int k = 0; k < 4; ++k) {
        int f = labeling.at(label_of[k]);
        s.pairings.push_back({0, f, 0, phi[k].facet_perm[f], phi[k].map, phi_name[k]});
    }
    // the two tetrahedral facets glued by g
    for (int f = 0; f < 24; ++f)
        if (classes[f].type == FacetType::tetrahedral && classes[f].position == 1)
            s.pairings.push_back({0, f, 0, g.facet_perm[f], g.map, "g"});
    // negative facets glued in pairs by i
    std::set<int> used;
    for (int f = 0; f < 24; ++f) {
        if (classes[f].type != FacetType::negative || used.count(f)) continue;
        int im = i.facet_perm[f];
        used.insert(f);
        used.insert(im);
        s.pairings.push_back({0, f, 0, im, i.map, "i"});
    }
    return s;
}

GluingSchema build_figure_eight() {
    GluingSchema s;
    s.name = "figure_eight";
    auto tet = shared_builtin("ideal_regular_tetrahedron_3d");
    s.copies.push_back({tet, false});
    s.copies.push_back({tet, false});

    SymmetryGroup grp = automorphism_group(*tet);
    // label the four faces P,R,F,J in normal order; the four pairings act on
    // the labels as the classical face cycles
    const std::map<char, int> lab = {{'P', 0}, {'R', 1}, {'F', 2}, {'J', 3}};
    struct Spec {
        char face;
        const char* cycles;
        const char* name;
    };
    const Spec specs[4] = {
        {'P', "(JFR)", "phi_P"}, {'R', "(PFJ)", "phi_R"}, {'F', "(PRJ)", "phi_F"}, {'J', "(PFR)", "phi_J"}};
    for (const Spec& sp : specs) {
        auto cycles = parse_label_cycles(sp.cycles);
        // find the unique tetrahedron symmetry realizing the label permutation
        std::vector<int> want(4);
        for (auto [from, to] : cycles) want[lab.at(from)] = lab.at(to);
        const Symmetry* found = grp.find_by_perm(want);
        if (!found) throw std::logic_error("figure_eight: face permutation not realized");
        int f = lab.at(sp.face);
        if (found->facet_perm[f] != f)
            throw std::logic_error("figure_eight: pairing map must fix the glued face label");
        s.pairings.push_back({0, f, 1, f, found->map, sp.name});
    }
    return s;
}

GluingSchema build_gieseking() {
    GluingSchema s;
    s.name = "gieseking";
    auto tet = shared_builtin("ideal_regular_tetrahedron_3d");
    s.copies.push_back({tet, false});

    SymmetryGroup grp = automorphism_group(*tet);
    const std::map<char, int> lab = {{'P', 0}, {'R', 1}, {'F', 2}, {'J', 3}};
    // quotient of the two-tetrahedron complex by the swap g = (PF)(JR):
    // phi_P and phi_R descend to the self-gluings P->F and R->J
    struct Spec {
        char from, to;
        const char* cycles;  // g o phi_X as a face permutation
        const char* name;
    };
    const Spec specs[2] = {{'P', 'F', "(PFJ)", "g_phi_P"}, {'R', 'J', "(FRJ)", "g_phi_R"}};
    for (const Spec& sp : specs) {
        auto cycles = parse_label_cycles(sp.cycles);
        std::vector<int> want(4);
        for (auto [from, to] : cycles) want[lab.at(from)] = lab.at(to);
        const Symmetry* found = grp.find_by_perm(want);
        if (!found) throw std::logic_error("gieseking: face permutation not realized");
        if (found->facet_perm[lab.at(sp.from)] != lab.at(sp.to))
            throw std::logic_error("gieseking: pairing map face mismatch");
        s.pairings.push_back({0, lab.at(sp.from), 0, lab.at(sp.to), found->map, sp.name});
    }
    return s;
}

} // namespace

GluingSchema double_schema(const GluingSchema& s) {
    auto boundary = s.boundary_facets();
    if (boundary.empty()) throw std::domain_error("double_schema: schema has empty boundary");
    GluingSchema d;
    d.name = s.name.empty() ? "double" : "double_" + s.name;
    int n = int(s.copies.size());
    for (const auto& c : s.copies) d.copies.push_back(c);
    for (const auto& c : s.copies) d.copies.push_back({c.polytope, !c.mirror});
    for (const Pairing& p : s.pairings) {
        d.pairings.push_back(p);
        Pairing q = p;
        q.copy_a += n;
        q.copy_b += n;
        d.pairings.push_back(q);
    }
    for (auto [c, f] : boundary) {
        Pairing p;
        p.copy_a = c;
        p.facet_a = f;
        p.copy_b = c + n;
        p.facet_b = f;
        p.map = LorentzMap::identity(s.copies[c].polytope->ambient());
        p.map.det_sign = 1;
        p.via = "identity";
        d.pairings.push_back(p);
    }
    return d;
}

GluingSchema builtin_schema(const std::string& name) {
    if (name == "manifold_M") return build_manifold_M();
    if (name == "double_N") {
        GluingSchema d = double_schema(build_manifold_M());
        d.name = "double_N";
        return d;
    }
    if (name == "cut_N_split") {
        GluingSchema d = double_schema(build_manifold_M());
        d.name = "cut_N_split";
        // remove the tetrahedral gluing of the second copy
        std::vector<Pairing> keep;
        for (const Pairing& p : d.pairings)
            if (!(p.via == "g" && p.copy_a == 1)) keep.push_back(p);
        if (keep.size() + 1 != d.pairings.size())
            throw std::logic_error("cut_N_split: expected exactly one tetrahedral pairing to cut");
        d.pairings = std::move(keep);
        return d;
    }
    if (name == "figure_eight") return build_figure_eight();
    if (name == "gieseking") return build_gieseking();
    throw std::invalid_argument("unknown builtin schema: " + name);
}

std::vector<std::string> builtin_schema_names() {
    return {"manifold_M", "double_N", "cut_N_split", "figure_eight", "gieseking"};
}

// --------------------------------------------------------------------------
// quotient complex

std::pair<int, int> QuotientComplex::cross(int p, int copy, int face, LorentzMap* map) const {
    const Pairing& pr = schema.pairings[p];
    const FaceLattice& lat = polytope(copy).lattice();
    if (pr.copy_a == copy && face_on_facet(lat.faces[face], pr.facet_a)) {
        if (map) *map = pr.map;
        return {pr.copy_b, face_image_fwd[p].at(face)};
    }
    if (pr.copy_b == copy && face_on_facet(lat.faces[face], pr.facet_b)) {
        if (map) *map = pr.map.inverse();
        return {pr.copy_a, face_image_rev[p].at(face)};
    }
    throw std::logic_error("QuotientComplex::cross: pairing not applicable");
}

QuotientComplex quotient_complex(const GluingSchema& s) {
    s.validate();
    QuotientComplex q;
    q.schema = s;

    // vertex indices per distinct polytope instance
    std::map<const Polytope*, std::map<LorentzVector, int>> vindex;
    for (const auto& c : s.copies)
        if (!vindex.count(c.polytope.get())) vindex.emplace(c.polytope.get(), vertex_index(*c.polytope));

    // exact face transport per pairing
    q.face_image_fwd.resize(s.pairings.size());
    q.face_image_rev.resize(s.pairings.size());
    for (size_t pi = 0; pi < s.pairings.size(); ++pi) {
        const Pairing& p = s.pairings[pi];
        const Polytope& pa = *s.copies[p.copy_a].polytope;
        const Polytope& pb = *s.copies[p.copy_b].polytope;
        LorentzMap inv = p.map.inverse();
        const FaceLattice& alat = pa.lattice();
        const FaceLattice& blat = pb.lattice();
        for (size_t f = 0; f < alat.faces.size(); ++f) {
            if (!face_on_facet(alat.faces[f], p.facet_a)) continue;
            auto img = map_face_geometric(p.map, pa, pb, vindex.at(&pb), int(f));
            if (!img)
                throw std::domain_error("pairing '" + p.via + "' fails to carry faces to faces exactly");
            q.face_image_fwd[pi][int(f)] = *img;
        }
        for (size_t f = 0; f < blat.faces.size(); ++f) {
            if (!face_on_facet(blat.faces[f], p.facet_b)) continue;
            auto img = map_face_geometric(inv, pb, pa, vindex.at(&pa), int(f));
            if (!img)
                throw std::domain_error("pairing '" + p.via + "' fails to carry faces to faces exactly");
            q.face_image_rev[pi][int(f)] = *img;
        }
    }

    int dim = s.dim();
    q.orbits_by_dim.assign(dim + 1, {});

    std::set<std::pair<int, int>> seen;
    for (size_t c = 0; c < s.copies.size(); ++c) {
        const FaceLattice& lat = s.copies[c].polytope->lattice();
        for (size_t f = 0; f < lat.faces.size(); ++f) {
            if (seen.count({int(c), int(f)})) continue;
            // BFS over pairing crossings
            FaceOrbit orbit;
            orbit.dim = lat.faces[f].dim;
            std::map<std::pair<int, int>, LorentzMap> transport;
            std::deque<std::pair<int, int>> todo;
            auto push = [&](int cc, int ff, const LorentzMap& t) {
                if (transport.count({cc, ff})) return;
                transport.emplace(std::make_pair(cc, ff), t);
                todo.push_back({cc, ff});
            };
            push(int(c), int(f), LorentzMap::identity(s.copies[c].polytope->ambient()));
            while (!todo.empty()) {
                auto [cc, ff] = todo.front();
                todo.pop_front();
                const Face& face = s.copies[cc].polytope->lattice().faces[ff];
                for (size_t pi = 0; pi < s.pairings.size(); ++pi) {
                    const Pairing& pr = s.pairings[pi];
                    if (pr.copy_a == cc && face_on_facet(face, pr.facet_a)) {
                        auto [c2, f2] = std::make_pair(pr.copy_b, q.face_image_fwd[pi].at(ff));
                        push(c2, f2, pr.map.compose(transport.at({cc, ff})));
                    }
                    if (pr.copy_b == cc && face_on_facet(face, pr.facet_b)) {
                        auto [c2, f2] = std::make_pair(pr.copy_a, q.face_image_rev[pi].at(ff));
                        push(c2, f2, pr.map.inverse().compose(transport.at({cc, ff})));
                    }
                }
            }
            for (auto& [key, t] : transport) {
                orbit.members.push_back(key);
                seen.insert(key);
            }
            std::sort(orbit.members.begin(), orbit.members.end(), [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                const auto& fa = s.copies[a.first].polytope->lattice().faces[a.second];
                const auto& fb = s.copies[b.first].polytope->lattice().faces[b.second];
                if (fa.facets != fb.facets) return fa.facets < fb.facets;
                return a.second < b.second;
            });
            // re-root transports at the canonical representative
            LorentzMap to_rep = transport.at(orbit.members[0]);
            LorentzMap rep_inv = to_rep.inverse();
            for (const auto& m : orbit.members)
                orbit.transport.push_back(transport.at(m).compose(rep_inv));

            if (orbit.dim == 0) {
                auto [cc, ff] = orbit.members[0];
                const FaceLattice& l0 = s.copies[cc].polytope->lattice();
                orbit.ideal_vertex = l0.vertices[l0.faces[ff].vertices[0]].ideal;
            }
            for (const auto& [cc, ff] : orbit.members) {
                const Face& face = s.copies[cc].polytope->lattice().faces[ff];
                for (int fac : face.facets)
                    if (s.pairing_at(cc, fac) < 0) orbit.has_boundary_facet = true;
            }
            int oi = int(q.orbits.size());
            for (const auto& m : orbit.members) q.orbit_of.emplace(m, oi);
            q.orbits_by_dim[orbit.dim].push_back(oi);
            q.orbits.push_back(std::move(orbit));
        }
    }
    return q;
}

// --------------------------------------------------------------------------
// ridge walks

namespace {

struct WalkState {
    int copy, ridge, cross_facet;
    bool operator==(const WalkState& o) const {
        return copy == o.copy && ridge == o.ridge && cross_facet == o.cross_facet;
    }
};

} // namespace

static RidgeWalkReport walk_ridge_orbit(const QuotientComplex& q, int orbit_index) {
    const GluingSchema& s = q.schema;
    const FaceOrbit& orbit = q.orbits[orbit_index];
    RidgeWalkReport rep;
    rep.orbit = orbit_index;

    auto ridge_facets = [&](int copy, int ridge) -> const std::vector<int>& {
        return s.copies[copy].polytope->lattice().faces[ridge].facets;
    };
    auto angle_of = [&](int copy, int ridge) {
        const auto& fs = ridge_facets(copy, ridge);
        return s.copies[copy].polytope->facet_relation(fs[0], fs[1]);
    };

    // pick the start: boundary chains start at an unpaired wall
    WalkState start{orbit.members[0].first, orbit.members[0].second, -1};
    bool boundary_start = false;
    for (const auto& [c, r] : orbit.members) {
        for (int f : ridge_facets(c, r)) {
            if (s.pairing_at(c, f) < 0) {
                const auto& fs = ridge_facets(c, r);
                start = {c, r, fs[0] == f ? fs[1] : fs[0]};
                boundary_start = true;
                break;
            }
        }
        if (boundary_start) break;
    }
    if (!boundary_start) {
        const auto& fs = ridge_facets(start.copy, start.ridge);
        start.cross_facet = fs[0];
    }
    rep.interior = !boundary_start;

    LorentzMap composite = LorentzMap::identity(s.copies[start.copy].polytope->ambient());
    WalkState cur = start;
    Rat angle_sum = 0;
    int length = 0;
    auto add_angle = [&](int copy, int ridge) {
        ++length;
        AngleClass ac = angle_of(copy, ridge);
        if (ac.kind == AngleClass::submultiple) angle_sum += ac.pi_units();
        else rep.angles_submultiple = false;
    };
    add_angle(cur.copy, cur.ridge);

    long guard = 4 * long(orbit.members.size()) + 8;
    for (;;) {
        if (--guard < 0) throw std::logic_error("ridge walk did not close");
        int p = s.pairing_at(cur.copy, cur.cross_facet);
        if (p < 0) break;  // boundary chain terminates
        const Pairing& pr = s.pairings[p];
        bool fwd = pr.copy_a == cur.copy && pr.facet_a == cur.cross_facet;
        LorentzMap step = fwd ? pr.map : pr.map.inverse();
        int c2 = fwd ? pr.copy_b : pr.copy_a;
        int entered = fwd ? pr.facet_b : pr.facet_a;
        int r2 = (fwd ? q.face_image_fwd[p] : q.face_image_rev[p]).at(cur.ridge);
        const auto& fs = ridge_facets(c2, r2);
        int next = fs[0] == entered ? fs[1] : fs[0];
        composite = step.compose(composite);
        WalkState nxt{c2, r2, next};
        if (rep.interior && nxt == start) break;
        cur = nxt;
        add_angle(cur.copy, cur.ridge);
    }

    rep.length = length;
    rep.angle_sum_pi = angle_sum;
    if (rep.interior) {
        rep.angle_ok = rep.angles_submultiple && angle_sum == Rat(2);
        rep.return_trivial = composite.is_identity();
    } else {
        rep.angle_ok = rep.angles_submultiple && angle_sum == Rat(1);
        rep.return_trivial = true;  // no return constraint on chains
    }
    rep.composite = composite.is_identity() ? "identity" : composite.str();
    return rep;
}

RidgeCheck ridge_check(const QuotientComplex& q) {
    RidgeCheck out;
    int dim = q.schema.dim();
    const auto& ridge_orbits = q.orbits_by_dim[dim - 2];
    auto walks = parallel_map<RidgeWalkReport>(
        int(ridge_orbits.size()), [&](int i) { return walk_ridge_orbit(q, ridge_orbits[i]); });
    for (auto& w : walks) {
        if (!w.angle_ok || !w.return_trivial) out.all_ok = false;
        if (w.interior) ++out.interior_cycle_lengths[w.length];
        out.walks.push_back(std::move(w));
    }
    return out;
}

// --------------------------------------------------------------------------
// flag orbits and link combinatorics

namespace {

// Orbits of flags (orbit member, larger face G) under pairings applicable at
// facets containing G. `allowed` filters usable pairing indices.
struct FlagOrbits {
    // flag key: (member index in the base orbit, face id of G)
    std::map<std::pair<int, int>, int> orbit_of;
    std::vector<std::vector<std::pair<int, int>>> orbits;
    std::vector<int> dim_of_orbit;
};

FlagOrbits flag_orbits(const QuotientComplex& q, const FaceOrbit& base,
                       const std::function<bool(int)>& allowed,
                       const std::function<bool(int, int)>& keep_flag) {
    const GluingSchema& s = q.schema;
    std::map<std::pair<int, int>, int> member_index;
    for (size_t m = 0; m < base.members.size(); ++m) member_index.emplace(base.members[m], int(m));

    FlagOrbits out;
    for (size_t m = 0; m < base.members.size(); ++m) {
        auto [c, fbase] = base.members[m];
        const FaceLattice& lat = s.copies[c].polytope->lattice();
        const Face& F = lat.faces[fbase];
        for (size_t g = 0; g < lat.faces.size(); ++g) {
            const Face& G = lat.faces[g];
            if (G.dim <= F.dim) continue;
            if (!std::includes(G.vertices.begin(), G.vertices.end(), F.vertices.begin(),
                               F.vertices.end()))
                continue;
            // F must be a face of G: every facet of G contains F as well
            bool sub = std::includes(F.facets.begin(), F.facets.end(), G.facets.begin(), G.facets.end());
            if (!sub) continue;
            if (keep_flag && !keep_flag(int(m), int(g))) continue;
            std::pair<int, int> key{int(m), int(g)};
            if (out.orbit_of.count(key)) continue;

            std::vector<std::pair<int, int>> orbit;
            std::deque<std::pair<int, int>> todo{key};
            out.orbit_of[key] = int(out.orbits.size());
            while (!todo.empty()) {
                auto cur = todo.front();
                todo.pop_front();
                orbit.push_back(cur);
                auto [cc, gg] = std::make_pair(base.members[cur.first].first, cur.second);
                const Face& Gc = s.copies[cc].polytope->lattice().faces[gg];
                for (size_t pi = 0; pi < s.pairings.size(); ++pi) {
                    if (allowed && !allowed(int(pi))) continue;
                    const Pairing& pr = s.pairings[pi];
                    for (int dir = 0; dir < 2; ++dir) {
                        int pc = dir == 0 ? pr.copy_a : pr.copy_b;
                        int pf = dir == 0 ? pr.facet_a : pr.facet_b;
                        if (pc != cc || !face_on_facet(Gc, pf)) continue;
                        const auto& imgs = dir == 0 ? q.face_image_fwd[pi] : q.face_image_rev[pi];
                        int g2 = imgs.at(gg);
                        int fbase2 = imgs.at(base.members[cur.first].second);
                        auto mit = member_index.find({dir == 0 ? pr.copy_b : pr.copy_a, fbase2});
                        if (mit == member_index.end())
                            throw std::logic_error("flag_orbits: base face left its orbit");
                        std::pair<int, int> nxt{mit->second, g2};
                        if (out.orbit_of.emplace(nxt, out.orbit_of[key]).second) todo.push_back(nxt);
                    }
                }
            }
            out.dim_of_orbit.push_back(s.copies[base.members[orbit[0].first].first]
                                           .polytope->lattice()
                                           .faces[orbit[0].second]
                                           .dim);
            out.orbits.push_back(std::move(orbit));
        }
    }
    return out;
}

} // namespace

LinkStats link_stats(const QuotientComplex& q, int orbit_index) {
    const FaceOrbit& base = q.orbits[orbit_index];
    FlagOrbits fo = flag_orbits(q, base, nullptr, nullptr);
    LinkStats out;
    int dim = q.schema.dim();
    int base_dim = base.dim;
    out.flag_orbits_by_dim.assign(dim + 1, 0);
    for (size_t o = 0; o < fo.orbits.size(); ++o) ++out.flag_orbits_by_dim[fo.dim_of_orbit[o]];
    for (int d = base_dim + 1; d <= dim; ++d) {
        int link_dim = d - base_dim - 1;
        out.chi += (link_dim % 2 == 0 ? 1 : -1) * out.flag_orbits_by_dim[d];
    }
    out.cells = int(base.members.size());
    out.has_boundary = false;
    for (const auto& [c, f] : base.members) {
        const Face& face = q.polytope(c).lattice().faces[f];
        for (int fac : face.facets)
            if (q.schema.pairing_at(c, fac) < 0) out.has_boundary = true;
    }
    return out;
}

