#include "hypercox/polytope.hpp"

#include "hypercox/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypercox {

namespace {

FieldElement fe(const std::string& s) {
    auto e = FieldElement::parse(s);
    if (!e) throw std::logic_error("bad builtin element literal: " + s);
    return *e;
}

LorentzVector vec(std::initializer_list<const char*> coords) {
    LorentzVector v;
    for (const char* s : coords) v.x.push_back(fe(s));
    return v;
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// cos^2(pi/m) for the recognized submultiples.
const std::vector<std::pair<int, FieldElement>>& cos2_table() {
    static const std::vector<std::pair<int, FieldElement>> t = {
        {2, FieldElement(0)},
        {3, FieldElement(Rat(1, 4))},
        {4, FieldElement(Rat(1, 2))},
        {5, fe("3/8 + (1/8)*sqrt5")},
        {6, FieldElement(Rat(3, 4))},
    };
    return t;
}

} // namespace

std::string AngleClass::str() const {
    switch (kind) {
        case submultiple: return "pi/" + std::to_string(m);
        case tangent: return "tangent";
        case ultraparallel: {
            std::string s = "ultraparallel";
            if (exact) s += "(cosh=" + exact->str() + ")";
            else s += "(cosh2=" + cos2.str() + ")";
            return s;
        }
        default: {
            std::string s = "angle(cos2=" + cos2.str();
            if (cos_sign < 0) s += ", cos<0";
            s += ")";
            return s;
        }
    }
}

char FacetClass::letter() const {
    switch (type) {
        case FacetType::positive: return 'P';
        case FacetType::negative: return 'N';
        case FacetType::equatorial: return 'E';
        default: return 'T';
    }
}

Polytope Polytope::from_normals(std::vector<LorentzVector> normals, std::vector<std::string> labels) {
    if (normals.empty()) throw std::invalid_argument("Polytope: no normals");
    Polytope p;
    p.ambient_ = normals[0].ambient();
    for (const auto& n : normals) {
        if (n.ambient() != p.ambient_) throw std::invalid_argument("Polytope: mixed ambient dimensions");
        if (classify_vector(n) != VectorKind::space_like)
            throw std::invalid_argument("Polytope: every normal must be space-like");
    }
    std::set<LorentzVector> seen;
    for (const auto& n : normals) {
        LorentzVector prim = primitive_scale(n);
        // positive multiples collide after orient-free primitive scaling; negative
        // multiples are distinct half-spaces and stay legal
        LorentzVector oriented = primitive_scale(n, /*keep_sign=*/true);
        if (!seen.insert(oriented).second)
            throw std::invalid_argument("Polytope: repeated facet normal (positive multiple)");
        (void)prim;
    }
    p.normals_ = std::move(normals);
    if (labels.empty()) labels.resize(p.normals_.size());
    if (labels.size() != p.normals_.size())
        throw std::invalid_argument("Polytope: label count mismatch");
    p.labels_ = std::move(labels);
    return p;
}

namespace {

Polytope build_kerckhoff_storm() {
    // Row-major transcription of the 24 defining space-like vectors;
    // sqrt(5/3) = (1/3) sqrt15 and sqrt(3/5) = (1/5) sqrt15.
    std::vector<LorentzVector> n = {
        vec({"sqrt2", "1", "1", "1", "(1/3)*sqrt15"}),
        vec({"sqrt2", "1", "1", "1", "-(1/5)*sqrt15"}),
        vec({"1", "sqrt2", "0", "0", "0"}),
        vec({"sqrt2", "1", "-1", "1", "-(1/3)*sqrt15"}),
        vec({"sqrt2", "1", "-1", "1", "(1/5)*sqrt15"}),
        vec({"1", "0", "sqrt2", "0", "0"}),
        vec({"sqrt2", "1", "-1", "-1", "(1/3)*sqrt15"}),
        vec({"sqrt2", "1", "-1", "-1", "-(1/5)*sqrt15"}),
        vec({"1", "0", "0", "sqrt2", "0"}),
        vec({"sqrt2", "1", "1", "-1", "-(1/3)*sqrt15"}),
        vec({"sqrt2", "1", "1", "-1", "(1/5)*sqrt15"}),
        vec({"1", "0", "0", "-sqrt2", "0"}),
        vec({"sqrt2", "-1", "1", "-1", "(1/3)*sqrt15"}),
        vec({"sqrt2", "-1", "1", "-1", "-(1/5)*sqrt15"}),
        vec({"1", "0", "-sqrt2", "0", "0"}),
        vec({"sqrt2", "-1", "1", "1", "-(1/3)*sqrt15"}),
        vec({"sqrt2", "-1", "1", "1", "(1/5)*sqrt15"}),
        vec({"1", "-sqrt2", "0", "0", "0"}),
        vec({"sqrt2", "-1", "-1", "1", "(1/3)*sqrt15"}),
        vec({"sqrt2", "-1", "-1", "1", "-(1/5)*sqrt15"}),
        vec({"sqrt5", "0", "0", "0", "-sqrt6"}),
        vec({"sqrt2", "-1", "-1", "-1", "-(1/3)*sqrt15"}),
        vec({"sqrt2", "-1", "-1", "-1", "(1/5)*sqrt15"}),
        vec({"sqrt5", "0", "0", "0", "sqrt6"}),
    };
    return Polytope::from_normals(std::move(n));
}

// Solves the facet normal containing the given ideal points, inside the
// sum-zero spatial subspace, oriented away from the rest of the polytope.
LorentzVector solve_incident_normal(const std::vector<LorentzVector>& incident,
                                    const std::vector<LorentzVector>& others, int ambient,
                                    bool sum_zero_constraint) {
    std::vector<LorentzVector> rows = incident;
    if (sum_zero_constraint) {
        LorentzVector c(ambient);
        for (int i = 1; i < ambient; ++i) c.x[i] = FieldElement(1);
        rows.push_back(c);
    }
    auto kernel = lorentz_kernel(rows, ambient);
    if (kernel.size() != 1)
        throw std::logic_error("facet normal solve: expected a 1-dimensional kernel");
    LorentzVector n = kernel[0];
    Sign s = minkowski_product(others.at(0), n).sign();
    if (s == Sign::zero) throw std::logic_error("facet normal solve: non-incident point on hyperplane");
    if (s == Sign::positive) n = n * FieldElement(-1);
    for (const auto& q : others)
        if (minkowski_product(q, n).sign() != Sign::negative)
            throw std::logic_error("facet normal solve: inconsistent orientation");
    return primitive_scale(n, /*keep_sign=*/true);
}

Polytope build_rectified_5_cell() {
    // Ideal points: (sqrt30, q) with q the coordinate permutations of
    // (3,3,-2,-2,-2), one per edge {i,j} of the 4-simplex.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) edges.push_back({i, j});
    std::vector<LorentzVector> pts;
    for (auto [i, j] : edges) {
        LorentzVector p(6);
        p.x[0] = FieldElement::sqrt30();
        for (int k = 0; k < 5; ++k) p.x[k + 1] = FieldElement(k == i || k == j ? 3 : -2);
        pts.push_back(std::move(p));
    }

    std::vector<LorentzVector> normals;
    std::vector<std::string> labels;
    for (int v = 0; v < 5; ++v) {  // tetrahedral facet per simplex vertex
        std::vector<LorentzVector> inc, rest;
        for (size_t e = 0; e < edges.size(); ++e)
            (edges[e].first == v || edges[e].second == v ? inc : rest).push_back(pts[e]);
        normals.push_back(solve_incident_normal(inc, rest, 6, true));
        labels.push_back("tet" + std::to_string(v + 1));
    }
    for (int f = 0; f < 5; ++f) {  // octahedral facet per simplex facet
        std::vector<LorentzVector> inc, rest;
        for (size_t e = 0; e < edges.size(); ++e)
            (edges[e].first != f && edges[e].second != f ? inc : rest).push_back(pts[e]);
        normals.push_back(solve_incident_normal(inc, rest, 6, true));
        labels.push_back("oct" + std::to_string(f + 1));
    }
    for (auto& n : normals) n = project_sum_zero_subspace(n);
    return Polytope::from_normals(std::move(normals), std::move(labels));
}

Polytope build_ideal_tetrahedron() {
    static const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<LorentzVector> pts;
    for (auto& s : signs) {
        LorentzVector p(4);
        p.x[0] = FieldElement::sqrt3();
        for (int k = 0; k < 3; ++k) p.x[k + 1] = FieldElement(s[k]);
        pts.push_back(std::move(p));
    }
    std::vector<LorentzVector> normals;
    for (int f = 0; f < 4; ++f) {
        std::vector<LorentzVector> inc, rest;
        for (int v = 0; v < 4; ++v) (v != f ? inc : rest).push_back(pts[v]);
        normals.push_back(solve_incident_normal(inc, rest, 4, false));
    }
    return Polytope::from_normals(std::move(normals), {"f0", "f1", "f2", "f3"});
}

} // namespace

Polytope Polytope::builtin(const std::string& name) {
    Polytope p;
    if (name == "kerckhoff_storm") p = build_kerckhoff_storm();
    else if (name == "rectified_5_cell") p = build_rectified_5_cell();
    else if (name == "ideal_regular_tetrahedron_3d") p = build_ideal_tetrahedron();
    else throw std::invalid_argument("unknown builtin polytope: " + name);
    p.name_ = name;
    return p;
}

std::vector<std::string> Polytope::builtin_names() {
    return {"kerckhoff_storm", "rectified_5_cell", "ideal_regular_tetrahedron_3d"};
}

namespace {

// Kernel vector of k = ambient-1 normals via the signed maximal minors of the
// k x (k+1) coefficient matrix; empty when the rank drops below k.
struct MinorKernel {
    int k, cols;
    std::vector<std::vector<FieldElement>> a;  // k rows, k+1 cols
    std::map<std::pair<int, unsigned>, FieldElement> memo;

    FieldElement det(int row, unsigned mask) {
        if (row == k) return FieldElement(1);
        auto key = std::make_pair(row, mask);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        FieldElement d;
        int parity = 0;
        for (int c = 0; c < cols; ++c) {
            if (!(mask & (1u << c))) continue;
            if (!a[row][c].is_zero()) {
                FieldElement sub = det(row + 1, mask & ~(1u << c));
                if (!sub.is_zero()) {
                    FieldElement term = a[row][c] * sub;
                    d = (parity % 2 == 0) ? d + term : d - term;
                }
            }
            ++parity;
        }
        memo.emplace(key, d);
        return d;
    }
};

std::optional<LorentzVector> kernel_ray(const Polytope& p, const std::vector<int>& subset) {
    int ambient = p.ambient();
    int k = ambient - 1;
    MinorKernel mk;
    mk.k = k;
    mk.cols = ambient;
    mk.a.resize(k);
    for (int r = 0; r < k; ++r) {
        const LorentzVector& n = p.normal(subset[r]);
        mk.a[r].resize(ambient);
        mk.a[r][0] = -n.x[0];
        for (int c = 1; c < ambient; ++c) mk.a[r][c] = n.x[c];
    }
    LorentzVector w(ambient);
    unsigned full = (1u << ambient) - 1;
    bool nonzero = false;
    for (int c = 0; c < ambient; ++c) {
        FieldElement m = mk.det(0, full & ~(1u << c));
        if (c % 2 == 1) m = -m;
        if (!m.is_zero()) nonzero = true;
        w.x[c] = std::move(m);
    }
    if (!nonzero) return std::nullopt;  // rank < k: no isolated ray here
    return w;
}

} // namespace

const FaceLattice& Polytope::lattice() const {
    if (lattice_) return *lattice_;

    auto lat = std::make_shared<FaceLattice>();
    int nf = facet_count();
    int k = dim();

    // all k-subsets of facets
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int start) {
        if (int(cur.size()) == k) {
            subsets.push_back(cur);
            return;
        }
        for (int i = start; i < nf; ++i) {
            cur.push_back(i);
            gen(i + 1);
            cur.pop_back();
        }
    };
    gen(0);

    struct Candidate {
        LorentzVector point;
        bool ideal;
    };
    auto results = parallel_map<std::optional<Candidate>>(int(subsets.size()), [&](int si) -> std::optional<Candidate> {
        auto ray = kernel_ray(*this, subsets[si]);
        if (!ray) return std::nullopt;
        VectorKind kind = classify_vector(*ray);
        if (kind == VectorKind::space_like) return std::nullopt;
        LorentzVector w = *ray;
        Sign s0 = w.x[0].sign();
        if (s0 == Sign::zero) return std::nullopt;  // no future representative
        if (s0 == Sign::negative) w = w * FieldElement(-1);
        for (int i = 0; i < nf; ++i)
            if (minkowski_product(w, normal(i)).sign() == Sign::positive) return std::nullopt;
        if (kind == VectorKind::time_like) return Candidate{canonical_finite(w), false};
        return Candidate{canonical_ideal(w), true};
    });

    std::map<LorentzVector, int> vertex_ids;
    for (auto& cand : results) {
        if (!cand) continue;
        if (vertex_ids.count(cand->point)) continue;
        int id = int(lat->vertices.size());
        vertex_ids.emplace(cand->point, id);
        VertexInfo vi;
        vi.point = cand->point;
        vi.ideal = cand->ideal;
        for (int i = 0; i < nf; ++i)
            if (minkowski_product(vi.point, normal(i)).is_zero()) vi.facets.push_back(i);
        if (vi.ideal) ++lat->n_ideal;
        lat->vertices.push_back(std::move(vi));
    }

    // Faces as closures of the vertex-facet incidence: a face is the maximal
    // pair (vertex set, facet set) with every listed vertex on every listed facet.
    std::vector<std::vector<int>> facet_vertices(nf);
    for (size_t v = 0; v < lat->vertices.size(); ++v)
        for (int f : lat->vertices[v].facets) facet_vertices[f].push_back(int(v));

    auto closure_facets = [&](const std::vector<int>& vs) {
        std::vector<int> s = lat->vertices[vs[0]].facets;
        for (size_t i = 1; i < vs.size(); ++i) s = sorted_intersection(s, lat->vertices[vs[i]].facets);
        return s;
    };
    auto face_rank = [&](const std::vector<int>& vs) {
        std::vector<LorentzVector> pts;
        pts.reserve(vs.size());
        for (int v : vs) pts.push_back(lat->vertices[v].point);
        return lorentz_rank(pts);
    };

    std::map<std::vector<int>, int> face_of;
    std::vector<std::vector<int>> queue;
    auto add_face = [&](const std::vector<int>& vs) -> bool {
        if (vs.empty() || face_of.count(vs)) return false;
        Face f;
        f.vertices = vs;
        f.facets = closure_facets(vs);
        f.dim = face_rank(vs) - 1;
        face_of.emplace(vs, int(lat->faces.size()));
        lat->faces.push_back(std::move(f));
        queue.push_back(vs);
        return true;
    };

    for (int f = 0; f < nf; ++f) {
        std::sort(facet_vertices[f].begin(), facet_vertices[f].end());
        if (facet_vertices[f].empty())
            throw std::runtime_error("face lattice: facet without vertices (infinite volume?)");
        add_face(facet_vertices[f]);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> vs = queue[qi];  // copy: queue reallocates
        const std::vector<int> fs = lat->faces[face_of[vs]].facets;
        for (int g = 0; g < nf; ++g) {
            if (std::binary_search(fs.begin(), fs.end(), g)) continue;
            add_face(sorted_intersection(vs, facet_vertices[g]));
        }
    }

    // top face: the polytope itself
    {
        Face top;
        top.dim = k;
        for (size_t v = 0; v < lat->vertices.size(); ++v) top.vertices.push_back(int(v));
        lat->top_face = int(lat->faces.size());
        lat->faces.push_back(std::move(top));
    }

    lat->by_dim.assign(k + 1, {});
    for (size_t i = 0; i < lat->faces.size(); ++i) {
        int d = lat->faces[i].dim;
        if (d < 0 || d > k) throw std::logic_error("face lattice: face with impossible dimension");
        lat->by_dim[d].push_back(int(i));
    }
    for (int fid : lat->by_dim[1])
        if (lat->faces[fid].vertices.size() < 2)
            throw std::runtime_error("face lattice: unbounded edge (bad input normals)");
    for (int fid : lat->by_dim[k - 2])
        if (lat->faces[fid].facets.size() != 2 && fid != lat->top_face)
            throw std::runtime_error("face lattice: ridge not on exactly two facets");
    for (auto& [vs, id] : face_of) lat->face_by_vertex_set.emplace(vs, id);

    lattice_ = std::move(lat);
    return *lattice_;
}

std::vector<int> FaceLattice::f_vector() const {
    std::vector<int> f;
    for (size_t d = 0; d + 1 < by_dim.size(); ++d) f.push_back(int(by_dim[d].size()));
    return f;
}

int FaceLattice::find_face(const std::vector<int>& vertex_set) const {
    auto it = face_by_vertex_set.find(vertex_set);
    return it == face_by_vertex_set.end() ? -1 : it->second;
}

std::vector<Face> enumerate_vertices(const Polytope& p) {
    const FaceLattice& lat = p.lattice();
    std::vector<Face> out;
    for (int fid : lat.by_dim[0]) out.push_back(lat.faces[fid]);
    return out;
}

const FaceLattice& face_lattice(const Polytope& p) { return p.lattice(); }

LorentzVector Polytope::interior_point() const {
    const FaceLattice& lat = lattice();
    LorentzVector sum(ambient_);
    for (const auto& v : lat.vertices) sum = sum + v.point;
    for (const auto& n : normals_)
        if (minkowski_product(sum, n).sign() != Sign::negative)
            throw std::logic_error("interior_point: vertex barycenter not interior");
    return sum;
}

AngleClass Polytope::facet_relation(int i, int j) const {
    if (i == j) throw std::invalid_argument("facet_relation: equal facets");
    FieldElement s = minkowski_product(normals_[i], normals_[j]);
    FieldElement d = minkowski_norm2(normals_[i]) * minkowski_norm2(normals_[j]);
    FieldElement s2 = s * s;
    AngleClass ac;
    ac.cos2 = s2 / d;
    Sign ss = s.sign();
    ac.cos_sign = ss == Sign::negative ? 1 : (ss == Sign::zero ? 0 : -1);  // cosine = -s/sqrt(d)
    FieldElement gap = s2 - d;
    Sign g = gap.sign();
    if (g == Sign::negative) {
        // intersecting hyperplanes: dihedral angle with cos = -s/sqrt(d)
        if (ac.cos_sign >= 0) {
            for (const auto& [m, c2] : cos2_table()) {
                if (ac.cos2 == c2) {
                    ac.kind = AngleClass::submultiple;
                    ac.m = m;
                    return ac;
                }
            }
        }
        ac.kind = AngleClass::general;
        if (auto root = d.sqrt()) ac.exact = -(s / *root);
        return ac;
    }
    if (ss == Sign::positive)
        throw std::domain_error("facet_relation: nested half-spaces (degenerate input)");
    if (g == Sign::zero) {
        ac.kind = AngleClass::tangent;
        return ac;
    }
    ac.kind = AngleClass::ultraparallel;
    ac.cos_sign = 1;  // cosh > 0
    if (auto root = d.sqrt()) ac.exact = -(s / *root);
    return ac;
}

AngleClass dihedral_angle(const Polytope& p, int i, int j) { return p.facet_relation(i, j); }

std::vector<FacetClass> classify_facets_P(const Polytope& p) {
    if (p.facet_count() != 24 || p.ambient() != 5)
        throw std::invalid_argument("classify_facets_P: not the Kerckhoff-Storm polytope");

    const FieldElement pos = fe("(1/3)*sqrt15"), neg = fe("(1/5)*sqrt15"), tet = fe("sqrt6");
    std::vector<FacetClass> out(24);
    int np = 0, nn = 0, ne = 0, nt = 0;
    const FaceLattice& lat = p.lattice();

    // facet -> vertex x4 sign summary
    std::vector<std::vector<int>> facet_vertices(24);
    for (size_t v = 0; v < lat.vertices.size(); ++v)
        for (int f : lat.vertices[v].facets) facet_vertices[f].push_back(int(v));

    for (int i = 0; i < 24; ++i) {
        const FieldElement& last = p.normal(i).x[4];
        FacetClass fc{};
        if (last == pos || last == -pos) { fc.type = FacetType::positive; ++np; }
        else if (last == neg || last == -neg) { fc.type = FacetType::negative; ++nn; }
        else if (last.is_zero()) { fc.type = FacetType::equatorial; ++ne; }
        else if (last == tet || last == -tet) { fc.type = FacetType::tetrahedral; ++nt; }
        else throw std::invalid_argument("classify_facets_P: unexpected last normal coordinate");

        fc.position = 0;
        if (fc.type != FacetType::equatorial) {
            bool all_nonpos = true, all_nonneg = true;
            for (int v : facet_vertices[i]) {
                Sign s = lat.vertices[v].point.x[4].sign();
                if (s == Sign::positive) all_nonpos = false;
                if (s == Sign::negative) all_nonneg = false;
            }
            if (all_nonpos == all_nonneg)
                throw std::logic_error("classify_facets_P: facet not separated by the equator");
            fc.position = all_nonpos ? 1 : -1;  // upper facets live in {x4 <= 0}
        }
        out[i] = fc;
    }
    if (np != 8 || nn != 8 || ne != 6 || nt != 2)
        throw std::invalid_argument("classify_facets_P: facet class counts do not match");
    return out;
}

LorentzVector horospherical_edge_point(const LorentzVector& r, const LorentzVector& w, bool /*w_ideal*/) {
    FieldElement rw = minkowski_product(r, w);
    if (rw.sign() != Sign::negative)
        throw std::domain_error("horospherical_edge_point: edge endpoint not opposite the cusp");
    // p = alpha r + beta w with <p,r> = -1 and <p,p> = -1; works for any
    // time-like or light-like representative of w
    FieldElement beta = FieldElement(-1) / rw;
    FieldElement ww = minkowski_norm2(w);
    FieldElement alpha = (FieldElement(-1) - beta * beta * ww) / (FieldElement(2) * beta * rw);
    return r * alpha + w * beta;
}

FieldElement horospherical_dist2(const LorentzVector& a, const LorentzVector& b) {
    return FieldElement(-2) - FieldElement(2) * minkowski_product(a, b);
}

VertexLink vertex_link(const Polytope& p, int vertex_id) {
    const FaceLattice& lat = p.lattice();
    if (vertex_id < 0 || vertex_id >= int(lat.vertices.size()))
        throw std::invalid_argument("vertex_link: unknown vertex");
    const VertexInfo& v = lat.vertices[vertex_id];

    VertexLink link;
    link.vertex = vertex_id;
    link.euclidean = v.ideal;

    std::vector<int> ridges_at_v, edges_at_v;
    int k = p.dim();
    for (int fid : lat.by_dim[k - 2])
        if (std::binary_search(lat.faces[fid].vertices.begin(), lat.faces[fid].vertices.end(), vertex_id))
            ridges_at_v.push_back(fid);
    for (int fid : lat.by_dim[1])
        if (std::binary_search(lat.faces[fid].vertices.begin(), lat.faces[fid].vertices.end(), vertex_id))
            edges_at_v.push_back(fid);

    for (int f : v.facets) {
        int polygon = 0;
        for (int rid : ridges_at_v)
            if (std::binary_search(lat.faces[rid].facets.begin(), lat.faces[rid].facets.end(), f)) ++polygon;
        link.faces.push_back({f, p.label(f), polygon});
    }
    for (int rid : ridges_at_v) {
        const auto& fs = lat.faces[rid].facets;
        link.edges.push_back({rid, fs[0], fs[1], p.facet_relation(fs[0], fs[1])});
    }
    for (int eid : edges_at_v) {
        VertexLink::LinkVertex lv;
        lv.edge_face = eid;
        if (v.ideal) {
            const auto& everts = lat.faces[eid].vertices;
            int other = everts[0] == vertex_id ? everts[1] : everts[0];
            lv.section = horospherical_edge_point(v.point, lat.vertices[other].point,
                                                  lat.vertices[other].ideal);
        }
        link.vertices.push_back(std::move(lv));
    }
    return link;
}

std::string VertexLink::label_signature() const {
    std::string s;
    for (const auto& f : faces) s += f.label.empty() ? '?' : f.label[0];
    std::sort(s.begin(), s.end());
    return s;
}

CoxeterCheck coxeter_check(const Polytope& p) {
    const FaceLattice& lat = p.lattice();
    CoxeterCheck out;
    out.is_coxeter = true;
    int k = p.dim();
    std::set<std::pair<int, int>> ridge_pairs;
    for (int rid : lat.by_dim[k - 2]) {
        const auto& fs = lat.faces[rid].facets;
        AngleClass ac = p.facet_relation(fs[0], fs[1]);
        ridge_pairs.insert({fs[0], fs[1]});
        if (ac.kind == AngleClass::submultiple) {
            ++out.angle_multiset[ac.m];
        } else {
            out.is_coxeter = false;
            out.offending_ridges.push_back(rid);
        }
    }
    // generalized diagram over all facet pairs: orthogonal pairs are omitted
    for (int i = 0; i < p.facet_count(); ++i)
        for (int j = i + 1; j < p.facet_count(); ++j) {
            AngleClass ac = p.facet_relation(i, j);
            if (ac.kind == AngleClass::submultiple && ac.m == 2) continue;
            std::ostringstream line;
            line << "f" << i << " -- f" << j << ": ";
            if (ac.kind == AngleClass::tangent) line << "thick";
            else if (ac.kind == AngleClass::ultraparallel) line << "dotted";
            else if (ac.kind == AngleClass::submultiple && ac.m == 3) line << "unlabeled";
            else line << ac.str();
            out.diagram.push_back(line.str());
        }
    return out;
}

long coxeter_group_order(const std::vector<std::vector<int>>& m) {
    int n = int(m.size());
    std::vector<int> comp(n, -1);
    long order = 1;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        // flood the Coxeter graph component (edges where m >= 3)
        std::vector<int> nodes{s};
        comp[s] = s;
        for (size_t qi = 0; qi < nodes.size(); ++qi)
            for (int j = 0; j < n; ++j)
                if (comp[j] < 0 && m[nodes[qi]][j] >= 3) {
                    comp[j] = s;
                    nodes.push_back(j);
                }
        if (nodes.size() == 1) {
            order *= 2;
        } else if (nodes.size() == 2) {
            order *= 2L * m[nodes[0]][nodes[1]];
        } else if (nodes.size() == 3) {
            std::vector<int> labels;
            for (size_t a = 0; a < 3; ++a)
                for (size_t b = a + 1; b < 3; ++b)
                    if (m[nodes[a]][nodes[b]] >= 3) labels.push_back(m[nodes[a]][nodes[b]]);
            if (labels.size() != 2)
                throw std::domain_error("coxeter_group_order: 3-node component is not a path");
            std::sort(labels.begin(), labels.end());
            if (labels[0] != 3 || labels[1] < 3 || labels[1] > 5)
                throw std::domain_error("coxeter_group_order: unsupported rank-3 component");
            order *= labels[1] == 3 ? 24 : (labels[1] == 4 ? 48 : 120);
        } else {
            throw std::domain_error("coxeter_group_order: component rank above 3 unsupported");
        }
    }
    return order;
}

Rat orbifold_euler_characteristic(const Polytope& p) {
    const FaceLattice& lat = p.lattice();
    Rat chi = 0;
    for (const Face& f : lat.faces) {
        if (f.dim == 0) {
            // ideal vertices are not faces of the compact orbifold
            if (lat.vertices[f.vertices[0]].ideal) continue;
        }
        const auto& fs = f.facets;
        int n = int(fs.size());
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                AngleClass ac = p.facet_relation(fs[a], fs[b]);
                if (ac.kind != AngleClass::submultiple)
                    throw std::domain_error("orbifold_euler_characteristic: non-Coxeter stabilizer");
                m[a][b] = m[b][a] = ac.m;
            }
        long w = coxeter_group_order(m);
        Rat term(1, w);
        chi += (f.dim % 2 == 0) ? term : -term;
    }
    return chi;
}

GaussBonnetVolume gauss_bonnet_volume(const Polytope& p) {
    Rat chi = orbifold_euler_characteristic(p);
    if (p.dim() == 4) return {Rat(4, 3) * chi, 2};
    if (p.dim() == 2) return {Rat(-2) * chi, 1};
    throw std::domain_error("gauss_bonnet_volume: only dimensions 2 and 4 supported");
}

} // namespace hypercox
