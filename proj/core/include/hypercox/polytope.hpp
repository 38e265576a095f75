#pragma once

#include "hypercox/lorentz.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hypercox {

/// Relation of two facet hyperplanes, classified from s = <u,v> and
/// D = <u,u><v,v> without leaving the field: the normalized product
/// s/sqrt(D) is the negated cosine for intersecting walls, -1 for walls
/// tangent at infinity and -cosh(distance) for ultraparallel walls.
/// s/sqrt(D) >= 1 would mean nested half-spaces and is rejected.
struct AngleClass {
    enum Kind { submultiple, general, tangent, ultraparallel } kind;
    int m = 0;                 // kind == submultiple: the angle is pi/m
    FieldElement cos2;         // squared cosine (angles) or squared cosh (ultraparallel)
    int cos_sign = 0;          // sign of the cosine / cosh value
    std::optional<FieldElement> exact;  // cos or cosh when its square root lies in the field

    bool is_angle() const { return kind == submultiple || kind == general; }
    /// Angle in units of pi (only for submultiple).
    Rat pi_units() const { return Rat(1, m); }
    bool operator==(const AngleClass& o) const {
        return kind == o.kind && m == o.m && cos2 == o.cos2 && cos_sign == o.cos_sign;
    }
    std::string str() const;
};

struct Face {
    int dim = -1;
    std::vector<int> facets;    // all facets whose hyperplane contains the face (sorted)
    std::vector<int> vertices;  // sorted vertex ids
};

struct VertexInfo {
    LorentzVector point;  // canonical representative
    bool ideal = false;
    std::vector<int> facets;  // full incidence (sorted)
};

struct FaceLattice {
    std::vector<VertexInfo> vertices;
    std::vector<Face> faces;                 // all proper faces plus the polytope itself (last)
    std::vector<std::vector<int>> by_dim;    // face ids per dimension
    std::map<std::vector<int>, int> face_by_vertex_set;

    int n_ideal = 0;
    int top_face = -1;

    const std::vector<int>& dim_faces(int d) const { return by_dim[d]; }
    /// f-vector (#dim-0, #dim-1, ..., #facets).
    std::vector<int> f_vector() const;
    int find_face(const std::vector<int>& vertex_set) const;
};

class Polytope {
public:
    static Polytope from_normals(std::vector<LorentzVector> normals,
                                 std::vector<std::string> labels = {});

    /// name in {kerckhoff_storm, rectified_5_cell, ideal_regular_tetrahedron_3d}
    static Polytope builtin(const std::string& name);
    static std::vector<std::string> builtin_names();

    int ambient() const { return ambient_; }
    int dim() const { return ambient_ - 1; }  // hyperbolic dimension
    int facet_count() const { return int(normals_.size()); }
    const LorentzVector& normal(int i) const { return normals_[i]; }
    const std::vector<LorentzVector>& normals() const { return normals_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::string& name() const { return name_; }

    const FaceLattice& lattice() const;

    /// An interior point (strictly inside every half-space).
    LorentzVector interior_point() const;

    AngleClass facet_relation(int i, int j) const;

private:
    int ambient_ = 0;
    std::vector<LorentzVector> normals_;
    std::vector<std::string> labels_;
    std::string name_;
    mutable std::shared_ptr<const FaceLattice> lattice_;
};

/// dim-0 faces of the lattice (computed if needed).
std::vector<Face> enumerate_vertices(const Polytope& p);

const FaceLattice& face_lattice(const Polytope& p);

/// Classification of the dihedral relation of facets i and j; for a ridge of
/// the polytope this is its dihedral angle. Throws on i == j and on nested
/// half-spaces (degenerate input).
AngleClass dihedral_angle(const Polytope& p, int i, int j);

enum class FacetType { positive, negative, equatorial, tetrahedral };
struct FacetClass {
    FacetType type;
    int position;  // +1 upper, -1 lower, 0 neither
    char letter() const;
};

/// Facet classes of the Kerckhoff-Storm polytope, decided by the last normal
/// coordinate; upper/lower decided geometrically by the vertex x4 signs.
std::vector<FacetClass> classify_facets_P(const Polytope& p);

struct VertexLink {
    int vertex = -1;
    bool euclidean = false;  // ideal vertex: Euclidean link; finite: spherical
    struct LinkFace {
        int facet;
        std::string label;
        int polygon_size;  // ridges of this facet at the vertex
    };
    struct LinkEdge {
        int ridge_face;  // face id of the ridge in the polytope lattice
        int facet_a, facet_b;
        AngleClass angle;
    };
    struct LinkVertex {
        int edge_face;                          // face id of the polytope edge
        std::optional<LorentzVector> section;   // horospherical point (ideal vertices only)
    };
    std::vector<LinkFace> faces;
    std::vector<LinkEdge> edges;
    std::vector<LinkVertex> vertices;

    /// Sorted face-label string, e.g. "EENNPP".
    std::string label_signature() const;
};

VertexLink vertex_link(const Polytope& p, int vertex_id);

/// Exact point where the horosphere {<x, r> = -1} about the ideal point r
/// meets the edge towards w (w a canonical finite or ideal vertex).
LorentzVector horospherical_edge_point(const LorentzVector& r, const LorentzVector& w, bool w_ideal);

/// Squared Euclidean distance of two points on a common horosphere.
FieldElement horospherical_dist2(const LorentzVector& a, const LorentzVector& b);

struct CoxeterCheck {
    bool is_coxeter = false;
    std::vector<std::string> diagram;        // one line per non-orthogonal facet pair
    std::map<int, int> angle_multiset;       // m -> number of ridges with angle pi/m
    std::vector<int> offending_ridges;       // ridges with non-submultiple angles
};

CoxeterCheck coxeter_check(const Polytope& p);

/// Orbifold Euler characteristic: sum over non-ideal faces F (including the
/// polytope itself) of (-1)^dim(F) / |W_F|, W_F the finite Coxeter group
/// generated by the facets through F. Throws if some stabilizer diagram is
/// not spherical of a supported shape.
Rat orbifold_euler_characteristic(const Polytope& p);

struct GaussBonnetVolume {
    Rat coefficient;  // volume = coefficient * pi^pi_power
    int pi_power;
};

/// Gauss-Bonnet volume in even dimensions (dim 4: (4 pi^2/3) chi; dim 2: -2 pi chi).
GaussBonnetVolume gauss_bonnet_volume(const Polytope& p);

/// Order of the finite Coxeter group with the given pairwise angle orders
/// (m[i][j] = m of angle pi/m). Supported: products of A1, I2(m), A3, B3, H3.
long coxeter_group_order(const std::vector<std::vector<int>>& m);

} // namespace hypercox
