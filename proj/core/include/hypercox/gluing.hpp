#pragma once

#include "hypercox/symmetry.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hypercox {

/// Facet pairing between two polytope copies: an exact isometry carrying the
/// source facet (and its supporting hyperplane) onto the target facet.
struct Pairing {
    int copy_a = 0, facet_a = 0;
    int copy_b = 0, facet_b = 0;
    LorentzMap map;   // geometry of copy_a -> geometry of copy_b
    std::string via;  // displayed provenance, e.g. "phi_P", "g", "i", "identity"
};

/// Copies of polytopes with facet pairings; unpaired facets form the boundary.
struct GluingSchema {
    struct Copy {
        std::shared_ptr<const Polytope> polytope;
        bool mirror = false;  // orientation bookkeeping only
    };
    std::string name;
    std::vector<Copy> copies;
    std::vector<Pairing> pairings;

    int dim() const { return copies.at(0).polytope->dim(); }
    /// Index into pairings covering (copy, facet), or -1 when unpaired.
    int pairing_at(int copy, int facet) const;
    std::vector<std::pair<int, int>> boundary_facets() const;

    /// Schema invariants: every facet in at most one pairing, maps exact
    /// facet-to-facet isometries, no self-pairing acting as the identity.
    /// Throws std::domain_error with a description on violation.
    void validate() const;
};

/// Builtin schemas:
///   manifold_M     one Kerckhoff-Storm copy, positive/tetrahedral/negative
///                  facets paired by phi_X, g, i; equatorial facets free
///   double_N       the double of manifold_M
///   cut_N_split    double_N with the tetrahedral pairing of the second copy
///                  removed (its two tetrahedral facets become boundary)
///   figure_eight   two ideal regular tetrahedra with the four classical
///                  face pairings
///   gieseking      the quotient of figure_eight by the tetrahedron swap
GluingSchema builtin_schema(const std::string& name);
std::vector<std::string> builtin_schema_names();

/// Face orbits of the quotient space, all dimensions, with exact transports.
struct FaceOrbit {
    int dim = -1;
    std::vector<std::pair<int, int>> members;  // (copy, face id), sorted; [0] is canonical
    std::vector<LorentzMap> transport;         // representative chart -> member chart
    bool ideal_vertex = false;
    bool has_boundary_facet = false;           // some member lies in an unpaired facet
};

struct QuotientComplex {
    GluingSchema schema;
    std::vector<FaceOrbit> orbits;
    std::vector<std::vector<int>> orbits_by_dim;
    std::map<std::pair<int, int>, int> orbit_of;  // (copy, face) -> orbit index

    // per pairing: face id -> image face id in the target copy (and back)
    std::vector<std::map<int, int>> face_image_fwd, face_image_rev;

    const Polytope& polytope(int copy) const { return *schema.copies[copy].polytope; }
    int orbit_count(int dim) const { return int(orbits_by_dim[dim].size()); }
    /// Directed crossing: pairing index p applied at (copy, face). Returns the
    /// target (copy, face) and writes the directed map/scale when requested.
    std::pair<int, int> cross(int p, int copy, int face, LorentzMap* map = nullptr) const;
};

QuotientComplex quotient_complex(const GluingSchema& s);

struct RidgeWalkReport {
    int orbit = -1;
    bool interior = false;
    int length = 0;              // ridge instances visited
    bool angles_submultiple = true;
    Rat angle_sum_pi;            // total dihedral angle in units of pi
    bool angle_ok = false;       // == 2 interior, == 1 boundary chain
    bool return_trivial = false; // interior cycles: composite is the identity
    std::string composite;       // printable return/chain map
};

struct RidgeCheck {
    std::vector<RidgeWalkReport> walks;
    bool all_ok = true;
    std::map<int, int> interior_cycle_lengths;  // length -> count
};

RidgeCheck ridge_check(const QuotientComplex& q);

/// Combinatorics of the link of a face orbit: flag orbits by dimension, the
/// link Euler characteristic, and whether the link meets the boundary.
struct LinkStats {
    std::vector<int> flag_orbits_by_dim;  // index = dim of the larger face
    int chi = 0;
    bool has_boundary = false;
    int cells = 0;  // top-dimensional link cells = orbit members
};

LinkStats link_stats(const QuotientComplex& q, int orbit_index);

/// Flat cross-section of the cusp at an ideal vertex orbit.
struct CuspReport {
    int orbit = -1;
    int cells = 0;
    bool closed = false;
    bool complete = false;              // holonomy scaling 1 around every cycle
    bool chi_zero = false;
    bool orientable = false;
    bool manifold_ok = false;           // combinatorial checks for this section
    std::string surface_type;           // 2-dimensional sections only
    bool triangles_equilateral = false; // 2-dimensional sections of triangle cells
    struct SubSurface {                 // fibered analysis of prism sections
        std::string side;               // link-face signature of the fiber side
        int triangles_before = 0;       // cells of the unquotiented fiber torus
        std::string type_before;
        bool equilateral = false;
        int triangles_after = 0;        // after the triangle-face pairings
        std::string type_after;
        bool involution_fixed_point_free = false;
    };
    std::vector<SubSurface> fibers;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

CuspReport cusp_section_check(const QuotientComplex& q, int orbit_index);

/// Spherical link of a finite vertex orbit, with volume-spectrum evidence.
struct SphericalReport {
    int orbit = -1;
    int cells = 0;
    bool closed = false;
    bool combinatorial_ok = false;
    double volume_lo = 0, volume_hi = 0;  // interval for the total link volume
    std::string verdict;   // "hemisphere of S^3", "S^3", "spherical piece (2pi^2/k)", "inconclusive", ...
    bool verdict_ok = false;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool passed() const { return failures.empty(); }
};

SphericalReport spherical_link_check(const QuotientComplex& q, int orbit_index,
                                     double tolerance = 0.05);

struct BoundarySummary {
    int cells = 0;        // unpaired facet instances
    int components = 0;
    int chi = 0;
};

struct CheckReport {
    bool pass = false;
    std::string schema_name;
    int dim = 0;
    int copies = 0;
    RidgeCheck ridges;
    std::vector<std::pair<int, LinkStats>> edge_links;  // codim-3 orbits (dim 4 schemas)
    std::vector<CuspReport> cusps;
    std::vector<SphericalReport> finite_links;
    int chi = 0;
    bool volume_consistent = false;  // Gauss-Bonnet volume equals copies x polytope volume
    bool orientable = false;
    BoundarySummary boundary;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

CheckReport verify_manifold(const GluingSchema& s);

/// Alternating sum of orbit counts over the non-ideal strata.
int euler_characteristic(const QuotientComplex& q);

struct OrientabilityReport {
    bool orientable = false;
    GluingSchema double_cover;
};

OrientabilityReport orientability(const QuotientComplex& q);

/// Two mirror copies glued along the boundary by the identity.
GluingSchema double_schema(const GluingSchema& s);

/// The boundary as a cell complex one dimension down: unpaired facets are
/// the cells, glued along ridges by the boundary chain composites.
struct BoundaryComplex {
    struct Cell {
        int copy, facet;
    };
    struct Glue {
        int cell_a, ridge_a;  // ridge = polytope face id inside cell_a's facet
        int cell_b, ridge_b;
        LorentzMap chain;     // composite map, chart of cell_a -> chart of cell_b
    };
    const QuotientComplex* source = nullptr;
    std::vector<Cell> cells;
    std::vector<Glue> glues;
    int components = 0;
    int chi = 0;
};

BoundaryComplex boundary_complex(const QuotientComplex& q);

/// Dimension-3 cell complex with exact angle data, the common shape of a
/// 3-dimensional schema and of the boundary of a 4-dimensional one.
struct ComplexView {
    struct Gluing {
        int cell = -1, face = -1;               // partner
        std::vector<int> edge_map;              // adjacent-face index -> adjacent-face index at partner
    };
    struct Cell {
        int face_count = 0;
        // angle between faces a,b when they share an edge of the cell
        std::map<std::pair<int, int>, AngleClass> adjacency;
        std::vector<Gluing> glued;              // by face index; cell<0 when boundary
        std::vector<int> face_sides;            // polygon size per face
    };
    std::vector<Cell> cells;
};

ComplexView complex_view(const GluingSchema& s);           // 3-dimensional schemas
ComplexView complex_view(const BoundaryComplex& b);        // boundaries of 4-dimensional ones

/// Cell bijection preserving incidences, angles, and pairings; nullopt when
/// none exists. The witness maps (cell, face) of `a` to (cell, face) of `b`.
std::optional<std::map<std::pair<int, int>, std::pair<int, int>>> combinatorial_isomorphism(
    const ComplexView& a, const ComplexView& b);

/// Complex automorphism given by one polytope symmetry per copy; validated
/// against the pairing set. Used for fixed-point analysis on cusp sections.
struct ComplexAutomorphism {
    std::vector<Symmetry> per_copy;
};

/// True iff the automorphism acts without fixed points on the cusp cross
/// section at the given ideal vertex orbit (no stratum orbit is preserved).
bool section_fixed_point_free(const QuotientComplex& q, int orbit_index,
                              const ComplexAutomorphism& a);

} // namespace hypercox
