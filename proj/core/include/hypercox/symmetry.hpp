#pragma once

#include "hypercox/polytope.hpp"

#include <map>
#include <string>
#include <vector>

namespace hypercox {

/// A facet-preserving isometry of a polytope: the exact matrix together with
/// the induced facet permutation. Group operations keep both in sync.
struct Symmetry {
    LorentzMap map;
    std::vector<int> facet_perm;
    std::string label;

    Symmetry compose(const Symmetry& o) const;  // *this after o
    Symmetry inverse() const;
    bool operator==(const Symmetry& o) const { return map == o.map; }
    bool is_identity() const { return map.is_identity(); }
};

struct SymmetryGroup {
    std::vector<Symmetry> elements;  // complete, lexicographic in facet_perm
    std::vector<std::string> generator_labels;

    int order() const { return int(elements.size()); }
    const Symmetry* find_by_perm(const std::vector<int>& perm) const;
    const Symmetry* find_by_map(const LorentzMap& m) const;
};

/// Complete isometric symmetry group: backtracking over facet permutations
/// that preserve the normalized Gram matrix, each candidate realized as the
/// unique linear map on a spanning set of normals and validated exactly.
SymmetryGroup automorphism_group(const Polytope& p);

/// The five coordinate symmetries of the Kerckhoff-Storm polytope, by label:
///   a: (x0,x1,x2,x3,x4) -> (x0,-x1,-x2,-x3,-x4)
///   r: negate x3, x4;  l: swap x1,x2;  m: swap x2,x3;  n: (x2,x3) -> (-x3,-x2)
Symmetry named_symmetry(const Polytope& ks, const std::string& label);

struct StructureReportP {
    int order = 0;
    int order_orientation_preserving = 0;
    bool antipodal_central = false;
    bool equator_stabilizer_is_s4 = false;   // faithful + full on upper positive facets
    bool plus_part_acts_even = false;        // H-preserving orientation-preserving part in A4
    std::vector<int> facet_orbit_sizes;      // sorted
    std::vector<int> vertex_orbit_sizes;     // sorted
    std::vector<std::string> failures;       // human-readable witnesses
    bool passed() const { return failures.empty(); }
};

StructureReportP structure_check_P(const Polytope& ks, const SymmetryGroup& g);

/// Canonical {P,R,F,J} labels on the four upper positive facets: facets sorted
/// by the real-embedding lexicographic order of their normals get P,R,F,J in
/// that order. Lower positive facets inherit the label of their antipode.
std::map<char, int> canonical_prfj_labeling(const Polytope& ks);

/// Parses disjoint cycles over {P,R,F,J}, e.g. "(JFR)" or "(PF)(JR)" or "id".
std::map<char, char> parse_label_cycles(const std::string& text);

/// The unique group element acting on the labeled upper positive facets as
/// `perm`, composed with the antipodal map iff with_antipodal. Throws unless
/// exactly one element matches.
Symmetry permutation_to_symmetry(const SymmetryGroup& g, const Polytope& ks,
                                 const std::map<char, int>& labeling, bool with_antipodal,
                                 const std::map<char, char>& perm);

/// Vertex permutation induced by a symmetry (indices into lattice vertices).
std::vector<int> vertex_permutation(const Polytope& p, const Symmetry& s);

} // namespace hypercox
