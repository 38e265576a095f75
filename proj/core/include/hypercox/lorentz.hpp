#pragma once

#include "hypercox/field.hpp"

#include <optional>
#include <vector>

namespace hypercox {

enum class VectorKind { time_like, light_like, space_like };

/// Vector in Minkowski space R^{1,n} with exact field coordinates
/// (x0, ..., xn); the bilinear form is -x0*y0 + sum_{k>=1} xk*yk.
struct LorentzVector {
    std::vector<FieldElement> x;

    LorentzVector() = default;
    explicit LorentzVector(int ambient) : x(ambient) {}
    LorentzVector(std::initializer_list<FieldElement> v) : x(v) {}

    int ambient() const { return int(x.size()); }
    bool is_zero() const;

    LorentzVector operator+(const LorentzVector& o) const;
    LorentzVector operator-(const LorentzVector& o) const;
    LorentzVector operator*(const FieldElement& c) const;
    bool operator==(const LorentzVector& o) const { return x == o.x; }
    bool operator<(const LorentzVector& o) const;

    std::string str() const;
};

FieldElement minkowski_product(const LorentzVector& u, const LorentzVector& v);
FieldElement minkowski_norm2(const LorentzVector& v);

/// Throws std::domain_error on the zero vector.
VectorKind classify_vector(const LorentzVector& v);

/// Canonical projective representative of a future light-like vector: first
/// coordinate scaled to 1 (the first coordinate of a future light ray never
/// vanishes, and 1 is the in-field exact choice).
LorentzVector canonical_ideal(const LorentzVector& v);

/// Canonical representative of a time-like vector: future-directed, and
/// scaled to <x,x> = -1 when sqrt(-<x,x>) exists in the field, otherwise
/// primitive (coefficient denominators cleared, content reduced).
LorentzVector canonical_finite(const LorentzVector& v);

/// Scale to clear coefficient denominators and divide by the content; sign
/// fixed so the first nonzero coordinate is positive unless keep_sign.
LorentzVector primitive_scale(const LorentzVector& v, bool keep_sign = false);

/// Exact linear map of R^{1,n}; the isometry constructors validate
/// G^T J G = J and future-cone preservation, and cache the determinant sign.
struct LorentzMap {
    int ambient = 0;
    std::vector<FieldElement> m;  // row-major ambient x ambient
    int det_sign = 0;             // +1 / -1 for isometries

    static LorentzMap identity(int ambient);
    /// Diagonal matrix (entries given in coordinate order).
    static LorentzMap diagonal(const std::vector<FieldElement>& d);
    static LorentzMap from_rows(const std::vector<std::vector<FieldElement>>& rows);

    const FieldElement& at(int i, int j) const { return m[i * ambient + j]; }
    FieldElement& at(int i, int j) { return m[i * ambient + j]; }

    LorentzVector apply(const LorentzVector& v) const;
    LorentzMap compose(const LorentzMap& o) const;  // (*this) after o
    LorentzMap inverse() const;
    bool operator==(const LorentzMap& o) const { return ambient == o.ambient && m == o.m; }
    bool is_identity() const;

    std::string str() const;
};

/// Exact determinant (Gauss elimination over the field).
FieldElement det(const LorentzMap& g);

/// True iff G^T J G = J exactly and G preserves the future cone.
bool is_isometry(const LorentzMap& g);

/// Computes det_sign; throws std::domain_error if not an isometry.
LorentzMap checked_isometry(LorentzMap g);

/// Reflection x -> x - 2 <x,v>/<v,v> v in the hyperplane of a space-like v.
LorentzMap reflection(const LorentzVector& v);

/// Isometric inclusion of the sum-zero spatial subspace of R^{1,5} into
/// R^{1,4}. Rows of the spatial change of basis are the normalized vectors
/// (1,-1,0,0,0), (1,1,-2,0,0), (1,1,1,-3,0), (1,1,1,1,-4); all normalizing
/// factors stay inside the field.
LorentzVector project_sum_zero_subspace(const LorentzVector& v6);

/// Solve the homogeneous system <x, rows[k]> = 0. Returns a spanning set of
/// the kernel (exact Gauss elimination over the field).
std::vector<LorentzVector> lorentz_kernel(const std::vector<LorentzVector>& rows, int ambient);

/// Rank of the span of the given vectors.
int lorentz_rank(const std::vector<LorentzVector>& vectors);

/// Unique map sending basis[k] to image[k]; throws if basis is singular.
LorentzMap solve_map(const std::vector<LorentzVector>& basis, const std::vector<LorentzVector>& image);

} // namespace hypercox
