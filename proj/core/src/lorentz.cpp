#include "hypercox/lorentz.hpp"

#include <sstream>
#include <stdexcept>

namespace hypercox {

namespace {

void require_same_ambient(const LorentzVector& u, const LorentzVector& v) {
    if (u.ambient() != v.ambient())
        throw std::invalid_argument("lorentz: dimension mismatch");
}

// Row echelon form over the field, in place. Returns pivot columns.
std::vector<int> echelon(std::vector<std::vector<FieldElement>>& rows) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    int ncols = int(rows[0].size());
    int r = 0;
    for (int c = 0; c < ncols && r < int(rows.size()); ++c) {
        int p = -1;
        for (int i = r; i < int(rows.size()); ++i)
            if (!rows[i][c].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(rows[r], rows[p]);
        FieldElement inv = FieldElement(1) / rows[r][c];
        for (int j = c; j < ncols; ++j) rows[r][j] *= inv;
        for (int i = 0; i < int(rows.size()); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            FieldElement f = rows[i][c];
            for (int j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

bool LorentzVector::is_zero() const {
    for (const auto& c : x)
        if (!c.is_zero()) return false;
    return true;
}

LorentzVector LorentzVector::operator+(const LorentzVector& o) const {
    require_same_ambient(*this, o);
    LorentzVector r(ambient());
    for (int i = 0; i < ambient(); ++i) r.x[i] = x[i] + o.x[i];
    return r;
}

LorentzVector LorentzVector::operator-(const LorentzVector& o) const {
    require_same_ambient(*this, o);
    LorentzVector r(ambient());
    for (int i = 0; i < ambient(); ++i) r.x[i] = x[i] - o.x[i];
    return r;
}

LorentzVector LorentzVector::operator*(const FieldElement& c) const {
    LorentzVector r(ambient());
    for (int i = 0; i < ambient(); ++i) r.x[i] = x[i] * c;
    return r;
}

bool LorentzVector::operator<(const LorentzVector& o) const {
    if (ambient() != o.ambient()) return ambient() < o.ambient();
    for (int i = 0; i < ambient(); ++i) {
        int c = x[i].cmp_coeffwise(o.x[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string LorentzVector::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < ambient(); ++i) {
        if (i) os << ", ";
        os << x[i];
    }
    os << ")";
    return os.str();
}

FieldElement minkowski_product(const LorentzVector& u, const LorentzVector& v) {
    require_same_ambient(u, v);
    FieldElement s = -(u.x[0] * v.x[0]);
    for (int i = 1; i < u.ambient(); ++i) s += u.x[i] * v.x[i];
    return s;
}

FieldElement minkowski_norm2(const LorentzVector& v) { return minkowski_product(v, v); }

VectorKind classify_vector(const LorentzVector& v) {
    if (v.is_zero()) throw std::domain_error("classify_vector: zero vector");
    switch (minkowski_norm2(v).sign()) {
        case Sign::negative: return VectorKind::time_like;
        case Sign::zero: return VectorKind::light_like;
        default: return VectorKind::space_like;
    }
}

LorentzVector canonical_ideal(const LorentzVector& v) {
    if (classify_vector(v) != VectorKind::light_like)
        throw std::domain_error("canonical_ideal: not light-like");
    LorentzVector w = v;
    if (w.x[0].is_zero()) throw std::domain_error("canonical_ideal: degenerate light-like vector");
    if (w.x[0].is_negative()) w = w * FieldElement(-1);
    FieldElement inv = FieldElement(1) / w.x[0];
    return w * inv;
}

LorentzVector primitive_scale(const LorentzVector& v, bool keep_sign) {
    // content = gcd of all coefficient numerators / lcm of denominators
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& e : v.x)
        for (int i = 0; i < FieldElement::basis_size; ++i) {
            const Rat& q = e.coeff(i);
            if (sgn(q) == 0) continue;
            Int n = abs(q.get_num());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
            Int d = q.get_den();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        }
    if (num_gcd == 0) return v;  // zero vector
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    LorentzVector w = v * FieldElement(scale);
    if (!keep_sign) {
        for (const auto& e : w.x) {
            if (e.is_zero()) continue;
            if (e.sign() == Sign::negative) w = w * FieldElement(-1);
            break;
        }
    }
    return w;
}

LorentzVector canonical_finite(const LorentzVector& v) {
    if (classify_vector(v) != VectorKind::time_like)
        throw std::domain_error("canonical_finite: not time-like");
    LorentzVector w = v;
    if (w.x[0].is_negative()) w = w * FieldElement(-1);
    FieldElement n2 = -minkowski_norm2(w);
    if (auto root = n2.sqrt()) {
        FieldElement inv = FieldElement(1) / *root;
        return w * inv;
    }
    return primitive_scale(w, /*keep_sign=*/true);
}

LorentzMap LorentzMap::identity(int ambient) {
    LorentzMap g;
    g.ambient = ambient;
    g.m.assign(ambient * ambient, FieldElement(0));
    for (int i = 0; i < ambient; ++i) g.at(i, i) = FieldElement(1);
    g.det_sign = 1;
    return g;
}

LorentzMap LorentzMap::diagonal(const std::vector<FieldElement>& d) {
    LorentzMap g;
    g.ambient = int(d.size());
    g.m.assign(g.ambient * g.ambient, FieldElement(0));
    for (int i = 0; i < g.ambient; ++i) g.at(i, i) = d[i];
    return g;
}

LorentzMap LorentzMap::from_rows(const std::vector<std::vector<FieldElement>>& rows) {
    LorentzMap g;
    g.ambient = int(rows.size());
    g.m.reserve(g.ambient * g.ambient);
    for (const auto& r : rows) {
        if (int(r.size()) != g.ambient) throw std::invalid_argument("from_rows: ragged matrix");
        for (const auto& e : r) g.m.push_back(e);
    }
    return g;
}

LorentzVector LorentzMap::apply(const LorentzVector& v) const {
    if (v.ambient() != ambient) throw std::invalid_argument("LorentzMap::apply: dimension mismatch");
    LorentzVector r(ambient);
    for (int i = 0; i < ambient; ++i) {
        FieldElement s;
        for (int j = 0; j < ambient; ++j) {
            if (at(i, j).is_zero() || v.x[j].is_zero()) continue;
            s += at(i, j) * v.x[j];
        }
        r.x[i] = s;
    }
    return r;
}

LorentzMap LorentzMap::compose(const LorentzMap& o) const {
    if (ambient != o.ambient) throw std::invalid_argument("LorentzMap::compose: dimension mismatch");
    LorentzMap r;
    r.ambient = ambient;
    r.m.assign(ambient * ambient, FieldElement(0));
    for (int i = 0; i < ambient; ++i)
        for (int k = 0; k < ambient; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < ambient; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += at(i, k) * o.at(k, j);
            }
        }
    if (det_sign != 0 && o.det_sign != 0) r.det_sign = det_sign * o.det_sign;
    return r;
}

LorentzMap LorentzMap::inverse() const {
    int n = ambient;
    std::vector<std::vector<FieldElement>> aug(n, std::vector<FieldElement>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = at(i, j);
        aug[i][n + i] = FieldElement(1);
    }
    auto pivots = echelon(aug);
    if (int(pivots.size()) != n) throw std::domain_error("LorentzMap::inverse: singular matrix");
    LorentzMap r;
    r.ambient = n;
    r.m.assign(n * n, FieldElement(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug[i][n + j];
    r.det_sign = det_sign;
    return r;
}

bool LorentzMap::is_identity() const {
    for (int i = 0; i < ambient; ++i)
        for (int j = 0; j < ambient; ++j) {
            if (i == j && at(i, j) != FieldElement(1)) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

std::string LorentzMap::str() const {
    std::ostringstream os;
    for (int i = 0; i < ambient; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < ambient; ++j) {
            if (j) os << ", ";
            os << at(i, j);
        }
    }
    os << "]";
    return os.str();
}

FieldElement det(const LorentzMap& g) {
    int n = g.ambient;
    std::vector<std::vector<FieldElement>> a(n, std::vector<FieldElement>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = g.at(i, j);
    FieldElement d(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) { p = i; break; }
        if (p < 0) return FieldElement(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        FieldElement inv = FieldElement(1) / a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            FieldElement f = a[i][c] * inv;
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

bool is_isometry(const LorentzMap& g) {
    int n = g.ambient;
    // G^T J G == J, i.e. <G e_i, G e_j> = J_ij
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            FieldElement s = -(g.at(0, i) * g.at(0, j));
            for (int k = 1; k < n; ++k) s += g.at(k, i) * g.at(k, j);
            FieldElement expect(0);
            if (i == j) expect = FieldElement(i == 0 ? -1 : 1);
            if (s != expect) return false;
        }
    return g.at(0, 0).is_positive();  // future cone: image of e0 stays future
}

LorentzMap checked_isometry(LorentzMap g) {
    if (!is_isometry(g)) throw std::domain_error("checked_isometry: not a Lorentz isometry");
    FieldElement d = det(g);
    if (d == FieldElement(1)) g.det_sign = 1;
    else if (d == FieldElement(-1)) g.det_sign = -1;
    else throw std::logic_error("checked_isometry: isometry determinant not +-1");
    return g;
}

LorentzMap reflection(const LorentzVector& v) {
    if (classify_vector(v) != VectorKind::space_like)
        throw std::domain_error("reflection: mirror normal must be space-like");
    int n = v.ambient();
    FieldElement q = minkowski_norm2(v);
    LorentzMap g = LorentzMap::identity(n);
    // x - 2 <x,v>/<v,v> v ; column j of the correction is 2 v_i (Jv)_j / q
    FieldElement two_over_q = FieldElement(2) / q;
    for (int i = 0; i < n; ++i) {
        if (v.x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (v.x[j].is_zero()) continue;
            FieldElement jv = j == 0 ? -v.x[j] : v.x[j];
            g.at(i, j) -= two_over_q * v.x[i] * jv;
        }
    }
    g.det_sign = -1;
    return g;
}

LorentzVector project_sum_zero_subspace(const LorentzVector& v6) {
    if (v6.ambient() != 6)
        throw std::invalid_argument("project_sum_zero_subspace: expected ambient 6");
    FieldElement sum;
    for (int i = 1; i < 6; ++i) sum += v6.x[i];
    if (!sum.is_zero())
        throw std::domain_error("project_sum_zero_subspace: spatial part not sum-zero");

    static const std::vector<std::vector<Rat>> raw = {
        {1, -1, 0, 0, 0},
        {1, 1, -2, 0, 0},
        {1, 1, 1, -3, 0},
        {1, 1, 1, 1, -4},
    };
    // squared norms 2, 6, 12, 20; the normalizers sqrt2, sqrt6, 2 sqrt3, 2 sqrt5
    static const std::vector<FieldElement> inv_norm = {
        FieldElement(Rat(1, 2)) * FieldElement::sqrt2(),
        FieldElement(Rat(1, 6)) * FieldElement::sqrt6(),
        FieldElement(Rat(1, 6)) * FieldElement::sqrt3(),
        FieldElement(Rat(1, 10)) * FieldElement::sqrt5(),
    };
    LorentzVector out(5);
    out.x[0] = v6.x[0];
    for (int k = 0; k < 4; ++k) {
        FieldElement dot;
        for (int i = 0; i < 5; ++i) {
            if (sgn(raw[k][i]) == 0) continue;
            dot += FieldElement(raw[k][i]) * v6.x[i + 1];
        }
        out.x[k + 1] = dot * inv_norm[k];
    }
    return out;
}

std::vector<LorentzVector> lorentz_kernel(const std::vector<LorentzVector>& rows, int ambient) {
    std::vector<std::vector<FieldElement>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.ambient() != ambient) throw std::invalid_argument("lorentz_kernel: dimension mismatch");
        std::vector<FieldElement> row(ambient);
        row[0] = -r.x[0];  // <x, r> = -x0 r0 + sum xk rk
        for (int i = 1; i < ambient; ++i) row[i] = r.x[i];
        a.push_back(std::move(row));
    }
    auto pivots = echelon(a);
    std::vector<bool> is_pivot(ambient, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<LorentzVector> basis;
    for (int c = 0; c < ambient; ++c) {
        if (is_pivot[c]) continue;
        LorentzVector v(ambient);
        v.x[c] = FieldElement(1);
        for (size_t r = 0; r < pivots.size(); ++r) v.x[pivots[r]] = -a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

int lorentz_rank(const std::vector<LorentzVector>& vectors) {
    if (vectors.empty()) return 0;
    std::vector<std::vector<FieldElement>> a;
    a.reserve(vectors.size());
    for (const auto& v : vectors) a.push_back(v.x);
    return int(echelon(a).size());
}

LorentzMap solve_map(const std::vector<LorentzVector>& basis, const std::vector<LorentzVector>& image) {
    if (basis.empty() || basis.size() != image.size())
        throw std::invalid_argument("solve_map: need equally many basis and image vectors");
    int n = basis[0].ambient();
    if (int(basis.size()) != n) throw std::invalid_argument("solve_map: need ambient-many vectors");
    // G * B = C with columns basis[k], image[k]:  G = C B^{-1}
    LorentzMap b, c;
    b.ambient = c.ambient = n;
    b.m.assign(n * n, FieldElement(0));
    c.m.assign(n * n, FieldElement(0));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            b.at(i, k) = basis[k].x[i];
            c.at(i, k) = image[k].x[i];
        }
    return c.compose(b.inverse());
}

} // namespace hypercox
