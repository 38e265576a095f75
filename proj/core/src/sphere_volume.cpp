#include "hypercox/sphere_volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace hypercox {

namespace {

using Vec4 = std::array<double, 4>;

double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec4 sub(const Vec4& a, const Vec4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }

struct Cell {
    std::array<Vec4, 4> v;
    double volume;  // Euclidean 3-volume of the simplex
};

double simplex_volume(const std::array<Vec4, 4>& v) {
    Vec4 e1 = sub(v[1], v[0]), e2 = sub(v[2], v[0]), e3 = sub(v[3], v[0]);
    double g11 = dot(e1, e1), g12 = dot(e1, e2), g13 = dot(e1, e3);
    double g22 = dot(e2, e2), g23 = dot(e2, e3), g33 = dot(e3, e3);
    double det = g11 * (g22 * g33 - g23 * g23) - g12 * (g12 * g33 - g23 * g13) +
                 g13 * (g12 * g23 - g22 * g13);
    return det <= 0 ? 0.0 : std::sqrt(det) / 6.0;
}

// Cholesky realization of the Gram matrix: rows are vectors in R^4.
std::array<Vec4, 4> realize(const std::array<std::array<double, 4>, 4>& g) {
    std::array<Vec4, 4> l{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0) throw std::domain_error("spherical volume: Gram matrix not positive definite");
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

} // namespace

VolumeInterval spherical_tetrahedron_volume(const std::array<std::array<double, 4>, 4>& gram,
                                            const SphericalVolumeOptions& opt) {
    std::array<Vec4, 4> t = realize(gram);

    // transversal hyperplane {y . w = 1} through the cone
    Vec4 w{0, 0, 0, 0};
    for (const auto& ti : t) {
        double n = std::sqrt(dot(ti, ti));
        for (int k = 0; k < 4; ++k) w[k] += ti[k] / n;
    }
    double wnorm = std::sqrt(dot(w, w));
    std::array<Vec4, 4> y;
    for (int i = 0; i < 4; ++i) {
        double c = dot(t[i], w);
        if (c <= 0) throw std::domain_error("spherical volume: cone is not salient");
        for (int k = 0; k < 4; ++k) y[i][k] = t[i][k] / c;
    }

    // integral of |y|^-4 / |w| over the section simplex; solid angle element
    // on S^3 is (y^.n^) dA / |y|^3 with cos-factor 1/(|y||w|)
    auto f = [](const Vec4& p) {
        double q = dot(p, p);
        return 1.0 / (q * q);
    };

    double total_volume = simplex_volume(y);
    if (total_volume <= 0) throw std::domain_error("spherical volume: degenerate section");

    double acc = 0, err = 0;
    long cells_done = 0;
    bool budget_blown = false;
    std::vector<Cell> stack{{y, total_volume}};
    const double target = opt.tolerance * wnorm;  // tolerance in integral units

    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        if (++cells_done > opt.max_cells) { budget_blown = true; break; }

        // q lower bound on the cell: min pairwise dot of the corners
        double qmin = dot(c.v[0], c.v[0]);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) qmin = std::min(qmin, dot(c.v[i], c.v[j]));

        Vec4 m{0, 0, 0, 0};
        for (const auto& p : c.v)
            for (int k = 0; k < 4; ++k) m[k] += p[k] / 4;
        double rho2 = 0;
        for (const auto& p : c.v) rho2 = std::max(rho2, dot(sub(p, m), sub(p, m)));

        // midpoint rule with second-order remainder: |Hess| <= 28 / qmin^3
        double rem = qmin > 0 ? 14.0 * rho2 * c.volume / (qmin * qmin * qmin)
                              : std::numeric_limits<double>::infinity();
        if (rem <= target * (c.volume / total_volume)) {
            acc += c.volume * f(m);
            err += rem;
            continue;
        }
        // bisect the longest edge
        int bi = 0, bj = 1;
        double best = -1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double d2 = dot(sub(c.v[i], c.v[j]), sub(c.v[i], c.v[j]));
                if (d2 > best) { best = d2; bi = i; bj = j; }
            }
        Vec4 mid;
        for (int k = 0; k < 4; ++k) mid[k] = (c.v[bi][k] + c.v[bj][k]) / 2;
        Cell a = c, b = c;
        a.v[bj] = mid;
        b.v[bi] = mid;
        a.volume = simplex_volume(a.v);
        b.volume = simplex_volume(b.v);
        stack.push_back(a);
        stack.push_back(b);
    }

    if (opt.used_monte_carlo) *opt.used_monte_carlo = budget_blown;
    if (!budget_blown) {
        double value = acc / wnorm;
        double radius = err / wnorm;
        radius = radius * (1 + 1e-9) + 1e-9 * std::abs(value) + 1e-12;
        return {value - radius, value + radius};
    }

    // Monte-Carlo fallback: fraction of Gaussian samples with nonnegative
    // cone coordinates; the coordinate matrix is inverted once
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0, 1);
    double inv[4][4], mat[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) mat[i][j] = j < 4 ? t[j][i] : (j - 4 == i ? 1.0 : 0.0);
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(mat[r][c]) > std::abs(mat[p][c])) p = r;
        std::swap(mat[p], mat[c]);
        double d = mat[c][c];
        for (int j = 0; j < 8; ++j) mat[c][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            double fpiv = mat[r][c];
            for (int j = 0; j < 8; ++j) mat[r][j] -= fpiv * mat[c][j];
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = mat[i][4 + j];

    long hits = 0;
    for (long s = 0; s < opt.mc_samples; ++s) {
        Vec4 x{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        bool inside = true;
        for (int i = 0; i < 4 && inside; ++i) {
            double coord = 0;
            for (int j = 0; j < 4; ++j) coord += inv[i][j] * x[j];
            inside = coord >= 0;
        }
        hits += inside;
    }
    double p = double(hits) / double(opt.mc_samples);
    double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / double(opt.mc_samples));
    double two_pi2 = 2 * M_PI * M_PI;
    return {(p - 4 * sigma) * two_pi2, (p + 4 * sigma) * two_pi2};
}

} // namespace hypercox
