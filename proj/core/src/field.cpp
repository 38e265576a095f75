#include "hypercox/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hypercox {

namespace {

int radicand_index(int d) {
    for (int i = 0; i < FieldElement::basis_size; ++i)
        if (FieldElement::radicand[i] == d) return i;
    return -1;
}

struct BasisProduct {
    int index;  // basis slot of sqrt(di)*sqrt(dj)
    int scale;  // integer multiplier, gcd(di, dj)
};

// sqrt(a)*sqrt(b) = g*sqrt(ab/g^2) with g = gcd(a,b); ab/g^2 again divides 30.
const BasisProduct& product_table(int i, int j) {
    static const auto table = [] {
        std::array<std::array<BasisProduct, FieldElement::basis_size>, FieldElement::basis_size> t{};
        for (int i = 0; i < FieldElement::basis_size; ++i)
            for (int j = 0; j < FieldElement::basis_size; ++j) {
                int a = FieldElement::radicand[i], b = FieldElement::radicand[j];
                int g = std::gcd(a, b);
                t[i][j] = {radicand_index(a / g * (b / g)), g};
            }
        return t;
    }();
    return table[i][j];
}

// Enclosure of sqrt(d) with denominator 2^bits: [s, s+1]/2^bits, s = floor(sqrt(d*4^bits)).
QInterval radical_interval(int d, int bits) {
    if (d == 1) return {Rat(1), Rat(1)};
    Int scaled = Int(d) << (2 * bits);
    Int s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    Rat denom = Rat(Int(1) << bits);
    QInterval iv{Rat(s) / denom, Rat(s + 1) / denom};
    iv.lo.canonicalize();
    iv.hi.canonicalize();
    return iv;
}

Rat pow2_inverse(int bits) {
    Rat r(Int(1), Int(1) << bits);
    r.canonicalize();
    return r;
}

QInterval approx_impl(const FieldElement& e, int bits) {
    QInterval acc{e.coeff(0), e.coeff(0)};
    for (int i = 1; i < FieldElement::basis_size; ++i) {
        if (sgn(e.coeff(i)) == 0) continue;
        acc = acc + radical_interval(FieldElement::radicand[i], bits) * e.coeff(i);
    }
    return acc;
}

} // namespace

std::string rat_to_string(const Rat& q) { return q.get_str(); }

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    // mpq_class(str) aborts on bad input, so validate by hand.
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    bool digits = false, slash = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) { digits = true; continue; }
        if (s[i] == '/' && !slash && digits) { slash = true; digits = false; continue; }
        return std::nullopt;
    }
    if (!digits) return std::nullopt;
    Rat q(s);
    if (sgn(q.get_den()) <= 0) return std::nullopt;  // "n/0" or malformed
    q.canonicalize();
    return q;
}

bool rat_is_square(const Rat& q, Rat* root) {
    if (sgn(q) < 0) return false;
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    if (root) {
        Int rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        *root = Rat(rn, rd);
        root->canonicalize();
    }
    return true;
}

std::string interval_to_decimal(const QInterval& iv, int digits) {
    double mid = Rat((iv.lo + iv.hi) / 2).get_d();
    double rad = Rat((iv.hi - iv.lo) / 2).get_d();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, mid);
    std::string out = buf;
    std::snprintf(buf, sizeof buf, "%.1e", rad <= 0 ? 0.0 : rad);
    out += " +/- ";
    out += buf;
    return out;
}

FieldElement::FieldElement() = default;

FieldElement::FieldElement(long v) { c_[0] = v; }

FieldElement::FieldElement(const Rat& v) {
    c_[0] = v;
    c_[0].canonicalize();
}

FieldElement FieldElement::radical_term(const Rat& c, int d) {
    int i = radicand_index(d);
    if (i < 0) throw std::invalid_argument("radical_term: radicand must divide 30 and be squarefree");
    FieldElement e;
    e.c_[i] = c;
    e.c_[i].canonicalize();
    return e;
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return sgn(q) == 0; });
}

bool FieldElement::is_rational() const {
    for (int i = 1; i < basis_size; ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

FieldElement FieldElement::operator-() const {
    FieldElement r;
    for (int i = 0; i < basis_size; ++i) r.c_[i] = -c_[i];
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement r;
    for (int i = 0; i < basis_size; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement r;
    for (int i = 0; i < basis_size; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    FieldElement r;
    for (int i = 0; i < basis_size; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (int j = 0; j < basis_size; ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            const BasisProduct& p = product_table(i, j);
            if (p.scale == 1)
                r.c_[p.index] += c_[i] * o.c_[j];
            else
                r.c_[p.index] += c_[i] * o.c_[j] * p.scale;
        }
    }
    return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    if (o.is_zero()) throw std::domain_error("FieldElement: division by zero");
    if (o.is_rational()) {
        FieldElement r;
        for (int i = 0; i < basis_size; ++i) r.c_[i] = c_[i] / o.c_[0];
        return r;
    }
    // Augmented system [M_o | this], M_o the multiplication-by-o matrix.
    constexpr int n = basis_size;
    std::array<std::array<Rat, n + 1>, n> m;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (sgn(o.c_[i]) == 0) continue;
            const BasisProduct& p = product_table(i, j);
            m[p.index][j] += p.scale == 1 ? o.c_[i] : Rat(o.c_[i] * p.scale);
        }
    }
    for (int i = 0; i < n; ++i) m[i][n] = c_[i];

    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (sgn(m[row][col]) != 0) { pivot = row; break; }
        if (pivot < 0) throw std::logic_error("FieldElement: singular multiplication matrix");
        std::swap(m[col], m[pivot]);
        Rat inv = 1 / m[col][col];
        for (int j = col; j <= n; ++j) m[col][j] *= inv;
        for (int row = 0; row < n; ++row) {
            if (row == col || sgn(m[row][col]) == 0) continue;
            Rat f = m[row][col];
            for (int j = col; j <= n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    FieldElement r;
    for (int i = 0; i < n; ++i) r.c_[i] = m[i][n];
    return r;
}

Sign FieldElement::sign() const {
    if (is_zero()) return Sign::zero;
    if (is_rational()) return sgn(c_[0]) > 0 ? Sign::positive : Sign::negative;
    for (int bits = 64;; bits *= 2) {
        QInterval iv = approx_impl(*this, bits);
        if (sgn(iv.lo) > 0) return Sign::positive;
        if (sgn(iv.hi) < 0) return Sign::negative;
        if (bits > (1 << 20))
            throw std::logic_error("FieldElement::sign: refinement failed to separate from zero");
    }
}

QInterval FieldElement::approx(int precision_bits) const {
    if (precision_bits < 1) throw std::invalid_argument("approx: precision must be >= 1");
    Rat target = pow2_inverse(precision_bits);
    for (int bits = precision_bits + 8;; bits *= 2) {
        QInterval iv = approx_impl(*this, bits);
        if (iv.width() <= target) return iv;
    }
}

double FieldElement::to_double() const {
    QInterval iv = approx(64);
    return Rat((iv.lo + iv.hi) / 2).get_d();
}

int FieldElement::cmp_coeffwise(const FieldElement& o) const {
    for (int i = 0; i < basis_size; ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

namespace {

// Tower view: an element is x + y*sqrt(5) with x, y in Q(sqrt2, sqrt3), each
// of those u + v*sqrt(3) with u, v in Q(sqrt2), each a + b*sqrt(2).
struct Tower1 { Rat a, b; };            // a + b sqrt2
struct Tower2 { Tower1 u, v; };         // u + v sqrt3
struct Tower3 { Tower2 x, y; };         // x + y sqrt5

Tower1 t1_add(const Tower1& p, const Tower1& q) { return {p.a + q.a, p.b + q.b}; }
Tower1 t1_sub(const Tower1& p, const Tower1& q) { return {p.a - q.a, p.b - q.b}; }
Tower1 t1_mul(const Tower1& p, const Tower1& q) { return {p.a * q.a + 2 * p.b * q.b, p.a * q.b + p.b * q.a}; }
Tower1 t1_scale(const Tower1& p, const Rat& c) { return {p.a * c, p.b * c}; }
bool t1_zero(const Tower1& p) { return sgn(p.a) == 0 && sgn(p.b) == 0; }
Tower1 t1_div(const Tower1& p, const Tower1& q) {
    Rat n = q.a * q.a - 2 * q.b * q.b;  // field norm, nonzero for q != 0
    Tower1 conj{q.a, -q.b};
    Tower1 r = t1_mul(p, conj);
    return {r.a / n, r.b / n};
}

Tower2 t2_add(const Tower2& p, const Tower2& q) { return {t1_add(p.u, q.u), t1_add(p.v, q.v)}; }
Tower2 t2_sub(const Tower2& p, const Tower2& q) { return {t1_sub(p.u, q.u), t1_sub(p.v, q.v)}; }
Tower2 t2_mul(const Tower2& p, const Tower2& q) {
    return {t1_add(t1_mul(p.u, q.u), t1_scale(t1_mul(p.v, q.v), 3)),
            t1_add(t1_mul(p.u, q.v), t1_mul(p.v, q.u))};
}
Tower2 t2_scale(const Tower2& p, const Rat& c) { return {t1_scale(p.u, c), t1_scale(p.v, c)}; }
bool t2_zero(const Tower2& p) { return t1_zero(p.u) && t1_zero(p.v); }
Tower2 t2_div(const Tower2& p, const Tower2& q) {
    Tower1 n = t1_sub(t1_mul(q.u, q.u), t1_scale(t1_mul(q.v, q.v), 3));
    Tower2 conj{q.u, t1_scale(q.v, -1)};
    Tower2 r = t2_mul(p, conj);
    return {t1_div(r.u, n), t1_div(r.v, n)};
}

std::optional<Rat> q_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    Rat r;
    if (!rat_is_square(q, &r)) return std::nullopt;
    return r;
}

// sqrt in Q(sqrt2): solves (a + b sqrt2)^2 = t.
std::optional<Tower1> t1_sqrt(const Tower1& t) {
    if (sgn(t.b) == 0) {
        if (auto r = q_sqrt(t.a)) return Tower1{*r, 0};
        if (auto r = q_sqrt(t.a / 2)) return Tower1{0, *r};
        return std::nullopt;
    }
    auto n = q_sqrt(t.a * t.a - 2 * t.b * t.b);
    if (!n) return std::nullopt;
    for (int s = 0; s < 2; ++s) {
        Rat half = (t.a + (s ? -*n : *n)) / 2;
        if (auto p = q_sqrt(half)) {
            if (sgn(*p) == 0) continue;
            return Tower1{*p, t.b / (2 * *p)};
        }
    }
    return std::nullopt;
}

// sqrt in Q(sqrt2, sqrt3): needs the relative norm to be a square one level down.
std::optional<Tower2> t2_sqrt(const Tower2& t) {
    if (t1_zero(t.v)) {
        if (auto r = t1_sqrt(t.u)) return Tower2{*r, {0, 0}};
        if (auto r = t1_sqrt(t1_scale(t.u, Rat(1, 3)))) return Tower2{{0, 0}, *r};
        return std::nullopt;
    }
    auto n = t1_sqrt(t1_sub(t1_mul(t.u, t.u), t1_scale(t1_mul(t.v, t.v), 3)));
    if (!n) return std::nullopt;
    for (int s = 0; s < 2; ++s) {
        Tower1 cand = s ? t1_sub(t.u, *n) : t1_add(t.u, *n);
        if (auto p = t1_sqrt(t1_scale(cand, Rat(1, 2)))) {
            if (t1_zero(*p)) continue;
            Tower1 q = t1_div(t1_scale(t.v, Rat(1, 2)), *p);
            return Tower2{*p, q};
        }
    }
    return std::nullopt;
}

std::optional<Tower3> t3_sqrt(const Tower3& t) {
    if (t2_zero(t.y)) {
        if (auto r = t2_sqrt(t.x)) return Tower3{*r, {{0, 0}, {0, 0}}};
        if (auto r = t2_sqrt(t2_scale(t.x, Rat(1, 5)))) return Tower3{{{0, 0}, {0, 0}}, *r};
        return std::nullopt;
    }
    auto n = t2_sqrt(t2_sub(t2_mul(t.x, t.x), t2_scale(t2_mul(t.y, t.y), 5)));
    if (!n) return std::nullopt;
    for (int s = 0; s < 2; ++s) {
        Tower2 cand = s ? t2_sub(t.x, *n) : t2_add(t.x, *n);
        if (auto p = t2_sqrt(t2_scale(cand, Rat(1, 2)))) {
            if (t2_zero(*p)) continue;
            Tower2 q = t2_div(t2_scale(t.y, Rat(1, 2)), *p);
            return Tower3{*p, q};
        }
    }
    return std::nullopt;
}

// Basis order: {1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30}.
Tower3 to_tower(const FieldElement& e) {
    return {{{e.coeff(0), e.coeff(1)}, {e.coeff(2), e.coeff(4)}},
            {{e.coeff(3), e.coeff(5)}, {e.coeff(6), e.coeff(7)}}};
}

FieldElement from_tower(const Tower3& t) {
    FieldElement e;
    e.coeff(0) = t.x.u.a; e.coeff(1) = t.x.u.b;
    e.coeff(2) = t.x.v.a; e.coeff(4) = t.x.v.b;
    e.coeff(3) = t.y.u.a; e.coeff(5) = t.y.u.b;
    e.coeff(6) = t.y.v.a; e.coeff(7) = t.y.v.b;
    for (int i = 0; i < FieldElement::basis_size; ++i) e.coeff(i).canonicalize();
    return e;
}

} // namespace

std::optional<FieldElement> FieldElement::sqrt() const {
    Sign s = sign();
    if (s == Sign::negative) throw std::domain_error("FieldElement::sqrt: negative input");
    if (s == Sign::zero) return FieldElement();

    if (is_rational()) {
        for (int d : radicand) {
            Rat r;
            if (rat_is_square(c_[0] / d, &r))
                return radical_term(r, d);
        }
        return std::nullopt;
    }
    auto t = t3_sqrt(to_tower(*this));
    if (!t) return std::nullopt;
    FieldElement root = from_tower(*t);
    if (root.sign() == Sign::negative) root = -root;
    if (root * root != *this) throw std::logic_error("FieldElement::sqrt: tower descent inconsistency");
    return root;
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eof() { skip_ws(); return i >= s.size(); }
    bool peek(char c) { skip_ws(); return i < s.size() && s[i] == c; }
    bool eat(char c) { if (peek(c)) { ++i; return true; } return false; }

    std::optional<int> parse_radical() {
        skip_ws();
        if (s.compare(i, 4, "sqrt") != 0) return std::nullopt;
        size_t j = i + 4;
        int d = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            d = d * 10 + (s[j++] - '0');
        if (radicand_index(d) < 0 || d == 1) return std::nullopt;
        i = j;
        return d;
    }

    std::optional<Rat> parse_rational() {
        skip_ws();
        bool paren = eat('(');
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        auto q = rat_from_string(s.substr(start, i - start));
        if (!q) return std::nullopt;
        if (paren && !eat(')')) return std::nullopt;
        return q;
    }

    // term ::= rational ('*' radical)? | radical
    std::optional<FieldElement> parse_term() {
        skip_ws();
        if (i < s.size() && (s[i] == 's' || s[i] == '(' || std::isdigit(static_cast<unsigned char>(s[i])) ||
                             s[i] == '+' || s[i] == '-')) {
            if (s[i] == 's') {
                auto d = parse_radical();
                if (!d) return std::nullopt;
                return FieldElement::radical_term(1, *d);
            }
            auto q = parse_rational();
            if (!q) return std::nullopt;
            if (eat('*')) {
                auto d = parse_radical();
                if (!d) return std::nullopt;
                return FieldElement::radical_term(*q, *d);
            }
            return FieldElement(*q);
        }
        return std::nullopt;
    }
};

} // namespace

std::optional<FieldElement> FieldElement::parse(const std::string& text) {
    Parser p{text};
    if (p.eof()) return std::nullopt;
    bool negate = false;
    if (p.eat('-')) negate = true;
    else p.eat('+');
    auto first = p.parse_term();
    if (!first) return std::nullopt;
    FieldElement acc = negate ? -*first : *first;
    while (!p.eof()) {
        bool minus;
        if (p.eat('+')) minus = false;
        else if (p.eat('-')) minus = true;
        else return std::nullopt;
        auto t = p.parse_term();
        if (!t) return std::nullopt;
        acc = minus ? acc - *t : acc + *t;
    }
    return acc;
}

std::string FieldElement::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = 0; i < basis_size; ++i) {
        if (sgn(c_[i]) == 0) continue;
        bool neg = sgn(c_[i]) < 0;
        Rat mag = neg ? Rat(-c_[i]) : c_[i];
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (i == 0) {
            out += rat_to_string(mag);
        } else {
            std::string rad = "sqrt" + std::to_string(radicand[i]);
            if (mag == 1) {
                out += rad;
            } else if (mag.get_den() == 1) {
                out += rat_to_string(mag) + "*" + rad;
            } else {
                out += "(" + rat_to_string(mag) + ")*" + rad;
            }
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.str(); }

} // namespace hypercox
