#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypercox/field.hpp"

#include <cmath>
#include <random>

using hypercox::FieldElement;
using hypercox::Rat;
using hypercox::Sign;

namespace {

FieldElement elem(const std::string& s) {
    auto e = FieldElement::parse(s);
    REQUIRE(e.has_value());
    return *e;
}

// Uniform small random elements; the generator is seeded per test for reproducibility.
FieldElement random_element(std::mt19937& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (;;) {
        FieldElement e;
        for (int i = 0; i < FieldElement::basis_size; ++i) {
            Rat q(num(rng), den(rng));
            q.canonicalize();
            e.coeff(i) = q;
        }
        if (!nonzero || !e.is_zero()) return e;
    }
}

double embed(const FieldElement& e) {
    double v = 0;
    for (int i = 0; i < FieldElement::basis_size; ++i)
        v += e.coeff(i).get_d() * std::sqrt(double(FieldElement::radicand[i]));
    return v;
}

} // namespace

TEST_CASE("basis products follow the radical multiplication table") {
    CHECK(FieldElement::sqrt2() * FieldElement::sqrt3() == FieldElement::sqrt6());
    CHECK(FieldElement::sqrt6() * FieldElement::sqrt10() == 2 * FieldElement::sqrt15());
    CHECK(FieldElement::sqrt2() * FieldElement::sqrt2() == FieldElement(2));
    CHECK(FieldElement::sqrt15() * FieldElement::sqrt10() == 5 * FieldElement::sqrt6());
    CHECK(FieldElement::sqrt30() * FieldElement::sqrt30() == FieldElement(30));
}

TEST_CASE("division inverts multiplication") {
    FieldElement third_rt15 = elem("(1/3)*sqrt15");
    FieldElement inv = FieldElement(1) / third_rt15;
    // independent check first: it really is an inverse
    CHECK(inv * third_rt15 == FieldElement(1));
    CHECK(inv == elem("(1/5)*sqrt15"));

    CHECK_THROWS_AS(FieldElement(1) / FieldElement(0), std::domain_error);
}

TEST_CASE("like terms add as rationals") {
    CHECK(elem("(1/3)*sqrt15") + elem("(1/5)*sqrt15") == elem("(8/15)*sqrt15"));
}

TEST_CASE("sign determination matches the real embedding") {
    FieldElement a = elem("sqrt2 + sqrt3 - sqrt5");
    CHECK(embed(a) > 0.9);  // ~0.9099
    CHECK(a.sign() == Sign::positive);

    CHECK(FieldElement(0).sign() == Sign::zero);

    FieldElement b = elem("3 - 2*sqrt2");
    CHECK(embed(b) > 0.17);  // ~0.1716
    CHECK(b.sign() == Sign::positive);

    CHECK((-a).sign() == Sign::negative);
    // nearly-cancelling combination still decided exactly
    FieldElement tight = elem("sqrt2") * elem("sqrt3") - elem("sqrt6");
    CHECK(tight.sign() == Sign::zero);
}

TEST_CASE("square roots inside the field") {
    auto r1 = elem("8/3").sqrt();
    REQUIRE(r1.has_value());
    CHECK(*r1 * *r1 == elem("8/3"));
    CHECK(*r1 == elem("(2/3)*sqrt6"));

    auto r2 = elem("8/5").sqrt();
    REQUIRE(r2.has_value());
    CHECK(*r2 == elem("(2/5)*sqrt10"));

    CHECK_FALSE(elem("7").sqrt().has_value());
    CHECK_THROWS_AS(elem("-2").sqrt(), std::domain_error);

    // non-rational square: sqrt(7 + 4*sqrt3) = 2 + sqrt3
    auto r3 = elem("7 + 4*sqrt3").sqrt();
    REQUIRE(r3.has_value());
    CHECK(*r3 == elem("2 + sqrt3"));
}

TEST_CASE("sqrt of squares recovers absolute value") {
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
        FieldElement a = random_element(rng, true);
        auto r = (a * a).sqrt();
        REQUIRE(r.has_value());
        FieldElement expect = a.sign() == Sign::negative ? -a : a;
        CHECK(*r == expect);
    }
}

TEST_CASE("approx yields enclosing intervals of requested width") {
    FieldElement a = FieldElement::sqrt2();
    auto iv = a.approx(20);
    CHECK(iv.width() <= Rat(1, 1 << 20));
    CHECK(iv.lo.get_d() <= 1.41421357);
    CHECK(iv.hi.get_d() >= 1.41421356);

    auto z = FieldElement(0).approx(10);
    CHECK(z.lo == 0);
    CHECK(z.hi == 0);

    FieldElement b = elem("2 + sqrt3");
    auto iv2 = b.approx(10);
    CHECK(iv2.width() <= Rat(1, 1 << 10));
    double v = embed(b);
    CHECK(iv2.lo.get_d() <= v);
    CHECK(iv2.hi.get_d() >= v);
}

TEST_CASE("interval arithmetic respects field operations") {
    std::mt19937 rng(11);
    for (int k = 0; k < 100; ++k) {
        FieldElement a = random_element(rng), b = random_element(rng);
        for (int p : {8, 24, 53}) {
            auto ia = a.approx(p), ib = b.approx(p), is = (a + b).approx(p);
            // sum interval and summed intervals must overlap around the true value
            CHECK(is.lo <= ia.hi + ib.hi);
            CHECK(is.hi >= ia.lo + ib.lo);
        }
    }
}

TEST_CASE("field axioms hold on randomized elements") {
    std::mt19937 rng(42);
    for (int k = 0; k < 1000; ++k) {
        FieldElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        FieldElement nz = random_element(rng, true);
        CHECK(nz * (FieldElement(1) / nz) == FieldElement(1));
    }
}

TEST_CASE("sign is multiplicative and positive on squares") {
    std::mt19937 rng(13);
    for (int k = 0; k < 300; ++k) {
        FieldElement a = random_element(rng, true), b = random_element(rng, true);
        CHECK((a * a).sign() == Sign::positive);
        CHECK(int((a * b).sign()) == int(a.sign()) * int(b.sign()));
    }
}

TEST_CASE("grammar round-trips") {
    CHECK(elem("(1/3)*sqrt15").str() == "(1/3)*sqrt15");
    CHECK(elem("0").str() == "0");
    CHECK(elem("1 - sqrt2").str() == "1 - sqrt2");
    CHECK(elem("-5/3").str() == "-5/3");
    CHECK(FieldElement::parse("sqrt7") == std::nullopt);
    CHECK(FieldElement::parse("1 +") == std::nullopt);
    CHECK(FieldElement::parse("(2/0)") == std::nullopt);

    std::mt19937 rng(3);
    for (int k = 0; k < 200; ++k) {
        FieldElement a = random_element(rng);
        auto back = FieldElement::parse(a.str());
        REQUIRE(back.has_value());
        CHECK(*back == a);
    }
}
