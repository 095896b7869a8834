#include <doctest.h>

#include <random>

#include "qtor/qorder.hpp"

using namespace qtor;

namespace {

BinForm bf(std::vector<long> coeffs_low_to_high) {
    std::vector<Int> t;
    for (long c : coeffs_low_to_high) t.emplace_back(c);
    return BinForm(std::move(t));
}

BinForm random_form(std::mt19937_64& rng, unsigned n, long height) {
    std::uniform_int_distribution<long> dist(-height, height);
    BinForm f(n);
    for (unsigned i = 0; i <= n; ++i) f.coeff(i) = dist(rng);
    return f;
}

}  // namespace

TEST_CASE("resultants of the worked pairs, d = -23") {
    QuadForm q1(1, 1, 6), q2(2, 1, 3), q3(2, -1, 3);
    CHECK(resultant(q1, bf({-1, 0, 0, 0})) == 1);             // -y^3
    CHECK(resultant(q2, bf({1, -1, 0, -1})) == 1);            // -x^3 - xy^2 + y^3
    CHECK(resultant(q3, bf({-1, -1, 0, -1})) == 1);           // -x^3 - xy^2 - y^3
}

TEST_CASE("resultants of the worked pairs, d = -47") {
    CHECK(resultant(QuadForm(1, 1, 12), bf({-1, 0, 0, 0, 0, 0})) == 1);
    CHECK(resultant(QuadForm(2, 1, 6), bf({-1, -1, 1, -3, 0, -1})) == 1);
    CHECK(resultant(QuadForm(2, -1, 6), bf({1, -1, -1, -3, 0, -1})) == 1);
    CHECK(resultant(QuadForm(3, 1, 4), bf({1, 1, 0, -1, -1, -1})) == 1);
    CHECK(resultant(QuadForm(3, -1, 4), bf({-1, 1, 0, -1, 1, -1})) == 1);
}

TEST_CASE("resultants: d = 20 and Q(i) families") {
    CHECK(resultant(QuadForm(1, 0, -5), bf({-9, -4, 0, 0})) == 1);  // -4xy^2 - 9y^3
    CHECK(resultant(QuadForm(1, 0, -5), bf({1, 0, 0, 0})) == 1);    // y^3

    QuadForm qi(1, 0, 1);
    for (unsigned n = 1; n <= 4; ++n) {
        BinForm x2n = BinForm::monomial(2 * n, 2 * n);
        BinForm xyn = BinForm::monomial(2 * n, n);
        CHECK(abs(resultant(qi, x2n)) == 1);
        CHECK(abs(resultant(qi, xyn)) == 1);
    }
    CHECK(resultant(qi, BinForm::monomial(3, 3)) == 1);  // x^3
}

TEST_CASE("resultant degenerate and small degrees") {
    QuadForm q(1, 1, 6);
    /* res(q, y) = a, res(q, x) = c */
    CHECK(resultant(q, bf({1, 0})) == 1);
    CHECK(resultant(q, bf({0, 1})) == 6);
    CHECK(resultant(QuadForm(2, 1, 3), bf({1, 0})) == 2);
    /* common projective root makes the resultant vanish */
    QuadForm q20(1, 0, -5);
    /* (x - ...) no rational root; use q*linear which shares both roots */
    BinForm prod = BinForm::from_quadform(q20) * bf({1, 1});
    CHECK(resultant(q20, prod) == 0);
}

TEST_CASE("resultant is the norm of the evaluation over a^n") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long> dist(-12, 12);
    int done = 0;
    while (done < 500) {
        Int a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0) continue;
        Int d = b * b - 4 * a * c;
        if (!is_valid_discriminant(d)) continue;
        if (gcd(gcd(a, b), c) != 1) continue;
        QuadForm q(a, b, c);
        QuadOrder o(d);
        FormIdealData data = dictionary_pair(q);
        unsigned n = 1 + rng() % 5;
        BinForm delta = random_form(rng, n, 6);
        Int res = resultant(q, delta);
        OrderElem g = evaluate_binform(o, delta, data);
        Int an = 1;
        for (unsigned i = 0; i < n; ++i) an *= a;
        /* a^n res(q, delta) = +- N(g); exactly +N(g) when a > 0 */
        CHECK(abs(an * res) == abs(elem_norm(o, g)));
        if (a > 0) CHECK(an * res == elem_norm(o, g));
        ++done;
    }
}

TEST_CASE("resultant multiplicativity in delta") {
    std::mt19937_64 rng(6001);
    std::uniform_int_distribution<long> dist(-10, 10);
    int done = 0;
    while (done < 500) {
        Int a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0) continue;
        Int d = b * b - 4 * a * c;
        if (!is_valid_discriminant(d) || gcd(gcd(a, b), c) != 1) continue;
        QuadForm q(a, b, c);
        BinForm d1 = random_form(rng, 1 + rng() % 4, 5);
        BinForm d2 = random_form(rng, 1 + rng() % 4, 5);
        CHECK(resultant(q, d1 * d2) == resultant(q, d1) * resultant(q, d2));
        ++done;
    }
}

TEST_CASE("resultant invariance under adding multiples of q") {
    std::mt19937_64 rng(6002);
    std::uniform_int_distribution<long> dist(-10, 10);
    int done = 0;
    while (done < 500) {
        Int a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0) continue;
        Int d = b * b - 4 * a * c;
        if (!is_valid_discriminant(d) || gcd(gcd(a, b), c) != 1) continue;
        QuadForm q(a, b, c);
        unsigned n = 2 + rng() % 4;
        BinForm delta = random_form(rng, n, 8);
        BinForm r = random_form(rng, n - 2, 8);
        CHECK(resultant(q, delta + r * BinForm::from_quadform(q)) == resultant(q, delta));
        ++done;
    }
}

TEST_CASE("binform substitution and division") {
    std::mt19937_64 rng(6003);
    std::uniform_int_distribution<long> dist(-9, 9);
    /* substitution is multiplicative over products and respects eval */
    for (int t = 0; t < 200; ++t) {
        BinForm f = random_form(rng, 1 + rng() % 4, 7);
        BinForm g = random_form(rng, 1 + rng() % 4, 7);
        long pp = dist(rng), qq = dist(rng), rr = dist(rng);
        long ss_num = 1 + pp * rr;  // not necessarily unimodular-compatible; build det +-1
        (void)ss_num;
        /* use a guaranteed unimodular matrix */
        UnimodMat m(1, dist(rng), 0, (t % 2) ? 1 : -1);
        UnimodMat m2(1, 0, dist(rng), 1);
        UnimodMat u = m * m2;
        CHECK((f * g).substituted(u) == f.substituted(u) * g.substituted(u));
        Int x = dist(rng), y = dist(rng);
        CHECK(f.substituted(u).eval(x, y) == f.eval(u.p * x + u.q * y, u.r * x + u.s * y));
    }
    /* exact division by q */
    int done = 0;
    while (done < 200) {
        Int a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0) continue;
        Int d = b * b - 4 * a * c;
        if (!is_valid_discriminant(d) || gcd(gcd(a, b), c) != 1) continue;
        QuadForm q(a, b, c);
        BinForm r = random_form(rng, rng() % 4, 9);
        BinForm prod = r * BinForm::from_quadform(q);
        auto back = divide_exact(prod, q);
        REQUIRE(back.has_value());
        CHECK(*back == r);
        BinForm off = prod;
        off.coeff(0) += 1;
        auto maybe = divide_exact(off, q);
        CHECK((!maybe.has_value() || !(*maybe == r)));
        ++done;
    }
}
