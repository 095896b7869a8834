#include <doctest.h>

#include <random>

#include "qtor/intmat.hpp"

using namespace qtor;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

/* Cofactor-expansion determinant, the independent oracle for bareiss_det. */
Int cofactor_det(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor.at(i - 1, cc++) = m.at(i, k);
            }
        }
        Int term = m.at(0, j) * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : Int(-term);
    }
    return acc;
}

bool in_hnf(const IntMatrix& h) {
    std::size_t last_pivot = 0;
    bool started = false;
    std::size_t r = 0;
    for (; r < h.rows(); ++r) {
        std::size_t c = 0;
        while (c < h.cols() && h.at(r, c) == 0) ++c;
        if (c == h.cols()) break;  // zero rows must come last
        if (started && c <= last_pivot) return false;
        if (h.at(r, c) <= 0) return false;
        for (std::size_t i = 0; i < r; ++i)
            if (h.at(i, c) < 0 || h.at(i, c) >= h.at(r, c)) return false;
        last_pivot = c;
        started = true;
    }
    for (; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c)
            if (h.at(r, c) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("bareiss determinant basics") {
    CHECK(bareiss_det(IntMatrix::identity(5)) == 1);
    CHECK(bareiss_det(from_rows({{2, 1}, {1, 2}})) == 3);
    /* Sylvester matrix of (x^2+xy+6y^2, -y^3) */
    IntMatrix syl = from_rows({{1, 1, 6, 0, 0},
                               {0, 1, 1, 6, 0},
                               {0, 0, 1, 1, 6},
                               {0, 0, 0, -1, 0},
                               {0, 0, 0, 0, -1}});
    CHECK(bareiss_det(syl) == 1);
    CHECK(bareiss_det(from_rows({{0, 0}, {0, 0}})) == 0);
    CHECK_THROWS_AS(bareiss_det(IntMatrix(2, 3)), domain_error);
}

TEST_CASE("bareiss matches cofactor expansion on random small matrices") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 5;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = dist(rng);
        CHECK(bareiss_det(m) == cofactor_det(m));
    }
}

TEST_CASE("hnf examples and properties") {
    HnfResult id = hnf(IntMatrix::identity(3));
    CHECK(id.h == IntMatrix::identity(3));
    CHECK(id.u == IntMatrix::identity(3));

    HnfResult z = hnf(from_rows({{0, 0}, {0, 0}}));
    CHECK(z.h == IntMatrix(2, 2));

    HnfResult r = hnf(from_rows({{2, 4}, {1, 3}}));
    CHECK(in_hnf(r.h));
    CHECK(r.u * from_rows({{2, 4}, {1, 3}}) == r.h);
    Int du = bareiss_det(r.u);
    CHECK((du == 1 || du == -1));
    /* pivots of this rank-2 lattice */
    CHECK(r.h.at(0, 0) == 1);
    CHECK(r.h.at(1, 1) == 2);

    std::mt19937_64 rng(999);
    std::uniform_int_distribution<long> dist(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
        HnfResult hr = hnf(m);
        CHECK(hr.u * m == hr.h);
        Int d = bareiss_det(hr.u);
        CHECK((d == 1 || d == -1));
        CHECK(in_hnf(hr.h));
        /* idempotence */
        HnfResult again = hnf(hr.h);
        CHECK(again.h == hr.h);
    }
}

TEST_CASE("snf examples and properties") {
    SnfResult s = snf(from_rows({{2, 0}, {0, 3}}));
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == 6);

    SnfResult s2 = snf(from_rows({{2, 0}, {0, 4}}));
    CHECK(s2.d.at(0, 0) == 2);
    CHECK(s2.d.at(1, 1) == 4);

    CHECK(snf(IntMatrix::identity(4)).d == IntMatrix::identity(4));

    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> dist(-15, 15);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
        SnfResult sr = snf(m);
        CHECK(sr.u * m * sr.v == sr.d);
        Int du = bareiss_det(sr.u), dv = bareiss_det(sr.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        std::size_t t_max = std::min(rows, cols);
        for (std::size_t i = 0; i < t_max; ++i) {
            CHECK(sr.d.at(i, i) >= 0);
            for (std::size_t j = 0; j < t_max; ++j)
                if (i != j) CHECK(sr.d.at(i, j) == 0);
            if (i + 1 < t_max && sr.d.at(i, i) != 0 && sr.d.at(i + 1, i + 1) != 0)
                CHECK(floor_mod(sr.d.at(i + 1, i + 1), sr.d.at(i, i)) == 0);
            if (i + 1 < t_max && sr.d.at(i, i) == 0) CHECK(sr.d.at(i + 1, i + 1) == 0);
        }
        /* product of invariants = |det| for square m */
        if (rows == cols) {
            Int prod = 1;
            for (std::size_t i = 0; i < rows; ++i) prod *= sr.d.at(i, i);
            CHECK(prod == abs(bareiss_det(m)));
        }
    }
}

TEST_CASE("solve_linear") {
    CHECK(*solve_linear(IntMatrix::identity(2), {Int(7), Int(-2)}) ==
          std::vector<Int>{Int(7), Int(-2)});
    CHECK(!solve_linear(from_rows({{2}}), {Int(3)}).has_value());

    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
        /* solvable instance by construction */
        std::vector<Int> x0(cols);
        for (std::size_t j = 0; j < cols; ++j) x0[j] = dist(rng);
        std::vector<Int> b = m.apply(x0);
        auto x = solve_linear(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
        /* canonical: solving twice gives identical output */
        CHECK(*solve_linear(m, b) == *x);
    }
}

TEST_CASE("lagrange_gauss reduction") {
    std::vector<Int> e1{Int(1), Int(0)}, e2{Int(0), Int(1)};
    LatticeReduction r = lagrange_gauss(e1, e2, Int(1), Int(0), Int(1));
    CHECK(r.a == 1);
    CHECK(r.c == 1);
    CHECK(r.b == 0);

    /* basis (1,0),(5,1) of Z^2 with the x^2+y^2 values pulled back */
    std::vector<Int> v1{Int(1), Int(0)}, v2{Int(5), Int(1)};
    /* N(x v1 + y v2) = (x + 5y)^2 + y^2 = x^2 + 10xy + 26y^2 */
    LatticeReduction r2 = lagrange_gauss(v1, v2, Int(1), Int(10), Int(26));
    CHECK(r2.a == 1);
    CHECK(r2.c == 1);
    std::vector<std::vector<Int>> got{r2.v1, r2.v2};
    for (const auto& v : got) {
        Int n = v[0] * v[0] + v[1] * v[1];
        CHECK(n == 1);
    }

    /* exhaustive minimality oracle on random definite forms */
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> dist(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        Int a = 1 + rng() % 8, b = dist(rng);
        Int c = floor_div(b * b, 4 * a) + 1 + rng() % 8;
        if (b * b - 4 * a * c >= 0) continue;
        LatticeReduction rr = lagrange_gauss(e1, e2, a, b, c);
        Int dt = bareiss_det(rr.t);
        CHECK((dt == 1 || dt == -1));
        auto value = [&](long x, long y) -> Int { return a * x * x + b * x * y + c * y * y; };
        Int best = value(1, 0);
        for (long x = -40; x <= 40; ++x)
            for (long y = -40; y <= 40; ++y) {
                if (x == 0 && y == 0) continue;
                Int v = value(x, y);
                if (v < best) best = v;
            }
        CHECK(rr.a == best);
    }

    CHECK_THROWS_AS(lagrange_gauss(e1, e2, Int(1), Int(2), Int(1)), domain_error);
}
