#include "qtor/intmat.hpp"

#include <algorithm>
#include <tuple>

namespace qtor {

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_mod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int exact_div(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool is_perfect_square(const Int& a) {
    if (a < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

Int isqrt_floor(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw domain_error("matrix product: dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw domain_error("matrix apply: dimension mismatch");
    std::vector<Int> r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Int& t) {
    if (t == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += t * at(j, k);
}

Int bareiss_det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("bareiss_det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    int sign = 1;
    Int prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = exact_div(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

/* Replace rows r and i so that entry (i, col) vanishes and entry (r, col)
 * becomes the gcd; the combined row operation has determinant 1. */
void gcd_rows(IntMatrix& h, IntMatrix& u, std::size_t r, std::size_t i, std::size_t col) {
    const Int a = h.at(r, col);
    const Int b = h.at(i, col);
    if (b == 0) return;
    if (a == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        h.negate_row(i);
        u.negate_row(i);
        return;
    }
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        Int t = -exact_div(b, a);
        h.add_row_multiple(i, r, t);
        u.add_row_multiple(i, r, t);
        return;
    }
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Int p = exact_div(a, g);
    const Int q = exact_div(b, g);
    const std::size_t nc = h.cols();
    for (std::size_t k = 0; k < nc; ++k) {
        Int hr = h.at(r, k), hi = h.at(i, k);
        h.at(r, k) = x * hr + y * hi;
        h.at(i, k) = -q * hr + p * hi;
    }
    const std::size_t uc = u.cols();
    for (std::size_t k = 0; k < uc; ++k) {
        Int ur = u.at(r, k), ui = u.at(i, k);
        u.at(r, k) = x * ur + y * ui;
        u.at(i, k) = -q * ur + p * ui;
    }
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    HnfResult res{m, IntMatrix::identity(rows)};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        for (std::size_t i = r + 1; i < rows; ++i) gcd_rows(h, u, r, i, col);
        if (h.at(r, col) == 0) continue;
        if (h.at(r, col) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        const Int& piv = h.at(r, col);
        for (std::size_t i = 0; i < r; ++i) {
            Int t = floor_div(h.at(i, col), piv);
            if (t != 0) {
                h.add_row_multiple(i, r, -t);
                u.add_row_multiple(i, r, -t);
            }
        }
        ++r;
    }
    return res;
}

SnfResult snf(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SnfResult res{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    auto gcd_cols = [&](std::size_t c, std::size_t j, std::size_t row) {
        const Int a = d.at(row, c);
        const Int b = d.at(row, j);
        if (b == 0) return;
        if (a == 0) {
            for (std::size_t k = 0; k < rows; ++k) std::swap(d.at(k, c), d.at(k, j));
            for (std::size_t k = 0; k < cols; ++k) std::swap(v.at(k, c), v.at(k, j));
            for (std::size_t k = 0; k < rows; ++k) d.at(k, j) = -d.at(k, j);
            for (std::size_t k = 0; k < cols; ++k) v.at(k, j) = -v.at(k, j);
            return;
        }
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
            Int t = -exact_div(b, a);
            for (std::size_t k = 0; k < rows; ++k) d.at(k, j) += t * d.at(k, c);
            for (std::size_t k = 0; k < cols; ++k) v.at(k, j) += t * v.at(k, c);
            return;
        }
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        const Int p = exact_div(a, g);
        const Int q = exact_div(b, g);
        for (std::size_t k = 0; k < rows; ++k) {
            Int dc = d.at(k, c), dj = d.at(k, j);
            d.at(k, c) = x * dc + y * dj;
            d.at(k, j) = -q * dc + p * dj;
        }
        for (std::size_t k = 0; k < cols; ++k) {
            Int vc = v.at(k, c), vj = v.at(k, j);
            v.at(k, c) = x * vc + y * vj;
            v.at(k, j) = -q * vc + p * vj;
        }
    };

    const std::size_t t_max = std::min(rows, cols);
    for (std::size_t t = 0; t < t_max; ++t) {
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows && !found; ++i)
            for (std::size_t j = t; j < cols && !found; ++j)
                if (d.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        if (pj != t) {
            for (std::size_t k = 0; k < rows; ++k) std::swap(d.at(k, t), d.at(k, pj));
            for (std::size_t k = 0; k < cols; ++k) std::swap(v.at(k, t), v.at(k, pj));
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d.at(i, t) != 0) gcd_rows(d, u, t, i, t);
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d.at(t, j) != 0) {
                    gcd_cols(t, j, t);
                    dirty = true;
                }
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d.at(i, t) != 0) dirty = true;
        }
    }

    /* Enforce the divisor chain. Folding column j into column t puts d_jj
     * into column t, and re-elimination replaces d_tt by gcd(d_tt, d_jj). */
    bool chain_dirty = true;
    while (chain_dirty) {
        chain_dirty = false;
        for (std::size_t t = 0; t + 1 < t_max; ++t) {
            const Int& dt = d.at(t, t);
            for (std::size_t j = t + 1; j < t_max; ++j) {
                const Int& dj = d.at(j, j);
                if (dj == 0) continue;
                if (dt == 0 || floor_mod(dj, dt) != 0) {
                    for (std::size_t k = 0; k < rows; ++k) d.at(k, t) += d.at(k, j);
                    for (std::size_t k = 0; k < cols; ++k) v.at(k, t) += v.at(k, j);
                    bool dirty = true;
                    while (dirty) {
                        dirty = false;
                        for (std::size_t i = t + 1; i < rows; ++i)
                            if (d.at(i, t) != 0) gcd_rows(d, u, t, i, t);
                        for (std::size_t jj = t + 1; jj < cols; ++jj)
                            if (d.at(t, jj) != 0) {
                                gcd_cols(t, jj, t);
                                dirty = true;
                            }
                        for (std::size_t i = t + 1; i < rows; ++i)
                            if (d.at(i, t) != 0) dirty = true;
                    }
                    chain_dirty = true;
                }
            }
        }
    }

    for (std::size_t t = 0; t < t_max; ++t)
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    return res;
}

std::optional<std::vector<Int>> solve_linear(const IntMatrix& m, const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw domain_error("solve_linear: rhs length mismatch");
    const std::size_t rows = m.rows(), cols = m.cols();
    SnfResult s = snf(m);
    std::vector<Int> c = s.u.apply(b);
    const std::size_t t_max = std::min(rows, cols);
    std::vector<Int> y(cols, Int(0));
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < t_max; ++i) {
        const Int& di = s.d.at(i, i);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
            free_idx.push_back(i);
        } else {
            if (floor_mod(c[i], di) != 0) return std::nullopt;
            y[i] = exact_div(c[i], di);
        }
    }
    for (std::size_t i = t_max; i < rows; ++i)
        if (c[i] != 0) return std::nullopt;
    for (std::size_t j = t_max; j < cols; ++j) free_idx.push_back(j);

    std::vector<Int> x = s.v.apply(y);
    if (free_idx.empty()) return x;

    /* Canonicalize modulo the kernel lattice. */
    IntMatrix kernel(free_idx.size(), cols);
    for (std::size_t r = 0; r < free_idx.size(); ++r)
        for (std::size_t k = 0; k < cols; ++k) kernel.at(r, k) = s.v.at(k, free_idx[r]);
    IntMatrix kh = hnf(kernel).h;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < kh.rows(); ++col) {
        if (kh.at(row, col) == 0) continue;
        Int t = floor_div(x[col], kh.at(row, col));
        if (t != 0)
            for (std::size_t k = col; k < cols; ++k) x[k] -= t * kh.at(row, k);
        ++row;
    }
    return x;
}

LatticeReduction lagrange_gauss(const std::vector<Int>& v1, const std::vector<Int>& v2,
                                const Int& qa, const Int& qb, const Int& qc) {
    if (v1.size() != v2.size()) throw domain_error("lagrange_gauss: basis length mismatch");
    Int disc = qb * qb - 4 * qa * qc;
    if (qa <= 0 || disc >= 0) throw domain_error("lagrange_gauss: form not positive definite");

    Int a = qa, b = qb, c = qc;
    IntMatrix t = IntMatrix::identity(2);
    /* Gauss reduction: translate b into (-a, a], swap while a > c. The swap
     * uses (x, y) -> (-y, x) so det t stays +1. */
    for (;;) {
        Int k = floor_div(b + a, 2 * a);
        if (k != 0) {
            /* (x, y) -> (x + k y, y): b -> b - 2ak ... substitute x -> x - k y */
            b -= 2 * a * k;
            c = exact_div(b * b - disc, 4 * a);
            for (std::size_t i = 0; i < 2; ++i) t.at(i, 1) -= k * t.at(i, 0);
        }
        if (a <= c) break;
        std::swap(a, c);
        b = -b;
        for (std::size_t i = 0; i < 2; ++i) {
            Int c0 = t.at(i, 0), c1 = t.at(i, 1);
            t.at(i, 0) = c1;
            t.at(i, 1) = -c0;
        }
    }
    if (b < 0 && (a == c || b == -a)) {
        /* (x, y) -> (x, -y) composed with a swap keeps det +1 only for the
         * a == c case; use the proper move for each tie. */
        if (a == c) {
            std::swap(a, c);
            b = -b;
            for (std::size_t i = 0; i < 2; ++i) {
                Int c0 = t.at(i, 0), c1 = t.at(i, 1);
                t.at(i, 0) = c1;
                t.at(i, 1) = -c0;
            }
        } else {
            b += 2 * a;
            c = exact_div(b * b - disc, 4 * a);
            for (std::size_t i = 0; i < 2; ++i) t.at(i, 1) += t.at(i, 0);
        }
    }

    const std::size_t dim = v1.size();
    LatticeReduction out;
    out.a = a;
    out.b = b;
    out.c = c;
    out.t = t;
    out.v1.assign(dim, Int(0));
    out.v2.assign(dim, Int(0));
    for (std::size_t i = 0; i < dim; ++i) {
        out.v1[i] = t.at(0, 0) * v1[i] + t.at(1, 0) * v2[i];
        out.v2[i] = t.at(0, 1) * v1[i] + t.at(1, 1) * v2[i];
    }
    return out;
}

}  // namespace qtor
