#ifndef QTOR_INTMAT_HPP
#define QTOR_INTMAT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qtor/errors.hpp"

namespace qtor {

using Int = mpz_class;

Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);
Int exact_div(const Int& a, const Int& b);
bool is_perfect_square(const Int& a);
Int isqrt_floor(const Int& a);

/* Dense matrix of arbitrary-precision integers, row major.
 * Everything in this module is exact; there is no floating point. */
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column vector
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const;

    void swap_rows(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    /* row_i += t * row_j */
    void add_row_multiple(std::size_t i, std::size_t j, const Int& t);

  private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

/* Exact determinant by fraction-free (Bareiss) elimination. */
Int bareiss_det(const IntMatrix& m);

/* Row Hermite normal form: u unimodular with u*m = h, pivots positive,
 * entries above each pivot reduced into [0, pivot). */
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
};
HnfResult hnf(const IntMatrix& m);

/* Smith normal form: u*m*v = d diagonal, d1 | d2 | ..., di >= 0. */
struct SnfResult {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
};
SnfResult snf(const IntMatrix& m);

/* Integer solution of m*x = b, if one exists. Underdetermined systems get
 * the canonical representative: the particular solution reduced modulo the
 * HNF of the kernel lattice, pivot by pivot, into minimal nonnegative
 * residues. */
std::optional<std::vector<Int>> solve_linear(const IntMatrix& m, const std::vector<Int>& b);

/* Lagrange-Gauss reduction of a rank-2 lattice. The positive definite form
 * qa x^2 + qb xy + qc y^2 gives lengths of coordinate vectors (x, y) with
 * respect to the input basis. Returns the reduced basis, the reduced form,
 * and the unimodular change of coordinates t (columns = coordinates of the
 * reduced basis vectors in the old one). form(v1) is the lattice minimum. */
struct LatticeReduction {
    std::vector<Int> v1, v2;
    Int a, b, c;
    IntMatrix t;  // 2x2, det +-1
};
LatticeReduction lagrange_gauss(const std::vector<Int>& v1, const std::vector<Int>& v2,
                                const Int& qa, const Int& qb, const Int& qc);

}  // namespace qtor

#endif
