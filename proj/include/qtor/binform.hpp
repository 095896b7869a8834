#ifndef QTOR_BINFORM_HPP
#define QTOR_BINFORM_HPP

#include <optional>
#include <vector>

#include "qtor/qform.hpp"

namespace qtor {

/* Homogeneous binary form sum_i t_i x^i y^(n-i) of degree n >= 0;
 * coeff(i) is the coefficient of x^i y^(n-i). */
class BinForm {
  public:
    explicit BinForm(unsigned degree) : t_(degree + 1, Int(0)) {}
    explicit BinForm(std::vector<Int> coeffs);

    unsigned degree() const { return static_cast<unsigned>(t_.size()) - 1; }
    const Int& coeff(unsigned i) const { return t_[i]; }
    Int& coeff(unsigned i) { return t_[i]; }
    const std::vector<Int>& coeffs() const { return t_; }

    static BinForm monomial(unsigned degree, unsigned i, const Int& t = Int(1));
    static BinForm from_quadform(const QuadForm& q);

    BinForm operator+(const BinForm& o) const;
    BinForm operator-(const BinForm& o) const;
    BinForm operator*(const BinForm& o) const;
    BinForm operator-() const;
    BinForm scaled(const Int& s) const;
    bool is_zero() const;
    bool operator==(const BinForm& o) const { return t_ == o.t_; }

    /* substitution by (x, y) -> (p x + q y, r x + s y) */
    BinForm substituted(const UnimodMat& m) const;

    Int eval(const Int& x, const Int& y) const;

  private:
    std::vector<Int> t_;
};

/* this / q when the quotient is an integral binary form */
std::optional<BinForm> divide_exact(const BinForm& num, const QuadForm& q);

/* Resultant of the quadratic q and the degree-n form delta: determinant of
 * the (n+2) x (n+2) Sylvester matrix with n shifted rows of (a, b, c) above
 * 2 shifted rows of (t_n, ..., t_0), coefficients ordered x-high to x-low.
 * This orientation gives res(x^2+xy+6y^2, -y^3) = +1. */
Int resultant(const QuadForm& q, const BinForm& delta);

}  // namespace qtor

#endif
