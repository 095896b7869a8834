#ifndef QTOR_QORDER_HPP
#define QTOR_QORDER_HPP

#include <optional>
#include <vector>

#include "qtor/binform.hpp"
#include "qtor/qform.hpp"

namespace qtor {

/* The quadratic order O_d = Z[omega] of discriminant d, omega = (d+sqrt d)/2
 * with minimal polynomial t^2 - d t + (d^2 - d)/4. */
class QuadOrder {
  public:
    explicit QuadOrder(const Int& d) : d_(d) { check_discriminant(d); }
    const Int& disc() const { return d_; }
    Int omega_norm() const { return exact_div(d_ * d_ - d_, 4); }
    bool is_fundamental() const { return is_fundamental_discriminant(d_); }

  private:
    Int d_;
};

/* u + v*omega; the order is supplied by the operations. */
struct OrderElem {
    Int u, v;
    OrderElem() : u(0), v(0) {}
    OrderElem(Int u_, Int v_) : u(std::move(u_)), v(std::move(v_)) {}
    bool is_zero() const { return u == 0 && v == 0; }
    bool operator==(const OrderElem& o) const { return u == o.u && v == o.v; }
    bool operator<(const OrderElem& o) const { return u != o.u ? u < o.u : v < o.v; }
};

OrderElem elem_add(const OrderElem& x, const OrderElem& y);
OrderElem elem_sub(const OrderElem& x, const OrderElem& y);
OrderElem elem_neg(const OrderElem& x);
OrderElem elem_mul(const QuadOrder& o, const OrderElem& x, const OrderElem& y);
OrderElem elem_conj(const QuadOrder& o, const OrderElem& x);  // omega -> d - omega
Int elem_norm(const QuadOrder& o, const OrderElem& x);
Int elem_trace(const QuadOrder& o, const OrderElem& x);
OrderElem elem_pow(const QuadOrder& o, const OrderElem& x, unsigned n);
std::optional<OrderElem> elem_div(const QuadOrder& o, const OrderElem& x, const OrderElem& y);

/* Sign of u + v*omega under the real embedding with sqrt d > 0 (d > 0). */
int real_sign(const QuadOrder& o, const OrderElem& x);
/* Sign of x - y in that embedding. */
int real_cmp(const QuadOrder& o, const OrderElem& x, const OrderElem& y);

/* Full rank Z[omega]-submodule of O_d (integral ideal), held as the row HNF
 * of its coordinate matrix with columns ordered (omega-coeff, 1-coeff), so
 * the second row (0, A) exposes A = the least positive rational integer of
 * the module. An optional positive denominator makes the ideal fractional:
 * the module is (1/den) * <rows>. */
class OrderIdeal {
  public:
    OrderIdeal(const QuadOrder& o, const std::vector<OrderElem>& generators,
               Int den = Int(1));

    static OrderIdeal whole_order(const QuadOrder& o);
    static OrderIdeal principal(const QuadOrder& o, const OrderElem& g);

    /* rows (v1, u1), (0, a): module Z(u1 + v1*omega) + Z(a) */
    const IntMatrix& basis() const { return basis_; }
    const Int& den() const { return den_; }
    bool is_integral() const { return den_ == 1; }
    Int norm() const;  // module norm; integral ideals only
    /* gcd of all coordinates; content() == v-pivot for omega-closed modules */
    Int content() const;
    bool contains(const OrderElem& x) const;
    bool operator==(const OrderIdeal& o) const;

    OrderElem gen1() const;  // u1 + v1*omega
    OrderElem gen2() const;  // a

  private:
    IntMatrix basis_;  // 2x2 HNF, columns (v, u)
    Int den_;
};

OrderIdeal ideal_mul(const QuadOrder& o, const OrderIdeal& i, const OrderIdeal& j);
OrderIdeal ideal_pow(const QuadOrder& o, const OrderIdeal& i, unsigned n);

/* The form <-> ideal dictionary of the product formula
 * a * q(x,y) = Norm(-beta x + alpha y), beta = a, alpha = (-b + sqrt d)/2. */
struct FormIdealData {
    QuadForm q;
    OrderElem alpha, beta;
    OrderIdeal ideal;
    Int ideal_norm;
};

/* Requires a > 0. */
FormIdealData ideal_from_form(const QuadForm& q);
/* Same pair with beta = a kept signed; the product formula still holds and
 * the module is Z|a| + Z alpha. Used by evaluation paths that may see
 * sign-scaled forms. */
FormIdealData dictionary_pair(const QuadForm& q);

/* Canonical a > 0 form of the class of an invertible integral ideal. */
QuadForm form_from_ideal(const QuadOrder& o, const OrderIdeal& ideal);

/* Explicit generator of a principal invertible integral ideal, if the ideal
 * is principal in Pic(O_d). d < 0 goes through the lattice minimum; d > 0
 * walks the reduced cycle with exact transported generators. */
std::optional<OrderElem> principal_generator(const QuadOrder& o, const OrderIdeal& ideal);

/* Fundamental unit of O_d, d > 0: the smallest unit > 1. */
OrderElem fundamental_unit(const Int& d);
/* Number of roots of unity in O_d, d < 0: 6 for -3, 4 for -4, else 2. */
int unit_torsion(const Int& d);

/* g = sum_i t_i alpha^i beta^(n-i); always lands in ideal^n. */
OrderElem evaluate_binform(const QuadOrder& o, const BinForm& delta, const FormIdealData& data);

/* Writes a unit as sign * eps^k (d > 0 only). */
struct UnitLog {
    int sign;
    long k;
};
UnitLog unit_log(const QuadOrder& o, const OrderElem& unit);

/* Deterministic associate: lexicographically least coordinate pair among
 * unit multiples for d < 0; the representative with embedding in [1, eps)
 * for d > 0. */
OrderElem canonical_associate(const QuadOrder& o, const OrderElem& g);

/* Smallest y with sign * y^n == x for an allowed sign, when one exists.
 * Fundamental discriminants only (prime ideal factorization). */
std::optional<OrderElem> nth_power_classify(const QuadOrder& o, const OrderElem& x, unsigned n,
                                            bool allow_minus);

/* Prime ideal data above a rational prime, for fundamental d. */
struct PrimeAbove {
    Int p;
    int kind;  // +1 split, 0 ramified, -1 inert
    OrderIdeal ideal;
};
PrimeAbove prime_above(const QuadOrder& o, const Int& p);

/* Factorization of |n| by trial division then Brent rho; deterministic. */
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n);
bool is_probable_prime(const Int& n);

}  // namespace qtor

#endif
