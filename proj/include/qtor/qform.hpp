#ifndef QTOR_QFORM_HPP
#define QTOR_QFORM_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "qtor/intmat.hpp"

namespace qtor {

/* Element of GL2(Z): (x, y) -> (p x + q y, r x + s y), ps - qr = +-1. */
struct UnimodMat {
    Int p, q, r, s;

    UnimodMat() : p(1), q(0), r(0), s(1) {}
    UnimodMat(Int p_, Int q_, Int r_, Int s_);

    static UnimodMat identity() { return UnimodMat(); }

    Int det() const { return p * s - q * r; }
    UnimodMat inverse() const;
    UnimodMat operator*(const UnimodMat& o) const;  // matrix product
    bool operator==(const UnimodMat& o) const;
};

/* Primitive binary quadratic form a x^2 + b xy + c y^2 of nonzero,
 * non-square discriminant. Sign normalization (a > 0 for definite forms)
 * is required only by the operations that need it; scaling by -1 must stay
 * representable because the group action produces it. */
class QuadForm {
  public:
    QuadForm(Int a, Int b, Int c);

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    Int discriminant() const { return b_ * b_ - 4 * a_ * c_; }
    Int eval(const Int& x, const Int& y) const { return a_ * x * x + b_ * x * y + c_ * y * y; }
    QuadForm negated() const { return QuadForm(-a_, -b_, -c_); }

    bool operator==(const QuadForm& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }
    bool operator<(const QuadForm& o) const;

  private:
    Int a_, b_, c_;
};

/* q composed with m: q(p x + q y, r x + s y). */
QuadForm apply(const QuadForm& q, const UnimodMat& m);
/* The twisted action (q o m) / det m used throughout the group machinery. */
QuadForm apply_twisted(const QuadForm& q, const UnimodMat& m);

struct Reduction {
    QuadForm form;
    UnimodMat m;  // apply(q, m) == form, det +1
};

/* Gauss reduction for d < 0 (|b| <= a <= c, b >= 0 on ties); rho-operator
 * reduction into the cycle for d > 0 (0 < b < sqrt d, sqrt d - b < 2|a| <
 * sqrt d + b). Definite forms must come normalized with a > 0. */
Reduction reduce(const QuadForm& q);

bool is_reduced(const QuadForm& q);

/* One rho-step on a reduced indefinite form, with its matrix. */
Reduction rho_step(const QuadForm& q);

/* All reduced forms in the rho-cycle of a reduced indefinite form, each with
 * the cumulative det +1 matrix from the starting form. */
std::vector<Reduction> cycle(const QuadForm& reduced);

/* A solution of chi * (q1 o m) / det m == q2. */
struct Transport {
    UnimodMat m;
    int chi;
};

std::optional<Transport> equivalent(const QuadForm& q1, const QuadForm& q2,
                                    bool allow_det_minus_one, bool allow_negation);

/* One transport per (chi, det) grade in which q1 maps to q2; the full
 * transport set is each grade representative postcomposed with the proper
 * automorphism group of q2. */
std::vector<Transport> transports_all_grades(const QuadForm& q1, const QuadForm& q2);

/* Gauss composition; returns a reduced representative of the product class. */
QuadForm compose(const QuadForm& q1, const QuadForm& q2);

/* (q o m) / det m == sign * q. */
struct Automorph {
    UnimodMat m;
    int sign;
};

/* Generators of the twisted stabilizer of q. For d < 0 the proper part is
 * the finite rotation group; for d > 0 it is <-I> x <Pell automorph>. A
 * det -1 generator is included when the class is ambiguous, and a sign -1
 * generator when q is properly equivalent to -q. */
std::vector<Automorph> automorph_generators(const QuadForm& q);

/* Proper automorphs (det +1, q o m == q) of a definite form; the whole
 * finite group, not just generators. */
std::vector<UnimodMat> proper_automorphs_definite(const QuadForm& q);

/* Fundamental Pell automorph of an indefinite form, from the smallest
 * t, u > 0 with t^2 - d u^2 = 4. */
UnimodMat pell_automorph(const QuadForm& q);

/* Form class group of the order of discriminant d: ideal classes of O_d,
 * i.e. cycles of reduced forms merged under negation when d > 0. */
class ClassGroup {
  public:
    explicit ClassGroup(const Int& d);

    const Int& disc() const { return d_; }
    std::size_t size() const { return reps_.size(); }
    const std::vector<QuadForm>& representatives() const { return reps_; }
    std::size_t principal_index() const { return principal_; }
    std::size_t compose_idx(std::size_t i, std::size_t j) const { return table_[i * reps_.size() + j]; }
    std::size_t inverse_idx(std::size_t i) const;
    unsigned order_of(std::size_t i) const;
    /* Index of the class containing q (q of discriminant d). */
    std::size_t class_of(const QuadForm& q) const;

  private:
    Int d_;
    std::vector<QuadForm> reps_;
    /* all reduced forms per class, for d > 0 membership */
    std::vector<std::vector<QuadForm>> members_;
    std::vector<std::size_t> table_;
    std::size_t principal_ = 0;
};

/* Shared, memoized accessor (write-once per discriminant). */
const ClassGroup& class_group(const Int& d);

bool is_n_torsion(const QuadForm& q, unsigned n);

/* Validation helpers. */
void check_discriminant(const Int& d);
bool is_valid_discriminant(const Int& d);
bool is_fundamental_discriminant(const Int& d);

}  // namespace qtor

#endif
