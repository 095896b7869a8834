#include "qtor/group.hpp"

namespace qtor {

GroupElem::GroupElem(unsigned n, std::vector<Int> uni, int chi, int eta, UnimodMat mat)
    : n_(n), uni_(std::move(uni)), chi_(chi), eta_(eta), mat_(std::move(mat)) {
    if (n < 3) throw domain_error("GroupElem: the group action needs n >= 3");
    if (uni_.size() != n - 1) throw domain_error("GroupElem: unipotent length must be n-1");
    if (chi_ != 1 && chi_ != -1) throw domain_error("GroupElem: chi must be +-1");
    if (eta_ != 1 && eta_ != -1) throw domain_error("GroupElem: eta must be +-1");
    if (eta_ == -1 && n % 2 == 1)
        throw domain_error("GroupElem: eta exists only for even n");
}

GroupElem GroupElem::identity(unsigned n) {
    return GroupElem(n, std::vector<Int>(n - 1, Int(0)), 1, 1, UnimodMat::identity());
}

GroupElem GroupElem::unipotent(unsigned n, std::vector<Int> uni) {
    return GroupElem(n, std::move(uni), 1, 1, UnimodMat::identity());
}

GroupElem GroupElem::scaling(unsigned n, int chi) {
    return GroupElem(n, std::vector<Int>(n - 1, Int(0)), chi, 1, UnimodMat::identity());
}

GroupElem GroupElem::delta_negation(unsigned n) {
    if (n % 2 == 0)
        return GroupElem(n, std::vector<Int>(n - 1, Int(0)), 1, -1, UnimodMat::identity());
    return GroupElem(n, std::vector<Int>(n - 1, Int(0)), 1, 1, UnimodMat(-1, 0, 0, -1));
}

GroupElem GroupElem::matrix(unsigned n, const UnimodMat& m) {
    return GroupElem(n, std::vector<Int>(n - 1, Int(0)), 1, 1, m);
}

bool GroupElem::same_action(const GroupElem& o) const {
    if (n_ != o.n_ || uni_ != o.uni_ || chi_ != o.chi_) return false;
    if (n_ % 2 == 1) return eta_ == o.eta_ && mat_ == o.mat_;
    if (eta_ == o.eta_ && mat_ == o.mat_) return true;
    UnimodMat neg(-o.mat_.p, -o.mat_.q, -o.mat_.r, -o.mat_.s);
    return eta_ == o.eta_ && mat_ == neg;
}

PairQD act(const GroupElem& g, const PairQD& p) {
    const unsigned n = g.n();
    if (p.delta.degree() != n) throw domain_error("act: degree mismatch");
    Int det = g.mat().det();
    QuadForm q1 = apply(p.q, g.mat());
    BinForm d1 = p.delta.substituted(g.mat());
    if (det == -1) {
        q1 = q1.negated();
        d1 = -d1;
    }
    if (g.chi() == -1) {
        q1 = q1.negated();
        d1 = -d1;
    }
    if (g.eta() == -1) d1 = -d1;
    /* unipotent: delta += (sum_i uni[i] x^i y^(n-2-i)) * q */
    BinForm r(n - 2);
    for (unsigned i = 0; i + 1 <= n - 1; ++i) r.coeff(i) = g.uni()[i];
    if (!r.is_zero()) d1 = d1 + r * BinForm::from_quadform(q1);
    return {q1, d1};
}

GroupElem compose_group(const GroupElem& g1, const GroupElem& g2) {
    if (g1.n() != g2.n()) throw domain_error("compose_group: n mismatch");
    const unsigned n = g1.n();
    /* g1 g2 = u1 c1 u2 c2 = u_(r1 + eta1 * (r2 o m1)) (c1 c2); the unipotent
     * coordinates transform by substitution alone, the conjugation scalar
     * zeta^(2-n) over Z being the eta sign. */
    BinForm r2(n - 2);
    for (unsigned i = 0; i <= n - 2; ++i) r2.coeff(i) = g2.uni()[i];
    BinForm moved = r2.substituted(g1.mat());
    if (g1.eta() == -1) moved = -moved;
    std::vector<Int> uni(n - 1);
    for (unsigned i = 0; i <= n - 2; ++i) uni[i] = g1.uni()[i] + moved.coeff(i);
    return GroupElem(n, std::move(uni), g1.chi() * g2.chi(),
                     (n % 2 == 0) ? g1.eta() * g2.eta() : 1, g2.mat() * g1.mat());
}

GroupElem group_inverse(const GroupElem& g) {
    const unsigned n = g.n();
    UnimodMat minv = g.mat().inverse();
    BinForm r(n - 2);
    for (unsigned i = 0; i <= n - 2; ++i) r.coeff(i) = g.uni()[i];
    BinForm moved = -r.substituted(minv);
    if (g.eta() == -1) moved = -moved;
    std::vector<Int> uni(n - 1);
    for (unsigned i = 0; i <= n - 2; ++i) uni[i] = moved.coeff(i);
    return GroupElem(n, std::move(uni), g.chi(), g.eta(), minv);
}

Residue residue_mod_q(const BinForm& delta, const QuadForm& q) {
    const unsigned n = delta.degree();
    if (n < 2) throw domain_error("residue_mod_q: degree must be at least 2");
    /* rows: coefficients of x^i y^(n-2-i) q, i = 0..n-2 */
    IntMatrix lattice(n - 1, n + 1);
    for (unsigned i = 0; i <= n - 2; ++i) {
        lattice.at(i, i) = q.c();
        lattice.at(i, i + 1) = q.b();
        lattice.at(i, i + 2) = q.a();
    }
    IntMatrix h = hnf(lattice).h;
    std::vector<Int> v = delta.coeffs();
    std::vector<Int> used(n - 1, Int(0));
    std::size_t row = 0;
    for (std::size_t col = 0; col < n + 1 && row < h.rows(); ++col) {
        if (h.at(row, col) == 0) continue;
        Int t = floor_div(v[col], h.at(row, col));
        if (t != 0)
            for (std::size_t k = col; k < n + 1; ++k) v[k] -= t * h.at(row, k);
        ++row;
    }
    BinForm canonical(std::move(v));
    /* express the subtracted combination over the original lattice rows */
    BinForm diff = delta - canonical;
    std::optional<BinForm> r = divide_exact(diff, q);
    if (!r) throw internal_error("residue_mod_q: reduction left the lattice");
    for (unsigned i = 0; i <= n - 2; ++i) used[i] = r->coeff(i);

    FormIdealData data = dictionary_pair(q);
    QuadOrder o(q.discriminant());
    Residue out{evaluate_binform(o, delta, data), canonical, std::move(used)};
    /* the canonical representative has the same evaluation */
    if (!(evaluate_binform(o, canonical, data) == out.value))
        throw internal_error("residue_mod_q: evaluation changed under reduction");
    return out;
}

}  // namespace qtor
