#include "qtor/witness.hpp"

#include "qtor/qform.hpp"

namespace qtor {

std::optional<BinForm> construct_witness(const QuadForm& q, unsigned n) {
    if (n == 0) throw domain_error("construct_witness: n must be positive");
    if (q.a() <= 0) throw domain_error("construct_witness: form must be normalized with a > 0");
    QuadOrder o(q.discriminant());
    FormIdealData data = ideal_from_form(q);
    OrderIdeal jn = ideal_pow(o, data.ideal, n);
    auto g0 = principal_generator(o, jn);
    if (!g0) {
        if (is_n_torsion(q, n))
            throw internal_error("construct_witness: n-torsion class with non-principal I^n");
        return std::nullopt;
    }
    OrderElem g = canonical_associate(o, *g0);

    /* write g over the monomials alpha^i beta^(n-i); they Z-span I_q^n */
    IntMatrix m(2, n + 1);
    OrderElem apow(1, 0);
    std::vector<OrderElem> bpow(n + 1);
    bpow[0] = OrderElem(1, 0);
    for (unsigned i = 1; i <= n; ++i) bpow[i] = elem_mul(o, bpow[i - 1], data.beta);
    for (unsigned i = 0; i <= n; ++i) {
        OrderElem mono = elem_mul(o, apow, bpow[n - i]);
        m.at(0, i) = mono.u;
        m.at(1, i) = mono.v;
        if (i < n) apow = elem_mul(o, apow, data.alpha);
    }
    auto t = solve_linear(m, {g.u, g.v});
    if (!t) throw internal_error("construct_witness: generator not in the monomial span");
    BinForm delta(std::move(*t));
    Int res = resultant(q, delta);
    if (abs(res) != 1)
        throw internal_error("construct_witness: certificate has non-unit resultant " +
                             res.get_str());
    return delta;
}

WitnessReport verify_witness(const QuadForm& q, const BinForm& delta) {
    const unsigned n = delta.degree();
    if (n == 0) throw domain_error("verify_witness: delta must have positive degree");
    QuadOrder o(q.discriminant());
    WitnessReport rep;
    rep.n = n;
    rep.resultant_value = resultant(q, delta);
    rep.unit = abs(rep.resultant_value) == 1;
    FormIdealData data = dictionary_pair(q);
    OrderElem g = evaluate_binform(o, delta, data);
    if (g.is_zero()) {
        rep.ideal_equality = false;
    } else {
        rep.ideal_equality = OrderIdeal::principal(o, g) == ideal_pow(o, data.ideal, n);
    }
    rep.torsion = is_n_torsion(q, n);
    return rep;
}

}  // namespace qtor
