#ifndef QTOR_WITNESS_HPP
#define QTOR_WITNESS_HPP

#include "qtor/qorder.hpp"

namespace qtor {

struct WitnessReport {
    Int resultant_value;
    bool unit;            // resultant is +-1
    bool ideal_equality;  // (delta(alpha, beta)) == I_q^n
    bool torsion;         // the class of q is n-torsion
    unsigned n;
    /* unit implies torsion, and ideal_equality holds exactly when unit does;
     * a report violating this is a theorem violation. */
    bool consistent() const {
        return (unit == ideal_equality) && (!unit || torsion);
    }
};

/* Builds a degree-n certificate delta with res(q, delta) = +-1 when the
 * class of q is n-torsion: the canonical generator of I_q^n written in the
 * monomial basis alpha^i beta^(n-i). Returns nothing when the class is not
 * n-torsion. Deterministic: canonical generator plus HNF-canonical solve. */
std::optional<BinForm> construct_witness(const QuadForm& q, unsigned n);

WitnessReport verify_witness(const QuadForm& q, const BinForm& delta);

}  // namespace qtor

#endif
