#ifndef QTOR_SELMER_HPP
#define QTOR_SELMER_HPP

#include <string>
#include <vector>

#include "qtor/qorder.hpp"

namespace qtor {

struct AbelianGroup {
    std::vector<Int> invariants;  // d1 | d2 | ..., each > 1
    Int order() const;
    Int two_torsion() const;  // |A[2]|
};

/* One Selmer lift per basis generator of cl(O_d)[n]: the ideal J from the
 * class representative, h generating J^order, and the lift g generating J^n
 * whose class maps onto the generator. */
struct SelmerLift {
    std::size_t class_index;
    unsigned order;
    OrderIdeal ideal;
    OrderElem h;
    OrderElem lift;
};

/* coker(Sel_n(Q) -> Sel_n(K)) materialized as an explicit presentation:
 * generators are the unit-part generators followed by the lifts; relations
 * kill n-th powers, unit torsion, the image of -1 for even n, and express
 * lift^order inside the unit part. For non-fundamental d this is the
 * order-level analogue built from Pic(O_d)[n] and O_d-units. */
struct CokerDescription {
    Int disc;
    unsigned n;
    bool fundamental;
    std::vector<std::string> generator_names;
    std::vector<Int> unit_invariants;  // structure of (U/U^n) / (+-1 image)
    std::vector<SelmerLift> lifts;
    IntMatrix presentation;  // rows = relations over the generators
    IntMatrix snf_v;         // column transform of the presentation SNF
    std::vector<Int> snf_diag;
    AbelianGroup group;

    /* canonical coordinates in the group of an exponent vector over the
     * presentation generators */
    std::vector<Int> reduce_exponents(const std::vector<Int>& exps) const;
};

CokerDescription coker_group(const Int& d, unsigned n);

/* Orbits of x -> -x on A: (|A| + |A[2]|)/2. */
Int inversion_orbit_count(const AbelianGroup& a);

Int predicted_orbit_count(const Int& d, unsigned n);

/* Independent cyclic generators of the n-torsion subgroup of the class
 * group, greedy prime by prime. */
struct TorsionBasis {
    std::vector<std::size_t> gens;   // class indices
    std::vector<unsigned> orders;
};
TorsionBasis class_torsion_basis(const ClassGroup& g, unsigned n);

}  // namespace qtor

#endif
