#ifndef QTOR_ORBITS_HPP
#define QTOR_ORBITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qtor/group.hpp"
#include "qtor/selmer.hpp"

namespace qtor {

/* Decides whether two unit-resultant pairs of equal discriminant lie in the
 * same orbit of the pair-space group, returning an explicit witness that
 * transports p1 onto p2 exactly. The procedure enumerates the finitely many
 * (chi, det) transport grades between the forms, the proper stabilizer of
 * the target form (finite rotations for d < 0; for d > 0 the power of the
 * Pell automorph found exactly by unit discrete log on the evaluations),
 * the delta-negation, and closes with the unipotent correction. */
std::optional<GroupElem> pairs_equivalent(const PairQD& p1, const PairQD& p2);

struct OrbitReport {
    Int disc;
    unsigned n = 0;
    Int height;
    std::vector<PairQD> representatives;
    std::size_t orbit_count = 0;
    Int predicted;
    bool agreement = false;
    std::vector<std::string> notes;
    std::string status;  // "ok" or "height-exhausted"
};

/* Sweeps delta with |t_i| <= height over every class representative of
 * discriminant d, keeps unit-resultant pairs, and deduplicates them with
 * pairs_equivalent. `budget` caps the number of sweep candidates; exceeding
 * it yields a partial report with status "height-exhausted". */
OrbitReport enumerate_orbits(const Int& d, unsigned n, const Int& height,
                             unsigned long budget = 200000000UL);

/* Class of the evaluation delta(alpha, beta) in the Selmer cokernel.
 * Experimental: equal invariants are necessary for equivalence; the
 * decision procedure stays authoritative. */
struct SelmerInvariant {
    std::vector<Int> coords;  // canonical coordinates in the coker group
    std::vector<Int> coords_inverse;
    bool experimental = true;
};
SelmerInvariant selmer_invariant_experimental(const PairQD& p);

}  // namespace qtor

#endif
