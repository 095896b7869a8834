#ifndef QTOR_GROUP_HPP
#define QTOR_GROUP_HPP

#include "qtor/binform.hpp"
#include "qtor/qorder.hpp"

namespace qtor {

/* A point of the pair space: a quadratic form and a degree-n form. */
struct PairQD {
    QuadForm q;
    BinForm delta;
    bool operator==(const PairQD& o) const { return q == o.q && delta == o.delta; }
};

/* Element of the pair-space symmetry group over Z, in semidirect normal
 * form: unipotent part outermost, then the scalar chi, the extra sign eta,
 * and the GL2 part. The action, innermost first:
 *   mat:  (q, delta) -> ((q o m)/det m, (delta o m)/det m)
 *   chi:  (q, delta) -> (chi q, chi delta)
 *   eta:  (q, delta) -> (q, eta delta)
 *   uni:  (q, delta) -> (q, delta + sum_i uni[i] x^i y^(n-2-i) q)
 * eta is the Z-point of the central mu_(n-2) quotient that exists only for
 * even n (the class of c*I with c^(n-2) = -1); for odd n it is forced to +1
 * and delta-negation is realized by mat = -I instead. */
class GroupElem {
  public:
    GroupElem(unsigned n, std::vector<Int> uni, int chi, int eta, UnimodMat mat);
    static GroupElem identity(unsigned n);
    static GroupElem unipotent(unsigned n, std::vector<Int> uni);
    static GroupElem scaling(unsigned n, int chi);
    static GroupElem delta_negation(unsigned n);  // eta for even n, -I for odd n
    static GroupElem matrix(unsigned n, const UnimodMat& m);

    unsigned n() const { return n_; }
    const std::vector<Int>& uni() const { return uni_; }
    int chi() const { return chi_; }
    int eta() const { return eta_; }
    const UnimodMat& mat() const { return mat_; }

    /* Same action on the pair space; for even n the matrix is only
     * determined up to sign. */
    bool same_action(const GroupElem& o) const;

  private:
    unsigned n_;
    std::vector<Int> uni_;  // length n-1, uni[i] multiplies x^i y^(n-2-i)
    int chi_, eta_;
    UnimodMat mat_;
};

PairQD act(const GroupElem& g, const PairQD& p);
GroupElem compose_group(const GroupElem& g1, const GroupElem& g2);
GroupElem group_inverse(const GroupElem& g);

/* Canonical representative of delta modulo the lattice of multiples of q,
 * together with the rank-2 coordinate that classifies the coset: the
 * evaluation delta(alpha, beta) in the order, which has the multiples of q
 * as exact kernel since q is primitive. */
struct Residue {
    OrderElem value;           // delta(alpha, beta) in O_d
    BinForm canonical;         // HNF-canonical coset representative
    std::vector<Int> uni_used; // canonical = delta - (sum_i uni_used[i] x^i y^(n-2-i)) q
};
Residue residue_mod_q(const BinForm& delta, const QuadForm& q);

}  // namespace qtor

#endif
