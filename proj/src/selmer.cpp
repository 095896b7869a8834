#include "qtor/selmer.hpp"

#include <algorithm>
#include <map>

#include "qtor/qform.hpp"

namespace qtor {

Int AbelianGroup::order() const {
    Int acc = 1;
    for (const Int& d : invariants) acc *= d;
    return acc;
}

Int AbelianGroup::two_torsion() const {
    Int acc = 1;
    for (const Int& d : invariants) acc *= gcd(d, Int(2));
    return acc;
}

TorsionBasis class_torsion_basis(const ClassGroup& g, unsigned n) {
    std::vector<std::size_t> torsion;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (n % g.order_of(i) == 0) torsion.push_back(i);

    TorsionBasis basis;
    if (torsion.size() == 1) return basis;

    std::vector<unsigned> primes;
    {
        std::size_t t = torsion.size();
        for (unsigned p = 2; p <= t; ++p) {
            if (t % p) continue;
            primes.push_back(p);
            while (t % p == 0) t /= p;
        }
    }

    for (unsigned p : primes) {
        std::vector<std::size_t> tp;
        for (std::size_t c : torsion) {
            unsigned ord = g.order_of(c);
            /* p-power order */
            while (ord % p == 0) ord /= p;
            if (ord == 1) tp.push_back(c);
        }
        /* generated subgroup as element -> exponent vector over the basis */
        std::map<std::size_t, std::vector<long>> span;
        span[g.principal_index()] = {};
        std::vector<std::size_t> pgens;
        std::vector<unsigned> pords;

        auto rebuild_span = [&]() {
            span.clear();
            std::vector<long> exps(pgens.size(), 0);
            for (;;) {
                std::size_t e = g.principal_index();
                for (std::size_t i = 0; i < pgens.size(); ++i) {
                    std::size_t pw = g.principal_index();
                    for (long k = 0; k < exps[i]; ++k) pw = g.compose_idx(pw, pgens[i]);
                    e = g.compose_idx(e, pw);
                }
                if (!span.emplace(e, exps).second)
                    throw internal_error("class_torsion_basis: generators are not independent");
                std::size_t i = 0;
                while (i < exps.size()) {
                    if (++exps[i] < static_cast<long>(pords[i])) break;
                    exps[i] = 0;
                    ++i;
                }
                if (i == exps.size()) break;
            }
            if (pgens.empty()) span[g.principal_index()] = {};
        };
        rebuild_span();

        while (span.size() < tp.size()) {
            /* element of maximal order in the quotient by the current span */
            std::size_t best = g.principal_index();
            unsigned best_k = 0;
            for (std::size_t c : tp) {
                unsigned k = 0;
                std::size_t cur = c;
                while (span.find(cur) == span.end()) {
                    std::size_t pw = cur;
                    for (unsigned j = 1; j < p; ++j) pw = g.compose_idx(pw, cur);
                    cur = pw;
                    ++k;
                    if (k > 64) throw internal_error("class_torsion_basis: runaway order");
                }
                if (k > best_k) {
                    best_k = k;
                    best = c;
                }
            }
            if (best_k == 0) throw internal_error("class_torsion_basis: no progress");
            /* adjust so <span, y> is direct: y^(p^k) lies in the span with
             * exponents divisible by p^k */
            std::size_t y = best;
            unsigned pk = 1;
            for (unsigned j = 0; j < best_k; ++j) pk *= p;
            std::size_t ypk = g.principal_index();
            for (unsigned j = 0; j < pk; ++j) ypk = g.compose_idx(ypk, y);
            std::vector<long> exps = span.at(ypk);
            for (std::size_t i = 0; i < exps.size(); ++i) {
                if (exps[i] % static_cast<long>(pk) != 0) {
                    /* use the other coset representative direction */
                    exps[i] = exps[i] - static_cast<long>(pords[i]);
                    if (exps[i] % static_cast<long>(pk) != 0)
                        throw internal_error("class_torsion_basis: adjustment failed");
                }
                long corr = -exps[i] / static_cast<long>(pk);
                long cnorm = ((corr % static_cast<long>(pords[i])) + pords[i]) % pords[i];
                std::size_t pw = g.principal_index();
                for (long k2 = 0; k2 < cnorm; ++k2) pw = g.compose_idx(pw, pgens[i]);
                y = g.compose_idx(y, pw);
            }
            pgens.push_back(y);
            pords.push_back(pk);
            rebuild_span();
        }
        for (std::size_t i = 0; i < pgens.size(); ++i) {
            basis.gens.push_back(pgens[i]);
            basis.orders.push_back(pords[i]);
        }
    }

    /* validation: the basis spans a subgroup of the right size */
    Int prod = 1;
    for (unsigned m : basis.orders) prod *= m;
    if (prod != Int(torsion.size()))
        throw internal_error("class_torsion_basis: basis does not span the torsion subgroup");
    return basis;
}

std::vector<Int> CokerDescription::reduce_exponents(const std::vector<Int>& exps) const {
    if (exps.size() != generator_names.size())
        throw domain_error("reduce_exponents: wrong exponent count");
    /* coordinates over the SNF generators t' (t = V t'): x.t = (x.V).t' */
    std::vector<Int> coords(exps.size(), Int(0));
    for (std::size_t j = 0; j < exps.size(); ++j)
        for (std::size_t i = 0; i < exps.size(); ++i)
            coords[j] += exps[i] * snf_v.at(i, j);
    std::vector<Int> out;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        const Int& dj = snf_diag[j];
        if (dj == 1) continue;
        out.push_back(floor_mod(coords[j], dj));
    }
    return out;
}

CokerDescription coker_group(const Int& d, unsigned n) {
    if (n == 0) throw domain_error("coker_group: n must be positive");
    check_discriminant(d);
    QuadOrder o(d);
    CokerDescription out;
    out.disc = d;
    out.n = n;
    out.fundamental = o.is_fundamental();

    /* unit-part generators and their torsion relations */
    std::vector<std::vector<Int>> unit_rel;  // rows over unit generators only
    std::size_t ug = 0;
    if (d < 0) {
        int w = unit_torsion(d);
        out.generator_names.push_back("zeta");
        ug = 1;
        unit_rel.push_back({Int(w)});
        unit_rel.push_back({Int(n)});
        if (n % 2 == 0) unit_rel.push_back({Int(w / 2)});  // class of -1
    } else {
        out.generator_names.push_back("minus_one");
        out.generator_names.push_back("eps");
        ug = 2;
        unit_rel.push_back({Int(2), Int(0)});
        unit_rel.push_back({Int(n), Int(0)});
        unit_rel.push_back({Int(0), Int(n)});
        if (n % 2 == 0) unit_rel.push_back({Int(1), Int(0)});  // class of -1
    }
    {
        IntMatrix um(unit_rel.size(), ug);
        for (std::size_t i = 0; i < unit_rel.size(); ++i)
            for (std::size_t j = 0; j < ug; ++j) um.at(i, j) = unit_rel[i][j];
        SnfResult s = snf(um);
        for (std::size_t j = 0; j < ug; ++j) {
            Int dj = (j < std::min(um.rows(), um.cols())) ? s.d.at(j, j) : Int(0);
            if (dj == 0) throw internal_error("coker_group: infinite unit part");
            if (dj > 1) out.unit_invariants.push_back(dj);
        }
    }

    /* class part */
    const ClassGroup& g = class_group(d);
    TorsionBasis basis = class_torsion_basis(g, n);
    for (std::size_t i = 0; i < basis.gens.size(); ++i) {
        const QuadForm& q = g.representatives()[basis.gens[i]];
        FormIdealData data = ideal_from_form(q);
        unsigned m = basis.orders[i];
        auto h = principal_generator(o, ideal_pow(o, data.ideal, m));
        auto lift = principal_generator(o, ideal_pow(o, data.ideal, n));
        if (!h || !lift) throw internal_error("coker_group: expected principal power");
        SelmerLift sl{basis.gens[i], m, data.ideal, canonical_associate(o, *h),
                      canonical_associate(o, *lift)};
        out.lifts.push_back(std::move(sl));
        out.generator_names.push_back("s" + std::to_string(i + 1));
    }

    const std::size_t gens = ug + out.lifts.size();
    std::vector<std::vector<Int>> rel;
    for (const auto& row : unit_rel) {
        std::vector<Int> r(gens, Int(0));
        for (std::size_t j = 0; j < ug; ++j) r[j] = row[j];
        rel.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < out.lifts.size(); ++i) {
        const SelmerLift& sl = out.lifts[i];
        /* n * s_i = 0 in Sel_n */
        std::vector<Int> rn(gens, Int(0));
        rn[ug + i] = Int(n);
        rel.push_back(std::move(rn));
        /* m * s_i = class of lift^m / h^n in the unit part */
        OrderElem num = elem_pow(o, sl.lift, sl.order);
        OrderElem den = elem_pow(o, sl.h, n);
        auto u = elem_div(o, num, den);
        if (!u || abs(elem_norm(o, *u)) != 1)
            throw internal_error("coker_group: lift relation is not a unit");
        std::vector<Int> rm(gens, Int(0));
        rm[ug + i] = Int(sl.order);
        if (d < 0) {
            /* write u as zeta^k */
            int w = unit_torsion(d);
            OrderElem zeta = (d == -3 || d == -4) ? OrderElem(2, 1) : OrderElem(-1, 0);
            OrderElem z(1, 0);
            int k = 0;
            while (!(z == *u)) {
                z = elem_mul(o, z, zeta);
                if (++k > w) throw internal_error("coker_group: unit not in torsion group");
            }
            rm[0] = Int(-k);
        } else {
            UnitLog lg = unit_log(o, *u);
            rm[0] = Int(lg.sign == -1 ? -1 : 0);
            rm[1] = Int(-lg.k);
        }
        rel.push_back(std::move(rm));
    }

    out.presentation = IntMatrix(rel.size(), gens);
    for (std::size_t i = 0; i < rel.size(); ++i)
        for (std::size_t j = 0; j < gens; ++j) out.presentation.at(i, j) = rel[i][j];

    SnfResult s = snf(out.presentation);
    out.snf_v = s.v;
    out.snf_diag.assign(gens, Int(0));
    for (std::size_t j = 0; j < gens; ++j) {
        Int dj = (j < std::min(out.presentation.rows(), gens)) ? s.d.at(j, j) : Int(0);
        if (dj == 0) throw internal_error("coker_group: presentation has a free part");
        out.snf_diag[j] = dj;
        if (dj > 1) out.group.invariants.push_back(dj);
    }
    std::sort(out.group.invariants.begin(), out.group.invariants.end());

    /* the extension multiplies orders: |A| = |cl[n]| * |unit part| */
    Int cl_order = 1;
    for (unsigned m : basis.orders) cl_order *= m;
    Int unit_order = 1;
    for (const Int& di : out.unit_invariants) unit_order *= di;
    if (out.group.order() != cl_order * unit_order)
        throw internal_error("coker_group: extension order mismatch");
    return out;
}

Int inversion_orbit_count(const AbelianGroup& a) {
    return exact_div(a.order() + a.two_torsion(), 2);
}

Int predicted_orbit_count(const Int& d, unsigned n) {
    return inversion_orbit_count(coker_group(d, n).group);
}

}  // namespace qtor
