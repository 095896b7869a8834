#include "qtor/qorder.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qtor {

OrderElem elem_add(const OrderElem& x, const OrderElem& y) { return {x.u + y.u, x.v + y.v}; }
OrderElem elem_sub(const OrderElem& x, const OrderElem& y) { return {x.u - y.u, x.v - y.v}; }
OrderElem elem_neg(const OrderElem& x) { return {-x.u, -x.v}; }

OrderElem elem_mul(const QuadOrder& o, const OrderElem& x, const OrderElem& y) {
    /* omega^2 = d*omega - N(omega) */
    Int vv = x.v * y.v;
    return {x.u * y.u - vv * o.omega_norm(), x.u * y.v + x.v * y.u + vv * o.disc()};
}

OrderElem elem_conj(const QuadOrder& o, const OrderElem& x) {
    return {x.u + x.v * o.disc(), -x.v};
}

Int elem_norm(const QuadOrder& o, const OrderElem& x) {
    return x.u * x.u + x.u * x.v * o.disc() + x.v * x.v * o.omega_norm();
}

Int elem_trace(const QuadOrder& o, const OrderElem& x) { return 2 * x.u + x.v * o.disc(); }

OrderElem elem_pow(const QuadOrder& o, const OrderElem& x, unsigned n) {
    OrderElem acc(1, 0), sq = x;
    while (n) {
        if (n & 1u) acc = elem_mul(o, acc, sq);
        n >>= 1u;
        if (n) sq = elem_mul(o, sq, sq);
    }
    return acc;
}

std::optional<OrderElem> elem_div(const QuadOrder& o, const OrderElem& x, const OrderElem& y) {
    Int ny = elem_norm(o, y);
    if (ny == 0) throw domain_error("elem_div: division by zero");
    OrderElem z = elem_mul(o, x, elem_conj(o, y));
    if (floor_mod(z.u, ny) != 0 || floor_mod(z.v, ny) != 0) return std::nullopt;
    return OrderElem(exact_div(z.u, ny), exact_div(z.v, ny));
}

int real_sign(const QuadOrder& o, const OrderElem& x) {
    if (o.disc() < 0) throw domain_error("real_sign: real orders only");
    /* 2*(u + v*omega) = (2u + vd) + v*sqrt(d) */
    Int a = 2 * x.u + x.v * o.disc();
    const Int& b = x.v;
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Int lhs = a * a, rhs = b * b * o.disc();
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}

int real_cmp(const QuadOrder& o, const OrderElem& x, const OrderElem& y) {
    return real_sign(o, elem_sub(x, y));
}

OrderIdeal::OrderIdeal(const QuadOrder& o, const std::vector<OrderElem>& generators, Int den)
    : den_(std::move(den)) {
    if (den_ <= 0) throw domain_error("ideal: denominator must be positive");
    if (generators.empty()) throw domain_error("ideal: no generators");
    IntMatrix rows(2 * generators.size(), 2);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const OrderElem& g = generators[i];
        OrderElem wg = elem_mul(o, OrderElem(0, 1), g);
        rows.at(2 * i, 0) = g.v;
        rows.at(2 * i, 1) = g.u;
        rows.at(2 * i + 1, 0) = wg.v;
        rows.at(2 * i + 1, 1) = wg.u;
    }
    IntMatrix h = hnf(rows).h;
    basis_ = IntMatrix(2, 2);
    for (std::size_t i = 0; i < 2 && i < h.rows(); ++i)
        for (std::size_t j = 0; j < 2; ++j) basis_.at(i, j) = h.at(i, j);
    if (basis_.at(0, 0) == 0 || basis_.at(1, 1) == 0)
        throw domain_error("ideal: generators do not span a full module");
}

OrderIdeal OrderIdeal::whole_order(const QuadOrder& o) {
    return OrderIdeal(o, {OrderElem(1, 0)});
}

OrderIdeal OrderIdeal::principal(const QuadOrder& o, const OrderElem& g) {
    if (g.is_zero()) throw domain_error("ideal: zero generator");
    return OrderIdeal(o, {g});
}

Int OrderIdeal::norm() const {
    if (den_ != 1) throw domain_error("ideal norm: integral ideals only");
    return basis_.at(0, 0) * basis_.at(1, 1);
}

Int OrderIdeal::content() const {
    return gcd(gcd(basis_.at(0, 0), basis_.at(0, 1)), basis_.at(1, 1));
}

bool OrderIdeal::contains(const OrderElem& x) const {
    Int xu = den_ * x.u, xv = den_ * x.v;
    const Int& v1 = basis_.at(0, 0);
    if (floor_mod(xv, v1) != 0) return false;
    Int k = exact_div(xv, v1);
    return floor_mod(xu - k * basis_.at(0, 1), basis_.at(1, 1)) == 0;
}

bool OrderIdeal::operator==(const OrderIdeal& o) const {
    if (den_ == o.den_) return basis_ == o.basis_;
    /* compare cross-scaled bases */
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (basis_.at(i, j) * o.den_ != o.basis_.at(i, j) * den_) return false;
    return true;
}

OrderElem OrderIdeal::gen1() const { return OrderElem(basis_.at(0, 1), basis_.at(0, 0)); }
OrderElem OrderIdeal::gen2() const { return OrderElem(basis_.at(1, 1), basis_.at(1, 0)); }

OrderIdeal ideal_mul(const QuadOrder& o, const OrderIdeal& i, const OrderIdeal& j) {
    std::vector<OrderElem> gens;
    for (const OrderElem& a : {i.gen1(), i.gen2()})
        for (const OrderElem& b : {j.gen1(), j.gen2()}) gens.push_back(elem_mul(o, a, b));
    return OrderIdeal(o, gens, i.den() * j.den());
}

OrderIdeal ideal_pow(const QuadOrder& o, const OrderIdeal& i, unsigned n) {
    OrderIdeal acc = OrderIdeal::whole_order(o);
    OrderIdeal sq = i;
    while (n) {
        if (n & 1u) acc = ideal_mul(o, acc, sq);
        n >>= 1u;
        if (n) sq = ideal_mul(o, sq, sq);
    }
    return acc;
}

namespace {

FormIdealData make_pair(const QuadForm& q, bool signed_beta) {
    Int d = q.discriminant();
    QuadOrder o(d);
    Int a = q.a();
    if (!signed_beta && a <= 0)
        throw domain_error("ideal_from_form: form must be normalized with a > 0");
    if (a == 0) throw domain_error("dictionary_pair: a = 0");
    /* alpha = (-b + sqrt d)/2 = -(b+d)/2 + omega */
    OrderElem alpha(exact_div(-(q.b() + d), 2), Int(1));
    OrderElem beta(a, Int(0));
    OrderIdeal ideal(o, {beta, alpha});
    FormIdealData data{q, alpha, beta, ideal, ideal.norm()};
    if (data.ideal_norm != abs(a)) throw internal_error("dictionary: ideal norm != |a|");
    return data;
}

}  // namespace

FormIdealData ideal_from_form(const QuadForm& q) { return make_pair(q, false); }
FormIdealData dictionary_pair(const QuadForm& q) { return make_pair(q, true); }

QuadForm form_from_ideal(const QuadOrder& o, const OrderIdeal& ideal) {
    if (!ideal.is_integral()) throw domain_error("form_from_ideal: integral ideals only");
    Int g = ideal.content();
    Int v1 = exact_div(ideal.basis().at(0, 0), g);
    Int u1 = exact_div(ideal.basis().at(0, 1), g);
    Int a = exact_div(ideal.basis().at(1, 1), g);
    if (v1 != 1) throw internal_error("form_from_ideal: unexpected omega pivot");
    Int b = -(2 * u1 + o.disc());
    Int num = b * b - o.disc();
    if (floor_mod(num, 4 * a) != 0)
        throw domain_error("form_from_ideal: module is not an ideal");
    Int c = exact_div(num, 4 * a);
    if (gcd(gcd(a, b), c) != 1)
        throw domain_error("form_from_ideal: ideal is not invertible");
    return QuadForm(a, b, c);
}

namespace {

/* Transported dictionary numerator under q o M: if a*q = N(-beta x + alpha y)
 * then a*(q o M) = N(-beta'' x + alpha'' y) with beta'' = beta*p - alpha*r,
 * spanning the same module. When (q o M).a = +-1 the module is generated by
 * sign(a_final) * beta''. */
OrderElem transport_beta(const QuadOrder& o, const OrderElem& beta, const OrderElem& alpha,
                         const UnimodMat& m) {
    return elem_sub(elem_mul(o, beta, OrderElem(m.p, 0)), elem_mul(o, alpha, OrderElem(m.r, 0)));
}

}  // namespace

std::optional<OrderElem> principal_generator(const QuadOrder& o, const OrderIdeal& ideal) {
    if (!ideal.is_integral()) throw domain_error("principal_generator: integral ideals only");
    Int content = ideal.content();
    OrderIdeal j = (content == 1)
                       ? ideal
                       : OrderIdeal(o, {OrderElem(exact_div(ideal.basis().at(0, 1), content),
                                                  exact_div(ideal.basis().at(0, 0), content)),
                                        OrderElem(exact_div(ideal.basis().at(1, 1), content),
                                                  Int(0))});
    QuadForm qj = form_from_ideal(o, j);  // throws if not invertible
    FormIdealData data = dictionary_pair(qj);
    if (!(data.ideal == j)) throw internal_error("principal_generator: dictionary module mismatch");

    auto finish = [&](OrderElem g) -> OrderElem {
        if (content != 1) g = OrderElem(g.u * content, g.v * content);
        OrderIdeal check = OrderIdeal::principal(o, g);
        if (!(check == ideal)) throw internal_error("principal_generator: generator check failed");
        return g;
    };

    if (o.disc() < 0) {
        /* minimal vector of the norm form on the basis (gen2 = a, gen1) */
        OrderElem b1 = j.gen2(), b2 = j.gen1();
        Int qa = elem_norm(o, b1);
        Int qb = elem_trace(o, elem_mul(o, b1, elem_conj(o, b2)));
        Int qc = elem_norm(o, b2);
        LatticeReduction red = lagrange_gauss({b1.u, b1.v}, {b2.u, b2.v}, qa, qb, qc);
        if (red.a != j.norm()) return std::nullopt;
        return finish(OrderElem(red.v1[0], red.v1[1]));
    }

    Reduction r0 = reduce(qj);
    for (const Reduction& st : cycle(r0.form)) {
        if (abs(st.form.a()) != 1) continue;
        UnimodMat total = r0.m * st.m;
        OrderElem beta2 = transport_beta(o, data.beta, data.alpha, total);
        return finish(st.form.a() < 0 ? elem_neg(beta2) : beta2);
    }
    return std::nullopt;
}

namespace {
std::map<Int, OrderElem> g_unit_cache;
std::mutex g_unit_mutex;
}  // namespace

OrderElem fundamental_unit(const Int& d) {
    if (d <= 0) throw domain_error("fundamental_unit: positive discriminants only");
    check_discriminant(d);
    {
        std::lock_guard<std::mutex> lock(g_unit_mutex);
        auto it = g_unit_cache.find(d);
        if (it != g_unit_cache.end()) return it->second;
    }
    QuadOrder o(d);
    FormIdealData data = dictionary_pair(form_from_ideal(o, OrderIdeal::whole_order(o)));
    Reduction r0 = reduce(data.q);
    std::vector<Reduction> cyc = cycle(r0.form);
    std::optional<OrderElem> best;
    auto consider = [&](const UnimodMat& total, const Int& a_final) {
        OrderElem beta2 = transport_beta(o, data.beta, data.alpha, total);
        OrderElem g = (a_final < 0) ? elem_neg(beta2) : beta2;
        Int n = elem_norm(o, g);
        if (abs(n) != 1) throw internal_error("fundamental_unit: transport is not a unit");
        if (real_sign(o, g) < 0) g = elem_neg(g);
        /* bring above 1 */
        if (real_cmp(o, g, OrderElem(1, 0)) < 0) {
            OrderElem inv = elem_conj(o, g);
            if (n < 0) inv = elem_neg(inv);
            g = inv;
            if (real_sign(o, g) < 0) g = elem_neg(g);
        }
        if (g == OrderElem(1, 0)) return;
        if (!best || real_cmp(o, g, *best) < 0) best = g;
    };
    for (std::size_t k = 1; k < cyc.size(); ++k)
        if (abs(cyc[k].form.a()) == 1) consider(r0.m * cyc[k].m, cyc[k].form.a());
    UnimodMat around = cyc.back().m * rho_step(cyc.back().form).m;
    consider(r0.m * around, cyc[0].form.a());
    if (!best) throw internal_error("fundamental_unit: no unit found on the principal cycle");
    std::lock_guard<std::mutex> lock(g_unit_mutex);
    g_unit_cache.emplace(d, *best);
    return *best;
}

int unit_torsion(const Int& d) {
    if (d >= 0) throw domain_error("unit_torsion: negative discriminants only");
    check_discriminant(d);
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

OrderElem evaluate_binform(const QuadOrder& o, const BinForm& delta, const FormIdealData& data) {
    const unsigned n = delta.degree();
    std::vector<OrderElem> apow(n + 1), bpow(n + 1);
    apow[0] = bpow[0] = OrderElem(1, 0);
    for (unsigned i = 1; i <= n; ++i) {
        apow[i] = elem_mul(o, apow[i - 1], data.alpha);
        bpow[i] = elem_mul(o, bpow[i - 1], data.beta);
    }
    OrderElem acc(0, 0);
    for (unsigned i = 0; i <= n; ++i) {
        if (delta.coeff(i) == 0) continue;
        OrderElem term = elem_mul(o, apow[i], bpow[n - i]);
        acc = elem_add(acc, elem_mul(o, term, OrderElem(delta.coeff(i), 0)));
    }
    return acc;
}

UnitLog unit_log(const QuadOrder& o, const OrderElem& unit) {
    Int n = elem_norm(o, unit);
    if (abs(n) != 1) throw domain_error("unit_log: not a unit");
    OrderElem eps = fundamental_unit(o.disc());
    OrderElem eps_inv = elem_conj(o, eps);
    if (elem_norm(o, eps) < 0) eps_inv = elem_neg(eps_inv);
    UnitLog out{+1, 0};
    OrderElem v = unit;
    if (real_sign(o, v) < 0) {
        out.sign = -1;
        v = elem_neg(v);
    }
    const OrderElem one(1, 0);
    for (long guard = 0; !(v == one); ++guard) {
        if (guard > 2000000) throw internal_error("unit_log: runaway iteration");
        if (real_cmp(o, v, one) > 0) {
            v = elem_mul(o, v, eps_inv);
            ++out.k;
        } else {
            v = elem_mul(o, v, eps);
            --out.k;
        }
    }
    return out;
}

namespace {

std::vector<OrderElem> torsion_units(const QuadOrder& o) {
    std::vector<OrderElem> out{OrderElem(1, 0), OrderElem(-1, 0)};
    if (o.disc() == -4 || o.disc() == -3) {
        OrderElem zeta(2, 1);  // i for d = -4, zeta_6 for d = -3
        OrderElem z = zeta;
        while (!(z == OrderElem(1, 0))) {
            if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
            z = elem_mul(o, z, zeta);
        }
    }
    return out;
}

}  // namespace

OrderElem canonical_associate(const QuadOrder& o, const OrderElem& g) {
    if (g.is_zero()) return g;
    if (o.disc() < 0) {
        OrderElem best = g;
        for (const OrderElem& z : torsion_units(o)) {
            OrderElem cand = elem_mul(o, g, z);
            if (cand < best) best = cand;
        }
        return best;
    }
    OrderElem eps = fundamental_unit(o.disc());
    OrderElem eps_inv = elem_conj(o, eps);
    if (elem_norm(o, eps) < 0) eps_inv = elem_neg(eps_inv);
    OrderElem v = g;
    if (real_sign(o, v) < 0) v = elem_neg(v);
    const OrderElem one(1, 0);
    for (long guard = 0;; ++guard) {
        if (guard > 2000000) throw internal_error("canonical_associate: runaway iteration");
        if (real_cmp(o, v, one) < 0) {
            v = elem_mul(o, v, eps);
            continue;
        }
        if (real_cmp(o, v, eps) >= 0) {
            v = elem_mul(o, v, eps_inv);
            continue;
        }
        break;
    }
    return v;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
    /* Floyd cycle detection, deterministic polynomial offsets. */
    if (floor_mod(n, 2) == 0) return 2;
    for (Int c = 1; c < 40; ++c) {
        Int x = 2, y = 2, d = 1;
        Int count = 0;
        while (d == 1) {
            x = floor_mod(x * x + c, n);
            y = floor_mod(y * y + c, n);
            y = floor_mod(y * y + c, n);
            Int diff = x > y ? Int(x - y) : Int(y - x);
            if (diff == 0) break;
            d = gcd(diff, n);
            if (++count > 10000000) throw resource_error("factorization budget exceeded");
        }
        if (d != 1 && d != n) return d;
    }
    throw resource_error("pollard rho failed to split " + n.get_str());
}

void factor_rec(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(exact_div(n, d), out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n0) {
    Int n = abs(n0);
    if (n == 0) throw domain_error("factor_integer: zero");
    std::map<Int, unsigned> acc;
    for (long p : {2L, 3L, 5L, 7L}) {
        while (floor_mod(n, p) == 0) {
            ++acc[Int(p)];
            n = exact_div(n, p);
        }
    }
    for (Int p = 11; p * p <= n && p <= 1000000; p += 2) {
        while (floor_mod(n, p) == 0) {
            ++acc[p];
            n = exact_div(n, p);
        }
    }
    if (n > 1) factor_rec(n, acc);
    return {acc.begin(), acc.end()};
}

namespace {

/* Tonelli-Shanks square root mod an odd prime. */
Int sqrt_mod(const Int& a0, const Int& p) {
    Int a = floor_mod(a0, p);
    if (a == 0) return 0;
    auto powm = [&](Int base, Int e) {
        Int r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    if (powm(a, exact_div(p - 1, 2)) != 1) throw domain_error("sqrt_mod: non-residue");
    if (floor_mod(p, 4) == 3) return powm(a, exact_div(p + 1, 4));
    Int q = p - 1;
    unsigned s = 0;
    while (floor_mod(q, 2) == 0) {
        q = exact_div(q, 2);
        ++s;
    }
    Int z = 2;
    while (powm(z, exact_div(p - 1, 2)) == 1) ++z;
    Int m(s), c = powm(z, q), t = powm(a, q), r = powm(a, exact_div(q + 1, 2));
    while (t != 1) {
        Int tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = floor_mod(tt * tt, p);
            ++i;
            if (Int(i) >= m) throw internal_error("sqrt_mod: lost the loop invariant");
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = floor_mod(b * b, p);
        m = i;
        c = floor_mod(b * b, p);
        t = floor_mod(t * c, p);
        r = floor_mod(r * b, p);
    }
    return r;
}

}  // namespace

PrimeAbove prime_above(const QuadOrder& o, const Int& p) {
    const Int& d = o.disc();
    auto ideal_from_b = [&](const Int& b) {
        OrderElem alpha(exact_div(-(b + d), 2), Int(1));
        OrderIdeal ideal(o, {OrderElem(p, 0), alpha});
        if (ideal.norm() != p) throw internal_error("prime_above: wrong norm");
        return ideal;
    };
    if (p == 2) {
        Int m8 = floor_mod(d, 8);
        if (m8 == 1) return {p, +1, ideal_from_b(Int(1))};
        if (m8 == 5) return {p, -1, OrderIdeal(o, {OrderElem(2, 0)})};
        /* even discriminant: ramified */
        Int b = (floor_mod(d, 8) == 0) ? Int(0) : Int(2);
        return {p, 0, ideal_from_b(b)};
    }
    int chi = mpz_kronecker(d.get_mpz_t(), p.get_mpz_t());
    if (chi == -1) return {p, -1, OrderIdeal(o, {OrderElem(p, 0)})};
    Int b = (chi == 0) ? Int(0) : sqrt_mod(d, p);
    if (floor_mod(b - d, 2) != 0) b += p;  // p odd, so adding p fixes parity
    return {p, chi, ideal_from_b(b)};
}

std::optional<OrderElem> nth_power_classify(const QuadOrder& o, const OrderElem& x, unsigned n,
                                            bool allow_minus) {
    if (x.is_zero()) throw domain_error("nth_power_classify: zero element");
    if (n == 0) throw domain_error("nth_power_classify: n must be positive");
    if (n == 1) return x;
    if (!o.is_fundamental())
        throw domain_error("nth_power_classify: fundamental discriminants only");

    Int nx = elem_norm(o, x);
    OrderIdeal j = OrderIdeal::whole_order(o);
    for (const auto& [p, e] : factor_integer(nx)) {
        PrimeAbove pa = prime_above(o, p);
        if (pa.kind == -1) {
            /* exponent of (p) = min coordinate valuation */
            unsigned k = 0;
            Int pk = p;
            while (floor_mod(x.u, pk) == 0 && floor_mod(x.v, pk) == 0) {
                ++k;
                pk *= p;
            }
            if (2 * k != e) throw internal_error("nth_power_classify: inert valuation mismatch");
            if (k % n != 0) return std::nullopt;
            if (k > 0) j = ideal_mul(o, j, ideal_pow(o, pa.ideal, k / n));
            continue;
        }
        /* valuation at P by membership in P^k */
        unsigned vp = 0;
        OrderIdeal pk = pa.ideal;
        while (pk.contains(x)) {
            ++vp;
            pk = ideal_mul(o, pk, pa.ideal);
        }
        if (pa.kind == 0) {
            if (vp % n != 0) return std::nullopt;
            if (vp > 0) j = ideal_mul(o, j, ideal_pow(o, pa.ideal, vp / n));
        } else {
            if (vp > e) throw internal_error("nth_power_classify: split valuation exceeds norm");
            unsigned vq = e - vp;
            if (vp % n != 0 || vq % n != 0) return std::nullopt;
            if (vp > 0) j = ideal_mul(o, j, ideal_pow(o, pa.ideal, vp / n));
            if (vq > 0) {
                OrderIdeal conj_ideal(
                    o, {elem_conj(o, pa.ideal.gen1()), elem_conj(o, pa.ideal.gen2())});
                j = ideal_mul(o, j, ideal_pow(o, conj_ideal, vq / n));
            }
        }
    }

    auto g_opt = principal_generator(o, j);
    if (!g_opt) return std::nullopt;
    OrderElem g = *g_opt;
    OrderElem gn = elem_pow(o, g, n);
    auto u_opt = elem_div(o, x, gn);
    if (!u_opt) throw internal_error("nth_power_classify: x / g^n is not integral");
    OrderElem u = *u_opt;
    if (abs(elem_norm(o, u)) != 1) throw internal_error("nth_power_classify: quotient not a unit");

    auto check = [&](const OrderElem& y) -> std::optional<OrderElem> {
        OrderElem yn = elem_pow(o, y, n);
        if (yn == x) return y;
        if (allow_minus && elem_neg(yn) == x) return y;
        return std::nullopt;
    };
    if (o.disc() < 0) {
        for (const OrderElem& z : torsion_units(o))
            if (auto y = check(elem_mul(o, z, g))) return y;
        return std::nullopt;
    }
    UnitLog lg = unit_log(o, u);
    if (lg.k % static_cast<long>(n) != 0) return std::nullopt;
    OrderElem eps = fundamental_unit(o.disc());
    long jexp = lg.k / static_cast<long>(n);
    OrderElem z;
    if (jexp >= 0) {
        z = elem_pow(o, eps, static_cast<unsigned>(jexp));
    } else {
        OrderElem eps_inv = elem_conj(o, eps);
        if (elem_norm(o, eps) < 0) eps_inv = elem_neg(eps_inv);
        z = elem_pow(o, eps_inv, static_cast<unsigned>(-jexp));
    }
    for (const OrderElem& zz : {z, elem_neg(z)})
        if (auto y = check(elem_mul(o, zz, g))) return y;
    return std::nullopt;
}

}  // namespace qtor
