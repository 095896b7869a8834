#include "qtor/qform.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace qtor {

UnimodMat::UnimodMat(Int p_, Int q_, Int r_, Int s_)
    : p(std::move(p_)), q(std::move(q_)), r(std::move(r_)), s(std::move(s_)) {
    Int d = det();
    if (d != 1 && d != -1) throw domain_error("UnimodMat: determinant must be +-1");
}

UnimodMat UnimodMat::inverse() const {
    Int d = det();
    if (d == 1) return UnimodMat(s, -q, -r, p);
    return UnimodMat(-s, q, r, -p);
}

UnimodMat UnimodMat::operator*(const UnimodMat& o) const {
    return UnimodMat(p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s);
}

bool UnimodMat::operator==(const UnimodMat& o) const {
    return p == o.p && q == o.q && r == o.r && s == o.s;
}

bool is_valid_discriminant(const Int& d) {
    if (d == 0) return false;
    Int m = floor_mod(d, 4);
    if (m != 0 && m != 1) return false;
    if (d > 0 && is_perfect_square(d)) return false;
    return true;
}

void check_discriminant(const Int& d) {
    if (!is_valid_discriminant(d)) throw domain_error("invalid discriminant " + d.get_str());
}

bool is_fundamental_discriminant(const Int& d) {
    if (!is_valid_discriminant(d)) return false;
    auto squarefree = [](Int m) {
        if (m < 0) m = -m;
        for (Int p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    if (floor_mod(d, 4) == 1) return squarefree(d);
    Int m = exact_div(d, 4);
    Int r = floor_mod(m, 4);
    return (r == 2 || r == 3) && squarefree(m);
}

QuadForm::QuadForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    Int d = discriminant();
    if (!is_valid_discriminant(d))
        throw domain_error("form has invalid discriminant " + d.get_str());
    Int g = gcd(gcd(a_, b_), c_);
    if (g != 1) throw domain_error("form is not primitive");
}

bool QuadForm::operator<(const QuadForm& o) const {
    if (a_ != o.a_) return a_ < o.a_;
    if (b_ != o.b_) return b_ < o.b_;
    return c_ < o.c_;
}

QuadForm apply(const QuadForm& f, const UnimodMat& m) {
    Int a = f.eval(m.p, m.r);
    Int c = f.eval(m.q, m.s);
    Int b = 2 * (f.a() * m.p * m.q + f.c() * m.r * m.s) + f.b() * (m.p * m.s + m.q * m.r);
    return QuadForm(a, b, c);
}

QuadForm apply_twisted(const QuadForm& f, const UnimodMat& m) {
    QuadForm g = apply(f, m);
    if (m.det() == 1) return g;
    return g.negated();
}

bool is_reduced(const QuadForm& f) {
    Int d = f.discriminant();
    if (d < 0) {
        if (f.a() <= 0) return false;
        Int ab;
        mpz_abs(ab.get_mpz_t(), f.b().get_mpz_t());
        if (!(ab <= f.a() && f.a() <= f.c())) return false;
        if (f.b() < 0 && (ab == f.a() || f.a() == f.c())) return false;
        return true;
    }
    if (f.b() <= 0 || f.b() * f.b() >= d) return false;
    Int t = 2 * abs(f.a());
    /* sqrt d - b < 2|a| < sqrt d + b, via exact squaring */
    Int lo = t + f.b();          // want sqrt d < 2|a| + b
    if (lo * lo <= d) return false;
    Int hi = t - f.b();          // want 2|a| - b < sqrt d
    if (hi >= 0 && hi * hi >= d) return false;
    return true;
}

namespace {

/* Translation x -> x + k y: (a, b, c) -> (a, b + 2ak, ...). */
void translate(Int& b, Int& c, const Int& a, const Int& d, const Int& k, UnimodMat& m) {
    if (k == 0) return;
    b += 2 * a * k;
    c = exact_div(b * b - d, 4 * a);
    m = m * UnimodMat(1, k, 0, 1);
}

/* Normalize an indefinite form: b moved into the standard window mod 2|a|. */
void normalize_indefinite(Int& a, Int& b, Int& c, const Int& d, UnimodMat& m) {
    Int s = isqrt_floor(d);
    Int aa = abs(a);
    Int hi = (aa > s) ? aa : s;
    Int lo = hi - 2 * aa;
    /* unique b' in (lo, hi] congruent to b mod 2|a| */
    Int bp = lo + 1 + floor_mod(b - lo - 1, 2 * aa);
    translate(b, c, a, d, exact_div(bp - b, 2 * a), m);
}

}  // namespace

Reduction reduce(const QuadForm& f) {
    Int d = f.discriminant();
    Int a = f.a(), b = f.b(), c = f.c();
    UnimodMat m;
    if (d < 0) {
        if (a <= 0) throw domain_error("reduce: definite form must have a > 0");
        for (;;) {
            Int k = -floor_div(b + a, 2 * a);
            translate(b, c, a, d, k, m);
            if (a <= c) break;
            std::swap(a, c);
            b = -b;
            m = m * UnimodMat(0, -1, 1, 0);
        }
        if (b < 0 && (a == c || b == -a)) {
            if (a == c) {
                b = -b;
                m = m * UnimodMat(0, -1, 1, 0);
            } else {
                translate(b, c, a, d, Int(1), m);
            }
        }
        return {QuadForm(a, b, c), m};
    }
    normalize_indefinite(a, b, c, d, m);
    while (!is_reduced(QuadForm(a, b, c))) {
        std::swap(a, c);
        b = -b;
        m = m * UnimodMat(0, -1, 1, 0);
        normalize_indefinite(a, b, c, d, m);
    }
    return {QuadForm(a, b, c), m};
}

Reduction rho_step(const QuadForm& f) {
    Int d = f.discriminant();
    if (d < 0) throw domain_error("rho_step: indefinite forms only");
    Int a = f.c(), b = -f.b(), c = f.a();
    UnimodMat m(0, -1, 1, 0);
    normalize_indefinite(a, b, c, d, m);
    return {QuadForm(a, b, c), m};
}

std::vector<Reduction> cycle(const QuadForm& start) {
    if (!is_reduced(start)) throw domain_error("cycle: form must be reduced");
    std::vector<Reduction> out;
    out.push_back({start, UnimodMat::identity()});
    QuadForm cur = start;
    UnimodMat acc = UnimodMat::identity();
    for (;;) {
        Reduction step = rho_step(cur);
        acc = acc * step.m;
        cur = step.form;
        if (cur == start) break;
        out.push_back({cur, acc});
        if (out.size() > 100000) throw internal_error("cycle: runaway rho iteration");
    }
    return out;
}

namespace {

/* SL2 transport f o gamma == g, if any. */
std::optional<UnimodMat> sl2_transport(const QuadForm& f, const QuadForm& g) {
    if (f.discriminant() != g.discriminant()) return std::nullopt;
    Int d = f.discriminant();
    if (d < 0) {
        if ((f.a() > 0) != (g.a() > 0)) return std::nullopt;
        if (f.a() < 0) {
            auto r = sl2_transport(f.negated(), g.negated());
            return r;
        }
        Reduction rf = reduce(f), rg = reduce(g);
        if (!(rf.form == rg.form)) return std::nullopt;
        return rf.m * rg.m.inverse();
    }
    Reduction rf = reduce(f), rg = reduce(g);
    for (const Reduction& step : cycle(rf.form))
        if (step.form == rg.form) return rf.m * step.m * rg.m.inverse();
    return std::nullopt;
}

const UnimodMat kFlip(1, 0, 0, -1);

}  // namespace

std::vector<Transport> transports_all_grades(const QuadForm& q1, const QuadForm& q2) {
    std::vector<Transport> out;
    /* grade (chi, det) = (+1, +1): q1 o g == q2 */
    if (auto g = sl2_transport(q1, q2)) out.push_back({*g, +1});
    /* (+1, -1): q1 o g == -q2 with det -1 */
    if (auto g = sl2_transport(apply(q1, kFlip), q2.negated())) out.push_back({kFlip * *g, +1});
    /* (-1, +1): q1 o g == -q2 with det +1 */
    if (auto g = sl2_transport(q1, q2.negated())) out.push_back({*g, -1});
    /* (-1, -1): q1 o g == q2 with det -1 */
    if (auto g = sl2_transport(apply(q1, kFlip), q2)) out.push_back({kFlip * *g, -1});
    return out;
}

std::optional<Transport> equivalent(const QuadForm& q1, const QuadForm& q2,
                                    bool allow_det_minus_one, bool allow_negation) {
    if (q1.discriminant() != q2.discriminant())
        throw domain_error("equivalent: discriminant mismatch");
    for (const Transport& t : transports_all_grades(q1, q2)) {
        bool det_minus = t.m.det() == -1;
        if (det_minus && !allow_det_minus_one) continue;
        if (t.chi == -1 && !allow_negation) continue;
        return t;
    }
    return std::nullopt;
}

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    if (f1.discriminant() != f2.discriminant())
        throw domain_error("compose: discriminant mismatch");
    Int a1 = f1.a(), b1 = f1.b(), c1 = f1.c();
    Int a2 = f2.a(), b2 = f2.b(), c2 = f2.c();
    if (a1 > a2) {
        std::swap(a1, a2);
        std::swap(b1, b2);
        std::swap(c1, c2);
    }
    Int s = exact_div(b1 + b2, 2);
    Int n = b2 - s;
    Int y1, d;
    if (floor_mod(a2, a1) == 0) {
        y1 = 0;
        d = a1;
    } else {
        Int u, v;
        mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a2.get_mpz_t(), a1.get_mpz_t());
        y1 = u;
    }
    Int x2, y2, d1;
    if (floor_mod(s, d) == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Int u, v;
        mpz_gcdext(d1.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        x2 = u;
        y2 = -v;
    }
    Int v1 = exact_div(a1, d1);
    Int v2 = exact_div(a2, d1);
    Int r = floor_mod(y1 * y2 * n - x2 * c2, v1);
    Int b3 = b2 + 2 * v2 * r;
    Int a3 = v1 * v2;
    Int c3 = exact_div(c2 * d1 + r * (b2 + v2 * r), v1);
    return reduce(QuadForm(a3, b3, c3)).form;
}

std::vector<UnimodMat> proper_automorphs_definite(const QuadForm& q0) {
    Int d = q0.discriminant();
    if (d > 0) throw domain_error("proper_automorphs_definite: definite forms only");
    const QuadForm q = q0.a() > 0 ? q0 : q0.negated();
    const Int &a = q.a(), &b = q.b(), &c = q.c();
    std::vector<UnimodMat> out;
    auto push = [&](const Int& t, const Int& u) {
        /* automorph from t^2 - d u^2 = 4 */
        out.push_back(UnimodMat(exact_div(t - b * u, 2), -c * u, a * u, exact_div(t + b * u, 2)));
    };
    push(Int(2), Int(0));
    push(Int(-2), Int(0));
    if (d == -4) {
        push(Int(0), Int(1));
        push(Int(0), Int(-1));
    } else if (d == -3) {
        push(Int(1), Int(1));
        push(Int(-1), Int(1));
        push(Int(1), Int(-1));
        push(Int(-1), Int(-1));
    }
    return out;
}

UnimodMat pell_automorph(const QuadForm& q) {
    if (q.discriminant() < 0) throw domain_error("pell_automorph: indefinite forms only");
    Reduction r = reduce(q);
    std::vector<Reduction> cyc = cycle(r.form);
    UnimodMat around = cyc.back().m * rho_step(cyc.back().form).m;
    return r.m * around * r.m.inverse();
}

std::vector<Automorph> automorph_generators(const QuadForm& q) {
    Int d = q.discriminant();
    std::vector<Automorph> out;
    out.push_back({UnimodMat(-1, 0, 0, -1), +1});
    if (d < 0) {
        const QuadForm qp = q.a() > 0 ? q : q.negated();
        if (d == -3 || d == -4) {
            for (const UnimodMat& m : proper_automorphs_definite(qp))
                if (!(m == UnimodMat::identity()) && !(m == UnimodMat(-1, 0, 0, -1))) {
                    out.push_back({m, +1});
                    break;
                }
        }
        if (auto g = sl2_transport(apply(qp, kFlip), qp))
            out.push_back({kFlip * *g, -1});
        return out;
    }
    out.push_back({pell_automorph(q), +1});
    if (auto g = sl2_transport(apply(q, kFlip), q)) out.push_back({kFlip * *g, -1});
    if (auto g = sl2_transport(q, q.negated())) out.push_back({*g, -1});
    if (auto g = sl2_transport(apply(q, kFlip), q.negated())) out.push_back({kFlip * *g, +1});
    return out;
}

ClassGroup::ClassGroup(const Int& d) : d_(d) {
    check_discriminant(d);
    std::vector<QuadForm> forms;
    if (d < 0) {
        Int amax = isqrt_floor(floor_div(-d, 3)) + 1;
        for (Int a = 1; a <= amax; ++a) {
            for (Int b = -a; b <= a; ++b) {
                if (floor_mod(b - d, 2) != 0) continue;
                Int num = b * b - d;
                if (floor_mod(num, 4 * a) != 0) continue;
                Int c = exact_div(num, 4 * a);
                if (c < a) continue;
                if (gcd(gcd(a, b), c) != 1) continue;
                QuadForm f(a, b, c);
                if (is_reduced(f)) forms.push_back(f);
            }
        }
        std::sort(forms.begin(), forms.end());
        reps_ = forms;
        for (const QuadForm& f : reps_) members_.push_back({f});
    } else {
        Int s = isqrt_floor(d);
        for (Int b = 1; b <= s; ++b) {
            if (floor_mod(b - d, 2) != 0) continue;
            Int num = b * b - d;  // = 4ac < 0
            if (floor_mod(num, 4) != 0) continue;
            Int prod = exact_div(-num, 4);  // |a| * |c|
            for (Int aa = 1; aa * aa <= prod; ++aa) {
                if (floor_mod(prod, aa) != 0) continue;
                Int cc = exact_div(prod, aa);
                for (const auto& [av, cv] : {std::pair<Int, Int>{aa, -cc}, {-aa, cc},
                                             {cc, -aa}, {-cc, aa}}) {
                    if (gcd(gcd(av, b), cv) != 1) continue;
                    QuadForm f(av, b, cv);
                    if (is_reduced(f)) forms.push_back(f);
                }
            }
        }
        std::sort(forms.begin(), forms.end());
        forms.erase(std::unique(forms.begin(), forms.end(),
                                [](const QuadForm& x, const QuadForm& y) { return x == y; }),
                    forms.end());
        std::set<QuadForm> unseen(forms.begin(), forms.end());
        std::vector<std::vector<QuadForm>> cycles;
        while (!unseen.empty()) {
            QuadForm f = *unseen.begin();
            std::vector<QuadForm> cyc;
            for (const Reduction& st : cycle(f)) {
                cyc.push_back(st.form);
                unseen.erase(st.form);
            }
            cycles.push_back(std::move(cyc));
        }
        /* Merge cycles that differ by the narrow-to-wide twist: the class of
         * (a, b, c) times the class of principal ideals with negative-norm
         * generators is the class of (-a, b, -c). Full negation (-a,-b,-c)
         * is conjugation, i.e. class inversion, and must not be merged. */
        std::vector<bool> used(cycles.size(), false);
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            std::vector<QuadForm> cls = cycles[i];
            const QuadForm& f0 = cycles[i][0];
            QuadForm neg = reduce(QuadForm(-f0.a(), f0.b(), -f0.c())).form;
            for (std::size_t j = 0; j < cycles.size(); ++j) {
                if (used[j]) continue;
                if (std::find_if(cycles[j].begin(), cycles[j].end(),
                                 [&](const QuadForm& f) { return f == neg; }) != cycles[j].end()) {
                    used[j] = true;
                    cls.insert(cls.end(), cycles[j].begin(), cycles[j].end());
                    break;
                }
            }
            members_.push_back(std::move(cls));
        }
        for (const auto& cls : members_) {
            const QuadForm* best = nullptr;
            for (const QuadForm& f : cls)
                if (f.a() > 0 && (!best || f < *best)) best = &f;
            if (!best) throw internal_error("class group: cycle without a > 0 member");
            reps_.push_back(*best);
        }
        /* deterministic ordering of classes */
        std::vector<std::size_t> order(reps_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return reps_[x] < reps_[y]; });
        std::vector<QuadForm> reps2;
        std::vector<std::vector<QuadForm>> mem2;
        for (std::size_t i : order) {
            reps2.push_back(reps_[i]);
            mem2.push_back(std::move(members_[i]));
        }
        reps_ = std::move(reps2);
        members_ = std::move(mem2);
    }

    QuadForm principal = floor_mod(d, 2) == 0 ? QuadForm(1, 0, exact_div(-d, 4))
                                              : QuadForm(1, 1, exact_div(1 - d, 4));
    principal_ = class_of(principal);
    table_.assign(reps_.size() * reps_.size(), 0);
    for (std::size_t i = 0; i < reps_.size(); ++i)
        for (std::size_t j = i; j < reps_.size(); ++j) {
            std::size_t k = class_of(compose(reps_[i], reps_[j]));
            table_[i * reps_.size() + j] = k;
            table_[j * reps_.size() + i] = k;
        }
}

std::size_t ClassGroup::class_of(const QuadForm& q) const {
    if (q.discriminant() != d_) throw domain_error("class_of: discriminant mismatch");
    QuadForm f = (d_ < 0 && q.a() < 0) ? q.negated() : q;
    QuadForm red = reduce(f).form;
    for (std::size_t i = 0; i < members_.size(); ++i)
        for (const QuadForm& g : members_[i])
            if (g == red) return i;
    throw internal_error("class_of: reduced form not found in class list");
}

std::size_t ClassGroup::inverse_idx(std::size_t i) const {
    for (std::size_t j = 0; j < reps_.size(); ++j)
        if (compose_idx(i, j) == principal_) return j;
    throw internal_error("inverse_idx: no inverse found");
}

unsigned ClassGroup::order_of(std::size_t i) const {
    unsigned n = 1;
    std::size_t cur = i;
    while (cur != principal_) {
        cur = compose_idx(cur, i);
        ++n;
        if (n > reps_.size() + 1) throw internal_error("order_of: did not reach principal class");
    }
    return n;
}

namespace {
std::map<Int, ClassGroup> g_class_cache;
std::mutex g_class_mutex;
}  // namespace

const ClassGroup& class_group(const Int& d) {
    std::lock_guard<std::mutex> lock(g_class_mutex);
    auto it = g_class_cache.find(d);
    if (it == g_class_cache.end()) it = g_class_cache.emplace(d, ClassGroup(d)).first;
    return it->second;
}

bool is_n_torsion(const QuadForm& q, unsigned n) {
    if (n == 0) throw domain_error("is_n_torsion: n must be positive");
    Int d = q.discriminant();
    QuadForm base = (d < 0 && q.a() < 0) ? q.negated() : q;
    base = reduce(base).form;
    /* square-and-multiply in the form class group */
    QuadForm principal = floor_mod(d, 2) == 0 ? QuadForm(1, 0, exact_div(-d, 4))
                                              : QuadForm(1, 1, exact_div(1 - d, 4));
    QuadForm acc = reduce(principal).form;
    QuadForm sq = base;
    unsigned e = n;
    for (;;) {
        if (e & 1u) acc = compose(acc, sq);
        e >>= 1u;
        if (e == 0) break;
        sq = compose(sq, sq);
    }
    if (d < 0) return acc.a() == 1;
    for (const Reduction& st : cycle(reduce(acc).form)) {
        Int aa = abs(st.form.a());
        if (aa == 1) return true;
    }
    return false;
}

}  // namespace qtor
