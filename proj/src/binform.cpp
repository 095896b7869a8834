#include "qtor/binform.hpp"

namespace qtor {

BinForm::BinForm(std::vector<Int> coeffs) : t_(std::move(coeffs)) {
    if (t_.empty()) throw domain_error("BinForm: empty coefficient vector");
}

BinForm BinForm::monomial(unsigned degree, unsigned i, const Int& t) {
    if (i > degree) throw domain_error("BinForm::monomial: exponent exceeds degree");
    BinForm f(degree);
    f.coeff(i) = t;
    return f;
}

BinForm BinForm::from_quadform(const QuadForm& q) {
    BinForm f(2);
    f.coeff(2) = q.a();
    f.coeff(1) = q.b();
    f.coeff(0) = q.c();
    return f;
}

BinForm BinForm::operator+(const BinForm& o) const {
    if (degree() != o.degree()) throw domain_error("BinForm: degree mismatch");
    BinForm r(degree());
    for (unsigned i = 0; i <= degree(); ++i) r.coeff(i) = t_[i] + o.t_[i];
    return r;
}

BinForm BinForm::operator-(const BinForm& o) const {
    if (degree() != o.degree()) throw domain_error("BinForm: degree mismatch");
    BinForm r(degree());
    for (unsigned i = 0; i <= degree(); ++i) r.coeff(i) = t_[i] - o.t_[i];
    return r;
}

BinForm BinForm::operator*(const BinForm& o) const {
    BinForm r(degree() + o.degree());
    for (unsigned i = 0; i <= degree(); ++i) {
        if (t_[i] == 0) continue;
        for (unsigned j = 0; j <= o.degree(); ++j) r.coeff(i + j) += t_[i] * o.t_[j];
    }
    return r;
}

BinForm BinForm::operator-() const {
    BinForm r(degree());
    for (unsigned i = 0; i <= degree(); ++i) r.coeff(i) = -t_[i];
    return r;
}

BinForm BinForm::scaled(const Int& s) const {
    BinForm r(degree());
    for (unsigned i = 0; i <= degree(); ++i) r.coeff(i) = s * t_[i];
    return r;
}

bool BinForm::is_zero() const {
    for (const Int& t : t_)
        if (t != 0) return false;
    return true;
}

BinForm BinForm::substituted(const UnimodMat& m) const {
    const unsigned n = degree();
    BinForm one(0);
    one.coeff(0) = 1;
    std::vector<BinForm> xpow{one}, ypow{one};  // (px+qy)^i and (rx+sy)^i
    BinForm lx(1), ly(1);
    lx.coeff(1) = m.p;
    lx.coeff(0) = m.q;
    ly.coeff(1) = m.r;
    ly.coeff(0) = m.s;
    for (unsigned i = 1; i <= n; ++i) {
        xpow.push_back(xpow.back() * lx);
        ypow.push_back(ypow.back() * ly);
    }
    BinForm r(n);
    for (unsigned i = 0; i <= n; ++i) {
        if (t_[i] == 0) continue;
        r = r + (xpow[i] * ypow[n - i]).scaled(t_[i]);
    }
    return r;
}

Int BinForm::eval(const Int& x, const Int& y) const {
    const unsigned n = degree();
    Int acc = 0, xp = 1;
    std::vector<Int> yp(n + 1);
    yp[0] = 1;
    for (unsigned i = 1; i <= n; ++i) yp[i] = yp[i - 1] * y;
    for (unsigned i = 0; i <= n; ++i) {
        if (t_[i] != 0) acc += t_[i] * xp * yp[n - i];
        xp *= x;
    }
    return acc;
}

std::optional<BinForm> divide_exact(const BinForm& num, const QuadForm& q) {
    if (num.degree() < 2) return std::nullopt;
    const unsigned m = num.degree() - 2;
    BinForm rem = num;
    BinForm quot(m);
    for (unsigned k = m + 1; k-- > 0;) {
        const Int& lead = rem.coeff(k + 2);
        if (floor_mod(lead, q.a()) != 0) return std::nullopt;
        Int t = exact_div(lead, q.a());
        if (t != 0) {
            quot.coeff(k) = t;
            rem.coeff(k + 2) -= t * q.a();
            rem.coeff(k + 1) -= t * q.b();
            rem.coeff(k) -= t * q.c();
        }
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot;
}

Int resultant(const QuadForm& q, const BinForm& delta) {
    const unsigned n = delta.degree();
    if (n == 0) return delta.coeff(0) * delta.coeff(0);
    IntMatrix syl(n + 2, n + 2);
    for (unsigned i = 0; i < n; ++i) {
        syl.at(i, i) = q.a();
        syl.at(i, i + 1) = q.b();
        syl.at(i, i + 2) = q.c();
    }
    for (unsigned j = 0; j < 2; ++j)
        for (unsigned k = 0; k <= n; ++k) syl.at(n + j, j + k) = delta.coeff(n - k);
    return bareiss_det(syl);
}

}  // namespace qtor
