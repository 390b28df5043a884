#include "fmankit/spectrum.hpp"

#include <algorithm>
#include <sstream>

namespace fmankit {

// ---------------------------------------------------------------- CotangentPoly

CotangentPoly CotangentPoly::constant(const Series2& s) { return monomial(s, {0, 0, 0}); }

CotangentPoly CotangentPoly::y(int k, int truncation) {
    Exponent e{0, 0, 0};
    e[k - 1] = 1;
    return monomial(Series2::constant(1, truncation), e);
}

CotangentPoly CotangentPoly::monomial(const Series2& s, const Exponent& e) {
    CotangentPoly p(s.truncation());
    p.add_term(e, s);
    return p;
}

Series2 CotangentPoly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Series2(D_) : it->second;
}

bool CotangentPoly::is_zero() const { return terms_.empty(); }

int CotangentPoly::y_degree() const {
    int deg = -1;
    for (const auto& [e, s] : terms_) deg = std::max(deg, e[0] + e[1] + e[2]);
    return deg;
}

void CotangentPoly::add_term(const Exponent& e, const Series2& s) {
    if (s.truncation() < D_) {
        D_ = s.truncation();
        for (auto& [k, v] : terms_) v = v.truncated(D_);
        prune();
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        const Series2 t = s.truncated(D_);
        if (!t.is_zero()) terms_.emplace(e, t);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
}

void CotangentPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

CotangentPoly& CotangentPoly::operator+=(const CotangentPoly& o) {
    if (o.D_ < D_) {
        D_ = o.D_;
        for (auto& [k, v] : terms_) v = v.truncated(D_);
        prune();
    }
    for (const auto& [e, s] : o.terms_) add_term(e, s);
    return *this;
}

CotangentPoly& CotangentPoly::operator-=(const CotangentPoly& o) { return *this += -o; }

CotangentPoly CotangentPoly::operator-() const {
    CotangentPoly r = *this;
    for (auto& [e, s] : r.terms_) s = -s;
    return r;
}

CotangentPoly operator*(const CotangentPoly& a, const CotangentPoly& b) {
    CotangentPoly r(std::min(a.D_, b.D_));
    for (const auto& [ea, sa] : a.terms_)
        for (const auto& [eb, sb] : b.terms_)
            r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, sa * sb);
    return r;
}

CotangentPoly operator*(const Series2& s, const CotangentPoly& a) {
    CotangentPoly r(std::min(a.D_, s.truncation()));
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
}

CotangentPoly CotangentPoly::deriv_y(int k) const {
    CotangentPoly r(D_);
    for (const auto& [e, s] : terms_) {
        if (e[k - 1] == 0) continue;
        Exponent f = e;
        --f[k - 1];
        r.add_term(f, s * Rat(e[k - 1]));
    }
    return r;
}

CotangentPoly CotangentPoly::deriv_t(int k) const {
    CotangentPoly r(D_ - 1);
    if (k == 1) return r;
    for (const auto& [e, s] : terms_) r.add_term(e, s.deriv(k));
    return r;
}

CotangentPoly CotangentPoly::dehomogenize() const {
    CotangentPoly r(D_);
    for (const auto& [e, s] : terms_) r.add_term({0, e[1], e[2]}, s);
    return r;
}

std::string CotangentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, s] = *it;
        if (!first) os << " + ";
        first = false;
        os << "(" << s.to_string() << ")";
        for (int k = 0; k < 3; ++k) {
            if (e[k] == 0) continue;
            os << "*y" << (k + 1);
            if (e[k] > 1) os << "^" << e[k];
        }
    }
    return os.str();
}

CotangentPoly poisson(const CotangentPoly& f, const CotangentPoly& g) {
    CotangentPoly r(std::min(f.truncation(), g.truncation()) - 1);
    for (int k = 2; k <= 3; ++k) {
        r += f.deriv_t(k) * g.deriv_y(k);
        r -= f.deriv_y(k) * g.deriv_t(k);
    }
    return r;
}

// ---------------------------------------------------------------- ideals

namespace {

CotangentPoly lin(const Series2& c0, const Series2& c2, const Series2& c3) {
    const int D = std::min({c0.truncation(), c2.truncation(), c3.truncation()});
    return CotangentPoly::constant(c0) + c2 * CotangentPoly::y(2, D) + c3 * CotangentPoly::y(3, D);
}

CotangentPoly relation(const CotangentPoly& lhs, const Vec3& rhs) {
    const int D = rhs[0].truncation();
    return lhs - (rhs[0] * CotangentPoly::y(1, D) + rhs[1] * CotangentPoly::y(2, D) +
                  rhs[2] * CotangentPoly::y(3, D));
}

}  // namespace

SpectrumIdeal spectrum_ideal(const MultTable& t) {
    const int D = t.truncation();
    const auto y1 = CotangentPoly::y(1, D), y2 = CotangentPoly::y(2, D), y3 = CotangentPoly::y(3, D);
    SpectrumIdeal I{IdealFrame::Y, t, {}, {}, {}};
    I.names = {"y1-1", "Y22", "Y23", "Y33"};
    I.generators = {y1 - CotangentPoly::constant(Series2::constant(1, D)),
                    relation(y2 * y2, t.product(2, 2)), relation(y2 * y3, t.product(2, 3)),
                    relation(y3 * y3, t.product(3, 3))};
    return I;
}

CotangentPoly z2_generator(const GhFrame& gh) {
    const int D = gh.g2.truncation();
    const auto y2 = CotangentPoly::y(2, D);
    return y2 * y2 * y2 - gh.g2 * (y2 * y2) - gh.g1 * y2 - CotangentPoly::constant(gh.g0);
}

CotangentPoly z3_generator(const GhFrame& gh) {
    const int D = gh.h2.truncation();
    const auto y2 = CotangentPoly::y(2, D);
    return CotangentPoly::y(3, D) - gh.h2 * (y2 * y2) - gh.h1 * y2 - CotangentPoly::constant(gh.h0);
}

SpectrumIdeal spectrum_ideal(const GhFrame& gh) {
    const MultTable t = gh_to_table(gh);
    const int D = t.truncation();
    SpectrumIdeal I{IdealFrame::Z, t, gh, {}, {}};
    I.names = {"y1-1", "Z2", "Z3"};
    I.generators = {CotangentPoly::y(1, D) - CotangentPoly::constant(Series2::constant(1, D)),
                    z2_generator(gh), z3_generator(gh)};
    return I;
}

YGenerators y_generators(const AbcFrame& f) {
    const int D = f.a2.truncation();
    const auto u = CotangentPoly::y(2, D) - CotangentPoly::constant(f.b3);  // y2 - b3
    const auto v = CotangentPoly::y(3, D) - CotangentPoly::constant(f.b2);  // y3 - b2
    YGenerators Y;
    Y.Y22 = u * u + CotangentPoly::constant(f.a3 * f.c3) - f.a2 * u - f.a3 * v;
    Y.Y23 = u * v - CotangentPoly::constant(f.a3 * f.c2);
    Y.Y33 = v * v + CotangentPoly::constant(f.a2 * f.c2) - f.c2 * u - f.c3 * v;
    return Y;
}

YBracketDecomposition y_bracket_decomposition(const AbcFrame& f) {
    const YGenerators Y = y_generators(f);
    const int D = f.a2.truncation();
    const auto u = CotangentPoly::y(2, D) - CotangentPoly::constant(f.b3);
    const auto v = CotangentPoly::y(3, D) - CotangentPoly::constant(f.b2);
    const auto A = a_invariants(f);
    const Series2 &A2 = A[0], &A2d = A[1], &A3 = A[2];
    auto dd = [](const Series2& s, int k) { return s.deriv(k); };
    const Series2 a22 = dd(f.a2, 2), a23 = dd(f.a2, 3), a32 = dd(f.a3, 2), a33 = dd(f.a3, 3);
    const Series2 b22 = dd(f.b2, 2), b33 = dd(f.b3, 3);
    const Series2 c22 = dd(f.c2, 2), c23 = dd(f.c2, 3), c32 = dd(f.c3, 2), c33 = dd(f.c3, 3);
    auto C = [](const Series2& s) { return CotangentPoly::constant(s); };

    YBracketDecomposition r;
    r.b22_23 = (Rat(-2) * b22 + Rat(2) * b33 + a23) * Y.Y22 + (a22 + a33) * Y.Y23 + a32 * Y.Y33 +
               A2 * u + (f.a3 * A3) * v + C(-(f.a3 * A2d) - f.a3 * f.c3 * A3);
    r.b33_23 = (Rat(-2) * b33 + Rat(2) * b22 + c32) * Y.Y33 + (c33 + c22) * Y.Y23 + c23 * Y.Y22 +
               A2d * v - (f.c2 * A3) * u + C(-(f.c2 * A2) + f.c2 * f.a2 * A3);
    r.b22_33 = (Rat(-2) * c22) * Y.Y22 +
               (Rat(2) * (Rat(-2) * b22 + Rat(2) * b33 + a23 - c32)) * Y.Y23 +
               (Rat(2) * a33) * Y.Y33 + (-A2d - f.c3 * A3) * u + (A2 - f.a2 * A3) * v +
               C(-(f.c3 * A2) + f.a2 * A2d + (f.a2 * f.c3 + f.a3 * f.c2) * A3);
    return r;
}

// ---------------------------------------------------------------- reduction

namespace {

using Exponent = CotangentPoly::Exponent;

// Pick the monomial to rewrite: highest y-degree, ties broken towards y3.
const std::pair<const Exponent, Series2>* pick(const CotangentPoly& p, int min_degree) {
    const std::pair<const Exponent, Series2>* best = nullptr;
    for (const auto& kv : p.terms()) {
        const auto& e = kv.first;
        const int deg = e[1] + e[2];
        if (deg < min_degree) continue;
        if (!best) { best = &kv; continue; }
        const auto& b = best->first;
        const int bdeg = b[1] + b[2];
        if (deg > bdeg || (deg == bdeg && e[2] > b[2])) best = &kv;
    }
    return best;
}

CotangentPoly y_power(int e2, int e3, int D) {
    return CotangentPoly::monomial(Series2::constant(1, D), {0, e2, e3});
}

CotangentPoly reduce_y(CotangentPoly p, const MultTable& t, ReductionOrder order) {
    const Vec3 p22 = t.product(2, 2), p23 = t.product(2, 3), p33 = t.product(3, 3);
    const CotangentPoly r22 = lin(p22[0], p22[1], p22[2]);
    const CotangentPoly r23 = lin(p23[0], p23[1], p23[2]);
    const CotangentPoly r33 = lin(p33[0], p33[1], p33[2]);
    while (const auto* kv = pick(p, 2)) {
        const Exponent e = kv->first;
        const Series2 s = kv->second;
        int d2 = 0, d3 = 0;
        const CotangentPoly* rule = nullptr;
        auto use = [&](int x2, int x3, const CotangentPoly& r) {
            d2 = x2;
            d3 = x3;
            rule = &r;
        };
        if (order == ReductionOrder::Y3First) {
            if (e[2] >= 2) use(0, 2, r33);
            else if (e[1] >= 1 && e[2] >= 1) use(1, 1, r23);
            else use(2, 0, r22);
        } else {
            if (e[1] >= 2) use(2, 0, r22);
            else if (e[1] >= 1 && e[2] >= 1) use(1, 1, r23);
            else use(0, 2, r33);
        }
        const CotangentPoly lead = CotangentPoly::monomial(s, e);
        const CotangentPoly rest = s * (y_power(e[1] - d2, e[2] - d3, p.truncation()) * *rule);
        p = p - lead + rest;
    }
    return p;
}

CotangentPoly reduce_z(CotangentPoly p, const GhFrame& gh) {
    const int D = p.truncation();
    const auto y2 = CotangentPoly::y(2, D);
    const CotangentPoly y3_rule = gh.h2 * (y2 * y2) + gh.h1 * y2 + CotangentPoly::constant(gh.h0);
    const CotangentPoly cube_rule = gh.g2 * (y2 * y2) + gh.g1 * y2 + CotangentPoly::constant(gh.g0);
    auto rewrite = [&](auto&& select, int dy2, int dy3, const CotangentPoly& rule) {
        for (;;) {
            const std::pair<const Exponent, Series2>* hit = nullptr;
            for (const auto& kv : p.terms())
                if (select(kv.first)) { hit = &kv; break; }
            if (!hit) return;
            const Exponent e = hit->first;
            const Series2 s = hit->second;
            p = p - CotangentPoly::monomial(s, e) +
                s * (y_power(e[1] - dy2, e[2] - dy3, p.truncation()) * rule);
        }
    };
    rewrite([](const Exponent& e) { return e[2] > 0; }, 0, 1, y3_rule);
    rewrite([](const Exponent& e) { return e[1] >= 3; }, 3, 0, cube_rule);
    // Express in the basis 1, y2, y3: y2^2 = h2^-1 (y3 - h1 y2 - h0).
    const Series2 hinv = gh.h2.invert();
    const CotangentPoly sq_rule =
        hinv * (CotangentPoly::y(3, D) - gh.h1 * y2 - CotangentPoly::constant(gh.h0));
    rewrite([](const Exponent& e) { return e[1] == 2; }, 2, 0, sq_rule);
    return p;
}

}  // namespace

CotangentPoly reduce(const CotangentPoly& p, const SpectrumIdeal& ideal, ReductionOrder order) {
    if (!is_associative(ideal.table)) throw NotAssociative("reduction needs an associative table");
    const CotangentPoly q = p.dehomogenize();
    if (ideal.frame == IdealFrame::Z) return reduce_z(q, ideal.gh);
    return reduce_y(q, ideal.table, order);
}

BracketVerdict f_condition_bracket(const SpectrumIdeal& ideal) {
    if (!is_associative(ideal.table)) throw NotAssociative("bracket criterion needs an associative table");
    BracketVerdict v;
    const auto& g = ideal.generators;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            BracketResidual r{ideal.names[i], ideal.names[j], reduce(poisson(g[i], g[j]), ideal)};
            if (!r.normal_form.is_zero()) v.closed = false;
            v.residuals.push_back(std::move(r));
        }
    return v;
}

GhBracket gh_bracket_residuals(const GhFrame& gh) {
    auto D2 = [](const Series2& s) { return s.deriv(2); };
    auto D3 = [](const Series2& s) { return s.deriv(3); };
    const Series2 g22 = D2(gh.g2), g12 = D2(gh.g1), g02 = D2(gh.g0);
    const Series2 h22 = D2(gh.h2), h12 = D2(gh.h1), h02 = D2(gh.h0);
    GhBracket b;
    b.cofactor0 = Rat(2) * g22 * gh.h2 + gh.g2 * h22 + Rat(3) * h12;
    b.cofactor1 = Rat(3) * h22;
    b.r2 = D2((gh.g2 * gh.g2 + Rat(2) * gh.g1) * gh.h2 + gh.g2 * gh.h1 + Rat(3) * gh.h0) - D3(gh.g2);
    b.r1 = (Rat(2) * g22 * gh.g1 + Rat(2) * g02) * gh.h2 + (gh.g2 * gh.g1 + Rat(3) * gh.g0) * h22 +
           g12 * gh.h1 + Rat(2) * gh.g1 * h12 - Rat(2) * gh.g2 * h02 - D3(gh.g1);
    b.r0 = Rat(2) * g22 * gh.g0 * gh.h2 + gh.g2 * gh.g0 * h22 + g02 * gh.h1 + Rat(3) * gh.g0 * h12 -
           gh.g1 * h02 - D3(gh.g0);
    return b;
}

}  // namespace fmankit
