#include "fmankit/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fmankit {

Rat parse_rat(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
            s.end());
    if (s.empty()) throw ParseError("empty rational");
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto valid_int = [](const std::string& t, bool allow_sign) {
        std::size_t k = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) k = 1;
        if (k >= t.size()) return false;
        for (; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
        return true;
    };
    if (!valid_int(num, true) || !valid_int(den, false)) throw ParseError("malformed rational '" + text + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string format_rat(const Rat& r) { return r.get_str(); }

// ---------------------------------------------------------------- Series2

Series2::Series2(int truncation) : D_(std::max(truncation, 0)), c_(static_cast<std::size_t>(D_) * (D_ + 1) / 2) {}

Series2 Series2::constant(const Rat& c, int truncation) { return monomial(c, 0, 0, truncation); }

Series2 Series2::monomial(const Rat& c, int i, int j, int truncation) {
    Series2 s(truncation);
    s.set(i, j, c);
    return s;
}

const Rat& Series2::coeff(int i, int j) const {
    static const Rat zero(0);
    return in_range(i, j) ? c_[index(i, j)] : zero;
}

void Series2::set(int i, int j, const Rat& c) {
    if (in_range(i, j)) c_[index(i, j)] = c;
}

void Series2::add_to(int i, int j, const Rat& c) {
    if (in_range(i, j)) c_[index(i, j)] += c;
}

bool Series2::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

std::vector<Series2::Term> Series2::terms() const {
    std::vector<Term> out;
    for (int n = 0; n < D_; ++n)
        for (int j = 0; j <= n; ++j) {
            const Rat& c = c_[index(n - j, j)];
            if (sgn(c) != 0) out.push_back({n - j, j, c});
        }
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    return out;
}

int Series2::total_degree() const {
    for (int n = D_ - 1; n >= 0; --n)
        for (int j = 0; j <= n; ++j)
            if (sgn(c_[index(n - j, j)]) != 0) return n;
    return -1;
}

int Series2::t2_valuation() const {
    int best = -1;
    for (const auto& t : terms())
        if (best < 0 || t.i < best) best = t.i;
    return best;
}

bool Series2::depends_on_t3() const {
    for (int n = 1; n < D_; ++n)
        for (int j = 1; j <= n; ++j)
            if (sgn(c_[index(n - j, j)]) != 0) return true;
    return false;
}

bool Series2::depends_on_t2() const {
    for (int n = 1; n < D_; ++n)
        for (int j = 0; j < n; ++j)
            if (sgn(c_[index(n - j, j)]) != 0) return true;
    return false;
}

Series2 Series2::truncated(int truncation) const {
    Series2 r(truncation);
    const int n_max = std::min(D_, r.D_);
    for (int n = 0; n < n_max; ++n)
        for (int j = 0; j <= n; ++j) r.c_[index(n - j, j)] = c_[index(n - j, j)];
    return r;
}

Series2& Series2::operator+=(const Series2& o) {
    if (o.D_ < D_) *this = truncated(o.D_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Series2& Series2::operator-=(const Series2& o) {
    if (o.D_ < D_) *this = truncated(o.D_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Series2& Series2::operator*=(const Rat& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

Series2 Series2::operator-() const {
    Series2 r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Series2 operator*(const Series2& a, const Series2& b) {
    Series2 r(std::min(a.D_, b.D_));
    const auto ta = a.terms();
    if (ta.empty()) return r;
    const auto tb = b.terms();
    Rat prod;
    for (const auto& x : ta) {
        const int room = r.D_ - x.i - x.j;
        if (room <= 0) continue;
        for (const auto& y : tb) {
            if (y.i + y.j >= room) continue;
            prod = x.c * y.c;
            r.c_[Series2::index(x.i + y.i, x.j + y.j)] += prod;
        }
    }
    return r;
}

Series2 Series2::deriv(int var) const {
    Series2 r(D_ - 1);
    for (const auto& t : terms()) {
        if (var == 2 && t.i > 0) r.set(t.i - 1, t.j, t.c * t.i);
        if (var == 3 && t.j > 0) r.set(t.i, t.j - 1, t.c * t.j);
    }
    return r;
}

Series2 Series2::integrate(int var) const {
    Series2 r(D_ + 1);
    for (const auto& t : terms()) {
        if (var == 2) r.set(t.i + 1, t.j, t.c / (t.i + 1));
        else r.set(t.i, t.j + 1, t.c / (t.j + 1));
    }
    return r;
}

Series2 Series2::invert() const {
    const Rat& a0 = constant_term();
    if (sgn(a0) == 0) throw NotAUnit("series has zero constant term");
    Series2 b(D_);
    const auto ta = terms();
    const Rat inv0 = 1 / a0;
    b.set(0, 0, inv0);
    for (int n = 1; n < D_; ++n)
        for (int j = 0; j <= n; ++j) {
            const int i = n - j;
            Rat acc = 0;
            for (const auto& t : ta) {
                if ((t.i == 0 && t.j == 0) || t.i > i || t.j > j) continue;
                acc += t.c * b.coeff(i - t.i, j - t.j);
            }
            if (sgn(acc) != 0) b.set(i, j, -acc * inv0);
        }
    return b;
}

Series2 Series2::pow(unsigned n) const {
    Series2 result = constant(1, D_);
    Series2 base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Rat Series2::eval(const Rat& t2, const Rat& t3) const {
    std::vector<Rat> p2(D_ + 1, Rat(1)), p3(D_ + 1, Rat(1));
    for (int k = 1; k <= D_; ++k) {
        p2[k] = p2[k - 1] * t2;
        p3[k] = p3[k - 1] * t3;
    }
    Rat acc = 0;
    for (const auto& t : terms()) acc += t.c * p2[t.i] * p3[t.j];
    return acc;
}

Series2 Series2::mul_t2_pow(int k) const {
    if (k < 0) return div_t2_pow(-k);
    Series2 r(D_ + k);
    for (const auto& t : terms()) r.set(t.i + k, t.j, t.c);
    return r;
}

Series2 Series2::div_t2_pow(int k) const {
    if (k < 0) return mul_t2_pow(-k);
    Series2 r(std::max(D_ - k, 0));
    for (const auto& t : terms()) {
        if (t.i < k) throw NotInRing("series is not divisible by t2^" + std::to_string(k));
        r.set(t.i - k, t.j, t.c);
    }
    return r;
}

Series2 Series2::t3_coefficient(int k) const {
    Series2 r(std::max(D_ - k, 0));
    for (const auto& t : terms())
        if (t.j == k) r.set(t.i, 0, t.c);
    return r;
}

Series2 Series2::shift_t3(const Rat& shift) const {
    Series2 r(D_);
    for (const auto& t : terms()) {
        mpz_class binom = 1;
        Rat power = 1;  // shift^(j-l)
        for (int l = t.j; l >= 0; --l) {
            r.add_to(t.i, l, t.c * binom * power);
            binom = binom * l / (t.j - l + 1);
            power *= shift;
        }
    }
    return r;
}

std::string Series2::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms()) {
        Rat c = t.c;
        if (first) {
            if (sgn(c) < 0) { os << "-"; c = -c; }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            if (sgn(c) < 0) c = -c;
        }
        first = false;
        std::string mono;
        auto var = [&](const char* name, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += name;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        var("t2", t.i);
        var("t3", t.j);
        if (mono.empty()) os << c.get_str();
        else if (c == 1) os << mono;
        else os << c.get_str() << "*" << mono;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

struct PolyLexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char ch) {
        skip();
        if (pos < s.size() && s[pos] == ch) { ++pos; return true; }
        return false;
    }
    bool done() { skip(); return pos >= s.size(); }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial '" + s + "': " + msg + " at offset " + std::to_string(pos));
    }
    std::string digits() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return s.substr(start, pos - start);
    }
};

}  // namespace

Series2 Series2::parse(const std::string& text, int truncation) {
    PolyLexer lx{text};
    Series2 out(truncation);
    if (lx.done()) lx.fail("empty");
    bool first = true;
    while (!lx.done()) {
        int sign = 1;
        if (lx.eat('-')) sign = -1;
        else if (!lx.eat('+') && !first) lx.fail("expected + or -");
        first = false;
        Rat c = sign;
        int i = 0, j = 0;
        bool any = false;
        do {
            lx.skip();
            if (lx.pos < text.size() && text[lx.pos] == 't') {
                ++lx.pos;
                const std::string idx = lx.digits();
                int e = 1;
                if (lx.eat('^')) e = std::stoi(lx.digits());
                if (idx == "2") i += e;
                else if (idx == "3") j += e;
                else lx.fail("unknown variable t" + idx);
            } else {
                std::string num = lx.digits();
                if (lx.eat('/')) num += "/" + lx.digits();
                c *= parse_rat(num);
            }
            any = true;
        } while (lx.eat('*'));
        if (!any) lx.fail("empty term");
        out.add_to(i, j, c);
    }
    return out;
}

// ---------------------------------------------------------------- ExtSeries

ExtSeries::ExtSeries(int k, int truncation)
    : k_(k), parts_{Series2(truncation), Series2(truncation), Series2(truncation)} {
    if (k < 1 || k > 3) throw InvalidParameters("extension order must be 1, 2 or 3");
}

ExtSeries ExtSeries::from_series(int k, const Series2& s) {
    ExtSeries r(k, s.truncation());
    r.parts_[0] = s;
    return r;
}

ExtSeries ExtSeries::t2_power(int num, int k, int truncation) {
    if (num < 0) throw NotInRing("negative power of t2");
    ExtSeries r(k, truncation);
    r.parts_[num % k] = Series2::monomial(1, num / k, 0, truncation);
    return r;
}

int ExtSeries::truncation() const {
    int d = parts_[0].truncation();
    for (int r = 1; r < k_; ++r) d = std::min(d, parts_[r].truncation());
    return d;
}

bool ExtSeries::is_zero() const {
    for (int r = 0; r < k_; ++r)
        if (!parts_[r].is_zero()) return false;
    return true;
}

void ExtSeries::check_same_order(const ExtSeries& o) const {
    if (o.k_ != k_) throw InvalidParameters("mixing extension orders");
}

ExtSeries& ExtSeries::operator+=(const ExtSeries& o) {
    check_same_order(o);
    for (int r = 0; r < k_; ++r) parts_[r] += o.parts_[r];
    return *this;
}

ExtSeries& ExtSeries::operator-=(const ExtSeries& o) {
    check_same_order(o);
    for (int r = 0; r < k_; ++r) parts_[r] -= o.parts_[r];
    return *this;
}

ExtSeries ExtSeries::operator-() const {
    ExtSeries r = *this;
    for (int i = 0; i < k_; ++i) r.parts_[i] = -r.parts_[i];
    return r;
}

ExtSeries operator*(const ExtSeries& a, const ExtSeries& b) {
    a.check_same_order(b);
    const int k = a.k_;
    ExtSeries r(k, std::min(a.truncation(), b.truncation()));
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
            Series2 prod = a.parts_[x] * b.parts_[y];
            if (x + y >= k) r.parts_[x + y - k] += prod.mul_t2_pow(1);
            else r.parts_[x + y] += prod;
        }
    return r;
}

ExtSeries operator*(const Series2& s, const ExtSeries& a) {
    ExtSeries r = a;
    for (int x = 0; x < a.k_; ++x) r.parts_[x] = s * a.parts_[x];
    return r;
}

ExtSeries ExtSeries::conjugate() const {
    if (k_ != 2) throw InvalidParameters("conjugate is defined for order 2");
    ExtSeries r = *this;
    r.parts_[1] = -r.parts_[1];
    return r;
}

ExtSeries ExtSeries::deriv(int var) const {
    ExtSeries r(k_, truncation() - 1);
    for (int x = 0; x < k_; ++x) {
        Series2 d = parts_[x].deriv(var);
        // d/dt2 (s u^x) = (d s/dt2) u^x + (x/k) (s/t2) u^x
        if (var == 2 && x > 0) d += parts_[x].div_t2_pow(1) * Rat(x, k_);
        r.parts_[x] = d;
    }
    return r;
}

std::vector<Series2> CharPoly::monic_rhs() const {
    std::vector<Series2> out;
    out.push_back(e[0]);
    if (k >= 2) out.push_back(-e[1]);
    if (k >= 3) out.push_back(e[2]);
    return out;
}

ExtSeries CharPoly::evaluate(const ExtSeries& x) const {
    const int D = x.truncation();
    ExtSeries acc = ExtSeries::from_series(x.order(), Series2::constant(1, D));
    // Horner on x^k - e1 x^(k-1) + e2 x^(k-2) - e3 x^(k-3).
    for (int m = 0; m < k; ++m) {
        const Series2 coef = (m % 2 == 0 ? -e[m] : e[m]);
        acc = acc * x + ExtSeries::from_series(x.order(), coef);
    }
    return acc;
}

CharPoly charpoly_mult(const ExtSeries& f) {
    const int k = f.order();
    const int D = f.truncation();
    // Column c holds the coordinates of f * u^c.
    std::array<std::array<Series2, 3>, 3> M{};
    for (int c = 0; c < k; ++c) {
        ExtSeries col = f * ExtSeries::t2_power(c, k, D);
        for (int r = 0; r < k; ++r) M[r][c] = col.part(r);
    }
    CharPoly cp{k, {Series2(D), Series2(D), Series2(D)}};
    for (int r = 0; r < k; ++r) cp.e[0] += M[r][r];
    if (k >= 2)
        for (int r = 0; r < k; ++r)
            for (int s = r + 1; s < k; ++s) cp.e[1] += M[r][r] * M[s][s] - M[r][s] * M[s][r];
    if (k == 3)
        cp.e[2] = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                  M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                  M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    return cp;
}

// ---------------------------------------------------------------- gcd

namespace {

using Uni = std::vector<Rat>;  // coefficients in t2, low degree first
using Bi = std::vector<Uni>;   // coefficients in t3

void trim(Uni& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}
void trim(Bi& p) {
    while (!p.empty() && p.back().empty()) p.pop_back();
}

Uni uni_mul(const Uni& a, const Uni& b) {
    if (a.empty() || b.empty()) return {};
    Uni r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Uni uni_sub(const Uni& a, const Uni& b) {
    Uni r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// Quotient and remainder over Q; b nonzero.
std::pair<Uni, Uni> uni_divmod(Uni a, const Uni& b) {
    Uni q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rat f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Uni uni_gcd(Uni a, Uni b) {
    while (!b.empty()) {
        Uni r = uni_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rat lc = a.back();
        for (auto& x : a) x /= lc;
    }
    return a;
}

Uni content(const Bi& p) {
    Uni g;
    for (const auto& c : p) g = uni_gcd(g, c);
    return g;
}

Bi primitive(const Bi& p) {
    const Uni g = content(p);
    Bi r;
    for (const auto& c : p) r.push_back(uni_divmod(c, g).first);
    return r;
}

Bi pseudo_rem(Bi a, const Bi& b) {
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Uni la = a.back();
        for (auto& c : a) c = uni_mul(c, b.back());
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = uni_sub(a[i + shift], uni_mul(la, b[i]));
        trim(a);
    }
    return a;
}

Bi to_bi(const Series2& s) {
    Bi p;
    for (const auto& t : s.terms()) {
        if (p.size() <= static_cast<std::size_t>(t.j)) p.resize(t.j + 1);
        Uni& c = p[t.j];
        if (c.size() <= static_cast<std::size_t>(t.i)) c.resize(t.i + 1, Rat(0));
        c[t.i] = t.c;
    }
    for (auto& c : p) trim(c);
    trim(p);
    return p;
}

Rat value_at_origin(const Bi& p) {
    return !p.empty() && !p[0].empty() ? p[0][0] : Rat(0);
}

}  // namespace

bool coprime_at_origin(const Series2& a, const Series2& b) {
    Bi A = to_bi(a), B = to_bi(b);
    if (A.empty()) return sgn(value_at_origin(B)) != 0;
    if (B.empty()) return sgn(value_at_origin(A)) != 0;
    const Uni cont = uni_gcd(content(A), content(B));
    A = primitive(A);
    B = primitive(B);
    if (A.size() < B.size()) std::swap(A, B);
    while (!B.empty()) {
        Bi r = pseudo_rem(A, B);
        A = std::move(B);
        B = r.empty() ? Bi{} : primitive(r);
    }
    // A is the primitive gcd; both factors must be units at the origin.
    const Rat g0 = value_at_origin(A);
    const Rat c0 = cont.empty() ? Rat(0) : cont[0];
    return sgn(g0) != 0 && sgn(c0) != 0;
}

}  // namespace fmankit
