#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "fmankit/errors.hpp"

namespace fmankit {

using Rat = mpq_class;

Rat parse_rat(const std::string& text);
std::string format_rat(const Rat& r);

// Truncated power series in (t2, t3): coefficients of t2^i t3^j for i + j < D.
// Storage is a dense triangle indexed by total degree; zero entries are never
// reported as terms.
class Series2 {
public:
    struct Term {
        int i;
        int j;
        Rat c;
    };

    Series2() : Series2(8) {}
    explicit Series2(int truncation);

    static Series2 constant(const Rat& c, int truncation);
    static Series2 monomial(const Rat& c, int i, int j, int truncation);
    static Series2 t2(int truncation) { return monomial(1, 1, 0, truncation); }
    static Series2 t3(int truncation) { return monomial(1, 0, 1, truncation); }
    // Polynomial text such as "9/4*t2^2 - 3/2*t3 + t2*t3".
    static Series2 parse(const std::string& text, int truncation);

    int truncation() const { return D_; }
    const Rat& coeff(int i, int j) const;
    void set(int i, int j, const Rat& c);
    void add_to(int i, int j, const Rat& c);

    bool is_zero() const;
    const Rat& constant_term() const { return coeff(0, 0); }
    std::vector<Term> terms() const;
    int total_degree() const;  // -1 for zero
    int t2_valuation() const;  // -1 for zero
    bool depends_on_t3() const;
    bool depends_on_t2() const;

    Series2 truncated(int truncation) const;
    Series2 deriv(int var) const;
    Series2 integrate(int var) const;
    Series2 invert() const;
    Series2 pow(unsigned n) const;
    Rat eval(const Rat& t2, const Rat& t3) const;
    Series2 mul_t2_pow(int k) const;
    Series2 div_t2_pow(int k) const;
    // Coefficient of t3^k as a series in t2 alone.
    Series2 t3_coefficient(int k) const;
    Series2 restrict_t3_zero() const { return t3_coefficient(0); }
    // Substitute t3 -> t3 + shift; exact for polynomials that fit in the truncation.
    Series2 shift_t3(const Rat& shift) const;

    Series2& operator+=(const Series2& o);
    Series2& operator-=(const Series2& o);
    Series2& operator*=(const Rat& r);

    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    friend Series2 operator*(const Series2& a, const Series2& b);
    friend Series2 operator*(Series2 a, const Rat& r) { return a *= r; }
    friend Series2 operator*(const Rat& r, Series2 a) { return a *= r; }
    friend Series2 operator/(Series2 a, const Rat& r) { return a *= Rat(1 / r); }
    Series2 operator-() const;

    // Equal up to the smaller truncation.
    friend bool operator==(const Series2& a, const Series2& b) { return (a - b).is_zero(); }

    std::string to_string() const;

private:
    static std::size_t index(int i, int j) {
        const int n = i + j;
        return static_cast<std::size_t>(n) * (n + 1) / 2 + j;
    }
    bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i + j < D_; }

    int D_;
    std::vector<Rat> c_;
};

// Sum of parts[r] * u^r with u^k = t2, i.e. u = t2^(1/k).
class ExtSeries {
public:
    ExtSeries(int k, int truncation);
    static ExtSeries from_series(int k, const Series2& s);
    // t2^(num/k) for num >= 0.
    static ExtSeries t2_power(int num, int k, int truncation);

    int order() const { return k_; }
    int truncation() const;
    const Series2& part(int r) const { return parts_[r]; }
    Series2& part(int r) { return parts_[r]; }

    bool is_zero() const;
    ExtSeries deriv(int var) const;

    ExtSeries& operator+=(const ExtSeries& o);
    ExtSeries& operator-=(const ExtSeries& o);
    friend ExtSeries operator+(ExtSeries a, const ExtSeries& b) { return a += b; }
    friend ExtSeries operator-(ExtSeries a, const ExtSeries& b) { return a -= b; }
    friend ExtSeries operator*(const ExtSeries& a, const ExtSeries& b);
    friend ExtSeries operator*(const Series2& s, const ExtSeries& a);
    ExtSeries operator-() const;
    // u -> -u; the other branch when k = 2.
    ExtSeries conjugate() const;

private:
    void check_same_order(const ExtSeries& o) const;

    int k_;
    std::array<Series2, 3> parts_;
};

// Elementary symmetric functions of the k branches of f, i.e. the
// characteristic polynomial x^k - e1 x^(k-1) + e2 x^(k-2) - e3 of
// multiplication by f on the free module with basis 1, u, ..., u^(k-1).
struct CharPoly {
    int k;
    std::array<Series2, 3> e;
    // Coefficients (c_{k-1}, ..., c_0) in x^k = c_{k-1} x^(k-1) + ... + c_0.
    std::vector<Series2> monic_rhs() const;
    // The polynomial evaluated at x.
    ExtSeries evaluate(const ExtSeries& x) const;
};

CharPoly charpoly_mult(const ExtSeries& f);

// gcd(a, b) = 1 in the local ring at the origin, judged on the truncated
// polynomials: their polynomial gcd over Q must not vanish at (0, 0).
bool coprime_at_origin(const Series2& a, const Series2& b);

}  // namespace fmankit
