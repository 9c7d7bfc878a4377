#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hsbrst {

using Rational = boost::multiprecision::cpp_rational;

/// Exact element of Q(i): re + im*i with rational parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(long long n) : re(n) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational of(long long num, long long den) {
        return {Rational(num) / den};
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        GaussianRational num = a * b.conj();
        return {num.re / n, num.im / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational pow(unsigned n) const {
        GaussianRational r{1};
        for (unsigned k = 0; k < n; ++k) r *= *this;
        return r;
    }

    /// "p/q", "i", "-2/3*i" or "p/q+r/s*i"; exact, never floating point.
    std::string str() const {
        auto rat = [](const Rational& r) { return r.str(); };
        if (is_zero()) return "0";
        std::string out;
        if (re != 0) out += rat(re);
        if (im != 0) {
            if (im == 1)
                out += out.empty() ? "i" : "+i";
            else if (im == -1)
                out += "-i";
            else {
                if (!out.empty() && im > 0) out += "+";
                out += rat(im) + "*i";
            }
        }
        return out;
    }

    /// True when multi-term or negative, i.e. needs parentheses inside a product.
    bool needs_parens() const {
        if (re != 0 && im != 0) return true;
        if (im != 0) return im < 0 && im != -1;
        return re < 0;
    }
};

} // namespace hsbrst
