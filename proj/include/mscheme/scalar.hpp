/*
   Copyright 2026 The matrixscheme authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MSCHEME_SCALAR_HPP
#define MSCHEME_SCALAR_HPP

#include <gmpxx.h>

#include <complex>
#include <string>
#include <variant>

#include "mscheme/errors.hpp"

namespace mscheme {

enum class Mode { exact, numeric };

inline const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "numeric"; }

// Exact scalar: an element of Q(i). Plain rationals are the im == 0 case;
// mpq_class keeps both parts in lowest terms with positive denominator.
struct GaussRat {
    mpq_class re;
    mpq_class im;

    GaussRat() : re(0), im(0) {}
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        if (b.is_zero()) throw DivisionByZero("exact division by zero");
        mpq_class n = b.norm();
        GaussRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Scalar is the single runtime-tagged number type used across the engine.
// The tag is the arithmetic mode; exact and numeric values never mix
// silently (ModeMismatch). Conversions are explicit via to_numeric().
class Scalar {
   public:
    Scalar() : v_(GaussRat{}) {}

    static Scalar rational(long num, long den = 1) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(GaussRat{std::move(q), mpq_class(0)});
    }
    static Scalar rational(mpq_class q) { return Scalar(GaussRat{std::move(q), mpq_class(0)}); }
    static Scalar gauss(mpq_class re, mpq_class im) {
        return Scalar(GaussRat{std::move(re), std::move(im)});
    }
    static Scalar exact(GaussRat g) { return Scalar(std::move(g)); }
    static Scalar numeric(std::complex<double> z) { return Scalar(z); }
    static Scalar numeric(double re, double im = 0.0) {
        return Scalar(std::complex<double>(re, im));
    }
    static Scalar zero(Mode m) {
        return m == Mode::exact ? Scalar() : numeric(0.0);
    }
    static Scalar one(Mode m) {
        return m == Mode::exact ? rational(1) : numeric(1.0);
    }

    Mode mode() const { return std::holds_alternative<GaussRat>(v_) ? Mode::exact : Mode::numeric; }
    bool is_exact() const { return mode() == Mode::exact; }

    const GaussRat& exact_value() const {
        if (!is_exact()) throw ModeMismatch("expected exact scalar");
        return std::get<GaussRat>(v_);
    }
    std::complex<double> numeric_value() const {
        if (is_exact()) throw ModeMismatch("expected numeric scalar");
        return std::get<std::complex<double>>(v_);
    }

    // Deliberate mode change; never happens implicitly.
    std::complex<double> to_complex() const {
        if (is_exact()) {
            const GaussRat& g = std::get<GaussRat>(v_);
            return {g.re.get_d(), g.im.get_d()};
        }
        return std::get<std::complex<double>>(v_);
    }
    Scalar to_numeric() const { return numeric(to_complex()); }

    bool is_zero() const {
        return is_exact() ? exact_value().is_zero()
                          : numeric_value() == std::complex<double>(0.0, 0.0);
    }
    bool is_real() const {
        return is_exact() ? exact_value().is_real() : numeric_value().imag() == 0.0;
    }
    bool is_rational() const { return is_exact() && exact_value().is_real(); }

    const mpq_class& rat() const {
        if (!is_rational()) throw ModeMismatch("expected exact rational scalar");
        return exact_value().re;
    }

    Scalar conj() const {
        return is_exact() ? exact(exact_value().conj()) : numeric(std::conj(numeric_value()));
    }
    double abs() const { return std::abs(to_complex()); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_same_mode(a, b, "+");
        if (a.is_exact()) return exact(a.exact_value() + b.exact_value());
        return numeric(a.numeric_value() + b.numeric_value());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        check_same_mode(a, b, "-");
        if (a.is_exact()) return exact(a.exact_value() - b.exact_value());
        return numeric(a.numeric_value() - b.numeric_value());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same_mode(a, b, "*");
        if (a.is_exact()) return exact(a.exact_value() * b.exact_value());
        return numeric(a.numeric_value() * b.numeric_value());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        check_same_mode(a, b, "/");
        if (a.is_exact()) return exact(a.exact_value() / b.exact_value());
        if (b.numeric_value() == std::complex<double>(0.0, 0.0))
            throw DivisionByZero("numeric division by zero");
        return numeric(a.numeric_value() / b.numeric_value());
    }
    Scalar operator-() const {
        return is_exact() ? exact(-exact_value()) : numeric(-numeric_value());
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        check_same_mode(a, b, "==");
        if (a.is_exact()) return a.exact_value() == b.exact_value();
        return a.numeric_value() == b.numeric_value();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;

   private:
    explicit Scalar(GaussRat g) : v_(std::move(g)) {}
    explicit Scalar(std::complex<double> z) : v_(z) {}

    static void check_same_mode(const Scalar& a, const Scalar& b, const char* op) {
        if (a.mode() != b.mode())
            throw ModeMismatch(std::string("scalar '") + op + "' mixes exact and numeric operands");
    }

    std::variant<GaussRat, std::complex<double>> v_;
};

// Canonical string form of a rational, e.g. "-3/4", "5", "0".
std::string rational_str(const mpq_class& q);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
mpq_class parse_rational(const std::string& s);

}  // namespace mscheme

#endif
