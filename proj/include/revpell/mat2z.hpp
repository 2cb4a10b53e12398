#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "revpell/errors.hpp"

namespace revpell {

using Int = mpz_class;
using Rat = mpq_class;

// Floor integer square root of n >= 0.
Int isqrt_floor(const Int& n);

// Exact perfect-square test (isqrt + square-back, via GMP).
bool is_perfect_square(const Int& n);

// Row-major 2x2 integer matrix [[a, b], [c, d]].
struct Mat2Z {
    Int a, b, c, d;

    Mat2Z() : a(0), b(0), c(0), d(0) {}
    Mat2Z(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2Z identity() { return {1, 0, 0, 1}; }

    friend bool operator==(const Mat2Z& x, const Mat2Z& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2Z& x, const Mat2Z& y) { return !(x == y); }
    // Lexicographic on (a, b, c, d); the enumeration/report order everywhere.
    friend bool operator<(const Mat2Z& x, const Mat2Z& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    }

    std::string str() const; // "[[a, b], [c, d]]"
};

Int det(const Mat2Z& m);
Int trace(const Mat2Z& m);
Mat2Z mat_mul(const Mat2Z& x, const Mat2Z& y);
Mat2Z mat_neg(const Mat2Z& m);

// Inverse of a unimodular matrix (det = +-1); throws NotUnimodularError.
Mat2Z inverse_unimodular(const Mat2Z& m);

// m^n for n in Z; negative n requires unimodularity.
Mat2Z mat_pow(const Mat2Z& m, long long n);

// A*A == I.  (Trivially true for +-I.)
bool is_involution(const Mat2Z& m);

enum class Orientation { Preserving, Reversing };

enum class HyperbolicityReason { NotUnimodular, H1Pass, H1Fail, H2Pass, H2Fail };

struct HyperbolicityVerdict {
    bool is_gl2z = false; // |det| == 1
    Int det_value{0};
    Int trace_value{0};
    std::optional<Orientation> orientation; // set iff is_gl2z
    bool hyperbolic = false;
    HyperbolicityReason reason = HyperbolicityReason::NotUnimodular;
};

// det = +1: hyperbolic iff tr^2 - 4 > 0 (H1).
// det = -1: hyperbolic iff tr^2 + 4 is not a perfect square, i.e. tr != 0 (H2).
HyperbolicityVerdict classify_hyperbolicity(const Mat2Z& m);

std::string to_string(Orientation o);
std::string to_string(HyperbolicityReason r);

} // namespace revpell
