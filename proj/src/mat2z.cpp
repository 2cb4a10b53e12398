#include "revpell/mat2z.hpp"

#include <sstream>

namespace revpell {

Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::string Mat2Z::str() const {
    std::ostringstream os;
    os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
    return os.str();
}

Int det(const Mat2Z& m) { return m.a * m.d - m.b * m.c; }

Int trace(const Mat2Z& m) { return m.a + m.d; }

Mat2Z mat_mul(const Mat2Z& x, const Mat2Z& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2Z mat_neg(const Mat2Z& m) { return {-m.a, -m.b, -m.c, -m.d}; }

Mat2Z inverse_unimodular(const Mat2Z& m) {
    Int dt = det(m);
    if (dt == 1) return {m.d, -m.b, -m.c, m.a};
    if (dt == -1) return {-m.d, m.b, m.c, -m.a};
    throw NotUnimodularError("inverse_unimodular: det = " + dt.get_str() +
                             ", expected +-1");
}

Mat2Z mat_pow(const Mat2Z& m, long long n) {
    Mat2Z base = m;
    if (n < 0) {
        base = inverse_unimodular(m); // throws if not invertible over Z
        n = -n;
    }
    Mat2Z acc = Mat2Z::identity();
    while (n > 0) {
        if (n & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        n >>= 1;
    }
    return acc;
}

bool is_involution(const Mat2Z& m) { return mat_mul(m, m) == Mat2Z::identity(); }

HyperbolicityVerdict classify_hyperbolicity(const Mat2Z& m) {
    HyperbolicityVerdict v;
    v.det_value = det(m);
    v.trace_value = trace(m);
    if (v.det_value != 1 && v.det_value != -1) {
        v.is_gl2z = false;
        v.hyperbolic = false;
        v.reason = HyperbolicityReason::NotUnimodular;
        return v;
    }
    v.is_gl2z = true;
    Int tsq = v.trace_value * v.trace_value;
    if (v.det_value == 1) {
        v.orientation = Orientation::Preserving;
        // eigenvalues off the unit circle <=> tr^2 - 4 > 0
        v.hyperbolic = tsq - 4 > 0;
        v.reason = v.hyperbolic ? HyperbolicityReason::H1Pass : HyperbolicityReason::H1Fail;
    } else {
        v.orientation = Orientation::Reversing;
        // tr^2 + 4 a perfect square forces tr = 0 (eigenvalues +-1);
        // otherwise the eigenvalues are irrational with |lambda| != 1.
        v.hyperbolic = !is_perfect_square(tsq + 4);
        v.reason = v.hyperbolic ? HyperbolicityReason::H2Pass : HyperbolicityReason::H2Fail;
    }
    return v;
}

std::string to_string(Orientation o) {
    return o == Orientation::Preserving ? "preserving" : "reversing";
}

std::string to_string(HyperbolicityReason r) {
    switch (r) {
    case HyperbolicityReason::NotUnimodular: return "not_unimodular";
    case HyperbolicityReason::H1Pass: return "H1_pass";
    case HyperbolicityReason::H1Fail: return "H1_fail";
    case HyperbolicityReason::H2Pass: return "H2_pass";
    case HyperbolicityReason::H2Fail: return "H2_fail";
    }
    return "unknown";
}

} // namespace revpell
