#include "revpell/involutions.hpp"

#include <algorithm>

namespace revpell {

InvolutionSpec InvolutionSpec::triangular(InvolutionFamily f, Int gamma) {
    if (f == InvolutionFamily::General)
        throw InvalidParamsError("triangular(): General is not a triangular family");
    InvolutionSpec s;
    s.family = f;
    s.gamma = std::move(gamma);
    return s;
}

InvolutionSpec InvolutionSpec::general(Int alpha, Int beta) {
    InvolutionSpec s;
    s.family = InvolutionFamily::General;
    s.alpha = std::move(alpha);
    s.beta = std::move(beta);
    return s;
}

Mat2Z materialize(const InvolutionSpec& spec) {
    switch (spec.family) {
    case InvolutionFamily::LowerTriangularPlus:
        return {1, 0, spec.gamma, -1};
    case InvolutionFamily::LowerTriangularMinus:
        return {-1, 0, spec.gamma, 1};
    case InvolutionFamily::UpperTriangularPlus:
        return {1, spec.gamma, 0, -1};
    case InvolutionFamily::UpperTriangularMinus:
        return {-1, spec.gamma, 0, 1};
    case InvolutionFamily::General: {
        if (spec.beta == 0)
            throw InvalidParamsError("materialize: General requires beta != 0");
        Int num = 1 - spec.alpha * spec.alpha;
        if (num == 0) // alpha = +-1 with beta != 0 is not an involution
            throw InvalidParamsError("materialize: alpha = +-1 has no General member");
        if (num % spec.beta != 0)
            throw InvalidParamsError("materialize: beta does not divide 1 - alpha^2");
        return {spec.alpha, spec.beta, num / spec.beta, -spec.alpha};
    }
    }
    throw InvalidParamsError("materialize: unknown family");
}

InvolutionSpec classify_involution(const Mat2Z& m) {
    if (!is_involution(m))
        throw NotAnInvolutionError("classify_involution: A*A != I for " + m.str());
    if (m == Mat2Z::identity() || m == mat_neg(Mat2Z::identity()))
        throw TrivialInvolutionError("classify_involution: +-identity carries no family");
    // Nontrivial involution: trace 0, det -1, so m = [[alpha, beta], [gamma, -alpha]].
    if (m.b == 0) {
        // alpha^2 = 1 here.
        if (m.a == 1)
            return InvolutionSpec::triangular(InvolutionFamily::LowerTriangularPlus, m.c);
        return InvolutionSpec::triangular(InvolutionFamily::LowerTriangularMinus, m.c);
    }
    if (m.c == 0) {
        if (m.a == 1)
            return InvolutionSpec::triangular(InvolutionFamily::UpperTriangularPlus, m.b);
        return InvolutionSpec::triangular(InvolutionFamily::UpperTriangularMinus, m.b);
    }
    return InvolutionSpec::general(m.a, m.b);
}

std::vector<Mat2Z> enumerate_involutions(long long entry_bound) {
    std::vector<Mat2Z> out;
    if (entry_bound < 1) return out;
    const long B = static_cast<long>(entry_bound);
    for (long a = -B; a <= B; ++a) {
        Int num = 1 - Int(a) * Int(a);
        // b = 0 needs a^2 = 1 and leaves c free; b != 0 pins c = (1 - a^2)/b.
        if (a == 1 || a == -1) {
            for (long c = -B; c <= B; ++c) {
                Mat2Z m{Int(a), Int(0), Int(c), Int(-a)};
                if (!(m == Mat2Z::identity()) && !(m == mat_neg(Mat2Z::identity())))
                    out.push_back(m);
            }
        }
        for (long b = -B; b <= B; ++b) {
            if (b == 0) continue;
            if (num % b != 0) continue;
            Int c = num / b;
            if (c < -B || c > B) continue;
            out.push_back({Int(a), Int(b), c, Int(-a)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// x mod 1 as a rational in [0, 1).
Rat frac(const Rat& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rat r = x - Rat(fl);
    r.canonicalize();
    return r;
}

} // namespace

std::vector<FixedCurve> fixed_point_curves(const Mat2Z& m) {
    if (!is_involution(m))
        throw NotAnInvolutionError("fixed_point_curves: A*A != I for " + m.str());
    if (m == Mat2Z::identity())
        throw TrivialInvolutionError("fixed_point_curves: identity fixes everything");
    if (m == mat_neg(Mat2Z::identity()))
        throw TrivialInvolutionError(
            "fixed_point_curves: -identity fixes only the 2-torsion points");

    // M = m - I has rank 1: rows are t1*w, t2*w for a primitive covector w.
    // v is fixed on the torus iff M v in Z^2 iff w.v in (1/g)Z, g = gcd(t1, t2).
    Int r11 = m.a - 1, r12 = m.b;
    Int r21 = m.c, r22 = m.d - 1;

    Int w1, w2;
    if (r11 != 0 || r12 != 0) {
        Int g = gcd(r11, r12);
        w1 = r11 / g;
        w2 = r12 / g;
    } else {
        Int g = gcd(r21, r22);
        w1 = r21 / g;
        w2 = r22 / g;
    }
    if (w1 < 0 || (w1 == 0 && w2 < 0)) {
        w1 = -w1;
        w2 = -w2;
    }

    // Row multipliers: row_i = t_i * w (exact; zero rows give t_i = 0).
    auto multiplier = [&](const Int& x, const Int& y) -> Int {
        if (w1 != 0) return x / w1;
        return y / w2;
    };
    Int t1 = multiplier(r11, r12);
    Int t2 = multiplier(r21, r22);
    Int g = gcd(t1, t2); // non-negative; positive since m != I forces some t_i != 0

    // Curve direction = ker(w).
    Int p = w2, q = -w1;
    if (p < 0 || (p == 0 && q < 0)) {
        p = -p;
        q = -q;
    }

    std::vector<FixedCurve> curves;
    for (Int k = 0; k < g; ++k) {
        // Pick a point with w.v = k/g (mod 1) on an axis.
        FixedCurve c;
        c.dir_x = p;
        c.dir_y = q;
        Rat level = Rat(k) / Rat(g);
        if (w2 != 0) {
            c.offset_x = 0;
            c.offset_y = frac(level / Rat(w2));
        } else {
            c.offset_x = frac(level / Rat(w1));
            c.offset_y = 0;
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

std::string to_string(InvolutionFamily f) {
    switch (f) {
    case InvolutionFamily::LowerTriangularPlus: return "lower_triangular_plus";
    case InvolutionFamily::LowerTriangularMinus: return "lower_triangular_minus";
    case InvolutionFamily::UpperTriangularPlus: return "upper_triangular_plus";
    case InvolutionFamily::UpperTriangularMinus: return "upper_triangular_minus";
    case InvolutionFamily::General: return "general";
    }
    return "unknown";
}

} // namespace revpell
