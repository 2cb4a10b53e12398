#pragma once

#include <string>
#include <vector>

#include "revpell/mat2z.hpp"

namespace revpell {

// Every integer involution != +-I has trace 0 and det -1, hence the shape
// [[alpha, beta], [gamma, -alpha]] with alpha^2 + beta*gamma = 1.  The five
// families below cover them; the enum order is the canonical (first-match)
// classification order.
enum class InvolutionFamily {
    LowerTriangularPlus,  // [[ 1, 0], [gamma, -1]]
    LowerTriangularMinus, // [[-1, 0], [gamma,  1]]
    UpperTriangularPlus,  // [[ 1, gamma], [0, -1]]
    UpperTriangularMinus, // [[-1, gamma], [0,  1]]
    General,              // [[alpha, beta], [(1-alpha^2)/beta, -alpha]], beta != 0
};

struct InvolutionSpec {
    InvolutionFamily family = InvolutionFamily::General;
    Int gamma{0};        // triangular families only
    Int alpha{0}, beta{1}; // General only; beta != 0, beta | 1 - alpha^2, alpha != +-1

    static InvolutionSpec triangular(InvolutionFamily f, Int gamma);
    static InvolutionSpec general(Int alpha, Int beta);

    friend bool operator==(const InvolutionSpec& x, const InvolutionSpec& y) {
        return x.family == y.family && x.gamma == y.gamma && x.alpha == y.alpha &&
               x.beta == y.beta;
    }
};

// Spec -> matrix.  Throws InvalidParamsError on malformed General parameters
// (beta == 0, alpha == +-1, or beta not dividing 1 - alpha^2).
Mat2Z materialize(const InvolutionSpec& spec);

// Matrix -> canonical spec.  Throws NotAnInvolutionError / TrivialInvolutionError.
InvolutionSpec classify_involution(const Mat2Z& m);

// All involutions != +-I with |entries| <= entry_bound, lexicographic on
// (a, b, c, d).  Non-positive bound gives the empty list.
std::vector<Mat2Z> enumerate_involutions(long long entry_bound);

// A closed fixed curve of the induced torus involution: the rational line
// { offset + t * (dir_x, dir_y) : t in R } mod Z^2.
struct FixedCurve {
    Int dir_x{0}, dir_y{0};      // primitive direction, dir_x > 0 or (0, dir_y > 0)
    Rat offset_x{0}, offset_y{0}; // representative point, coordinates in [0, 1)

    friend bool operator==(const FixedCurve& x, const FixedCurve& y) {
        return x.dir_x == y.dir_x && x.dir_y == y.dir_y && x.offset_x == y.offset_x &&
               x.offset_y == y.offset_y;
    }
};

// Fixed-point set of the torus map induced by involution m != +-I: a finite
// union of parallel closed geodesics (m - I has rank 1).  Curve count equals
// the gcd of the row multipliers of m - I over its primitive row covector.
std::vector<FixedCurve> fixed_point_curves(const Mat2Z& m);

std::string to_string(InvolutionFamily f);

} // namespace revpell
