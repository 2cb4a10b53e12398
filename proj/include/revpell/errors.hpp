#pragma once

#include <stdexcept>
#include <string>

namespace revpell {

// Base for all domain errors raised by the library.  Input *parsing* problems
// are the caller's business; everything below means "the math said no".
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotUnimodularError : public Error {
public:
    using Error::Error;
};

class NotAnInvolutionError : public Error {
public:
    using Error::Error;
};

// A = +I or -I: an involution, but carries no classification data.
class TrivialInvolutionError : public Error {
public:
    using Error::Error;
};

class InvalidParamsError : public Error {
public:
    using Error::Error;
};

class NotHyperbolicError : public Error {
public:
    using Error::Error;
};

// cf_sqrt(D) with D a perfect square (rational sqrt, no period).
class PerfectSquareError : public Error {
public:
    using Error::Error;
};

// cf_sqrt(D) with D <= 0.
class NonPositiveError : public Error {
public:
    using Error::Error;
};

// find_reversors on det = -1 input: use orientation_reversing_analysis.
class OrientationReversingError : public Error {
public:
    using Error::Error;
};

// orientation_reversing_analysis on det = +1 input: use find_reversors.
class OrientationPreservingError : public Error {
public:
    using Error::Error;
};

// classify_conic: determinant does not match the requested orientation.
class OrientationMismatchError : public Error {
public:
    using Error::Error;
};

class NotReversibleError : public Error {
public:
    using Error::Error;
};

// construct_reversible_anosov has no recipe for the request.
class NoRecipeError : public Error {
public:
    using Error::Error;
};

} // namespace revpell
