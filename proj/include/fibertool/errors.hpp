#pragma once

#include <stdexcept>
#include <string>

namespace fibertool {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (polynomial/rational/JSON syntax).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

/// An operation needed a nonzero polynomial.
class ZeroPolynomialError : public Error {
public:
    ZeroPolynomialError() : Error("zero polynomial has no primitive form") {}
};

/// An operation needed a nonconstant polynomial.
class ConstantPolynomialError : public Error {
public:
    explicit ConstantPolynomialError(const std::string& ctx)
        : Error("constant polynomial not allowed: " + ctx) {}
};

/// Both coordinates of a parametrisation are constant.
class BothConstantError : public Error {
public:
    BothConstantError() : Error("parametrisation has two constant coordinates") {}
};

/// Degenerate parametrisation handed to point enumeration.
class ConstantCoordinateError : public Error {
public:
    ConstantCoordinateError() : Error("degenerate parametrisation: both coordinates constant") {}
};

/// Coordinate degrees never divide during reduction.
class DegreeObstructionError : public Error {
public:
    DegreeObstructionError(int dp, int dq)
        : Error("degree obstruction: neither of deg " + std::to_string(dp) + " and deg "
                + std::to_string(dq) + " divides the other; input was not a proper"
                " non-singular line parametrisation") {}
};

/// A parametrisation failed the non-singularity precondition.
class SingularParamError : public Error {
public:
    SingularParamError() : Error("parametrisation is singular: p' and q' share a root") {}
};

/// A parametrisation failed the properness (injectivity) precondition.
class ImproperParamError : public Error {
public:
    ImproperParamError() : Error("parametrisation is not proper (not generically injective)") {}
};

/// Internal verification of a reduction result failed; indicates a defect.
class NotReducedError : public Error {
public:
    explicit NotReducedError(const std::string& what)
        : Error("internal reduction verification failed: " + what) {}
};

/// The given parametrisation does not satisfy P(p(t), q(t)) = k.
class ParamMismatchError : public Error {
public:
    ParamMismatchError() : Error("parametrisation does not lie on the requested level set") {}
};

/// Height bound below the certified enumeration threshold.
class BelowThresholdError : public Error {
public:
    BelowThresholdError(const std::string& b, const std::string& b0)
        : Error("B = " + b + " is below the certified threshold B0 = " + b0),
          b0_text(b0) {}
    std::string b0_text;
};

/// Square discriminant handed to the continued-fraction machinery.
class PerfectSquareError : public Error {
public:
    explicit PerfectSquareError(const std::string& d)
        : Error("d = " + d + " is a perfect square; sqrt(d) has no periodic expansion") {}
};

}  // namespace fibertool
