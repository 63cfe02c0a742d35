#ifndef DIAGEXT_ERRORS_HPP
#define DIAGEXT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diagext {

/* Base for everything thrown by the engine. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Errors raised while parsing algebra/module source text. */
struct ParseError : Error {
    enum class Kind {
        SyntaxError,
        NonQuadraticRelation,
        UnknownVertex,
        NonPrimeModulus,
        UnknownGenerator,
        EntryNotInAlgebra,
        ShapeMismatch,
    };
    Kind kind;
    int line = 0; // 1-based; 0 when not tied to a position
    int col = 0;

    ParseError(Kind k, const std::string& msg, int ln = 0, int cl = 0)
        : Error(format(k, msg, ln, cl)), kind(k), line(ln), col(cl) {}

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::SyntaxError: return "SyntaxError";
            case Kind::NonQuadraticRelation: return "NonQuadraticRelation";
            case Kind::UnknownVertex: return "UnknownVertex";
            case Kind::NonPrimeModulus: return "NonPrimeModulus";
            case Kind::UnknownGenerator: return "UnknownGenerator";
            case Kind::EntryNotInAlgebra: return "EntryNotInAlgebra";
            case Kind::ShapeMismatch: return "ShapeMismatch";
        }
        return "ParseError";
    }

private:
    static std::string format(Kind k, const std::string& msg, int ln, int cl) {
        std::string s = kind_name(k);
        if (ln > 0) s += " at line " + std::to_string(ln) + ", col " + std::to_string(cl);
        s += ": " + msg;
        return s;
    }
};

/* Incompatible matrix/block shapes. */
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("ShapeMismatch: " + msg) {}
};

/* An operation needs internal degrees beyond the materialized window. */
struct TruncationError : Error {
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

/* A stated hypothesis or precondition does not hold on this input. */
struct HypothesisError : Error {
    std::string which;
    HypothesisError(const std::string& which_, const std::string& msg)
        : Error("HypothesisFailed(" + which_ + "): " + msg), which(which_) {}
};

struct NotComposableError : Error {
    explicit NotComposableError(const std::string& msg) : Error("NotComposable: " + msg) {}
};

struct NotLinearError : Error {
    explicit NotLinearError(const std::string& msg) : Error("NotLinear: " + msg) {}
};

/* Violation of an internal invariant: a bug, never a bad input. */
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

} // namespace diagext

#endif
