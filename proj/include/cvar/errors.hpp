#ifndef CVAR_ERRORS_HPP
#define CVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvar {

/// Base class for all library errors. Each concrete error carries a stable
/// name used by the CLI to map failures onto distinct exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what)
        : Error("NotPositiveDefinite", what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what)
        : Error("DimensionMismatch", what) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& what)
        : Error("InsufficientData", what) {}
};

struct ZeroVariance : Error {
    explicit ZeroVariance(const std::string& what)
        : Error("ZeroVariance", what) {}
};

struct MissingLags : Error {
    explicit MissingLags(const std::string& what)
        : Error("MissingLags", what) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& what)
        : Error("DegenerateInput", what) {}
};

struct NotTriangulated : Error {
    explicit NotTriangulated(const std::string& what)
        : Error("NotTriangulated", what) {}
};

struct NotPerfectOrdering : Error {
    explicit NotPerfectOrdering(const std::string& what)
        : Error("NotPerfectOrdering", what) {}
};

struct NotDecomposable : Error {
    explicit NotDecomposable(const std::string& what)
        : Error("NotDecomposable", what) {}
};

struct CliqueTooLarge : Error {
    explicit CliqueTooLarge(const std::string& what)
        : Error("CliqueTooLarge", what) {}
};

struct SingularCliqueMoment : Error {
    explicit SingularCliqueMoment(const std::string& what)
        : Error("SingularCliqueMoment", what) {}
};

struct MaxIterationsExceeded : Error {
    explicit MaxIterationsExceeded(const std::string& what)
        : Error("MaxIterationsExceeded", what) {}
};

struct UnstableModel : Error {
    explicit UnstableModel(const std::string& what)
        : Error("UnstableModel", what) {}
};

struct DegenerateDenominator : Error {
    explicit DegenerateDenominator(const std::string& what)
        : Error("DegenerateDenominator", what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

struct RaggedRows : Error {
    explicit RaggedRows(const std::string& what) : Error("RaggedRows", what) {}
};

struct NonNumericCell : Error {
    explicit NonNumericCell(const std::string& what) : Error("NonNumericCell", what) {}
};

}  // namespace cvar

#endif
