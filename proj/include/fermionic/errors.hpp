#pragma once

#include <stdexcept>
#include <string>

namespace fermionic {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonSymmetric : Error {
    explicit NonSymmetric(const std::string& what = "gram matrix is not symmetric") : Error(what) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what = "gram matrix is not positive-definite")
        : Error(what) {}
};

struct DimTooLarge : Error {
    explicit DimTooLarge(const std::string& what = "dimension exceeds engine cap") : Error(what) {}
};

struct DimMismatch : Error {
    explicit DimMismatch(const std::string& what = "operands have different dimensions") : Error(what) {}
};

struct NotAntiHermitian : Error {
    explicit NotAntiHermitian(const std::string& what = "map is not anti-hermitian") : Error(what) {}
};

struct NotTwoForm : Error {
    explicit NotTwoForm(const std::string& what = "multivector is not a pure 2-form") : Error(what) {}
};

struct NotAVector : Error {
    explicit NotAVector(const std::string& what = "multivector is not a pure vector") : Error(what) {}
};

struct ModeMismatch : Error {
    explicit ModeMismatch(const std::string& what = "hamiltonian incompatible with evolution mode")
        : Error(what) {}
};

struct GradeTooLarge : Error {
    explicit GradeTooLarge(const std::string& what = "grade exceeds dimension") : Error(what) {}
};

struct GradeOverflow : Error {
    explicit GradeOverflow(const std::string& what = "result grade exceeds dimension") : Error(what) {}
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

}  // namespace fermionic
