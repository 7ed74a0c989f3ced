#pragma once

#include <stdexcept>
#include <string>

namespace rescal {

/// Input text that does not match the expression / fraction / instance
/// grammar. CLI exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No monic relation for a variable over the base: either certified
/// (the quotient cannot be module-finite) or a search-bound failure.
struct NotFiniteOverBase : std::runtime_error {
    std::string variable;
    bool certain;
    NotFiniteOverBase(std::string var, bool certain_, std::string msg)
        : std::runtime_error(std::move(msg)),
          variable(std::move(var)),
          certain(certain_) {}
};

/// A claimed generator relation t_i = sum_j U_ij g_j fails on expansion.
struct RelationMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element not in the ideal where membership is a precondition.
struct NotMember : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fraction operands whose denominator sequences differ.
struct DenominatorMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A denominator mixes variable blocks where a clean split is required.
struct BlockSplitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A complex fails the homogeneity requirements of graded computations.
struct NotGraded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Buchberger pair budget exhausted; never a wrong answer.
struct GroebnerBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rescal
