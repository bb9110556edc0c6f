#pragma once

#include <stdexcept>
#include <string>

namespace walkmix {

/// Base class for all walkmix errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input data (bad matrices, malformed files, invalid parameters).
/// The CLI maps these to exit status 2; everything else exits 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

namespace detail {
std::string fmt_g(double v);
}

class NotSquareError : public ValidationError {
 public:
  NotSquareError(long rows, long cols)
      : ValidationError("NotSquare: matrix is " + std::to_string(rows) + "x" +
                        std::to_string(cols)) {}
};

class NegativeEntryError : public ValidationError {
 public:
  NegativeEntryError(int row_, int col_, double value_)
      : ValidationError("NegativeEntry: p[" + std::to_string(row_) + "][" +
                        std::to_string(col_) + "] = " + detail::fmt_g(value_)),
        row(row_),
        col(col_),
        value(value_) {}
  int row;
  int col;
  double value;
};

class RowSumViolationError : public ValidationError {
 public:
  RowSumViolationError(int row_, double sum_)
      : ValidationError("RowSumViolation: row " + std::to_string(row_) +
                        " sums to " + detail::fmt_g(sum_)),
        row(row_),
        sum(sum_) {}
  int row;
  double sum;
};

class NotReversibleError : public Error {
 public:
  NotReversibleError() : Error("NotReversible: chain is not ergodic and reversible") {}
};

class NotErgodicError : public Error {
 public:
  NotErgodicError() : Error("NotErgodic: support digraph is not strongly connected") {}
};

class NotSymmetricError : public Error {
 public:
  explicit NotSymmetricError(double asymmetry)
      : Error("NotSymmetric: max |M - M^T| = " + detail::fmt_g(asymmetry)) {}
};

class EigenvalueOutOfRangeError : public Error {
 public:
  explicit EigenvalueOutOfRangeError(double value_)
      : Error("EigenvalueOutOfRange: " + detail::fmt_g(value_) +
              " lies outside [-1, 1] beyond the clamping allowance"),
        value(value_) {}
  double value;
};

class SizeExceededError : public Error {
 public:
  SizeExceededError(int states_, int budget_)
      : Error("SizeExceeded: " + std::to_string(states_) +
              " states exceeds the dense-walk budget of " + std::to_string(budget_)),
        states(states_),
        budget(budget_) {}
  int states;
  int budget;
};

class DegenerateAngleError : public Error {
 public:
  explicit DegenerateAngleError(double lambda_)
      : Error("DegenerateAngle: eigenvalue " + detail::fmt_g(lambda_) +
              " has sin^2(theta) below 1e-14 but was not routed to the +-1 branch"),
        lambda(lambda_) {}
  double lambda;
};

class NotUnitError : public Error {
 public:
  explicit NotUnitError(double norm_)
      : Error("NotUnit: state has norm " + detail::fmt_g(norm_)), norm(norm_) {}
  double norm;
};

class IncompleteIdempotentsError : public Error {
 public:
  explicit IncompleteIdempotentsError(double residual_)
      : Error("IncompleteIdempotents: completeness residual " + detail::fmt_g(residual_)),
        residual(residual_) {}
  double residual;
};

class MinusOneEigenvalueError : public Error {
 public:
  explicit MinusOneEigenvalueError(double value_)
      : Error("MinusOneEigenvalue: discriminant eigenvalue " + detail::fmt_g(value_) +
              " was grouped to -1"),
        value(value_) {}
  double value;
};

class OutOfRangeError : public ValidationError {
 public:
  explicit OutOfRangeError(double p_)
      : ValidationError("OutOfRange: p = " + detail::fmt_g(p_) + " is not in (0, 1)"),
        p(p_) {}
  double p;
};

class NotSymmetricFactorError : public ValidationError {
 public:
  explicit NotSymmetricFactorError(int index_)
      : ValidationError("NotSymmetricFactor: factor " + std::to_string(index_) +
                        " is not symmetric"),
        index(index_) {}
  int index;
};

class NotOddPrimeError : public ValidationError {
 public:
  explicit NotOddPrimeError(long q_)
      : ValidationError("NotOddPrime: " + std::to_string(q_) + " is not an odd prime"),
        q(q_) {}
  long q;
};

class DuplicatePrimeError : public ValidationError {
 public:
  explicit DuplicatePrimeError(long q_)
      : ValidationError("DuplicatePrime: " + std::to_string(q_) + " appears more than once"),
        q(q_) {}
  long q;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(int states_, int budget_)
      : Error("BudgetExceeded: exhaustive search over " + std::to_string(states_) +
              " states exceeds the budget of " + std::to_string(budget_)),
        states(states_),
        budget(budget_) {}
  int states;
  int budget;
};

class NotAutomorphismError : public ValidationError {
 public:
  NotAutomorphismError(int row_, int col_)
      : ValidationError("NotAutomorphism: p(sigma(" + std::to_string(row_) + "), sigma(" +
                        std::to_string(col_) + ")) != p(" + std::to_string(row_) + ", " +
                        std::to_string(col_) + ")"),
        row(row_),
        col(col_) {}
  int row;
  int col;
};

class AutomorphismInvalidError : public ValidationError {
 public:
  explicit AutomorphismInvalidError(const std::string& what_)
      : ValidationError("AutomorphismInvalid: " + what_) {}
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace walkmix
