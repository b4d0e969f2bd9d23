#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The series recursion could not determine h_k from p_k(X).
class RecursionStall : public Error {
 public:
  RecursionStall(int k, const std::string& what)
      : Error("recursion stalled at k=" + std::to_string(k) + ": " + what), k_(k) {}
  int k() const { return k_; }

 private:
  int k_;
};

// The sigma-form right-hand side left its real branch (h' = 0 or a negative radicand).
class SingularRhs : public Error {
 public:
  SingularRhs(double t, const std::string& what)
      : Error("singular rhs at t=" + std::to_string(t) + ": " + what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

// Adaptive step size underflowed or the step budget ran out.
class StepFailure : public Error {
 public:
  StepFailure(double last_good_t, const std::string& what)
      : Error("step failure after t=" + std::to_string(last_good_t) + ": " + what),
        t_(last_good_t) {}
  double last_good_t() const { return t_; }

 private:
  double t_;
};

class GlueFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace jacobi
