#pragma once

#include <stdexcept>
#include <string>

namespace twoisog {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (zero where nonzero is required,
/// a non-prime where a prime is required, a point off its curve, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// The Weierstrass model is singular (b = 0 or a^2 - 4b = 0), either
/// generically or after specialization.
class singular_model_error : public error {
 public:
  using error::error;
};

/// Factorization gave up before the cofactor was fully split.
class factorization_error : public error {
 public:
  factorization_error(const std::string& what, std::string unfactored)
      : error(what + " (unfactored part " + unfactored + ")"),
        unfactored_(std::move(unfactored)) {}
  const std::string& unfactored() const noexcept { return unfactored_; }

 private:
  std::string unfactored_;
};

/// A square class or place falls outside what the module models, e.g. a
/// polynomial with a nonlinear irreducible factor.
class unsupported_error : public error {
 public:
  using error::error;
};

/// A local solvability decision did not terminate within its refinement cap.
class precision_error : public error {
 public:
  using error::error;
};

/// A family violates one of its structural assumptions.
class family_error : public error {
 public:
  using error::error;
};

}  // namespace twoisog
