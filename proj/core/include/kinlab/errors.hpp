// SPDX-License-Identifier: Apache-2.0
//
// Exception taxonomy shared by all kinlab components.

#ifndef KINLAB_ERRORS_HPP
#define KINLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace kinlab {

// Root of all kinlab exceptions.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed call: missing axis, inconsistent grids, value outside the
// documented argument range.
class argument_error : public error {
 public:
  using error::error;
};

// A formula was queried outside the parameter domain on which it is defined.
class domain_error : public error {
 public:
  using error::error;
};

// Bad configuration: unparsable file, schema violation, or a parameter
// combination the run setup cannot honor (e.g. an inadmissible time step for
// the lattice-exact shear).
class config_error : public error {
 public:
  using error::error;
};

// Advective time step too large for the grid; carries the largest admissible
// step so callers can resubmit.
class cfl_error : public error {
 public:
  cfl_error(const std::string& what_arg, double admissible_dt)
      : error(what_arg), admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

// Grid cannot resolve the requested object; carries a concrete suggestion.
class resolution_error : public error {
 public:
  resolution_error(const std::string& what_arg, std::string suggestion)
      : error(what_arg + " (suggestion: " + suggestion + ")"),
        suggestion_(std::move(suggestion)) {}
  const std::string& suggestion() const noexcept { return suggestion_; }

 private:
  std::string suggestion_;
};

// Randomized construction produced unusable data; carries a diagnostic.
class rejection_error : public error {
 public:
  rejection_error(const std::string& what_arg, std::string diagnostic)
      : error(what_arg + " [" + diagnostic + "]"),
        diagnostic_(std::move(diagnostic)) {}
  const std::string& diagnostic() const noexcept { return diagnostic_; }

 private:
  std::string diagnostic_;
};

// A documented precondition of an operation does not hold for the input.
class precondition_error : public error {
 public:
  using error::error;
};

}  // namespace kinlab

#endif  // KINLAB_ERRORS_HPP
