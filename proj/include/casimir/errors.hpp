#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Unusable input values: non-positive radii, out-of-range parameters,
// malformed configuration. Maps to CLI exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Geometry at (or numerically indistinguishable from) the contact limit
// mu -> 0, where every series diverges. Maps to CLI exit code 3.
class degenerate_geometry : public std::domain_error {
 public:
  explicit degenerate_geometry(const std::string& what) : std::domain_error(what) {}
};

// A series failed to satisfy its termination criterion within the term cap.
// Maps to CLI exit code 4.
class series_stalled : public std::runtime_error {
 public:
  explicit series_stalled(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check between two independent evaluation paths failed;
// indicates a numerical breakdown rather than bad input. Maps to CLI exit
// code 5.
class verification_failure : public std::runtime_error {
 public:
  explicit verification_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace casimir
