#pragma once
#include <stdexcept>

// Error taxonomy. std::domain_error, std::invalid_argument and
// std::out_of_range are used where the standard types fit; the three below
// mark conditions specific to this kit.

namespace vmv {

// Input magnitude exceeds the range where the mod-1 reduction keeps its
// documented accuracy.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested computation exceeds the configured time or memory scale.
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A phase function violates the structural hypotheses of an operation
// (derivative sign change, identically zero derivative, singular endpoint).
struct family_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vmv
