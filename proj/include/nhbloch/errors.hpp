#pragma once

#include <stdexcept>
#include <string>

namespace nhbloch {

// Invalid parameters or inputs outside an operation's domain.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Solver breakdown, refinement caps, inconsistent numerical verdicts.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The base energy sits on (or within sampling resolution of) the spectrum.
struct on_spectrum_error : numerical_error {
  using numerical_error::numerical_error;
};

} // namespace nhbloch
