#pragma once

#include <stdexcept>
#include <string>

namespace heraldsim {

/// Out-of-range or non-finite input (probabilities outside [0,1], chi outside
/// [0,1), nonpositive tolerances, zero trial counts, ...).
class InvalidParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Herald probability indistinguishable from zero at the certified truncation
/// precision; the fidelity would be 0/0.
class DegenerateHeraldError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No Monte Carlo trial produced the herald signature; the sampled fidelity
/// is inestimable.
class ZeroHeraldsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Every scanned point of an optimization was degenerate.
class AllDegenerateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace heraldsim
