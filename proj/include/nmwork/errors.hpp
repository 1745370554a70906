// errors.hpp: Exception types shared by every nmwork module

#pragma once

#include <stdexcept>
#include <string>

namespace nmwork {

// Physically inadmissible result: CP violation, |G| > 1, failed G(0) check.
class ModelViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A rate integral or rate evaluation hit a divergence.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Loschmidt echo below the representable floor.
class DegenerateEcho : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Coincident cubic roots in the band-gap coefficients.
class DegenerateParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Unsupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace nmwork
