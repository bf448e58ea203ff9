#pragma once

#include <stdexcept>

namespace temper {

/// Malformed input: bad arity, unparsable document, schema violation.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a mathematical precondition (a pattern that
/// is not a subalgebra, a torus that does not diagonalize, a shear flow, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace temper
