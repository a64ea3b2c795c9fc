#pragma once

#include <stdexcept>
#include <string>

namespace pbpois {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched ambient variable counts, wrong grade or degree for a space, ...
class StructuralError : public Error {
public:
    using Error::Error;
};

// A request the implementation deliberately does not support.
class CapabilityError : public Error {
public:
    using Error::Error;
};

class ContractError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class MalformedSectionError : public Error {
public:
    using Error::Error;
};

// A mathematical hypothesis of an operation does not hold for the input.
class HypothesisError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DivisionError : public Error {
public:
    using Error::Error;
};

class NotInImageError : public Error {
public:
    using Error::Error;
};

}  // namespace pbpois
