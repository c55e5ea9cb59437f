#pragma once

#include <stdexcept>
#include <string>

namespace layerseg {

// Base of every error thrown by the library. The CLI maps each subclass to a
// distinct process exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class InvalidLayer : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ResourceExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace layerseg
