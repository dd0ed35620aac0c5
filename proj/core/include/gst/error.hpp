#pragma once

#include <stdexcept>
#include <string>

namespace gst {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Weight evaluates to something negative or non-finite, or violates w(0) = 0.
class InvalidWeight : public Error {
public:
  using Error::Error;
};

// A bound was requested that the available information cannot certify.
class Uncertified : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

// Point outside the domain where the object is defined (e.g. |z| > 1).
class DomainError : public Error {
public:
  using Error::Error;
};

class ConstructionFailed : public Error {
public:
  using Error::Error;
};

}  // namespace gst
