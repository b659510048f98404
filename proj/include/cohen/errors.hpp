#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohen {

// Failure taxonomy shared by the whole library. Structural errors are kind or
// index-set mismatches, domain errors are precondition violations, resource
// errors are exceeded enumeration bounds. The remaining types belong to the
// decoders and evaluators.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class StructuralError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

class NotAnObstacle : public Error {
public:
  using Error::Error;
};

class MalformedMatrix : public Error {
public:
  using Error::Error;
};

class MalformedFamily : public Error {
public:
  using Error::Error;
};

class UndecidedEvaluation : public Error {
public:
  UndecidedEvaluation(const std::string& what, std::vector<std::uint64_t> ks)
      : Error(what), undecided(std::move(ks)) {}

  std::vector<std::uint64_t> undecided;
};

}  // namespace cohen
