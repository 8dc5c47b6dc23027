#pragma once

#include <stdexcept>
#include <string>

namespace dset {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad argument, inconsistent scales).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyComplex : public Error {
 public:
  EmptyComplex() : Error("curve complex has no pieces") {}
};

class DegeneratePiece : public Error {
 public:
  explicit DegeneratePiece(std::size_t index)
      : Error("piece " + std::to_string(index) + " has fewer than 2 distinct vertices"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class UnresolvableScale : public Error {
 public:
  using Error::Error;
};

class ScaleError : public Error {
 public:
  using Error::Error;
};

class UnknownDomain : public Error {
 public:
  explicit UnknownDomain(int id) : Error("unknown domain id " + std::to_string(id)), id_(id) {}
  int id() const { return id_; }

 private:
  int id_;
};

class NotOnSet : public Error {
 public:
  using Error::Error;
};

class NotTwoSided : public Error {
 public:
  explicit NotTwoSided(std::size_t domain_count)
      : Error("complement has " + std::to_string(domain_count) + " domains, expected 2"),
        domain_count_(domain_count) {}
  std::size_t domain_count() const { return domain_count_; }

 private:
  std::size_t domain_count_;
};

/// Two points that should be joinable inside a domain were not at the current resolution.
class NoConnection : public Error {
 public:
  using Error::Error;
};

/// The neighborhood component at `eps` contains no accessible point.
class HypothesisFailed : public Error {
 public:
  explicit HypothesisFailed(double eps)
      : Error("no accessible point in the neighborhood component at eps=" + std::to_string(eps)), eps_(eps) {}
  double eps() const { return eps_; }

 private:
  double eps_;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dset
