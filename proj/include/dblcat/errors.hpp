#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dblcat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A validator found a violated law; `witness` names the offending elements.
class LawViolation : public Error {
 public:
  LawViolation(std::string law, std::string witness)
      : Error("law violated: " + law + " at " + witness), law_(std::move(law)), witness_(std::move(witness)) {}
  const std::string& law() const { return law_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string law_;
  std::string witness_;
};

class BoundaryMismatch : public Error {
 public:
  explicit BoundaryMismatch(const std::string& what) : Error("boundary mismatch: " + what) {}
};

class ConditionFails : public Error {
 public:
  explicit ConditionFails(const std::string& what) : Error("cell condition fails: " + what) {}
};

class NotNatural : public Error {
 public:
  explicit NotNatural(const std::string& what) : Error("family is not natural: " + what) {}
};

class SizeBoundExceeded : public Error {
 public:
  explicit SizeBoundExceeded(const std::string& what) : Error("size bound exceeded: " + what) {}
};

class NoMediator : public Error {
 public:
  explicit NoMediator(const std::string& what) : Error("no mediating morphism: " + what) {}
};

class NonUnique : public Error {
 public:
  explicit NonUnique(const std::string& what) : Error("mediating morphism not unique: " + what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error("unsupported: " + what) {}
};

/// Outcome of a law sweep. Sweeps never throw on a failed law; they collect
/// counterexamples here.
struct Report {
  std::string name;
  long checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) {
    if (failures.size() < 20) failures.push_back(std::move(what));
    else if (failures.size() == 20) failures.emplace_back("...");
  }
  void merge(const Report& other) {
    checked += other.checked;
    for (const auto& f : other.failures) fail(other.name.empty() ? f : other.name + ": " + f);
  }
};

}  // namespace dblcat
