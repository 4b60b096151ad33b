// Error types shared by every module.
//
// Every failure carries a short machine-readable code (e.g. "NonAssociative")
// plus the ids involved, so the CLI can turn it into a JSON error object.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace groupoidal {

  struct Violation {
    std::string              code;
    std::vector<std::string> ids;
    std::string              message;

    bool operator==(Violation const&) const = default;
  };

  inline std::string describe(Violation const& v) {
    std::string s = v.code;
    if (!v.ids.empty()) {
      s += "(";
      for (std::size_t i = 0; i < v.ids.size(); ++i) {
        if (i)
          s += ", ";
        s += v.ids[i];
      }
      s += ")";
    }
    if (!v.message.empty())
      s += ": " + v.message;
    return s;
  }

  // Exit classes used by the CLI.
  enum class ErrorClass { validation = 1, budget = 2, schema = 3 };

  class Error : public std::runtime_error {
   public:
    Error(ErrorClass cls, std::vector<Violation> violations)
        : std::runtime_error(summary(violations)),
          _cls(cls),
          _violations(std::move(violations)) {}

    Error(ErrorClass cls, std::string code, std::vector<std::string> ids = {}, std::string message = {})
        : Error(cls, {Violation{std::move(code), std::move(ids), std::move(message)}}) {}

    ErrorClass                    error_class() const noexcept { return _cls; }
    std::vector<Violation> const& violations() const noexcept { return _violations; }
    std::string const&            code() const noexcept { return _violations.front().code; }

   private:
    static std::string summary(std::vector<Violation> const& vs) {
      if (vs.empty())
        return "unknown error";
      std::string s = describe(vs.front());
      if (vs.size() > 1)
        s += " (+" + std::to_string(vs.size() - 1) + " more)";
      return s;
    }

    ErrorClass             _cls;
    std::vector<Violation> _violations;
  };

  // A structural or precondition failure: the input does not satisfy the
  // axioms an operation needs.
  class ValidationError : public Error {
   public:
    explicit ValidationError(std::vector<Violation> vs) : Error(ErrorClass::validation, std::move(vs)) {}
    ValidationError(std::string code, std::vector<std::string> ids = {}, std::string message = {})
        : Error(ErrorClass::validation, std::move(code), std::move(ids), std::move(message)) {}
  };

  class BudgetExceeded : public Error {
   public:
    BudgetExceeded(std::string code, std::uint64_t budget)
        : Error(ErrorClass::budget, std::move(code), {std::to_string(budget)}, "search budget exhausted"),
          _budget(budget) {}
    std::uint64_t budget() const noexcept { return _budget; }

   private:
    std::uint64_t _budget;
  };

  // Malformed input files, unknown ids, I/O failures.
  class SchemaError : public Error {
   public:
    SchemaError(std::string message, std::vector<std::string> ids = {})
        : Error(ErrorClass::schema, "SchemaError", std::move(ids), std::move(message)) {}
  };

  // Node counter for the bounded searches (isomorphism, cohomology witnesses,
  // group isomorphism). `tick` throws once the allowance is used up.
  class Budget {
   public:
    static constexpr std::uint64_t default_nodes = 1'000'000;

    explicit Budget(std::uint64_t nodes = from_env(), std::string code = "SearchBudgetExceeded")
        : _limit(nodes), _code(std::move(code)) {}

    void tick(std::uint64_t n = 1) {
      _used += n;
      if (_used > _limit)
        throw BudgetExceeded(_code, _limit);
    }
    bool          try_tick(std::uint64_t n = 1) noexcept { return (_used += n) <= _limit; }
    std::uint64_t used() const noexcept { return _used; }
    std::uint64_t limit() const noexcept { return _limit; }

    static std::uint64_t from_env() {
      if (char const* s = std::getenv("GROUPOIDAL_BUDGET")) {
        char*              end = nullptr;
        unsigned long long v   = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0)
          return v;
      }
      return default_nodes;
    }

   private:
    std::uint64_t _limit;
    std::uint64_t _used = 0;
    std::string   _code;
  };

}  // namespace groupoidal
