#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lazyrag {

// Input that does not conform to an expected file or wire format
// (corpus lines, script files, datasets, backend response bodies).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a semantic contract: duplicate ids,
// probability mass that does not sum to one, mismatched vector widths.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A remote backend (model or embedding service) failed. retryable()
// distinguishes transient conditions (connection loss, 5xx, timeouts)
// from requests the server has definitively rejected.
class TransportError : public std::runtime_error {
public:
  TransportError(const std::string& what, bool retryable)
      : std::runtime_error(what), retryable_(retryable) {}

  bool retryable() const noexcept { return retryable_; }

private:
  bool retryable_;
};

// A single record failed during an evaluation run; carries the record id
// so callers can report exactly which input was at fault.
class EvalError : public std::runtime_error {
public:
  EvalError(std::string record_id, const std::string& what)
      : std::runtime_error("record '" + record_id + "': " + what),
        record_id_(std::move(record_id)) {}

  const std::string& record_id() const noexcept { return record_id_; }

private:
  std::string record_id_;
};

}  // namespace lazyrag
