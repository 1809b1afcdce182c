#pragma once

#include <stdexcept>
#include <string>

namespace graphcub {

enum class ErrorKind {
  InvalidParameter,
  Dimension,
  Parse,
  Disconnected,
  LoopOrMultiEdge,
  InvalidVertex,
  ClosureSaturated,
  Coverage,
  BandwidthTooLarge,
  NotUniquenessSet,
  NonDyadic,
  EmptyQSet,
  Conditioning,
  Numeric,
};

/// Base exception for everything the library reports. The kind decides the
/// CLI exit code: input problems map to 2, numeric problems to 3.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::Conditioning || kind_ == ErrorKind::Numeric;
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace graphcub
