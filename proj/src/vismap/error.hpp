// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace vismap {

enum class ErrorKind { Config, Parse, Compute, Io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Malformed input file. `offset` is the byte offset (binary inputs) or the
/// 1-based line number (text inputs) where the problem was detected.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::optional<std::uint64_t> offset = std::nullopt)
      : Error(ErrorKind::Parse, what), offset_(offset) {}
  std::optional<std::uint64_t> offset() const noexcept { return offset_; }

 private:
  std::optional<std::uint64_t> offset_;
};

/// A computation precondition was violated (bad layout, obstructed waypoint, ...).
class ComputeError : public Error {
 public:
  explicit ComputeError(const std::string& what) : Error(ErrorKind::Compute, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace vismap
