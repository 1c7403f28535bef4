#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace typotex {

/// Root of every error raised by the library. Callers that only need a
/// message can catch this; the derived types carry the structured details.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// glyph geometry
class UnsupportedFont : public Error {
 public:
  using Error::Error;
};

class MissingGlyph : public Error {
 public:
  explicit MissingGlyph(char32_t codepoint)
      : Error("glyph missing for U+" + hex_codepoint(codepoint)), codepoint_(codepoint) {}

  char32_t codepoint() const noexcept { return codepoint_; }

 private:
  static std::string hex_codepoint(char32_t cp) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(cp));
    return buf;
  }

  char32_t codepoint_;
};

/// Malformed SVG path data. `offset` is the byte offset into the input where
/// the problem was detected and `token` the text found there.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::string token)
      : Error(what + " at offset " + std::to_string(offset) +
              (token.empty() ? std::string(" (end of input)") : " near '" + token + "'")),
        offset_(offset),
        token_(std::move(token)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t offset_;
  std::string token_;
};

/// Valid SVG path syntax the parser deliberately does not accept (arcs).
class UnsupportedCommand : public ParseError {
 public:
  using ParseError::ParseError;
};

class SvgError : public Error {
 public:
  using Error::Error;
};

// images
class DecodeError : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public Error {
 public:
  using Error::Error;
};

class DegenerateOutput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidColor : public Error {
 public:
  using Error::Error;
};

class InvalidScale : public Error {
 public:
  using Error::Error;
};

// providers
class EmptyConcept : public Error {
 public:
  EmptyConcept() : Error("semantic concept is empty") {}
};

class ProviderTimeout : public Error {
 public:
  using Error::Error;
};

/// The generation service answered with a non-2xx status. The response body
/// is kept verbatim for diagnostics.
class ProviderRejected : public Error {
 public:
  ProviderRejected(int status, std::string body)
      : Error("texture service rejected request with HTTP " + std::to_string(status)),
        status_(status),
        body_(std::move(body)) {}

  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  int status_;
  std::string body_;
};

/// A generation service could not be reached at all (DNS, refused
/// connection, TLS failure).
class ServiceUnavailable : public Error {
 public:
  using Error::Error;
};

class ReshapeTimeout : public Error {
 public:
  using Error::Error;
};

class ReshapeRejected : public Error {
 public:
  ReshapeRejected(int status, std::string body)
      : Error("reshape service rejected request with HTTP " + std::to_string(status)),
        status_(status),
        body_(std::move(body)) {}

  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  int status_;
  std::string body_;
};

class LayoutError : public Error {
 public:
  using Error::Error;
};

// pipeline
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id) : Error("unknown session '" + id + "'") {}
};

class NotYetGenerated : public Error {
 public:
  explicit NotYetGenerated(const std::string& id)
      : Error("session '" + id + "' has no composed image") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace typotex
