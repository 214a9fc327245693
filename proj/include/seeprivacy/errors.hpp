#pragma once

#include <stdexcept>
#include <string>

namespace seeprivacy {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The policy document has no text-bearing block (after parsing or filtering).
class MalformedDocument : public Error {
 public:
  using Error::Error;
};

// A remote port was configured but could not answer.
class PortUnavailable : public Error {
 public:
  PortUnavailable(std::string port, const std::string& reason)
      : Error(port + " unavailable: " + reason), port_(std::move(port)) {}

  const std::string& port() const noexcept { return port_; }

 private:
  std::string port_;
};

class ImageDecodeError : public Error {
 public:
  using Error::Error;
};

class ImageEncodeError : public Error {
 public:
  using Error::Error;
};

// A detected context has a data type with no entry in the segment map.
class MissingSegment : public Error {
 public:
  using Error::Error;
};

// A segment has no non-empty phrase after punctuation splitting.
class DegenerateSegment : public Error {
 public:
  using Error::Error;
};

class DatasetSchemaError : public Error {
 public:
  DatasetSchemaError(std::string file, std::string field, const std::string& what)
      : Error(file + (field.empty() ? "" : " [" + field + "]") + ": " + what),
        file_(std::move(file)),
        field_(std::move(field)) {}

  const std::string& file() const noexcept { return file_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string file_;
  std::string field_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class TaxonomyError : public Error {
 public:
  using Error::Error;
};

}  // namespace seeprivacy
