#pragma once

#include <stdexcept>
#include <string>

namespace rumornet {

// All contract violations surface as a subclass of Error. IoError is kept
// separate so the CLI can map it to a distinct exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MissingNodeError : Error {
  explicit MissingNodeError(const std::string& id)
      : Error("unknown user: " + id) {}
};

struct InvalidEdgeError : Error {
  using Error::Error;
};

struct MissingPostError : Error {
  explicit MissingPostError(const std::string& id)
      : Error("unknown post: " + id) {}
};

struct InputError : Error {
  using Error::Error;
};

struct EmptyInputError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct ProviderError : Error {
  ProviderError(const std::string& post_id, const std::string& msg)
      : Error("verifier failed for post " + post_id + ": " + msg),
        post_id(post_id) {}
  std::string post_id;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace rumornet
