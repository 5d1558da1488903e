#pragma once

#include <stdexcept>
#include <string>

namespace hetmos {

// Root of every error the library throws. The CLI maps usage-class errors to
// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual bool usage_class() const { return false; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  bool usage_class() const override { return true; }
};

class FileError : public Error {
 public:
  using Error::Error;
  bool usage_class() const override { return true; }
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed input files; treated as usage errors by the CLI.
class ParseError : public Error {
 public:
  using Error::Error;
  bool usage_class() const override { return true; }
};

class VersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
  bool usage_class() const override { return true; }
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class TrainingDiverged : public Error {
 public:
  TrainingDiverged(int epoch, const std::string& what)
      : Error("training diverged at epoch " + std::to_string(epoch) + ": " + what), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

}  // namespace hetmos
