#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace namesound {

/// Failure categories raised across the library. The CLI maps these onto
/// process exit codes (see cli::exit_code_for).
enum class ErrorKind {
  // corpus
  Empty,
  TooShort,
  IoError,
  EmptyCorpus,
  MalformedRow,
  // phonetics
  NoEncodableContent,
  // speech
  BackendUnavailable,
  SynthesisFailed,
  DecodeError,
  // embed
  InvalidRange,
  EmptyClip,
  ClipTooShort,
  // engine
  DimensionMismatch,
  DuplicateName,
  EmptyIndex,
  MissingEmbedding,
  // eval
  MissingTruth,
  EmptyTruth,
  EmptyRun,
  TooFew,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace namesound
