#include "namesound/error.hpp"

namespace namesound {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::NoEncodableContent: return "NoEncodableContent";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::SynthesisFailed: return "SynthesisFailed";
    case ErrorKind::DecodeError: return "DecodeError";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::EmptyClip: return "EmptyClip";
    case ErrorKind::ClipTooShort: return "ClipTooShort";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::EmptyIndex: return "EmptyIndex";
    case ErrorKind::MissingEmbedding: return "MissingEmbedding";
    case ErrorKind::MissingTruth: return "MissingTruth";
    case ErrorKind::EmptyTruth: return "EmptyTruth";
    case ErrorKind::EmptyRun: return "EmptyRun";
    case ErrorKind::TooFew: return "TooFew";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace namesound
