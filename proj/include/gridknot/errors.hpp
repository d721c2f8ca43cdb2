#pragma once

#include <stdexcept>
#include <string>

namespace gridknot {

enum class Errc {
  NotPermutation,
  SizeMismatch,
  ParseError,
  IndexOutOfRange,
  ObstructedCommutation,
  MalformedStabilization,
  NoDestabPattern,
  SaddleChangesCrossings,
  SaddleWrongConfiguration,
  NoCoincidentPair,
  TransferNotR2Pair,
  StepInvalid,
  LevelCountMismatch,
  NonPlanarWitness,
  OverlappingSupport,
  AmbiguousRetarget,
  SchemaError,
  NoMatch,
  ResultInvalid,
  NonGenericInput,
  BoxPlacementFailure,
  DegenerateHeights,
  NetTurnMismatch,
  EndpointMismatch,
  ObstructedByOtherArcs,
  InvalidMove,
};

const char* errc_name(Errc c);

class GridError : public std::runtime_error {
 public:
  GridError(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw GridError(code, message);
}

}  // namespace gridknot
