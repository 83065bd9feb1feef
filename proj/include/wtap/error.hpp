#pragma once

#include <stdexcept>
#include <string>

namespace wtap {

enum class ErrorCode {
  // core
  InvalidVertex,
  MultiEdge,
  CycleDetected,
  DisconnectedTree,
  NegativeCost,
  SelfLoopLink,
  UnknownLink,
  UnknownEdge,
  NotSplittable,
  // exact
  TooLarge,
  Infeasible,
  NonUplinkPresent,
  Uncoverable,
  // lp
  Unbounded,
  // classic_round
  SupportViolation,
  // structured
  CombinatorialBlowup,
  EventExplosion,
  NoSmallCover,
  ZeroMassBase,
  NotNested,
  InvalidCorrelatedSet,
  // cleanup
  GammaOutOfRange,
  NotAncestorClosed,
  NotApplicable,
  // strong
  SubtreeExplosion,
  InfeasibleLstar,
  // harness
  ParseError,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wtap
