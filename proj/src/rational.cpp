#include "wtap/rational.hpp"

#include "wtap/error.hpp"

#include <cctype>

namespace wtap {

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

bool parse_rational(std::string_view text, Rational& out) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) return false;
  std::string num_str(num);
  if (num_str[0] == '+') num_str.erase(0, 1);
  mpz_class p(num_str, 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') return false;
    q = mpz_class(std::string(den), 10);
    if (q == 0) return false;
  }
  out = Rational(p, q);
  out.canonicalize();
  return true;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_rational_short(const Rational& value) { return value.get_str(); }

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::MultiEdge: return "MultiEdge";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DisconnectedTree: return "DisconnectedTree";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::SelfLoopLink: return "SelfLoopLink";
    case ErrorCode::UnknownLink: return "UnknownLink";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::NotSplittable: return "NotSplittable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonUplinkPresent: return "NonUplinkPresent";
    case ErrorCode::Uncoverable: return "Uncoverable";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorCode::EventExplosion: return "EventExplosion";
    case ErrorCode::NoSmallCover: return "NoSmallCover";
    case ErrorCode::ZeroMassBase: return "ZeroMassBase";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::InvalidCorrelatedSet: return "InvalidCorrelatedSet";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::NotAncestorClosed: return "NotAncestorClosed";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SubtreeExplosion: return "SubtreeExplosion";
    case ErrorCode::InfeasibleLstar: return "InfeasibleLstar";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace wtap
