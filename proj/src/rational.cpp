#include "tropkit/rational.hpp"

#include <stdexcept>

#include "tropkit/error.hpp"

namespace tropkit {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Unbounded: return "Unbounded";
    case Errc::Empty: return "Empty";
    case Errc::BadDimension: return "BadDimension";
    case Errc::BadParams: return "BadParams";
    case Errc::NotGammaRational: return "NotGammaRational";
    case Errc::NotFaceClosed: return "NotFaceClosed";
    case Errc::BadPairwiseIntersection: return "BadPairwiseIntersection";
    case Errc::LatticeOverlap: return "LatticeOverlap";
    case Errc::CoverageGap: return "CoverageGap";
    case Errc::NotLatticeStable: return "NotLatticeStable";
    case Errc::NotCovered: return "NotCovered";
    case Errc::LatticeMismatch: return "LatticeMismatch";
    case Errc::InconsistentOnFaces: return "InconsistentOnFaces";
    case Errc::MissingData: return "MissingData";
    case Errc::LatticeNotPreserved: return "LatticeNotPreserved";
    case Errc::UnknownCell: return "UnknownCell";
    case Errc::CarrierMismatch: return "CarrierMismatch";
    case Errc::NonInjectivePiece: return "NonInjectivePiece";
    case Errc::TargetNotSubdivisional: return "TargetNotSubdivisional";
    case Errc::DomainNotCovered: return "DomainNotCovered";
    case Errc::NotExpressible: return "NotExpressible";
    case Errc::NotSubdivisional: return "NotSubdivisional";
    case Errc::DegenerateWeighted: return "DegenerateWeighted";
    case Errc::MissingWeight: return "MissingWeight";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::StabilizerNotTrivial: return "StabilizerNotTrivial";
    case Errc::NoMeasure: return "NoMeasure";
    case Errc::NotSimple: return "NotSimple";
    case Errc::NotDegenerateHere: return "NotDegenerateHere";
    case Errc::NotSimpleFactor: return "NotSimpleFactor";
    case Errc::Disconnected: return "Disconnected";
    case Errc::GenusMismatch: return "GenusMismatch";
    case Errc::InvalidSkeleton: return "InvalidSkeleton";
  }
  return "Unknown";
}

Int floor_int(const Rat& x) {
  Int q, r;
  boost::multiprecision::divide_qr(num(x), den(x), q, r);
  if (r < 0) q -= 1;
  return q;
}

Int ceil_int(const Rat& x) { return -floor_int(-x); }

Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int l = boost::multiprecision::lcm(den(a), den(b));
  Int na = num(a) * (l / den(a));
  Int nb = num(b) * (l / den(b));
  return Rat(boost::multiprecision::gcd(abs(na), abs(nb)), l);
}

namespace {

Int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  std::string body(s[0] == '+' ? s.substr(1) : s);
  return Int(body);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int p = parse_int(text.substr(0, slash));
  Int q = parse_int(text.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rat(p, q);
}

std::string to_string(const Rat& x) {
  if (is_integer(x)) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

}  // namespace tropkit
