#pragma once

#include "sklab/rational.hpp"

#include <cstdint>
#include <vector>

namespace sklab {

/// Ranks r1, r2 >= 1 and degrees d1, d2 of a triple (E1, E2, Phi).
struct TripleInvariants {
  std::int64_t r1 = 1;
  std::int64_t r2 = 1;
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;

  void validate() const;
};

/// Subtriple data: ranks r1', r2' and total degree d1' + d2'.
struct SubtripleData {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  std::int64_t dsum = 0;
  bool operator==(const SubtripleData&) const = default;
};

struct Wall {
  Rational tau;
  std::vector<SubtripleData> witnesses;  ///< sorted by (r1', r2', dsum')
};

struct WallReport {
  std::vector<Wall> walls;                    ///< candidate walls, ascending tau
  std::vector<SubtripleData> degenerations;   ///< proportional ranks with equal slope for every tau
};

/// (d1 + d2 + sigma r2) / (r1 + r2).
Rational sigma_slope(const TripleInvariants& t, const Rational& sigma);

/// sigma with sigma_slope(t, sigma) = tau.
Rational sigma_for_tau(const TripleInvariants& t, const Rational& tau);

enum class Verdict { Below, Equal, Above };

const char* to_string(Verdict v);

/// Compares the sigma-slope (dsum' + sigma r2') / (r1' + r2') of the
/// subtriple with tau, at the sigma corresponding to tau.
Verdict stability_verdict(const TripleInvariants& t, const SubtripleData& sub, const Rational& tau);

/// All tau in the open interval (tau_lo, tau_hi) at which some subtriple
/// with 0 <= r1' <= r1, 0 <= r2' <= r2, (r1', r2') not in {(0,0), (r1,r2)}
/// has slope tau, i.e. tau (r2' r1 - r1' r2) = r2' (d1 + d2) - r2 dsum'.
/// These are numerical candidates; realizability is not decided.
WallReport candidate_walls(const TripleInvariants& t, const Rational& tau_lo, const Rational& tau_hi);

} // namespace sklab
