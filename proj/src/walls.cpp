#include "sklab/walls.hpp"

#include "sklab/error.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace sklab {

namespace {

mpz_class floor_q(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class ceil_q(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational q(std::int64_t v) { return Rational(static_cast<long>(v)); }

} // namespace

void TripleInvariants::validate() const {
  if (r1 < 1 || r2 < 1) throw InvalidArgument("triple ranks must satisfy r1 >= 1 and r2 >= 1");
}

Rational sigma_slope(const TripleInvariants& t, const Rational& sigma) {
  Rational out = (q(t.d1 + t.d2) + sigma * q(t.r2)) / q(t.r1 + t.r2);
  out.canonicalize();
  return out;
}

Rational sigma_for_tau(const TripleInvariants& t, const Rational& tau) {
  t.validate();
  Rational out = (tau * q(t.r1 + t.r2) - q(t.d1 + t.d2)) / q(t.r2);
  out.canonicalize();
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Below: return "below";
    case Verdict::Equal: return "equal";
    case Verdict::Above: return "above";
  }
  return "?";
}

Verdict stability_verdict(const TripleInvariants& t, const SubtripleData& sub, const Rational& tau) {
  if (sub.r1 + sub.r2 == 0) throw InvalidArgument("subtriple has r1' + r2' = 0");
  const Rational sigma = sigma_for_tau(t, tau);
  const Rational slope = (q(sub.dsum) + sigma * q(sub.r2)) / q(sub.r1 + sub.r2);
  const int c = cmp(slope, tau);
  return c < 0 ? Verdict::Below : (c == 0 ? Verdict::Equal : Verdict::Above);
}

WallReport candidate_walls(const TripleInvariants& t, const Rational& tau_lo, const Rational& tau_hi) {
  t.validate();
  if (!(tau_lo < tau_hi)) throw InvalidArgument("empty tau interval");
  const std::int64_t total = t.d1 + t.d2;
  std::map<Rational, std::vector<SubtripleData>> by_tau;
  WallReport out;

  for (std::int64_t a = 0; a <= t.r1; ++a) {
    for (std::int64_t b = 0; b <= t.r2; ++b) {
      if ((a == 0 && b == 0) || (a == t.r1 && b == t.r2)) continue;
      const std::int64_t D = b * t.r1 - a * t.r2;
      const std::int64_t num = b * total;  // tau D = num - r2 dsum'
      if (D == 0) {
        if (num % t.r2 == 0) out.degenerations.push_back({a, b, num / t.r2});
        continue;
      }
      // r2 dsum' = num - tau D, strictly between the values at the endpoints.
      Rational e1 = (q(num) - tau_lo * q(D)) / q(t.r2);
      Rational e2 = (q(num) - tau_hi * q(D)) / q(t.r2);
      e1.canonicalize();
      e2.canonicalize();
      if (e2 < e1) std::swap(e1, e2);
      const mpz_class first = floor_q(e1) + 1, last = ceil_q(e2) - 1;
      for (mpz_class x = first; x <= last; ++x) {
        const std::int64_t dsum = x.get_si();
        Rational tau = (q(num) - q(t.r2) * q(dsum)) / q(D);
        tau.canonicalize();
        by_tau[tau].push_back({a, b, dsum});
      }
    }
  }
  for (auto& [tau, witnesses] : by_tau) {
    std::sort(witnesses.begin(), witnesses.end(), [](const SubtripleData& x, const SubtripleData& y) {
      return std::tie(x.r1, x.r2, x.dsum) < std::tie(y.r1, y.r2, y.dsum);
    });
    out.walls.push_back({tau, std::move(witnesses)});
  }
  return out;
}

} // namespace sklab
