#include "sklab/residue_s3.hpp"

#include "sklab/error.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace sklab {

namespace {

int mod(long a, int m) {
  const long v = a % m;
  return static_cast<int>(v < 0 ? v + m : v);
}

int inverse_mod(int a, int m) {
  int r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const int q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw InvalidArgument(std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod(s0, m);
}

void require_d(int d) {
  if (d < 2) throw InvalidArgument("residue set needs d >= 2");
}

} // namespace

bool ResidueSet::contains(int r) const {
  if (d <= 0) return false;
  return std::binary_search(members.begin(), members.end(), ((r % d) + d) % d);
}

ResidueSet residue_set(int d) {
  require_d(d);
  ResidueSet out{d, {}};
  for (int r = 0; r < d; ++r)
    if (std::gcd(r, d) == 1 && std::gcd(r + 1, d) == 1) out.members.push_back(r);
  return out;
}

std::vector<S3Element> S3Element::all() {
  std::vector<S3Element> out;
  for (int e = 0; e < 2; ++e)
    for (int k = 0; k < 3; ++k) out.push_back({e, k});
  return out;
}

std::string S3Element::to_string() const {
  std::string out = e ? "beta" : "";
  if (k > 0) out += (out.empty() ? "" : " ") + std::string(k == 1 ? "phi" : "phi^2");
  return out.empty() ? "id" : out;
}

S3Element operator*(const S3Element& a, const S3Element& b) {
  // phi^k beta = beta phi^-k.
  if (b.e) return {(a.e + 1) % 2, mod(-a.k + b.k, 3)};
  return {a.e, (a.k + b.k) % 3};
}

int phi_map(int r, int d) { return mod(-inverse_mod(r + 1, d), d); }

int beta_map(int r, int d) { return inverse_mod(r, d); }

int apply(const S3Element& g, int r, int d) {
  require_d(d);
  const int x0 = mod(r, d);
  if (std::gcd(x0, d) != 1 || std::gcd(x0 + 1, d) != 1)
    throw InvalidArgument(std::to_string(r) + " is not in R_" + std::to_string(d));
  int x = x0;
  for (int i = 0; i < g.k; ++i) x = phi_map(x, d);
  if (g.e) x = beta_map(x, d);
  return x;
}

RelationCheck check_group_relations(int d) {
  const ResidueSet rs = residue_set(d);
  auto fail = [&](int r, const std::string& what) {
    return RelationCheck{false, what + " fails at r = " + std::to_string(r) + " mod " + std::to_string(d)};
  };
  for (int r : rs.members) {
    const int p = phi_map(r, d), b = beta_map(r, d);
    if (!rs.contains(p)) return fail(r, "phi-closure");
    if (!rs.contains(b)) return fail(r, "beta-closure");
    if (phi_map(phi_map(p, d), d) != r) return fail(r, "phi^3 = id");
    if (beta_map(b, d) != r) return fail(r, "beta^2 = id");
    const int pb = phi_map(b, d);
    if (phi_map(beta_map(pb, d), d) != r) return fail(r, "(phi beta)^2 = id");
  }
  return {};
}

FixedPoints fixed_points(int d) {
  const ResidueSet rs = residue_set(d);
  FixedPoints out;
  for (int r : rs.members) {
    if (mod(static_cast<long>(r) * r + r + 1, d) == 0) out.phi_fixed.push_back(r);
    if (phi_map(beta_map(r, d), d) == r) out.phibeta_fixed.push_back(r);
  }
  return out;
}

std::vector<std::vector<int>> orbit_report(int d) {
  const ResidueSet rs = residue_set(d);
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int r : rs.members) {
    if (seen[static_cast<std::size_t>(r)]) continue;
    std::vector<int> orbit;
    for (const S3Element& g : S3Element::all()) orbit.push_back(apply(g, r, d));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (int x : orbit) seen[static_cast<std::size_t>(x)] = true;
    out.push_back(std::move(orbit));
  }
  return out;
}

} // namespace sklab
