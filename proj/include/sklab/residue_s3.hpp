#pragma once

#include <string>
#include <vector>

namespace sklab {

/// R_d = { r mod d : gcd(r, d) = gcd(r + 1, d) = 1 }, sorted.
struct ResidueSet {
  int d = 0;
  std::vector<int> members;

  /// Reduces r mod d first.
  bool contains(int r) const;
};

ResidueSet residue_set(int d);

/// Element beta^e phi^k of S3 = <phi, beta | phi^3, beta^2, (phi beta)^2>,
/// with e in {0, 1} and k in {0, 1, 2}. Acts on the left.
struct S3Element {
  int e = 0;
  int k = 0;

  static S3Element identity() { return {}; }
  static S3Element phi() { return {0, 1}; }
  static S3Element beta() { return {1, 0}; }

  static std::vector<S3Element> all();

  std::string to_string() const;

  friend S3Element operator*(const S3Element& a, const S3Element& b);
  bool operator==(const S3Element&) const = default;
};

/// phi(r) = -(r + 1)^{-1} mod d.
int phi_map(int r, int d);
/// beta(r) = r^{-1} mod d.
int beta_map(int r, int d);

/// Throws InvalidArgument when r is not in R_d.
int apply(const S3Element& g, int r, int d);

struct RelationCheck {
  bool ok = true;
  std::string counterexample;  ///< empty when ok
};

/// Pointwise phi^3 = beta^2 = (phi beta)^2 = id on R_d, and closure of R_d
/// under phi and beta, using the maps directly.
RelationCheck check_group_relations(int d);

struct FixedPoints {
  std::vector<int> phi_fixed;      ///< scan of r^2 + r + 1 = 0 mod d over R_d
  std::vector<int> phibeta_fixed;  ///< scan of phi(beta(r)) = r over R_d
};

FixedPoints fixed_points(int d);

/// S3-orbits on R_d, each sorted, ordered by smallest element.
std::vector<std::vector<int>> orbit_report(int d);

} // namespace sklab
