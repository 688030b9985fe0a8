#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sklab {

using i64 = std::int64_t;

struct KVector {
  i64 r = 0;
  i64 d = 0;
  bool operator==(const KVector&) const = default;
};

/// Bundle(r, d) with r > 0 and gcd(r, d) = 1, or the skyscraper O_{x0}, at
/// homological shift k.
class DerivedObject {
public:
  enum class Kind { Bundle, Torsion };

  static DerivedObject bundle(i64 r, i64 d, i64 shift = 0);
  static DerivedObject torsion(i64 shift = 0);
  static DerivedObject structure_sheaf(i64 shift = 0) { return bundle(1, 0, shift); }

  Kind kind() const noexcept { return kind_; }
  i64 rank() const noexcept { return r_; }
  i64 degree() const noexcept { return d_; }
  i64 shift() const noexcept { return shift_; }

  /// (rank, degree); (0, 1) for the skyscraper.
  KVector kvector() const noexcept { return {r_, d_}; }
  /// (-1)^shift times kvector(): the class in K_0.
  KVector signed_kvector() const noexcept;

  std::string to_string() const;

  bool operator==(const DerivedObject&) const = default;

private:
  DerivedObject(Kind kind, i64 r, i64 d, i64 shift) : kind_(kind), r_(r), d_(d), shift_(shift) {}

  Kind kind_;
  i64 r_;
  i64 d_;
  i64 shift_;
};

enum class Letter : std::uint8_t { S, SInv, R, RInv };

Letter inverse(Letter l) noexcept;

/// Freely reduced word in S, R and their inverses. A word l1 l2 ... ln acts
/// as the composite l1 o l2 o ... o ln, so ln is applied first.
class GroupWord {
public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);

  /// Parses whitespace-separated tokens S, S-, R, R- (also S^-1, R^-1).
  static GroupWord parse(const std::string& text);
  static GroupWord power(Letter l, i64 n);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  GroupWord inverse() const;
  std::string to_string() const;

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  bool operator==(const GroupWord&) const = default;

private:
  std::vector<Letter> letters_;
};

/// Row-major integer 2x2 matrix acting on column vectors (r, d).
struct Mat2 {
  std::array<i64, 4> m{1, 0, 0, 1};

  static Mat2 of(Letter l);
  KVector apply(const KVector& v) const { return {m[0] * v.r + m[1] * v.d, m[2] * v.r + m[3] * v.d}; }
  i64 det() const { return m[0] * m[3] - m[1] * m[2]; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  bool operator==(const Mat2&) const = default;
};

DerivedObject act_letter(const DerivedObject& obj, Letter l);
DerivedObject act_word(const DerivedObject& obj, const GroupWord& w);
Mat2 word_matrix(const GroupWord& w);

/// Equality in the central extension: same matrix and same action on O_X[0]
/// and O_{x0}[0].
bool words_equal(const GroupWord& a, const GroupWord& b);

struct OrbitInvariant {
  i64 det = 0;
  i64 alpha = 0;  ///< in [0, |det|); 0 when |det| = 1
  bool operator==(const OrbitInvariant&) const = default;
};

OrbitInvariant orbit_invariants(const KVector& v1, const KVector& v2);

using KPair = std::pair<KVector, KVector>;

/// Word whose matrix maps src to dst componentwise. Throws InvalidArgument on
/// an invariant mismatch and SearchFailure if the reduced word is longer
/// than max_len.
GroupWord solve_transporter(const KPair& src, const KPair& dst, std::size_t max_len = 40);

struct TrSolution {
  GroupWord word;
  i64 r_prime = 0;
  DerivedObject image_of_structure_sheaf = DerivedObject::torsion();
};

/// Word sending Bundle(r, d, 0) to O_X[0]; O_X[0] then goes to a bundle of
/// class (r', d) with r r' = -1 mod d and 1 <= r' < d.
TrSolution solve_T_r(const DerivedObject& E, std::size_t max_len = 400);

/// Word sending Bundle(r, d, 0) to O_X[0]; O_X[0] then goes to a bundle of
/// class (r'', -d) (the dual of a class (r'', d) bundle) with r'' r = 1 mod d.
TrSolution solve_U_r(const DerivedObject& E, std::size_t max_len = 400);

/// (h^0, h^1) of a stable bundle of class v. The K-vector (1, 0) is read as
/// O_X unless structure_sheaf is false (a nontrivial degree-0 line bundle).
std::pair<i64, i64> hom_dims(const KVector& v, bool structure_sheaf = true);

} // namespace sklab
