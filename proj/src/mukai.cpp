#include "sklab/mukai.hpp"

#include "sklab/error.hpp"

#include <cassert>
#include <numeric>
#include <sstream>
#include <tuple>

namespace sklab {

namespace {

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 mod(i64 a, i64 m) {
  const i64 v = a % m;
  return v < 0 ? v + m : v;
}

// Returns g = gcd(a, b) >= 0 with x a + y b = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const i64 q = floor_div(a, b);
    std::tie(a, b) = std::make_tuple(b, a - q * b);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

bool primitive(const KVector& v) { return std::gcd(v.r, v.d) == 1; }

} // namespace

DerivedObject DerivedObject::bundle(i64 r, i64 d, i64 shift) {
  if (r <= 0) throw InvalidArgument("bundle rank must be positive");
  if (std::gcd(r, d) != 1) throw InvalidArgument("bundle class (r, d) must be primitive");
  return DerivedObject(Kind::Bundle, r, d, shift);
}

DerivedObject DerivedObject::torsion(i64 shift) { return DerivedObject(Kind::Torsion, 0, 1, shift); }

KVector DerivedObject::signed_kvector() const noexcept {
  return (shift_ % 2 == 0) ? KVector{r_, d_} : KVector{-r_, -d_};
}

std::string DerivedObject::to_string() const {
  std::ostringstream os;
  if (kind_ == Kind::Torsion)
    os << "torsion:" << shift_;
  else
    os << "bundle:" << r_ << ',' << d_ << ',' << shift_;
  return os.str();
}

Letter inverse(Letter l) noexcept {
  switch (l) {
    case Letter::S: return Letter::SInv;
    case Letter::SInv: return Letter::S;
    case Letter::R: return Letter::RInv;
    case Letter::RInv: return Letter::R;
  }
  return l;
}

GroupWord::GroupWord(std::vector<Letter> letters) {
  for (Letter l : letters) {
    if (!letters_.empty() && letters_.back() == sklab::inverse(l))
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

GroupWord GroupWord::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<Letter> out;
  std::string tok;
  while (is >> tok) {
    if (tok == "S") out.push_back(Letter::S);
    else if (tok == "S-" || tok == "S^-1") out.push_back(Letter::SInv);
    else if (tok == "R") out.push_back(Letter::R);
    else if (tok == "R-" || tok == "R^-1") out.push_back(Letter::RInv);
    else throw InvalidArgument("unknown letter '" + tok + "' (expected S, S-, R, R-)");
  }
  return GroupWord(std::move(out));
}

GroupWord GroupWord::power(Letter l, i64 n) {
  const Letter use = n >= 0 ? l : sklab::inverse(l);
  return GroupWord(std::vector<Letter>(static_cast<std::size_t>(n >= 0 ? n : -n), use));
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = sklab::inverse(l);
  return GroupWord(std::move(out));
}

std::string GroupWord::to_string() const {
  std::string out;
  for (Letter l : letters_) {
    if (!out.empty()) out += ' ';
    switch (l) {
      case Letter::S: out += "S"; break;
      case Letter::SInv: out += "S-"; break;
      case Letter::R: out += "R"; break;
      case Letter::RInv: out += "R-"; break;
    }
  }
  return out;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  std::vector<Letter> all = a.letters_;
  all.insert(all.end(), b.letters_.begin(), b.letters_.end());
  return GroupWord(std::move(all));
}

Mat2 Mat2::of(Letter l) {
  switch (l) {
    case Letter::S: return {{0, 1, -1, 0}};
    case Letter::SInv: return {{0, -1, 1, 0}};
    case Letter::R: return {{1, 0, 1, 1}};
    case Letter::RInv: return {{1, 0, -1, 1}};
  }
  return {};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
           a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

DerivedObject act_letter(const DerivedObject& obj, Letter l) {
  using Kind = DerivedObject::Kind;
  const i64 k = obj.shift();
  switch (l) {
    case Letter::R:
    case Letter::RInv:
      if (obj.kind() == Kind::Torsion) return obj;
      return DerivedObject::bundle(obj.rank(), obj.degree() + (l == Letter::R ? obj.rank() : -obj.rank()), k);
    case Letter::S:
    case Letter::SInv: {
      // S^-1 = S o [1] on the tracked invariants, since S^2 acts as [-1].
      const i64 base = l == Letter::S ? k : k + 1;
      if (obj.kind() == Kind::Torsion) return DerivedObject::structure_sheaf(base);
      const i64 r = obj.rank(), d = obj.degree();
      if (d > 0) return DerivedObject::bundle(d, -r, base);
      if (d < 0) return DerivedObject::bundle(-d, r, base - 1);
      assert(r == 1);
      return DerivedObject::torsion(base - 1);
    }
  }
  return obj;
}

DerivedObject act_word(const DerivedObject& obj, const GroupWord& w) {
  DerivedObject out = obj;
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) out = act_letter(out, *it);
  return out;
}

Mat2 word_matrix(const GroupWord& w) {
  Mat2 out;
  for (Letter l : w.letters()) out = out * Mat2::of(l);
  return out;
}

bool words_equal(const GroupWord& a, const GroupWord& b) {
  if (!(word_matrix(a) == word_matrix(b))) return false;
  for (const DerivedObject& o : {DerivedObject::structure_sheaf(), DerivedObject::torsion()})
    if (!(act_word(o, a) == act_word(o, b))) return false;
  return true;
}

OrbitInvariant orbit_invariants(const KVector& v1, const KVector& v2) {
  if (!primitive(v1) || !primitive(v2)) throw InvalidArgument("orbit invariants need primitive vectors");
  const i64 det = v1.r * v2.d - v1.d * v2.r;
  if (det == 0) throw InvalidArgument("orbit invariants undefined: det(v1, v2) = 0");
  const i64 n = det < 0 ? -det : det;
  if (n == 1) return {det, 0};
  i64 p = 0, q = 0;
  ext_gcd(v2.r, v2.d, p, q);
  const i64 alpha = mod(mod(p, n) * mod(v1.r, n) + mod(q, n) * mod(v1.d, n), n);
  assert(mod(v1.r - alpha * v2.r, n) == 0 && mod(v1.d - alpha * v2.d, n) == 0);
  return {det, alpha};
}

namespace {

// Word g with matrix(g) sending the pair to ((alpha, -det), (1, 0)).
GroupWord canonicalize(KPair pair, const OrbitInvariant& inv) {
  GroupWord g;
  auto apply = [&](const GroupWord& w) {
    const Mat2 m = word_matrix(w);
    pair = {m.apply(pair.first), m.apply(pair.second)};
    g = w * g;
  };
  const GroupWord s(std::vector<Letter>{Letter::S});
  while (!(pair.second == KVector{1, 0})) {
    const KVector v = pair.second;
    if (v.r < 0) {
      apply(s * s);
    } else if (v.r == 0) {
      apply(s);
    } else {
      const i64 n = -floor_div(v.d, v.r);
      if (n != 0) apply(GroupWord::power(Letter::R, n));
      if (!(pair.second == KVector{1, 0})) apply(s);
    }
  }
  assert(pair.first.d == -inv.det);
  // U^t = S R^-t S^-1 = [[1, t], [0, 1]] fixes (1, 0) and moves (x, -det) to (x - t det, -det).
  const i64 t = (pair.first.r - inv.alpha) / inv.det;
  if (t != 0) apply(s * GroupWord::power(Letter::R, -t) * s.inverse());
  assert(pair.first == (KVector{inv.alpha, -inv.det}));
  return g;
}

} // namespace

GroupWord solve_transporter(const KPair& src, const KPair& dst, std::size_t max_len) {
  const OrbitInvariant a = orbit_invariants(src.first, src.second);
  const OrbitInvariant b = orbit_invariants(dst.first, dst.second);
  if (!(a == b)) throw InvalidArgument("pairs lie in different orbits (det or alpha differ)");
  const GroupWord w = canonicalize(dst, b).inverse() * canonicalize(src, a);
  const Mat2 m = word_matrix(w);
  if (!(m.apply(src.first) == dst.first && m.apply(src.second) == dst.second))
    throw VerificationFailure("transporter does not map src to dst");
  if (w.size() > max_len)
    throw SearchFailure("transporter word of length " + std::to_string(w.size()) + " exceeds max_len " +
                        std::to_string(max_len));
  return w;
}

namespace {

// Transporter for E -> O_X[0] and O_X -> target class; the central S^4 powers
// are then used to bring the shift of the image of E to 0.
GroupWord transport_bundle(const DerivedObject& E, const KVector& target, std::size_t max_len) {
  if (E.kind() != DerivedObject::Kind::Bundle || E.shift() != 0)
    throw InvalidArgument("expected a bundle at shift 0");
  GroupWord w = solve_transporter({E.kvector(), {1, 0}}, {{1, 0}, target}, max_len);
  const DerivedObject img = act_word(E, w);
  assert(img.kind() == DerivedObject::Kind::Bundle && img.shift() % 2 == 0);
  // S^4 acts as [-2].
  w = GroupWord::power(Letter::S, 2 * img.shift()) * w;
  if (w.size() > max_len) throw SearchFailure("normalized word exceeds max_len " + std::to_string(max_len));
  return w;
}

} // namespace

TrSolution solve_T_r(const DerivedObject& E, std::size_t max_len) {
  const i64 r = E.rank(), d = E.degree();
  if (d <= 1) throw InvalidArgument("solve_T_r needs degree d > 1");
  i64 inv = 0, unused = 0;
  ext_gcd(mod(r, d), d, inv, unused);
  const i64 r_prime = mod(-inv, d);
  TrSolution out;
  out.word = transport_bundle(E, {-r_prime, -d}, max_len);
  out.r_prime = r_prime;
  out.image_of_structure_sheaf = act_word(DerivedObject::structure_sheaf(), out.word);
  return out;
}

TrSolution solve_U_r(const DerivedObject& E, std::size_t max_len) {
  const i64 r = E.rank(), d = E.degree();
  if (d <= 1) throw InvalidArgument("solve_U_r needs degree d > 1");
  i64 inv = 0, unused = 0;
  ext_gcd(mod(r, d), d, inv, unused);
  const i64 r_pp = mod(inv, d);
  TrSolution out;
  out.word = transport_bundle(E, {r_pp, -d}, max_len);
  out.r_prime = r_pp;
  out.image_of_structure_sheaf = act_word(DerivedObject::structure_sheaf(), out.word);
  return out;
}

std::pair<i64, i64> hom_dims(const KVector& v, bool structure_sheaf) {
  if (v.r <= 0 || !primitive(v)) throw InvalidArgument("hom_dims needs a primitive class with positive rank");
  if (v.d > 0) return {v.d, 0};
  if (v.d < 0) return {0, -v.d};
  return structure_sheaf ? std::pair<i64, i64>{1, 1} : std::pair<i64, i64>{0, 0};
}

} // namespace sklab
