// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "oracles/orbit_bfs.hpp"
#include "oracles/wall_scan.hpp"
#include "sklab/error.hpp"
#include "sklab/invtensor.hpp"
#include "sklab/mukai.hpp"
#include "sklab/poisson.hpp"
#include "sklab/residue_s3.hpp"
#include "sklab/sklyanin.hpp"
#include "sklab/theta.hpp"
#include "sklab/walls.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sklab;

namespace {

const cplx kOmega(0.2, 1.3);
const std::uint64_t kSeed = 20240601;

// Pinned tolerances.
constexpr double kQuasiPeriodTol = 1e-10;
constexpr double kSymmetryTol = 1e-8;
constexpr double kGapRatioMin = 1e3;
constexpr double kIsoTol = 1e-8;
constexpr double kNegativeControlMin = 0.1;
constexpr double kRichardsonTol = 1e-6;
constexpr double kJacobiTol = 1e-6;
constexpr double kEquivarianceTol = 1e-6;

// Runtime limits in seconds.
constexpr double kThetaSeconds = 5;
constexpr double kSklyaninSeconds = 30;
constexpr double kPoissonSeconds = 60;
constexpr double kOrbitSeconds = 60;
constexpr double kS3Seconds = 5;
constexpr double kTensorSeconds = 10;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "; failed: ";
      else detail << ", ";
      detail << what;
      pass = false;
    }
  }
};

int inverse_mod(int r, int d) {
  for (int s = 0; s < d; ++s)
    if ((r * s) % d == 1 % d) return s;
  return -1;
}

std::vector<int> coprime_residues(int d) {
  std::vector<int> out;
  for (int r = 1; r < d; ++r)
    if (std::gcd(r, d) == 1) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------

void theta_functional_equations(Outcome& o) {
  const double pi = std::numbers::pi;
  const cplx I(0.0, 1.0);
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_1d = 0.0, worst_w = 0.0;
  bool zeros_ok = true;
  for (int d : {3, 5, 7, 9}) {
    const ThetaBasis basis(d, CurveModulus(kOmega));
    for (int s = 0; s < 100; ++s) {
      const cplx z = u(rng) + u(rng) * kOmega;
      double scale = 0.0;
      for (int m = 0; m < d; ++m) scale = std::max(scale, std::abs(theta_eval(basis, m, z)));
      const cplx mult_w = -std::exp(-pi * I * double(d) * kOmega - 2.0 * pi * I * double(d) * z);
      for (int m = 0; m < d; ++m) {
        const cplx t = theta_eval(basis, m, z);
        const cplx mult_1d = -std::exp(2.0 * pi * I * double(m) / double(d));
        worst_1d = std::max(worst_1d, std::abs(theta_eval(basis, m, z + 1.0 / d) - mult_1d * t) / scale);
        worst_w = std::max(worst_w, std::abs(theta_eval(basis, m, z + kOmega) - mult_w * t) / (std::abs(mult_w) * scale));
      }
    }
    for (int m = 0; m < d; ++m) zeros_ok &= theta_zero_count(basis, m) == d;
  }
  o.detail << "max residuals " << worst_1d << " (1/d), " << worst_w << " (omega)";
  o.require(worst_1d < kQuasiPeriodTol, "1/d quasi-periodicity");
  o.require(worst_w < kQuasiPeriodTol, "omega quasi-periodicity");
  o.require(zeros_ok, "zero count");
}

void theta_symmetry(Outcome& o) {
  std::mt19937_64 rng(kSeed + 1);
  double fit = 0.0, root = 0.0;
  for (int d : {3, 5, 7}) {
    const ThetaBasis basis(d, CurveModulus(kOmega));
    for (int s = 0; s < 20; ++s) {
      const cplx x = sample_generic_x(d, basis.modulus(), rng);
      const ThetaSymmetry sym = theta_symmetry_constants(basis, x, 1e-9, kSymmetryTol);
      fit = std::max(fit, sym.residual);
      root = std::max(root, sym.root_defect);
    }
  }
  o.detail << "fit " << fit << ", |b^d-1| " << root;
  o.require(fit < kSymmetryTol, "fit residual");
  o.require(root < kSymmetryTol, "root of unity");
}

void sklyanin_rank(Outcome& o) {
  std::mt19937_64 rng(kSeed + 2);
  const CurveModulus modulus(kOmega);
  double min_gap = INFINITY;
  int cells = 0, bad = 0;
  for (int d = 2; d <= 9; ++d)
    for (int r : coprime_residues(d)) {
      ++cells;
      for (int s = 0; s < 20; ++s) {
        const cplx x = sample_generic_x(d, modulus, rng);
        const Span span = relation_space(build_relations({d, r, x, modulus}));
        min_gap = std::min(min_gap, span.gap_ratio);
        if (span.rank != d * (d - 1) / 2) ++bad;
      }
    }
  o.detail << cells << " (d, r) cells x 20 points, min gap ratio " << min_gap;
  o.require(bad == 0, std::to_string(bad) + " rank mismatches");
  o.require(min_gap > kGapRatioMin, "gap ratio");
}

void sklyanin_isomorphism(Outcome& o) {
  std::mt19937_64 rng(kSeed + 3);
  const CurveModulus modulus(kOmega);
  struct Case { int d, r, rp; };
  double worst = 0.0;
  for (const Case c : {Case{5, 2, 3}, Case{7, 2, 4}, Case{7, 3, 5}, Case{8, 3, 3}, Case{9, 2, 5}})
    worst = std::max(worst, check_substitution_isomorphism(c.d, c.r, c.rp, sample_generic_x(c.d, modulus, rng), modulus));
  // r s = 2 or 3 mod d: neither 1 nor -1.
  double weakest_control = INFINITY;
  for (const Case c : {Case{5, 2, 1}, Case{7, 2, 1}, Case{8, 3, 1}, Case{9, 2, 1}})
    weakest_control = std::min(weakest_control,
                               substitution_distance(c.d, c.r, c.rp, sample_generic_x(c.d, modulus, rng), modulus));
  o.detail << "max distance " << worst << ", min negative-control distance " << weakest_control;
  o.require(worst < kIsoTol, "isomorphism distance");
  o.require(weakest_control > kNegativeControlMin, "negative control");
}

void poisson_axioms(Outcome& o) {
  const CurveModulus modulus(kOmega);
  double rich = 0.0, jac = 0.0, eq = 0.0;
  for (int d : {3, 4, 5}) {
    std::map<int, PoissonTensor> tensors;
    for (int r : coprime_residues(d)) {
      PoissonTensor t = extract_bracket(d, r, modulus);
      rich = std::max(rich, t.richardson_error);
      jac = std::max(jac, jacobi_check(t, 100, kSeed));
      tensors.emplace(r, std::move(t));
    }
    for (int r : coprime_residues(d)) {
      const int rp = inverse_mod(r, d);
      eq = std::max(eq, compare_up_to_scale(transport(tensors.at(r), rp), tensors.at(rp)).max_deviation);
    }
  }
  o.detail << "richardson " << rich << ", jacobi " << jac << ", equivariance " << eq;
  o.require(rich < kRichardsonTol, "richardson error");
  o.require(jac < kJacobiTol, "jacobi");
  o.require(eq < kEquivarianceTol, "equivariance");
}

DerivedObject random_object(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-9, 9), coin(0, 4);
  if (coin(rng) == 0) return DerivedObject::torsion(v(rng));
  for (;;) {
    const int r = 1 + std::abs(v(rng)), d = v(rng);
    if (std::gcd(r, d) == 1) return DerivedObject::bundle(r, d, v(rng));
  }
}

void central_extension(Outcome& o) {
  std::mt19937_64 rng(kSeed + 4);
  const GroupWord s2 = GroupWord::parse("S S"), s4 = GroupWord::parse("S S S S");
  o.require(words_equal(GroupWord::parse("R S R S R S"), s2), "(RS)^3 = S^2");
  int bad_shift = 0, bad_k = 0;
  for (int s = 0; s < 50; ++s) {
    const DerivedObject x = random_object(rng), y = act_word(x, s4);
    if (!(y.kvector() == x.kvector()) || y.shift() != x.shift() - 2) ++bad_shift;
  }
  std::uniform_int_distribution<int> len(0, 16), letter(0, 3);
  for (int s = 0; s < 500; ++s) {
    const DerivedObject x = random_object(rng);
    std::vector<Letter> ls;
    for (int k = len(rng); k > 0; --k) ls.push_back(static_cast<Letter>(letter(rng)));
    const GroupWord w(ls);
    if (!(act_word(x, w).signed_kvector() == word_matrix(w).apply(x.signed_kvector()))) ++bad_k;
  }
  o.detail << "S^4 failures " << bad_shift << "/50, K-vector failures " << bad_k << "/500";
  o.require(bad_shift == 0, "S^4 = [-2]");
  o.require(bad_k == 0, "K-vector compatibility");
}

void orbit_classification(Outcome& o) {
  std::vector<oracle::State> pairs;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int c = -5; c <= 5; ++c)
        for (int e = -5; e <= 5; ++e) {
          const int det = a * e - b * c;
          if (det != 0 && std::abs(det) <= 7 && std::gcd(a, b) == 1 && std::gcd(c, e) == 1) pairs.push_back({a, b, c, e});
        }
  oracle::OrbitBfs bfs(25);
  std::map<std::pair<i64, i64>, std::vector<std::size_t>> classes;
  std::vector<int> comp(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const OrbitInvariant inv = orbit_invariants({pairs[i][0], pairs[i][1]}, {pairs[i][2], pairs[i][3]});
    classes[{inv.det, inv.alpha}].push_back(i);
    comp[i] = bfs.component(pairs[i]);
  }
  // Invariants equal <=> same BFS component <=> a transporter exists.
  std::map<int, std::pair<i64, i64>> class_of_comp;
  int mismatches = 0, failed_transporters = 0, spurious = 0;
  long transporters = 0;
  for (const auto& [key, members] : classes)
    for (std::size_t i : members) {
      const auto [it, fresh] = class_of_comp.emplace(comp[i], key);
      if (!fresh && it->second != key) ++mismatches;
      if (comp[i] != comp[members.front()]) ++mismatches;
    }
  for (const auto& [key, members] : classes)
    for (std::size_t i : members)
      for (std::size_t j : members) {
        const KPair src{{pairs[i][0], pairs[i][1]}, {pairs[i][2], pairs[i][3]}};
        const KPair dst{{pairs[j][0], pairs[j][1]}, {pairs[j][2], pairs[j][3]}};
        try {
          const Mat2 m = word_matrix(solve_transporter(src, dst, 40));
          if (!(m.apply(src.first) == dst.first) || !(m.apply(src.second) == dst.second)) ++failed_transporters;
        } catch (const Error&) {
          ++failed_transporters;
        }
        ++transporters;
      }
  // One representative per class against every other class.
  for (const auto& [k1, m1] : classes)
    for (const auto& [k2, m2] : classes) {
      if (k1 == k2) continue;
      const auto& p = pairs[m1.front()];
      const auto& q = pairs[m2.front()];
      try {
        solve_transporter({{p[0], p[1]}, {p[2], p[3]}}, {{q[0], q[1]}, {q[2], q[3]}}, 40);
        ++spurious;
      } catch (const InvalidArgument&) {
      }
    }
  o.detail << pairs.size() << " pairs, " << classes.size() << " classes, " << transporters << " transporters";
  o.require(mismatches == 0, "invariants vs BFS components");
  o.require(failed_transporters == 0, "transporter within 40 letters");
  o.require(spurious == 0, "transporter across classes");
}

void congruence_solvers(Outcome& o) {
  int bad = 0, cases = 0;
  for (int d = 2; d <= 30; ++d)
    for (int r : coprime_residues(d)) {
      ++cases;
      const DerivedObject E = DerivedObject::bundle(r, d);
      const TrSolution t = solve_T_r(E), u = solve_U_r(E);
      if ((r * t.r_prime + 1) % d != 0 || (r * u.r_prime) % d != 1 % d) ++bad;
      if (!(act_word(E, t.word) == DerivedObject::structure_sheaf())) ++bad;
      if (!(act_word(E, u.word) == DerivedObject::structure_sheaf())) ++bad;
    }
  const int r7 = solve_T_r(DerivedObject::bundle(2, 7)).r_prime;
  o.detail << cases << " (r, d) pairs, d = 7, r = 2 gives r' = " << r7;
  o.require(bad == 0, std::to_string(bad) + " congruence failures");
  o.require(r7 == 3, "d = 7 instance");
}

void s3_action(Outcome& o) {
  int rel = 0, fix = 0;
  for (int d = 2; d <= 200; ++d) {
    if (!check_group_relations(d).ok) ++rel;
    const ResidueSet R = residue_set(d);
    const FixedPoints fp = fixed_points(d);
    std::vector<int> expect_phi;
    for (int r : R.members)
      if ((static_cast<long>(r) * r + r + 1) % d == 0) expect_phi.push_back(r);
    if (fp.phi_fixed != expect_phi) ++fix;
    if (d % 2 == 1) {
      const std::vector<int> expect = R.contains(d - 2) ? std::vector<int>{d - 2} : std::vector<int>{};
      if (fp.phibeta_fixed != expect) ++fix;
    }
  }
  o.detail << "relation failures " << rel << ", fixed-point mismatches " << fix << " over d <= 200";
  o.require(rel == 0, "group relations");
  o.require(fix == 0, "fixed points");
}

void walls(Outcome& o) {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_int_distribution<int> rank(1, 4), deg(-6, 6), lo(-4, 2), width(1, 4), shift(-3, 3);
  int oracle_mismatch = 0, shift_mismatch = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int r1 = rank(rng), r2 = rank(rng), d1 = deg(rng), d2 = deg(rng);
    const int a = lo(rng), b = a + width(rng), n = shift(rng);
    const WallReport rep = candidate_walls({r1, r2, d1, d2}, a, b);
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<oracle::Sub>> mine;
    for (const Wall& w : rep.walls) {
      std::vector<oracle::Sub> subs;
      for (const SubtripleData& s : w.witnesses)
        if (std::abs(s.dsum) <= 30) subs.emplace_back(int(s.r1), int(s.r2), int(s.dsum));
      if (!subs.empty()) mine[{w.tau.get_num().get_si(), w.tau.get_den().get_si()}] = subs;
    }
    if (mine != oracle::scan_walls(r1, r2, d1, d2, {a}, {b}, 30, 16)) ++oracle_mismatch;

    const WallReport moved = candidate_walls({r1, r2, d1 + r1 * n, d2 + r2 * n}, a + n, b + n);
    bool same = moved.walls.size() == rep.walls.size();
    for (std::size_t i = 0; same && i < rep.walls.size(); ++i) {
      same = moved.walls[i].tau == rep.walls[i].tau + n &&
             moved.walls[i].witnesses.size() == rep.walls[i].witnesses.size();
      for (std::size_t k = 0; same && k < rep.walls[i].witnesses.size(); ++k) {
        const SubtripleData& s = rep.walls[i].witnesses[k];
        same = moved.walls[i].witnesses[k] == SubtripleData{s.r1, s.r2, s.dsum + (s.r1 + s.r2) * n};
      }
    }
    if (!same) ++shift_mismatch;
  }
  o.detail << "oracle mismatches " << oracle_mismatch << "/50, shift mismatches " << shift_mismatch << "/50";
  o.require(oracle_mismatch == 0, "scan oracle");
  o.require(shift_mismatch == 0, "tensoring shift");
}

void tensor_conditions(Outcome& o) {
  bool gl = true;
  for (int r1 = 1; r1 <= 3; ++r1)
    for (int r2 = 1; r2 <= 3; ++r2) {
      const LieRepData rep = gl_pair_rep(r1, r2);
      const SymTensor t = gl_pair_tensor(r1, r2);
      gl &= check_invariance(rep, t) == 0.0 && t_star(rep, t).is_zero();
    }
  const std::size_t gsp = solve_admissible(gsp_rep(4)).size();
  const std::size_t sl2 = solve_admissible(sl2_rep()).size();
  const std::size_t sl2c = solve_admissible(augment_with_center(sl2_rep())).size();
  o.detail << "gsp4 dim " << gsp << ", sl2 dim " << sl2 << ", sl2 + center dim " << sl2c;
  o.require(gl, "GL t_* = 0");
  o.require(gsp == 1, "gsp4 dimension");
  o.require(sl2 == 0, "sl2 dimension");
  o.require(sl2c >= 1, "sl2 + center dimension");
}

struct Criterion {
  int id;
  const char* title;
  double seconds;  ///< 0 means no runtime limit
  std::function<void(Outcome&)> body;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "theta functional equations", kThetaSeconds, theta_functional_equations},
      {2, "theta symmetry constants", 0, theta_symmetry},
      {3, "relation-space rank", kSklyaninSeconds, sklyanin_rank},
      {4, "substitution isomorphism", 0, sklyanin_isomorphism},
      {5, "Poisson axioms", kPoissonSeconds, poisson_axioms},
      {6, "central-extension calculus", 0, central_extension},
      {7, "orbit classification", kOrbitSeconds, orbit_classification},
      {8, "congruence solvers", 0, congruence_solvers},
      {9, "S3 action", kS3Seconds, s3_action},
      {10, "walls", 0, walls},
      {11, "invariant-tensor conditions", kTensorSeconds, tensor_conditions},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds > 0) o.require(secs < c.seconds, "runtime limit " + std::to_string(int(c.seconds)) + " s");
    all &= o.pass;
    std::printf("%s  %2d  %-30s %6.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
