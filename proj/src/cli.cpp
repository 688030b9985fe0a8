#include "sklab/cli.hpp"

#include "sklab/error.hpp"
#include "sklab/mukai.hpp"
#include "sklab/residue_s3.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace sklab {

void RunConfig::validate() const {
  if (!(omega.imag() > 0.0)) throw InvalidArgument("omega must have positive imaginary part");
  for (double v : {tail_eps, zero_tol, rank_tol, iso_tol, bracket_tol, h})
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("tolerances and h must be positive");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "table") return OutputFormat::Table;
  throw InvalidArgument("unknown output format '" + text + "' (expected json or table)");
}

RunConfig RunConfig::from_environment() {
  RunConfig cfg;
  if (const char* v = std::getenv("SKLAB_OMEGA")) cfg.omega = parse_complex(v);
  if (const char* v = std::getenv("SKLAB_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(v, &used);
      if (used != std::string(v).size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("malformed SKLAB_SEED '") + v + "'");
    }
  }
  if (const char* v = std::getenv("SKLAB_FORMAT")) cfg.format = parse_format(v);
  return cfg;
}

ResidualRow upper_bound_row(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

ResidualRow lower_bound_row(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value >= tolerance};
}

json residual_table(const std::vector<ResidualRow>& rows) {
  json out = json::array();
  for (const ResidualRow& r : rows)
    out.push_back({{"name", r.name}, {"value", r.value}, {"tolerance", r.tolerance}, {"pass", r.pass}});
  return out;
}

bool all_pass(const std::vector<ResidualRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ResidualRow& r) { return r.pass; });
}

namespace {

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string scalar_text(const json& j) {
  if (j.is_number_float()) return format_real(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? "," : "") + scalar_text(j[i]);
    return out + "]";
  }
  return j.dump();
}

bool is_residual_table(const json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const json& r) {
           return r.is_object() && r.contains("name") && r.contains("value") && r.contains("tolerance") &&
                  r.contains("pass");
         });
}

void write_table(std::ostream& os, const json& rows) {
  std::size_t width = 4;
  for (const json& r : rows) width = std::max(width, r["name"].get<std::string>().size());
  os << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(24) << "value" << "  "
     << std::setw(24) << "tolerance" << "  pass\n";
  for (const json& r : rows)
    os << std::left << std::setw(static_cast<int>(width)) << r["name"].get<std::string>() << "  " << std::setw(24)
       << scalar_text(r["value"]) << "  " << std::setw(24) << scalar_text(r["tolerance"]) << "  "
       << (r["pass"].get<bool>() ? "yes" : "NO") << '\n';
}

void write_flat(std::ostream& os, const json& j, const std::string& prefix) {
  if (is_residual_table(j)) {
    if (!prefix.empty()) os << prefix << ":\n";
    write_table(os, j);
    return;
  }
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      write_flat(os, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) write_flat(os, j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  os << (prefix.empty() ? "" : prefix + ": ") << scalar_text(j) << '\n';
}

} // namespace

std::string report(const json& results, OutputFormat format) {
  if (format == OutputFormat::Json) return results.dump(2) + "\n";
  std::ostringstream os;
  write_flat(os, results, "");
  return os.str();
}

// ---------------------------------------------------------------------------
// Invariant suites

namespace {

double theta_scale(const ThetaBasis& basis, cplx z) {
  double s = 0.0;
  for (int m = 0; m < basis.level(); ++m) s = std::max(s, std::abs(theta_eval(basis, m, z)));
  return s;
}

bool coprime_pair(int d, int r) { return std::gcd(r, d) == 1; }

std::vector<int> coprime_residues(int d) {
  if (d == 1) return {0};
  std::vector<int> out;
  for (int r = 1; r < d; ++r)
    if (coprime_pair(d, r)) out.push_back(r);
  return out;
}

int inverse_mod(int r, int d) {
  for (int s = 0; s < d; ++s)
    if ((static_cast<long>(r) * s) % d == 1 % d) return s;
  throw InvalidArgument(std::to_string(r) + " is not invertible mod " + std::to_string(d));
}

std::string cell(const std::string& base, int d, int r = -1) {
  std::string out = base + " d=" + std::to_string(d);
  if (r >= 0) out += " r=" + std::to_string(r);
  return out;
}

SklyaninTolerances sklyanin_tolerances(const RunConfig& cfg) {
  return {cfg.tail_eps, cfg.zero_tol, cfg.rank_tol, cfg.iso_tol};
}

PoissonOptions poisson_options(const RunConfig& cfg) {
  PoissonOptions o;
  o.h = cfg.h;
  o.bracket_tol = cfg.bracket_tol;
  o.rank_tol = cfg.rank_tol;
  o.zero_tol = cfg.zero_tol;
  o.tail_eps = cfg.tail_eps;
  return o;
}

} // namespace

std::vector<ResidualRow> theta_checks(int d, const RunConfig& cfg, int samples) {
  if (d < 1) throw InvalidArgument("theta level must be >= 1");
  const ThetaBasis basis(d, CurveModulus(cfg.omega), cfg.tail_eps);
  const cplx w = cfg.omega;
  const cplx I(0.0, 1.0);
  const double pi = std::numbers::pi;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  double per_1d = 0.0, per_w = 0.0, index = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cplx z = u(rng) + u(rng) * w;
    const double scale = theta_scale(basis, z);
    const cplx mult_w = -std::exp(-pi * I * static_cast<double>(d) * w - 2.0 * pi * I * static_cast<double>(d) * z);
    for (int m = 0; m < d; ++m) {
      const cplx t = theta_eval(basis, m, z);
      const cplx mult_1d = -std::exp(2.0 * pi * I * static_cast<double>(m) / static_cast<double>(d));
      per_1d = std::max(per_1d, std::abs(theta_eval(basis, m, z + 1.0 / d) - mult_1d * t) / scale);
      per_w = std::max(per_w, std::abs(theta_eval(basis, m, z + w) - mult_w * t) / (std::abs(mult_w) * scale));
      index = std::max(index, std::abs(theta_eval(basis, m + d, z) - t));
      index = std::max(index, std::abs(theta_eval(basis, m - d, z) - t));
    }
  }

  double truncation = 0.0;
  for (int s = 0; s < std::max(1, samples / 10); ++s) {
    const cplx z = 0.5 * (u(rng) + 1.0) + 0.5 * (u(rng) + 1.0) * w;
    const double scale = theta_scale(basis, z);
    for (int m = 0; m < d; ++m) {
      const int hw = theta_series(basis, m, z).terms / 2 + 1;
      truncation = std::max(truncation, std::abs(theta_series_direct(basis, m, z, 2 * hw) -
                                                 theta_series_direct(basis, m, z, hw)) / scale);
    }
  }

  std::vector<ResidualRow> rows;
  rows.push_back(upper_bound_row(cell("theta.quasi_period_1/d", d), per_1d, 1e-10));
  rows.push_back(upper_bound_row(cell("theta.quasi_period_omega", d), per_w, 1e-10));
  rows.push_back(upper_bound_row(cell("theta.index_periodicity", d), index, 0.0));
  rows.push_back(upper_bound_row(cell("theta.truncation_doubling", d), truncation, cfg.tail_eps));

  double zero_defect = 0.0;
  for (int m = 0; m < d; ++m)
    zero_defect = std::max(zero_defect, std::abs(static_cast<double>(theta_zero_count(basis, m) - d)));
  rows.push_back(upper_bound_row(cell("theta.zero_count_defect", d), zero_defect, 0.0));

  if (d >= 2) {
    double fit = 0.0, root = 0.0;
    for (int s = 0; s < 5; ++s) {
      const cplx x = sample_generic_x(d, basis.modulus(), rng, sklyanin_tolerances(cfg));
      const ThetaSymmetry sym = theta_symmetry_constants(basis, x, cfg.zero_tol, 1e-8);
      fit = std::max(fit, sym.residual);
      root = std::max(root, sym.root_defect);
    }
    rows.push_back(upper_bound_row(cell("theta.symmetry_fit", d), fit, 1e-8));
    rows.push_back(upper_bound_row(cell("theta.symmetry_b^d-1", d), root, 1e-8));
  }
  return rows;
}

namespace {

std::vector<ResidualRow> sklyanin_checks(int dmax, const RunConfig& cfg, std::mt19937_64& rng) {
  std::vector<ResidualRow> rows;
  const CurveModulus modulus(cfg.omega);
  const SklyaninTolerances tol = sklyanin_tolerances(cfg);
  for (int d = 2; d <= dmax; ++d) {
    for (int r : coprime_residues(d)) {
      double rank_defect = 0.0, gap = INFINITY, iso = 0.0;
      for (int s = 0; s < 3; ++s) {
        const cplx x = sample_generic_x(d, modulus, rng, tol);
        const Span span = relation_space(build_relations({d, r, x, modulus}, tol), cfg.rank_tol);
        rank_defect = std::max(rank_defect, std::abs(static_cast<double>(span.rank - d * (d - 1) / 2)));
        gap = std::min(gap, span.gap_ratio);
        iso = std::max(iso, check_substitution_isomorphism(d, r, inverse_mod(r, d), x, modulus, tol));
      }
      rows.push_back(upper_bound_row(cell("sklyanin.rank_defect", d, r), rank_defect, 0.0));
      rows.push_back(lower_bound_row(cell("sklyanin.gap_ratio", d, r), gap, 1e3));
      rows.push_back(upper_bound_row(cell("sklyanin.iso_distance", d, r), iso, cfg.iso_tol));
    }
  }
  return rows;
}

std::vector<ResidualRow> poisson_checks(int dmax, const RunConfig& cfg) {
  std::vector<ResidualRow> rows;
  const CurveModulus modulus(cfg.omega);
  for (int d = 3; d <= std::min(dmax, 5); ++d) {
    std::vector<PoissonTensor> tensors(static_cast<std::size_t>(d));
    for (int r : coprime_residues(d)) {
      PoissonTensor t = extract_bracket(d, r, modulus, poisson_options(cfg));
      rows.push_back(upper_bound_row(cell("poisson.richardson_error", d, r), t.richardson_error, cfg.bracket_tol));
      rows.push_back(upper_bound_row(cell("poisson.jacobi", d, r), jacobi_check(t, 100, cfg.seed), 1e-6));
      rows.push_back(upper_bound_row(cell("poisson.skew", d, r), skew_check(t), 0.0));
      tensors[static_cast<std::size_t>(r)] = std::move(t);
    }
    for (int r : coprime_residues(d)) {
      const int rp = inverse_mod(r, d);
      const ScaleFit fit = compare_up_to_scale(transport(tensors[static_cast<std::size_t>(r)], rp),
                                               tensors[static_cast<std::size_t>(rp)]);
      rows.push_back(upper_bound_row(cell("poisson.equivariance", d, r), fit.max_deviation, 1e-6));
    }
  }
  return rows;
}

std::vector<ResidualRow> mukai_checks(std::mt19937_64& rng) {
  std::vector<ResidualRow> rows;
  const GroupWord rs3 = GroupWord::parse("R S R S R S"), s2 = GroupWord::parse("S S"), s4 = GroupWord::parse("S S S S");
  rows.push_back(upper_bound_row("mukai.(RS)^3=S^2", words_equal(rs3, s2) ? 0.0 : 1.0, 0.0));

  std::uniform_int_distribution<int> small(-6, 6), letter(0, 3), len(0, 12);
  auto random_object = [&]() {
    if (letter(rng) == 0) return DerivedObject::torsion(small(rng));
    for (;;) {
      const int r = 1 + std::abs(small(rng)), d = small(rng);
      if (std::gcd(r, d) == 1) return DerivedObject::bundle(r, d, small(rng));
    }
  };
  double shift = 0.0, kvec = 0.0, relation = 0.0;
  for (int s = 0; s < 100; ++s) {
    const DerivedObject o = random_object();
    const DerivedObject o4 = act_word(o, s4);
    if (!(o4.kvector() == o.kvector()) || o4.shift() != o.shift() - 2) shift = 1.0;
    if (!(act_word(o, rs3) == act_word(o, s2))) relation = 1.0;
    std::vector<Letter> ls;
    for (int k = len(rng); k > 0; --k) ls.push_back(static_cast<Letter>(letter(rng)));
    const GroupWord w(ls);
    const KVector expect = word_matrix(w).apply(o.signed_kvector());
    if (!(act_word(o, w).signed_kvector() == expect)) kvec = 1.0;
  }
  rows.push_back(upper_bound_row("mukai.S^4=[-2]", shift, 0.0));
  rows.push_back(upper_bound_row("mukai.(RS)^3~S^2_on_objects", relation, 0.0));
  rows.push_back(upper_bound_row("mukai.kvector_compatibility", kvec, 0.0));

  double cong = 0.0;
  for (int d = 2; d <= 30; ++d)
    for (int r = 1; r < d; ++r) {
      if (std::gcd(r, d) != 1) continue;
      const DerivedObject E = DerivedObject::bundle(r, d);
      const TrSolution t = solve_T_r(E);
      const TrSolution u = solve_U_r(E);
      if ((r * t.r_prime + 1) % d != 0 || (r * u.r_prime) % d != 1) cong = 1.0;
      if (!(act_word(E, t.word) == DerivedObject::structure_sheaf()) ||
          !(act_word(E, u.word) == DerivedObject::structure_sheaf()))
        cong = 1.0;
      if (!(t.image_of_structure_sheaf == DerivedObject::bundle(t.r_prime, d, -1))) cong = 1.0;
    }
  rows.push_back(upper_bound_row("mukai.congruence_solvers_d<=30", cong, 0.0));
  return rows;
}

std::vector<ResidualRow> s3_checks(int dmax) {
  double rel = 0.0, fixed = 0.0;
  for (int d = 2; d <= dmax; ++d) {
    if (!check_group_relations(d).ok) rel = 1.0;
    const FixedPoints fp = fixed_points(d);
    for (int r : fp.phi_fixed)
      if ((static_cast<long>(r) * r + r + 1) % d != 0) fixed = 1.0;
    if (d % 2 == 1 && residue_set(d).contains(d - 2) && fp.phibeta_fixed != std::vector<int>{d - 2}) fixed = 1.0;
  }
  return {upper_bound_row("s3.relations_d<=" + std::to_string(dmax), rel, 0.0),
          upper_bound_row("s3.fixed_points_d<=" + std::to_string(dmax), fixed, 0.0)};
}

std::vector<ResidualRow> walls_checks(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank(1, 4), deg(-6, 6), shift(-3, 3);
  double eq = 0.0, inv = 0.0;
  for (int s = 0; s < 20; ++s) {
    const TripleInvariants t{rank(rng), rank(rng), deg(rng), deg(rng)};
    const Rational lo(-3), hi(5);
    const WallReport rep = candidate_walls(t, lo, hi);
    for (const Wall& w : rep.walls)
      for (const SubtripleData& sub : w.witnesses)
        if (stability_verdict(t, sub, w.tau) != Verdict::Equal) eq = 1.0;
    const int n = shift(rng);
    const TripleInvariants ts{t.r1, t.r2, t.d1 + t.r1 * n, t.d2 + t.r2 * n};
    const WallReport moved = candidate_walls(ts, lo + n, hi + n);
    if (moved.walls.size() != rep.walls.size()) inv = 1.0;
    for (std::size_t i = 0; i < std::min(moved.walls.size(), rep.walls.size()); ++i)
      if (moved.walls[i].tau != rep.walls[i].tau + n) inv = 1.0;
  }
  return {upper_bound_row("walls.witness_equations", eq, 0.0), upper_bound_row("walls.tensoring_shift", inv, 0.0)};
}

std::vector<ResidualRow> tensor_checks() {
  std::vector<ResidualRow> rows;
  double gl = 0.0;
  for (int r1 = 1; r1 <= 2; ++r1)
    for (int r2 = 1; r2 <= 2; ++r2) {
      const LieRepData rep = gl_pair_rep(r1, r2);
      const SymTensor t = gl_pair_tensor(r1, r2);
      if (check_invariance(rep, t) != 0.0 || !t_star(rep, t).is_zero()) gl = 1.0;
    }
  rows.push_back(upper_bound_row("tensor.gl_pair_t*=0", gl, 0.0));
  rows.push_back(upper_bound_row("tensor.gsp4_admissible_dim-1",
                                 std::abs(static_cast<double>(solve_admissible(gsp_rep(4)).size()) - 1.0), 0.0));
  const std::size_t plain = solve_admissible(sl2_rep()).size();
  const std::size_t centered = solve_admissible(augment_with_center(sl2_rep())).size();
  rows.push_back(upper_bound_row("tensor.sl2_admissible_dim", static_cast<double>(plain), 0.0));
  rows.push_back(lower_bound_row("tensor.sl2+center_admissible_dim", static_cast<double>(centered), 1.0));
  return rows;
}

} // namespace

std::vector<ResidualRow> check_all(int dmax, const RunConfig& cfg) {
  if (dmax < 2) throw InvalidArgument("check --all needs dmax >= 2");
  std::mt19937_64 rng(cfg.seed);
  std::vector<ResidualRow> rows;
  auto append = [&](std::vector<ResidualRow> more) { rows.insert(rows.end(), more.begin(), more.end()); };
  for (int d = 1; d <= std::min(dmax, 9); ++d) append(theta_checks(d, cfg, 20));
  append(sklyanin_checks(dmax, cfg, rng));
  append(poisson_checks(dmax, cfg));
  append(mukai_checks(rng));
  append(s3_checks(200));
  append(walls_checks(rng));
  append(tensor_checks());
  return rows;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Verification {
  json result;
  bool pass = true;
};

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json object_json(const DerivedObject& o) {
  json cls;
  if (o.kind() == DerivedObject::Kind::Torsion)
    cls = {{"kind", "torsion"}, {"rank", 0}, {"degree", 1}};
  else
    cls = {{"kind", "bundle"}, {"rank", o.rank()}, {"degree", o.degree()}};
  return {{"class", cls}, {"shift", o.shift()}};
}

DerivedObject parse_object(const std::string& text) {
  const auto bad = [&] { return InvalidArgument("malformed object '" + text + "' (expected bundle:R,D,K or torsion:K)"); };
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw bad();
  const std::string kind = text.substr(0, colon);
  std::vector<long long> nums;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stoll(item, &used));
      if (used != item.size()) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  if (kind == "bundle" && nums.size() == 3) return DerivedObject::bundle(nums[0], nums[1], nums[2]);
  if (kind == "torsion" && nums.size() == 1) return DerivedObject::torsion(nums[0]);
  throw bad();
}

KVector parse_kvector(const std::string& text) {
  const std::size_t comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t u1 = 0, u2 = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    KVector v{std::stoll(a, &u1), std::stoll(b, &u2)};
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidArgument("malformed vector '" + text + "' (expected R,D)");
  }
}

std::string strip_file_prefix(const std::string& s) { return s.rfind("file:", 0) == 0 ? s.substr(5) : s; }

struct TensorCase {
  std::string label;
  LieRepData rep;
  bool has_default = false;
  SymTensor default_t;
};

TensorCase parse_case(const std::string& text, int centers) {
  TensorCase c;
  c.label = text;
  if (text.rfind("gl:", 0) == 0) {
    const KVector v = parse_kvector(text.substr(3));
    if (v.r < 1 || v.d < 1 || v.r > 6 || v.d > 6) throw InvalidArgument("gl case needs 1 <= R1, R2 <= 6");
    c.rep = gl_pair_rep(static_cast<int>(v.r), static_cast<int>(v.d));
    c.default_t = gl_pair_tensor(static_cast<int>(v.r), static_cast<int>(v.d));
    c.has_default = true;
  } else if (text.rfind("gsp:", 0) == 0) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(text.substr(4), &used);
      if (used != text.size() - 4) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed gsp case '" + text + "'");
    }
    if (n > 8) throw InvalidArgument("gsp case limited to size <= 8");
    c.rep = gsp_rep(n);
  } else if (text == "sl2") {
    c.rep = sl2_rep();
    c.default_t = sl2_casimir();
    c.has_default = true;
  } else if (text.rfind("file:", 0) == 0) {
    c.rep = rep_from_json(read_json_file(text.substr(5)));
    c.rep.validate();
  } else {
    throw InvalidArgument("unknown tensor case '" + text + "' (expected gl:R1,R2, gsp:2R, sl2 or file:PATH)");
  }
  for (int k = 0; k < centers; ++k) {
    c.rep = augment_with_center(c.rep);
    if (c.has_default) {
      SymTensor padded(c.rep.dim_g, c.rep.dim_g);
      for (int i = 0; i < c.default_t.rows(); ++i)
        for (int j = 0; j < c.default_t.cols(); ++j) padded(i, j) = c.default_t(i, j);
      c.default_t = padded;
    }
  }
  return c;
}

json scalar_or_null(const QMatrix& m) {
  if (m.rows() == 0) return nullptr;
  const Rational lambda = m(0, 0);
  if (!(m == lambda * QMatrix::identity(m.rows()))) return nullptr;
  return to_string(lambda);
}

int exit_code(bool pass) { return pass ? 0 : 1; }

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = RunConfig::from_environment();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Sklyanin algebras, theta functions and related invariants", "sklab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", "sklab 0.1.0");

  std::string omega_text = format_real(cfg.omega.real()) + "," + format_real(cfg.omega.imag());
  std::string format_text = cfg.format == OutputFormat::Json ? "json" : "table";
  app.add_option("--omega", omega_text, "lattice modulus RE,IM (env SKLAB_OMEGA)");
  app.add_option("--seed", cfg.seed, "random seed (env SKLAB_SEED)");
  app.add_option("--format", format_text, "json or table (env SKLAB_FORMAT)");
  app.add_option("--tail-eps", cfg.tail_eps, "theta series truncation tolerance");
  app.add_option("--zero-tol", cfg.zero_tol, "relative threshold for vanishing theta values");
  app.add_option("--rank-tol", cfg.rank_tol, "relative singular-value cut for ranks");
  app.add_option("--iso-tol", cfg.iso_tol, "subspace distance accepted as an isomorphism");
  app.add_option("--bracket-tol", cfg.bracket_tol, "resolution of the extracted bracket");
  app.add_option("--h", cfg.h, "extraction step along x = h u");

  int d = 0, m = 0, r = 0, rprime = 0, trials = 100, dmax = 7, centers = 0;
  std::string z_text, x_text, dump_path, in_path, object_text, word_text, v1_text, v2_text, case_text, t_path;
  std::string lo_text, hi_text;
  long long r1 = 1, r2 = 1, d1 = 0, d2 = 0;
  bool all_flag = false;

  auto* theta = app.add_subcommand("theta", "theta functions of level d");
  theta->require_subcommand(1);
  auto* theta_eval_cmd = theta->add_subcommand("eval", "evaluate theta_m(z)");
  theta_eval_cmd->add_option("--d", d, "level")->required();
  theta_eval_cmd->add_option("--m", m, "index")->required();
  theta_eval_cmd->add_option("--z", z_text, "point RE,IM")->required();
  auto* theta_check_cmd = theta->add_subcommand("check", "run the theta invariants");
  theta_check_cmd->add_option("--d", d, "level")->required();

  auto* skl = app.add_subcommand("sklyanin", "relations of Q_{d,r}(x)");
  skl->require_subcommand(1);
  auto* skl_rel = skl->add_subcommand("relations", "build the relations and their rank");
  skl_rel->add_option("--d", d, "number of generators")->required();
  skl_rel->add_option("--r", r, "residue r")->required();
  skl_rel->add_option("--x", x_text, "point RE,IM (sampled from the seed when omitted)");
  skl_rel->add_option("--dump", dump_path, "write the coefficients as JSON");
  auto* skl_iso = skl->add_subcommand("check-iso", "check Q_{d,r}(x) = Q_{d,r'}(x) under t_i -> t_{r'i}");
  skl_iso->add_option("--d", d, "number of generators")->required();
  skl_iso->add_option("--r", r, "residue r")->required();
  skl_iso->add_option("--rprime", rprime, "residue r' with r r' = 1 mod d")->required();
  skl_iso->add_option("--x", x_text, "point RE,IM (sampled from the seed when omitted)");

  auto* poi = app.add_subcommand("poisson", "classical limit bracket");
  poi->require_subcommand(1);
  auto* poi_ext = poi->add_subcommand("extract", "extract the bracket at x = 0");
  poi_ext->add_option("--d", d, "number of generators")->required();
  poi_ext->add_option("--r", r, "residue r")->required();
  poi_ext->add_option("--dump", dump_path, "write the tensor as JSON");
  auto* poi_jac = poi->add_subcommand("jacobi", "Jacobi residual of a stored bracket");
  poi_jac->add_option("--in", in_path, "pi.json")->required();
  poi_jac->add_option("--trials", trials, "number of random points");

  auto* muk = app.add_subcommand("mukai", "central extension of SL2(Z) on (rank, degree, shift)");
  muk->require_subcommand(1);
  auto* muk_act = muk->add_subcommand("act", "apply a word to an object");
  muk_act->add_option("--object", object_text, "bundle:R,D,K or torsion:K")->required();
  muk_act->add_option("--word", word_text, "letters S, S-, R, R-; the rightmost acts first")->required();
  auto* muk_inv = muk->add_subcommand("invariants", "det and alpha of a pair");
  muk_inv->add_option("--v1", v1_text, "R,D")->required();
  muk_inv->add_option("--v2", v2_text, "R,D")->required();
  auto* muk_tr = muk->add_subcommand("solve-tr", "element sending Bundle(r,d) to O_X, O_X to E'[-1]");
  muk_tr->add_option("--r", r1, "rank")->required();
  muk_tr->add_option("--d", d1, "degree")->required();
  auto* muk_ur = muk->add_subcommand("solve-ur", "element sending Bundle(r,d) to O_X, O_X to a dual bundle");
  muk_ur->add_option("--r", r1, "rank")->required();
  muk_ur->add_option("--d", d1, "degree")->required();

  auto* s3 = app.add_subcommand("s3", "S3 action on R_d");
  s3->require_subcommand(1);
  auto* s3_orb = s3->add_subcommand("orbits", "orbits on R_d");
  s3_orb->add_option("--d", d, "modulus")->required();
  auto* s3_fix = s3->add_subcommand("fixed", "fixed points of phi and phi beta");
  s3_fix->add_option("--d", d, "modulus")->required();
  auto* s3_chk = s3->add_subcommand("check", "group relations for all d <= dmax");
  s3_chk->add_option("--dmax", dmax, "largest modulus")->default_val(200);

  auto* wal = app.add_subcommand("walls", "candidate walls of a triple");
  wal->add_option("--r1", r1, "rank of E1")->required();
  wal->add_option("--r2", r2, "rank of E2")->required();
  wal->add_option("--d1", d1, "degree of E1")->required();
  wal->add_option("--d2", d2, "degree of E2")->required();
  wal->add_option("--lo", lo_text, "lower end of the tau interval, P/Q")->required();
  wal->add_option("--hi", hi_text, "upper end of the tau interval, P/Q")->required();

  auto* ten = app.add_subcommand("tensor", "invariant tensors and t_*");
  ten->require_subcommand(1);
  auto* ten_chk = ten->add_subcommand("check", "invariance and t_* of a tensor");
  ten_chk->add_option("--case", case_text, "gl:R1,R2 | gsp:2R | sl2 | file:rep.json")->required();
  ten_chk->add_option("--t", t_path, "file:t.json (required for gsp and file cases)");
  ten_chk->add_option("--center", centers, "number of central elements to append");
  auto* ten_sol = ten->add_subcommand("solve", "basis of admissible tensors");
  ten_sol->add_option("--case", case_text, "gl:R1,R2 | gsp:2R | sl2 | file:rep.json")->required();
  ten_sol->add_option("--center", centers, "number of central elements to append");

  auto* chk = app.add_subcommand("check", "verification sweep");
  chk->add_flag("--all", all_flag, "run every module's invariant suite")->required();
  chk->add_option("--dmax", dmax, "largest level")->default_val(7);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.omega = parse_complex(omega_text);
    cfg.format = parse_format(format_text);
    cfg.validate();
    const CurveModulus modulus(cfg.omega);
    const SklyaninTolerances stol = sklyanin_tolerances(cfg);
    std::mt19937_64 rng(cfg.seed);
    auto pick_x = [&](int level) { return x_text.empty() ? sample_generic_x(level, modulus, rng, stol) : parse_complex(x_text); };
    auto emit = [&](const json& j) { out << report(j, cfg.format); };

    if (theta_eval_cmd->parsed()) {
      const ThetaBasis basis(d, modulus, cfg.tail_eps);
      const cplx z = parse_complex(z_text);
      const cplx v = theta_eval(basis, m, z);
      const double pi = std::numbers::pi;
      const cplx I(0.0, 1.0);
      const double scale = theta_scale(basis, z);
      const cplx mw = -std::exp(-pi * I * static_cast<double>(d) * cfg.omega - 2.0 * pi * I * static_cast<double>(d) * z);
      const cplx m1 = -std::exp(2.0 * pi * I * static_cast<double>(m) / static_cast<double>(d));
      const std::vector<ResidualRow> rows = {
          upper_bound_row("quasi_period_1/d", std::abs(theta_eval(basis, m, z + 1.0 / d) - m1 * v) / scale, 1e-10),
          upper_bound_row("quasi_period_omega",
                          std::abs(theta_eval(basis, m, z + cfg.omega) - mw * v) / (std::abs(mw) * scale), 1e-10)};
      emit({{"d", d}, {"m", m}, {"omega", cplx_json(cfg.omega)}, {"z", cplx_json(z)},
            {"value_re", v.real()}, {"value_im", v.imag()}, {"residuals", residual_table(rows)}});
      return 0;
    }
    if (theta_check_cmd->parsed()) {
      const auto rows = theta_checks(d, cfg);
      emit({{"d", d}, {"residuals", residual_table(rows)}});
      return exit_code(all_pass(rows));
    }
    if (skl_rel->parsed()) {
      const AlgebraParams p{d, r, pick_x(d), modulus};
      const RelationSystem sys = build_relations(p, stol);
      const Span span = relation_space(sys, cfg.rank_tol);
      if (!dump_path.empty()) write_json_file(dump_path, relations_to_json(sys, span.rank));
      const int expected = d * (d - 1) / 2;
      emit({{"d", d}, {"r", r}, {"x", cplx_json(p.x)}, {"rank", span.rank}, {"expected_rank", expected},
            {"gap_ratio", std::isinf(span.gap_ratio) ? json("inf") : json(span.gap_ratio)}});
      return exit_code(span.rank == expected);
    }
    if (skl_iso->parsed()) {
      const cplx x = pick_x(d);
      const double dist = check_substitution_isomorphism(d, r, rprime, x, modulus, stol);
      const ResidualRow row = upper_bound_row("subspace_distance", dist, cfg.iso_tol);
      emit({{"d", d}, {"r", r}, {"rprime", rprime}, {"x", cplx_json(x)}, {"residuals", residual_table({row})}});
      return exit_code(row.pass);
    }
    if (poi_ext->parsed()) {
      const PoissonTensor t = extract_bracket(d, r, modulus, poisson_options(cfg));
      if (!dump_path.empty()) write_json_file(dump_path, poisson_to_json(t));
      const std::vector<ResidualRow> rows = {
          upper_bound_row("richardson_error", t.richardson_error, cfg.bracket_tol),
          upper_bound_row("jacobi", jacobi_check(t, trials, cfg.seed), cfg.bracket_tol),
          upper_bound_row("skew", skew_check(t), 0.0)};
      emit({{"d", d}, {"r", r}, {"h", t.extraction_step}, {"condition", t.condition},
            {"entries", poisson_to_json(t)["entries"].size()}, {"residuals", residual_table(rows)}});
      return exit_code(all_pass(rows));
    }
    if (poi_jac->parsed()) {
      const PoissonTensor t = poisson_from_json(read_json_file(in_path));
      const ResidualRow row = upper_bound_row("jacobi", jacobi_check(t, trials, cfg.seed), cfg.bracket_tol);
      emit({{"d", t.d()}, {"r", t.r()}, {"trials", trials}, {"residuals", residual_table({row})}});
      return exit_code(row.pass);
    }
    if (muk_act->parsed()) {
      emit(object_json(act_word(parse_object(object_text), GroupWord::parse(word_text))));
      return 0;
    }
    if (muk_inv->parsed()) {
      const OrbitInvariant inv = orbit_invariants(parse_kvector(v1_text), parse_kvector(v2_text));
      emit({{"det", inv.det}, {"alpha", inv.alpha}});
      return 0;
    }
    if (muk_tr->parsed() || muk_ur->parsed()) {
      const DerivedObject E = DerivedObject::bundle(r1, d1, 0);
      const bool tr = muk_tr->parsed();
      const TrSolution s = tr ? solve_T_r(E) : solve_U_r(E);
      emit({{"word", s.word.to_string()}, {tr ? "r_prime" : "r_doubleprime", s.r_prime},
            {"image_of_E", object_json(act_word(E, s.word))}, {"image_of_O_X", object_json(s.image_of_structure_sheaf)}});
      return 0;
    }
    if (s3_orb->parsed() || s3_fix->parsed()) {
      const ResidueSet rs = residue_set(d);
      const FixedPoints fp = fixed_points(d);
      emit({{"d", d}, {"members", rs.members}, {"orbits", orbit_report(d)}, {"phi_fixed", fp.phi_fixed},
            {"phibeta_fixed", fp.phibeta_fixed}});
      return 0;
    }
    if (s3_chk->parsed()) {
      const auto rows = s3_checks(dmax);
      std::string counterexample;
      for (int k = 2; k <= dmax && counterexample.empty(); ++k) counterexample = check_group_relations(k).counterexample;
      emit({{"dmax", dmax}, {"residuals", residual_table(rows)},
            {"counterexample", counterexample.empty() ? json(nullptr) : json(counterexample)}});
      return exit_code(all_pass(rows));
    }
    if (wal->parsed()) {
      const TripleInvariants t{r1, r2, d1, d2};
      emit(walls_to_json(candidate_walls(t, parse_rational(lo_text), parse_rational(hi_text))));
      return 0;
    }
    if (ten_chk->parsed()) {
      if (centers < 0) throw InvalidArgument("--center must be >= 0");
      const TensorCase c = parse_case(case_text, centers);
      SymTensor t;
      if (!t_path.empty())
        t = tensor_from_json(read_json_file(strip_file_prefix(t_path)));
      else if (c.has_default)
        t = c.default_t;
      else
        throw InvalidArgument("case '" + case_text + "' needs --t file:t.json");
      const double inv = check_invariance(c.rep, t);
      const QMatrix ts = t_star(c.rep, t);
      const bool pass = inv == 0.0 && ts.is_zero();
      emit({{"case", c.label}, {"dim_g", c.rep.dim_g}, {"dim_V", c.rep.dim_V},
            {"invariance_residual", inv}, {"t_star_zero", ts.is_zero()}, {"t_star_scalar", scalar_or_null(ts)},
            {"pass", pass}});
      return exit_code(pass);
    }
    if (ten_sol->parsed()) {
      if (centers < 0) throw InvalidArgument("--center must be >= 0");
      const TensorCase c = parse_case(case_text, centers);
      const std::vector<SymTensor> basis = solve_admissible(c.rep);
      json items = json::array();
      for (const SymTensor& t : basis) items.push_back(tensor_to_json(t)["t"]);
      emit({{"case", c.label}, {"dim_g", c.rep.dim_g}, {"dim_V", c.rep.dim_V},
            {"dimension", basis.size()}, {"basis", std::move(items)}});
      return 0;
    }
    if (chk->parsed()) {
      const auto rows = check_all(dmax, cfg);
      emit({{"dmax", dmax}, {"residuals", residual_table(rows)}, {"pass", all_pass(rows)}});
      return exit_code(all_pass(rows));
    }
    err << app.help();
    return 2;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "verification failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"sklab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace sklab
