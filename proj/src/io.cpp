#include "sklab/io.hpp"

#include "sklab/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sklab {

cplx parse_complex(const std::string& text) {
  const auto bad = [&] { return InvalidArgument("malformed complex number '" + text + "' (expected RE,IM)"); };
  auto parse_real = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size() || !std::isfinite(v)) throw bad();
    return v;
  };
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) return {parse_real(text), 0.0};
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>()), 10));
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InvalidArgument("non-finite number in rational field");
    return Rational(v);
  }
  throw InvalidArgument("expected a rational, got " + j.dump());
}

json relations_to_json(const RelationSystem& sys, int rank) {
  const AlgebraParams& p = sys.params();
  json rows = json::array();
  for (const RelationRow& row : sys.rows()) {
    json terms = json::array();
    for (const RelationTerm& t : row.terms)
      terms.push_back({{"n", t.n}, {"a", t.a}, {"b", t.b}, {"coeff_re", t.coeff.real()}, {"coeff_im", t.coeff.imag()}});
    rows.push_back({{"i", row.i}, {"j", row.j}, {"terms", std::move(terms)}});
  }
  return {{"d", p.d}, {"r", p.r}, {"x", {p.x.real(), p.x.imag()}}, {"rows", std::move(rows)}, {"rank", rank}};
}

json poisson_to_json(const PoissonTensor& tensor) {
  const int d = tensor.d();
  json entries = json::array();
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = c; e < d; ++e) {
          const cplx v = tensor(a, b, c, e);
          if (v == cplx(0.0)) continue;
          entries.push_back({{"a", a}, {"b", b}, {"c", c}, {"e", e}, {"re", v.real()}, {"im", v.imag()}});
        }
  return {{"d", d},
          {"r", tensor.r()},
          {"entries", std::move(entries)},
          {"richardson_error", tensor.richardson_error},
          {"extraction_step", tensor.extraction_step}};
}

PoissonTensor poisson_from_json(const json& j) {
  try {
    const int d = j.at("d").get<int>();
    if (d < 1) throw InvalidArgument("pi.json: d must be >= 1");
    PoissonTensor out(d, j.at("r").get<int>());
    for (const json& e : j.at("entries")) {
      const int a = e.at("a").get<int>(), b = e.at("b").get<int>(), c = e.at("c").get<int>(), f = e.at("e").get<int>();
      if (a < 0 || b >= d || a >= b || c < 0 || f >= d || c > f)
        throw InvalidArgument("pi.json: entry index outside a < b, c <= e");
      out.set_skew(a, b, c, f, cplx(e.at("re").get<double>(), e.at("im").get<double>()));
    }
    out.richardson_error = j.value("richardson_error", 0.0);
    out.extraction_step = j.value("extraction_step", 0.0);
    return out;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("pi.json: ") + e.what());
  }
}

namespace {

json matrix_to_json(const QMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix matrix_from_json(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InvalidArgument(std::string(what) + ": expected " + std::to_string(cols) + " columns");
    for (int k = 0; k < cols; ++k) m(i, k) = rational_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

} // namespace

json rep_to_json(const LieRepData& rep) {
  json bracket = json::array();
  for (int i = 0; i < rep.dim_g; ++i) {
    json plane = json::array();
    for (int k = 0; k < rep.dim_g; ++k) {
      json line = json::array();
      for (int l = 0; l < rep.dim_g; ++l) line.push_back(to_string(rep.c(i, k, l)));
      plane.push_back(std::move(line));
    }
    bracket.push_back(std::move(plane));
  }
  json action = json::array();
  for (const QMatrix& a : rep.action) action.push_back(matrix_to_json(a));
  return {{"dim_g", rep.dim_g}, {"dim_V", rep.dim_V}, {"bracket", std::move(bracket)}, {"action", std::move(action)}};
}

LieRepData rep_from_json(const json& j) {
  try {
    LieRepData rep;
    rep.dim_g = j.at("dim_g").get<int>();
    rep.dim_V = j.at("dim_V").get<int>();
    if (rep.dim_g < 0 || rep.dim_V < 0) throw InvalidArgument("rep.json: negative dimension");
    const json& br = j.at("bracket");
    if (!br.is_array() || static_cast<int>(br.size()) != rep.dim_g) throw InvalidArgument("rep.json: bracket must be dim_g^3");
    rep.bracket.assign(static_cast<std::size_t>(rep.dim_g * rep.dim_g * rep.dim_g), Rational(0));
    for (int i = 0; i < rep.dim_g; ++i) {
      const QMatrix plane = matrix_from_json(br[static_cast<std::size_t>(i)], rep.dim_g, rep.dim_g, "rep.json bracket");
      for (int k = 0; k < rep.dim_g; ++k)
        for (int l = 0; l < rep.dim_g; ++l) rep.c(i, k, l) = plane(k, l);
    }
    const json& act = j.at("action");
    if (!act.is_array() || static_cast<int>(act.size()) != rep.dim_g)
      throw InvalidArgument("rep.json: action needs dim_g matrices");
    for (const json& m : act) rep.action.push_back(matrix_from_json(m, rep.dim_V, rep.dim_V, "rep.json action"));
    return rep;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("rep.json: ") + e.what());
  }
}

json tensor_to_json(const SymTensor& t) { return {{"dim_g", t.rows()}, {"t", matrix_to_json(t)}}; }

SymTensor tensor_from_json(const json& j) {
  try {
    const int g = j.at("dim_g").get<int>();
    SymTensor t = matrix_from_json(j.at("t"), g, g, "t.json");
    if (!t.is_symmetric()) throw InvalidArgument("t.json: tensor is not symmetric");
    return t;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("t.json: ") + e.what());
  }
}

json walls_to_json(const WallReport& report) {
  auto sub = [](const SubtripleData& s) { return json{{"r1", s.r1}, {"r2", s.r2}, {"dsum", s.dsum}}; };
  json walls = json::array();
  for (const Wall& w : report.walls) {
    json witnesses = json::array();
    for (const SubtripleData& s : w.witnesses) witnesses.push_back(sub(s));
    walls.push_back({{"tau", to_string(w.tau)}, {"status", "candidate"}, {"effective", "unknown"}, {"witnesses", std::move(witnesses)}});
  }
  json degenerations = json::array();
  for (const SubtripleData& s : report.degenerations) degenerations.push_back(sub(s));
  return {{"walls", std::move(walls)}, {"degenerations", std::move(degenerations)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

} // namespace sklab
