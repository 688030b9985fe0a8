#include <doctest.h>

#include "sklab/error.hpp"
#include "sklab/invtensor.hpp"

#include <random>

using namespace sklab;

namespace {

QMatrix scalar(int n, const Rational& s) { return s * QMatrix::identity(n); }

// t_*(v . v) computed directly from the definition, as coefficients of the
// monomials e_i . e_j (i <= j).
std::vector<Rational> t_star_on_square(const LieRepData& rep, const SymTensor& t, const std::vector<Rational>& v) {
  const int n = rep.dim_V;
  std::vector<std::vector<Rational>> Av(rep.dim_g, std::vector<Rational>(n));
  for (int a = 0; a < rep.dim_g; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Av[a][i] += rep.action[a](i, j) * v[j];
  std::vector<Rational> out(sym2_dim(n));
  for (int a = 0; a < rep.dim_g; ++a)
    for (int b = 0; b < rep.dim_g; ++b) {
      if (t(a, b) == 0) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[sym2_index(std::min(i, j), std::max(i, j), n)] += t(a, b) * Av[a][i] * Av[b][j];
    }
  return out;
}

std::vector<Rational> square_coords(const std::vector<Rational>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<Rational> out(sym2_dim(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[sym2_index(std::min(i, j), std::max(i, j), n)] += v[i] * v[j];
  return out;
}

std::vector<Rational> mat_vec(const QMatrix& m, const std::vector<Rational>& x) {
  std::vector<Rational> y(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

// Rank of a family of matrices, flattened to vectors.
int rank_of(const std::vector<QMatrix>& family) {
  std::vector<std::vector<Rational>> rows;
  for (const QMatrix& m : family) {
    std::vector<Rational> row;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

void check_equivariant(const LieRepData& rep, const SymTensor& t) {
  const QMatrix T = t_star(rep, t);
  for (int i = 0; i < rep.dim_g; ++i) CHECK(commutator(sym2_action(rep, i), T).is_zero());
}

} // namespace

TEST_CASE("gl1 x gl1 on C") {
  const LieRepData rep = gl_pair_rep(1, 1);
  rep.validate();
  const SymTensor t = gl_pair_tensor(1, 1);
  CHECK(t(0, 0) == 1);
  CHECK(t(1, 1) == -1);
  CHECK(t_star(rep, t).is_zero());
  CHECK(check_invariance(rep, t) == 0.0);
}

TEST_CASE("GL pairs satisfy t_* = 0 for r1, r2 <= 3") {
  for (int r1 = 1; r1 <= 3; ++r1)
    for (int r2 = 1; r2 <= 3; ++r2) {
      CAPTURE(r1);
      CAPTURE(r2);
      const LieRepData rep = gl_pair_rep(r1, r2);
      rep.validate();
      const SymTensor t = gl_pair_tensor(r1, r2);
      CHECK(t.is_symmetric());
      CHECK(check_invariance(rep, t) == 0.0);
      CHECK(t_star(rep, t).is_zero());
      check_equivariant(rep, t);
    }
}

TEST_CASE("t_star agrees with the definition on squares") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> x(-3, 3);
  for (const LieRepData& rep : {sl2_rep(), gl_pair_rep(2, 1), gsp_rep(4)}) {
    SymTensor t(rep.dim_g, rep.dim_g);
    for (int i = 0; i < rep.dim_g; ++i)
      for (int j = i; j < rep.dim_g; ++j) t(i, j) = t(j, i) = x(rng);
    const QMatrix T = t_star(rep, t);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> v(rep.dim_V);
      for (auto& c : v) c = x(rng);
      CHECK(mat_vec(T, square_coords(v)) == t_star_on_square(rep, t, v));
    }
  }
}

TEST_CASE("sl2 Casimir acts as a scalar") {
  const LieRepData rep = sl2_rep();
  rep.validate();
  const SymTensor c = sl2_casimir();
  CHECK(check_invariance(rep, c) == 0.0);
  CHECK(t_star(rep, c) == scalar(3, Rational(1, 2)));
  check_equivariant(rep, c);
}

TEST_CASE("invariance detects a non-invariant tensor") {
  const LieRepData rep = sl2_rep();
  SymTensor t(3, 3);
  t(0, 0) = 1;
  CHECK(check_invariance(rep, t) > 0.0);
  CHECK(check_invariance(rep, SymTensor(3, 3)) == 0.0);
}

TEST_CASE("admissible tensors") {
  SUBCASE("gsp4 has a one-dimensional solution space") {
    const LieRepData rep = gsp_rep(4);
    CHECK(rep.dim_g == 11);
    rep.validate();
    const auto sol = solve_admissible(rep);
    CHECK(sol.size() == 1);
  }
  SUBCASE("sl2 without a center has none") { CHECK(solve_admissible(sl2_rep()).empty()); }
  SUBCASE("sl2 with a center") {
    const LieRepData once = augment_with_center(sl2_rep());
    once.validate();
    CHECK(once.dim_g == 4);
    const auto sol = solve_admissible(once);
    CHECK(sol.size() >= 1);
    const LieRepData twice = augment_with_center(once);
    CHECK(twice.dim_g == 5);
    CHECK(solve_admissible(twice).size() >= sol.size());
  }
  SUBCASE("gl2 + gl1 on Mat(2,1)") {
    const LieRepData rep = gl_pair_rep(2, 1);
    const auto sol = solve_admissible(rep);
    CHECK(sol.size() == 3);
    // (t1, -t2) lies in the span.
    std::vector<SymTensor> with_t = sol;
    with_t.push_back(gl_pair_tensor(2, 1));
    CHECK(rank_of(with_t) == static_cast<int>(sol.size()));
    CHECK(solve_admissible(augment_with_center(rep)).size() >= sol.size());
  }
  for (const LieRepData& rep : {gsp_rep(4), augment_with_center(sl2_rep()), gl_pair_rep(2, 2), gl_pair_rep(2, 1)})
    for (const SymTensor& t : solve_admissible(rep)) {
      CHECK(t.is_symmetric());
      CHECK_FALSE(t.is_zero());
      CHECK(check_invariance(rep, t) == 0.0);
      CHECK(t_star(rep, t).is_zero());
    }
}

TEST_CASE("structure constants and validation") {
  const LieRepData rep = sl2_rep();
  // [h, e] = 2e, [e, f] = h with basis (e, f, h).
  CHECK(rep.c(2, 0, 0) == 2);
  CHECK(rep.c(0, 1, 2) == 1);
  LieRepData bad = rep;
  bad.c(0, 1, 2) = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  LieRepData wrong_size = rep;
  wrong_size.action.pop_back();
  CHECK_THROWS_AS(wrong_size.validate(), InvalidArgument);
  CHECK_THROWS_AS(t_star(rep, SymTensor(2, 2)), InvalidArgument);
}

TEST_CASE("symmetric square indexing") {
  CHECK(sym2_dim(4) == 10);
  std::vector<int> seen;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) seen.push_back(sym2_index(i, j, 4));
  for (int k = 0; k < 10; ++k) CHECK(seen[k] == k);
}
