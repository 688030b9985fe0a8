#include "sklab/invtensor.hpp"

#include "sklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sklab {

QMatrix QMatrix::identity(int n) {
  QMatrix out(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const Rational& x : data_) m = std::max(m, std::abs(x.get_d()));
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: dimension mismatch");
  QMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum: dimension mismatch");
  QMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) { return a + Rational(-1) * b; }

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix out = a;
  for (Rational& x : out.data_) x *= s;
  return out;
}

bool QMatrix::operator==(const QMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

namespace {

using Row = std::vector<Rational>;

// Reduced row echelon form in place; returns pivot columns among the first
// `ncols` columns.
std::vector<int> rref(std::vector<Row>& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t next = 0;
  for (int col = 0; col < ncols && next < rows.size(); ++col) {
    std::size_t p = next;
    while (p < rows.size() && sgn(rows[p][static_cast<std::size_t>(col)]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    Row& piv = rows[next];
    const Rational inv = 1 / piv[static_cast<std::size_t>(col)];
    for (Rational& x : piv)
      if (sgn(x) != 0) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == next) continue;
      const Rational f = rows[i][static_cast<std::size_t>(col)];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < piv.size(); ++j)
        if (sgn(piv[j]) != 0) rows[i][j] -= f * piv[j];
    }
    pivots.push_back(col);
    ++next;
  }
  return pivots;
}

std::vector<Row> kernel(std::vector<Row> rows, int ncols) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Row& r) { return std::all_of(r.begin(), r.end(), [](const Rational& x) { return sgn(x) == 0; }); }),
             rows.end());
  const std::vector<int> pivots = rref(rows, ncols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Row> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Row v(static_cast<std::size_t>(ncols));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[static_cast<std::size_t>(pivots[k])] = -rows[k][static_cast<std::size_t>(f)];
    out.push_back(std::move(v));
  }
  return out;
}

void check_rep_sizes(const LieRepData& rep) {
  if (rep.dim_g < 0 || rep.dim_V < 0) throw InvalidArgument("negative dimension");
  if (rep.bracket.size() != static_cast<std::size_t>(rep.dim_g * rep.dim_g * rep.dim_g))
    throw InvalidArgument("bracket has " + std::to_string(rep.bracket.size()) + " entries, expected dim_g^3");
  if (rep.action.size() != static_cast<std::size_t>(rep.dim_g))
    throw InvalidArgument("action needs one matrix per basis element of g");
  for (const QMatrix& a : rep.action)
    if (a.rows() != rep.dim_V || a.cols() != rep.dim_V) throw InvalidArgument("action matrix is not dim_V x dim_V");
}

void check_tensor(const LieRepData& rep, const SymTensor& t) {
  if (t.rows() != rep.dim_g || t.cols() != rep.dim_g) throw InvalidArgument("tensor is not dim_g x dim_g");
  if (!t.is_symmetric()) throw InvalidArgument("tensor is not symmetric");
}

QMatrix unit(int n, int i, int j) {
  QMatrix out(n, n);
  out(i, j) = 1;
  return out;
}

} // namespace

void LieRepData::validate() const {
  check_rep_sizes(*this);
  const int n = dim_g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c(i, j, k) != -c(j, i, k)) throw InvalidArgument("bracket is not antisymmetric");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational s = 0;
          for (int m = 0; m < n; ++m) {
            if (sgn(c(i, j, m)) != 0) s += c(i, j, m) * c(m, k, l);
            if (sgn(c(j, k, m)) != 0) s += c(j, k, m) * c(m, i, l);
            if (sgn(c(k, i, m)) != 0) s += c(k, i, m) * c(m, j, l);
          }
          if (sgn(s) != 0) throw InvalidArgument("bracket violates the Jacobi identity");
        }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QMatrix rhs(dim_V, dim_V);
      for (int k = 0; k < n; ++k)
        if (sgn(c(i, j, k)) != 0) rhs = rhs + c(i, j, k) * action[static_cast<std::size_t>(k)];
      if (!(commutator(action[static_cast<std::size_t>(i)], action[static_cast<std::size_t>(j)]) == rhs))
        throw InvalidArgument("action is not a Lie algebra homomorphism");
    }
}

std::vector<Rational> structure_constants(const std::vector<QMatrix>& basis) {
  const int g = static_cast<int>(basis.size());
  if (g == 0) return {};
  const int n = basis[0].rows();
  const int rhs = g * g;
  // Columns: basis coordinates, then the g^2 commutators.
  std::vector<Row> rows(static_cast<std::size_t>(n * n), Row(static_cast<std::size_t>(g + rhs)));
  for (int k = 0; k < g; ++k)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) rows[static_cast<std::size_t>(p * n + q)][static_cast<std::size_t>(k)] = basis[static_cast<std::size_t>(k)](p, q);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const QMatrix c = commutator(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) rows[static_cast<std::size_t>(p * n + q)][static_cast<std::size_t>(g + i * g + j)] = c(p, q);
    }
  const std::vector<int> pivots = rref(rows, g);
  if (static_cast<int>(pivots.size()) != g) throw InvalidArgument("basis matrices are linearly dependent");
  for (std::size_t r = static_cast<std::size_t>(g); r < rows.size(); ++r)
    for (int col = g; col < g + rhs; ++col)
      if (sgn(rows[r][static_cast<std::size_t>(col)]) != 0) throw InvalidArgument("span is not closed under commutators");
  std::vector<Rational> out(static_cast<std::size_t>(g * g * g));
  for (int ij = 0; ij < rhs; ++ij)
    for (int k = 0; k < g; ++k) out[static_cast<std::size_t>(ij * g + k)] = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(g + ij)];
  return out;
}

LieRepData gl_rep(int r) {
  if (r < 1) throw InvalidArgument("gl_r needs r >= 1");
  LieRepData rep;
  rep.dim_g = r * r;
  rep.dim_V = r;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rep.action.push_back(unit(r, i, j));
  rep.bracket = structure_constants(rep.action);
  return rep;
}

LieRepData gl_pair_rep(int r1, int r2) {
  if (r1 < 1 || r2 < 1) throw InvalidArgument("gl_{r1} + gl_{r2} needs r1, r2 >= 1");
  const int n = r1 + r2;
  std::vector<QMatrix> faithful;
  LieRepData rep;
  rep.dim_g = r1 * r1 + r2 * r2;
  rep.dim_V = r1 * r2;
  // V = Mat(r1, r2), entry (a, b) at index a*r2 + b.
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r1; ++j) {
      faithful.push_back(unit(n, i, j));
      QMatrix act(rep.dim_V, rep.dim_V);
      for (int b = 0; b < r2; ++b) act(i * r2 + b, j * r2 + b) = 1;  // E_ij M
      rep.action.push_back(act);
    }
  for (int i = 0; i < r2; ++i)
    for (int j = 0; j < r2; ++j) {
      faithful.push_back(unit(n, r1 + i, r1 + j));
      QMatrix act(rep.dim_V, rep.dim_V);
      for (int a = 0; a < r1; ++a) act(a * r2 + j, a * r2 + i) = -1;  // -M E_ij
      rep.action.push_back(act);
    }
  rep.bracket = structure_constants(faithful);
  return rep;
}

SymTensor gl_pair_tensor(int r1, int r2) {
  const int g = r1 * r1 + r2 * r2;
  SymTensor t(g, g);
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r1; ++j) t(i * r1 + j, j * r1 + i) = 1;
  const int off = r1 * r1;
  for (int i = 0; i < r2; ++i)
    for (int j = 0; j < r2; ++j) t(off + i * r2 + j, off + j * r2 + i) = -1;
  return t;
}

LieRepData sl2_rep() {
  LieRepData rep;
  rep.dim_g = 3;
  rep.dim_V = 2;
  QMatrix h(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  rep.action = {unit(2, 0, 1), unit(2, 1, 0), h};
  rep.bracket = structure_constants(rep.action);
  return rep;
}

SymTensor sl2_casimir() {
  SymTensor t(3, 3);
  t(0, 1) = 1;
  t(1, 0) = 1;
  t(2, 2) = Rational(1, 2);
  return t;
}

LieRepData gsp_rep(int two_r) {
  if (two_r < 2 || two_r % 2 != 0) throw InvalidArgument("gsp_{2r} needs an even size >= 2");
  const int n = two_r, r = n / 2;
  QMatrix omega_inv(n, n);
  // Omega = [[0, J], [-J, 0]], Omega^{-1} = -Omega = [[0, -J], [J, 0]].
  for (int i = 0; i < r; ++i) {
    omega_inv(i, n - 1 - i) = -1;
    omega_inv(r + i, r - 1 - i) = 1;
  }
  LieRepData rep;
  rep.dim_V = n;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      QMatrix s = unit(n, p, q);
      s(q, p) = 1;
      rep.action.push_back(omega_inv * s);
    }
  rep.action.push_back(QMatrix::identity(n));
  rep.dim_g = static_cast<int>(rep.action.size());
  rep.bracket = structure_constants(rep.action);
  return rep;
}

LieRepData augment_with_center(const LieRepData& rep) {
  check_rep_sizes(rep);
  LieRepData out;
  out.dim_g = rep.dim_g + 1;
  out.dim_V = rep.dim_V;
  out.bracket.assign(static_cast<std::size_t>(out.dim_g * out.dim_g * out.dim_g), Rational(0));
  for (int i = 0; i < rep.dim_g; ++i)
    for (int j = 0; j < rep.dim_g; ++j)
      for (int k = 0; k < rep.dim_g; ++k) out.c(i, j, k) = rep.c(i, j, k);
  out.action = rep.action;
  out.action.push_back(QMatrix::identity(rep.dim_V));
  return out;
}

int sym2_dim(int dim_V) { return dim_V * (dim_V + 1) / 2; }

int sym2_index(int i, int j, int dim_V) {
  if (i > j) std::swap(i, j);
  return i * dim_V - i * (i - 1) / 2 + (j - i);
}

QMatrix t_star(const LieRepData& rep, const SymTensor& t) {
  check_rep_sizes(rep);
  check_tensor(rep, t);
  const int n = rep.dim_V;
  QMatrix out(sym2_dim(n), sym2_dim(n));
  for (int i = 0; i < rep.dim_g; ++i)
    for (int j = 0; j < rep.dim_g; ++j) {
      const Rational& tij = t(i, j);
      if (sgn(tij) == 0) continue;
      const QMatrix& A = rep.action[static_cast<std::size_t>(i)];
      const QMatrix& B = rep.action[static_cast<std::size_t>(j)];
      for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) {
          const int col = sym2_index(p, q, n);
          for (int a = 0; a < n; ++a) {
            if (sgn(A(a, p)) == 0) continue;
            for (int b = 0; b < n; ++b)
              if (sgn(B(b, q)) != 0) out(sym2_index(a, b, n), col) += tij * A(a, p) * B(b, q);
          }
        }
    }
  return out;
}

QMatrix sym2_action(const LieRepData& rep, int i) {
  check_rep_sizes(rep);
  const int n = rep.dim_V;
  const QMatrix& A = rep.action.at(static_cast<std::size_t>(i));
  QMatrix out(sym2_dim(n), sym2_dim(n));
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      const int col = sym2_index(p, q, n);
      for (int a = 0; a < n; ++a) {
        if (sgn(A(a, p)) != 0) out(sym2_index(a, q, n), col) += A(a, p);
        if (sgn(A(a, q)) != 0) out(sym2_index(p, a, n), col) += A(a, q);
      }
    }
  return out;
}

std::vector<QMatrix> invariance_defect(const LieRepData& rep, const SymTensor& t) {
  check_rep_sizes(rep);
  check_tensor(rep, t);
  const int g = rep.dim_g;
  std::vector<QMatrix> out;
  for (int z = 0; z < g; ++z) {
    QMatrix m(g, g);
    // ad_z x_i = sum_k c(z,i,k) x_k on either tensor factor.
    for (int i = 0; i < g; ++i)
      for (int k = 0; k < g; ++k) {
        const Rational& c = rep.c(z, i, k);
        if (sgn(c) == 0) continue;
        for (int l = 0; l < g; ++l) {
          if (sgn(t(i, l)) != 0) m(k, l) += c * t(i, l);
          if (sgn(t(l, i)) != 0) m(l, k) += c * t(l, i);
        }
      }
    out.push_back(std::move(m));
  }
  return out;
}

double check_invariance(const LieRepData& rep, const SymTensor& t) {
  double worst = 0.0;
  for (const QMatrix& m : invariance_defect(rep, t)) worst = std::max(worst, m.max_abs());
  return worst;
}

std::vector<SymTensor> solve_admissible(const LieRepData& rep) {
  check_rep_sizes(rep);
  const int g = rep.dim_g;
  std::vector<std::pair<int, int>> unknowns;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) unknowns.emplace_back(i, j);
  const int nu = static_cast<int>(unknowns.size());

  auto basis_tensor = [&](int u) {
    SymTensor t(g, g);
    const auto [i, j] = unknowns[static_cast<std::size_t>(u)];
    t(i, j) = 1;
    t(j, i) = 1;
    return t;
  };

  // Each unknown contributes one column: its invariance defect and t_*.
  std::vector<Row> columns;
  for (int u = 0; u < nu; ++u) {
    const SymTensor t = basis_tensor(u);
    Row col;
    for (const QMatrix& m : invariance_defect(rep, t))
      for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) col.push_back(m(a, b));
    const QMatrix ts = t_star(rep, t);
    for (int a = 0; a < ts.rows(); ++a)
      for (int b = 0; b < ts.cols(); ++b) col.push_back(ts(a, b));
    columns.push_back(std::move(col));
  }
  const std::size_t neq = columns.empty() ? 0 : columns[0].size();
  std::vector<Row> rows(neq, Row(static_cast<std::size_t>(nu)));
  for (int u = 0; u < nu; ++u)
    for (std::size_t e = 0; e < neq; ++e) rows[e][static_cast<std::size_t>(u)] = columns[static_cast<std::size_t>(u)][e];

  std::vector<SymTensor> out;
  for (const Row& v : kernel(std::move(rows), nu)) {
    SymTensor t(g, g);
    for (int u = 0; u < nu; ++u) {
      const auto [i, j] = unknowns[static_cast<std::size_t>(u)];
      t(i, j) = v[static_cast<std::size_t>(u)];
      t(j, i) = v[static_cast<std::size_t>(u)];
    }
    out.push_back(std::move(t));
  }
  return out;
}

} // namespace sklab
