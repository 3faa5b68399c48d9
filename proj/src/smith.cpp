#include "subprod/smith.hpp"

#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subprod/checked.hpp"
#include "subprod/errors.hpp"

namespace subprod {

namespace {

using Big = boost::multiprecision::cpp_int;

struct IntegerRing {
  using Value = Big;
  Value reduce(const Value& v) const { return v; }
  static Value magnitude(const Value& x) { return abs(x); }
  std::pair<Value, Value> pivot_unit(const Value& p) const { return p < 0 ? std::pair<Value, Value>{-1, -1} : std::pair<Value, Value>{1, 1}; }
  // Nearest-integer quotient keeps remainders within |p| / 2.
  static Value quot(const Value& a, const Value& p) {
    Value q = a / p;
    const Value r = a - q * p;
    if (2 * abs(r) > abs(p)) q += ((r < 0) == (p < 0)) ? 1 : -1;
    return q;
  }
  static bool divides(const Value& p, const Value& x) { return x % p == 0; }
};

struct ModRing {
  using Value = std::int64_t;
  std::int64_t modulus;

  std::int64_t reduce(__int128 v) const {
    __int128 r = v % modulus;
    if (r < 0) r += modulus;
    return static_cast<std::int64_t>(r);
  }
  static std::int64_t magnitude(std::int64_t x) { return x; }
  // Unit u with u * p = gcd(p, modulus), so the pivot divides the modulus.
  std::pair<std::int64_t, std::int64_t> pivot_unit(std::int64_t p) const {
    const std::int64_t g = std::gcd(p, modulus);
    const std::int64_t m = modulus / g;
    std::int64_t u = checked::inverse_mod(p / g, m);
    while (std::gcd(u, modulus) != 1) u += m;
    return {u, checked::inverse_mod(u, modulus)};
  }
  static std::int64_t quot(std::int64_t a, std::int64_t p) { return a / p; }
  static bool divides(std::int64_t p, std::int64_t x) { return x % p == 0; }
};

template <class V>
using Grid = std::vector<std::vector<V>>;

template <class V>
Grid<V> identity_grid(std::size_t n) {
  Grid<V> g(n, std::vector<V>(n, V(0)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  return g;
}

template <class Ring>
class SmithEngine {
 public:
  using V = typename Ring::Value;

  struct Result {
    Grid<V> u, d, v, uinv;
  };

  SmithEngine(const Matrix& m, const Ring& ring, bool track_inverse)
      : ring_(ring), rows_(m.rows()), cols_(m.cols()), a_(rows_, std::vector<V>(cols_)),
        u_(identity_grid<V>(rows_)), uinv_(track_inverse ? identity_grid<V>(rows_) : Grid<V>()),
        v_(identity_grid<V>(cols_)) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a_[i][j] = m(i, j);
  }

  Result run() {
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t t = 0; t < n; ++t) {
      if (!reduce_block(t)) break;
    }
    return Result{std::move(u_), std::move(a_), std::move(v_), std::move(uinv_)};
  }

 private:
  // Moves a gcd-pivot to (t, t) and clears its row and column. Returns false
  // if the active block is zero.
  bool reduce_block(std::size_t t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      bool found = false;
      V best = 0;
      for (std::size_t i = t; i < rows_; ++i)
        for (std::size_t j = t; j < cols_; ++j) {
          if (a_[i][j] == 0) continue;
          const V mag = Ring::magnitude(a_[i][j]);
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (!found) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);
      const auto [unit, unit_inv] = ring_.pivot_unit(a_[t][t]);
      if (unit != 1) scale_row(t, unit, unit_inv);
      const V p = a_[t][t];

      bool clean = true;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        const V q = Ring::quot(a_[i][t], p);
        if (q != 0) add_row_multiple(i, t, -q);
        if (a_[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        const V q = Ring::quot(a_[t][j], p);
        if (q != 0) add_col_multiple(j, t, -q);
        if (a_[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows_ && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols_; ++j)
          if (!Ring::divides(p, a_[i][j])) {
            add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) return true;
    }
  }

  V mul_add(const V& x, const V& q, const V& y) const {
    if constexpr (std::is_same_v<V, std::int64_t>)
      return ring_.reduce(static_cast<__int128>(x) + static_cast<__int128>(q) * y);
    else
      return ring_.reduce(x + q * y);
  }

  V mul(const V& x, const V& q) const {
    if constexpr (std::is_same_v<V, std::int64_t>)
      return ring_.reduce(static_cast<__int128>(x) * q);
    else
      return ring_.reduce(x * q);
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    std::swap(a_[i], a_[k]);
    std::swap(u_[i], u_[k]);
    for (auto& row : uinv_) std::swap(row[i], row[k]);
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (auto& row : a_) std::swap(row[j], row[k]);
    for (auto& row : v_) std::swap(row[j], row[k]);
  }

  // row[dst] += q * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const V& q) {
    for (std::size_t j = 0; j < cols_; ++j) a_[dst][j] = mul_add(a_[dst][j], q, a_[src][j]);
    for (std::size_t j = 0; j < rows_; ++j) u_[dst][j] = mul_add(u_[dst][j], q, u_[src][j]);
    // U <- E U  implies  Uinv <- Uinv E^-1 : col[src] -= q * col[dst]
    for (auto& row : uinv_) row[src] = mul_add(row[src], -q, row[dst]);
  }

  // col[dst] += q * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const V& q) {
    for (auto& row : a_) row[dst] = mul_add(row[dst], q, row[src]);
    for (auto& row : v_) row[dst] = mul_add(row[dst], q, row[src]);
  }

  void scale_row(std::size_t i, const V& unit, const V& unit_inv) {
    for (auto& x : a_[i]) x = mul(x, unit);
    for (auto& x : u_[i]) x = mul(x, unit);
    for (auto& row : uinv_) row[i] = mul(row[i], unit_inv);
  }

  Ring ring_;
  std::size_t rows_, cols_;
  Grid<V> a_;
  Grid<V> u_;
  Grid<V> uinv_;
  Grid<V> v_;
};


Big dot(const std::vector<Big>& x, const std::vector<Big>& y) {
  Big s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Nearest integer to num / den, den > 0.
Big round_div(const Big& num, const Big& den) {
  Big q = (2 * num + den) / (2 * den);
  if (2 * num + den < 0 && (2 * num + den) % (2 * den) != 0) q -= 1;
  return q;
}

// x + t * y
std::vector<Big> axpy(const std::vector<Big>& x, const Big& t, const std::vector<Big>& y) {
  std::vector<Big> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + t * y[k];
  return out;
}

// Shrinks U (rows) and V (columns, stored transposed) without changing
// U M V = D. Allowed moves for invariant factors d:
//   U_i += q U_j            if j >= rank
//   V_j += p V_i            if i >= rank
//   U_i += q U_j, V_j += p V_i   if i, j < rank and q d_j + p d_i = 0
// Each move is taken with the integer step that minimises the squared norm,
// until no move improves it.
void shrink_transforms(Grid<Big>& u, Grid<Big>& vt, const std::vector<Big>& d) {
  const std::size_t rank = d.size();
  const auto best_step = [](const Big& num, const Big& den) { return den == 0 ? Big(0) : round_div(-num, den); };
  for (int round = 0; round < 200; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = rank; j < u.size(); ++j) {
        if (i == j) continue;
        const Big q = best_step(dot(u[i], u[j]), dot(u[j], u[j]));
        if (q == 0) continue;
        auto next = axpy(u[i], q, u[j]);
        if (dot(next, next) < dot(u[i], u[i])) {
          u[i] = std::move(next);
          improved = true;
        }
      }
    for (std::size_t i = rank; i < vt.size(); ++i)
      for (std::size_t j = 0; j < vt.size(); ++j) {
        if (i == j) continue;
        const Big p = best_step(dot(vt[j], vt[i]), dot(vt[i], vt[i]));
        if (p == 0) continue;
        auto next = axpy(vt[j], p, vt[i]);
        if (dot(next, next) < dot(vt[j], vt[j])) {
          vt[j] = std::move(next);
          improved = true;
        }
      }
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) {
        if (i == j) continue;
        // q = a t, p = k t
        Big a = 1, k;
        if (d[j] % d[i] == 0) {
          k = -(d[j] / d[i]);
        } else {
          a = -(d[i] / d[j]);
          k = 1;
        }
        const Big t =
            best_step(a * dot(u[i], u[j]) + k * dot(vt[j], vt[i]), a * a * dot(u[j], u[j]) + k * k * dot(vt[i], vt[i]));
        if (t == 0) continue;
        auto nu = axpy(u[i], a * t, u[j]);
        auto nv = axpy(vt[j], k * t, vt[i]);
        if (dot(nu, nu) + dot(nv, nv) < dot(u[i], u[i]) + dot(vt[j], vt[j])) {
          u[i] = std::move(nu);
          vt[j] = std::move(nv);
          improved = true;
        }
      }
    if (!improved) break;
  }
}

Grid<Big> transpose(const Grid<Big>& g, std::size_t cols) {
  Grid<Big> t(cols, std::vector<Big>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = g[i][j];
  return t;
}

template <class V>
Matrix to_matrix(const Grid<V>& g, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if constexpr (std::is_same_v<V, std::int64_t>) {
        m(i, j) = g[i][j];
      } else {
        if (g[i][j] > INT64_MAX || g[i][j] < INT64_MIN) throw OverflowError("smith_normal_form: int64 overflow");
        m(i, j) = static_cast<std::int64_t>(g[i][j]);
      }
    }
  return m;
}

struct BigSmith {
  Grid<Big> u, d, v;
};

BigSmith big_smith(const Matrix& m) {
  auto r = SmithEngine<IntegerRing>(m, IntegerRing{}, false).run();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Big> d;
  while (d.size() < std::min(rows, cols) && r.d[d.size()][d.size()] != 0) d.push_back(r.d[d.size()][d.size()]);
  Grid<Big> vt = transpose(r.v, cols);
  shrink_transforms(r.u, vt, d);
  return BigSmith{std::move(r.u), std::move(r.d), transpose(vt, cols)};
}

Big max_abs(const Grid<Big>& a, const Grid<Big>& b) {
  Big best = 0;
  for (const auto* g : {&a, &b})
    for (const auto& row : *g)
      for (const auto& x : row) best = std::max(best, Big(abs(x)));
  return best;
}

}  // namespace

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  BigSmith direct = big_smith(m);
  // U' M^T V' = D^T gives the transforms (V'^T, U'^T) for M; keep the smaller pair.
  BigSmith flipped = big_smith(m.transposed());
  if (max_abs(flipped.u, flipped.v) < max_abs(direct.u, direct.v))
    direct = BigSmith{transpose(flipped.v, rows), std::move(direct.d), transpose(flipped.u, cols)};
  return SmithForm{to_matrix(direct.u, rows, rows), to_matrix(direct.d, rows, cols), to_matrix(direct.v, cols, cols),
                   Matrix()};
}

SmithForm smith_normal_form_mod(const Matrix& m, std::int64_t modulus) {
  require(modulus >= 1, "smith_normal_form_mod: modulus must be positive");
  Matrix reduced(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) reduced(i, j) = checked::mod(m(i, j), modulus);
  auto r = SmithEngine<ModRing>(reduced, ModRing{modulus}, true).run();
  const std::size_t rows = m.rows(), cols = m.cols();
  return SmithForm{to_matrix(r.u, rows, rows), to_matrix(r.d, rows, cols), to_matrix(r.v, cols, cols),
                   to_matrix(r.uinv, rows, rows)};
}

std::optional<std::vector<std::int64_t>> solve_linear_congruence(const Matrix& a, const std::vector<std::int64_t>& b,
                                                                 const std::vector<std::int64_t>& moduli) {
  require(a.rows() == b.size() && a.rows() == moduli.size(), "solve_linear_congruence: dimension mismatch");
  std::int64_t e = 1;
  for (auto m : moduli) {
    require(m >= 1, "solve_linear_congruence: moduli must be positive");
    e = checked::lcm(e, m);
  }
  const std::size_t rows = a.rows(), cols = a.cols();

  // Row i lives in Z/m_i, embedded into Z/e by multiplication with e/m_i.
  Matrix scaled(rows, cols);
  std::vector<std::int64_t> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t f = e / moduli[i];
    for (std::size_t j = 0; j < cols; ++j) scaled(i, j) = checked::mul(f, checked::mod(a(i, j), moduli[i]));
    rhs[i] = checked::mul(f, checked::mod(b[i], moduli[i]));
  }

  const SmithForm snf = smith_normal_form_mod(scaled, e);
  std::vector<std::int64_t> c(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    __int128 acc = 0;
    for (std::size_t k = 0; k < rows; ++k) acc = (acc + static_cast<__int128>(snf.U(i, k)) * rhs[k]) % e;
    c[i] = static_cast<std::int64_t>(acc);
  }

  std::vector<std::int64_t> z(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t d = i < cols ? snf.D(i, i) : 0;
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % d != 0) return std::nullopt;
    z[i] = c[i] / d;
  }

  std::vector<std::int64_t> x(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) {
    __int128 acc = 0;
    for (std::size_t k = 0; k < cols; ++k) acc = (acc + static_cast<__int128>(snf.V(j, k)) * z[k]) % e;
    x[j] = static_cast<std::int64_t>(acc);
  }
  return x;
}

}  // namespace subprod
