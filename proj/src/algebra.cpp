#include "gbdp/algebra.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbdp/errors.hpp"
#include "gbdp/param.hpp"

namespace gbdp {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void require_uniform_jump(const GridShape& shape, const char* what) {
  validate_shape(shape);
  if (!shape.symmetric_jumps()) {
    throw UnsupportedError(std::string(what) + " is defined for l1 == l2 only");
  }
}

long long grid_volume(const GridShape& shape) {
  long long v = 1;
  for (int n : shape.dims) v *= n + 1;
  return v;
}

long long volume_without(const GridShape& shape, int skip_a, int skip_b = -1) {
  long long v = 1;
  for (int k = 0; k < shape.q(); ++k) {
    if (k != skip_a && k != skip_b) v *= shape.dims[k] + 1;
  }
  return v;
}

struct Overflow {};

// Checked arithmetic for the fast path; BigInt never overflows.
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }

inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? -a : a; }
inline BigInt abs_value(const BigInt& a) { return boost::multiprecision::abs(a); }
inline std::int64_t gcd_value(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline BigInt gcd_value(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <typename Int>
using SparseRow = std::vector<std::pair<Eigen::Index, Int>>;

// Divide by the gcd of all entries (keeps entries small; rank unchanged).
template <typename Int>
void remove_content(SparseRow<Int>& row) {
  Int g = 0;
  for (const auto& [c, v] : row) {
    g = gcd_value(g, abs_value(v));
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [c, v] : row) v /= g;
  }
}

// row <- (lead_b / g) * row - (lead_r / g) * basis; the leading entries cancel.
template <typename Int>
SparseRow<Int> eliminate(const SparseRow<Int>& row, const SparseRow<Int>& basis) {
  const Int g = gcd_value(abs_value(row.front().second), abs_value(basis.front().second));
  const Int fr = basis.front().second / g;
  const Int fb = row.front().second / g;
  SparseRow<Int> out;
  out.reserve(row.size() + basis.size());
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < basis.size()) {
    Eigen::Index c;
    Int v;
    if (j >= basis.size() || (i < row.size() && row[i].first < basis[j].first)) {
      c = row[i].first;
      v = mul(fr, row[i].second);
      ++i;
    } else if (i >= row.size() || basis[j].first < row[i].first) {
      c = basis[j].first;
      v = sub(Int(0), mul(fb, basis[j].second));
      ++j;
    } else {
      c = row[i].first;
      v = sub(mul(fr, row[i].second), mul(fb, basis[j].second));
      ++i;
      ++j;
    }
    if (v != 0) out.emplace_back(c, std::move(v));
  }
  remove_content(out);
  return out;
}

template <typename Int>
long long sparse_rank(const Eigen::MatrixXi& m) {
  std::map<Eigen::Index, SparseRow<Int>> basis;  // keyed by leading column
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    SparseRow<Int> row;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) row.emplace_back(c, Int(m(r, c)));
    }
    remove_content(row);
    while (!row.empty()) {
      const auto it = basis.find(row.front().first);
      if (it == basis.end()) {
        const Eigen::Index lead = row.front().first;
        basis.emplace(lead, std::move(row));
        break;
      }
      row = eliminate(row, it->second);
    }
  }
  return static_cast<long long>(basis.size());
}

}  // namespace

IntMatrix make_int_matrix(const Eigen::MatrixXi& m) {
  IntMatrix out{m, {}, {}};
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.row_labels.push_back("row " + std::to_string(r));
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col_labels.push_back("col " + std::to_string(c));
  return out;
}

IntMatrix build_Q(const GridShape& shape) {
  require_uniform_jump(shape, "constraint matrix Q");
  const Grid grid(shape);
  const auto edges = directed_edges(shape);
  const std::size_t n = grid.size();

  IntMatrix out;
  std::unordered_map<std::size_t, Eigen::Index> column;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::size_t u = grid.index_of(edges[k].from);
    const std::size_t v = grid.index_of(edges[k].to);
    column.emplace(u * n + v, static_cast<Eigen::Index>(k));
    out.col_labels.push_back(state_label(edges[k].from) + "->" + state_label(edges[k].to));
  }
  auto col = [&](std::size_t u, std::size_t v) { return column.at(u * n + v); };

  std::vector<int> steps;
  for (int s = -shape.l2; s <= shape.l1; ++s) {
    if (s != 0) steps.push_back(s);
  }

  struct Row {
    Eigen::Index plus[2];
    Eigen::Index minus[2];
  };
  std::vector<Row> rows;
  for (int d1 = 1; d1 <= grid.q(); ++d1) {
    for (int d2 = d1 + 1; d2 <= grid.q(); ++d2) {
      for (std::size_t u = 0; u < n; ++u) {
        for (int a : steps) {
          for (int b : steps) {
            const auto via_1 = grid.shifted(u, d1, a);
            const auto via_2 = grid.shifted(u, d2, b);
            if (!via_1 || !via_2) continue;
            const auto target = grid.shifted(*via_1, d2, b);
            if (!target) continue;
            rows.push_back({{col(u, *via_1), col(*via_1, *target)},
                            {col(u, *via_2), col(*via_2, *target)}});
            const int family = a > 0 ? (b > 0 ? 1 : 2) : (b > 0 ? 3 : 4);
            out.row_labels.push_back("F" + std::to_string(family) + " u=" + grid.label(u) +
                                     " d=(" + std::to_string(d1) + "," + std::to_string(d2) +
                                     ") s=(" + std::to_string(a) + "," + std::to_string(b) + ")");
          }
        }
      }
    }
  }

  out.entries = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(rows.size()),
                                      static_cast<Eigen::Index>(edges.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto c : rows[r].plus) out.entries(r, c) += 1;
    for (auto c : rows[r].minus) out.entries(r, c) -= 1;
  }
  return out;
}

IntMatrix build_R(const GridShape& shape) {
  require_uniform_jump(shape, "parameter matrix R");
  const Grid grid(shape);
  const auto edges = directed_edges(shape);
  const auto classes = edge_classes(shape);

  std::map<EdgeClass, Eigen::Index> class_row;
  const auto n = static_cast<Eigen::Index>(grid.size());
  for (std::size_t k = 0; k < classes.size(); ++k) class_row.emplace(classes[k], n + k);

  IntMatrix out;
  out.entries = Eigen::MatrixXi::Zero(n + static_cast<Eigen::Index>(classes.size()),
                                      static_cast<Eigen::Index>(edges.size()));
  for (std::size_t u = 0; u < grid.size(); ++u) out.row_labels.push_back("alpha" + grid.label(u));
  for (const auto& c : classes) out.row_labels.push_back(c.label());

  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    const auto col = static_cast<Eigen::Index>(k);
    out.entries(grid.index_of(e.from), col) += 1;
    out.entries(grid.index_of(e.to), col) -= 1;
    out.entries(class_row.at(edge_class_of(shape, e.from, e.to)), col) += 1;
    out.col_labels.push_back(state_label(e.from) + "->" + state_label(e.to));
  }
  return out;
}

long long integer_rank(const Eigen::MatrixXi& m) {
  try {
    return sparse_rank<std::int64_t>(m);
  } catch (const Overflow&) {
    return sparse_rank<BigInt>(m);
  }
}

long long integer_rank(const IntMatrix& m) { return integer_rank(m.entries); }

OrthocomplementReport verify_orthocomplement(const GridShape& shape) {
  const IntMatrix q = build_Q(shape);
  const IntMatrix r = build_R(shape);
  OrthocomplementReport rep;
  rep.q_rows = q.rows();
  rep.r_rows = r.rows();
  rep.columns = q.cols();
  const Eigen::MatrixXi product = q.entries * r.entries.transpose();
  rep.product_zero = product.size() == 0 || product.cwiseAbs().maxCoeff() == 0;
  rep.rank_q = integer_rank(q);
  rep.rank_r = integer_rank(r);
  rep.null_excess = rep.columns - rep.rank_q - rep.rank_r;
  rep.complementary = rep.null_excess == 0;
  return rep;
}

long long rank_formula_R(const GridShape& shape) {
  require_uniform_jump(shape, "rank formula");
  const long long l = shape.l1;
  long long sum_n = 0;
  for (int n : shape.dims) sum_n += n;
  return l * sum_n + grid_volume(shape) - shape.q() * (l - 1) * l / 2 - 1;
}

long long rank_formula_Q(const GridShape& shape) {
  require_uniform_jump(shape, "rank formula");
  const long long l = shape.l1;
  long long sum_n = 0;
  for (int n : shape.dims) sum_n += n;
  return order_formula_Q(shape).cols - l * sum_n - grid_volume(shape) + shape.q() * (l - 1) * l / 2 +
         1;
}

MatrixOrder order_formula_Q(const GridShape& shape) {
  require_uniform_jump(shape, "order formula");
  const int l = shape.l1;
  MatrixOrder o;
  for (int i = 0; i < shape.q(); ++i) {
    for (int j = 0; j < i; ++j) {
      for (int x = 1; x <= l; ++x) {
        for (int y = 1; y <= l; ++y) {
          o.rows += 4LL * (shape.dims[j] - y + 1) * (shape.dims[i] - x + 1) * volume_without(shape, i, j);
        }
      }
    }
    for (int x = 1; x <= l; ++x) o.cols += 2LL * (shape.dims[i] - x + 1) * volume_without(shape, i);
  }
  return o;
}

MatrixOrder order_formula_R(const GridShape& shape) {
  require_uniform_jump(shape, "order formula");
  MatrixOrder o;
  o.cols = order_formula_Q(shape).cols;
  o.rows = grid_volume(shape);
  for (int i = 0; i < shape.q(); ++i) {
    for (int x = 1; x <= shape.l1; ++x) o.rows += shape.dims[i] - x + 1;
  }
  return o;
}

void write_triplets(const IntMatrix& m, std::ostream& out) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m.entries(r, c) != 0) out << r << ' ' << c << ' ' << m.entries(r, c) << '\n';
    }
  }
}

void write_legend(const std::vector<std::string>& labels, std::ostream& out) {
  for (const auto& l : labels) out << l << '\n';
}

}  // namespace gbdp
