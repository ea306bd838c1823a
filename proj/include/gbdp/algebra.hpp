#ifndef GBDP_ALGEBRA_HPP
#define GBDP_ALGEBRA_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gbdp/lattice.hpp"

namespace gbdp {

/// Integer matrix with human-readable row and column legends.
struct IntMatrix {
  Eigen::MatrixXi entries;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Wraps a plain matrix with numeric legends.
IntMatrix make_int_matrix(const Eigen::MatrixXi& m);

/*
 * Constraint matrix Q: one row per in-grid commutation constraint (every
 * direction pair d1 < d2, base state, signed step pair), +1 on the two edges
 * of the path that moves along d1 first, -1 on the two edges of the other
 * path. Columns follow directed_edges(shape). Requires l1 == l2.
 */
IntMatrix build_Q(const GridShape& shape);

/// Parameter matrix R: rows alpha_u (state order) then Gamma classes
/// (edge_classes order); column (u,v) has +1 at alpha_u, -1 at alpha_v and
/// +1 at Gamma(class(u,v)). Requires l1 == l2.
IntMatrix build_R(const GridShape& shape);

/// Exact rank over the rationals (fraction-free elimination, arbitrary-size integers).
long long integer_rank(const IntMatrix& m);
long long integer_rank(const Eigen::MatrixXi& m);

struct OrthocomplementReport {
  long long q_rows = 0;
  long long r_rows = 0;
  long long columns = 0;
  bool product_zero = false;  // Q R^T == 0 exactly
  long long rank_q = 0;
  long long rank_r = 0;
  /// rank_q + rank_r == columns
  bool complementary = false;
  /// columns - rank_q - rank_r: dimension of null(Q) not covered by rows of R.
  long long null_excess = 0;

  bool holds() const { return product_zero && complementary; }
};

OrthocomplementReport verify_orthocomplement(const GridShape& shape);

/// Closed-form rank of R: l sum n_i + prod (n_i + 1) - q (l - 1) l / 2 - 1.
long long rank_formula_R(const GridShape& shape);
/// Closed-form rank of Q: (column count) - rank_formula_R.
long long rank_formula_Q(const GridShape& shape);

struct MatrixOrder {
  long long rows = 0;
  long long cols = 0;
};

/// Orders from the counting formulas (rows of Q: 4 per in-grid rectangle).
MatrixOrder order_formula_Q(const GridShape& shape);
MatrixOrder order_formula_R(const GridShape& shape);

/// Sparse (row, col, value) triplets, one per line, 0-based.
void write_triplets(const IntMatrix& m, std::ostream& out);
/// One label per line.
void write_legend(const std::vector<std::string>& labels, std::ostream& out);

}  // namespace gbdp

#endif  // GBDP_ALGEBRA_HPP
