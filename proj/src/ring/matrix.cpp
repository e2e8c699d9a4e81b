#include "germlab/error.hpp"
#include "germlab/ring.hpp"

namespace germlab::ring {

PolyMatrix::PolyMatrix(VariableSet vars, std::size_t rows, std::size_t cols)
    : vars_(std::move(vars)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(vars_)) {}

PolyMatrix PolyMatrix::from_rows(VariableSet vars,
                                 const std::vector<std::vector<Polynomial>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PolyMatrix m(std::move(vars), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::InvalidInput, "matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].variables() == m.vars_)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
      m.at(r, c) = rows[r][c];
    }
  }
  return m;
}

PolyMatrix PolyMatrix::from_columns(VariableSet vars, std::size_t rows,
                                    const std::vector<std::vector<Polynomial>>& columns) {
  PolyMatrix m(std::move(vars), rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) fail(ErrorCode::InvalidInput, "matrix columns differ in length");
    for (std::size_t r = 0; r < rows; ++r) {
      if (!(columns[c][r].variables() == m.vars_)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
      m.at(r, c) = columns[c][r];
    }
  }
  return m;
}

std::vector<Polynomial> PolyMatrix::row(std::size_t r) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Polynomial> PolyMatrix::column(std::size_t c) const {
  std::vector<Polynomial> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(vars_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

PolyMatrix PolyMatrix::select_columns(std::span<const std::size_t> columns) const {
  PolyMatrix out(vars_, rows_, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t r = 0; r < rows_; ++r) out.at(r, j) = at(r, columns[j]);
  }
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::InvalidInput, "matrix shapes do not compose");
  if (!(a.vars_ == b.vars_)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
  PolyMatrix out(a.vars_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Polynomial sum(a.vars_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        sum += a.at(i, k) * b.at(k, j);
      }
      out.at(i, j) = std::move(sum);
    }
  }
  return out;
}

PolyMatrix jacobian_matrix(const VariableSet& vars, std::span<const Polynomial> F) {
  PolyMatrix m(vars, F.size(), vars.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (!(F[i].variables() == vars)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
    for (std::size_t j = 0; j < vars.size(); ++j) m.at(i, j) = differentiate(F[i], j);
  }
  return m;
}

PolyMatrix jacobian_matrix(std::span<const Polynomial> F) {
  if (F.empty()) fail(ErrorCode::InvalidInput, "jacobian of an empty system");
  return jacobian_matrix(F.front().variables(), F);
}

PolyMatrix augment_matrix(const PolyMatrix& DF, std::span<const Polynomial> row) {
  if (row.size() != DF.cols()) fail(ErrorCode::InvalidInput, "augmenting row has the wrong length");
  PolyMatrix out(DF.variables(), DF.rows() + 1, DF.cols());
  for (std::size_t r = 0; r < DF.rows(); ++r) {
    for (std::size_t c = 0; c < DF.cols(); ++c) out.at(r, c) = DF.at(r, c);
  }
  for (std::size_t c = 0; c < DF.cols(); ++c) {
    if (!(row[c].variables() == DF.variables())) fail(ErrorCode::InvalidInput, "variable-set mismatch");
    out.at(DF.rows(), c) = row[c];
  }
  return out;
}

namespace {

// Laplace expansion along the first row over the given column subset; the
// matrices involved are at most a handful of rows tall.
Polynomial det_rec(const PolyMatrix& m, std::size_t row, std::vector<std::size_t>& cols) {
  if (cols.empty()) return Polynomial::constant(m.variables(), 1);
  if (cols.size() == 1) return m.at(row, cols[0]);
  Polynomial sum(m.variables());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Polynomial& entry = m.at(row, cols[k]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j != k) rest.push_back(cols[j]);
    }
    Polynomial minor = det_rec(m, row + 1, rest);
    if (minor.is_zero()) continue;
    Polynomial t = entry * minor;
    if (k % 2 == 0) {
      sum += t;
    } else {
      sum -= t;
    }
  }
  return sum;
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidInput, "determinant of a non-square matrix");
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return det_rec(m, 0, cols);
}

std::vector<Polynomial> maximal_minors(const PolyMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) fail(ErrorCode::InvalidInput, "maximal minors of an empty matrix");
  if (m.rows() > m.cols()) fail(ErrorCode::InvalidInput, "maximal minors need rows <= cols");
  const std::size_t k = m.rows();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Polynomial> out;
  while (true) {
    std::vector<std::size_t> cols = idx;
    out.push_back(det_rec(m, 0, cols));
    // next k-subset in lexicographic order
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m.cols() - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace germlab::ring
