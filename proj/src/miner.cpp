#include "xview/miner.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <omp.h>

#include "xview/error.hpp"
#include "xview/hash.hpp"

namespace xview {

const std::vector<std::string>* Bicluster::side(std::string_view view_id) const {
  if (view_id == view_a) return &elements_a;
  if (view_id == view_b) return &elements_b;
  return nullptr;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    out += s;
    out.push_back('\x1e');
  }
  return out;
}

}  // namespace

Bicluster make_bicluster(std::string view_a, std::string view_b, std::vector<std::string> elements_a,
                         std::vector<std::string> elements_b) {
  std::sort(elements_a.begin(), elements_a.end());
  std::sort(elements_b.begin(), elements_b.end());
  Bicluster b{"", std::move(view_a), std::move(view_b), std::move(elements_a), std::move(elements_b)};
  b.bicluster_id = content_id("bic", b.view_a + '\x1f' + b.view_b + '\x1f' + join(b.elements_a) + '\x1f' + join(b.elements_b));
  return b;
}

bool canonical_less(const Bicluster& x, const Bicluster& y) {
  if (x.elements_a != y.elements_a) return x.elements_a < y.elements_a;
  if (x.elements_b != y.elements_b) return x.elements_b < y.elements_b;
  return std::tie(x.view_a, x.view_b) < std::tie(y.view_a, y.view_b);
}

namespace {

class RowSet {
 public:
  explicit RowSet(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

  static RowSet full(std::size_t bits) {
    RowSet s(bits);
    for (std::size_t i = 0; i < bits; ++i) s.set(i);
    return s;
  }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool subset_of(const RowSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    }
    return true;
  }

  RowSet operator&(const RowSet& other) const {
    RowSet out(*this);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] &= other.words_[k];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

using ColumnSet = std::vector<std::size_t>;  // sorted column indices

class ClosedEnumerator {
 public:
  ClosedEnumerator(const RelationMatrix& m, const MinerOptions& opt) : matrix_(m), opt_(opt) {
    column_rows_.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      RowSet s(m.rows());
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.at(r, c)) s.set(r);
      }
      column_rows_.push_back(std::move(s));
    }
  }

  ColumnSet closure(const RowSet& rows) const {
    ColumnSet cols;
    for (std::size_t c = 0; c < column_rows_.size(); ++c) {
      if (rows.subset_of(column_rows_[c])) cols.push_back(c);
    }
    return cols;
  }

  // Extends closed set `cols` (with row set `rows`) by column `item`; when
  // the extension is prefix-preserving, emits it and recurses.
  void extend(const ColumnSet& cols, const RowSet& rows, std::size_t item, std::vector<Bicluster>& out) const {
    RowSet next_rows = rows & column_rows_[item];
    if (next_rows.count() < opt_.min_rows) return;
    ColumnSet next = closure(next_rows);
    for (std::size_t c : next) {
      if (c >= item) break;
      if (!std::binary_search(cols.begin(), cols.end(), c)) return;
    }
    visit(next, next_rows, item, out);
  }

  void visit(const ColumnSet& cols, const RowSet& rows, std::size_t core, std::vector<Bicluster>& out) const {
    emit(cols, rows, out);
    for (std::size_t i = core + 1; i < column_rows_.size(); ++i) {
      if (std::binary_search(cols.begin(), cols.end(), i)) continue;
      extend(cols, rows, i, out);
    }
  }

  void emit(const ColumnSet& cols, const RowSet& rows, std::vector<Bicluster>& out) const {
    if (cols.size() < opt_.min_cols || rows.count() < opt_.min_rows) return;
    std::vector<std::string> a;
    std::vector<std::string> b;
    for (std::size_t r = 0; r < matrix_.rows(); ++r) {
      if (rows.test(r)) a.push_back(matrix_.row_ids()[r]);
    }
    for (std::size_t c : cols) b.push_back(matrix_.col_ids()[c]);
    out.push_back(make_bicluster(matrix_.view_a(), matrix_.view_b(), std::move(a), std::move(b)));
  }

  std::size_t columns() const { return column_rows_.size(); }

 private:
  const RelationMatrix& matrix_;
  MinerOptions opt_;
  std::vector<RowSet> column_rows_;
};

}  // namespace

std::vector<Bicluster> enumerate_closed_biclusters(const RelationMatrix& matrix, const MinerOptions& options) {
  if (options.min_rows < 1 || options.min_cols < 1) {
    throw Error(Errc::invalid_argument, "min_rows and min_cols must be at least 1");
  }
  std::vector<Bicluster> out;
  if (matrix.rows() == 0 || matrix.cols() == 0 || matrix.rows() < options.min_rows) return out;

  ClosedEnumerator en(matrix, options);
  const RowSet all = RowSet::full(matrix.rows());
  const ColumnSet root = en.closure(all);
  en.emit(root, all, out);

  const auto n = static_cast<std::int64_t>(en.columns());
  if (options.exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      auto item = static_cast<std::size_t>(i);
      if (!std::binary_search(root.begin(), root.end(), item)) en.extend(root, all, item, out);
    }
  } else {
    std::vector<std::vector<Bicluster>> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
      auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < n; ++i) {
        auto item = static_cast<std::size_t>(i);
        if (!std::binary_search(root.begin(), root.end(), item)) en.extend(root, all, item, local);
      }
    }
    for (auto& p : partial) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }

  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace xview
