#include "commring/monomials.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "commring/error.hpp"

namespace commring {

int order(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

double factorial(const MultiIndex& a) {
  double f = 1.0;
  for (int v : a) {
    for (int k = 2; k <= v; ++k) f *= k;
  }
  return f;
}

MultiIndex unit_index(int vars, int j) {
  MultiIndex a(vars, 0);
  a.at(j) = 1;
  return a;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

namespace {

void fill_degree(int vars, int k, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == vars - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (int v = k; v >= 0; --v) {
    cur[pos] = v;
    fill_degree(vars, k - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(int vars, int k) {
  std::vector<MultiIndex> out;
  if (vars == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  MultiIndex cur(vars, 0);
  fill_degree(vars, k, 0, cur, out);
  return out;
}

std::vector<MultiIndex> indices_up_to(int vars, int k) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= k; ++d) {
    auto part = indices_of_degree(vars, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

MonomialTable::MonomialTable(int vars, int order) : vars_(vars), order_(order) {
  if (vars < 0 || order < 0) fail(ErrorCode::IndexOutOfRange, "negative monomial table shape");
  offsets_.push_back(0);
  for (int d = 0; d <= order; ++d) {
    for (auto& a : indices_of_degree(vars, d)) {
      indices_.push_back(std::move(a));
      degrees_.push_back(d);
    }
    offsets_.push_back(static_cast<int>(indices_.size()));
  }
  strides_.assign(vars, 1);
  std::int64_t stride = 1;
  for (int j = vars - 1; j >= 0; --j) {
    strides_[j] = stride;
    stride *= (order + 1);
  }
  lookup_.assign(static_cast<std::size_t>(stride), -1);
  for (int i = 0; i < size(); ++i) lookup_[key(indices_[i])] = i;

  raise_.assign(static_cast<std::size_t>(size()) * vars, -1);
  lower_.assign(static_cast<std::size_t>(size()) * vars, -1);
  parent_var_.assign(size(), -1);
  factorial_.resize(size());
  for (int i = 0; i < size(); ++i) {
    factorial_[i] = commring::factorial(indices_[i]);
    for (int j = 0; j < vars; ++j) {
      MultiIndex up = indices_[i];
      ++up[j];
      raise_[i * vars + j] = find(up);
      if (indices_[i][j] > 0) {
        MultiIndex dn = indices_[i];
        --dn[j];
        lower_[i * vars + j] = find(dn);
        if (parent_var_[i] < 0) parent_var_[i] = j;
      }
    }
  }
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size() && degrees_[a] + degrees_[b] <= order; ++b) {
      products_.push_back({a, b, find(add(indices_[a], indices_[b]))});
    }
  }
}

std::int64_t MonomialTable::key(const MultiIndex& a) const {
  std::int64_t k = 0;
  for (int j = 0; j < vars_; ++j) k += a[j] * strides_[j];
  return k;
}

int MonomialTable::find(const MultiIndex& a) const {
  if (static_cast<int>(a.size()) != vars_) fail(ErrorCode::VarCountMismatch, "multi-index length differs from table");
  int d = 0;
  for (int v : a) {
    if (v < 0) return -1;
    d += v;
  }
  if (d > order_) return -1;
  return lookup_[key(a)];
}

std::shared_ptr<const MonomialTable> MonomialTable::get(int vars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{vars, order}];
  if (!slot) slot = std::make_shared<const MonomialTable>(vars, order);
  return slot;
}

}  // namespace commring
