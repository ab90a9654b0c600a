#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace commring {

/// Exponent vector of a monomial; order() is the total degree.
using MultiIndex = std::vector<int>;

int order(const MultiIndex& a);
double factorial(const MultiIndex& a);
MultiIndex unit_index(int vars, int j);
MultiIndex add(const MultiIndex& a, const MultiIndex& b);
/// Componentwise a - b; caller guarantees b <= a.
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);
bool leq(const MultiIndex& a, const MultiIndex& b);
/// All multi-indices in `vars` variables with total degree exactly k (lexicographically descending).
std::vector<MultiIndex> indices_of_degree(int vars, int k);
/// All multi-indices with total degree <= k, graded.
std::vector<MultiIndex> indices_up_to(int vars, int k);

/// Graded enumeration of monomials in `vars` variables up to total degree `order`,
/// with precomputed lookup, product and derivative tables. Tables are shared and cached.
class MonomialTable {
 public:
  struct Product {
    int a;
    int b;
    int c;
  };

  static std::shared_ptr<const MonomialTable> get(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& index(int i) const { return indices_[i]; }
  int degree(int i) const { return degrees_[i]; }
  /// Position of the first monomial of degree k (k may be order+1 for the end).
  int degree_begin(int k) const { return offsets_[k]; }
  /// Position of `a`, or -1 when a exceeds the table order.
  int find(const MultiIndex& a) const;
  /// Position of a + e_j, or -1.
  int raise(int i, int j) const { return raise_[i * vars_ + j]; }
  /// Position of a - e_j, or -1 when a_j = 0.
  int lower(int i, int j) const { return lower_[i * vars_ + j]; }
  /// For i > 0: a variable j with a_j > 0 and lower(i, j) as parent.
  int parent_var(int i) const { return parent_var_[i]; }
  double factorial(int i) const { return factorial_[i]; }
  /// All (a, b, c) with index(a) + index(b) = index(c) within the order.
  const std::vector<Product>& products() const { return products_; }

  MonomialTable(int vars, int order);

 private:
  int vars_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<int> degrees_;
  std::vector<int> offsets_;
  std::vector<int> raise_;
  std::vector<int> lower_;
  std::vector<int> parent_var_;
  std::vector<double> factorial_;
  std::vector<Product> products_;
  std::vector<std::int64_t> strides_;
  std::vector<int> lookup_;
  std::int64_t key(const MultiIndex& a) const;
};

}  // namespace commring
