#ifndef BTR_LOCAL_FORM_HPP
#define BTR_LOCAL_FORM_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <vector>

#include "btr/scalar.hpp"
#include "btr/series.hpp"

namespace btr {

constexpr int kMaxArity = 20;

// Multi-index (branch_1..branch_n, degree_1..degree_n). Branches are 0-based.
struct Key {
  std::array<std::int16_t, 2 * kMaxArity> v{};
  std::uint8_t n = 0;

  Key() = default;
  explicit Key(int arity) : n(static_cast<std::uint8_t>(arity)) {}
  Key(std::initializer_list<int> branches, std::initializer_list<int> degrees);

  int arity() const { return n; }
  int br(int i) const { return v[i]; }
  int deg(int i) const { return v[kMaxArity + i]; }
  void set(int i, int b, int d) {
    v[i] = static_cast<std::int16_t>(b);
    v[kMaxArity + i] = static_cast<std::int16_t>(d);
  }
  void push(int b, int d) { set(n++, b, d); }

  friend bool operator==(const Key& a, const Key& b) {
    return a.n == b.n && std::memcmp(a.v.data(), b.v.data(), sizeof(a.v)) == 0;
  }
  friend bool operator<(const Key& a, const Key& b);
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept;
};

// Symmetric-or-not n-form germ near the ramification points: a finite set
// of monomials prod_i zeta_{b_i}^{d_i} d zeta_{b_i}, plus per-variable known
// orders. Degrees above the known order are unknown.
class LocalForm {
 public:
  using Map = std::unordered_map<Key, Scalar, KeyHash>;

  LocalForm() = default;
  explicit LocalForm(int arity, int order = kExact) : arity_(arity), order_(arity, order) {}

  int arity() const { return arity_; }
  int order(int v) const { return order_[v]; }
  const std::vector<int>& orders() const { return order_; }
  void set_order(int v, int o);
  void set_orders(int o);
  int min_order() const;

  const Map& entries() const { return c_; }
  bool empty() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  Scalar get(const Key& k) const;
  Scalar get(std::initializer_list<int> branches, std::initializer_list<int> degrees) const {
    return get(Key(branches, degrees));
  }
  // Accumulates; entries above the known order are dropped.
  void add(const Key& k, const Scalar& s);
  void add_mul(const Key& k, const Scalar& a, const Scalar& b);

  // Lowest/highest degree present in variable v (0 when empty).
  int min_degree(int v) const;
  int max_degree(int v) const;

  LocalForm& operator+=(const LocalForm& o);
  LocalForm& operator-=(const LocalForm& o);
  friend LocalForm operator+(LocalForm a, const LocalForm& b) { return a += b; }
  friend LocalForm operator-(LocalForm a, const LocalForm& b) { return a -= b; }
  LocalForm scaled(const Scalar& s) const;

  // Result variable i is variable perm[i] of this form.
  LocalForm permuted(const std::vector<int>& perm) const;
  LocalForm symmetrized() const;
  bool is_symmetric() const;
  LocalForm filtered(const std::function<bool(const Key&)>& keep) const;

  // Sorted entries for deterministic output.
  std::vector<std::pair<Key, Scalar>> sorted() const;

  // Exact equality of entries and orders.
  friend bool operator==(const LocalForm& a, const LocalForm& b);
  friend bool operator!=(const LocalForm& a, const LocalForm& b) { return !(a == b); }

  std::string str() const;

 private:
  int arity_ = 0;
  std::vector<int> order_;
  Map c_;
};

// Entries agree at every multi-degree known in both forms.
bool agree(const LocalForm& a, const LocalForm& b, std::string* why = nullptr);

// Tensor product: variables of a followed by those of b.
LocalForm tensor(const LocalForm& a, const LocalForm& b);

// Pullback by the involution in variable v (each monomial picks (-1)^(d+1)).
LocalForm involution_pullback(const LocalForm& f, int v);
// Split in variables vars: odd part keeps monomials odd under each involution.
std::pair<LocalForm, LocalForm> odd_even_split(const LocalForm& f, const std::vector<int>& vars);
// Monomials that are odd in every variable.
LocalForm odd_part_all(const LocalForm& f);

}  // namespace btr

#endif
