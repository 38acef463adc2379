#include "gerbe/doldkan/simplex_category.hpp"

#include <stdexcept>

namespace gerbe {

MonotoneMap::MonotoneMap(int target_, std::vector<int> values_)
    : target(target_), values(std::move(values_)) {
  if (values.empty()) throw std::invalid_argument("monotone map needs a nonempty source");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > target)
      throw std::invalid_argument("monotone map value out of range: " + to_string());
    if (i > 0 && values[i] < values[i - 1])
      throw std::invalid_argument("map is not monotone: " + to_string());
  }
}

bool MonotoneMap::is_surjective() const {
  return values.front() == 0 && values.back() == target && [&] {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] > values[i - 1] + 1) return false;
    return true;
  }();
}

bool MonotoneMap::is_injective() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) return false;
  return true;
}

MonotoneMap MonotoneMap::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return {n, std::move(v)};
}

MonotoneMap MonotoneMap::face(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw std::invalid_argument("face index out of range");
  std::vector<int> v;
  for (int k = 0; k <= n; ++k)
    if (k != i) v.push_back(k);
  return {n, std::move(v)};
}

MonotoneMap MonotoneMap::degeneracy(int n, int j) {
  if (n < 0 || j < 0 || j > n) throw std::invalid_argument("degeneracy index out of range");
  std::vector<int> v;
  for (int k = 0; k <= n + 1; ++k) v.push_back(k <= j ? k : k - 1);
  return {n, std::move(v)};
}

std::string MonotoneMap::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s + "]->[" + std::to_string(target) + "]";
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.target != g.source()) throw std::invalid_argument("composing incompatible monotone maps");
  std::vector<int> v;
  v.reserve(f.values.size());
  for (int x : f.values) v.push_back(g(x));
  return {g.target, std::move(v)};
}

EpiMono factorize(const MonotoneMap& f) {
  std::vector<int> image;
  for (int x : f.values)
    if (image.empty() || image.back() != x) image.push_back(x);
  std::vector<int> epi;
  epi.reserve(f.values.size());
  int k = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i > 0 && f.values[i] != f.values[i - 1]) ++k;
    epi.push_back(k);
  }
  const int t = static_cast<int>(image.size()) - 1;
  return {MonotoneMap(t, std::move(epi)), MonotoneMap(f.target, std::move(image))};
}

std::vector<Surjection> surjections(int r, int t) {
  std::vector<Surjection> out;
  if (r < 0 || t < 0 || t > r) return out;
  // values[0] = 0 and each step adds 0 or 1; exactly t steps add 1.
  std::vector<int> v(static_cast<std::size_t>(r) + 1, 0);
  auto rec = [&](auto&& self, int i, int cur) -> void {
    if (i > r) {
      if (cur == t) out.emplace_back(t, v);
      return;
    }
    const int remaining = r - i + 1;
    for (int step = 0; step <= 1; ++step) {
      const int next = cur + step;
      if (next > t || t - next > remaining - 1) continue;
      v[static_cast<std::size_t>(i)] = next;
      self(self, i + 1, next);
    }
  };
  rec(rec, 1, 0);
  return out;
}

}  // namespace gerbe
