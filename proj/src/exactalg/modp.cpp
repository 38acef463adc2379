#include "gerbe/exactalg/modp.hpp"

#include "gerbe/exactalg/echelon.hpp"

#include <atomic>
#include <vector>

namespace gerbe::modp {

namespace {

std::uint64_t fold(std::uint64_t x) {
  x = (x & kPrime) + (x >> 31);
  x = (x & kPrime) + (x >> 31);
  return x >= kPrime ? x - kPrime : x;
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(detected_isa())};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool has = __builtin_cpu_supports("avx2");
  return has ? Isa::avx2 : Isa::scalar;
#else
  return Isa::scalar;
#endif
}

Isa active_isa() { return static_cast<Isa>(active_slot().load()); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  active_slot().store(static_cast<int>(isa));
}

void axpy_scalar(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = fold(dst[i] + (src[i] & 0xffffffffu) * (c & 0xffffffffu));
}

void axpy(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c) {
  const std::size_t n = std::min(dst.size(), src.size());
  if (active_isa() == Isa::avx2)
    axpy_avx2(dst.data(), src.data(), c, n);
  else
    axpy_scalar(dst.data(), src.data(), c, n);
}

std::uint64_t reduce(const Int& x) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), kPrime);
  return r.get_ui();
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return fold(a * b); }

std::uint64_t inverse(std::uint64_t a) {
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a, e = kPrime - 2;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::optional<std::size_t> rank_mod_p(const QMatrix& A, Isa isa) {
  const std::size_t m = A.rows(), n = A.cols();
  if (m == 0 || n == 0) return 0;
  // Row-major dense image with rows = columns of A (rank is transpose-invariant), so that
  // the elimination sweeps contiguous rows of length m.
  std::vector<std::uint64_t> M(n * m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Int l = 1;
    for (const auto& e : A.col(j)) l = lcm_of(l, e.value.get_den());
    if (reduce(l) == 0) return std::nullopt;
    for (const auto& e : A.col(j)) {
      Rat s = e.value * l;
      M[j * m + e.index] = reduce(s.get_num());
    }
  }
  const auto kernel = isa == Isa::avx2 && detected_isa() == Isa::avx2 ? axpy_avx2 : axpy_scalar;
  std::size_t rank = 0;
  std::vector<char> used(n, 0);
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = 0; r < n; ++r)
      if (!used[r] && M[r * m + col] != 0) {
        piv = r;
        break;
      }
    if (piv == n) continue;
    used[piv] = 1;
    ++rank;
    const std::uint64_t inv = inverse(M[piv * m + col]);
    const std::uint64_t* src = &M[piv * m + col];
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r]) continue;
      const std::uint64_t a = M[r * m + col];
      if (a == 0) continue;
      const std::uint64_t c = kPrime - mul(a, inv);
      kernel(&M[r * m + col], src, c, m - col);
    }
  }
  return rank;
}

std::optional<std::size_t> rank_mod_p(const QMatrix& A) { return rank_mod_p(A, active_isa()); }

}  // namespace gerbe::modp

namespace gerbe {

std::size_t rank_fast(const QMatrix& A) {
  const std::size_t full = std::min(A.rows(), A.cols());
  constexpr std::size_t kDenseLimit = std::size_t{1} << 22;
  if (full > 0 && A.rows() * A.cols() <= kDenseLimit) {
    auto r = modp::rank_mod_p(A);
    if (r && *r == full) return full;
  }
  return rank_of(A);
}

}  // namespace gerbe
