#include "gerbe/exactalg/modp.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define GERBE_HAVE_X86 1
#endif

namespace gerbe::modp {

#ifdef GERBE_HAVE_X86

__attribute__((target("avx2"))) void axpy_avx2(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c,
                                                std::size_t n) {
  const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(kPrime));
  const __m256i vpm1 = _mm256_set1_epi64x(static_cast<long long>(kPrime - 1));
  const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(c));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    // Both factors are below 2^31, so the unsigned 32x32 product is exact.
    __m256i x = _mm256_add_epi64(_mm256_mul_epu32(s, vc), d);
    x = _mm256_add_epi64(_mm256_and_si256(x, vp), _mm256_srli_epi64(x, 31));
    x = _mm256_add_epi64(_mm256_and_si256(x, vp), _mm256_srli_epi64(x, 31));
    // x <= p now; map p to 0.
    __m256i ge = _mm256_cmpgt_epi64(x, vpm1);
    x = _mm256_sub_epi64(x, _mm256_and_si256(ge, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), x);
  }
  if (i < n) axpy_scalar(dst + i, src + i, c, n - i);
}

#else

void axpy_avx2(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, std::size_t n) {
  axpy_scalar(dst, src, c, n);
}

#endif

}  // namespace gerbe::modp
