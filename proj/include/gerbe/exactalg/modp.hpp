#pragma once

#include "gerbe/exactalg/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Arithmetic modulo the Mersenne prime 2^31 - 1. Used for fast rank lower bounds: rank over
// F_p never exceeds rank over Q, so a full F_p rank certifies the rational rank.
namespace gerbe::modp {

inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 31) - 1;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
// Best instruction set supported by the running CPU.
Isa detected_isa();
// Instruction set used by the dispatched entry points (defaults to detected_isa()).
Isa active_isa();
void set_active_isa(Isa isa);

// dst[i] = (dst[i] + c * src[i]) mod p, all inputs already reduced.
void axpy_scalar(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, std::size_t n);
void axpy_avx2(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, std::size_t n);
void axpy(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c);

std::uint64_t reduce(const Int& x);
std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t inverse(std::uint64_t a);

// Rank over F_p of A with each column scaled to clear denominators; nullopt if a scaled
// denominator vanishes mod p (cannot happen for p larger than every denominator prime).
std::optional<std::size_t> rank_mod_p(const QMatrix& A, Isa isa);
std::optional<std::size_t> rank_mod_p(const QMatrix& A);

}  // namespace gerbe::modp

namespace gerbe {

// Exact rank over Q; uses the modular certificate when it proves full rank.
std::size_t rank_fast(const QMatrix& A);

}  // namespace gerbe
