#pragma once

#include "gerbe/homalg/complex.hpp"
#include "gerbe/homalg/double_complex.hpp"
#include "gerbe/homalg/homology.hpp"
#include "gerbe/homalg/mixed_group.hpp"
#include "gerbe/site/cochains.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace gerbe {

// An n-gerbe with connection data up to level k (0 <= k <= n + 1), or with a flat connection.
// The flat marker is stored as k = n + 2.
struct DelignePars {
  int n = 0;
  int k = 0;
  bool flat = false;

  static DelignePars flat_marker(int n) { return {n, n + 2, true}; }

  // Index of the last form row: k, or n + 1 when flat.
  int top() const { return flat ? n + 1 : k; }
  // Throws std::invalid_argument on a range violation.
  void validate() const;
  std::string to_string() const;

  friend auto operator<=>(const DelignePars&, const DelignePars&) = default;
};

// Levelwise element of a Deligne total complex split by rows: the Z-row component and one
// component per form row j, each in the Čech column fixed by the level. Form components are
// full patchwise cochains, also on the closed-cochain row of the flat marker.
struct RowComponents {
  IntVector z;
  std::vector<QVector> forms;
  friend bool operator==(const RowComponents&, const RowComponents&) = default;
};

// The Čech–Deligne double complex of the Z-model over the closed-star cover: row Z in degree
// n + 2 and rows C^0 ... C^top in degrees n + 1 ... n + 1 - top, with its total complex.
class DeligneComplex {
 public:
  DeligneComplex(const StarSite& site, DelignePars pars);

  const StarSite& site() const { return *site_; }
  const DelignePars& pars() const { return pars_; }
  const DoubleComplexZQ& double_complex() const { return D_; }
  const TotalComplex& total() const { return T_; }
  // τ≥0 of the total complex.
  const ZQComplex& truncated() const { return truncated_; }

  // Row degree of the Z row and of form row j.
  int z_degree() const { return pars_.n + 2; }
  int form_degree(int j) const { return pars_.n + 1 - j; }
  // Čech column of the Z row and of form row j at level t (may be out of range).
  int z_column(int t) const { return z_degree() - t; }
  int form_column(int j, int t) const { return form_degree(j) - t; }

  std::size_t z_size(int t) const;
  std::size_t form_size(int j, int t) const;

  ZQVector pack(int t, const RowComponents& x) const;
  RowComponents unpack(int t, const ZQVector& x) const;
  RowComponents zero_components(int t) const;

 private:
  bool closed_row(int j) const { return pars_.flat && j == pars_.n + 1; }

  const StarSite* site_;
  DelignePars pars_;
  DoubleComplexZQ D_;
  TotalComplex T_;
  ZQComplex truncated_;
  // Flat marker: per Čech degree, the RREF basis of the closed (n+1)-cochains.
  std::vector<KernelRref> closed_;
};

// Read-only memo of Deligne complexes over one site; safe for concurrent use.
class DeligneCache {
 public:
  explicit DeligneCache(const StarSite& site) : site_(&site) {}

  const StarSite& site() const { return *site_; }
  std::shared_ptr<const DeligneComplex> get(const DelignePars& pars) const;

 private:
  const StarSite* site_;
  mutable std::mutex mutex_;
  mutable std::map<DelignePars, std::shared_ptr<const DeligneComplex>> cache_;
};

ZQComplex build_deligne_complex(const StarSite& site, const DelignePars& pars);
// π_i of the stack of n-gerbes with k-connection: H_i of the truncated total complex.
MixedGroup gerbe_pi(const StarSite& site, const DelignePars& pars, int i);

// The simplicial cochain complex of M with Z coefficients placed as the Z row of a Deligne
// complex for n: C^p(M) at level n + 2 - p.
ZQComplex class_complex(const StarSite& site, int n);

// Forgets the rows below l (the levelwise projection p^k_l), or every form row for l = -1,
// landing in class_complex. When the source is flat and l = n + 1 the top row is included.
ChainMap projection_map(const DeligneComplex& A, const DeligneComplex& C);
ChainMap class_map(const DeligneComplex& A, const ZQComplex& target);

struct ProjectionReport {
  MixedGroup source;
  MixedGroup target;
  HomologyMap map;
  std::string to_string() const;
};

// The map induced by p^k_l on π_0.
ProjectionReport pi0_projection_check(const StarSite& site, int n, int k, int l);
// The map π_i(Deligne(pars)) -> H^{n+2-i}(M;Z) forgetting every form row.
ProjectionReport class_comparison(const StarSite& site, const DelignePars& pars, int i);

}  // namespace gerbe
