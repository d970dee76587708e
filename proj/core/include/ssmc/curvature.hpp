#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "ssmc/connection.hpp"

namespace ssmc {

/// Curvature family: the Levi-Civita one and the six built from ∇¹.
enum class Kind { G, K0, K1, K2, K3, K4, K5 };

inline constexpr std::array<Kind, 7> kAllKinds{Kind::G,  Kind::K0, Kind::K1, Kind::K2,
                                               Kind::K3, Kind::K4, Kind::K5};
inline constexpr std::array<Kind, 6> kTorsionKinds{Kind::K0, Kind::K1, Kind::K2,
                                                   Kind::K3, Kind::K4, Kind::K5};

/// "g", "0", ..., "5".
std::string_view kind_label(Kind k) noexcept;

struct CurvatureFamily {
  Tensor riemann;   ///< (l,k,i,j): R(e_i,e_j)e_k = R^l_kij e_l
  Tensor ricci;     ///< (j,k)
  double scalar = 0.0;
  Tensor einstein;  ///< Ric − (r/n) g
};

struct CurvatureBundle {
  std::vector<double> point;
  Tensor g;
  Tensor ginv;
  Tensor nabla1_torsion;  ///< (l,j,k,i) = (∇¹_i T)^l_jk
  std::array<CurvatureFamily, 7> families;

  std::size_t dim() const noexcept { return g.dim(); }
  const CurvatureFamily& operator[](Kind k) const { return families[static_cast<int>(k)]; }
  CurvatureFamily& operator[](Kind k) { return families[static_cast<int>(k)]; }
};

/// How the zeroth curvature tensor is assembled. `AsPrinted` carries both the
/// cyclic −¼𝔖T(T(X,Y),Z) term and the standalone −¼T(T(X,Y),Z) term;
/// `SingleQuarter` drops the standalone one. Only `AsPrinted` reproduces the
/// closed-form Ric⁰.
enum class R0Variant { AsPrinted, SingleQuarter };

CurvatureBundle curvature_family(const SSConnection& c,
                                 R0Variant variant = R0Variant::AsPrinted);

/// Ric^θ predicted from Ric^g, ω, π(P) and π⊗π.
Tensor closed_form_ricci(Kind k, const SSConnection& c);
/// r^θ predicted from r^g, ω and π(P).
double closed_form_scalar(Kind k, const SSConnection& c);

/// Right-hand side of E^θ in terms of E^g, π(P) and π⊗π.
Tensor einstein_relation_rhs(Kind k, const Tensor& einstein_g, const Tensor& g,
                             const Tensor& pi, double pi_P);

/// Traceless part of a symmetric 2-tensor: A − (g^{ij}A_ij / n) g.
Tensor traceless(const Tensor& a, const Tensor& g, const Tensor& ginv);

struct EinsteinRelations {
  std::vector<NamedResidual> residuals;  ///< one per θ = 0..5
  /// E¹ = E² = E³ = E^g: the traceless Ricci tensor is unchanged by the
  /// passage from ∇ to ∇¹.
  bool invariant = false;
};

EinsteinRelations einstein_relations(const CurvatureBundle& b, const SSConnection& c,
                                     double tol = kDefaultTolerance);

/// Residual of the assembled Ric⁰ against its closed form, for each variant.
struct R0VariantReport {
  double as_printed = 0.0;
  double single_quarter = 0.0;
  R0Variant canonical = R0Variant::AsPrinted;
};

R0VariantReport r0_variant_report(const SSConnection& c);

}  // namespace ssmc
