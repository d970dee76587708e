#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssmc/curvature.hpp"

namespace ssmc {

enum class Status { Pass, Fail, Indeterminate };

std::string_view status_label(Status s) noexcept;

struct Verdict {
  Status status = Status::Fail;
  double residual = 0.0;

  bool pass() const noexcept { return status == Status::Pass; }
};

/// Conjunction over points: any Fail fails, else any Indeterminate is
/// indeterminate, else pass. Residual is the maximum.
Verdict conjoin(std::span<const Verdict> verdicts);

/// min/max of a fitted scalar over sample points.
struct Spread {
  double min = 0.0;
  double max = 0.0;

  double width() const noexcept { return max - min; }
  void add(double v, bool first);
};

// --------------------------------------------------------------------------
// Vector-field taxonomy

/// Pointwise least-squares fit of ∇_X P = ω X + η(X) P.
struct TorseFit {
  double omega = 0.0;
  Tensor eta;       ///< η_i
  Tensor deta;      ///< (i,l) = ∂_l η_i, from the differentiated normal equations
  double residual = 0.0;
  bool identifiable = false;  ///< false when P = 0
};

TorseFit fit_torse_forming(const MetricSpec& metric, const VectorFieldSpec& P,
                           std::span<const double> point);

struct VectorFlags {
  Verdict torse_forming;
  Verdict torqued;              ///< η(P) = 0
  Verdict concircular_fialkow;  ///< η = 0
  Verdict concircular_yano;     ///< dη = 0
  Verdict recurrent;            ///< ω = 0
  Verdict concurrent;           ///< η = 0, ω = 1
  Verdict parallel;             ///< η = 0, ω = 0
  Verdict self_torse_forming;   ///< η = π
  Verdict anti_torqued;         ///< η = −ω π
  Verdict geodesic;             ///< ∇_P P = 0
  Verdict unit_timelike;        ///< g(P,P) = −1
  Verdict unit_form;            ///< (∇_X π)(Y) = ω(g − ε π⊗π) for unit P
  Verdict conformal_killing;    ///< L_P g = 2 c g
  Verdict killing;              ///< c = 0

  /// (name, verdict) pairs in declaration order.
  std::vector<std::pair<std::string, Verdict>> named() const;
};

struct VectorPointReport {
  TorseFit fit;
  double conformal_factor = 0.0;
  VectorFlags flags;
};

struct VectorTaxonomy {
  std::vector<VectorPointReport> points;
  VectorFlags aggregate;
  Spread omega;
  Spread conformal_factor;
};

VectorPointReport classify_vector_at(const MetricSpec& metric, const VectorFieldSpec& P,
                                     std::span<const double> point,
                                     double tol = kDefaultTolerance);

VectorTaxonomy classify_vector(const MetricSpec& metric, const VectorFieldSpec& P,
                               std::span<const std::vector<double>> points,
                               double tol = kDefaultTolerance);

/// Implication lattice of the taxonomy; returns the violated implications.
std::vector<std::string> taxonomy_violations(const VectorFlags& f);

// --------------------------------------------------------------------------
// Manifold classification on Ricci data

/// Ricci data at a point, decoupled from where the Ricci tensor came from.
struct RicciData {
  Tensor g;
  Tensor ric;
  Tensor pi;

  std::size_t dim() const noexcept { return g.dim(); }
};

RicciData ricci_data(const CurvatureBundle& b, const SSConnection& c, Kind k = Kind::G);

/// g^{ij} π_i π_j.
double pi_norm2(const RicciData& d);

/// Least-squares fit A = a g + b π⊗π.
struct QuasiEinsteinFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
  bool b_identifiable = true;  ///< false when π = 0 (b forced to 0)
  bool einstein = false;       ///< traceless part vanishes
  double einstein_residual = 0.0;
};

QuasiEinsteinFit fit_quasi_einstein(const Tensor& g, const Tensor& a, const Tensor& pi,
                                    double tol = kDefaultTolerance);

struct QuasiEinsteinReport {
  std::vector<QuasiEinsteinFit> points;
  Verdict quasi_einstein;
  Verdict einstein;
  Spread a;
  Spread b;
};

QuasiEinsteinReport classify_quasi_einstein(std::span<const RicciData> data,
                                            double tol = kDefaultTolerance);

/// E^θ = 0 from an assembled bundle.
Verdict einstein_type(Kind k, const CurvatureBundle& b, double tol = kDefaultTolerance);
/// E^θ = 0 from Ricci data through the Einstein-tensor relations.
Verdict einstein_type(Kind k, const RicciData& d, double tol = kDefaultTolerance);

/// Quasi-Einstein form equivalent to E^θ = 0 for θ ∈ {0, 4, 5}, given r.
Tensor quasi_einstein_form(Kind k, const RicciData& d, double r);

struct EquivalenceReport {
  Verdict einstein_type;  ///< E^θ = 0
  Verdict form;           ///< Ric matches quasi_einstein_form
  bool consistent = false;  ///< both directions agree
};

/// θ ∈ {0, 4, 5}. Throws for other kinds.
EquivalenceReport qe_equivalences(Kind k, const RicciData& d, double r,
                                          double tol = kDefaultTolerance);

/// Constant-scalar-curvature forms for GRW space-times of Einstein type
/// θ ∈ {0, 4, 5}: Ric = a g + b π⊗π with scalar curvature r.
struct GrwEinsteinTypeForm {
  double a;
  double b;
  double r;
};

GrwEinsteinTypeForm grw_einstein_type_form(Kind k, std::size_t n);

// --------------------------------------------------------------------------
// GRW detection and identities

struct GrwPointReport {
  bool lorentzian = false;
  double unit_residual = 0.0;    ///< |g(P,P) + 1|
  double torse_residual = 0.0;   ///< ∇_X P − X − π(X)P
  double omega_residual = 0.0;   ///< |ω − 1|
  double nabla1_P = 0.0;         ///< max |∇¹P|
  Verdict verdict;
};

GrwPointReport grw_point(const SSConnection& c, double tol = kDefaultTolerance);

struct GrwReport {
  std::vector<GrwPointReport> points;
  Verdict verdict;
};

GrwReport grw_detect(const MetricSpec& metric, const VectorFieldSpec& P,
                     std::span<const std::vector<double>> points,
                     double tol = kDefaultTolerance);

/// Identities valid on a GRW space-time with its P-connection. Empty when the
/// GRW precondition fails at this point.
std::optional<std::vector<NamedResidual>> grw_identity_suite(const CurvatureBundle& b,
                                                             const SSConnection& c,
                                                             double tol = kDefaultTolerance);

/// Lower bounds showing Ric⁰, Ric⁴, Ric⁵ do not vanish: each entry is
/// max|Ric^θ| / bound_θ with bound_θ = λ_θ / ‖P‖₁², λ = (n−1)/4, n−1, (n−1)/2.
/// Values ≥ 1 certify a non-zero tensor.
std::vector<NamedResidual> grw_nonvanishing(const CurvatureBundle& b, const SSConnection& c);

struct PerfectFluidFit {
  QuasiEinsteinFit fit;
  Verdict perfect_fluid;
  /// θ = g only: |a − b − (n−1)| and the r/(n−1) rewrite residual.
  std::optional<double> a_minus_b_residual;
  std::optional<double> rewrite_residual;
};

PerfectFluidFit perfect_fluid_kind(Kind k, const CurvatureBundle& b, const SSConnection& c,
                                   double tol = kDefaultTolerance);

}  // namespace ssmc
