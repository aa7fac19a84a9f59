#pragma once

#include <cstdint>
#include <memory>

#include "goed/cg.hpp"
#include "goed/fem.hpp"
#include "goed/prior.hpp"

namespace goed {

/// Binary sensor activation over the candidate grid plus the noise level.
/// Data vectors always have full length d; inactive sensors enter through
/// zero weights in W_sigma rather than being dropped.
struct Design {
  Vector weights;  // entries in {0,1}
  double noise_variance = 0.0;
  std::vector<Point> candidates;

  Index dim() const { return weights.size(); }
  int active_count() const;
  bool is_active(Index i) const { return weights[i] != 0.0; }
  Design& activate(Index i);
  Design with_sensor(Index i) const;
  std::uint64_t hash() const;
  void validate() const;

  /// sigma^{-2} w_i, the diagonal of W_sigma.
  Vector wsigma_diagonal() const { return weights / noise_variance; }

  static Design empty(std::vector<Point> candidates, double noise_variance);
  static Design full(std::vector<Point> candidates, double noise_variance);
};

/// Affine parameter-to-observable map G(m) = F m + d, with F = B o S the
/// composition of the PDE solution operator (homogeneous Dirichlet data) and
/// pointwise observation.  The offset d carries inhomogeneous boundary data.
/// Adjoints satisfy <F m, z>_2 = <m, F* z>_M.
class ForwardMap {
 public:
  ForwardMap(std::shared_ptr<const LinearSystem> state, std::shared_ptr<const MassMatrix> mass,
             ObservationOperator obs, Vector offset = Vector());

  Index state_dim() const { return mass_->dim(); }
  Index obs_dim() const { return obs_.num_sensors(); }
  const ObservationOperator& observation() const { return obs_; }
  const Vector& offset() const { return offset_; }
  const MassMatrix& mass() const { return *mass_; }
  const LinearSystem& state_system() const { return *state_; }

  /// F m (linear part).
  Vector apply(const Vector& m) const;
  /// F* z = C A^{-T} B^T z (one transposed solve, constrained entries zeroed).
  Vector apply_adjoint(const Vector& z) const;
  /// G(m) = F m + d.
  Vector observe(const Vector& m) const { return apply(m) + offset_; }

  long solve_count() const { return state_->solve_count(); }

 private:
  std::shared_ptr<const LinearSystem> state_;
  std::shared_ptr<const MassMatrix> mass_;
  ObservationOperator obs_;
  Vector offset_;
};

/// The linear Bayesian inverse problem: prior, forward map, design-weighted
/// posterior.  All operator applications are matrix-free; the posterior
/// covariance is applied by prior-preconditioned CG on
/// (F* W_sigma F + C_pr^{-1}) x = v.
class InverseProblem {
 public:
  InverseProblem(ForwardMap forward, std::shared_ptr<const PriorOperator> prior,
                 Vector prior_mean, CgOptions cg = {});

  Index dim() const { return forward_.state_dim(); }
  Index obs_dim() const { return forward_.obs_dim(); }
  const ForwardMap& forward() const { return forward_; }
  const PriorOperator& prior() const { return *prior_; }
  const Vector& prior_mean() const { return prior_mean_; }
  const MassMatrix& mass() const { return prior_->mass(); }
  const CgOptions& cg_options() const { return cg_; }

  /// H_mis(w) v = F* W_sigma F v.
  Vector apply_misfit_hessian(const Design& design, const Vector& v) const;
  /// Htilde_mis(w) v = E F* W_sigma F E v.
  Vector apply_preconditioned_misfit(const Design& design, const Vector& v) const;
  std::shared_ptr<const LinearMap> misfit_map(const Design& design) const;
  std::shared_ptr<const LinearMap> preconditioned_misfit_map(const Design& design) const;

  /// Gamma_po(w) v by preconditioned CG; throws CgError on stagnation.
  Vector apply_gamma_po(const Design& design, const Vector& v, CgStats* stats = nullptr) const;
  std::shared_ptr<const LinearMap> posterior_covariance_map(const Design& design) const;

  /// MAP point Gamma_po(w) (F* W_sigma (y - d) + C_pr^{-1} m_pr).
  Vector compute_map(const Design& design, const Vector& y) const;

  /// M-Riesz gradient of the regularized misfit J at m.
  Vector objective_gradient(const Design& design, const Vector& y, const Vector& m) const;

  /// y = F m_true + d + sigma eta with eta standard normal (substreams of
  /// seed); `noiseless` gives the exact sigma -> 0 limit.
  Vector synthesize_data(const Vector& m_true, const Design& design, std::uint64_t seed,
                         bool noiseless = false) const;

 private:
  ForwardMap forward_;
  std::shared_ptr<const PriorOperator> prior_;
  Vector prior_mean_;
  CgOptions cg_;
};

}  // namespace goed
