#include "goed/bip.hpp"

#include <stdexcept>

namespace goed {

int Design::active_count() const {
  int k = 0;
  for (Index i = 0; i < weights.size(); ++i)
    if (weights[i] != 0.0) ++k;
  return k;
}

Design& Design::activate(Index i) {
  weights[i] = 1.0;
  return *this;
}

Design Design::with_sensor(Index i) const {
  Design d = *this;
  d.activate(i);
  return d;
}

std::uint64_t Design::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 0x100000001b3ULL;
  };
  for (Index i = 0; i < weights.size(); ++i) mix(weights[i] != 0.0 ? 0x9eULL + i : i);
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(double));
  std::memcpy(&bits, &noise_variance, sizeof(bits));
  mix(bits);
  return h;
}

void Design::validate() const {
  if (!(noise_variance > 0.0)) throw std::invalid_argument("Design: noise variance must be > 0");
  if (static_cast<Index>(candidates.size()) != weights.size())
    throw std::invalid_argument("Design: candidate/weight size mismatch");
  for (Index i = 0; i < weights.size(); ++i)
    if (weights[i] != 0.0 && weights[i] != 1.0)
      throw std::invalid_argument("Design: weights must be binary");
}

Design Design::empty(std::vector<Point> candidates, double noise_variance) {
  Design d;
  d.weights = Vector::Zero(static_cast<Index>(candidates.size()));
  d.noise_variance = noise_variance;
  d.candidates = std::move(candidates);
  return d;
}

Design Design::full(std::vector<Point> candidates, double noise_variance) {
  Design d = empty(std::move(candidates), noise_variance);
  d.weights.setOnes();
  return d;
}

ForwardMap::ForwardMap(std::shared_ptr<const LinearSystem> state,
                       std::shared_ptr<const MassMatrix> mass, ObservationOperator obs,
                       Vector offset)
    : state_(std::move(state)), mass_(std::move(mass)), obs_(std::move(obs)),
      offset_(std::move(offset)) {
  if (offset_.size() == 0) offset_ = Vector::Zero(obs_.num_sensors());
  if (offset_.size() != obs_.num_sensors())
    throw std::invalid_argument("ForwardMap: offset/observation size mismatch");
}

Vector ForwardMap::apply(const Vector& m) const {
  return obs_.apply(state_->solve_zero_bc(mass_->apply(m)));
}

Vector ForwardMap::apply_adjoint(const Vector& z) const {
  return state_->project_free(state_->solve_transpose(obs_.apply_transpose(z)));
}

InverseProblem::InverseProblem(ForwardMap forward, std::shared_ptr<const PriorOperator> prior,
                               Vector prior_mean, CgOptions cg)
    : forward_(std::move(forward)), prior_(std::move(prior)), prior_mean_(std::move(prior_mean)),
      cg_(cg) {
  if (prior_mean_.size() != forward_.state_dim())
    throw std::invalid_argument("InverseProblem: prior mean dimension mismatch");
}

Vector InverseProblem::apply_misfit_hessian(const Design& design, const Vector& v) const {
  const Vector fz = forward_.apply(v);
  return forward_.apply_adjoint(design.wsigma_diagonal().cwiseProduct(fz));
}

Vector InverseProblem::apply_preconditioned_misfit(const Design& design, const Vector& v) const {
  return prior_->apply_sqrt(apply_misfit_hessian(design, prior_->apply_sqrt(v)));
}

std::shared_ptr<const LinearMap> InverseProblem::misfit_map(const Design& design) const {
  return std::make_shared<FunctionMap>(FunctionMap::self_adjoint_map(
      dim(), [this, design](const Vector& v) { return apply_misfit_hessian(design, v); }));
}

std::shared_ptr<const LinearMap> InverseProblem::preconditioned_misfit_map(
    const Design& design) const {
  return std::make_shared<FunctionMap>(FunctionMap::self_adjoint_map(
      dim(), [this, design](const Vector& v) { return apply_preconditioned_misfit(design, v); }));
}

Vector InverseProblem::apply_gamma_po(const Design& design, const Vector& v,
                                      CgStats* stats) const {
  const FunctionMap op = FunctionMap::self_adjoint_map(dim(), [this, &design](const Vector& x) {
    return apply_misfit_hessian(design, x) + prior_->apply_inv_cov(x);
  });
  const FunctionMap prec = FunctionMap::self_adjoint_map(
      dim(), [this](const Vector& x) { return prior_->apply_cov(x); });
  return pcg_solve(op, mass(), v, &prec, cg_, stats);
}

std::shared_ptr<const LinearMap> InverseProblem::posterior_covariance_map(
    const Design& design) const {
  return std::make_shared<FunctionMap>(FunctionMap::self_adjoint_map(
      dim(), [this, design](const Vector& v) { return apply_gamma_po(design, v); }));
}

Vector InverseProblem::compute_map(const Design& design, const Vector& y) const {
  design.validate();
  if (y.size() != obs_dim())
    throw std::invalid_argument("compute_map: data must have full candidate-grid length");
  const Vector innov = y - forward_.offset();
  const Vector rhs = forward_.apply_adjoint(design.wsigma_diagonal().cwiseProduct(innov)) +
                     prior_->apply_inv_cov(prior_mean_);
  return apply_gamma_po(design, rhs);
}

Vector InverseProblem::objective_gradient(const Design& design, const Vector& y,
                                          const Vector& m) const {
  const Vector resid = forward_.observe(m) - y;
  return forward_.apply_adjoint(design.wsigma_diagonal().cwiseProduct(resid)) +
         prior_->apply_inv_cov(m - prior_mean_);
}

Vector InverseProblem::synthesize_data(const Vector& m_true, const Design& design,
                                       std::uint64_t seed, bool noiseless) const {
  Vector y = forward_.observe(m_true);
  if (!noiseless) {
    NormalStream rng(seed, 0x44415441ULL);
    y += std::sqrt(design.noise_variance) * rng.draw(obs_dim());
  }
  return y;
}

}  // namespace goed
