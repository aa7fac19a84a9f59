#include "goed/prior.hpp"

#include <stdexcept>

namespace goed {

PriorOperator::PriorOperator(const Mesh& mesh, std::shared_ptr<const MassMatrix> mass, double a1,
                             double a2)
    : mass_(std::move(mass)), a1_(a1), a2_(a2), counter_(std::make_shared<std::atomic<long>>(0)) {
  if (!(a1 > 0.0) || !(a2 > 0.0))
    throw std::invalid_argument("PriorOperator: a1 and a2 must be positive");
  r_ = SparseMatrix(a1_ * (mass_->matrix() + SparseMatrix(a2_ * assemble_stiffness(mesh, 1.0))));
  ldlt_.compute(r_);
  if (ldlt_.info() != Eigen::Success)
    throw std::runtime_error("PriorOperator: factorization of the prior operator failed");
}

Vector PriorOperator::apply_sqrt(const Vector& v) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return ldlt_.solve(mass_->apply(v));
}

Vector PriorOperator::apply_cov(const Vector& v) const { return apply_sqrt(apply_sqrt(v)); }

Vector PriorOperator::apply_inv_cov(const Vector& v) const {
  return mass_->solve(r_ * mass_->solve(r_ * v));
}

Vector PriorOperator::sample(const Vector& mean, NormalStream& rng) const {
  const Vector xi = mass_->sample_white(rng);
  counter_->fetch_add(1, std::memory_order_relaxed);
  return mean + ldlt_.solve(mass_->apply(xi));
}

std::vector<Vector> PriorOperator::sample_prior(const Vector& mean, int count,
                                                std::uint64_t seed) const {
  if (count < 0) throw std::invalid_argument("sample_prior: negative count");
  std::vector<Vector> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    NormalStream rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample(mean, rng));
  }
  return out;
}

GaussianMeasure PriorOperator::measure(Vector mean) const {
  GaussianMeasure mu;
  mu.mean = std::move(mean);
  mu.covariance = covariance_map();
  mu.sqrt_covariance = sqrt_covariance_map();
  return mu;
}

std::shared_ptr<const LinearMap> PriorOperator::covariance_map() const {
  return std::make_shared<FunctionMap>(FunctionMap::self_adjoint_map(
      dim(), [this](const Vector& v) { return apply_cov(v); }));
}

std::shared_ptr<const LinearMap> PriorOperator::sqrt_covariance_map() const {
  return std::make_shared<FunctionMap>(FunctionMap::self_adjoint_map(
      dim(), [this](const Vector& v) { return apply_sqrt(v); }));
}

}  // namespace goed
