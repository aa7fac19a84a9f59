#include "goed/rsvd.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <stdexcept>

namespace goed {

namespace {

Matrix euclid_orth(const Matrix& y) {
  Eigen::HouseholderQR<Matrix> qr(y);
  return qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
}

// Cholesky QR in the M inner product: returns V with V^T M V = I spanning
// the columns of w; r (optional) receives the triangular factor, w = V r.
Matrix m_orth(const Matrix& w, const MassMatrix& mass, Matrix* r_out = nullptr) {
  Matrix v = w;
  Matrix r = Matrix::Identity(w.cols(), w.cols());
  for (int pass = 0; pass < 2; ++pass) {
    Matrix gram = v.transpose() * (mass.matrix() * v);
    gram = 0.5 * (gram + gram.transpose());
    // tiny diagonal lift keeps the factorization alive for rank-deficient blocks
    gram.diagonal().array() += 1e-300;
    Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success) {
      gram.diagonal().array() += 1e-14 * gram.diagonal().maxCoeff();
      llt.compute(gram);
    }
    const Matrix lt = llt.matrixU();
    v = lt.transpose().template triangularView<Eigen::Lower>().solve(v.transpose()).transpose();
    r = lt * r;
  }
  if (r_out) *r_out = r;
  return v;
}

Matrix apply_cols(const LinearMap& op, const Matrix& x, bool adjoint) {
  Matrix y(adjoint ? op.in_dim() : op.out_dim(), x.cols());
  for (Index j = 0; j < x.cols(); ++j)
    y.col(j) = adjoint ? op.adjoint_apply(x.col(j)) : op.apply(x.col(j));
  return y;
}

}  // namespace

LowRankSvd randomized_svd(const LinearMap& op, const MassMatrix& mass, int rank,
                          const RsvdOptions& opts) {
  const Index n = op.in_dim();
  const Index d = op.out_dim();
  const Index maxrank = std::min(n, d);
  if (rank < 1 || rank > maxrank)
    throw std::invalid_argument("randomized_svd: rank exceeds min(out_dim, in_dim)");
  if (opts.oversample < 0) throw std::invalid_argument("randomized_svd: oversample must be >= 0");

  const Index l = std::min<Index>(rank + opts.oversample, maxrank);

  NormalStream rng(opts.seed, 0x52535644ULL);
  Matrix omega(n, l);
  for (Index j = 0; j < l; ++j) omega.col(j) = rng.draw(n);

  Matrix q = euclid_orth(apply_cols(op, omega, false));
  for (int it = 0; it < opts.power_iterations; ++it) {
    const Matrix z = m_orth(apply_cols(op, q, true), mass);
    q = euclid_orth(apply_cols(op, z, false));
  }

  // op ~ Q Q^T op = Q W^*  with  W = op^* Q
  Matrix rw;
  const Matrix w = apply_cols(op, q, true);
  const Matrix v0 = m_orth(w, mass, &rw);

  Eigen::JacobiSVD<Matrix> svd(q * rw.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);

  LowRankSvd out;
  out.left = svd.matrixU().leftCols(rank);
  out.singular_values = svd.singularValues().head(rank);
  out.right = v0 * svd.matrixV().leftCols(rank);
  out.tail_estimate = l > rank ? svd.singularValues()[rank] : 0.0;
  return out;
}

}  // namespace goed
