#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "features.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace graphdca {

struct GraphWaveParams {
  std::size_t cheb_order = 30;
  std::size_t num_sample_points = 25;
  double sample_max = 100.0;
  double eta = 0.85;
  double gamma = 0.95;
  std::optional<std::pair<double, double>> scales;  // overrides the automatic choice

  void validate() const
  {
    if (cheb_order < 1) throw std::invalid_argument("cheb_order must be >= 1");
    if (num_sample_points < 2) throw std::invalid_argument("num_sample_points must be >= 2");
    if (!(sample_max > 0.0)) throw std::invalid_argument("sample_max must be positive");
    if (!(eta > 0.0 && gamma < 1.0 && eta < gamma)) {
      throw std::invalid_argument("need 0 < eta < gamma < 1");
    }
    if (scales && !(scales->first > 0.0 && scales->second > 0.0)) {
      throw std::invalid_argument("explicit scales must be positive");
    }
  }

  std::string digest() const
  {
    std::ostringstream s;
    s << "cheb_order=" << cheb_order << ";samples=" << num_sample_points
      << ";sample_max=" << sample_max << ";eta=" << eta << ";gamma=" << gamma;
    if (scales) s << ";scales=" << scales->first << ':' << scales->second;
    return s.str();
  }
};

/// Combinatorial Laplacian D - A.
inline Eigen::SparseMatrix<double> laplacian(const Graph& g)
{
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(g.num_nodes() + 2 * g.num_edges());
  for (Node v = 0; v < g.num_nodes(); ++v) {
    entries.emplace_back(v, v, static_cast<double>(g.degree(v)));
  }
  for (const auto& e : g.edges()) {
    entries.emplace_back(e.u, e.v, -1.0);
    entries.emplace_back(e.v, e.u, -1.0);
  }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(entries.begin(), entries.end());
  return L;
}

struct LaplacianExtremes {
  double lambda2 = 0.0;     // algebraic connectivity
  double lambda_max = 0.0;
};

namespace detail {

inline Eigen::VectorXd start_vector(Eigen::Index n)
{
  Rng rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = unit(rng);
  return v;
}

/// Largest eigenvalue by Lanczos with full reorthogonalization.
inline double lanczos_max(const Eigen::SparseMatrix<double>& L)
{
  const Eigen::Index n = L.rows();
  const Eigen::Index steps = std::min<Eigen::Index>(n, 150);
  Eigen::MatrixXd basis(n, steps);
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd q = start_vector(n).normalized();
  for (Eigen::Index k = 0; k < steps; ++k) {
    basis.col(k) = q;
    Eigen::VectorXd w = L * q;
    alpha.push_back(q.dot(w));
    // two passes of classical Gram-Schmidt against the whole basis
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    }
    const double b = w.norm();
    if (k + 1 == steps || b < 1e-12 * std::max(1.0, std::abs(alpha.back()))) break;
    beta.push_back(b);
    q = w / b;
  }
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
  if (m == 1) return diag[0];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return tri.eigenvalues().maxCoeff();
}

/// Smallest nonzero eigenvalue by inverse iteration on the complement of
/// the constant vector, using a sparse LDL^T factorization of L + shift*I.
inline double inverse_iteration_lambda2(const Eigen::SparseMatrix<double>& L, double lambda_max)
{
  const Eigen::Index n = L.rows();
  Eigen::SparseMatrix<double> shifted = L;
  const double shift = 1e-9 * lambda_max;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Laplacian factorization failed");

  Eigen::VectorXd x = start_vector(n);
  x.array() -= x.mean();
  x.normalize();
  double rayleigh = x.dot(L * x);
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd y = solver.solve(x);
    y.array() -= y.mean();
    x = y.normalized();
    const double next = x.dot(L * x);
    const bool done = std::abs(next - rayleigh) <= 1e-13 * std::abs(next);
    rayleigh = next;
    if (done) break;
  }
  return rayleigh;
}

} // namespace detail

/// lambda2 and lambda_max of the combinatorial Laplacian of a connected graph.
inline LaplacianExtremes laplacian_extremes(const Graph& g)
{
  if (g.num_nodes() < 2) throw std::invalid_argument("laplacian_extremes needs >= 2 nodes");
  if (!is_connected(g)) throw std::invalid_argument("laplacian_extremes requires a connected graph");
  const auto L = laplacian(g);
  LaplacianExtremes out;
  out.lambda_max = detail::lanczos_max(L);
  out.lambda2 = detail::inverse_iteration_lambda2(L, out.lambda_max);
  return out;
}

/// Heat scales from the geometric mean of lambda2 and lambda_max:
/// s_min = -ln(gamma)/lbar, s_max = -ln(eta)/lbar.
inline std::pair<double, double> auto_scales(double lambda2, double lambda_max, double eta, double gamma)
{
  if (!(eta > 0.0 && gamma < 1.0 && eta < gamma)) throw std::invalid_argument("need 0 < eta < gamma < 1");
  const double lbar = std::sqrt(lambda2 * lambda_max);
  if (!(lbar > 0.0)) throw std::invalid_argument("auto_scales needs positive spectrum bounds");
  return {-std::log(gamma) / lbar, -std::log(eta) / lbar};
}

inline std::pair<double, double> auto_scales(const Graph& g, double eta, double gamma)
{
  auto ext = laplacian_extremes(g);
  return auto_scales(ext.lambda2, ext.lambda_max, eta, gamma);
}

/// Chebyshev coefficients c_0..c_order of exp(-s*lambda) on [0, lambda_max]
/// by Gauss-Chebyshev quadrature; f ~ c_0/2 + sum_k c_k T_k.
inline std::vector<double> heat_chebyshev_coefficients(double s, double lambda_max, std::size_t order,
                                                       std::size_t quadrature_points = 1000)
{
  std::vector<double> c(order + 1, 0.0);
  const double m = static_cast<double>(quadrature_points);
  for (std::size_t j = 0; j < quadrature_points; ++j) {
    const double theta = std::numbers::pi * (static_cast<double>(j) + 0.5) / m;
    const double lambda = (std::cos(theta) + 1.0) * lambda_max / 2.0;
    const double f = std::exp(-s * lambda);
    for (std::size_t k = 0; k <= order; ++k) c[k] += f * std::cos(static_cast<double>(k) * theta);
  }
  for (auto& ck : c) ck *= 2.0 / m;
  return c;
}

/// Chebyshev approximation of exp(-s L); column n is the wavelet centered at n.
inline Eigen::MatrixXd heat_wavelets(const Graph& g, double s, std::size_t order, double lambda_max)
{
  if (!(s > 0.0)) throw std::invalid_argument("heat scale must be positive");
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const auto coeff = heat_chebyshev_coefficients(s, lambda_max, order);

  Eigen::SparseMatrix<double> shifted = laplacian(g) * (2.0 / lambda_max);
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= 1.0;

  Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd psi = prev * (coeff[0] / 2.0);
  if (order == 0) return psi;
  Eigen::MatrixXd cur = Eigen::MatrixXd(shifted);
  psi += coeff[1] * cur;
  for (std::size_t k = 2; k <= order; ++k) {
    Eigen::MatrixXd next = 2.0 * (shifted * cur) - prev;
    psi += coeff[k] * next;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return psi;
}

inline Eigen::MatrixXd heat_wavelets(const Graph& g, double s, std::size_t order = 30)
{
  return heat_wavelets(g, s, order, laplacian_extremes(g).lambda_max);
}

/// Characteristic-function embedding of the heat wavelets at two scales:
/// per scale, [Re phi(t_0..t_k), Im phi(t_0..t_k)] with t_j evenly spaced on
/// [0, sample_max]. 100 columns with default parameters.
inline FeatureMatrix graphwave_features(const Graph& g, const GraphWaveParams& params = {},
                                        std::size_t threads = 0)
{
  params.validate();
  if (g.num_nodes() < 2) throw std::invalid_argument("graphwave needs >= 2 nodes");
  if (!is_connected(g)) {
    throw std::invalid_argument("graphwave requires a connected graph; preprocess to the LCC first");
  }
  const auto ext = laplacian_extremes(g);
  auto scales = params.scales ? *params.scales
                              : auto_scales(ext.lambda2, ext.lambda_max, params.eta, params.gamma);

  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const auto samples = static_cast<Eigen::Index>(params.num_sample_points);
  std::vector<double> t(params.num_sample_points);
  for (std::size_t j = 0; j < t.size(); ++j) {
    t[j] = params.sample_max * static_cast<double>(j) / static_cast<double>(t.size() - 1);
  }

  Eigen::MatrixXd out(n, 4 * samples);
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::Index base = 0;
  for (double s : {scales.first, scales.second}) {
    const Eigen::MatrixXd psi = heat_wavelets(g, s, params.cheb_order, ext.lambda_max);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t node) {
      const auto col = static_cast<Eigen::Index>(node);
      for (Eigen::Index j = 0; j < samples; ++j) {
        const double tj = t[static_cast<std::size_t>(j)];
        double re = 0.0;
        double im = 0.0;
        for (Eigen::Index m = 0; m < n; ++m) {
          const double a = tj * psi(m, col);
          re += std::cos(a);
          im += std::sin(a);
        }
        out(col, base + j) = re * inv_n;
        out(col, base + samples + j) = im * inv_n;
      }
    });
    base += 2 * samples;
  }
  std::ostringstream digest;
  digest << params.digest() << ";used_scales=" << scales.first << ':' << scales.second;
  FeatureMatrix fm{std::move(out), "graphwave", digest.str()};
  fm.check_finite();
  return fm;
}

} // namespace graphdca
