#pragma once

// Central finite differences.

#include <Eigen/Core>

#include <functional>

namespace oracles {

inline Eigen::MatrixXd CentralJacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  for (Eigen::Index kk = 0; kk < x.size(); kk++) {
    Eigen::VectorXd xp = x, xm = x;
    xp(kk) += h;
    xm(kk) -= h;
    J.col(kk) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return J;
}

inline Eigen::VectorXd CentralGradient(
    const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index kk = 0; kk < x.size(); kk++) {
    Eigen::VectorXd xp = x, xm = x;
    xp(kk) += h;
    xm(kk) -= h;
    g(kk) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// max |a - b| / max(1, |b|), elementwise.
inline double RelativeError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return ((a - b).array().abs() / b.array().abs().max(1.0)).maxCoeff();
}

}  // namespace oracles
