#pragma once

// Forward-Euler unicycle step evaluated in 50-digit floating point.

#include <Eigen/Core>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracles {

using Extended = boost::multiprecision::cpp_bin_float_50;

inline Eigen::Vector4d ExtendedUnicycleStep(const Eigen::Vector4d& x,
                                            const Eigen::Vector2d& u, double dt) {
  const Extended px(x(0)), py(x(1)), v(x(2)), theta(x(3));
  const Extended omega(u(0)), accel(u(1)), h(dt);
  const Extended nx = px + h * v * boost::multiprecision::cos(theta);
  const Extended ny = py + h * v * boost::multiprecision::sin(theta);
  const Extended nv = v + h * accel;
  const Extended nt = theta + h * omega;
  return {nx.convert_to<double>(), ny.convert_to<double>(), nv.convert_to<double>(),
          nt.convert_to<double>()};
}

}  // namespace oracles
