#pragma once

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rootgeom/rootgeom.hpp"

namespace fixtures {

using rootgeom::GramMatrix;
using rootgeom::Rational;
using rootgeom::RootSystem;

inline const double kSqrt5 = std::sqrt(5.0);

template <class T>
GramMatrix<T> gram(std::vector<std::vector<T>> rows) {
  return GramMatrix<T>::from_rows(rows);
}

template <class T>
RootSystem<T> fin3() {
  return rootgeom::realize_ambient(gram<T>({{T(1), T(-0.5)}, {T(-0.5), T(1)}}), {});
}
template <class T>
RootSystem<T> aff2() {
  return rootgeom::realize_ambient(gram<T>({{T(1), T(-1)}, {T(-1), T(1)}}), {});
}
template <class T>
RootSystem<T> d15() {
  return rootgeom::realize_ambient(gram<T>({{T(1), T(-1.5)}, {T(-1.5), T(1)}}), {});
}
template <class T>
RootSystem<T> u3() {
  return rootgeom::realize_ambient(gram<T>({{T(1), T(-2), T(-2)}, {T(-2), T(1), T(-2)}, {T(-2), T(-2), T(1)}}), {});
}
template <class T>
RootSystem<T> a2aff() {
  T h(-0.5);
  return rootgeom::realize_ambient(gram<T>({{T(1), h, h}, {h, T(1), h}, {h, h, T(1)}}), {});
}
inline RootSystem<double> h334() {
  const double c = -std::sqrt(2.0) / 2;
  return rootgeom::realize_ambient(gram<double>({{1, -0.5, -0.5}, {-0.5, 1, c}, {-0.5, c, 1}}), {});
}
template <class T>
RootSystem<T> quad() {
  auto g = gram<T>({{T(1), T(-1), T(-3), T(-1)},
                    {T(-1), T(1), T(-1), T(-3)},
                    {T(-3), T(-1), T(1), T(-1)},
                    {T(-1), T(-3), T(-1), T(1)}});
  return rootgeom::realize_ambient(g, {{1, -1, 1, -1}});
}

inline std::string path(const std::string& name) { return std::string(ROOTGEOM_FIXTURES) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class T>
rootgeom::TransverseForm sum_form(const RootSystem<T>& sys) {
  return rootgeom::transverse_form(sys, rootgeom::FormMode::Sum);
}

/// Independent isotropic-point oracle for two-dimensional (a, b) coordinates
/// with form [[1, p], [p, 1]] and sum normalization: solves a² + 2p·a·b + b² = 0
/// with a + b = 1 in closed form.
inline std::pair<double, double> dihedral_limit_oracle(double p) {
  // a = t, b = 1 - t: t² + 2p t (1-t) + (1-t)² = 0  →  (2 - 2p) t² + (2p - 2) t + 1 = 0
  double qa = 2 - 2 * p, qb = 2 * p - 2, qc = 1;
  double disc = qb * qb - 4 * qa * qc;
  double r = std::sqrt(std::max(0.0, disc));
  return {(-qb - r) / (2 * qa), (-qb + r) / (2 * qa)};
}

}  // namespace fixtures
