#pragma once

#include <functional>
#include <vector>

#include "hslab/anisotropy.hpp"
#include "hslab/grid.hpp"

namespace hslab {

// Sampled C^N-valued function on a product grid. Values are stored
// component-major, each component a row-major tensor over the axes; a normal
// axis, when present, is axis 0. The anisotropy assigns axes to blocks of the
// quasi-norm |xi|_{d,a} used by every frequency-side operation.
struct DiscreteField {
  Grid axes;
  int components = 1;
  Anisotropy aniso;
  std::vector<Complex> values;

  long axis_total() const {
    long t = 1;
    for (const Axis& a : axes) t *= a.count;
    return t;
  }

  std::vector<int> shape() const {
    std::vector<int> s;
    for (const Axis& a : axes) s.push_back(a.count);
    return s;
  }

  long flat_index(const std::vector<int>& idx) const {
    long f = 0;
    for (size_t a = 0; a < axes.size(); ++a) f = f * axes[a].count + idx[a];
    return f;
  }

  Complex& at(int comp, const std::vector<int>& idx) {
    return values[comp * axis_total() + flat_index(idx)];
  }
  Complex at(int comp, const std::vector<int>& idx) const {
    return values[comp * axis_total() + flat_index(idx)];
  }

  std::vector<double> coords(const std::vector<int>& idx) const {
    std::vector<double> x(axes.size());
    for (size_t a = 0; a < axes.size(); ++a) x[a] = axes[a].coord(idx[a]);
    return x;
  }

  void validate() const {
    for (const Axis& a : axes) a.validate();
    for (size_t a = 1; a < axes.size(); ++a)
      if (axes[a].role == AxisRole::Normal)
        throw InputError("field: a normal axis must be axis 0");
    if (aniso.total_dim() != static_cast<int>(axes.size()))
      throw InputError("field: anisotropy does not cover the axes");
    if (values.size() != static_cast<size_t>(components) * axis_total())
      throw InputError("field: value storage size mismatch");
  }

  static DiscreteField zeros(Grid axes_, int components_, Anisotropy aniso_) {
    DiscreteField f;
    f.axes = std::move(axes_);
    f.components = components_;
    f.aniso = std::move(aniso_);
    f.values.assign(static_cast<size_t>(f.components) * f.axis_total(), Complex(0.0, 0.0));
    f.validate();
    return f;
  }
};

// Visit every multi-index of a shape in row-major order.
template <typename F>
inline void for_each_index(const std::vector<int>& shape, F&& fn) {
  std::vector<int> idx(shape.size(), 0);
  while (true) {
    fn(idx);
    int a = static_cast<int>(shape.size()) - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
}

// Fill one component from a callable on physical coordinates.
template <typename F>
inline void fill_field(DiscreteField& f, int comp, F&& fn) {
  for_each_index(f.shape(), [&](const std::vector<int>& idx) { f.at(comp, idx) = fn(f.coords(idx)); });
}

// Frequency vector of a lattice point of an all-periodic field.
inline std::vector<double> lattice_freq(const DiscreteField& f, const std::vector<int>& idx) {
  std::vector<double> xi(f.axes.size());
  for (size_t a = 0; a < f.axes.size(); ++a) xi[a] = f.axes[a].freq(idx[a]);
  return xi;
}

}  // namespace hslab
