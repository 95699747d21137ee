#include "dlmc/energy_model.hpp"

#include <stdexcept>
#include <vector>

namespace dlmc {

void EnergyModel::stoch_grad(const State&, const MinibatchSpec&, Rng&,
                             std::span<double>) const {
  throw std::logic_error("this model does not provide a stochastic gradient");
}

Eigen::VectorXd finite_diff_grad(const EnergyModel& model, const State& s,
                                 double h) {
  const Eigen::VectorXd x0 = embed(model.domain(), s);
  const int n = static_cast<int>(x0.size());
  Eigen::VectorXd g(n);
  std::vector<double> x(x0.data(), x0.data() + n);
  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double up = model.extension_energy(x);
    x[i] = xi - h;
    const double dn = model.extension_energy(x);
    x[i] = xi;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

}  // namespace dlmc
