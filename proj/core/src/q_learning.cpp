#include "dqtsc/q_learning.hpp"

#include <iostream>
#include <stdexcept>

namespace dqtsc {

double epsilon(int epoch, int total_epochs) {
  if (total_epochs <= 0 || epoch < 0) throw std::invalid_argument("epsilon: need 0 <= n and N > 0");
  if (epoch > total_epochs) {
    std::clog << "warning: epsilon requested for epoch " << epoch << " beyond " << total_epochs
              << "; clamping to 0\n";
    return 0.0;
  }
  return 1.0 - static_cast<double>(epoch) / static_cast<double>(total_epochs);
}

int argmax(std::span<const double> q) {
  if (q.empty()) throw std::invalid_argument("argmax: empty input");
  return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
}

int select_action(std::span<const double> q, double eps, Rng& rng) {
  if (rng.bernoulli(eps)) return static_cast<int>(rng.below(q.size()));
  return argmax(q);
}

}  // namespace dqtsc
