#include "tlearn/weights.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tlearn {

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols, int w_max, Fixed init)
    : rows_(rows), cols_(cols), w_max_(w_max), data_(rows * cols, saturate(init, w_max)) {
  if (w_max < 1) throw std::invalid_argument("w_max must be >= 1");
}

void WeightMatrix::fill(Fixed value) {
  for (auto& w : data_) w = saturate(value, w_max_);
}

void WeightMatrix::randomize(Rng& rng) {
  const auto levels = static_cast<std::uint64_t>(w_max_) * Fixed::kScale + 1;
  for (auto& w : data_) w = Fixed::from_raw(static_cast<std::int64_t>(rng.below(levels)));
}

void write_weights(std::ostream& out, const WeightMatrix& w) {
  out << w.rows() << ' ' << w.cols() << ' ' << w.w_max() << '\n';
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (c) out << ' ';
      out << w.at(r, c).raw();
    }
    out << '\n';
  }
}

WeightMatrix read_weights(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  int w_max = 0;
  if (!(in >> rows >> cols >> w_max)) throw std::runtime_error("weight dump: bad header");
  WeightMatrix w(rows, cols, w_max, Fixed{});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t raw = 0;
      if (!(in >> raw)) {
        throw std::runtime_error("weight dump: missing value at row " + std::to_string(r + 1));
      }
      if (raw < 0 || raw > static_cast<std::int64_t>(w_max) * Fixed::kScale) {
        throw std::runtime_error("weight dump: value out of range at row " + std::to_string(r + 1));
      }
      w.set(r, c, Fixed::from_raw(raw));
    }
  }
  return w;
}

}  // namespace tlearn
