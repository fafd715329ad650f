#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "tlearn/fixed_point.hpp"
#include "tlearn/rng.hpp"

namespace tlearn {

// Dense rows x cols crossbar of saturating synaptic counters in [0, w_max].
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols, int w_max, Fixed init);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int w_max() const { return w_max_; }

  Fixed at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  // Integer weight used for inference.
  int inference(std::size_t r, std::size_t c) const { return static_cast<int>(at(r, c).ceil()); }
  std::span<const Fixed> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void set(std::size_t r, std::size_t c, Fixed value) { data_[r * cols_ + c] = saturate(value, w_max_); }
  void adjust(std::size_t r, std::size_t c, Fixed delta) { set(r, c, at(r, c) + delta); }
  void fill(Fixed value);
  // Independent uniform draws over the representable values 0, 1/128, ..., w_max.
  void randomize(Rng& rng);

  bool operator==(const WeightMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int w_max_ = 0;
  std::vector<Fixed> data_;
};

// Plain-text dump: "<rows> <cols> <w_max>" then one line per row of
// counters scaled by 128. Round-trips through read_weights exactly.
void write_weights(std::ostream& out, const WeightMatrix& w);
WeightMatrix read_weights(std::istream& in);

}  // namespace tlearn
