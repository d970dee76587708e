#include "ssmc/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace ssmc {

Tensor::Tensor(std::size_t dim, std::vector<Slot> slots) : dim_(dim), slots_(std::move(slots)) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < slots_.size(); ++i) size *= dim_;
  data_.assign(size, 0.0);
}

double Tensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor& Tensor::operator+=(const Tensor& other) {
  assert(other.data_.size() == data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  assert(other.data_.size() == data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  assert(a.size() == b.size());
  double m = 0.0;
  const auto ca = a.components();
  const auto cb = b.components();
  for (std::size_t i = 0; i < ca.size(); ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
  return m;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  assert(a.dim() == b.dim());
  std::vector<Slot> slots = a.slots();
  slots.insert(slots.end(), b.slots().begin(), b.slots().end());
  Tensor r(a.dim(), std::move(slots));
  const auto ca = a.components();
  const auto cb = b.components();
  auto cr = r.components();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) cr[i * cb.size() + j] = ca[i] * cb[j];
  }
  return r;
}

}  // namespace ssmc
