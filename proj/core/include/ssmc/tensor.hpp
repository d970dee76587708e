#pragma once

#include <cassert>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ssmc {

/// Variance of a tensor slot.
enum class Slot : std::uint8_t { Up, Down };

/// Dense tensor of arbitrary rank over an n-dimensional chart. Components are
/// stored row-major over the slots in declaration order.
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t dim, std::vector<Slot> slots);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return slots_.size(); }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  std::size_t size() const noexcept { return data_.size(); }

  template <std::integral... I>
  double& operator()(I... idx) {
    return data_[flat(idx...)];
  }
  template <std::integral... I>
  double operator()(I... idx) const {
    return data_[flat(idx...)];
  }

  std::span<double> components() noexcept { return data_; }
  std::span<const double> components() const noexcept { return data_; }

  double max_abs() const noexcept;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double s);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }

 private:
  template <std::integral... I>
  std::size_t flat(I... idx) const {
    assert(sizeof...(I) == slots_.size());
    std::size_t f = 0;
    ((assert(static_cast<std::size_t>(idx) < dim_), f = f * dim_ + static_cast<std::size_t>(idx)), ...);
    return f;
  }

  std::size_t dim_ = 0;
  std::vector<Slot> slots_;
  std::vector<double> data_;
};

/// Max-norm of a - b. Shapes must agree.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// a ⊗ b.
Tensor outer(const Tensor& a, const Tensor& b);

}  // namespace ssmc
